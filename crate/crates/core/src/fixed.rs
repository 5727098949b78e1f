//! Decimal fixed-point numbers and the precision context that produces them.
//!
//! A [`FixedPointValue`] is a signed big integer `raw` together with a decimal
//! `scale`; it denotes `raw · 10^(−scale)`. Every arithmetic operation lives on
//! [`PrecisionContext`], which checks that operands carry the context's working
//! scale and truncates results toward zero.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::Neg;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default and minimum number of guard digits.
pub const DEFAULT_GUARD_DIGITS: u32 = 20;

pub(crate) fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), n as usize)
}

/// Number of decimal digits of `|n|`; zero has none.
pub(crate) fn decimal_len(n: &BigInt) -> u32 {
    if n.is_zero() {
        0
    } else {
        n.magnitude().to_str_radix(10).len() as u32
    }
}

/// A signed decimal fixed-point number `raw · 10^(−scale)`.
#[derive(Clone, Debug)]
pub struct FixedPointValue {
    raw: BigInt,
    scale: u32,
}

impl FixedPointValue {
    pub fn from_raw(raw: BigInt, scale: u32) -> Self {
        FixedPointValue { raw, scale }
    }

    pub fn from_integer(n: i64, scale: u32) -> Self {
        FixedPointValue {
            raw: BigInt::from(n) * pow10(scale),
            scale,
        }
    }

    pub fn zero(scale: u32) -> Self {
        FixedPointValue {
            raw: BigInt::zero(),
            scale,
        }
    }

    /// The value `num/den` truncated toward zero at `scale`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, scale: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FixedPointValue {
            raw: num * pow10(scale) / den,
            scale,
        })
    }

    /// The scaled integer `value · 10^scale`.
    pub fn raw(&self) -> &BigInt {
        &self.raw
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// −1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.raw.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn magnitude(&self) -> &BigUint {
        self.raw.magnitude()
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.raw.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.raw.is_negative()
    }

    pub fn abs(&self) -> Self {
        FixedPointValue {
            raw: self.raw.abs(),
            scale: self.scale,
        }
    }

    /// Changes the scale: exact when growing, truncating toward zero when shrinking.
    pub fn rescale(&self, scale: u32) -> Self {
        let raw = match scale.cmp(&self.scale) {
            Ordering::Equal => self.raw.clone(),
            Ordering::Greater => &self.raw * pow10(scale - self.scale),
            Ordering::Less => &self.raw / pow10(self.scale - scale),
        };
        FixedPointValue { raw, scale }
    }

    /// Rounds half away from zero to `digits` fractional digits.
    pub fn round_to(&self, digits: u32) -> Self {
        if digits >= self.scale {
            return self.rescale(digits);
        }
        let unit = pow10(self.scale - digits);
        let (mut q, r) = self.raw.abs().div_rem(&unit);
        if r * 2u8 >= unit {
            q += 1u8;
        }
        if self.raw.is_negative() {
            q = -q;
        }
        FixedPointValue {
            raw: q,
            scale: digits,
        }
    }

    /// Parses `[+-]int[.frac]` or `[+-]p/q` at the given scale. Extra
    /// fractional digits and rational quotients are truncated toward zero.
    pub fn parse(text: &str, scale: u32) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Parse(text.to_string());
        if let Some((num, den)) = text.split_once('/') {
            let num: BigInt = parse_signed_integer(num.trim()).ok_or_else(bad)?;
            let den: BigInt = parse_signed_integer(den.trim()).ok_or_else(bad)?;
            return FixedPointValue::from_ratio(&num, &den, scale);
        }
        let (negative, body) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            _ => (false, text),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(bad());
        }
        let kept = &frac_part[..frac_part.len().min(scale as usize)];
        let mut digits = String::with_capacity(int_part.len() + scale as usize);
        digits.push_str(if int_part.is_empty() { "0" } else { int_part });
        digits.push_str(kept);
        for _ in kept.len()..scale as usize {
            digits.push('0');
        }
        let mut raw = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
        if negative {
            raw = -raw;
        }
        Ok(FixedPointValue { raw, scale })
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt) {
        match self.scale.cmp(&other.scale) {
            Ordering::Equal => (self.raw.clone(), other.raw.clone()),
            Ordering::Less => (
                &self.raw * pow10(other.scale - self.scale),
                other.raw.clone(),
            ),
            Ordering::Greater => (
                self.raw.clone(),
                &other.raw * pow10(self.scale - other.scale),
            ),
        }
    }
}

fn parse_signed_integer(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
}

impl PartialEq for FixedPointValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FixedPointValue {}

impl PartialOrd for FixedPointValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedPointValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.scale == other.scale {
            return self.raw.cmp(&other.raw);
        }
        let (a, b) = self.align(other);
        a.cmp(&b)
    }
}

impl Neg for FixedPointValue {
    type Output = FixedPointValue;

    fn neg(self) -> Self::Output {
        FixedPointValue {
            raw: -self.raw,
            scale: self.scale,
        }
    }
}

impl fmt::Display for FixedPointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (int_part, frac_part) = self.raw.magnitude().div_rem(pow10(self.scale).magnitude());
        if self.raw.is_negative() {
            f.write_str("-")?;
        }
        write!(f, "{int_part}")?;
        if self.scale > 0 {
            let frac = frac_part.to_str_radix(10);
            f.write_str(".")?;
            for _ in frac.len()..self.scale as usize {
                f.write_str("0")?;
            }
            f.write_str(&frac)?;
        }
        Ok(())
    }
}

/// Largest `m` with `|a − b| < 10^(−m)`, capped at the scale; zero when the
/// values differ by at least one. Operands of unequal scale are compared at
/// the smaller scale.
pub fn matched_digits(a: &FixedPointValue, b: &FixedPointValue) -> u32 {
    let scale = a.scale.min(b.scale);
    let diff = a.rescale(scale).raw - b.rescale(scale).raw;
    scale.saturating_sub(decimal_len(&diff))
}

/// Target digits `D` and guard digits `G`; all values it produces carry
/// scale `D + G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    pub fn new(target_digits: u32) -> Result<Self> {
        Self::with_guard(target_digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::InvalidContext("target digits must be positive"));
        }
        if guard_digits < DEFAULT_GUARD_DIGITS {
            return Err(Error::InvalidContext("at least 20 guard digits are required"));
        }
        if target_digits.checked_add(guard_digits).is_none() {
            return Err(Error::InvalidContext("digit count overflow"));
        }
        Ok(PrecisionContext {
            target_digits,
            guard_digits,
        })
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// A context with the same guard digits and more target digits.
    pub fn widened(&self, extra: u32) -> Self {
        PrecisionContext {
            target_digits: self.target_digits + extra,
            guard_digits: self.guard_digits,
        }
    }

    /// One unit in the last place.
    pub fn ulp(&self) -> FixedPointValue {
        FixedPointValue::from_raw(BigInt::one(), self.working_digits())
    }

    pub fn integer(&self, n: i64) -> FixedPointValue {
        FixedPointValue::from_integer(n, self.working_digits())
    }

    pub fn ratio(&self, num: i64, den: i64) -> Result<FixedPointValue> {
        FixedPointValue::from_ratio(&BigInt::from(num), &BigInt::from(den), self.working_digits())
    }

    pub fn parse(&self, text: &str) -> Result<FixedPointValue> {
        FixedPointValue::parse(text, self.working_digits())
    }

    pub(crate) fn check(&self, v: &FixedPointValue) -> Result<()> {
        if v.scale != self.working_digits() {
            return Err(Error::ScaleMismatch {
                expected: self.working_digits(),
                found: v.scale,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &FixedPointValue, b: &FixedPointValue) -> Result<FixedPointValue> {
        self.check(a)?;
        self.check(b)?;
        Ok(FixedPointValue::from_raw(&a.raw + &b.raw, a.scale))
    }

    pub fn sub(&self, a: &FixedPointValue, b: &FixedPointValue) -> Result<FixedPointValue> {
        self.check(a)?;
        self.check(b)?;
        Ok(FixedPointValue::from_raw(&a.raw - &b.raw, a.scale))
    }

    /// Product truncated toward zero; error below one ulp.
    pub fn mul(&self, a: &FixedPointValue, b: &FixedPointValue) -> Result<FixedPointValue> {
        self.check(a)?;
        self.check(b)?;
        let raw = (&a.raw * &b.raw) / pow10(a.scale);
        Ok(FixedPointValue::from_raw(raw, a.scale))
    }

    /// Quotient truncated toward zero; error below one ulp.
    pub fn div(&self, a: &FixedPointValue, b: &FixedPointValue) -> Result<FixedPointValue> {
        self.check(a)?;
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let raw = (&a.raw * pow10(a.scale)) / &b.raw;
        Ok(FixedPointValue::from_raw(raw, a.scale))
    }

    /// Multiplies by an integer exactly.
    pub fn mul_int(&self, a: &FixedPointValue, n: i64) -> Result<FixedPointValue> {
        self.check(a)?;
        Ok(FixedPointValue::from_raw(&a.raw * n, a.scale))
    }

    /// Divides by a nonzero integer, truncating toward zero.
    pub fn div_int(&self, a: &FixedPointValue, n: i64) -> Result<FixedPointValue> {
        self.check(a)?;
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FixedPointValue::from_raw(&a.raw / n, a.scale))
    }
}
