//! Square root, `−log(1 − y)`, `exp`, integer powers and the named constants.
//!
//! Error bounds are stated in ulps of the working scale. They come from the
//! truncation of each intermediate product or quotient; guard digits absorb
//! them.

use core::str::FromStr;

use alloc::string::ToString;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fixed::{decimal_len, pow10, FixedPointValue, PrecisionContext};

/// Largest magnitude accepted by [`PrecisionContext::exp`].
pub const EXP_ARGUMENT_CAP: i64 = 8;

/// Extra digits carried inside `exp` to cover argument reduction and the
/// final `2^m` scaling.
const EXP_EXTRA_DIGITS: u32 = 10;

/// Floor of the integer square root by Newton iteration from an overestimate.
fn isqrt(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut r = pow10(decimal_len(n).div_ceil(2));
    loop {
        let next = (&r + n / &r) >> 1u32;
        if next >= r {
            return r;
        }
        r = next;
    }
}

/// `−log(1 − y)` for `0 < raw/10^scale < 1`, together with the number of
/// series terms summed.
pub(crate) fn log1m_raw(y: &BigInt, scale: u32) -> (BigInt, u64) {
    let one = pow10(scale);
    let one_minus = &one - y;
    let mut sum = BigInt::zero();
    // power truncates down; power_up rounds up and drives the stopping test
    let mut power = y.clone();
    let mut power_up = y.clone();
    let mut i: u64 = 1;
    loop {
        sum += &power / i;
        power = &power * y / &one;
        power_up = (&power_up * y).div_ceil(&one);
        // y^(i+1) / ((i+1)(1−y)) < 10^(−scale)
        if &power_up * &one < &one_minus * (i + 1) {
            return (sum, i);
        }
        i += 1;
    }
}

impl PrecisionContext {
    /// Square root truncated toward zero, `|r² − a| ≤ 4·ulp·r`.
    pub fn sqrt(&self, a: &FixedPointValue) -> Result<FixedPointValue> {
        self.check(a)?;
        if a.is_negative() {
            return Err(Error::Domain("square root of a negative number"));
        }
        let n = a.raw() * pow10(a.scale());
        Ok(FixedPointValue::from_raw(isqrt(&n), a.scale()))
    }

    /// `−log(1 − y) = Σ yⁱ/i` for `0 < y < 1`.
    pub fn log1m(&self, y: &FixedPointValue) -> Result<FixedPointValue> {
        self.log1m_with_terms(y).map(|(v, _)| v)
    }

    /// As [`log1m`](Self::log1m), also returning the number of series terms `I`.
    /// The result is within `(2I + 1)` ulp of the true value.
    pub fn log1m_with_terms(&self, y: &FixedPointValue) -> Result<(FixedPointValue, u64)> {
        self.check(y)?;
        if !y.is_positive() || *y.raw() >= pow10(y.scale()) {
            return Err(Error::Domain("log1m requires 0 < y < 1"));
        }
        let (raw, terms) = log1m_raw(y.raw(), y.scale());
        Ok((FixedPointValue::from_raw(raw, y.scale()), terms))
    }

    /// `e^a` for `|a| ≤ 8`.
    ///
    /// Reduces `a = m·log 2 + r` with `|r| ≤ log(2)/2`, sums the Taylor series
    /// of `e^r` and scales by `2^m`, all at ten digits beyond the working scale.
    pub fn exp(&self, a: &FixedPointValue) -> Result<FixedPointValue> {
        self.check(a)?;
        if a.abs() > FixedPointValue::from_integer(EXP_ARGUMENT_CAP, 0) {
            return Err(Error::Range("exp argument exceeds |a| <= 8"));
        }
        let scale = a.scale() + EXP_EXTRA_DIGITS;
        let one = pow10(scale);
        let x = a.rescale(scale);
        let (ln2, _) = log1m_raw(&(&one >> 1u32), scale);
        let twice: BigInt = x.raw() * 2u8 + &ln2;
        let m = twice.div_floor(&(&ln2 * 2u8));
        let r = x.raw() - &m * &ln2;

        let mut sum = one.clone();
        let mut term = one.clone();
        let mut j: u64 = 1;
        while !term.is_zero() {
            term = &term * &r / &one / j;
            sum += &term;
            j += 1;
        }
        let shift: i64 = (&m).try_into().expect("exp reduction index is small");
        let scaled = if shift >= 0 {
            sum << shift as u32
        } else {
            sum >> (-shift) as u32
        };
        Ok(FixedPointValue::from_raw(scaled, scale).rescale(a.scale()))
    }

    /// `a^k` by binary exponentiation; `k = 0` gives one.
    pub fn pow_int(&self, a: &FixedPointValue, k: i64) -> Result<FixedPointValue> {
        self.check(a)?;
        if k < 0 {
            return Err(Error::Range("negative exponent"));
        }
        let mut result = self.integer(1);
        let mut base = a.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(result)
    }

    pub fn constant(&self, name: Constant) -> FixedPointValue {
        let five = self.integer(5);
        match name {
            Constant::Sqrt5 => self.sqrt(&five).expect("sqrt(5) in range"),
            Constant::Golden => self.golden(),
            Constant::GoldenInverse => {
                let one = self.integer(1);
                self.sub(&self.golden(), &one).expect("same scale")
            }
            Constant::E => self.exp(&self.integer(1)).expect("exp(1) in range"),
        }
    }

    fn golden(&self) -> FixedPointValue {
        let root5 = self.constant(Constant::Sqrt5);
        let raw = (root5.raw() + pow10(root5.scale())) / 2;
        FixedPointValue::from_raw(raw, root5.scale())
    }
}

/// Named constants available at any precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Sqrt5,
    /// `(1 + √5)/2`
    Golden,
    /// `golden − 1`, equal to `1/golden`
    GoldenInverse,
    E,
}

impl Constant {
    pub const ALL: [Constant; 4] = [
        Constant::Sqrt5,
        Constant::Golden,
        Constant::GoldenInverse,
        Constant::E,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constant::Sqrt5 => "sqrt5",
            Constant::Golden => "golden",
            Constant::GoldenInverse => "golden_inverse",
            Constant::E => "e",
        }
    }
}

impl FromStr for Constant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt5" => Ok(Constant::Sqrt5),
            "golden" | "phi" => Ok(Constant::Golden),
            "golden_inverse" | "golden-inverse" => Ok(Constant::GoldenInverse),
            "e" => Ok(Constant::E),
            other => Err(Error::UnknownConstant(other.to_string())),
        }
    }
}

/// `true` when `|a − b| ≤ n` ulp at the common scale.
pub fn within_ulps(a: &FixedPointValue, b: &FixedPointValue, n: u64) -> bool {
    let scale = a.scale().max(b.scale());
    let diff = (a.rescale(scale).raw() - b.rescale(scale).raw()).abs();
    diff <= BigInt::from(n)
}
