//! Evaluation of the weighted logarithmic series
//!
//! ```text
//! S_w(x) = Σ_{k≥1} (w(k)/k) · (−log(1 − x^k)),   w ∈ {φ, μ}, 0 < x < 1
//! ```
//!
//! with a rigorous truncation bound, and of its exponential (product) form.
//!
//! # Error budget
//!
//! Both `|φ(k)/k|` and `|μ(k)/k|` are at most one, and `−log(1−y) ≤ y/(1−y)`,
//! so term `k` is bounded by `x^k/(1 − x^k)`. Majorizing `1 − x^k` below by
//! `1 − x^(K+1)` for every `k > K` and summing the geometric series gives
//!
//! ```text
//! |tail after K| ≤ x^(K+1) / ((1 − x)(1 − x^(K+1)))
//! ```
//!
//! The truncation index is the smallest `K` making that bound smaller than
//! `10^(−D−1)`. Rounding is tracked in ulps of the working scale `D + G`:
//! the incremental power `x^k` is within `3k` ulp (including up to two ulp
//! of error in `x` itself), the derivative of `−log(1−y)` is at most
//! `1/(1−x)`, `log1m` with `I` terms is within `2I + 1` ulp, and the weight
//! multiply-divide adds one more. The accumulated figure is reported as
//! `rounding_budget` and `tail_bound + rounding_budget < 10^(−D)` is checked
//! before a result is returned.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ArithFnTable, Weight};
use crate::elementary::{log1m_raw, Constant};
use crate::error::{Error, Result};
use crate::fixed::{pow10, FixedPointValue, PrecisionContext};

/// Extra digits of tail accuracy used before exponentiating; `e^8 < 10^4`.
pub const EXP_TAIL_EXTRA_DIGITS: u32 = 4;

/// An evaluation point in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    /// `1/ϕ`, materialized at the working precision.
    GoldenInverse,
    /// `num/den` with `0 < num < den`.
    Rational { num: u64, den: u64 },
    /// A decimal literal such as `0.3`.
    Decimal(String),
}

impl Point {
    pub fn rational(num: u64, den: u64) -> Result<Self> {
        if num == 0 || num >= den {
            return Err(Error::Domain("point must satisfy 0 < x < 1"));
        }
        Ok(Point::Rational { num, den })
    }

    pub fn materialize(&self, ctx: &PrecisionContext) -> Result<FixedPointValue> {
        let x = match self {
            Point::GoldenInverse => ctx.constant(Constant::GoldenInverse),
            Point::Rational { num, den } => FixedPointValue::from_ratio(
                &BigInt::from(*num),
                &BigInt::from(*den),
                ctx.working_digits(),
            )?,
            Point::Decimal(s) => ctx.parse(s)?,
        };
        check_unit_interval(&x)?;
        Ok(x)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::GoldenInverse => f.write_str("golden-inverse"),
            Point::Rational { num, den } => write!(f, "{num}/{den}"),
            Point::Decimal(s) => f.write_str(s),
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "golden-inverse" | "golden_inverse") {
            return Ok(Point::GoldenInverse);
        }
        if let Some((n, d)) = s.split_once('/') {
            let bad = || Error::Parse(s.to_string());
            let num = n.trim().parse::<u64>().map_err(|_| bad())?;
            let den = d.trim().parse::<u64>().map_err(|_| bad())?;
            return Point::rational(num, den);
        }
        // validate now so bad literals fail at parse time
        let probe = FixedPointValue::parse(s, 64)?;
        check_unit_interval(&probe)?;
        Ok(Point::Decimal(s.to_string()))
    }
}

fn check_unit_interval(x: &FixedPointValue) -> Result<()> {
    if !x.is_positive() || *x.raw() >= pow10(x.scale()) {
        return Err(Error::Domain("point must satisfy 0 < x < 1"));
    }
    Ok(())
}

/// A series evaluation request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub weight: Weight,
    pub x: FixedPointValue,
    pub ctx: PrecisionContext,
}

impl SeriesSpec {
    pub fn new(weight: Weight, x: FixedPointValue, ctx: PrecisionContext) -> Result<Self> {
        ctx.check(&x)?;
        check_unit_interval(&x)?;
        Ok(SeriesSpec { weight, x, ctx })
    }

    pub fn at_point(weight: Weight, point: &Point, ctx: PrecisionContext) -> Result<Self> {
        let x = point.materialize(&ctx)?;
        Ok(SeriesSpec { weight, x, ctx })
    }

    pub fn target_digits(&self) -> u32 {
        self.ctx.target_digits()
    }
}

/// A value together with the truncation and rounding bounds that certify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub value: FixedPointValue,
    pub terms_used: usize,
    /// Upper bound on the omitted tail.
    pub tail_bound: FixedPointValue,
    /// Upper bound on accumulated rounding, including the error in `x`.
    pub rounding_budget: FixedPointValue,
}

/// Upper bound on `Σ_{k>K} x^k/(1−x^k)` at the working scale, rounded up.
pub fn tail_bound(x: &FixedPointValue, terms: usize, ctx: &PrecisionContext) -> Result<FixedPointValue> {
    ctx.check(x)?;
    check_unit_interval(x)?;
    let one = pow10(x.scale());
    let mut power_up = x.raw().clone();
    for _ in 0..terms {
        power_up = (&power_up * x.raw()).div_ceil(&one);
    }
    Ok(FixedPointValue::from_raw(bound_raw(&power_up, x.raw(), &one), x.scale()))
}

/// `ceil(p·one² / ((one − x)(one − p)))`, the bound in raw units.
fn bound_raw(power_up: &BigInt, x: &BigInt, one: &BigInt) -> BigInt {
    let den = (one - x) * (one - power_up);
    if !den.is_positive() {
        // x^(K+1) rounded up to one: no useful bound
        return one * one;
    }
    (power_up * one * one).div_ceil(&den)
}

/// Smallest `K` whose tail bound is below `10^(−tail_digits)`, and that bound.
fn truncation_index_at(
    x: &FixedPointValue,
    tail_digits: u32,
    ctx: &PrecisionContext,
) -> Result<(usize, FixedPointValue)> {
    ctx.check(x)?;
    check_unit_interval(x)?;
    let scale = x.scale();
    if tail_digits > scale {
        return Err(Error::PrecisionBudget);
    }
    let one = pow10(scale);
    let threshold = pow10(scale - tail_digits);
    let mut power_up = (x.raw() * x.raw()).div_ceil(&one);
    let mut k = 1usize;
    loop {
        let bound = bound_raw(&power_up, x.raw(), &one);
        if bound < threshold {
            return Ok((k, FixedPointValue::from_raw(bound, scale)));
        }
        power_up = (&power_up * x.raw()).div_ceil(&one);
        k += 1;
    }
}

/// Number of terms needed for `D` correct digits with `G` guard digits.
pub fn truncation_index(x: &FixedPointValue, digits: u32, guard: u32) -> Result<usize> {
    let ctx = PrecisionContext::with_guard(digits, guard)?;
    let x = x.rescale(ctx.working_digits());
    truncation_index_at(&x, digits + 1, &ctx).map(|(k, _)| k)
}

/// Running sums of the first `terms` series terms, plus the rounding budget
/// in ulps for the full run.
fn accumulate(
    spec: &SeriesSpec,
    table: &ArithFnTable,
    terms: usize,
    mut each: impl FnMut(&BigInt),
) -> Result<BigInt> {
    if table.limit() < terms {
        return Err(Error::TableTooSmall {
            required: terms,
            limit: table.limit(),
        });
    }
    let scale = spec.x.scale();
    let one = pow10(scale);
    let x = spec.x.raw();
    let derivative_cap: BigInt = one.div_ceil(&(&one - x)) + 1u8;
    let mut ulps = BigInt::zero();
    let mut sum = BigInt::zero();
    let mut power = x.clone();
    for k in 1..=terms {
        if k > 1 {
            power = &power * x / &one;
        }
        let w = table.weight(spec.weight, k)?;
        if w != 0 {
            // an underflowed power still carries its input error in the budget
            let log_terms = if power.is_positive() {
                let (log, log_terms) = log1m_raw(&power, scale);
                sum += log * w / k as u64;
                log_terms
            } else {
                0
            };
            ulps += &derivative_cap * (3 * k as u64) + 2 * log_terms + 2;
        }
        each(&sum);
    }
    Ok(ulps)
}

pub(crate) fn evaluate(spec: &SeriesSpec, table: &ArithFnTable, tail_digits: u32) -> Result<EvalResult> {
    let (terms, tail) = truncation_index_at(&spec.x, tail_digits, &spec.ctx)?;
    let mut value = BigInt::zero();
    let ulps = accumulate(spec, table, terms, |s| value = s.clone())?;
    let scale = spec.x.scale();
    let result = EvalResult {
        value: FixedPointValue::from_raw(value, scale),
        terms_used: terms,
        tail_bound: tail,
        rounding_budget: FixedPointValue::from_raw(ulps, scale),
    };
    check_budget(&result, spec.target_digits())?;
    Ok(result)
}

fn check_budget(result: &EvalResult, digits: u32) -> Result<()> {
    let scale = result.value.scale();
    let total = result.tail_bound.raw() + result.rounding_budget.raw();
    if total >= pow10(scale - digits) {
        return Err(Error::PrecisionBudget);
    }
    Ok(())
}

/// `Σ_{k≤K} (w(k)/k)·(−log(1−x^k))` with `K` from the truncation rule.
///
/// For the totient weight the limit is `x/(1−x)`; for the Möbius weight it is `x`.
pub fn eval_weighted_log_series(spec: &SeriesSpec, table: &ArithFnTable) -> Result<EvalResult> {
    evaluate(spec, table, spec.target_digits() + 1)
}

/// `Π_k (1 − x^k)^(−w(k)/k)`, computed as the exponential of the log-sum.
///
/// The targets are `e^(x/(1−x))` for the totient weight and `e^x` for the
/// Möbius weight.
pub fn eval_product_form(spec: &SeriesSpec, table: &ArithFnTable) -> Result<EvalResult> {
    let ctx = &spec.ctx;
    let log_sum = evaluate(spec, table, spec.target_digits() + 1 + EXP_TAIL_EXTRA_DIGITS)?;
    let value = ctx.exp(&log_sum.value)?;
    // e^(s+t) − e^s ≤ 2·e^s·t for 0 ≤ t < 1
    let scaled = |bound: &FixedPointValue| -> Result<FixedPointValue> {
        let raw = ctx.mul(&value, bound)?.raw() * 2 + BigInt::one();
        Ok(FixedPointValue::from_raw(raw, value.scale()))
    };
    let tail_bound = scaled(&log_sum.tail_bound)?;
    let mut rounding_budget = scaled(&log_sum.rounding_budget)?;
    // exp itself is good to a few ulp after dropping its internal digits
    rounding_budget = ctx.add(&rounding_budget, &ctx.mul_int(&ctx.ulp(), 4)?)?;
    let result = EvalResult {
        value,
        terms_used: log_sum.terms_used,
        tail_bound,
        rounding_budget,
    };
    check_budget(&result, spec.target_digits())?;
    Ok(result)
}

/// Partial sums `S_1, …, S_n` of the series.
pub fn partial_sums(spec: &SeriesSpec, table: &ArithFnTable, n: usize) -> Result<Vec<FixedPointValue>> {
    let scale = spec.x.scale();
    let mut out = Vec::with_capacity(n);
    accumulate(spec, table, n, |s| {
        out.push(FixedPointValue::from_raw(s.clone(), scale))
    })?;
    Ok(out)
}

/// Sieve limit needed to evaluate `spec` directly or in product form.
pub fn required_table_limit(spec: &SeriesSpec) -> Result<usize> {
    let tail = spec.target_digits() + 1 + EXP_TAIL_EXTRA_DIGITS;
    truncation_index_at(&spec.x, tail, &spec.ctx).map(|(k, _)| k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed::matched_digits;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn truncation_index_examples() {
        let half = FixedPointValue::parse("0.5", 50).unwrap();
        let k = truncation_index(&half, 30, 20).unwrap();
        assert!(k <= 110, "k = {k}");
        assert_eq!(k, 103);

        let c = ctx(100);
        let inv = c.constant(Constant::GoldenInverse);
        let k = truncation_index(&inv, 100, 20).unwrap();
        assert!((470..=520).contains(&k), "k = {k}");

        let tiny = FixedPointValue::parse("0.0000000001", 50).unwrap();
        assert!(truncation_index(&tiny, 30, 20).unwrap() <= 4);

        assert!(truncation_index(&FixedPointValue::parse("1", 50).unwrap(), 30, 20).is_err());
    }

    #[test]
    fn closed_forms_at_one_half() {
        let c = ctx(30);
        let table = ArithFnTable::build(200).unwrap();
        let point = Point::rational(1, 2).unwrap();
        let tot = eval_weighted_log_series(&SeriesSpec::at_point(Weight::Totient, &point, c).unwrap(), &table).unwrap();
        assert!(matched_digits(&tot.value, &c.integer(1)) >= 30);
        let mob = eval_weighted_log_series(&SeriesSpec::at_point(Weight::Moebius, &point, c).unwrap(), &table).unwrap();
        assert!(matched_digits(&mob.value, &c.ratio(1, 2).unwrap()) >= 30);
        assert_eq!(tot.terms_used, 103);
    }

    #[test]
    fn product_form_small_point() {
        let c = ctx(30);
        let table = ArithFnTable::build(10).unwrap();
        let x = c.parse("0.0000000001").unwrap();
        let spec = SeriesSpec::new(Weight::Totient, x.clone(), c).unwrap();
        let p = eval_product_form(&spec, &table).unwrap();
        // e^(x/(1−x)) ≈ 1 + 10^(−10)
        let one = c.integer(1);
        assert_eq!(matched_digits(&p.value, &one), 9);
        let direct = c.exp(&c.div(&x, &c.sub(&one, &x).unwrap()).unwrap()).unwrap();
        assert!(matched_digits(&p.value, &direct) >= 30);
    }

    #[test]
    fn undersized_table_names_required_limit() {
        let c = ctx(30);
        let table = ArithFnTable::build(50).unwrap();
        let spec = SeriesSpec::at_point(Weight::Moebius, &Point::rational(1, 2).unwrap(), c).unwrap();
        assert_eq!(
            eval_weighted_log_series(&spec, &table),
            Err(Error::TableTooSmall {
                required: 103,
                limit: 50
            })
        );
    }

    #[test]
    fn point_parsing() {
        assert_eq!("3/7".parse::<Point>().unwrap(), Point::Rational { num: 3, den: 7 });
        assert_eq!("golden-inverse".parse::<Point>().unwrap(), Point::GoldenInverse);
        assert_eq!("0.3".parse::<Point>().unwrap(), Point::Decimal("0.3".into()));
        assert!("7/3".parse::<Point>().is_err());
        assert!("0/3".parse::<Point>().is_err());
        assert!("1.0".parse::<Point>().is_err());
        assert!("-0.2".parse::<Point>().is_err());
        assert!("x".parse::<Point>().is_err());
    }

    #[test]
    fn spec_rejects_out_of_range_x() {
        let c = ctx(10);
        assert!(SeriesSpec::new(Weight::Totient, c.integer(1), c).is_err());
        assert!(SeriesSpec::new(Weight::Totient, c.integer(0), c).is_err());
        assert!(SeriesSpec::new(Weight::Totient, FixedPointValue::parse("0.5", 3).unwrap(), c).is_err());
    }

    #[test]
    fn product_form_range_error() {
        // x/(1−x) = 19 exceeds the exp cap
        let c = ctx(10);
        let table = ArithFnTable::build(5000).unwrap();
        let spec = SeriesSpec::at_point(Weight::Totient, &Point::rational(19, 20).unwrap(), c).unwrap();
        assert!(matches!(eval_product_form(&spec, &table), Err(Error::Range(_))));
    }
}
