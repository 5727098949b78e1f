//! Verification harness: every identity binds a series-side computation to
//! an independently computed closed form.
//!
//! The series side only ever consumes the evaluation point and the weight
//! table; the closed-form side only uses the named constants, `exp` and exact
//! rationals. [`verify_with_table`] never fails: errors become failed reports
//! carrying a reason.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{ArithFnTable, Weight};
use crate::elementary::Constant;
use crate::error::{Error, Result};
use crate::fixed::{matched_digits, FixedPointValue, PrecisionContext};
use crate::series::{self, EvalResult, Point, SeriesSpec, EXP_TAIL_EXTRA_DIGITS};

/// Evaluation point `num/den ∈ (0, 1)` for the parameterized identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    num: u64,
    den: u64,
}

impl RationalPoint {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        Point::rational(num, den)?;
        Ok(RationalPoint { num, den })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    fn point(self) -> Point {
        Point::Rational {
            num: self.num,
            den: self.den,
        }
    }

    /// `x/(1−x) = num/(den − num)`.
    fn geometric(self, ctx: &PrecisionContext) -> Result<FixedPointValue> {
        FixedPointValue::from_ratio(
            &BigInt::from(self.num),
            &BigInt::from(self.den - self.num),
            ctx.working_digits(),
        )
    }

    fn value(self, ctx: &PrecisionContext) -> Result<FixedPointValue> {
        FixedPointValue::from_ratio(
            &BigInt::from(self.num),
            &BigInt::from(self.den),
            ctx.working_digits(),
        )
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl core::str::FromStr for RationalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Point>()? {
            Point::Rational { num, den } => Ok(RationalPoint { num, den }),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    TheoremTotient,
    TheoremMoebius,
    Corollary1,
    Corollary2,
    Corollary3Totient,
    Corollary3Moebius,
    Corollary3Relation,
    Lemma2Totient(RationalPoint),
    Lemma2Moebius(RationalPoint),
    GeneralProductTotient(RationalPoint),
    GeneralProductMoebius(RationalPoint),
}

/// Identity names without a point, in report order.
pub const FIXED_IDENTITIES: [IdentityId; 7] = [
    IdentityId::TheoremTotient,
    IdentityId::TheoremMoebius,
    IdentityId::Corollary1,
    IdentityId::Corollary2,
    IdentityId::Corollary3Totient,
    IdentityId::Corollary3Moebius,
    IdentityId::Corollary3Relation,
];

/// Names accepted by [`IdentityId::parse`].
pub const IDENTITY_NAMES: [&str; 11] = [
    "theorem_totient",
    "theorem_moebius",
    "corollary1",
    "corollary2",
    "corollary3_totient",
    "corollary3_moebius",
    "corollary3_relation",
    "lemma2_totient",
    "lemma2_moebius",
    "general_product_totient",
    "general_product_moebius",
];

/// Sample points for the parameterized identities in [`default_identities`].
pub const DEFAULT_POINTS: [(u64, u64); 3] = [(1, 4), (1, 2), (7, 10)];

impl IdentityId {
    /// Looks up an identity by name; parameterized ones need `x`.
    pub fn parse(name: &str, x: Option<RationalPoint>) -> Result<Self> {
        let fixed = match name {
            "theorem_totient" => Some(IdentityId::TheoremTotient),
            "theorem_moebius" => Some(IdentityId::TheoremMoebius),
            "corollary1" => Some(IdentityId::Corollary1),
            "corollary2" => Some(IdentityId::Corollary2),
            "corollary3_totient" => Some(IdentityId::Corollary3Totient),
            "corollary3_moebius" => Some(IdentityId::Corollary3Moebius),
            "corollary3_relation" => Some(IdentityId::Corollary3Relation),
            _ => None,
        };
        if let Some(id) = fixed {
            return Ok(id);
        }
        let with_point: fn(RationalPoint) -> IdentityId = match name {
            "lemma2_totient" => IdentityId::Lemma2Totient,
            "lemma2_moebius" => IdentityId::Lemma2Moebius,
            "general_product_totient" => IdentityId::GeneralProductTotient,
            "general_product_moebius" => IdentityId::GeneralProductMoebius,
            other => return Err(Error::UnknownIdentity(other.to_string())),
        };
        x.map(with_point)
            .ok_or(Error::Domain("this identity needs an evaluation point x"))
    }

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::TheoremTotient => "theorem_totient",
            IdentityId::TheoremMoebius => "theorem_moebius",
            IdentityId::Corollary1 => "corollary1",
            IdentityId::Corollary2 => "corollary2",
            IdentityId::Corollary3Totient => "corollary3_totient",
            IdentityId::Corollary3Moebius => "corollary3_moebius",
            IdentityId::Corollary3Relation => "corollary3_relation",
            IdentityId::Lemma2Totient(_) => "lemma2_totient",
            IdentityId::Lemma2Moebius(_) => "lemma2_moebius",
            IdentityId::GeneralProductTotient(_) => "general_product_totient",
            IdentityId::GeneralProductMoebius(_) => "general_product_moebius",
        }
    }

    pub fn point(&self) -> Option<RationalPoint> {
        match *self {
            IdentityId::Lemma2Totient(x)
            | IdentityId::Lemma2Moebius(x)
            | IdentityId::GeneralProductTotient(x)
            | IdentityId::GeneralProductMoebius(x) => Some(x),
            _ => None,
        }
    }

    fn series_point(&self) -> Point {
        self.point()
            .map(RationalPoint::point)
            .unwrap_or(Point::GoldenInverse)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.point() {
            Some(x) => write!(f, "{}({x})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// The seven fixed identities followed by the four parameterized ones at
/// each of [`DEFAULT_POINTS`].
pub fn default_identities() -> Vec<IdentityId> {
    let mut ids: Vec<IdentityId> = FIXED_IDENTITIES.to_vec();
    let ctors: [fn(RationalPoint) -> IdentityId; 4] = [
        IdentityId::Lemma2Totient,
        IdentityId::Lemma2Moebius,
        IdentityId::GeneralProductTotient,
        IdentityId::GeneralProductMoebius,
    ];
    for ctor in ctors {
        for (p, q) in DEFAULT_POINTS {
            ids.push(ctor(RationalPoint { num: p, den: q }));
        }
    }
    ids.sort();
    ids
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub digits_requested: u32,
    /// Series side, rounded to the requested digits.
    pub lhs: String,
    /// Closed-form side, rounded to the requested digits.
    pub rhs: String,
    /// Matched digits at the working precision.
    pub matched: u32,
    pub terms_used: usize,
    /// Left at zero by this crate, which has no clock.
    pub elapsed: Duration,
    pub pass: bool,
    /// Why a failed check failed, when it did not get as far as comparing.
    pub reason: Option<String>,
    pub lhs_value: Option<FixedPointValue>,
    pub rhs_value: Option<FixedPointValue>,
}

struct Sides {
    lhs: FixedPointValue,
    rhs: FixedPointValue,
    terms: usize,
}

/// Elements `a + b·ϕ` of `Q(ϕ)`, multiplied with `ϕ² = ϕ + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GoldenField {
    a: BigRational,
    b: BigRational,
}

impl GoldenField {
    fn new(a: i64, b: i64) -> Self {
        GoldenField {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        GoldenField {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        // (a + bϕ)(c + dϕ) = ac + bd + (ad + bc + bd)ϕ
        let bd = &self.b * &o.b;
        GoldenField {
            a: &self.a * &o.a + &bd,
            b: &self.a * &o.b + &self.b * &o.a + bd,
        }
    }

    fn inverse(&self) -> Option<Self> {
        // (a + bϕ)((a + b) − bϕ) = a² + ab − b²
        let norm = &self.a * &self.a + &self.a * &self.b - &self.b * &self.b;
        if norm.is_zero() {
            return None;
        }
        Some(GoldenField {
            a: (&self.a + &self.b) / &norm,
            b: -&self.b / &norm,
        })
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|inv| self.mul(&inv))
    }
}

/// Checks `(1/ϕ)/(1 − 1/ϕ) = 1/(ϕ − 1) = 1/(1/ϕ) = ϕ` exactly in `Q(ϕ)`.
pub fn golden_simplification_holds() -> bool {
    let one = GoldenField::new(1, 0);
    let phi = GoldenField::new(0, 1);
    let Some(inv) = phi.inverse() else {
        return false;
    };
    let phi_minus_one = phi.sub(&one);
    let steps = [
        inv.div(&one.sub(&inv)),
        one.div(&phi_minus_one),
        one.div(&inv),
    ];
    inv == phi_minus_one && steps.iter().all(|s| s.as_ref() == Some(&phi))
}

fn eval(
    weight: Weight,
    point: &Point,
    ctx: PrecisionContext,
    table: &ArithFnTable,
    extra_tail: u32,
) -> Result<EvalResult> {
    let spec = SeriesSpec::at_point(weight, point, ctx)?;
    series::evaluate(&spec, table, ctx.target_digits() + 1 + extra_tail)
}

fn product(weight: Weight, point: &Point, ctx: PrecisionContext, table: &ArithFnTable) -> Result<EvalResult> {
    let spec = SeriesSpec::at_point(weight, point, ctx)?;
    series::eval_product_form(&spec, table)
}

fn compute(id: IdentityId, ctx: PrecisionContext, table: &ArithFnTable) -> Result<Sides> {
    let point = id.series_point();
    let c = &ctx;
    let sides = match id {
        IdentityId::TheoremTotient => {
            if !golden_simplification_holds() {
                return Err(Error::Domain("golden-ratio simplification chain failed"));
            }
            let s = eval(Weight::Totient, &point, ctx, table, 0)?;
            Sides {
                lhs: s.value,
                rhs: c.constant(Constant::Golden),
                terms: s.terms_used,
            }
        }
        IdentityId::TheoremMoebius => {
            let s = eval(Weight::Moebius, &point, ctx, table, 0)?;
            Sides {
                lhs: s.value,
                rhs: c.constant(Constant::GoldenInverse),
                terms: s.terms_used,
            }
        }
        IdentityId::Corollary1 | IdentityId::Corollary2 => {
            let extra = if id == IdentityId::Corollary2 {
                EXP_TAIL_EXTRA_DIGITS
            } else {
                0
            };
            let t = eval(Weight::Totient, &point, ctx, table, extra)?;
            let m = eval(Weight::Moebius, &point, ctx, table, extra)?;
            let diff = c.sub(&t.value, &m.value)?;
            let terms = t.terms_used.max(m.terms_used);
            if id == IdentityId::Corollary1 {
                Sides {
                    lhs: diff,
                    rhs: c.integer(1),
                    terms,
                }
            } else {
                Sides {
                    lhs: c.exp(&diff)?,
                    rhs: c.constant(Constant::E),
                    terms,
                }
            }
        }
        IdentityId::Corollary3Totient => {
            let p = product(Weight::Totient, &point, ctx, table)?;
            Sides {
                lhs: p.value,
                rhs: c.exp(&c.constant(Constant::Golden))?,
                terms: p.terms_used,
            }
        }
        IdentityId::Corollary3Moebius => {
            let p = product(Weight::Moebius, &point, ctx, table)?;
            Sides {
                lhs: p.value,
                rhs: c.exp(&c.constant(Constant::GoldenInverse))?,
                terms: p.terms_used,
            }
        }
        IdentityId::Corollary3Relation => {
            let m = product(Weight::Moebius, &point, ctx, table)?;
            let t = product(Weight::Totient, &point, ctx, table)?;
            Sides {
                lhs: c.mul(&m.value, &c.constant(Constant::E))?,
                rhs: t.value,
                terms: m.terms_used.max(t.terms_used),
            }
        }
        IdentityId::Lemma2Totient(x) => {
            let s = eval(Weight::Totient, &point, ctx, table, 0)?;
            Sides {
                lhs: s.value,
                rhs: x.geometric(c)?,
                terms: s.terms_used,
            }
        }
        IdentityId::Lemma2Moebius(x) => {
            let s = eval(Weight::Moebius, &point, ctx, table, 0)?;
            Sides {
                lhs: s.value,
                rhs: x.value(c)?,
                terms: s.terms_used,
            }
        }
        IdentityId::GeneralProductTotient(x) => {
            let p = product(Weight::Totient, &point, ctx, table)?;
            Sides {
                lhs: p.value,
                rhs: c.exp(&x.geometric(c)?)?,
                terms: p.terms_used,
            }
        }
        IdentityId::GeneralProductMoebius(x) => {
            let p = product(Weight::Moebius, &point, ctx, table)?;
            Sides {
                lhs: p.value,
                rhs: c.exp(&x.value(c)?)?,
                terms: p.terms_used,
            }
        }
    };
    Ok(sides)
}

/// Sieve limit that every series evaluation of `id` at `digits` stays within.
pub fn required_table_limit(id: IdentityId, digits: u32) -> Result<usize> {
    let ctx = PrecisionContext::new(digits)?;
    let spec = SeriesSpec::at_point(Weight::Totient, &id.series_point(), ctx)?;
    series::required_table_limit(&spec)
}

/// Checks `id` at `digits` using the supplied weight table.
pub fn verify_with_table(id: IdentityId, digits: u32, table: &ArithFnTable) -> VerificationReport {
    let outcome = PrecisionContext::new(digits).and_then(|ctx| compute(id, ctx, table));
    match outcome {
        Ok(s) => {
            let matched = matched_digits(&s.lhs, &s.rhs);
            VerificationReport {
                identity: id,
                digits_requested: digits,
                lhs: s.lhs.round_to(digits).to_string(),
                rhs: s.rhs.round_to(digits).to_string(),
                matched,
                terms_used: s.terms,
                elapsed: Duration::ZERO,
                pass: matched >= digits,
                reason: None,
                lhs_value: Some(s.lhs),
                rhs_value: Some(s.rhs),
            }
        }
        Err(e) => VerificationReport {
            identity: id,
            digits_requested: digits,
            lhs: String::new(),
            rhs: String::new(),
            matched: 0,
            terms_used: 0,
            elapsed: Duration::ZERO,
            pass: false,
            reason: Some(format!("{e}")),
            lhs_value: None,
            rhs_value: None,
        },
    }
}

/// Checks `id` at `digits` with a freshly sieved table of the needed size.
pub fn verify(id: IdentityId, digits: u32) -> VerificationReport {
    match required_table_limit(id, digits).and_then(ArithFnTable::build) {
        Ok(table) => verify_with_table(id, digits, &table),
        Err(e) => verify_with_table_error(id, digits, e),
    }
}

fn verify_with_table_error(id: IdentityId, digits: u32, e: Error) -> VerificationReport {
    VerificationReport {
        identity: id,
        digits_requested: digits,
        lhs: String::new(),
        rhs: String::new(),
        matched: 0,
        terms_used: 0,
        elapsed: Duration::ZERO,
        pass: false,
        reason: Some(format!("{e}")),
        lhs_value: None,
        rhs_value: None,
    }
}

/// Sieve limit covering every identity in [`default_identities`].
pub fn suite_table_limit(digits: u32) -> Result<usize> {
    default_identities()
        .into_iter()
        .map(|id| required_table_limit(id, digits))
        .try_fold(1usize, |acc, k| k.map(|k| acc.max(k)))
}

/// Runs [`default_identities`] against one shared table, in identity order.
pub fn verify_all_with_table(digits: u32, table: &ArithFnTable) -> Vec<VerificationReport> {
    default_identities()
        .into_iter()
        .map(|id| verify_with_table(id, digits, table))
        .collect()
}

pub fn verify_all(digits: u32) -> Vec<VerificationReport> {
    match suite_table_limit(digits).and_then(ArithFnTable::build) {
        Ok(table) => verify_all_with_table(digits, &table),
        Err(e) => default_identities()
            .into_iter()
            .map(|id| verify_with_table_error(id, digits, e.clone()))
            .collect(),
    }
}

/// `true` only if every report passed and there is at least one.
pub fn all_pass(reports: &[VerificationReport]) -> bool {
    !reports.is_empty() && reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_simplification_chain() {
        assert!(golden_simplification_holds());
        let phi = GoldenField::new(0, 1);
        // ϕ² = ϕ + 1
        assert_eq!(phi.mul(&phi), GoldenField::new(1, 1));
        assert_eq!(GoldenField::new(0, 0).inverse(), None);
        let x = GoldenField::new(3, -2);
        assert_eq!(x.mul(&x.inverse().unwrap()), GoldenField::new(1, 0));
    }

    #[test]
    fn identity_names_round_trip() {
        let x = RationalPoint::new(1, 4).unwrap();
        for name in IDENTITY_NAMES {
            let id = IdentityId::parse(name, Some(x)).unwrap();
            assert_eq!(id.name(), name);
        }
        assert!(IdentityId::parse("lemma2_totient", None).is_err());
        assert!(IdentityId::parse("corollary4", None).is_err());
        assert_eq!(
            IdentityId::Lemma2Moebius(x).to_string(),
            "lemma2_moebius(1/4)"
        );
        assert!(RationalPoint::new(4, 4).is_err());
        assert_eq!("7/10".parse::<RationalPoint>().unwrap(), RationalPoint::new(7, 10).unwrap());
        assert!("0.5".parse::<RationalPoint>().is_err());
    }

    #[test]
    fn default_suite_has_nineteen_in_order() {
        let ids = default_identities();
        assert_eq!(ids.len(), 19);
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ids[0], IdentityId::TheoremTotient);
    }

    #[test]
    fn small_suite_passes() {
        let reports = verify_all(10);
        for r in &reports {
            assert!(r.pass, "{} failed: {:?}", r.identity, r);
        }
        assert!(all_pass(&reports));
    }

    #[test]
    fn lemma2_moebius_half() {
        let r = verify(IdentityId::Lemma2Moebius(RationalPoint::new(1, 2).unwrap()), 30);
        assert!(r.pass);
        assert_eq!(r.rhs, "0.500000000000000000000000000000");
    }

    #[test]
    fn undersized_table_fails_with_reason() {
        let table = ArithFnTable::build(10).unwrap();
        let r = verify_with_table(IdentityId::TheoremTotient, 20, &table);
        assert!(!r.pass);
        assert!(r.reason.unwrap().contains("too small"));
    }

    #[test]
    fn exp_cap_surfaces_as_failure() {
        let r = verify(IdentityId::GeneralProductTotient(RationalPoint::new(19, 20).unwrap()), 5);
        assert!(!r.pass);
        assert!(r.reason.unwrap().contains("range"));
    }
}
