//! Exact expansion of `Σ_k (w(k)/k) Σ_i x^(ki)/i` as a truncated power series.
//!
//! Collecting the coefficient of `x^n` gives `(Σ_{k|n} w(k))/n`: all ones for
//! the totient and `[n = 1]` for the Möbius function. [`expand_double_sum`]
//! performs the double loop; [`expected_coefficients`] computes the divisor-sum
//! prediction independently; [`compare_series`] checks them exactly.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{ArithFnTable, Weight};
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE: usize = 200;

/// An exact rational in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalNumber(BigRational);

impl RationalNumber {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalNumber(BigRational::new(numerator.into(), denominator.into())))
    }

    pub fn zero() -> Self {
        RationalNumber(BigRational::zero())
    }

    pub fn one() -> Self {
        RationalNumber(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl core::ops::AddAssign<&RationalNumber> for RationalNumber {
    fn add_assign(&mut self, rhs: &RationalNumber) {
        self.0 += &rhs.0;
    }
}

/// Always `p/q`, including `q = 1`.
impl fmt::Display for RationalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Coefficients `c_1..c_N` of `Σ c_n x^n`; there is no constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedRationalSeries {
    coefficients: Vec<RationalNumber>,
}

impl TruncatedRationalSeries {
    pub fn from_coefficients(coefficients: Vec<RationalNumber>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Domain("series degree must be at least 1"));
        }
        Ok(TruncatedRationalSeries { coefficients })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficient of `x^n` for `1 ≤ n ≤ degree`.
    pub fn coefficient(&self, n: usize) -> Option<&RationalNumber> {
        n.checked_sub(1).and_then(|i| self.coefficients.get(i))
    }

    /// `(n, c_n)` pairs in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &RationalNumber)> {
        self.coefficients.iter().enumerate().map(|(i, c)| (i + 1, c))
    }
}

fn check_degree(degree: usize, table: &ArithFnTable) -> Result<()> {
    if degree == 0 {
        return Err(Error::Domain("series degree must be at least 1"));
    }
    if table.limit() < degree {
        return Err(Error::TableTooSmall {
            required: degree,
            limit: table.limit(),
        });
    }
    Ok(())
}

/// Adds `w(k)/(k·i)` into coefficient `k·i` for every `k·i ≤ degree`.
pub fn expand_double_sum(
    weight: Weight,
    degree: usize,
    table: &ArithFnTable,
) -> Result<TruncatedRationalSeries> {
    check_degree(degree, table)?;
    let mut coefficients = alloc::vec![RationalNumber::zero(); degree];
    for k in 1..=degree {
        let w = table.weight(weight, k)?;
        if w == 0 {
            continue;
        }
        for i in 1..=degree / k {
            let term = RationalNumber::new(w, (k * i) as i64)?;
            coefficients[k * i - 1] += &term;
        }
    }
    TruncatedRationalSeries::from_coefficients(coefficients)
}

/// Coefficient `n` is `(Σ_{d|n} w(d))/n`.
pub fn expected_coefficients(
    weight: Weight,
    degree: usize,
    table: &ArithFnTable,
) -> Result<TruncatedRationalSeries> {
    check_degree(degree, table)?;
    let coefficients = (1..=degree)
        .map(|n| {
            let sum = match weight {
                Weight::Totient => table.divisor_sum_totient(n)? as i64,
                Weight::Moebius => table.divisor_sum_moebius(n)?,
            };
            RationalNumber::new(sum, n as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedRationalSeries::from_coefficients(coefficients)
}

/// Degrees (1-based) at which the two series differ.
pub fn compare_series(
    a: &TruncatedRationalSeries,
    b: &TruncatedRationalSeries,
) -> Result<Vec<usize>> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(a
        .iter()
        .zip(b.iter())
        .filter(|((_, x), (_, y))| x != y)
        .map(|((n, _), _)| n)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn series(values: &[(i64, i64)]) -> TruncatedRationalSeries {
        TruncatedRationalSeries::from_coefficients(
            values.iter().map(|&(p, q)| RationalNumber::new(p, q).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_expansions() {
        let t = ArithFnTable::build(12).unwrap();
        assert_eq!(expand_double_sum(Weight::Totient, 6, &t).unwrap(), series(&[(1, 1); 6]));
        assert_eq!(
            expand_double_sum(Weight::Moebius, 6, &t).unwrap(),
            series(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)])
        );
        assert_eq!(expand_double_sum(Weight::Totient, 1, &t).unwrap(), series(&[(1, 1)]));
        let e = expected_coefficients(Weight::Totient, 12, &t).unwrap();
        assert!(e.coefficient(12).unwrap().is_one());
        assert!(e.coefficient(0).is_none());
        assert!(e.coefficient(13).is_none());
    }

    #[test]
    fn mismatch_positions() {
        let a = series(&[(1, 1), (1, 1)]);
        let b = series(&[(1, 1), (0, 1)]);
        assert_eq!(compare_series(&a, &b).unwrap(), vec![2]);
        assert_eq!(
            compare_series(&a, &series(&[(1, 1)])),
            Err(Error::DegreeMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn canonical_form() {
        let r = RationalNumber::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(RationalNumber::new(0, 7).unwrap().to_string(), "0/1");
        assert!(RationalNumber::new(1, 0).is_err());
    }

    #[test]
    fn degree_and_table_checks() {
        let t = ArithFnTable::build(10).unwrap();
        assert!(expand_double_sum(Weight::Totient, 0, &t).is_err());
        assert_eq!(
            expected_coefficients(Weight::Moebius, 11, &t),
            Err(Error::TableTooSmall {
                required: 11,
                limit: 10
            })
        );
    }

    #[test]
    fn mutated_table_is_detected() {
        let t = ArithFnTable::build(12).unwrap().with_moebius_override(6, -1).unwrap();
        let a = expand_double_sum(Weight::Moebius, 12, &t).unwrap();
        let b = expected_coefficients(Weight::Moebius, 12, &t).unwrap();
        // both routes read the same table, so corruption only shows against a clean one
        assert_eq!(compare_series(&a, &b).unwrap(), vec![]);
        let clean = expected_coefficients(Weight::Moebius, 12, &ArithFnTable::build(12).unwrap()).unwrap();
        assert_eq!(compare_series(&a, &clean).unwrap(), vec![6, 12]);
    }
}
