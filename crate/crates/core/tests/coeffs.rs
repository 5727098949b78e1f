use golden_core::{
    compare_series, expand_double_sum, expected_coefficients, ArithFnTable, RationalNumber,
    TruncatedRationalSeries, Weight,
};
use num_integer::Integer;

/// Coefficients of x/(1−x) = x + x² + ….
fn geometric(degree: usize) -> TruncatedRationalSeries {
    TruncatedRationalSeries::from_coefficients(vec![RationalNumber::one(); degree]).unwrap()
}

#[test]
fn expansions_match_divisor_sums_through_500() {
    let table = ArithFnTable::build(500).unwrap();
    for weight in [Weight::Totient, Weight::Moebius] {
        for degree in (1..=500).step_by(37).chain([499, 500]) {
            let a = expand_double_sum(weight, degree, &table).unwrap();
            let b = expected_coefficients(weight, degree, &table).unwrap();
            assert!(compare_series(&a, &b).unwrap().is_empty(), "{weight} N={degree}");
        }
    }
}

#[test]
fn totient_expansion_is_geometric_series() {
    let table = ArithFnTable::build(500).unwrap();
    let a = expand_double_sum(Weight::Totient, 500, &table).unwrap();
    assert!(compare_series(&a, &geometric(500)).unwrap().is_empty());
}

#[test]
fn moebius_expansion_is_x() {
    let table = ArithFnTable::build(500).unwrap();
    let a = expand_double_sum(Weight::Moebius, 500, &table).unwrap();
    for (n, c) in a.iter() {
        assert_eq!(c.is_one(), n == 1);
        assert_eq!(c.is_zero(), n > 1);
    }
}

#[test]
fn coefficients_stay_canonical() {
    let table = ArithFnTable::build(300).unwrap();
    for weight in [Weight::Totient, Weight::Moebius] {
        for series in [
            expand_double_sum(weight, 300, &table).unwrap(),
            expected_coefficients(weight, 300, &table).unwrap(),
        ] {
            for (_, c) in series.iter() {
                assert!(c.denominator() > &0.into());
                assert_eq!(c.numerator().gcd(c.denominator()), 1.into());
            }
        }
    }
}
