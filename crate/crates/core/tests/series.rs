use golden_core::series::{partial_sums, tail_bound};
use golden_core::{
    eval_product_form, eval_weighted_log_series, matched_digits, truncation_index, ArithFnTable,
    Constant, FixedPointValue, Point, PrecisionContext, SeriesSpec, Weight,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

/// Smallest K with x^(K+1)/((1−x)(1−x^(K+1))) < 10^(−D−1), in f64 logs.
fn truncation_oracle(x: f64, digits: u32) -> usize {
    let target = -(digits as f64 + 1.0);
    (1..)
        .find(|&k: &usize| {
            let p = x.powi(k as i32 + 1);
            p.log10() - (1.0 - x).log10() - (1.0 - p).log10() < target
        })
        .unwrap()
}

#[test]
fn truncation_index_agrees_with_float_oracle() {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let c = ctx(100);
    let cases = [
        ("0.5", 0.5, 30u32),
        ("0.3", 0.3, 60),
        ("0.7", 0.7, 50),
        ("0.95", 0.95, 50),
        ("0.0000000001", 1e-10, 30),
    ];
    for (text, x, d) in cases {
        let fx = FixedPointValue::parse(text, 120).unwrap();
        assert_eq!(truncation_index(&fx, d, 20).unwrap(), truncation_oracle(x, d), "x = {text}");
    }
    let k = truncation_index(&c.constant(Constant::GoldenInverse), 100, 20).unwrap();
    assert_eq!(k, truncation_oracle(inv_phi, 100));
    assert!(k <= 520);
}

#[test]
fn lemma2_on_random_rationals() {
    let c = ctx(50);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut points = Vec::new();
    while points.len() < 20 {
        let den: u64 = rng.gen_range(2..=1000);
        let num: u64 = rng.gen_range(1..den);
        let x = num as f64 / den as f64;
        if x > 0.05 && x < 0.95 {
            points.push((num, den));
        }
    }
    let table = ArithFnTable::build(3000).unwrap();
    for (num, den) in points {
        let point = Point::rational(num, den).unwrap();
        let tot = SeriesSpec::at_point(Weight::Totient, &point, c).unwrap();
        let mob = SeriesSpec::at_point(Weight::Moebius, &point, c).unwrap();
        let geometric = c.ratio(num as i64, (den - num) as i64).unwrap();
        let x = c.ratio(num as i64, den as i64).unwrap();
        let t = eval_weighted_log_series(&tot, &table).unwrap();
        let m = eval_weighted_log_series(&mob, &table).unwrap();
        assert!(matched_digits(&t.value, &geometric) >= 50, "{num}/{den}");
        assert!(matched_digits(&m.value, &x) >= 50, "{num}/{den}");
    }
}

#[test]
fn totient_partial_sums_are_nondecreasing() {
    let c = ctx(40);
    let table = ArithFnTable::build(400).unwrap();
    for point in [Point::rational(3, 10).unwrap(), Point::GoldenInverse] {
        let spec = SeriesSpec::at_point(Weight::Totient, &point, c).unwrap();
        let sums = partial_sums(&spec, &table, 300).unwrap();
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
        assert!(sums[0].is_positive());
    }
}

#[test]
fn tail_bound_dominates_brute_tail() {
    let table = ArithFnTable::build(2100).unwrap();
    let c = ctx(40);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let points = [
        (c.parse("0.3").unwrap(), 0.3),
        (c.parse("0.5").unwrap(), 0.5),
        (c.constant(Constant::GoldenInverse), inv_phi),
    ];
    for (fx, x) in &points {
        for k in [10usize, 20, 40] {
            let bound: f64 = tail_bound(fx, k, &c).unwrap().to_string().parse().unwrap();
            for weight in [Weight::Totient, Weight::Moebius] {
                let brute: f64 = ((k + 1)..=(k + 2000))
                    .map(|j| {
                        let w = table.weight(weight, j).unwrap().abs() as f64;
                        w / j as f64 * -(-x.powi(j as i32)).ln_1p()
                    })
                    .sum();
                assert!(brute <= bound, "x={x} K={k} {weight}: {brute} > {bound}");
            }
        }
    }
}

#[test]
fn reported_bounds_fit_the_target() {
    let c = ctx(60);
    let table = ArithFnTable::build(2000).unwrap();
    let spec = SeriesSpec::at_point(Weight::Totient, &Point::GoldenInverse, c).unwrap();
    let r = eval_weighted_log_series(&spec, &table).unwrap();
    let total = c.add(&r.tail_bound, &r.rounding_budget).unwrap();
    let target = FixedPointValue::parse(&format!("0.{}1", "0".repeat(59)), c.working_digits()).unwrap();
    assert!(total < target);
    assert!(r.tail_bound.is_positive() && r.rounding_budget.is_positive());
}

#[test]
fn two_precision_consistency() {
    let lo = ctx(40);
    let hi = ctx(60);
    let table = ArithFnTable::build(2000).unwrap();
    for weight in [Weight::Totient, Weight::Moebius] {
        for point in [Point::GoldenInverse, Point::rational(7, 10).unwrap(), Point::Decimal("0.3".into())] {
            let a = eval_weighted_log_series(&SeriesSpec::at_point(weight, &point, lo).unwrap(), &table).unwrap();
            let b = eval_weighted_log_series(&SeriesSpec::at_point(weight, &point, hi).unwrap(), &table).unwrap();
            assert!(matched_digits(&a.value, &b.value) >= 40);
            let a = eval_product_form(&SeriesSpec::at_point(weight, &point, lo).unwrap(), &table).unwrap();
            let b = eval_product_form(&SeriesSpec::at_point(weight, &point, hi).unwrap(), &table).unwrap();
            assert!(matched_digits(&a.value, &b.value) >= 40);
        }
    }
}

#[test]
fn product_forms() {
    let c = ctx(30);
    let table = ArithFnTable::build(500).unwrap();
    let half = Point::rational(1, 2).unwrap();
    let p = eval_product_form(&SeriesSpec::at_point(Weight::Moebius, &half, c).unwrap(), &table).unwrap();
    assert!(matched_digits(&p.value, &c.exp(&c.ratio(1, 2).unwrap()).unwrap()) >= 30);
    assert_eq!(p.value.round_to(16).to_string(), "1.6487212707001281");

    let c = ctx(100);
    let table = ArithFnTable::build(600).unwrap();
    let spec = SeriesSpec::at_point(Weight::Totient, &Point::GoldenInverse, c).unwrap();
    let p = eval_product_form(&spec, &table).unwrap();
    let e_phi = c.exp(&c.constant(Constant::Golden)).unwrap();
    assert!(matched_digits(&p.value, &e_phi) >= 100);
}

#[test]
fn theorem_at_one_hundred_digits() {
    let c = ctx(100);
    let table = ArithFnTable::build(600).unwrap();
    let spec = SeriesSpec::at_point(Weight::Totient, &Point::GoldenInverse, c).unwrap();
    let r = eval_weighted_log_series(&spec, &table).unwrap();
    assert!(matched_digits(&r.value, &c.constant(Constant::Golden)) >= 100);
    assert!(r.terms_used <= 520);
}
