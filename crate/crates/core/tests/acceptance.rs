//! Acceptance criteria, one check per criterion.
//!
//! Run with `cargo test -p catalan-core --test acceptance -- --nocapture` to
//! see the PASS/FAIL line printed for each one.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};

use catalan_core::bounds::{
    asymptotic_ratio, minimal_inductive_constant, radius_estimate, ratio_test_exact, root_test,
    verify_lower_central_binomial, verify_lower_touchard, verify_segner_upper_bound,
    verify_upper_bound_induction,
};
use catalan_core::catalan::{catalan_segner, cross_validate, even_binomial_sum, segner_summands};
use catalan_core::series::{
    catalan_series_fixed_point, catalan_series_sqrt_formula, verify_touchard_derivation,
    SeriesResidual, TruncatedSeries,
};
use catalan_core::singularity::{locate_singularity, ImplicitQuadratic, SingularityOutcome};

const GENERATOR_N: u64 = 2000;
const GENERATOR_SECONDS: f64 = 30.0;
const DERIVATION_ORDER: usize = 512;
const DERIVATION_TERMS: usize = 256;
const DERIVATION_SECONDS: f64 = 60.0;
const FUNCTIONAL_ORDER: usize = 512;
const EVEN_BINOMIAL_N: u64 = 1000;
const BOUNDS_N: u64 = 2000;
const ROOT_TEST_N: u64 = 2000;
const ROOT_WINDOW: (f64, f64) = (3.95, 4.0);
const RATIO_TEST_N: u64 = 1000;
const ASYMPTOTIC_N: u64 = 1000;
const ASYMPTOTIC_WINDOW: (f64, f64) = (0.995, 1.0);
const RADIUS_N: u64 = 2000;
const RADIUS_TOLERANCE: f64 = 0.001;
const PROPERTY_CASES: u32 = 128;
const PROPERTY_MAX_ORDER: usize = 64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn four_way_agreement() -> Outcome {
    let start = Instant::now();
    let report = cross_validate(GENERATOR_N).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(
        report.all_agree(),
        format!("first disagreement at {:?}", report.first_disagreement),
    )?;
    ensure(
        report.agreement.len() as u64 == GENERATOR_N + 1,
        "short report",
    )?;
    ensure(
        secs < GENERATOR_SECONDS,
        format!("took {secs:.1}s, budget {GENERATOR_SECONDS}s"),
    )?;
    Ok(format!(
        "n <= {GENERATOR_N}, four generators identical, {secs:.2}s"
    ))
}

fn touchard_derivation_replay() -> Outcome {
    let start = Instant::now();
    let residual = verify_touchard_derivation(DERIVATION_ORDER, DERIVATION_TERMS)
        .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(
        residual.is_zero() && residual.max_abs_deviation.is_zero(),
        format!(
            "residual nonzero from index {:?}",
            residual.first_failing_index
        ),
    )?;
    ensure(
        secs < DERIVATION_SECONDS,
        format!("took {secs:.1}s, budget {DERIVATION_SECONDS}s"),
    )?;
    Ok(format!(
        "order {DERIVATION_ORDER}, K = {DERIVATION_TERMS}: residual 0, {secs:.2}s"
    ))
}

fn functional_equation() -> Outcome {
    let n = FUNCTIONAL_ORDER;
    let w = catalan_series_fixed_point(n);
    let rhs = &TruncatedSeries::one(n) + &(&w * &w).shift_up(1);
    let residual = SeriesResidual::between(&w, &rhs);
    ensure(
        residual.is_zero(),
        format!(
            "w - 1 - x w^2 nonzero at {:?}",
            residual.first_failing_index
        ),
    )?;
    let via_sqrt = catalan_series_sqrt_formula(n).map_err(|e| e.to_string())?;
    let agree = SeriesResidual::between(&w, &via_sqrt);
    ensure(
        agree.is_zero(),
        format!("constructions differ at {:?}", agree.first_failing_index),
    )?;
    Ok(format!(
        "order {n}: w = 1 + x w^2 exactly, fixed point = sqrt formula"
    ))
}

fn even_binomial_lemma() -> Outcome {
    for n in 1..=EVEN_BINOMIAL_N {
        let sum = even_binomial_sum(n).map_err(|e| e.to_string())?;
        ensure(
            sum == BigUint::one() << (n - 1),
            format!("fails at n = {n}"),
        )?;
    }
    Ok(format!(
        "sum_k binom(n, 2k) = 2^(n-1) for 1 <= n <= {EVEN_BINOMIAL_N}"
    ))
}

fn sandwich_bounds() -> Outcome {
    let reports = [
        verify_lower_central_binomial(BOUNDS_N),
        verify_segner_upper_bound(BOUNDS_N),
        verify_lower_touchard(BOUNDS_N),
    ];
    for r in reports {
        let r = r.map_err(|e| e.to_string())?;
        ensure(
            r.holds && r.checked_up_to == BOUNDS_N,
            format!("{} violated at {:?}", r.bound_name, r.first_violation),
        )?;
    }
    Ok(format!(
        "4^n/((n+1)(2n+1)) <= C_n <= 4^n and C_n >= 2^(n-1) for n <= {BOUNDS_N}"
    ))
}

fn induction_constant() -> Outcome {
    let a = minimal_inductive_constant().map_err(|e| e.to_string())?;
    ensure(a == rat(1, 1), format!("minimal constant {a}"))?;
    let r = verify_upper_bound_induction(&a, BOUNDS_N).map_err(|e| e.to_string())?;
    ensure(r.holds, format!("violated at {:?}", r.first_violation))?;
    ensure(
        r.step_check.as_ref().is_some_and(|s| s.holds()),
        "Touchard step budget failed",
    )?;
    Ok(format!("A = 1, induction holds to n = {BOUNDS_N}"))
}

fn root_ratio_convergence() -> Outcome {
    let root = root_test(ROOT_TEST_N).map_err(|e| e.to_string())?;
    ensure(
        ROOT_WINDOW.0 <= root && root < ROOT_WINDOW.1,
        format!("root_test({ROOT_TEST_N}) = {root}"),
    )?;
    let ratio = ratio_test_exact(RATIO_TEST_N);
    ensure(
        ratio == rat(2 * 2001, 1002),
        format!("ratio_test({RATIO_TEST_N}) = {ratio}"),
    )?;
    let asym = asymptotic_ratio(ASYMPTOTIC_N).map_err(|e| e.to_string())?;
    ensure(
        ASYMPTOTIC_WINDOW.0 <= asym && asym < ASYMPTOTIC_WINDOW.1,
        format!("asymptotic_ratio({ASYMPTOTIC_N}) = {asym}"),
    )?;
    Ok(format!(
        "root_test({ROOT_TEST_N}) = {root:.6}, ratio_test({RATIO_TEST_N}) = {ratio}, asymptotic_ratio({ASYMPTOTIC_N}) = {asym:.6}"
    ))
}

fn radius_bracket_and_point() -> Outcome {
    let est = radius_estimate(RADIUS_N).map_err(|e| e.to_string())?;
    ensure(
        est.touchard_only_bracket == (rat(1, 4), rat(1, 2)),
        "bracket is not [1/4, 1/2]",
    )?;
    let err = (est.radius_point_estimate - 0.25).abs();
    ensure(
        err <= RADIUS_TOLERANCE,
        format!("point estimate {} off by {err}", est.radius_point_estimate),
    )?;
    Ok(format!(
        "bracket [1/4, 1/2], point estimate {:.6} at n = {RADIUS_N}",
        est.radius_point_estimate
    ))
}

fn singularity() -> Outcome {
    let f = ImplicitQuadratic::catalan();
    let point = match locate_singularity(&f).map_err(|e| e.to_string())? {
        SingularityOutcome::Located { point, .. } => point,
        other => return Err(format!("no rational singularity: {other:?}")),
    };
    ensure(
        point.z_star == rat(1, 4) && point.w_star == rat(2, 1),
        format!("located ({}, {})", point.z_star, point.w_star),
    )?;
    let at_origin = f
        .regular_point_check(&BigRational::zero(), &BigRational::one())
        .map_err(|e| e.to_string())?;
    let at_singular = f
        .regular_point_check(&point.z_star, &point.w_star)
        .map_err(|e| e.to_string())?;
    ensure(at_origin && !at_singular, "regular point checks wrong")?;
    Ok("(z*, w*) = (1/4, 2); regular at (0, 1), singular at (1/4, 2)".into())
}

fn small_series() -> impl Strategy<Value = TruncatedSeries> {
    (0..=PROPERTY_MAX_ORDER).prop_flat_map(|order| {
        prop::collection::vec((-20i64..=20, 1i64..=6), order + 1).prop_map(|cs| {
            TruncatedSeries::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect())
        })
    })
}

fn check<T: std::fmt::Debug>(name: &str, r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });

    check(
        "ring axioms",
        runner.run(
            &(small_series(), small_series(), small_series()),
            |(a, b, c)| {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                Ok(())
            },
        ),
    )?;

    check(
        "sqrt and inverse",
        runner.run(&small_series(), |a| {
            let mut coeffs = a.coeffs().to_vec();
            coeffs[0] = BigRational::one();
            let a = TruncatedSeries::from_coeffs(coeffs);
            let s = a.sqrt().unwrap();
            prop_assert_eq!(&s * &s, a.clone());
            prop_assert!(s.constant_term().is_one());
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, TruncatedSeries::one(a.order()));
            Ok(())
        }),
    )?;

    let table = catalan_segner(PROPERTY_MAX_ORDER as u64 + 1).map_err(|e| e.to_string())?;
    check(
        "segner palindrome",
        runner.run(&(0..=PROPERTY_MAX_ORDER), |n| {
            let terms = segner_summands(table.values(), n);
            let mut rev = terms.clone();
            rev.reverse();
            prop_assert_eq!(&terms, &rev);
            let total: BigUint = terms.iter().sum();
            prop_assert_eq!(&total, &table.values()[n + 1]);
            Ok(())
        }),
    )?;

    check(
        "ratio monotone",
        runner.run(&(0u64..=PROPERTY_MAX_ORDER as u64), |n| {
            let r = ratio_test_exact(n);
            prop_assert!(ratio_test_exact(n + 1) > r);
            prop_assert!(r < BigRational::from_integer(BigInt::from(4)));
            Ok(())
        }),
    )?;

    Ok(format!(
        "ring axioms, sqrt/inverse, palindrome, ratio monotonicity: {PROPERTY_CASES} cases each, order <= {PROPERTY_MAX_ORDER}"
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("AC-01 four-way generator agreement", four_way_agreement),
        (
            "AC-02 Touchard derivation replay",
            touchard_derivation_replay,
        ),
        ("AC-03 functional equation", functional_equation),
        ("AC-04 even-binomial lemma", even_binomial_lemma),
        ("AC-05 sandwich bounds", sandwich_bounds),
        ("AC-06 induction constant", induction_constant),
        ("AC-07 root/ratio convergence", root_ratio_convergence),
        ("AC-08 radius bracket and point", radius_bracket_and_point),
        ("AC-09 singularity", singularity),
        ("AC-10 property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                println!("FAIL {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
