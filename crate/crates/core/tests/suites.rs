use logcalc_core::intertwiner::{annihilating_order, ode_solution, ode_structure_check, truncated_exp_log};
use logcalc_core::logseries::euler_power;
use logcalc_core::suites::{comb_suite, lubell_suite, module_suite, ode_suite, taylor_suite};
use logcalc_core::{CoeffSpace, CoeffVector, ExactScalar, Exponent, LogSeries, Monomial, Var};
use proptest::prelude::*;

fn x() -> Var {
    Var::new("x")
}

#[test]
fn ode_solution_with_top_coefficient() {
    let a = Exponent::frac(1, 3).unwrap();
    let f = ode_solution(&x(), &a, CoeffSpace::Vector(2), &[CoeffVector::basis(0), CoeffVector::zero(), CoeffVector::basis(1)]);
    assert_eq!(annihilating_order(&f, &x(), &a, 6), Some(3));
    assert!(ode_structure_check(&f, &x(), &a, 3).pass);
}

#[test]
fn non_minimal_order_still_passes() {
    // m = 3 is not minimal here, and the (log x)^2 coefficient is zero, as the statement requires.
    let a = Exponent::int(-1);
    let f =
        ode_solution(&x(), &a, CoeffSpace::Scalar, &[CoeffVector::scalar(ExactScalar::int(2)), CoeffVector::scalar(ExactScalar::one())]);
    let c = ode_structure_check(&f, &x(), &a, 3);
    assert!(c.pass, "{}", c.detail);
    assert_eq!(annihilating_order(&f, &x(), &a, 6), Some(2));
}

#[test]
fn wrong_exponent_is_never_annihilated() {
    let f = LogSeries::power(&x(), Exponent::frac(1, 2).unwrap(), 0);
    assert_eq!(annihilating_order(&f, &x(), &Exponent::zero(), 10), None);
    assert!(!ode_structure_check(&f, &x(), &Exponent::zero(), 2).pass);
}

#[test]
fn truncated_exponential_of_log_leaves_top_term() {
    let a = Exponent::int(1);
    let b = Exponent::zero();
    for t in 0..5 {
        let f = truncated_exp_log(&x(), &a, &b, t);
        let r = euler_power(&f, &x(), &a.to_scalar(), 1);
        assert_eq!(r.len(), 1);
        assert!(!r.coeff(&Monomial::power(&x(), b.clone(), t)).is_zero());
    }
}

#[test]
fn deterministic_suites_pass() {
    assert!(comb_suite(8).passed());
    assert!(lubell_suite(5, 3).passed());
    assert!(ode_suite(30, 1).passed());
    assert!(module_suite(3, 3, 6).unwrap().passed());
}

#[test]
fn taylor_suite_is_seeded() {
    let a = taylor_suite(10, 4, 9).unwrap();
    let b = taylor_suite(10, 4, 9).unwrap();
    assert!(a.passed());
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimality_matches_top_coefficient(num in -24i64..24, ws in proptest::collection::vec(-2i64..=2, 1..5)) {
        let a = Exponent::frac(num, 12).unwrap();
        let coeffs: Vec<CoeffVector> = ws.iter().map(|&w| CoeffVector::scalar(ExactScalar::int(w))).collect();
        let f = ode_solution(&x(), &a, CoeffSpace::Scalar, &coeffs);
        let m = ws.len() as u32;
        prop_assert!(ode_structure_check(&f, &x(), &a, m).pass);
        let expected = ws.iter().rposition(|&w| w != 0).map(|p| p as u32 + 1).unwrap_or(0);
        prop_assert_eq!(annihilating_order(&f, &x(), &a, 8), Some(expected));
    }
}
