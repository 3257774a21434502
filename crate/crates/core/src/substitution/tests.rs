extern crate std;

use proptest::prelude::*;

use super::*;
use crate::logseries::{d_dx, exp_diffop};

fn v(s: &str) -> Var {
    Var::new(s)
}

fn real_exponent() -> impl Strategy<Value = Exponent> {
    (-24i64..24).prop_map(|n| Exponent::frac(n, 12).unwrap())
}

fn any_exponent() -> impl Strategy<Value = Exponent> {
    (-24i64..24, prop_oneof![2 => Just(0i64), 1 => -4i64..4]).prop_map(|(a, b)| Exponent::new(Rat::new(a, 12), Rat::new(b, 6)).unwrap())
}

fn series(exp: impl Strategy<Value = Exponent>) -> impl Strategy<Value = LogSeries> {
    proptest::collection::vec((exp, 0u32..4, -6i64..7, 1i64..4), 1..5).prop_map(|ts| {
        let mut s = LogSeries::zero(CoeffSpace::Scalar);
        for (e, k, n, d) in ts {
            s.add_scalar_term(Monomial::power(&v("x"), e, k), ExactScalar::frac(n, d));
        }
        s
    })
}

#[test]
fn log_of_exp_is_identity() {
    for n in 1..=12 {
        let got = log_one_plus(&exp_minus_one(&v("x"), n), n).unwrap();
        assert_eq!(got, LogSeries::var(&v("x")).truncate(&v("x"), n as i64), "order {n}");
    }
}

/// `f(x + yx)`, from `f(x + w)` with `w^k ↦ y^k x^k`.
fn shift_by_yx(f: &LogSeries, order: u32) -> LogSeries {
    let (x, y, w) = (v("x"), v("y"), v("w"));
    let fw = subst_x_plus_y(f, &x, &w, order).unwrap();
    let mut out = LogSeries::zero(f.space());
    for (m, c) in fw.terms() {
        let k = m.exponent(&w);
        let base = m.without(&w);
        let (ex, lx) = base.get(&x);
        out.add_term(base.with(&x, &ex + &k, lx).with(&y, k, 0), c.clone());
    }
    out.truncate(&y, order as i64)
}

#[test]
fn taylor_fails_for_shift_by_yx() {
    // e^{yx d/dx} f = f(xe^y), which is not f(x + yx).
    let x = v("x");
    let xop = LogSeries::var(&x);
    let lg = LogSeries::power(&x, Exponent::zero(), 1);
    let scaled = exp_diffop(&lg, &v("y"), &xop, &x, 4).unwrap();
    let shifted = shift_by_yx(&lg, 4);
    assert_eq!(alloc::format!("{scaled}"), "lg(x) + y + O(y^5)");
    assert_eq!(alloc::format!("{shifted}"), "lg(x) + y - (1/2)*y^2 + (1/3)*y^3 - (1/4)*y^4 + O(y^5)");
    for e in [Exponent::int(2), Exponent::frac(1, 3).unwrap()] {
        let f = LogSeries::power(&x, e, 1);
        let a = exp_diffop(&f, &v("y"), &xop, &x, 4).unwrap();
        assert_eq!(a, subst_x_exp_y(&f, &x, &v("y"), 4).unwrap());
        assert_ne!(a, shift_by_yx(&f, 4));
    }
    // For f = x they agree through first order in y.
    let lin = LogSeries::var(&x);
    assert_ne!(exp_diffop(&lin, &v("y"), &xop, &x, 4).unwrap(), shift_by_yx(&lin, 4));
}

#[test]
fn product_and_inverse_examples() {
    let f = LogSeries::power(&v("x"), Exponent::frac(1, 2).unwrap(), 1);
    let got = subst_xy(&f, &v("x"), &v("y")).unwrap();
    assert_eq!(alloc::format!("{got}"), "x^(1/2)*y^(1/2)*lg(y) + x^(1/2)*lg(x)*y^(1/2)");
    let inv = subst_x_inverse(&f, &v("x")).unwrap();
    assert_eq!(alloc::format!("{inv}"), "-x^(-1/2)*lg(x)");
}

#[test]
fn scaled_exp_examples() {
    let f = LogSeries::power(&v("x"), Exponent::frac(1, 2).unwrap(), 0);
    let two_pi = ExactScalar::pi().scale_rat(&Rat::int(2));
    assert_eq!(subst_scaled_exp(&f, &v("x"), &two_pi).unwrap(), f.scale(&ExactScalar::int(-1)));
    let lg = LogSeries::power(&v("x"), Exponent::zero(), 1);
    assert_eq!(subst_scaled_exp(&lg, &v("x"), &two_pi).unwrap(), &lg + &LogSeries::constant(two_pi.clone()));
    let cplx = LogSeries::power(&v("x"), Exponent::new(Rat::zero(), Rat::one()).unwrap(), 0);
    assert!(matches!(subst_scaled_exp(&cplx, &v("x"), &two_pi), Err(SeriesError::Scalar(ScalarError::LatticeViolation(_)))));
    let not_pi = &two_pi + &ExactScalar::one();
    assert!(matches!(subst_scaled_exp(&f, &v("x"), &not_pi), Err(SeriesError::Unsupported(_))));
}

#[test]
fn mobius_argument() {
    let (x, y) = (v("x"), v("y"));
    let order = 6;
    let (x1, lg) = mobius_arg_powers(&Exponent::int(1), &y, &x, order);
    // (1 − yx)·X = x
    let one_minus = (&LogSeries::one() - &LogSeries::var(&x).mul(&LogSeries::var(&y)).unwrap()).truncate(&y, order as i64);
    assert_eq!(one_minus.mul(&x1).unwrap(), LogSeries::var(&x).truncate(&y, order as i64));
    for n in 0..4 {
        let (xn, _) = mobius_arg_powers(&Exponent::int(n), &y, &x, order);
        assert_eq!(xn, x1.pow(n as u32).unwrap().truncate(&y, order as i64));
    }
    // d/dy log X = x/(1 − yx) = X
    assert_eq!(d_dx(&lg, &y), x1.truncate(&y, order as i64 - 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn taylor_theorem(f in series(any_exponent()), order in 0u32..6) {
        let lhs = exp_diffop(&f, &v("y"), &LogSeries::one(), &v("x"), order).unwrap();
        prop_assert_eq!(lhs, subst_x_plus_y(&f, &v("x"), &v("y"), order).unwrap());
    }

    #[test]
    fn scaling_theorem(f in series(any_exponent()), order in 0u32..6) {
        let lhs = exp_diffop(&f, &v("y"), &LogSeries::var(&v("x")), &v("x"), order).unwrap();
        prop_assert_eq!(lhs, subst_x_exp_y(&f, &v("x"), &v("y"), order).unwrap());
    }

    #[test]
    fn inverse_is_involution(f in series(any_exponent())) {
        prop_assert_eq!(subst_x_inverse(&subst_x_inverse(&f, &v("x")).unwrap(), &v("x")).unwrap(), f);
    }

    #[test]
    fn scaled_exp_composes(f in series(real_exponent()), a in -3i64..4, b in -3i64..4) {
        let za = ExactScalar::pi().scale_rat(&Rat::int(a));
        let zb = ExactScalar::pi().scale_rat(&Rat::int(2 * b));
        let two = subst_scaled_exp(&subst_scaled_exp(&f, &v("x"), &za).unwrap(), &v("x"), &zb).unwrap();
        prop_assert_eq!(two, subst_scaled_exp(&f, &v("x"), &(&za + &zb)).unwrap());
    }

    #[test]
    fn product_substitution_is_multiplicative(f in series(real_exponent()), g in series(real_exponent())) {
        let (x, y) = (v("x"), v("y"));
        let lhs = subst_xy(&f.mul(&g).unwrap(), &x, &y).unwrap();
        prop_assert_eq!(lhs, subst_xy(&f, &x, &y).unwrap().mul(&subst_xy(&g, &x, &y).unwrap()).unwrap());
    }
}
