extern crate std;

use alloc::format;

use proptest::prelude::*;

use super::*;
use crate::scalars::{ExactScalar, Exponent, Rat};

fn x() -> Var {
    Var::new("x")
}

pub(crate) fn exponent() -> impl Strategy<Value = Exponent> {
    (-24i64..24, prop_oneof![3 => Just(0i64), 1 => -6i64..6]).prop_map(|(re, im)| Exponent::new(Rat::new(re, 12), Rat::new(im, 4)).unwrap())
}

pub(crate) fn series_in(var: &'static str) -> impl Strategy<Value = LogSeries> {
    proptest::collection::vec((exponent(), 0u32..4, -5i64..6, 1i64..4), 0..5).prop_map(move |ts| {
        let v = Var::new(var);
        let mut s = LogSeries::zero(CoeffSpace::Scalar);
        for (e, k, n, d) in ts {
            s.add_scalar_term(Monomial::power(&v, e, k), ExactScalar::frac(n, d));
        }
        s
    })
}

#[test]
fn canonical_text() {
    let mut s = LogSeries::zero(CoeffSpace::Scalar);
    s.add_scalar_term(Monomial::power(&x(), Exponent::frac(1, 2).unwrap(), 2), ExactScalar::int(3));
    s.add_scalar_term(Monomial::power(&x(), Exponent::frac(-1, 2).unwrap(), 0), ExactScalar::frac(1, 2));
    assert_eq!(format!("{s}"), "(1/2)*x^(-1/2) + 3*x^(1/2)*lg(x)^2");
    let t = s.truncate(&Var::new("y"), 4);
    assert_eq!(format!("{t}"), "(1/2)*x^(-1/2) + 3*x^(1/2)*lg(x)^2 + O(y^5)");
    assert_eq!(format!("{}", LogSeries::zero(CoeffSpace::Scalar)), "0");
    let neg = LogSeries::power(&x(), Exponent::int(-1), 1).scale(&ExactScalar::int(-1));
    assert_eq!(format!("{neg}"), "-x^(-1)*lg(x)");
}

#[test]
fn derivative_examples() {
    // d/dx x^2 log x = 2x log x + x
    let f = LogSeries::power(&x(), Exponent::int(2), 1);
    let mut want = LogSeries::zero(CoeffSpace::Scalar);
    want.add_scalar_term(Monomial::power(&x(), Exponent::int(1), 1), ExactScalar::int(2));
    want.add_scalar_term(Monomial::power(&x(), Exponent::int(1), 0), ExactScalar::one());
    assert_eq!(d_dx(&f, &x()), want);
    // d/dx log x = x^{-1}
    assert_eq!(d_dx(&LogSeries::power(&x(), Exponent::zero(), 1), &x()), LogSeries::power(&x(), Exponent::int(-1), 0));
    assert!(d_dx(&LogSeries::one(), &x()).is_zero());
}

#[test]
fn undefined_vector_product() {
    let v = LogSeries::vector_term(CoeffSpace::Vector(2), Monomial::one(), CoeffVector::basis(1));
    assert!(matches!(v.mul(&v), Err(SeriesError::UndefinedProduct(_, _))));
    assert!(v.mul(&LogSeries::var(&x())).is_ok());
}

#[test]
fn truncation_propagates_min() {
    let y = Var::new("y");
    let a = (&LogSeries::one() + &LogSeries::var(&y)).truncate(&y, 3);
    let b = (&LogSeries::one() + &LogSeries::var(&y)).truncate(&y, 2);
    let p = a.mul(&b).unwrap();
    assert_eq!(p.trunc_of(&y), Some(2));
    assert_eq!(a.pow(5).unwrap().trunc_of(&y), Some(3));
    assert!(p.terms().all(|(m, _)| m.exponent(&y).re() <= &Rat::int(2)));
}

#[test]
fn exp_diffop_requires_fresh_variable() {
    let f = &LogSeries::var(&x()) + &LogSeries::var(&Var::new("y"));
    let r = exp_diffop(&f, &Var::new("y"), &LogSeries::one(), &x(), 3);
    assert!(matches!(r, Err(SeriesError::VariableNotFresh(_))));
    let bad_op = LogSeries::power(&x(), Exponent::int(1), 1);
    assert!(matches!(apply_diffop(&f, &bad_op, &x()), Err(SeriesError::NotLaurentPolynomial(_))));
}

#[test]
fn closed_form_symbolic_log_power() {
    // (d/dx)^2 x^3 (log x)^{1/2}: j = 0 coefficient is 3·2 = 6, j = 1 coefficient is (1/2)(3+2) = 5/2
    let cf = kth_derivative_closed_form(&Exponent::int(3), &ExactScalar::frac(1, 2), 2);
    assert_eq!(cf[0].1, ExactScalar::int(6));
    assert_eq!(cf[1].1, ExactScalar::frac(5, 2));
    assert_eq!(cf[2].1, ExactScalar::frac(-1, 4));
}

proptest! {
    #[test]
    fn closed_form_matches_iteration(n in exponent(), m in 0u32..5, k in 0u32..7) {
        let f = LogSeries::power(&x(), n.clone(), m);
        prop_assert_eq!(kth_derivative_series(&x(), &n, m, k), nth_derivative(&f, &x(), k));
    }

    #[test]
    fn leibniz(f in series_in("x"), g in series_in("x")) {
        let lhs = d_dx(&f.mul(&g).unwrap(), &x());
        let rhs = &d_dx(&f, &x()).mul(&g).unwrap() + &f.mul(&d_dx(&g, &x())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linearity(f in series_in("x"), g in series_in("x"), c in -5i64..5) {
        let c = ExactScalar::int(c);
        let lhs = d_dx(&(&f.scale(&c) + &g), &x());
        prop_assert_eq!(lhs, &d_dx(&f, &x()).scale(&c) + &d_dx(&g, &x()));
    }

    #[test]
    fn ring_laws(f in series_in("x"), g in series_in("x"), h in series_in("x")) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&(&g + &h)).unwrap(), &f.mul(&g).unwrap() + &f.mul(&h).unwrap());
        prop_assert!((&f - &f).is_zero());
    }
}
