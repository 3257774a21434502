extern crate std;

use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;

fn eval(c: &Cyclotomic) -> (f64, f64) {
    let l = lattice().l() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, r) in c.coeffs().iter().enumerate() {
        let ang = core::f64::consts::PI * k as f64 / l;
        re += r.to_f64() * ang.cos();
        im += r.to_f64() * ang.sin();
    }
    (re, im)
}

fn cyc() -> impl Strategy<Value = Cyclotomic> {
    proptest::collection::vec((-9i64..9, 1i64..5), 0..8)
        .prop_map(|v| Cyclotomic::from_coeffs(v.into_iter().map(|(n, d)| Rat::new(n, d)).collect()))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    proptest::collection::vec((cyc(), -2i32..3), 0..3).prop_map(|v| {
        let mut acc = ExactScalar::zero();
        for (c, k) in v {
            acc += &ExactScalar::monomial(c, k);
        }
        acc
    })
}

#[test]
fn binom_half_two() {
    assert_eq!(binom_general(&ExactScalar::frac(1, 2), 2), ExactScalar::frac(-1, 8));
    assert_eq!(binom_int(-2, 3), Rat::int(-4));
}

#[test]
fn roots_of_unity() {
    assert_eq!(ExactScalar::root_of_unity(&Rat::int(1)).unwrap(), ExactScalar::int(-1));
    let i = ExactScalar::root_of_unity(&Rat::new(1, 2)).unwrap();
    assert_eq!(i, ExactScalar::imag_unit());
    assert_eq!(&i * &i, ExactScalar::int(-1));
    let z = ExactScalar::root_of_unity(&Rat::new(1, 12)).unwrap();
    assert_eq!(z.pow(24), ExactScalar::one());
    assert_ne!(z.pow(12), ExactScalar::one());
    // ω = e(2/3) satisfies ω² + ω + 1 = 0
    let w = ExactScalar::root_of_unity(&Rat::new(2, 3)).unwrap();
    assert!((&(&w * &w) + &w + ExactScalar::one()).is_zero());
    assert!(matches!(ExactScalar::root_of_unity(&Rat::new(1, 7)), Err(ScalarError::LatticeViolation(_))));
}

#[test]
fn pi_is_transcendental() {
    let p = ExactScalar::pi();
    let lhs = &(&p + &ExactScalar::one()) * &(&p - &ExactScalar::one());
    assert_eq!(lhs, &p.pow(2) - &ExactScalar::one());
    assert!(matches!(ExactScalar::one().div_monomial(&(&p + &ExactScalar::one())), Err(ScalarError::NonMonomialDivisor(_))));
    let two_pi = p.scale_rat(&Rat::int(2));
    assert_eq!(ExactScalar::one().div_monomial(&two_pi).unwrap(), ExactScalar::monomial(Cyclotomic::from_rat(Rat::new(1, 2)), -1));
}

#[test]
fn exponent_lattice() {
    assert!(Exponent::frac(1, 7).is_err());
    let e = Exponent::new(Rat::new(1, 2), Rat::new(-1, 3)).unwrap();
    assert_eq!(alloc::format!("{e}"), "1/2-1/3*i");
    assert_eq!(alloc::format!("{}", Exponent::new(Rat::zero(), Rat::one()).unwrap()), "i");
    assert!(e.congruent(&e.add_int(-3)));
}

#[test]
fn display_canonical() {
    let s = &(&ExactScalar::pi().pow(2) - &ExactScalar::one()) + &ExactScalar::imag_unit().scale_rat(&Rat::new(-1, 2));
    assert_eq!(alloc::format!("{s}"), "-1 - 1/2*e(1/2) + Pi^2");
    assert_eq!(alloc::format!("{}", ExactScalar::zero()), "0");
}

proptest! {
    #[test]
    fn cyclotomic_mul_matches_numeric(a in cyc(), b in cyc()) {
        let (ar, ai) = eval(&a);
        let (br, bi) = eval(&b);
        let (pr, pi) = eval(&(&a * &b));
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
    }

    #[test]
    fn cyclotomic_inverse(a in cyc()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn monomial_division(a in scalar(), c in cyc(), k in -3i32..4) {
        prop_assume!(!c.is_zero());
        let m = ExactScalar::monomial(c, k);
        prop_assert_eq!(&a.div_monomial(&m).unwrap() * &m, a);
    }

    #[test]
    fn binom_pascal(n in -20i64..20, k in 1u32..8) {
        let m = ExactScalar::int(n);
        let lhs = binom_general(&(&m + &ExactScalar::one()), k);
        let rhs = &binom_general(&m, k) + &binom_general(&m, k - 1);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn zeta_powers_cycle() {
    let v: Vec<Cyclotomic> = (0..48).map(Cyclotomic::zeta_pow).collect();
    for k in 0..24 {
        assert_eq!(v[k], v[k + 24]);
        assert_eq!(&v[k] * &v[1], v[k + 1]);
    }
}
