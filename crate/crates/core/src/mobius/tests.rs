extern crate std;

use alloc::vec;

use proptest::prelude::*;

use super::catalog::*;
use super::*;
use crate::logseries::{d_dx, CoeffSpace, CoeffVector, LogSeries, Monomial, Var};
use crate::scalars::Rat;

fn s(n: i64) -> ExactScalar {
    ExactScalar::int(n)
}

#[test]
fn jordan_pair_is_mobius_but_not_sl2() {
    let j = jordan_block("J", Exponent::frac(1, 3).unwrap(), 2);
    assert!(!j.is_full_sl2());
    assert_eq!(j.nilpotency(), 2);
    let rep = validate_sl2(j.space(), j.action());
    assert!(!rep.find(SL2_BRACKET).unwrap().pass);
    assert!(rep.checks.iter().filter(|c| c.id != SL2_BRACKET).all(|c| c.pass));
}

#[test]
fn irreps_satisfy_sl2() {
    for d in 1..=4 {
        assert!(sl2_irrep("V", d).is_full_sl2(), "dim {d}");
    }
    for seed in 0..10 {
        assert!(random_sl2_module(seed).is_full_sl2());
        assert!(random_jordan_module(seed).nilpotency() >= 2);
    }
}

#[test]
fn invalid_modules_are_rejected() {
    let z = ExactMatrix::zero(2, 2);
    let mixing = ExactMatrix::from_rows(vec![vec![s(0), s(1)], vec![s(0), s(1)]]);
    let sp = GradedSpace::new("bad", vec![Exponent::int(0), Exponent::int(1)]);
    let err = Module::new(sp.clone(), Sl2Action { lm1: z.clone(), l0: mixing, l1: z.clone() }).unwrap_err();
    assert_eq!(err.relation, "nilpotence");
    // L(−1) lowering instead of raising
    let wrong = ExactMatrix::from_rows(vec![vec![s(0), s(1)], vec![s(0), s(0)]]);
    let l0 = ExactMatrix::diagonal(&[s(0), s(1)]);
    let err = Module::new(sp, Sl2Action { lm1: wrong, l0, l1: z }).unwrap_err();
    assert_eq!(err.relation, "[L(0),L(-1)]=L(-1)");
}

#[test]
fn conjugation_identities() {
    let mut mods = vec![sl2_irrep("V3", 3), sl2_irrep("V2", 2)];
    mods.extend((0..3).map(random_sl2_module));
    mods.extend((0..3).map(random_jordan_module));
    for m in &mods {
        let mut ids = vec![ConjIdentity::ExpL0, ConjIdentity::OneMinusX, ConjIdentity::NilpotentCommutes];
        for j in -1..=1 {
            ids.push(ConjIdentity::XL0Lj(j));
            ids.push(ConjIdentity::XL0ExpLj(j));
        }
        for r in -2..=1 {
            ids.push(ConjIdentity::InverseRel(r));
            ids.push(ConjIdentity::XtoInverse(r));
        }
        if m.is_full_sl2() {
            ids.push(ConjIdentity::ExpLm1);
            ids.push(ConjIdentity::ExpL1);
        }
        for id in ids {
            let c = conj_identity_check(m, id, 6).unwrap();
            assert!(c.pass, "{} on {}: {:?}", c.id, m.name(), c.witness);
        }
    }
}

#[test]
fn sl2_identities_need_the_bracket() {
    let j = jordan_block("J", Exponent::int(1), 2);
    assert!(!conj_identity_check(&j, ConjIdentity::ExpL1, 4).unwrap().pass);
}

#[test]
fn contragredient_pairing() {
    let x = Var::new("x");
    for seed in 0..6 {
        for m in [random_sl2_module(seed), random_jordan_module(seed)] {
            let d = m.contragredient();
            assert_eq!(d.contragredient(), m);
            for a in 0..m.dim() {
                for b in 0..m.dim() {
                    let (wp, w) = (CoeffVector::basis(a), CoeffVector::basis(b));
                    for j in -1..=1 {
                        let lhs = Module::pair(&wp.apply(d.l(j)), &w);
                        assert_eq!(lhs, Module::pair(&wp, &w.apply(m.l(-j))));
                    }
                    // ⟨x^{L'(0)} w', w⟩ = ⟨w', x^{L(0)} w⟩
                    let lhs = d.x_pm_l0(&wp, 1, &x).map_coeffs(CoeffSpace::Scalar, |v| CoeffVector::scalar(Module::pair(v, &w)));
                    let rhs = m.x_pm_l0(&w, 1, &x).map_coeffs(CoeffSpace::Scalar, |v| CoeffVector::scalar(Module::pair(&wp, v)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn x_l0_properties(seed in 0u64..50, c in proptest::collection::vec(-3i64..4, 4)) {
        let x = Var::new("x");
        let m = random_jordan_module(seed);
        let w = CoeffVector::from_dense(&c[..m.dim()].iter().map(|&v| s(v)).collect::<alloc::vec::Vec<_>>());
        let f = m.x_pm_l0(&w, 1, &x);
        // x d/dx x^{L(0)} w = L(0) x^{L(0)} w
        let lhs = d_dx(&f, &x).shift(&Monomial::power(&x, Exponent::int(1), 0));
        prop_assert_eq!(lhs, f.map_coeffs(f.space(), |v| v.apply(m.l(0))));
        let prod = m.x_pm_l0_matrix(1, &x).mul(&m.x_pm_l0_matrix(-1, &x)).unwrap();
        let id = LogSeries::vector_term(CoeffSpace::Matrix(m.dim()), Monomial::one(), CoeffVector::identity(m.dim()));
        prop_assert_eq!(prod, id);
    }

    #[test]
    fn e_a_l0_group_law(seed in 0u64..50, p in -3i64..4, q in -3i64..4) {
        let m = random_jordan_module(seed);
        let a = ExactScalar::pi().scale_rat(&Rat::int(2 * p));
        let b = ExactScalar::pi().scale_rat(&Rat::int(q));
        let lhs = &m.e_a_l0(&a).unwrap() * &m.e_a_l0(&b).unwrap();
        prop_assert_eq!(lhs, m.e_a_l0(&(&a + &b)).unwrap());
    }
}
