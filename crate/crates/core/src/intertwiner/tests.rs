use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::fixtures::{generic, jacobi_instance, jordan_tables, nilpotent_vertex_table, sl2_tables, vertex_operator_table};
use super::*;
use crate::logseries::CoeffVector;
use crate::mobius::catalog::{jordan_block, sl2_irrep, trivial};
use crate::mobius::{GradingGroup, GroupElem, Module};
use crate::scalars::{ExactScalar, Exponent};

fn passes(y: &IntertwinerTable, axioms: &[Axiom]) -> bool {
    axiom_check_all(y, axioms).passed()
}

fn perturb(y: &IntertwinerTable) -> IntertwinerTable {
    let mut p = y.clone();
    let (key, v) = y.modes().next().map(|(k, v)| (k.clone(), v.clone())).expect("nonempty");
    p.set(ModeKey::new(key.i, key.j, key.n.add_int(1), key.k), v);
    p
}

fn all_tables() -> Vec<(IntertwinerTable, &'static [Axiom])> {
    let mut out: Vec<(IntertwinerTable, &'static [Axiom])> = Vec::new();
    for t in jordan_tables() {
        out.push((t, &Axiom::L0_TYPE));
    }
    for t in sl2_tables() {
        out.push((t, &Axiom::FULL));
    }
    out
}

fn graded(m: Module, degrees: Vec<i64>) -> Module {
    let mut space = m.space().clone();
    space.group = GradingGroup { free_rank: 1, torsion: vec![] };
    space.degrees = degrees.into_iter().map(|d| GroupElem(vec![d])).collect();
    Module::new(space, m.action().clone()).expect("degrees are preserved by L(j)")
}

#[test]
fn vertex_operator_table_is_an_intertwiner() {
    for w in [sl2_irrep("S", 3), jordan_block("J", Exponent::frac(1, 3).unwrap(), 2), trivial("T")] {
        let y = vertex_operator_table(Arc::new(w));
        assert!(passes(&y, &Axiom::FULL));
        assert!(passes(&y, &[Axiom::Sl2Alt(-1), Axiom::Sl2Alt(0), Axiom::Sl2Alt(1), Axiom::L0Derivative, Axiom::Weight]));
    }
}

#[test]
fn shifted_mode_breaks_derivative_property() {
    let y = vertex_operator_table(Arc::new(sl2_irrep("S", 2)));
    let bad = perturb(&y);
    let c = axiom_check(&bad, Axiom::LMinus1Derivative);
    assert!(!c.pass);
    assert!(c.witness.is_some());
}

#[test]
fn solver_tables_satisfy_their_axioms() {
    let tabs = all_tables();
    assert!(tabs.len() >= 8);
    for (t, ax) in &tabs {
        assert!(!t.is_zero());
        assert!(passes(t, ax), "{:?}", axiom_check_all(t, ax).failures().next());
        assert!(passes(t, &[Axiom::Weight]));
    }
}

#[test]
fn bracket_forms_agree() {
    let all = |t: &IntertwinerTable, f: fn(i32) -> Axiom| (-1..=1).all(|j| axiom_check(t, f(j)).pass);
    for (t, _) in all_tables() {
        for cand in [t.clone(), perturb(&t)] {
            assert_eq!(all(&cand, Axiom::Sl2), all(&cand, Axiom::Sl2Alt));
            assert_eq!(axiom_check(&cand, Axiom::Sl2(-1)).pass, axiom_check(&cand, Axiom::Sl2Alt(-1)).pass);
        }
    }
}

#[test]
fn jordan_log_tables_fail_the_l0_bracket() {
    let t = &jordan_tables()[0];
    assert!(t.max_log() > 0);
    assert!(!axiom_check(t, Axiom::Sl2(0)).pass);
}

#[test]
fn jacobi_with_vacuum_holds_for_any_table() {
    let w = JacobiWindow::default();
    for (t, _) in all_tables() {
        let vt = VertexTable::vacuum([t.w1().dim(), t.w2().dim(), t.w3().dim()]);
        assert!(jacobi_check_window(&t, &vt, &w).unwrap().pass);
        assert!(jacobi_check_window(&perturb(&t), &vt, &w).unwrap().pass);
    }
}

#[test]
fn jacobi_nontrivial_instance() {
    let (t, vt) = jacobi_instance();
    assert!(passes(&t, &Axiom::L0_TYPE));
    let w = JacobiWindow::default();
    assert!(jacobi_check_window(&t, &vt, &w).unwrap().pass);
    let mut bad = t.clone();
    let key = ModeKey::new(0, 0, Exponent::int(-1), 0);
    bad.set(key, CoeffVector::basis(1));
    let c = jacobi_check_window(&bad, &vt, &w).unwrap();
    assert!(!c.pass);
    assert!(c.witness.unwrap().contains("residual"));
}

#[test]
fn jacobi_rejects_small_window() {
    let (t, vt) = jacobi_instance();
    let w = JacobiWindow { a: (0, 2), ..JacobiWindow::default() };
    assert!(matches!(jacobi_check_window(&t, &vt, &w), Err(IntertwinerError::UncoveredSupport(_))));
    let w = JacobiWindow { b: (1, 2), ..JacobiWindow::default() };
    assert!(matches!(jacobi_check_window(&t, &vt, &w), Err(IntertwinerError::UncoveredSupport(_))));
}

#[test]
fn nilpotent_action_constrains_the_solution_space() {
    let j = jordan_block("J", Exponent::frac(1, 2).unwrap(), 2);
    let v = trivial("V");
    let win = FusionWindow::derived(&j, &v, &j, 1);
    let base: Vec<Constraint> = Axiom::L0_TYPE.iter().map(|a| Constraint::Axiom(*a)).collect();
    let free = solve_fusion_space(Arc::new(j.clone()), Arc::new(v.clone()), Arc::new(j.clone()), &win, &base).unwrap();
    let mut cons = base.clone();
    cons.push(Constraint::Jacobi(nilpotent_vertex_table([&j, &v, &j]), JacobiWindow::default()));
    let tied = solve_fusion_space(Arc::new(j.clone()), Arc::new(v), Arc::new(j), &win, &cons).unwrap();
    assert!(tied.dim() >= 1);
    assert!(tied.dim() < free.dim());
}

#[test]
fn weight_formulas_hold() {
    for (t, _) in all_tables() {
        for w in WeightFormula::ALL {
            let c = weight_formulas_check(&t, w).unwrap();
            assert!(c.pass, "{} {:?}", c.id, c.witness);
        }
    }
}

#[test]
fn weight_formulas_refuse_without_precondition() {
    let t = perturb(&jordan_tables()[0]);
    assert!(matches!(weight_formulas_check(&t, WeightFormula::Ty), Err(IntertwinerError::Precondition(_))));
}

#[test]
fn log_free_bound_is_zero() {
    let t = jordan_tables().into_iter().find(|t| t.w1().dim() == 1 && t.w2().dim() == 1 && t.w3().dim() == 1).unwrap();
    assert_eq!(t.max_log(), 0);
    assert!(weight_formulas_check(&t, WeightFormula::Bound).unwrap().pass);
    let mut bad = t.clone();
    let (k, v) = t.modes().next().map(|(k, v)| (k.clone(), v.clone())).unwrap();
    bad.set(ModeKey::new(k.i, k.j, k.n, 1), v);
    assert!(!weight_formulas_check(&bad, WeightFormula::Bound).map(|c| c.pass).unwrap_or(false));
}

#[test]
fn congruence_partition_reconstructs() {
    for (t, ax) in all_tables() {
        let parts = by_congruence(&t);
        let mut sum = t.empty_like();
        for p in parts.values() {
            assert!(passes(p, ax));
            sum = sum.add_table(p);
        }
        assert_eq!(sum, t);
    }
}

#[test]
fn log_power_components() {
    let free = &sl2_tables()[0];
    assert_eq!(free.max_log(), 0);
    assert_eq!(&by_logpower(free, 0), free);
    let t = &jordan_tables()[0];
    let y0 = by_logpower(t, 0);
    assert!(!axiom_check(&y0, Axiom::L0Derivative).pass);
    assert!(l_minus1_comp_check(t, Axiom::L0Derivative).passed());
    assert!(!l_minus1_comp_check(&perturb(t), Axiom::L0Derivative).passed());
}

#[test]
fn x_t_routes_agree() {
    for (t, ax) in all_tables() {
        assert_eq!(x_t(&t, 0), t);
        assert!(x_t(&t, t.max_log() + 1).is_zero());
        for s in 0..=t.max_log() {
            let d = x_t(&t, s);
            assert!(passes(&d, ax));
            assert_eq!(d, x_t_via_homs(&t, s));
            assert_eq!(d, x_t_via_vandermonde(&t, s).unwrap());
        }
    }
}

#[test]
fn monodromy_is_a_sum_of_x_t() {
    for (t, _) in all_tables() {
        for p in 0..=3i64 {
            let zeta = &ExactScalar::int(2 * p) * &ExactScalar::pi();
            let mut sum = t.empty_like();
            for s in 0..=t.max_log() {
                sum = sum.add_table(&x_t(&t, s).scale(&zeta.pow(s)));
            }
            // Σ_t (2πip)^t X_t(𝒴) reproduces 𝒴(·, e^{2πip}x) up to the phase e^{2πip(−n−1)}.
            let sub = subst_table(&t, &zeta).unwrap();
            for (key, v) in sub.modes() {
                let phase = crate::substitution::exp_zeta_times(&crate::scalars::Rat::int(2 * p), &(-&key.n.add_int(1))).unwrap();
                assert_eq!(sum.get(key).scale(&phase), *v);
            }
        }
    }
}

#[test]
fn formal_invariance_under_monodromy() {
    for (t, ax) in all_tables() {
        let zeta = &ExactScalar::int(2) * &ExactScalar::pi();
        assert!(passes(&subst_table(&t, &zeta).unwrap(), ax));
    }
}

#[test]
fn omega_involution_and_composition() {
    for (t, ax) in all_tables() {
        for r in -2..=1i64 {
            let o = omega_r(&t, r).unwrap();
            assert!(passes(&o, ax));
            assert_eq!(o.w1(), t.w2());
            assert_eq!(omega_r(&o, -r - 1).unwrap(), t);
            for s in -2..=1i64 {
                let m = r + s + 1;
                assert_eq!(omega_r(&o, s).unwrap(), shift(&t, [m, -m, -m]).unwrap());
            }
        }
    }
}

#[test]
fn omega_keeps_log_free_tables_log_free() {
    for t in sl2_tables() {
        assert_eq!(omega_r(&t, 0).unwrap().max_log(), 0);
    }
}

#[test]
fn a_involution_and_composition() {
    for (t, ax) in all_tables() {
        for r in -2..=1i64 {
            let a = a_r(&t, r).unwrap();
            assert!(passes(&a, ax), "{:?}", axiom_check_all(&a, ax).failures().next());
            assert_eq!(a.w1(), t.w1());
            assert_eq!(a.w2().name(), alloc::format!("{}'", t.w3().name()));
            assert_eq!(a_r(&a, -r - 1).unwrap(), t);
            for s in -2..=1i64 {
                assert_eq!(a_r(&a, s).unwrap(), shift(&t, [0, r + s + 1, 0]).unwrap());
            }
        }
    }
}

#[test]
fn a_on_vertex_operator_is_contragredient_operator() {
    for w in [sl2_irrep("S", 3), jordan_block("J", Exponent::frac(1, 4).unwrap(), 2)] {
        let y = vertex_operator_table(Arc::new(w.clone()));
        let dual = vertex_operator_table(Arc::new(w.contragredient()));
        for r in -2..=1 {
            let a = a_r(&y, r).unwrap();
            assert_eq!(a.modes().collect::<Vec<_>>(), dual.modes().collect::<Vec<_>>());
        }
    }
}

#[test]
fn shift_laws() {
    for (t, _) in all_tables() {
        assert_eq!(shift(&t, [0, 0, 0]).unwrap(), t);
        let a = shift(&t, [1, -1, 2]).unwrap();
        assert_eq!(shift(&a, [-2, 0, 1]).unwrap(), shift(&t, [-1, -1, 3]).unwrap());
    }
    for t in sl2_tables().into_iter().filter(|t| [t.w1(), t.w2(), t.w3()].iter().all(|m| m.weights().iter().all(|h| h.is_integer()))) {
        assert_eq!(shift(&t, [2, -1, 1]).unwrap(), t);
    }
}

#[test]
fn conjugation_formulas() {
    for t in sl2_tables() {
        for f in [ConjFormula::P1 { order: 0 }, ConjFormula::P1 { order: 3 }, ConjFormula::P3 { order: 3 }] {
            let c = conj_formula_check(&t, &f).unwrap();
            assert!(c.pass, "{} {:?}", c.id, c.witness);
        }
    }
    let vt = vertex_operator_table(Arc::new(jordan_block("J", Exponent::frac(1, 3).unwrap(), 3)));
    for (t, _) in all_tables().into_iter().chain([(vt, &Axiom::FULL[..])]) {
        for f in
            [ConjFormula::P2, ConjFormula::AL0 { a: ExactScalar::pi() }, ConjFormula::AL0 { a: &ExactScalar::int(-3) * &ExactScalar::pi() }]
        {
            let c = conj_formula_check(&t, &f).unwrap();
            assert!(c.pass, "{} {:?}", c.id, c.witness);
        }
    }
}

#[test]
fn p3_detects_broken_tables() {
    let t = &sl2_tables()[0];
    let c = conj_formula_check(&perturb(t), &ConjFormula::P3 { order: 2 }).unwrap();
    assert!(!c.pass);
}

#[test]
fn modes_recover_exactly() {
    for (t, _) in all_tables() {
        let keys: Vec<ModeKey> = t.modes().map(|(k, _)| k.clone()).collect();
        for key in keys {
            let rec = recover_modes(&t, key.i, key.j, &key.n).unwrap();
            assert_eq!(rec.len() as u32, t.max_log() + 1);
            for (r, v) in rec.iter().enumerate() {
                assert_eq!(*v, t.mode(key.i, key.j, &key.n, r as u32));
            }
        }
        let absent = Exponent::int(40);
        assert!(recover_modes(&t, 0, 0, &absent).unwrap().iter().all(CoeffVector::is_zero));
    }
}

#[test]
fn log_free_recovery_is_projection() {
    let t = &sl2_tables()[2];
    assert_eq!(t.max_log(), 0);
    let x = crate::logseries::Var::new("x");
    for (key, v) in t.modes() {
        let rec = recover_modes(t, key.i, key.j, &key.n).unwrap();
        let s = t.series(&CoeffVector::basis(key.i), &CoeffVector::basis(key.j), &x);
        let h = &(t.w1().weight(key.i) + t.w2().weight(key.j)) - &key.n.add_int(1);
        let proj: Vec<CoeffVector> = s.terms().map(|(_, c)| c.project(|c| t.w3().weight(c) == &h)).filter(|c| !c.is_zero()).collect();
        assert_eq!(proj, vec![v.clone()]);
        assert_eq!(rec, vec![v.clone()]);
    }
}

#[test]
fn solver_contains_vertex_operator() {
    let w = Arc::new(jordan_block("J", Exponent::frac(1, 2).unwrap(), 2));
    let v = Arc::new(trivial("V"));
    let win = FusionWindow::derived(&v, &w, &w, 1);
    let cons: Vec<Constraint> = Axiom::FULL.iter().map(|a| Constraint::Axiom(*a)).collect();
    let fs = solve_fusion_space(v.clone(), w.clone(), w.clone(), &win, &cons).unwrap();
    assert!(fs.dim() >= 1);
    assert!(passes(&vertex_operator_table(w), &Axiom::FULL));
    for b in &fs.basis {
        assert!(passes(b, &Axiom::FULL));
    }
}

#[test]
fn solver_dimension_symmetric_under_swap() {
    let (a, b, c) = (sl2_irrep("A", 2), sl2_irrep("B", 3), sl2_irrep("C", 2));
    let cons: Vec<Constraint> = Axiom::FULL.iter().map(|x| Constraint::Axiom(*x)).collect();
    let w12 = FusionWindow::derived(&a, &b, &c, 1);
    let w21 = FusionWindow::derived(&b, &a, &c, 1);
    let d12 = solve_fusion_space(Arc::new(a.clone()), Arc::new(b.clone()), Arc::new(c.clone()), &w12, &cons).unwrap().dim();
    let d21 = solve_fusion_space(Arc::new(b), Arc::new(a), Arc::new(c), &w21, &cons).unwrap().dim();
    assert_eq!(d12, d21);
    assert!(d12 >= 1);
}

#[test]
fn incompatible_degrees_give_nothing() {
    let a = graded(sl2_irrep("A", 2), vec![1, 1]);
    let b = graded(trivial("B"), vec![0]);
    let c = graded(sl2_irrep("C", 2), vec![0, 0]);
    let cons: Vec<Constraint> = Axiom::FULL.iter().map(|x| Constraint::Axiom(*x)).collect();
    let win = FusionWindow::derived(&a, &b, &c, 1);
    let fs = solve_fusion_space(Arc::new(a), Arc::new(b), Arc::new(c), &win, &cons).unwrap();
    assert_eq!(fs.dim(), 0);
}

#[test]
fn grading_preserved_by_constructions() {
    let a = Arc::new(graded(sl2_irrep("A", 2), vec![1, 1]));
    let b = Arc::new(graded(trivial("B"), vec![2]));
    let c = Arc::new(graded(sl2_irrep("C", 2), vec![3, 3]));
    let cons: Vec<Constraint> = Axiom::FULL.iter().map(|x| Constraint::Axiom(*x)).collect();
    let win = FusionWindow::derived(&a, &b, &c, 1);
    let t = generic(&solve_fusion_space(a, b, c, &win, &cons).unwrap()).unwrap();
    for d in [omega_r(&t, 0).unwrap(), a_r(&t, -1).unwrap(), x_t(&t, 0), shift(&t, [1, 0, -1]).unwrap()] {
        assert!(axiom_check(&d, Axiom::Grading).pass);
    }
}

#[test]
fn exponents_are_congruent_to_weight_differences() {
    for (t, _) in all_tables() {
        for (key, v) in t.modes() {
            for c in v.support() {
                let lhs = -&key.n.add_int(1);
                let rhs = &(t.w3().weight(c) - t.w1().weight(key.i)) - t.w2().weight(key.j);
                assert!(lhs.congruent(&rhs));
            }
        }
    }
}

#[test]
fn axiom_ids_round_trip() {
    for a in [
        Axiom::LowerTruncation,
        Axiom::LMinus1Derivative,
        Axiom::Sl2(1),
        Axiom::Sl2Alt(-1),
        Axiom::Grading,
        Axiom::L0Derivative,
        Axiom::Weight,
    ] {
        assert_eq!(Axiom::parse(&a.id()), Some(a));
    }
    assert_eq!(Axiom::parse("nope"), None);
    assert_eq!(WeightFormula::parse("rt"), Some(WeightFormula::Rt));
    assert_eq!(ModeKey::new(0, 1, Exponent::int(-1), 2).to_string(), "(e0)_{-1;2} f1");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solution_spaces_are_linear(coeffs in proptest::collection::vec(-3i64..=3, 8)) {
        let j = jordan_block("J", Exponent::frac(1, 2).unwrap(), 2);
        let v = trivial("V");
        let win = FusionWindow::derived(&v, &j, &j, 2);
        let cons: Vec<Constraint> = Axiom::L0_TYPE.iter().map(|a| Constraint::Axiom(*a)).collect();
        let fs = solve_fusion_space(Arc::new(v), Arc::new(j.clone()), Arc::new(j), &win, &cons).unwrap();
        let mut t = fs.basis[0].empty_like();
        for (b, c) in fs.basis.iter().zip(coeffs.iter()) {
            t = t.add_table(&b.scale(&ExactScalar::int(*c)));
        }
        prop_assert!(passes(&t, &Axiom::L0_TYPE));
        prop_assert_eq!(omega_r(&omega_r(&t, 1).unwrap(), -2).unwrap(), t.clone());
        prop_assert_eq!(a_r(&a_r(&t, 0).unwrap(), -1).unwrap(), t);
    }
}
