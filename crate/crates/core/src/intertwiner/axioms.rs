//! Axiom residuals computed mode by mode.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{IntertwinerTable, ModeKey};
use crate::logseries::CoeffVector;
use crate::report::{Check, Report};
use crate::scalars::{binom_int, ExactScalar, Exponent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    LowerTruncation,
    LMinus1Derivative,
    /// `[L(j), 𝒴(w,x)] = Σ_t C(j+1,t) x^{j+1−t} 𝒴(L(t−1)w, x)` for `j ∈ {−1,0,1}`.
    Sl2(i32),
    /// `𝒴(L(j)w,x) = Σ_t C(j+1,t)(−x)^t [L(j−t), 𝒴(w,x)]`.
    Sl2Alt(i32),
    Grading,
    /// `[L(0), 𝒴(w,x)] = x d/dx 𝒴(w,x) + 𝒴(L(0)w, x)`.
    L0Derivative,
    Weight,
}

impl Axiom {
    /// Axioms of a logarithmic intertwining operator among Möbius modules.
    pub const FULL: [Axiom; 6] =
        [Axiom::LowerTruncation, Axiom::LMinus1Derivative, Axiom::Sl2(-1), Axiom::Sl2(0), Axiom::Sl2(1), Axiom::Grading];

    /// Constraints used for log tables on modules with nilpotent `L(0)` parts.
    pub const L0_TYPE: [Axiom; 3] = [Axiom::LowerTruncation, Axiom::L0Derivative, Axiom::Grading];

    pub fn id(&self) -> String {
        match self {
            Axiom::LowerTruncation => "ltc".into(),
            Axiom::LMinus1Derivative => "Lminus1".into(),
            Axiom::Sl2(j) => format!("sl2[{j}]"),
            Axiom::Sl2Alt(j) => format!("sl2alt[{j}]"),
            Axiom::Grading => "grading".into(),
            Axiom::L0Derivative => "L0deriv".into(),
            Axiom::Weight => "weight".into(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Axiom::LowerTruncation => "lower truncation".into(),
            Axiom::LMinus1Derivative => "L(-1)-derivative property".into(),
            Axiom::Sl2(j) => format!("L({j})-commutator formula"),
            Axiom::Sl2Alt(j) => format!("L({j})-iterate formula"),
            Axiom::Grading => "grading compatibility".into(),
            Axiom::L0Derivative => "L(0)-derivative property".into(),
            Axiom::Weight => "weight compatibility".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Axiom> {
        let all = [
            Axiom::LowerTruncation,
            Axiom::LMinus1Derivative,
            Axiom::Sl2(-1),
            Axiom::Sl2(0),
            Axiom::Sl2(1),
            Axiom::Sl2Alt(-1),
            Axiom::Sl2Alt(0),
            Axiom::Sl2Alt(1),
            Axiom::Grading,
            Axiom::L0Derivative,
            Axiom::Weight,
        ];
        all.into_iter().find(|a| a.id() == s)
    }
}

fn candidates(y: &IntertwinerTable) -> Vec<(Exponent, u32)> {
    let mut ns = BTreeSet::new();
    for e in y.exponents() {
        for s in -2..=2 {
            ns.insert(e.add_int(s));
        }
    }
    let kmax = y.max_log() + 1;
    let mut out = Vec::new();
    for n in ns {
        for k in 0..=kmax {
            out.push((n.clone(), k));
        }
    }
    out
}

fn commute_term(y: &IntertwinerTable, j: i32, ei: &CoeffVector, fj: &CoeffVector, n: &Exponent, k: u32) -> CoeffVector {
    let m = y.mode_lin(ei, fj, n, k).apply(y.w3().l(j));
    m.sub(&y.mode_lin(ei, &fj.apply(y.w2().l(j)), n, k))
}

/// Nonzero residuals of `axiom`, keyed by the mode at which they occur.
pub fn axiom_residuals(y: &IntertwinerTable, axiom: Axiom) -> BTreeMap<ModeKey, CoeffVector> {
    let mut out = BTreeMap::new();
    let (d1, d2) = (y.w1().dim(), y.w2().dim());
    match axiom {
        Axiom::LowerTruncation => {}
        Axiom::Grading | Axiom::Weight => {
            let (w1, w2, w3) = (y.w1(), y.w2(), y.w3());
            for (key, v) in y.modes() {
                let bad = if axiom == Axiom::Grading {
                    let d = w3.group().add(w1.degree(key.i), w2.degree(key.j));
                    v.project(|c| w3.degree(c) != &d)
                } else {
                    let h = &(w1.weight(key.i) + w2.weight(key.j)) - &key.n.add_int(1);
                    v.project(|c| w3.weight(c) != &h)
                };
                if !bad.is_zero() {
                    out.insert(key.clone(), bad);
                }
            }
        }
        _ => {
            let cands = candidates(y);
            for i in 0..d1 {
                let ei = CoeffVector::basis(i);
                for jj in 0..d2 {
                    let fj = CoeffVector::basis(jj);
                    for (n, k) in &cands {
                        let r = residual_at(y, axiom, &ei, &fj, n, *k);
                        if !r.is_zero() {
                            out.insert(ModeKey::new(i, jj, n.clone(), *k), r);
                        }
                    }
                }
            }
        }
    }
    out
}

fn residual_at(y: &IntertwinerTable, axiom: Axiom, ei: &CoeffVector, fj: &CoeffVector, n: &Exponent, k: u32) -> CoeffVector {
    let neg_one = ExactScalar::int(-1);
    match axiom {
        Axiom::LMinus1Derivative => {
            let lhs = y.mode_lin(&ei.apply(y.w1().l(-1)), fj, n, k);
            let p = n.add_int(-1);
            let mut rhs = y.mode_lin(ei, fj, &p, k).scale(&(-n).to_scalar());
            rhs.add_scaled(&y.mode_lin(ei, fj, &p, k + 1), &ExactScalar::int(k as i64 + 1));
            lhs.sub(&rhs)
        }
        Axiom::Sl2(j) => {
            let mut r = commute_term(y, j, ei, fj, n, k);
            for t in 0..=(j + 1) {
                let c = ExactScalar::from_rat(binom_int((j + 1) as i64, t as u32));
                let u = ei.apply(y.w1().l(j - t));
                r.add_scaled(&y.mode_lin(&u, fj, &n.add_int(t as i64), k), &-c);
            }
            r
        }
        Axiom::Sl2Alt(j) => {
            let mut r = y.mode_lin(&ei.apply(y.w1().l(j)), fj, n, k);
            for t in 0..=(j + 1) {
                let mut c = ExactScalar::from_rat(binom_int((j + 1) as i64, t as u32));
                if t % 2 == 1 {
                    c = -c;
                }
                r.add_scaled(&commute_term(y, j - t, ei, fj, &n.add_int(t as i64), k), &-c);
            }
            r
        }
        Axiom::L0Derivative => {
            let mut r = commute_term(y, 0, ei, fj, n, k);
            r.add_scaled(&y.mode_lin(&ei.apply(y.w1().l(0)), fj, n, k), &neg_one);
            r.add_scaled(&y.mode_lin(ei, fj, n, k), &n.add_int(1).to_scalar());
            r.add_scaled(&y.mode_lin(ei, fj, n, k + 1), &ExactScalar::int(-(k as i64) - 1));
            r
        }
        Axiom::LowerTruncation | Axiom::Grading | Axiom::Weight => CoeffVector::zero(),
    }
}

pub fn axiom_check(y: &IntertwinerTable, axiom: Axiom) -> Check {
    let res = axiom_residuals(y, axiom);
    let detail = if axiom == Axiom::LowerTruncation {
        let lowest: BTreeMap<Exponent, Exponent> = y.exponents().into_iter().fold(BTreeMap::new(), |mut m, e| {
            m.entry(e.class_mod_z()).or_insert(e);
            m
        });
        format!("{} congruence class(es), finite support", lowest.len())
    } else if res.is_empty() {
        format!("{} mode(s) checked", y.len())
    } else {
        format!("{} residual(s)", res.len())
    };
    let witness = res.iter().next().map(|(k, v)| format!("at {k}: {v}"));
    Check::new(&axiom.id(), &axiom.name(), res.is_empty(), detail).with_witness(witness)
}

pub fn axiom_check_all(y: &IntertwinerTable, axioms: &[Axiom]) -> Report {
    let mut r = Report::new("intertwiner axioms");
    for a in axioms {
        r.push(axiom_check(y, *a));
    }
    r
}
