//! Seeded check suites over random series, catalog modules and solver tables.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::combinatorics::{comb_identity_sides, lubell_refinement, lubell_sides};
use crate::intertwiner::fixtures::{jacobi_instance, jordan_tables, sl2_tables};
use crate::intertwiner::{
    a_r, annihilating_order, axiom_check_all, conj_formula_check, jacobi_check_window, ode_solution, ode_structure_check, omega_r,
    recover_modes, shift, truncated_exp_log, weight_formulas_check, x_l0_ode_check, x_t, x_t_via_homs, x_t_via_vandermonde_nodes, Axiom,
    ConjFormula, IntertwinerTable, JacobiWindow, ModeKey, VertexTable, WeightFormula,
};
use crate::logseries::{euler_power, exp_diffop, CoeffSpace, CoeffVector, LogSeries, Monomial, SeriesError, Var};
use crate::mobius::catalog::{random_jordan_module, random_sl2_module};
use crate::mobius::{conj_identity_check, ConjIdentity, Module};
use crate::report::{Check, Report};
use crate::scalars::{ExactScalar, Exponent, Rat};
use crate::substitution::{exp_minus_one, log_one_plus, subst_x_exp_y, subst_x_plus_y};

fn small(rng: &mut ChaCha8Rng, span: u32) -> i64 {
    (rng.next_u32() % (2 * span + 1)) as i64 - span as i64
}

fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = 1 + (rng.next_u32() % 9) as i64;
    let d = 1 + (rng.next_u32() % 5) as i64;
    Rat::new(if rng.next_u32().is_multiple_of(2) { n } else { -n }, d)
}

/// Exponent with real and imaginary parts in `(1/12)ℤ`, real part in `[−2, 2]`; a quarter of them non-real.
pub fn random_exponent(rng: &mut ChaCha8Rng) -> Exponent {
    let re = Rat::new(small(rng, 24), 12);
    let im = if rng.next_u32().is_multiple_of(4) { Rat::new(small(rng, 12), 12) } else { Rat::zero() };
    Exponent::new(re, im).expect("denominators divide 12")
}

/// At most six terms `c x^n (log x)^k` with `k ≤ 4`.
pub fn random_series(rng: &mut ChaCha8Rng, x: &Var) -> LogSeries {
    let terms = 1 + rng.next_u32() % 6;
    let mut f = LogSeries::zero(CoeffSpace::Scalar);
    for _ in 0..terms {
        let n = random_exponent(rng);
        let k = rng.next_u32() % 5;
        f.add_scalar_term(Monomial::power(x, n, k), ExactScalar::from_rat(nonzero_rat(rng)));
    }
    f
}

fn first_diff(a: &LogSeries, b: &LogSeries) -> Option<String> {
    let d = a - b;
    let (m, _) = d.terms().next()?;
    Some(format!("at {m}: {} vs {}", a.coeff(m), b.coeff(m)))
}

/// `e^{y d/dx} f = f(x+y)` and `e^{yx d/dx} f = f(xe^y)` on `samples` random series, plus `log(e^x) = x`.
pub fn taylor_suite(samples: u32, order: u32, seed: u64) -> Result<Report, SeriesError> {
    let (x, y) = (Var::new("x"), Var::new("y"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new("taylor");
    let (mut w1, mut w2) = (None, None);
    for s in 0..samples {
        let f = random_series(&mut rng, &x);
        if w1.is_none() {
            let lhs = exp_diffop(&f, &y, &LogSeries::one(), &x, order)?;
            w1 = first_diff(&lhs, &subst_x_plus_y(&f, &x, &y, order)?).map(|d| format!("sample {s}, f = {f}: {d}"));
        }
        if w2.is_none() {
            let lhs = exp_diffop(&f, &y, &LogSeries::var(&x), &x, order)?;
            w2 = first_diff(&lhs, &subst_x_exp_y(&f, &x, &y, order)?).map(|d| format!("sample {s}, f = {f}: {d}"));
        }
    }
    let detail = format!("{samples} series, order {order}, seed {seed}");
    rep.push(Check::new("ck1", "e^{y d/dx} f = f(x+y)", w1.is_none(), detail.clone()).with_witness(w1));
    rep.push(Check::new("ck2", "e^{yx d/dx} f = f(xe^y)", w2.is_none(), detail).with_witness(w2));
    let mut wl = None;
    for n in 1..=12u32 {
        let got = log_one_plus(&exp_minus_one(&x, n), n)?;
        let want = LogSeries::var(&x).truncate(&x, n as i64);
        if got != want {
            wl = first_diff(&got, &want).map(|d| format!("order {n}: {d}"));
            break;
        }
    }
    rep.push(Check::new("logex", "log(e^x) = x", wl.is_none(), String::from("orders 1..=12")).with_witness(wl));
    Ok(rep)
}

/// Both sides of the combinatorial identity for `0 ≤ j ≤ k ≤ kmax`.
pub fn comb_suite(kmax: u32) -> Report {
    let mut rep = Report::new("comb");
    let mut witness = None;
    let mut cases = 0;
    'outer: for k in 0..=kmax {
        for j in 0..=k {
            cases += 1;
            match comb_identity_sides(k, j) {
                Ok((l, r)) if l == r => {}
                Ok((l, r)) => {
                    witness = Some(format!("k = {k}, j = {j}: {l} vs {r}"));
                    break 'outer;
                }
                Err(e) => {
                    witness = Some(format!("k = {k}, j = {j}: {e}"));
                    break 'outer;
                }
            }
        }
    }
    rep.push(Check::new("comb", "combinatorial identity", witness.is_none(), format!("{cases} cases, k ≤ {kmax}")).with_witness(witness));
    rep
}

/// Total and per-`k` Lubell sums for `N ≤ nmax`, `1 ≤ j ≤ jmax`.
pub fn lubell_suite(nmax: u32, jmax: u32) -> Report {
    let mut rep = Report::new("lubell");
    let (mut total, mut refined) = (None, None);
    for n in 1..=nmax {
        for j in 1..=jmax {
            match lubell_sides(n, j) {
                Ok((s, t)) if s == t => {}
                Ok((s, t)) => {
                    total.get_or_insert(format!("N = {n}, j = {j}: {s} vs {t}"));
                }
                Err(e) => {
                    total.get_or_insert(format!("N = {n}, j = {j}: {e}"));
                }
            }
            if let Ok(parts) = lubell_refinement(n, j) {
                if let Some((k, s, t)) = parts.into_iter().find(|(_, s, t)| s != t) {
                    refined.get_or_insert(format!("N = {n}, j = {j}, k = {k}: {s} vs {t}"));
                }
            }
        }
    }
    let detail = format!("N ≤ {nmax}, 1 ≤ j ≤ {jmax}");
    rep.push(Check::new("lubell", "Lubell identity", total.is_none(), detail.clone()).with_witness(total));
    rep.push(Check::new("lubell-k", "per-k refinement", refined.is_none(), detail).with_witness(refined));
    rep
}

/// Random instances of the ODE structure statement, perturbed negatives, truncated
/// `x^b e^{(a−b) log x}`, and `x^{±L(0)}w` on catalog modules.
pub fn ode_suite(samples: u32, seed: u64) -> Report {
    let x = Var::new("x");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new("ode");
    let (mut pos, mut neg) = (None, None);
    for s in 0..samples {
        let a = random_exponent(&mut rng);
        let m = 1 + rng.next_u32() % 4;
        let dim = 1 + (rng.next_u32() % 3) as usize;
        let space = CoeffSpace::Vector(dim);
        let mut coeffs: Vec<CoeffVector> = Vec::new();
        for k in 0..m {
            let mut w = CoeffVector::zero();
            for c in 0..dim {
                w.set(c, ExactScalar::int(small(&mut rng, 3)));
            }
            if k + 1 == m && w.is_zero() {
                w.set(0, ExactScalar::one());
            }
            coeffs.push(w);
        }
        let f = ode_solution(&x, &a, space, &coeffs);
        let c = ode_structure_check(&f, &x, &a, m);
        if pos.is_none() && (!c.pass || annihilating_order(&f, &x, &a, 8) != Some(m)) {
            pos = Some(format!("sample {s}, a = {a}, m = {m}: {}", c.witness.unwrap_or(c.detail)));
        }
        // An extra log power, or a term off the exponent `a`, is never annihilated by the `m`th power.
        let off = Exponent::frac(1 + small(&mut rng, 5).abs(), 12).expect("lattice");
        let extra_log = &f + &LogSeries::vector_term(space, Monomial::power(&x, a.clone(), m), CoeffVector::basis(0));
        let shifted = &f + &LogSeries::vector_term(space, Monomial::power(&x, &a + &off, 0), CoeffVector::basis(0));
        let sa = a.to_scalar();
        for (label, g) in [("log", &extra_log), ("exponent", &shifted)] {
            if neg.is_none() && (euler_power(g, &x, &sa, m).is_zero() || ode_structure_check(g, &x, &a, m).pass) {
                neg = Some(format!("sample {s}: {label} perturbation annihilated"));
            }
        }
    }
    let detail = format!("{samples} samples, m ≤ 4, seed {seed}");
    rep.push(Check::new("de", "ODE structure", pos.is_none(), detail.clone()).with_witness(pos));
    rep.push(Check::new("de-negative", "perturbations rejected", neg.is_none(), detail).with_witness(neg));

    let mut trunc = None;
    for (a, b) in [
        (Exponent::int(0), Exponent::frac(1, 2).expect("lattice")),
        (Exponent::frac(1, 3).expect("lattice"), Exponent::frac(-1, 4).expect("lattice")),
    ] {
        for t in 0..=6u32 {
            let f = truncated_exp_log(&x, &a, &b, t);
            for m in 1..=4u32 {
                let r = euler_power(&f, &x, &a.to_scalar(), m);
                if r.coeff(&Monomial::power(&x, b.clone(), t)).is_zero() {
                    trunc.get_or_insert(format!("a = {a}, b = {b}, truncation {t}, m = {m}"));
                }
            }
        }
    }
    rep.push(
        Check::new(
            "de-truncated",
            "truncated x^b e^{(a-b)log x} is not a solution",
            trunc.is_none(),
            String::from("truncations 0..=6, m ≤ 4"),
        )
        .with_witness(trunc),
    );
    let mut xl = Acc::new("xpmL0-ode", "x^{±L(0)}w solves the ODE");
    for i in 0..4u64 {
        let c = x_l0_ode_check(&random_jordan_module(seed.wrapping_add(i)), &x);
        xl.record(Ok((!c.pass).then(|| c.witness.unwrap_or_default())), || c.detail.clone());
    }
    xl.finish(&mut rep);
    rep
}

/// Seeded validated modules: full `sl(2)` modules and Jordan-block modules, alternating.
pub fn seeded_modules(seed: u64, count: u32) -> Vec<Module> {
    (0..count as u64)
        .map(|i| if i % 2 == 0 { random_sl2_module(seed.wrapping_add(i)) } else { random_jordan_module(seed.wrapping_add(i)) })
        .collect()
}

/// Every operator identity on `count` seeded modules, truncated at `order`.
pub fn module_suite(seed: u64, count: u32, order: u32) -> Result<Report, SeriesError> {
    let mods = seeded_modules(seed, count);
    let mut ids: Vec<ConjIdentity> = Vec::new();
    for j in -1..=1 {
        ids.push(ConjIdentity::XL0Lj(j));
        ids.push(ConjIdentity::XL0ExpLj(j));
    }
    ids.extend([ConjIdentity::ExpLm1, ConjIdentity::ExpL0, ConjIdentity::ExpL1, ConjIdentity::OneMinusX, ConjIdentity::NilpotentCommutes]);
    for r in -2..=1 {
        ids.push(ConjIdentity::InverseRel(r));
        ids.push(ConjIdentity::XtoInverse(r));
    }
    let mut rep = Report::new("modules");
    for which in ids {
        let mut witness = None;
        let mut used = 0;
        for m in &mods {
            if which.needs_full_sl2() && !m.is_full_sl2() {
                continue;
            }
            used += 1;
            let c = conj_identity_check(m, which, order)?;
            if !c.pass {
                witness = Some(format!("{}: {}", m.name(), c.witness.unwrap_or_default()));
                break;
            }
        }
        let id = which.id();
        rep.push(Check::new(&id, &id, witness.is_none(), format!("{used} modules, order {order}")).with_witness(witness));
    }
    Ok(rep)
}

/// Solver tables with the axioms they were solved under.
pub fn solver_tables() -> Vec<(IntertwinerTable, &'static [Axiom])> {
    let mut out: Vec<(IntertwinerTable, &'static [Axiom])> = jordan_tables().into_iter().map(|t| (t, &Axiom::L0_TYPE[..])).collect();
    out.extend(sl2_tables().into_iter().map(|t| (t, &Axiom::FULL[..])));
    out
}

fn label(t: &IntertwinerTable) -> String {
    format!("({}; {} {})", t.w3().name(), t.w1().name(), t.w2().name())
}

fn table_diff(a: &IntertwinerTable, b: &IntertwinerTable) -> Option<String> {
    let d = a.sub(b);
    let (k, _) = d.modes().next()?;
    Some(format!("at {k}: {} vs {}", a.get(k), b.get(k)))
}

struct Acc {
    id: &'static str,
    name: &'static str,
    cases: u32,
    witness: Option<String>,
}

impl Acc {
    fn new(id: &'static str, name: &'static str) -> Self {
        Acc { id, name, cases: 0, witness: None }
    }

    fn record(&mut self, ok: Result<Option<String>, String>, ctx: impl FnOnce() -> String) {
        self.cases += 1;
        if self.witness.is_some() {
            return;
        }
        match ok {
            Ok(None) => {}
            Ok(Some(w)) | Err(w) => self.witness = Some(format!("{}: {w}", ctx())),
        }
    }

    fn finish(self, rep: &mut Report) {
        rep.push(Check::new(self.id, self.name, self.witness.is_none(), format!("{} cases", self.cases)).with_witness(self.witness));
    }
}

fn eq_tables(a: Result<IntertwinerTable, impl core::fmt::Display>, b: &IntertwinerTable) -> Result<Option<String>, String> {
    a.map(|a| table_diff(&a, b)).map_err(|e| format!("{e}"))
}

/// Axioms, mode recovery, `Ω_r`, `A_r`, weight formulas and the Vandermonde route on solver tables.
pub fn table_suite(tables: &[(IntertwinerTable, &[Axiom])]) -> Report {
    let mut rep = Report::new("intertwiner");
    let mut axioms = Acc::new("axioms", "tables satisfy their axioms");
    let mut rec = Acc::new("last", "mode recovery");
    let mut or = Acc::new("or", "Omega involution");
    let mut orc = Acc::new("or-comp", "Omega composition");
    let mut ar = Acc::new("ar", "A involution");
    let mut arc = Acc::new("ar-comp", "A composition");
    let mut homs = Acc::new("xt-homs", "X_t as a combination of homomorphism compositions");
    let mut vdm = Acc::new("xt-vandermonde", "X_t by Vandermonde inversion");
    let mut conj = Acc::new("p123", "conjugation formulas");
    let mut wf: Vec<Acc> = WeightFormula::ALL.iter().map(|w| Acc::new(w.id(), w.name())).collect();
    for (t, ax) in tables {
        let l = label(t);
        let r = axiom_check_all(t, ax);
        axioms.record(Ok(r.failures().next().map(|c| format!("{} {}", c.id, c.witness.clone().unwrap_or_default()))), || l.clone());
        let triples: BTreeSet<(usize, usize, Exponent)> = t.modes().map(|(k, _)| (k.i, k.j, k.n.clone())).collect();
        for (i, j, n) in triples {
            let got = recover_modes(t, i, j, &n).map_err(|e| format!("{e}")).map(|vs| {
                vs.iter().enumerate().find(|(r, v)| **v != t.mode(i, j, &n, *r as u32)).map(|(r, v)| format!("log power {r}: {v}"))
            });
            rec.record(got, || format!("{l} e{i} f{j} n = {n}"));
        }
        for r in -2..=1i64 {
            let o = omega_r(t, r);
            or.record(o.as_ref().map_err(|e| format!("{e}")).and_then(|o| eq_tables(omega_r(o, -r - 1), t)), || format!("{l} r = {r}"));
            let a = a_r(t, r);
            ar.record(a.as_ref().map_err(|e| format!("{e}")).and_then(|a| eq_tables(a_r(a, -r - 1), t)), || format!("{l} r = {r}"));
            for s in -2..=1i64 {
                let m = r + s + 1;
                if let (Ok(o), Ok(want)) = (&o, shift(t, [m, -m, -m])) {
                    orc.record(eq_tables(omega_r(o, s), &want), || format!("{l} r = {r}, s = {s}"));
                }
                if let (Ok(a), Ok(want)) = (&a, shift(t, [0, m, 0])) {
                    arc.record(eq_tables(a_r(a, s), &want), || format!("{l} r = {r}, s = {s}"));
                }
            }
        }
        for (acc, w) in wf.iter_mut().zip(WeightFormula::ALL) {
            let c = weight_formulas_check(t, w).map_err(|e| format!("{e}")).map(|c| (!c.pass).then(|| c.witness.unwrap_or(c.detail)));
            acc.record(c, || l.clone());
        }
        let full = [t.w1(), t.w2(), t.w3()].iter().all(|m| m.is_full_sl2());
        let mut formulas = alloc::vec![ConjFormula::P2, ConjFormula::AL0 { a: ExactScalar::pi() }];
        if full {
            formulas.extend([ConjFormula::P1 { order: 3 }, ConjFormula::P3 { order: 3 }]);
        }
        for f in formulas {
            let c = conj_formula_check(t, &f).map_err(|e| format!("{e}")).map(|c| (!c.pass).then(|| c.witness.unwrap_or(c.detail)));
            conj.record(c, || format!("{l} {}", f.id()));
        }
        let kk = t.w1().nilpotency() + t.w2().nilpotency() + t.w3().nilpotency();
        for tt in 0..=kk {
            homs.record(Ok(table_diff(&x_t_via_homs(t, tt), &x_t(t, tt))), || format!("{l} t = {tt}"));
        }
        for s in t.max_log().max(1)..=4 {
            for tt in 0..=s {
                vdm.record(eq_tables(x_t_via_vandermonde_nodes(t, tt, s), &x_t(t, tt)), || format!("{l} S = {s}, t = {tt}"));
            }
        }
    }
    for acc in [axioms, rec, or, orc, ar, arc] {
        acc.finish(&mut rep);
    }
    for acc in wf {
        acc.finish(&mut rep);
    }
    homs.finish(&mut rep);
    vdm.finish(&mut rep);
    conj.finish(&mut rep);
    rep
}

/// The windowed Jacobi identity with the vacuum on every table and on the nilpotent instance,
/// with detection of one perturbed mode.
pub fn jacobi_suite(tables: &[(IntertwinerTable, &[Axiom])]) -> Report {
    let mut rep = Report::new("jacobi");
    let w = JacobiWindow::default();
    let mut triv = Acc::new("jacobi-vacuum", "Jacobi identity with the vacuum");
    for (t, _) in tables {
        let vt = VertexTable::vacuum([t.w1().dim(), t.w2().dim(), t.w3().dim()]);
        let c = jacobi_check_window(t, &vt, &w).map_err(|e| format!("{e}")).map(|c| (!c.pass).then(|| c.witness.unwrap_or(c.detail)));
        triv.record(c, || label(t));
    }
    triv.finish(&mut rep);
    let (t, vt) = jacobi_instance();
    let mut inst = Acc::new("jacobi", "Jacobi identity, nilpotent instance");
    let c = jacobi_check_window(&t, &vt, &w).map_err(|e| format!("{e}")).map(|c| (!c.pass).then(|| c.witness.unwrap_or(c.detail)));
    inst.record(c, || label(&t));
    inst.finish(&mut rep);
    let mut bad = t.clone();
    let key = ModeKey::new(0, 0, Exponent::int(-1), 0);
    bad.set(key.clone(), t.get(&key).add(&CoeffVector::basis(1)));
    let detected = jacobi_check_window(&bad, &vt, &w);
    let (pass, witness) = match detected {
        Ok(c) => (!c.pass && c.witness.is_some(), c.witness),
        Err(e) => (false, Some(format!("{e}"))),
    };
    rep.push(Check::new("jacobi-detects", "perturbed mode detected", pass, format!("perturbed {key}")).with_witness(witness));
    rep
}

/// Options for [`check_all`].
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub samples: u32,
    pub order: u32,
    pub kmax: u32,
    pub nmax: u32,
    pub jmax: u32,
    pub ode_samples: u32,
    pub modules: u32,
    pub module_order: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, samples: 200, order: 8, kmax: 10, nmax: 6, jmax: 4, ode_samples: 100, modules: 5, module_order: 10 }
    }
}

pub fn intertwiner_suite() -> Report {
    let tables = solver_tables();
    let mut rep = table_suite(&tables);
    rep.extend(jacobi_suite(&tables));
    rep.title = String::from("intertwiner");
    rep
}

/// Every suite.
pub fn check_all(opts: &SuiteOptions) -> Result<Report, SeriesError> {
    let mut rep = Report::new("all");
    rep.extend(taylor_suite(opts.samples, opts.order, opts.seed)?);
    rep.extend(comb_suite(opts.kmax));
    rep.extend(lubell_suite(opts.nmax, opts.jmax));
    rep.extend(ode_suite(opts.ode_samples, opts.seed));
    rep.extend(module_suite(opts.seed, opts.modules, opts.module_order)?);
    rep.extend(intertwiner_suite());
    Ok(rep)
}
