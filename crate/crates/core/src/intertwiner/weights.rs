//! Generalized-weight identities for tables satisfying the `L(0)`-derivative property.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::axioms::axiom_residuals;
use super::{local_nilpotency, shifted_pow, Axiom, IntertwinerError, IntertwinerTable};
use crate::logseries::{euler_power, CoeffVector, LogSeries, Var};
use crate::report::Check;
use crate::scalars::{binom_int, ExactScalar, Exponent, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightFormula {
    /// `(L(0)−c)^t 𝒴(w₁,x)w₂` as a multinomial sum of Euler operators.
    Ty,
    /// `(L(0)−a−b+n+1)^t` applied to a single mode.
    T00,
    /// Generating-function form of `T00`.
    Gen,
    /// `C(k+t,t)` times the mode at `k+t` from modes at `k`.
    Rt,
    /// Modes vanish above log power `K₁+K₂+K₃−3`.
    Bound,
    /// Matrix coefficients lie in `x^{n₃−n₁−n₂}` times polynomials in `log x` of degree `≤ k₁+k₂+k₃−3`.
    PairingPoly,
    /// Each mode has generalized weight `n₁+n₂−n−1`.
    ModeWeight,
}

impl WeightFormula {
    pub const ALL: [WeightFormula; 7] = [
        WeightFormula::Ty,
        WeightFormula::T00,
        WeightFormula::Gen,
        WeightFormula::Rt,
        WeightFormula::Bound,
        WeightFormula::PairingPoly,
        WeightFormula::ModeWeight,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            WeightFormula::Ty => "ty",
            WeightFormula::T00 => "t00",
            WeightFormula::Gen => "gen",
            WeightFormula::Rt => "rt",
            WeightFormula::Bound => "bound",
            WeightFormula::PairingPoly => "pairing_poly",
            WeightFormula::ModeWeight => "mode_weight",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightFormula::Ty => "(L(0)-c)^t as Euler operators",
            WeightFormula::T00 => "(L(0)-a-b+n+1)^t on one mode",
            WeightFormula::Gen => "generating function of single-mode powers",
            WeightFormula::Rt => "higher log powers from lower ones",
            WeightFormula::Bound => "log power bound",
            WeightFormula::PairingPoly => "matrix coefficients polynomial in log x",
            WeightFormula::ModeWeight => "generalized weight of modes",
        }
    }

    pub fn parse(s: &str) -> Option<WeightFormula> {
        WeightFormula::ALL.into_iter().find(|w| w.id() == s)
    }
}

fn fact(n: u32) -> ExactScalar {
    ExactScalar::from_rat(Rat::factorial(n))
}

fn inv_fact(n: u32) -> ExactScalar {
    ExactScalar::from_rat(Rat::factorial(n).recip())
}

/// Stored `(n, k)` pairs together with every `k ≤ max_log + 1` at each stored `n`.
fn nk_window(y: &IntertwinerTable) -> Vec<(Exponent, u32)> {
    let mut out = Vec::new();
    for n in y.exponents() {
        for k in 0..=y.max_log() + 1 {
            out.push((n.clone(), k));
        }
    }
    out
}

struct Ctx<'a> {
    y: &'a IntertwinerTable,
    tmax: u32,
}

impl Ctx<'_> {
    fn weight_scalar(&self, w: usize, i: usize) -> ExactScalar {
        match w {
            1 => self.y.w1().weight(i).to_scalar(),
            2 => self.y.w2().weight(i).to_scalar(),
            _ => self.y.w3().weight(i).to_scalar(),
        }
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let d2 = self.y.w2().dim();
        (0..self.y.w1().dim()).flat_map(move |i| (0..d2).map(move |j| (i, j)))
    }

    /// `((L(0)−a)^p e_i, (L(0)−b)^q f_j)`.
    fn shifted(&self, i: usize, j: usize, p: u32, q: u32) -> (CoeffVector, CoeffVector) {
        let (a, b) = (self.weight_scalar(1, i), self.weight_scalar(2, j));
        (shifted_pow(self.y.w1().l(0), &a, p, &CoeffVector::basis(i)), shifted_pow(self.y.w2().l(0), &b, q, &CoeffVector::basis(j)))
    }

    fn ty(&self) -> Option<String> {
        let x = Var::new("x");
        let l3 = self.y.w3().l(0);
        let cs: BTreeSet<Exponent> = self.y.w3().weights().iter().cloned().collect();
        for (i, j) in self.pairs() {
            let (a, b) = (self.weight_scalar(1, i), self.weight_scalar(2, j));
            let base = self.y.series(&CoeffVector::basis(i), &CoeffVector::basis(j), &x);
            for c in &cs {
                let cs = c.to_scalar();
                let shift = &(&cs - &a) - &b;
                for t in 0..=self.tmax {
                    let lhs = base.map_coeffs(base.space(), |v| shifted_pow(l3, &cs, t, v));
                    let mut rhs = LogSeries::zero(base.space());
                    for p in 0..=t {
                        for q in 0..=(t - p) {
                            let l = t - p - q;
                            let (u, v) = self.shifted(i, j, p, q);
                            let s = self.y.series(&u, &v, &x);
                            let coeff = &(&fact(t) * &inv_fact(p)) * &(&inv_fact(q) * &inv_fact(l));
                            rhs = rhs + euler_power(&s, &x, &shift, l).scale(&coeff);
                        }
                    }
                    if lhs != rhs {
                        return Some(format!("e{i}, f{j}, c = {c}, t = {t}"));
                    }
                }
            }
        }
        None
    }

    fn lambda(&self, i: usize, j: usize, n: &Exponent) -> ExactScalar {
        &(&self.weight_scalar(1, i) + &self.weight_scalar(2, j)) - &n.add_int(1).to_scalar()
    }

    fn t00(&self) -> Option<String> {
        let l3 = self.y.w3().l(0);
        for (i, j) in self.pairs() {
            for (n, k) in nk_window(self.y) {
                let lam = self.lambda(i, j, &n);
                let m = self.y.mode(i, j, &n, k);
                for t in 0..=self.tmax {
                    let lhs = shifted_pow(l3, &lam, t, &m);
                    let mut rhs = CoeffVector::zero();
                    for p in 0..=t {
                        for q in 0..=(t - p) {
                            let l = t - p - q;
                            let (u, v) = self.shifted(i, j, p, q);
                            let c = &(&fact(t) * &inv_fact(p)) * &inv_fact(q);
                            let c = &c * &ExactScalar::from_rat(binom_int((k + l) as i64, l));
                            rhs.add_scaled(&self.y.mode_lin(&u, &v, &n, k + l), &c);
                        }
                    }
                    if lhs != rhs {
                        return Some(format!("e{i}, f{j}, n = {n}, k = {k}, t = {t}"));
                    }
                }
            }
        }
        None
    }

    fn gen(&self) -> Option<String> {
        let l3 = self.y.w3().l(0);
        let d3 = self.y.w3().dim() as u32;
        for (i, j) in self.pairs() {
            for (n, k) in nk_window(self.y) {
                let lam = self.lambda(i, j, &n);
                let m = self.y.mode(i, j, &n, k);
                // e^{y(L(0)−λ)} m, terminating on the generalized eigenspace.
                let mut lhs: BTreeMap<u32, CoeffVector> = BTreeMap::new();
                let mut cur = m.clone();
                let mut t = 0u32;
                while !cur.is_zero() {
                    if t > d3 {
                        return Some(format!("mode at e{i}, f{j}, n = {n}, k = {k} is not of weight {lam}"));
                    }
                    lhs.insert(t, cur.scale(&inv_fact(t)));
                    cur = cur.apply(l3).sub(&cur.scale(&lam));
                    t += 1;
                }
                // Σ_l C(k+l,l) y^l (e^{y(L(0)−a)}e_i)_{n;k+l}(e^{y(L(0)−b)}f_j), expanding both exponentials.
                let exp_terms = |w: usize, idx: usize| -> Vec<CoeffVector> {
                    let (m, dim) = if w == 1 { (self.y.w1().l(0), self.y.w1().dim()) } else { (self.y.w2().l(0), self.y.w2().dim()) };
                    let s = self.weight_scalar(w, idx);
                    let mut out = Vec::new();
                    let mut cur = CoeffVector::basis(idx);
                    let mut p = 0u32;
                    while !cur.is_zero() && p <= dim as u32 {
                        out.push(cur.scale(&inv_fact(p)));
                        cur = cur.apply(m).sub(&cur.scale(&s));
                        p += 1;
                    }
                    out
                };
                let (eu, ev) = (exp_terms(1, i), exp_terms(2, j));
                let mut rhs: BTreeMap<u32, CoeffVector> = BTreeMap::new();
                for l in 0..=self.y.max_log() {
                    let c = ExactScalar::from_rat(binom_int((k + l) as i64, l));
                    for (p, u) in eu.iter().enumerate() {
                        for (q, v) in ev.iter().enumerate() {
                            let val = self.y.mode_lin(u, v, &n, k + l).scale(&c);
                            if !val.is_zero() {
                                let e = rhs.entry(l + p as u32 + q as u32).or_default();
                                *e = e.add(&val);
                            }
                        }
                    }
                }
                rhs.retain(|_, v| !v.is_zero());
                if lhs != rhs {
                    return Some(format!("e{i}, f{j}, n = {n}, k = {k}"));
                }
            }
        }
        None
    }

    fn rt(&self) -> Option<String> {
        let l3 = self.y.w3().l(0);
        for (i, j) in self.pairs() {
            for (n, k) in nk_window(self.y) {
                let lam = self.lambda(i, j, &n);
                for t in 0..=self.tmax {
                    let lhs = self.y.mode(i, j, &n, k + t).scale(&ExactScalar::from_rat(binom_int((k + t) as i64, t)));
                    let mut rhs = CoeffVector::zero();
                    for p in 0..=t {
                        for q in 0..=(t - p) {
                            let l = t - p - q;
                            let (u, v) = self.shifted(i, j, p, q);
                            let mut c = &(&inv_fact(p) * &inv_fact(q)) * &inv_fact(l);
                            if (p + q) % 2 == 1 {
                                c = -c;
                            }
                            rhs.add_scaled(&shifted_pow(l3, &lam, l, &self.y.mode_lin(&u, &v, &n, k)), &c);
                        }
                    }
                    if lhs != rhs {
                        return Some(format!("e{i}, f{j}, n = {n}, k = {k}, t = {t}"));
                    }
                }
            }
        }
        None
    }

    fn bound(&self) -> Option<String> {
        let kk = self.y.w1().nilpotency() + self.y.w2().nilpotency() + self.y.w3().nilpotency();
        let limit = kk.saturating_sub(3);
        self.y.modes().find(|(key, _)| key.k > limit).map(|(key, _)| format!("{key} is nonzero above log power {limit}"))
    }

    fn pairing_poly(&self) -> Option<String> {
        let x = Var::new("x");
        let (w1, w2, w3) = (self.y.w1(), self.y.w2(), self.y.w3());
        let l3t = w3.l(0).transpose();
        for (i, j) in self.pairs() {
            let (a, b) = (self.weight_scalar(1, i), self.weight_scalar(2, j));
            let (Some(k1), Some(k2)) = (
                local_nilpotency(w1.l(0), &a, &CoeffVector::basis(i), w1.dim() as u32),
                local_nilpotency(w2.l(0), &b, &CoeffVector::basis(j), w2.dim() as u32),
            ) else {
                return Some(format!("e{i} or f{j} is not a generalized weight vector"));
            };
            let s = self.y.series(&CoeffVector::basis(i), &CoeffVector::basis(j), &x);
            for c in 0..w3.dim() {
                let h3 = w3.weight(c);
                let Some(k3) = local_nilpotency(&l3t, &h3.to_scalar(), &CoeffVector::basis(c), w3.dim() as u32) else {
                    return Some(format!("dual vector e{c}' is not a generalized weight vector"));
                };
                let e = &(h3 - w1.weight(i)) - w2.weight(j);
                let top = (k1 + k2 + k3) as i64 - 3;
                for (m, v) in s.terms() {
                    if v.get(c).is_zero() {
                        continue;
                    }
                    let (pe, pk) = m.get(&x);
                    if pe != e || pk as i64 > top {
                        return Some(format!("<e{c}', Y(e{i},x)f{j}> has term {m} outside x^({e}) lg(x)^(<={top})"));
                    }
                }
            }
        }
        None
    }

    fn mode_weight(&self) -> Option<String> {
        axiom_residuals(self.y, Axiom::Weight).into_iter().next().map(|(k, v)| format!("at {k}: {v}"))
    }
}

/// Checks one identity for every basis pair and every `t ≤ K₁+K₂+K₃`.
pub fn weight_formulas_check(y: &IntertwinerTable, which: WeightFormula) -> Result<Check, IntertwinerError> {
    if let Some((k, v)) = axiom_residuals(y, Axiom::L0Derivative).into_iter().next() {
        return Err(IntertwinerError::Precondition(format!("L(0)-derivative property fails at {k}: {v}")));
    }
    let tmax = y.w1().nilpotency() + y.w2().nilpotency() + y.w3().nilpotency();
    let ctx = Ctx { y, tmax };
    let failure = match which {
        WeightFormula::Ty => ctx.ty(),
        WeightFormula::T00 => ctx.t00(),
        WeightFormula::Gen => ctx.gen(),
        WeightFormula::Rt => ctx.rt(),
        WeightFormula::Bound => ctx.bound(),
        WeightFormula::PairingPoly => ctx.pairing_poly(),
        WeightFormula::ModeWeight => ctx.mode_weight(),
    };
    let detail = format!("t <= {tmax}, {} mode(s)", y.len());
    Ok(Check::new(which.id(), which.id(), failure.is_none(), detail).with_witness(failure))
}
