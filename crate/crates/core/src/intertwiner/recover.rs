//! Recovering modes from weight projections of the modified operators.

use alloc::format;
use alloc::vec::Vec;

use super::{shifted_pow, IntertwinerError, IntertwinerTable};
use crate::logseries::{CoeffSpace, CoeffVector, LogSeries, Monomial, Var};
use crate::scalars::{binom_int, ExactScalar, Exponent, Rat};

/// `π(t)`: the weight-`n₁+n₂−n−1` component of
/// `Σ_{i+j+l=t} (−1)^{i+j}/(i!j!l!) (L(0)−n₁−n₂+n+1)^l 𝒴((L(0)−n₁)^i e_i, x)(L(0)−n₂)^j f_j`.
fn pi_t(y: &IntertwinerTable, i: usize, j: usize, n: &Exponent, t: u32, x: &Var) -> LogSeries {
    let (w1, w2, w3) = (y.w1(), y.w2(), y.w3());
    let (n1, n2) = (w1.weight(i), w2.weight(j));
    let h = &(n1 + n2) - &n.add_int(1);
    let lam = h.to_scalar();
    let mut out = LogSeries::zero(CoeffSpace::Vector(w3.dim()));
    for p in 0..=t {
        for q in 0..=(t - p) {
            let l = t - p - q;
            let u = shifted_pow(w1.l(0), &n1.to_scalar(), p, &CoeffVector::basis(i));
            let v = shifted_pow(w2.l(0), &n2.to_scalar(), q, &CoeffVector::basis(j));
            let mut c = Rat::factorial(p) * Rat::factorial(q) * Rat::factorial(l);
            c = c.recip();
            if (p + q) % 2 == 1 {
                c = -c;
            }
            let s = y.series(&u, &v, x);
            let s = s.map_coeffs(s.space(), |w| shifted_pow(w3.l(0), &lam, l, w).project(|c| w3.weight(c) == &h));
            out = out + s.scale(&ExactScalar::from_rat(c));
        }
    }
    out
}

/// `(e_i)_{n;r} f_j = x^{n+1} Σ_{t=r}^{K−1} (−1)^{r+t} C(t,r) (log x)^{t−r} π(t)` for `r = 0..K−1`,
/// with `K = max_log + 1`; every `x` and `log x` must cancel.
pub fn recover_modes(y: &IntertwinerTable, i: usize, j: usize, n: &Exponent) -> Result<Vec<CoeffVector>, IntertwinerError> {
    let x = Var::new("x");
    let kk = y.max_log() + 1;
    let pis: Vec<LogSeries> = (0..kk).map(|t| pi_t(y, i, j, n, t, &x)).collect();
    let lift = Monomial::power(&x, n.add_int(1), 0);
    let mut out = Vec::with_capacity(kk as usize);
    for r in 0..kk {
        let mut acc = LogSeries::zero(CoeffSpace::Vector(y.w3().dim()));
        for t in r..kk {
            let mut c = ExactScalar::from_rat(binom_int(t as i64, r));
            if (r + t) % 2 == 1 {
                c = -c;
            }
            acc = acc + pis[t as usize].shift(&lift.with(&x, n.add_int(1), t - r)).scale(&c);
        }
        let mut constant = CoeffVector::zero();
        for (m, v) in acc.terms() {
            if !m.is_one() {
                return Err(IntertwinerError::NotConstant(format!("term {m} survives for r = {r}")));
            }
            constant = v.clone();
        }
        out.push(constant);
    }
    Ok(out)
}
