use alloc::string::String;

use super::{GradedSpace, Module, Sl2Action};
use crate::logseries::{CoeffSpace, CoeffVector, LogSeries, Monomial, SeriesError, Var};
use crate::matrix::ExactMatrix;
use crate::scalars::{ExactScalar, Exponent, Rat};
use crate::substitution::{exp_zeta_times, zeta_ratio};

/// `Σ_{k≤order} y^k M^k / k!` as a matrix-valued series in `y`, truncated at `order`.
pub fn exp_series(m: &ExactMatrix, y: &Var, order: u32) -> LogSeries {
    let n = m.rows();
    let mut out = LogSeries::zero(CoeffSpace::Matrix(n));
    let mut p = ExactMatrix::identity(n);
    for k in 0..=order {
        let c = p.scale_rat(&Rat::factorial(k).recip());
        out.add_term(Monomial::power(y, Exponent::int(k as i64), 0), CoeffVector::from_matrix(&c));
        p = &p * m;
        if p.is_zero() {
            break;
        }
    }
    out.truncate(y, order as i64)
}

impl Module {
    /// `x^{±L(0)} w = Σ_n x^{±n} Σ_i (L(0) − n)^i w_n / i! · (±log x)^i` over weight components `w_n`.
    pub fn x_pm_l0(&self, w: &CoeffVector, sign: i32, x: &Var) -> LogSeries {
        let nil = self.nilpotent();
        let mut out = LogSeries::zero(CoeffSpace::Vector(self.dim()));
        for (c, coeff) in w.components() {
            let h = self.weight(c);
            let e = if sign >= 0 { h.clone() } else { -h };
            let mut v = CoeffVector::scalar_at(c, coeff.clone());
            let mut i = 0u32;
            while !v.is_zero() {
                let s = if sign < 0 && i % 2 == 1 { -1 } else { 1 };
                let scaled = v.scale(&ExactScalar::from_rat(&Rat::int(s) / &Rat::factorial(i)));
                out.add_term(Monomial::power(x, e.clone(), i), scaled);
                v = v.apply(&nil);
                i += 1;
            }
        }
        out
    }

    /// `x^{±L(0)}` as a matrix-valued series.
    pub fn x_pm_l0_matrix(&self, sign: i32, x: &Var) -> LogSeries {
        let n = self.dim();
        let mut out = LogSeries::zero(CoeffSpace::Matrix(n));
        for c in 0..n {
            let col = self.x_pm_l0(&CoeffVector::basis(c), sign, x);
            for (m, v) in col.terms() {
                let mut entry = CoeffVector::zero();
                for (r, s) in v.components() {
                    entry.set(r * n + c, s.clone());
                }
                out.add_term(m.clone(), entry);
            }
        }
        out
    }

    /// `e^{aL(0)} = e^{aL(0)_s} e^{aN}` for `a ∈ ℚ·Π`; weights must be real with `q·h` on the lattice.
    pub fn e_a_l0(&self, a: &ExactScalar) -> Result<ExactMatrix, SeriesError> {
        let q = zeta_ratio(a)?;
        let mut d = alloc::vec::Vec::with_capacity(self.dim());
        for h in self.weights() {
            d.push(exp_zeta_times(&q, h)?);
        }
        let en = self.nilpotent().exp_nilpotent(a).expect("validated");
        Ok(&ExactMatrix::diagonal(&d) * &en)
    }

    /// Dual module with `L'(j) = L(−j)^T`, degrees negated and the dual basis.
    pub fn contragredient(&self) -> Module {
        let name = match self.name().strip_suffix('\'') {
            Some(base) => String::from(base),
            None => alloc::format!("{}'", self.name()),
        };
        let sp = &self.space;
        let space = GradedSpace {
            name,
            weights: sp.weights.clone(),
            degrees: sp.degrees.iter().map(|d| sp.group.neg(d)).collect(),
            group: sp.group.clone(),
            indecomposable: sp.indecomposable,
        };
        let action = Sl2Action { lm1: self.action.l1.transpose(), l0: self.action.l0.transpose(), l1: self.action.lm1.transpose() };
        Module { space, action, full_sl2: self.full_sl2 }
    }

    /// `⟨w', w⟩` in the dual basis.
    pub fn pair(wp: &CoeffVector, w: &CoeffVector) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (i, a) in wp.components() {
            let b = w.get(i);
            if !b.is_zero() {
                acc += &(a * &b);
            }
        }
        acc
    }
}
