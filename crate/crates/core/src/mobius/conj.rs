use alloc::format;
use alloc::string::String;

use super::ops::exp_series;
use super::Module;
use crate::logseries::{CoeffSpace, CoeffVector, LogSeries, Monomial, SeriesError, Var};
use crate::matrix::ExactMatrix;
use crate::report::Check;
use crate::scalars::{ExactScalar, Exponent, Rat};

/// Operator identities checked on a single module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjIdentity {
    /// `x^{L(0)} L(j) x^{−L(0)} = x^{−j} L(j)`.
    XL0Lj(i32),
    /// `x^{L(0)} e^{yL(j)} x^{−L(0)} = e^{y x^{−j} L(j)}`.
    XL0ExpLj(i32),
    /// Conjugation of `(L(−1), L(0), L(1))` by `e^{xL(−1)}`.
    ExpLm1,
    /// Conjugation of `(L(−1), L(0), L(1))` by `e^{xL(0)}`.
    ExpL0,
    /// Conjugation of `(L(−1), L(0), L(1))` by `e^{xL(1)}`.
    ExpL1,
    /// `(1 − x)^{L(0)} = Σ_k C(L(0), k)(−x)^k = e^{L(0) log(1−x)}`.
    OneMinusX,
    /// `e^{(2r+1)πiL(0)} (x^{L(0)})² e^{xL(1)} (x^{−L(0)})² e^{−(2r+1)πiL(0)} = e^{−x^{−1}L(1)}`.
    InverseRel(i64),
    /// The same conjugation applied to `xL(1)` gives `−x^{−1}L(1)`.
    XtoInverse(i64),
    /// `e^{a(L(0) − L(0)_s)}` commutes with `L(−1), L(0), L(1)`.
    NilpotentCommutes,
}

impl ConjIdentity {
    pub fn id(&self) -> String {
        match self {
            ConjIdentity::XL0Lj(j) => format!("xL0Lj[{j}]"),
            ConjIdentity::XL0ExpLj(j) => format!("xL0expLj[{j}]"),
            ConjIdentity::ExpLm1 => "SL2-1".into(),
            ConjIdentity::ExpL0 => "SL2-2".into(),
            ConjIdentity::ExpL1 => "SL2-3".into(),
            ConjIdentity::OneMinusX => "one-minus-x".into(),
            ConjIdentity::InverseRel(r) => format!("conjrelation[r={r}]"),
            ConjIdentity::XtoInverse(r) => format!("xto-1/x[r={r}]"),
            ConjIdentity::NilpotentCommutes => "nilpotent-commutes".into(),
        }
    }

    /// Whether the identity needs `[L(1), L(−1)] = 2L(0)`.
    pub fn needs_full_sl2(&self) -> bool {
        matches!(self, ConjIdentity::ExpLm1 | ConjIdentity::ExpL1)
    }
}

fn constant(m: &ExactMatrix) -> LogSeries {
    LogSeries::vector_term(CoeffSpace::Matrix(m.rows()), Monomial::one(), CoeffVector::from_matrix(m))
}

fn mono(x: &Var, n: i64) -> Monomial {
    Monomial::power(x, Exponent::int(n), 0)
}

/// `M₀ + c₁ x M₁ + …` as a matrix series.
fn poly(x: &Var, terms: &[(i64, i64, &ExactMatrix)]) -> LogSeries {
    let n = terms[0].2.rows();
    let mut s = LogSeries::zero(CoeffSpace::Matrix(n));
    for (c, k, m) in terms {
        s.add_term(mono(x, *k), CoeffVector::from_matrix(&m.scale(&ExactScalar::int(*c))));
    }
    s
}

/// `e^{xM}` for nilpotent `M`, exactly.
fn exp_nil(m: &ExactMatrix, x: &Var) -> LogSeries {
    exp_series(m, x, m.rows() as u32).with_trunc_cleared(x)
}

trait ClearTrunc {
    fn with_trunc_cleared(self, x: &Var) -> Self;
}

impl ClearTrunc for LogSeries {
    fn with_trunc_cleared(mut self, x: &Var) -> Self {
        self.clear_trunc(x);
        self
    }
}

fn conj(a: &LogSeries, m: &LogSeries, b: &LogSeries) -> Result<LogSeries, SeriesError> {
    a.mul(m)?.mul(b)
}

fn compare(id: &str, lhs: &LogSeries, rhs: &LogSeries) -> Check {
    let diff = lhs - rhs;
    let witness = diff.terms().next().map(|(m, v)| format!("difference at {m}: {v:?}"));
    Check::new(id, id, diff.is_zero(), format!("{} terms", lhs.len())).with_witness(witness)
}

/// Check one identity, truncating non-polynomial exponentials at `order`.
pub fn conj_identity_check(module: &Module, which: ConjIdentity, order: u32) -> Result<Check, SeriesError> {
    let id = which.id();
    if which.needs_full_sl2() && !module.is_full_sl2() {
        return Ok(Check::new(&id, &id, false, String::from("module does not satisfy [L(1),L(-1)]=2L(0)")));
    }
    let x = Var::new("x");
    let y = Var::new("y");
    let n = module.dim();
    let ls = [module.l(-1), module.l(0), module.l(1)];
    let check = match which {
        ConjIdentity::XL0Lj(j) => {
            let lhs = conj(&module.x_pm_l0_matrix(1, &x), &constant(module.l(j)), &module.x_pm_l0_matrix(-1, &x))?;
            compare(&id, &lhs, &constant(module.l(j)).shift(&mono(&x, -j as i64)))
        }
        ConjIdentity::XL0ExpLj(j) => {
            let e = exp_series(module.l(j), &y, order);
            let lhs = conj(&module.x_pm_l0_matrix(1, &x), &e, &module.x_pm_l0_matrix(-1, &x))?;
            let mut rhs = LogSeries::zero(CoeffSpace::Matrix(n));
            for (m, v) in e.terms() {
                let k = m.exponent(&y).to_i64().unwrap_or(0);
                rhs.add_term(m.mul(&mono(&x, -(j as i64) * k)), v.clone());
            }
            rhs.set_trunc(&y, order as i64);
            compare(&id, &lhs, &rhs)
        }
        ConjIdentity::ExpLm1 | ConjIdentity::ExpL1 => {
            let g = if which == ConjIdentity::ExpLm1 { module.l(-1) } else { module.l(1) };
            let e = exp_nil(g, &x);
            let einv = exp_nil(&g.scale(&ExactScalar::int(-1)), &x);
            let rows: [LogSeries; 3] = if which == ConjIdentity::ExpLm1 {
                [
                    poly(&x, &[(1, 0, ls[0])]),
                    poly(&x, &[(-1, 1, ls[0]), (1, 0, ls[1])]),
                    poly(&x, &[(1, 2, ls[0]), (-2, 1, ls[1]), (1, 0, ls[2])]),
                ]
            } else {
                [
                    poly(&x, &[(1, 0, ls[0]), (2, 1, ls[1]), (1, 2, ls[2])]),
                    poly(&x, &[(1, 0, ls[1]), (1, 1, ls[2])]),
                    poly(&x, &[(1, 0, ls[2])]),
                ]
            };
            let mut all = Check::new(&id, &id, true, String::new());
            for (k, rhs) in rows.iter().enumerate() {
                let c = compare(&id, &conj(&e, &constant(ls[k]), &einv)?, rhs);
                if !c.pass {
                    all = c.with_witness(Some(format!("component L({})", k as i64 - 1)));
                    break;
                }
            }
            all
        }
        ConjIdentity::ExpL0 => {
            let e = exp_series(module.l(0), &x, order);
            let einv = exp_series(&module.l(0).scale(&ExactScalar::int(-1)), &x, order);
            let mut all = Check::new(&id, &id, true, String::new());
            for (k, l) in ls.iter().enumerate() {
                let j = k as i64 - 1;
                // e^{−jx} L(j)
                let mut rhs = LogSeries::zero(CoeffSpace::Matrix(n));
                for t in 0..=order {
                    let c = Rat::int(-j).pow(t);
                    rhs.add_term(mono(&x, t as i64), CoeffVector::from_matrix(&l.scale_rat(&(&c / &Rat::factorial(t)))));
                }
                rhs.set_trunc(&x, order as i64);
                let c = compare(&id, &conj(&e, &constant(l), &einv)?, &rhs);
                if !c.pass {
                    all = c;
                    break;
                }
            }
            all
        }
        ConjIdentity::OneMinusX => {
            let l0 = module.l(0);
            let id_m = ExactMatrix::identity(n);
            let mut lhs = LogSeries::zero(CoeffSpace::Matrix(n));
            let mut falling = id_m.clone();
            for k in 0..=order {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let c = falling.scale_rat(&(&Rat::int(sign) / &Rat::factorial(k)));
                lhs.add_term(mono(&x, k as i64), CoeffVector::from_matrix(&c));
                falling = &falling * &(l0 - &id_m.scale(&ExactScalar::int(k as i64)));
            }
            lhs.set_trunc(&x, order as i64);
            // L(0)·log(1 − x) = −Σ_{i≥1} x^i/i · L(0)
            let mut lg = LogSeries::zero(CoeffSpace::Matrix(n));
            for i in 1..=order as i64 {
                lg.add_term(mono(&x, i), CoeffVector::from_matrix(&l0.scale(&ExactScalar::frac(-1, i))));
            }
            lg.set_trunc(&x, order as i64);
            let mut rhs = constant(&id_m).truncate(&x, order as i64);
            let mut p = rhs.clone();
            for m in 1..=order {
                p = p.mul(&lg)?;
                rhs.add_assign_checked(&p.scale(&ExactScalar::from_rat(Rat::factorial(m).recip())))?;
            }
            compare(&id, &lhs, &rhs)
        }
        ConjIdentity::InverseRel(r) | ConjIdentity::XtoInverse(r) => {
            let a = ExactScalar::pi().scale_rat(&Rat::int(2 * r + 1));
            let ea = constant(&module.e_a_l0(&a)?);
            let eainv = constant(&module.e_a_l0(&-&a)?);
            let xp2 = module.x_pm_l0_matrix(1, &x).pow(2)?;
            let xm2 = module.x_pm_l0_matrix(-1, &x).pow(2)?;
            let (mid, rhs) = if matches!(which, ConjIdentity::InverseRel(_)) {
                (exp_nil(module.l(1), &x), exp_nil(module.l(1), &x).flip_powers(&x))
            } else {
                (constant(module.l(1)).shift(&mono(&x, 1)), constant(module.l(1)).shift(&mono(&x, -1)).scale(&ExactScalar::int(-1)))
            };
            let lhs = ea.mul(&xp2)?.mul(&mid)?.mul(&xm2)?.mul(&eainv)?;
            compare(&id, &lhs, &rhs)
        }
        ConjIdentity::NilpotentCommutes => {
            let en = constant(&module.nilpotent().exp_nilpotent(&ExactScalar::pi()).expect("validated"));
            let mut all = Check::new(&id, &id, true, String::new());
            for l in ls {
                let c = compare(&id, &en.mul(&constant(l))?, &constant(l).mul(&en)?);
                if !c.pass {
                    all = c;
                    break;
                }
            }
            all
        }
    };
    Ok(check)
}

trait FlipPowers {
    fn flip_powers(self, x: &Var) -> Self;
}

impl FlipPowers for LogSeries {
    /// `x^k ↦ (−x^{−1})^k` for integer powers.
    fn flip_powers(self, x: &Var) -> Self {
        self.flat_map_terms(self.space(), |m, v| {
            let k = m.exponent(x).to_i64().unwrap_or(0);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Ok(LogSeries::vector_term(self.space(), m.with(x, Exponent::int(-k), 0), v.scale(&ExactScalar::int(sign))))
        })
        .expect("spaces agree")
    }
}
