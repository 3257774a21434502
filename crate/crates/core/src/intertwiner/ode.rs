//! Solutions of `(x d/dx − a)^m f = 0` in `W[log x]{x}`.

use alloc::format;
use alloc::string::String;

use crate::logseries::{euler_power, CoeffSpace, CoeffVector, LogSeries, Monomial, Var};
use crate::mobius::Module;
use crate::report::Check;
use crate::scalars::{Exponent, Rat};

/// `Σ_k w_k x^a (log x)^k`.
pub fn ode_solution(x: &Var, a: &Exponent, space: CoeffSpace, coeffs: &[CoeffVector]) -> LogSeries {
    let mut f = LogSeries::zero(space);
    for (k, w) in coeffs.iter().enumerate() {
        f.add_term(Monomial::power(x, a.clone(), k as u32), w.clone());
    }
    f
}

/// Smallest `m ≤ bound` with `(x d/dx − a)^m f = 0`.
pub fn annihilating_order(f: &LogSeries, x: &Var, a: &Exponent, bound: u32) -> Option<u32> {
    let s = a.to_scalar();
    let mut cur = f.clone();
    for m in 0..=bound {
        if cur.is_zero() {
            return Some(m);
        }
        cur = euler_power(&cur, x, &s, 1);
    }
    None
}

/// The structure statement for a given `f`, `a` and `m`: if the equation holds then `f` lives on
/// `x^a (log x)^k`, `k < m`, and `m` is minimal exactly when the `(log x)^{m−1}` coefficient is
/// nonzero.
pub fn ode_structure_check(f: &LogSeries, x: &Var, a: &Exponent, m: u32) -> Check {
    let id = "de";
    let s = a.to_scalar();
    let residual = euler_power(f, x, &s, m);
    if !residual.is_zero() {
        let w = residual.terms().next().map(|(mono, v)| format!("(x d/dx - ({a}))^{m} f has {v} at {mono}"));
        return Check::new(id, "ODE structure", false, String::from("equation fails")).with_witness(w);
    }
    if let Some((mono, _)) = f.terms().find(|(mono, _)| {
        let (n, k) = mono.get(x);
        &n != a || k >= m || !mono.without(x).is_one()
    }) {
        return Check::new(id, "ODE structure", false, String::from("support outside x^a(log x)^{<m}"))
            .with_witness(Some(format!("term {mono}")));
    }
    let minimal = m == 0 || !euler_power(f, x, &s, m - 1).is_zero();
    let top = m > 0 && !f.coeff(&Monomial::power(x, a.clone(), m - 1)).is_zero();
    let pass = m == 0 || minimal == top;
    Check::new(id, "ODE structure", pass, format!("m = {m}, minimal = {minimal}, top coefficient nonzero = {top}"))
        .with_witness((!pass).then(|| format!("minimality {minimal} but top coefficient nonzero {top}")))
}

/// `w x^b Σ_{k≤T} ((a−b) log x)^k / k!`, the truncation of `w x^b e^{(a−b) log x}`.
pub fn truncated_exp_log(x: &Var, a: &Exponent, b: &Exponent, trunc: u32) -> LogSeries {
    let c = (a - b).to_scalar();
    let mut f = LogSeries::zero(CoeffSpace::Scalar);
    for k in 0..=trunc {
        f.add_scalar_term(Monomial::power(x, b.clone(), k), c.pow(k).scale_rat(&Rat::factorial(k).recip()));
    }
    f
}

/// `(x d/dx − h)^K x^{L(0)} w = 0` on every basis vector `w` of weight `h`, with `K` the local
/// nilpotency of `L(0) − h` at `w` and the `(log x)^{K−1}` coefficient nonzero.
pub fn x_l0_ode_check(module: &Module, x: &Var) -> Check {
    let id = "xpmL0-ode";
    let nil = module.nilpotent();
    for i in 0..module.dim() {
        let h = module.weight(i);
        for sign in [1, -1] {
            let e = if sign > 0 { h.clone() } else { -h };
            let f = module.x_pm_l0(&CoeffVector::basis(i), sign, x);
            let mut k = 0u32;
            let mut v = CoeffVector::basis(i);
            while !v.is_zero() {
                v = v.apply(&nil);
                k += 1;
            }
            let c = ode_structure_check(&f, x, &e, k);
            if !c.pass || annihilating_order(&f, x, &e, k) != Some(k) {
                return Check::new(id, "x^{±L(0)} ODE", false, module.name().into())
                    .with_witness(Some(format!("basis {i}, sign {sign}: {}", c.witness.unwrap_or_default())));
            }
        }
    }
    Check::new(id, "x^{±L(0)} ODE", true, format!("{}: {} basis vectors", module.name(), module.dim()))
}
