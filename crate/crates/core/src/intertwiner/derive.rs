//! Operators producing new tables: log-power and congruence components, `X_t`, `Ω_r`, `A_r`, shifts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::axioms::axiom_residuals;
use super::{Axiom, IntertwinerError, IntertwinerTable, ModeKey};
use crate::logseries::{CoeffVector, Var};
use crate::matrix::ExactMatrix;
use crate::report::{Check, Report};
use crate::scalars::{binom_int, ExactScalar, Exponent, Rat};
use crate::substitution::{exp_zeta_times, subst_scaled_exp, zeta_ratio};

/// `𝒴^{(k)}`: the coefficient of `(log x)^k`, as a log-free table.
pub fn by_logpower(y: &IntertwinerTable, k: u32) -> IntertwinerTable {
    let mut out = y.empty_like();
    for (key, v) in y.modes() {
        if key.k == k {
            out.set(ModeKey::new(key.i, key.j, key.n.clone(), 0), v.clone());
        }
    }
    out
}

/// `𝒴^{μ}`: modes with `n ≡ μ mod ℤ`, keyed by the representative `0 ≤ Re μ < 1`.
pub fn by_congruence(y: &IntertwinerTable) -> BTreeMap<Exponent, IntertwinerTable> {
    let mut out: BTreeMap<Exponent, IntertwinerTable> = BTreeMap::new();
    for (key, v) in y.modes() {
        out.entry(key.n.class_mod_z()).or_insert_with(|| y.empty_like()).set(key.clone(), v.clone());
    }
    out
}

/// The derivative property split by log power: for each `k`, the part involving `𝒴^{(k)}` and `𝒴^{(k+1)}`.
pub fn l_minus1_comp_check(y: &IntertwinerTable, axiom: Axiom) -> Report {
    let res = axiom_residuals(y, axiom);
    let label = match axiom {
        Axiom::L0Derivative => "L(0)comp",
        _ => "L(-1)comp",
    };
    let mut r = Report::new(label);
    for k in 0..=y.max_log() {
        let bad: Vec<_> = res.iter().filter(|(key, _)| key.k == k).collect();
        let witness = bad.first().map(|(key, v)| format!("at {key}: {v}"));
        r.push(
            Check::new(
                &format!("{label}[{k}]"),
                &format!("component identity for log power {k}"),
                bad.is_empty(),
                format!("{} residual(s)", bad.len()),
            )
            .with_witness(witness),
        );
    }
    r
}

/// `X_t 𝒴 = Σ_k C(k+t, t) 𝒴^{(k+t)} (log x)^k`.
pub fn x_t(y: &IntertwinerTable, t: u32) -> IntertwinerTable {
    let mut out = y.empty_like();
    for (key, v) in y.modes() {
        if key.k >= t {
            let c = ExactScalar::from_rat(binom_int(key.k as i64, t));
            out.set(ModeKey::new(key.i, key.j, key.n.clone(), key.k - t), v.scale(&c));
        }
    }
    out
}

/// `c ∘ 𝒴(a·, b·)` for linear maps on `W₁`, `W₂`, `W₃`; `None` is the identity.
pub fn compose_homs(y: &IntertwinerTable, a: Option<&ExactMatrix>, b: Option<&ExactMatrix>, c: Option<&ExactMatrix>) -> IntertwinerTable {
    let mut out = y.empty_like();
    let keys: alloc::collections::BTreeSet<(Exponent, u32)> = y.modes().map(|(k, _)| (k.n.clone(), k.k)).collect();
    for i in 0..y.w1().dim() {
        let u = match a {
            Some(m) => CoeffVector::basis(i).apply(m),
            None => CoeffVector::basis(i),
        };
        for j in 0..y.w2().dim() {
            let v = match b {
                Some(m) => CoeffVector::basis(j).apply(m),
                None => CoeffVector::basis(j),
            };
            for (n, k) in &keys {
                let mut w = y.mode_lin(&u, &v, n, *k);
                if let Some(m) = c {
                    w = w.apply(m);
                }
                out.set(ModeKey::new(i, j, n.clone(), *k), w);
            }
        }
    }
    out
}

/// `X_t = Σ_{i+j+l=t} (−1)^{i+j}/(i!j!l!) N₃^l ∘ 𝒴(N₁^i ·, x) N₂^j`, `N` the nilpotent parts of `L(0)`.
pub fn x_t_via_homs(y: &IntertwinerTable, t: u32) -> IntertwinerTable {
    let (n1, n2, n3) = (y.w1().nilpotent(), y.w2().nilpotent(), y.w3().nilpotent());
    let mut out = y.empty_like();
    for i in 0..=t {
        for j in 0..=(t - i) {
            let l = t - i - j;
            let mut c = (Rat::factorial(i) * Rat::factorial(j) * Rat::factorial(l)).recip();
            if (i + j) % 2 == 1 {
                c = -c;
            }
            let term = compose_homs(y, Some(&n1.pow(i)), Some(&n2.pow(j)), Some(&n3.pow(l)));
            out = out.add_table(&term.scale(&ExactScalar::from_rat(c)));
        }
    }
    out
}

/// `𝒴(w, e^ζ x)` for `ζ ∈ ℚ·Π`, computed by substituting into each series.
pub fn subst_table(y: &IntertwinerTable, zeta: &ExactScalar) -> Result<IntertwinerTable, IntertwinerError> {
    let x = Var::new("x");
    let mut out = y.empty_like();
    let pairs: alloc::collections::BTreeSet<(usize, usize)> = y.modes().map(|(k, _)| (k.i, k.j)).collect();
    for (i, j) in pairs {
        let s = y.series(&CoeffVector::basis(i), &CoeffVector::basis(j), &x);
        out.set_from_series(i, j, &subst_scaled_exp(&s, &x, zeta)?, &x)?;
    }
    Ok(out)
}

/// `X_t` from the monodromy: per class `μ`, `Σ_p V⁻¹[t][p] e^{2πipμ} 𝒴^μ(·, e^{2πip}x)` over `p = 0..=K`.
pub fn x_t_via_vandermonde(y: &IntertwinerTable, t: u32) -> Result<IntertwinerTable, IntertwinerError> {
    x_t_via_vandermonde_nodes(y, t, y.max_log())
}

/// As [`x_t_via_vandermonde`] with nodes `p = 0..=s`; any `s ≥ K` gives the same result.
pub fn x_t_via_vandermonde_nodes(y: &IntertwinerTable, t: u32, s: u32) -> Result<IntertwinerTable, IntertwinerError> {
    if s < y.max_log() {
        return Err(IntertwinerError::Precondition(format!("{} nodes cannot separate log powers up to {}", s + 1, y.max_log())));
    }
    let kk = s as usize;
    let mut out = y.empty_like();
    if t as usize > kk {
        return Ok(out);
    }
    let pv = ExactMatrix::from_fn(kk + 1, kk + 1, |p, j| ExactScalar::from_rat(Rat::int(p as i64).pow(j as u32)));
    let pinv = pv.inverse()?;
    let two_pi_t = (&ExactScalar::int(2) * &ExactScalar::pi()).pow_int(-(t as i64))?;
    for (mu, part) in by_congruence(y) {
        for p in 0..=kk {
            let coeff = &(&two_pi_t * pinv.get(t as usize, p)) * &exp_zeta_times(&Rat::int(2 * p as i64), &mu)?;
            if coeff.is_zero() {
                continue;
            }
            let zeta = &ExactScalar::int(2 * p as i64) * &ExactScalar::pi();
            out = out.add_table(&subst_table(&part, &zeta)?.scale(&coeff));
        }
    }
    Ok(out)
}

/// `Ω_r(𝒴)(w₂, x)w₁ = e^{xL(−1)} 𝒴(w₁, e^{(2r+1)πi}x) w₂`, of type `(W₃; W₂ W₁)`.
pub fn omega_r(y: &IntertwinerTable, r: i64) -> Result<IntertwinerTable, IntertwinerError> {
    let zeta = &ExactScalar::int(2 * r + 1) * &ExactScalar::pi();
    let q = zeta_ratio(&zeta)?;
    let lm1 = y.w3().l(-1);
    let mut powers = alloc::vec![ExactMatrix::identity(y.w3().dim())];
    loop {
        let next = &powers[powers.len() - 1] * lm1;
        if next.is_zero() {
            break;
        }
        powers.push(next);
    }
    let mut out = IntertwinerTable::new(y.w2().clone(), y.w1().clone(), y.w3().clone());
    for (key, v) in y.modes() {
        let phase = exp_zeta_times(&q, &(-&key.n.add_int(1)))?;
        for kk in 0..=key.k {
            let c = &phase * &zeta.pow(key.k - kk).scale_rat(&binom_int(key.k as i64, key.k - kk));
            for (a, pw) in powers.iter().enumerate() {
                let w = v.apply(pw).scale(&c.scale_rat(&Rat::factorial(a as u32).recip()));
                out.add(ModeKey::new(key.j, key.i, key.n.add_int(-(a as i64)), kk), &w);
            }
        }
    }
    Ok(out)
}

/// `⟨A_r(𝒴)(w₁,x)w₃', w₂⟩ = ⟨w₃', 𝒴(e^{xL(1)} e^{(2r+1)πiL(0)} x^{−2L(0)} w₁, x^{−1}) w₂⟩`, of type `(W₂'; W₁ W₃')`.
pub fn a_r(y: &IntertwinerTable, r: i64) -> Result<IntertwinerTable, IntertwinerError> {
    let x = Var::new("x");
    let (w1, w2, w3) = (y.w1(), y.w2(), y.w3());
    let zeta = &ExactScalar::int(2 * r + 1) * &ExactScalar::pi();
    let ez = w1.e_a_l0(&zeta)?;
    let l1 = w1.l(1);
    let mut out = IntertwinerTable::new(w1.clone(), Arc::new(w3.contragredient()), Arc::new(w2.contragredient()));
    let keys: alloc::collections::BTreeSet<(Exponent, u32)> = y.modes().map(|(k, _)| (k.n.clone(), k.k)).collect();
    for i in 0..w1.dim() {
        // u(x) = e^{xL(1)} e^{ζL(0)} x^{−2L(0)} e_i as (vector, power of x, power of log x).
        let mut u: Vec<(CoeffVector, Exponent, u32)> = Vec::new();
        for (m1, v1) in w1.x_pm_l0(&CoeffVector::basis(i), -1, &x).terms() {
            let (e1, k1) = m1.get(&x);
            for (m2, v2) in w1.x_pm_l0(v1, -1, &x).terms() {
                let (e2, k2) = m2.get(&x);
                let mut v = v2.apply(&ez);
                let mut a = 0i64;
                while !v.is_zero() {
                    let c = ExactScalar::from_rat(Rat::factorial(a as u32).recip());
                    u.push((v.scale(&c), (&e1 + &e2).add_int(a), k1 + k2));
                    v = v.apply(l1);
                    a += 1;
                }
            }
        }
        for (uv, p, q) in &u {
            for j in 0..w2.dim() {
                let fj = CoeffVector::basis(j);
                for (n, k) in &keys {
                    let m = y.mode_lin(uv, &fj, n, *k);
                    if m.is_zero() {
                        continue;
                    }
                    let sign = if k % 2 == 1 { ExactScalar::int(-1) } else { ExactScalar::one() };
                    let big_n = (-&(p + n)).add_int(-2);
                    for (c, val) in m.components() {
                        out.add(ModeKey::new(i, c, big_n.clone(), q + k), &CoeffVector::scalar_at(j, val * &sign));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `𝒴_{[s₁,s₂,s₃]} = e^{2πi s₁L(0)} 𝒴(e^{2πi s₂L(0)}·, x) e^{2πi s₃L(0)}`.
pub fn shift(y: &IntertwinerTable, s: [i64; 3]) -> Result<IntertwinerTable, IntertwinerError> {
    let e = |m: &crate::mobius::Module, k: i64| m.e_a_l0(&(&ExactScalar::int(2 * k) * &ExactScalar::pi()));
    let (c, a, b) = (e(y.w3(), s[0])?, e(y.w1(), s[1])?, e(y.w2(), s[2])?);
    Ok(compose_homs(y, Some(&a), Some(&b), Some(&c)))
}
