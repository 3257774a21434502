//! Finite combinatorial identities and the exact matrices used for mode recovery.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::ExactMatrix;
use crate::scalars::{binom_int, ExactScalar, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombError(pub String);

impl fmt::Display for CombError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid argument: {}", self.0)
    }
}

impl core::error::Error for CombError {}

/// Sum over all `size`-element subsets of `items` of the product of the chosen items.
fn subset_product_sum(items: &[i64], size: usize) -> Rat {
    let n = items.len();
    if size > n {
        return Rat::zero();
    }
    let mut total = Rat::zero();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let mut p = Rat::one();
        for (i, &x) in items.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p = &p * &Rat::int(x);
            }
        }
        total += &p;
    }
    total
}

/// Visit every composition of `k` into `parts` positive integers.
fn for_each_composition(k: u32, parts: u32, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if parts == 0 {
        if k == 0 {
            f(prefix);
        }
        return;
    }
    for first in 1..=k.saturating_sub(parts - 1) {
        prefix.push(first);
        for_each_composition(k - first, parts - 1, prefix, f);
        prefix.pop();
    }
}

/// Both sides of `(j!/k!) Σ_{0<t₁<⋯<t_{k−j}<k} t₁⋯t_{k−j} = Σ_{i₁+⋯+i_j=k, i_s≥1} 1/(i₁⋯i_j)`.
pub fn comb_identity_sides(k: u32, j: u32) -> Result<(Rat, Rat), CombError> {
    if j > k {
        return Err(CombError(format!("j = {j} exceeds k = {k}")));
    }
    if k > 40 {
        return Err(CombError(format!("k = {k} is too large for exhaustive enumeration")));
    }
    let items: Vec<i64> = (1..k as i64).collect();
    let left = &(&Rat::factorial(j) / &Rat::factorial(k)) * &subset_product_sum(&items, (k - j) as usize);
    let mut right = Rat::zero();
    for_each_composition(k, j, &mut Vec::new(), &mut |c| {
        let p: u64 = c.iter().map(|&i| i as u64).product();
        right += &Rat::new(1, p as i64);
    });
    Ok((left, right))
}

fn reciprocal_product(w: &[u32]) -> Rat {
    Rat::new(1, w.iter().map(|&i| i as i64).product())
}

/// Visit every `j`-tuple with entries in `1..=n`.
fn for_each_tuple(n: u32, j: u32, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if j == 0 {
        f(prefix);
        return;
    }
    for w in 1..=n {
        prefix.push(w);
        for_each_tuple(n, j - 1, prefix, f);
        prefix.pop();
    }
}

/// Per-`k` sums `(k, Σ_{S_k} 1/Πw, Σ_{T_k} 1/Πw)` for `k = 1..=n`, where `S_k` holds the
/// `j`-tuples of positive integers summing to `k` and `T_k` the tuples of distinct positive
/// integers with maximum `k`.
pub fn lubell_refinement(n: u32, j: u32) -> Result<Vec<(u32, Rat, Rat)>, CombError> {
    if j == 0 {
        return Err(CombError(String::from("tuples must have length at least 1")));
    }
    if (n as u64).pow(j) > 5_000_000 {
        return Err(CombError(format!("N = {n}, j = {j} is too large for exhaustive enumeration")));
    }
    let mut s = vec![Rat::zero(); n as usize + 1];
    let mut t = vec![Rat::zero(); n as usize + 1];
    for_each_tuple(n, j, &mut Vec::new(), &mut |w| {
        let sum: u32 = w.iter().sum();
        if sum <= n {
            s[sum as usize] += &reciprocal_product(w);
        }
        let distinct = (0..w.len()).all(|a| (a + 1..w.len()).all(|b| w[a] != w[b]));
        if distinct {
            let max = *w.iter().max().unwrap();
            t[max as usize] += &reciprocal_product(w);
        }
    });
    Ok((1..=n).map(|k| (k, s[k as usize].clone(), t[k as usize].clone())).collect())
}

/// `(Σ_S 1/Πw, Σ_T 1/Πw)` with `S = {0 < Σw ≤ N}` and `T = {distinct, each w_i ≤ N}`.
pub fn lubell_sides(n: u32, j: u32) -> Result<(Rat, Rat), CombError> {
    let mut s = Rat::zero();
    let mut t = Rat::zero();
    for (_, sk, tk) in lubell_refinement(n, j)? {
        s += &sk;
        t += &tk;
    }
    Ok((s, t))
}

/// `P_K` with entries `C(j, i)` (0-based) and its inverse `(−1)^{i+j} C(j, i)`.
pub fn pascal_pair(k: usize) -> (ExactMatrix, ExactMatrix) {
    let p = ExactMatrix::from_fn(k, k, |i, j| ExactScalar::from_rat(binom_int(j as i64, i as u32)));
    let q = ExactMatrix::from_fn(k, k, |i, j| {
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        ExactScalar::from_rat(&binom_int(j as i64, i as u32) * &Rat::int(sign))
    });
    assert_eq!(&p * &q, ExactMatrix::identity(k), "Pascal inverse");
    (p, q)
}

/// Vandermonde matrix `V[p][t] = (2pΠ)^t`, `p, t = 0..=s`, and its exact inverse.
pub fn vandermonde_pair(s: usize) -> (ExactMatrix, ExactMatrix) {
    let two_pi = ExactScalar::pi().scale_rat(&Rat::int(2));
    let v = ExactMatrix::from_fn(s + 1, s + 1, |p, t| two_pi.scale_rat(&Rat::int(p as i64)).pow(t as u32));
    let inv = v.inverse().expect("Vandermonde matrix in distinct nodes is invertible");
    assert_eq!(&v * &inv, ExactMatrix::identity(s + 1), "Vandermonde inverse");
    (v, inv)
}

/// `t! / (i₁!⋯i_s!)`.
pub fn multinomial(parts: &[u32]) -> Rat {
    let t: u32 = parts.iter().sum();
    parts.iter().fold(Rat::factorial(t), |acc, &i| &acc / &Rat::factorial(i))
}

/// Visit every `s`-tuple of nonnegative integers summing to `t`.
pub fn for_each_weak_composition(t: u32, s: usize, f: &mut impl FnMut(&[u32])) {
    fn go(t: u32, s: usize, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if s == 1 {
            prefix.push(t);
            f(prefix);
            prefix.pop();
            return;
        }
        for i in 0..=t {
            prefix.push(i);
            go(t - i, s - 1, prefix, f);
            prefix.pop();
        }
    }
    if s == 0 {
        if t == 0 {
            f(&[]);
        }
        return;
    }
    go(t, s, &mut Vec::new(), f);
}

/// `Σ_{i₁+⋯+i_s=t} t!/(i₁!⋯i_s!) T₁^{i₁}⋯T_s^{i_s}` for pairwise commuting matrices.
pub fn multinomial_power(mats: &[ExactMatrix], t: u32) -> ExactMatrix {
    let n = mats.first().map_or(0, ExactMatrix::rows);
    let mut acc = ExactMatrix::zero(n, n);
    for_each_weak_composition(t, mats.len(), &mut |parts| {
        let mut term = ExactMatrix::identity(n);
        for (m, &i) in mats.iter().zip(parts) {
            term = &term * &m.pow(i);
        }
        acc = &acc + &term.scale_rat(&multinomial(parts));
    });
    acc
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use proptest::prelude::*;

    #[test]
    fn comb_small_cases() {
        assert_eq!(comb_identity_sides(3, 2).unwrap(), (Rat::one(), Rat::one()));
        assert_eq!(comb_identity_sides(2, 1).unwrap(), (Rat::new(1, 2), Rat::new(1, 2)));
        assert_eq!(comb_identity_sides(0, 0).unwrap(), (Rat::one(), Rat::one()));
        assert!(comb_identity_sides(2, 3).is_err());
    }

    #[test]
    fn comb_all_up_to_ten() {
        let mut cases = 0;
        for k in 0..=10 {
            for j in 0..=k {
                let (l, r) = comb_identity_sides(k, j).unwrap();
                assert_eq!(l, r, "k = {k}, j = {j}");
                cases += 1;
            }
        }
        assert_eq!(cases, 66);
    }

    #[test]
    fn comb_left_side_is_distinct_tuple_sum() {
        // LHS equals the T_k sum of the Lubell refinement
        for j in 1..=4 {
            for (k, sk, tk) in lubell_refinement(6, j).unwrap() {
                assert_eq!(sk, tk);
                if k >= j {
                    assert_eq!(comb_identity_sides(k, j).unwrap().0, tk, "k = {k}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn lubell_j2_n3() {
        // S: (1,1),(1,2),(2,1) → 1 + 1/2 + 1/2 = 2; T: (1,2),(2,1),(1,3),(3,1),(2,3),(3,2) → 2(1/2 + 1/3 + 1/6) = 2
        assert_eq!(lubell_sides(3, 2).unwrap(), (Rat::int(2), Rat::int(2)));
    }

    #[test]
    fn pascal_and_vandermonde() {
        for k in 1..=5 {
            let (p, q) = pascal_pair(k);
            assert_eq!(&q * &p, ExactMatrix::identity(k));
        }
        for s in 0..=4 {
            let (v, inv) = vandermonde_pair(s);
            assert_eq!(&inv * &v, ExactMatrix::identity(s + 1));
        }
    }

    proptest! {
        #[test]
        fn multinomial_expansion(d in proptest::collection::vec(proptest::collection::vec(-4i64..5, 3), 1..4), t in 0u32..5) {
            let mats: Vec<ExactMatrix> = d.iter().map(|row| {
                let diag: Vec<ExactScalar> = row.iter().map(|&x| ExactScalar::int(x)).collect();
                ExactMatrix::diagonal(&diag)
            }).collect();
            let sum = mats.iter().skip(1).fold(mats[0].clone(), |a, b| &a + b);
            prop_assert_eq!(multinomial_power(&mats, t), sum.pow(t));
        }
    }
}
