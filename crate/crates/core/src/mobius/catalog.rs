//! Small modules used by examples, tests and the seeded check suites.

use alloc::format;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{GradedSpace, Module, Sl2Action};
use crate::matrix::ExactMatrix;
use crate::scalars::{ExactScalar, Exponent, Rat};

fn build(name: &str, weights: Vec<Exponent>, lm1: ExactMatrix, l0: ExactMatrix, l1: ExactMatrix) -> Module {
    Module::new(GradedSpace::new(name, weights), Sl2Action { lm1, l0, l1 }).expect("catalog modules are valid")
}

/// One-dimensional module of weight 0 with all `L(j) = 0`.
pub fn trivial(name: &str) -> Module {
    let z = ExactMatrix::zero(1, 1);
    build(name, alloc::vec![Exponent::zero()], z.clone(), z.clone(), z)
}

/// Single Jordan block of `L(0)` with eigenvalue `h`, `L(±1) = 0`; `N e_{i+1} = e_i`.
pub fn jordan_block(name: &str, h: Exponent, size: usize) -> Module {
    let hs = h.to_scalar();
    let l0 = ExactMatrix::from_fn(size, size, |r, c| {
        if r == c {
            hs.clone()
        } else if c == r + 1 {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    });
    let z = ExactMatrix::zero(size, size);
    build(name, alloc::vec![h; size], z.clone(), l0, z)
}

/// Irreducible `sl(2)`-module of dimension `d`, weights `−(d−1)/2, …, (d−1)/2`.
pub fn sl2_irrep(name: &str, d: usize) -> Module {
    let w: Vec<Rat> = (0..d).map(|i| Rat::new(2 * i as i64 - (d as i64 - 1), 2)).collect();
    let mut c = alloc::vec![Rat::zero(); d];
    for i in 1..d {
        c[i] = &c[i - 1] + &(&w[i - 1] * &Rat::int(2));
    }
    let lm1 = ExactMatrix::from_fn(d, d, |r, col| if r == col + 1 { ExactScalar::one() } else { ExactScalar::zero() });
    let l1 = ExactMatrix::from_fn(d, d, |r, col| if col == r + 1 { ExactScalar::from_rat(c[col].clone()) } else { ExactScalar::zero() });
    let l0 = ExactMatrix::diagonal(&w.iter().cloned().map(ExactScalar::from_rat).collect::<Vec<_>>());
    build(name, w.into_iter().map(|r| Exponent::real(r).expect("half-integers")).collect(), lm1, l0, l1)
}

fn block_sum(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let (n, m) = (a.rows(), b.rows());
    ExactMatrix::from_fn(n + m, n + m, |r, c| {
        if r < n && c < n {
            a.get(r, c).clone()
        } else if r >= n && c >= n {
            b.get(r - n, c - n).clone()
        } else {
            ExactScalar::zero()
        }
    })
}

pub fn direct_sum(name: &str, a: &Module, b: &Module) -> Module {
    let mut weights = a.weights().to_vec();
    weights.extend_from_slice(b.weights());
    build(name, weights, block_sum(a.l(-1), b.l(-1)), block_sum(a.l(0), b.l(0)), block_sum(a.l(1), b.l(1)))
}

/// Conjugate the action by an invertible `P` that preserves every weight space.
pub fn change_basis(name: &str, m: &Module, p: &ExactMatrix) -> Module {
    let pinv = p.inverse().expect("invertible change of basis");
    let conj = |x: &ExactMatrix| &(&pinv * x) * p;
    build(name, m.weights().to_vec(), conj(m.l(-1)), conj(m.l(0)), conj(m.l(1)))
}

fn small(rng: &mut ChaCha8Rng, span: u32) -> i64 {
    (rng.next_u32() % (2 * span + 1)) as i64 - span as i64
}

/// Unipotent upper-triangular change of basis inside each weight space.
fn random_weight_preserving(rng: &mut ChaCha8Rng, weights: &[Exponent]) -> ExactMatrix {
    let n = weights.len();
    ExactMatrix::from_fn(n, n, |r, c| {
        if r == c {
            ExactScalar::one()
        } else if r < c && weights[r] == weights[c] {
            ExactScalar::int(small(rng, 2))
        } else {
            ExactScalar::zero()
        }
    })
}

/// Seeded module of dimension ≤ 4 satisfying the full `sl(2)` relations.
pub fn random_sl2_module(seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d1 = 1 + (rng.next_u32() % 3) as usize;
    let d2 = (rng.next_u32() % (5 - d1 as u32)) as usize;
    let a = sl2_irrep("A", d1);
    let base = if d2 == 0 { a } else { direct_sum("A+B", &a, &sl2_irrep("B", d2)) };
    let p = random_weight_preserving(&mut rng, base.weights());
    change_basis(&format!("sl2[{seed}]"), &base, &p)
}

/// Seeded module of dimension ≤ 4 whose `L(0)` has a nontrivial Jordan block.
pub fn random_jordan_module(seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = Exponent::frac(small(&mut rng, 12), 12).expect("lattice");
    let size = 2 + (rng.next_u32() % 2) as usize;
    let block = jordan_block("J", h.clone(), size);
    let base = if size == 2 && rng.next_u32() % 2 == 0 {
        let h2 = Exponent::frac(small(&mut rng, 12), 12).expect("lattice");
        direct_sum("J+J", &block, &jordan_block("J2", h2, 2))
    } else {
        block
    };
    let p = random_weight_preserving(&mut rng, base.weights());
    change_basis(&format!("jordan[{seed}]"), &base, &p)
}
