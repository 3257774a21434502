use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::ScalarError;

pub const DEFAULT_LATTICE: u32 = 12;

/// Exponent lattice `(1/L)ℤ` together with the reduction data for `ℚ(ζ_{2L})`.
#[derive(Debug)]
pub struct Lattice {
    l: u32,
    order: usize,
    phi: usize,
    /// `ζ^k` reduced modulo the cyclotomic polynomial, for `k < powers.len()`.
    powers: Vec<Vec<i64>>,
}

static LATTICE: OnceBox<Lattice> = OnceBox::new();

/// Fixes `L` for the process. Succeeds if nothing has been computed yet or `L` is unchanged.
pub fn configure_lattice(l: u32) -> Result<(), ScalarError> {
    if l == 0 || !l.is_multiple_of(2) {
        return Err(ScalarError::LatticeConfig(l));
    }
    let got = LATTICE.get_or_init(|| Box::new(Lattice::build(l)));
    if got.l == l {
        Ok(())
    } else {
        Err(ScalarError::LatticeConfig(l))
    }
}

pub fn lattice() -> &'static Lattice {
    LATTICE.get_or_init(|| Box::new(Lattice::build(DEFAULT_LATTICE)))
}

impl Lattice {
    fn build(l: u32) -> Self {
        let order = 2 * l as usize;
        let phi_poly = cyclotomic_poly(order);
        let phi = phi_poly.len() - 1;
        let count = core::cmp::max(order, 2 * phi);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by ζ and reduce by the monic Φ
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= top * phi_poly[i];
                }
            }
        }
        Lattice { l, order, phi, powers }
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Order `2L` of the primitive root `ζ`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Degree of `ℚ(ζ)` over `ℚ`.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub(crate) fn power(&self, k: usize) -> &[i64] {
        &self.powers[k]
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}
