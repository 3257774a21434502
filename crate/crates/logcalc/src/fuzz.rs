//! Seeded random expressions for parse/print round trips.

use logcalc_core::suites::random_exponent;
use logcalc_core::{CoeffSpace, CoeffVector, ExactScalar, LogSeries, Monomial, Rat, Var};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::parse::parse_series;

fn pick(rng: &mut ChaCha8Rng, n: u32) -> u32 {
    rng.next_u32() % n
}

fn random_scalar(rng: &mut ChaCha8Rng) -> ExactScalar {
    let mut c = ExactScalar::zero();
    for _ in 0..1 + pick(rng, 3) {
        let num = pick(rng, 41) as i64 - 20;
        let den = 1 + pick(rng, 12) as i64;
        let mut atom = ExactScalar::from_rat(Rat::new(num, den));
        if pick(rng, 3) == 0 {
            let k = pick(rng, 48) as i64 - 24;
            atom = &atom * &ExactScalar::root_of_unity(&Rat::new(k, 12)).expect("lattice root of unity");
        }
        if pick(rng, 4) == 0 {
            let p = pick(rng, 5) as i64 - 2;
            atom = &atom * &ExactScalar::pi().pow_int(p).expect("Pi is a monomial");
        }
        c = &c + &atom;
    }
    c
}

/// A random series over variables `x`, `y`, `x1`, possibly vector- or matrix-valued and truncated.
pub fn random_series(rng: &mut ChaCha8Rng) -> LogSeries {
    let vars = [Var::new("x"), Var::new("y"), Var::new("x1")];
    let space = match pick(rng, 6) {
        0 => CoeffSpace::Vector(1 + pick(rng, 3) as usize),
        1 => CoeffSpace::Matrix(1 + pick(rng, 2) as usize),
        _ => CoeffSpace::Scalar,
    };
    let mut f = LogSeries::zero(space);
    for _ in 0..pick(rng, 6) {
        let mut m = Monomial::one();
        for v in &vars {
            if pick(rng, 2) == 0 {
                m = m.mul(&Monomial::power(v, random_exponent(rng), pick(rng, 4)));
            }
        }
        let mut c = CoeffVector::zero();
        for i in 0..space.dim() {
            if pick(rng, 3) != 0 || space == CoeffSpace::Scalar {
                c.set(i, random_scalar(rng));
            }
        }
        f.add_term(m, c);
    }
    if pick(rng, 4) == 0 {
        f = f.truncate(&vars[pick(rng, 3) as usize], pick(rng, 7) as i64 - 2);
    }
    f
}

/// First failure of `parse(print(f)) = f` over `cases` seeded series.
pub fn fuzz_roundtrip(cases: u32, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let f = random_series(&mut rng);
        let text = f.to_string();
        let back = parse_series(&text).map_err(|e| format!("case {case}: '{text}' does not parse: {e}"))?;
        // The zero series prints as `0` whatever its coefficient space.
        let same = back == f || (f.is_empty() && back.is_empty() && back.trunc() == f.trunc());
        if !same {
            return Err(format!("case {case}: '{text}' parses to '{back}'"));
        }
        if back.to_string() != text {
            return Err(format!("case {case}: '{text}' reprints as '{back}'"));
        }
    }
    Ok(())
}
