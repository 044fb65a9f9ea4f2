//! Seeded pseudorandom inputs for verification sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kclass::LatticeVector;
use crate::poly::Poly;
use crate::rational::int;

pub type SweepRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An x-only polynomial with up to `max_terms` terms of total degree at most
/// `max_degree` and integer coefficients in `[-5, 5]`.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, max_degree: u32, max_terms: usize) -> Poly {
    let mut acc = Poly::zero(n);
    let terms = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; n];
        for _ in 0..degree {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c: i64 = rng.gen_range(-5..=5);
            if c != 0 {
                break c;
            }
        };
        acc += &Poly::monomial(n, exps, int(c));
    }
    acc
}

/// Lattice vector with every component uniform in `[-bound, bound]`.
pub fn random_lattice_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> LatticeVector {
    let comps = (0..1usize << n).map(|_| int(rng.gen_range(-bound..=bound))).collect();
    LatticeVector::from_components(n, comps).expect("length is 2^n")
}
