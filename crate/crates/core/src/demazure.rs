//! Relations among divided-difference operators, checked on seeded samples.

use serde::Serialize;

use crate::cert::Certificate;
use crate::perm::Permutation;
use crate::poly::Poly;
use crate::sample;

#[derive(Clone, Debug, Serialize)]
pub struct DemazureViolation {
    pub relation: String,
    pub input: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemazureCertificate {
    pub check: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: usize,
    pub violations: Vec<DemazureViolation>,
}

impl Certificate for DemazureCertificate {
    fn check(&self) -> &str {
        &self.check
    }

    fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// Checks `∂_j² = 0`, the braid and commutation relations, the twisted
/// Leibniz rule and reduced-word independence of `∂_w` for all `w ∈ Sₙ`, on
/// `trials` random polynomials of degree at most 6.
pub fn verify_demazure_algebra(n: usize, trials: usize, seed: u64) -> DemazureCertificate {
    let mut rng = sample::seeded(seed);
    let samples: Vec<Poly> = (0..trials).map(|_| sample::random_poly(&mut rng, n, 6, 6)).collect();
    let perms = Permutation::all(n);
    let mut checks = 0;
    let mut violations = Vec::new();
    let mut record = |ok: bool, relation: String, input: &Poly| {
        if !ok {
            violations.push(DemazureViolation { relation, input: input.clone() });
        }
    };
    let dd = |f: &Poly, j: usize| f.divided_difference(j).expect("index in range");

    for (k, f) in samples.iter().enumerate() {
        let g = &samples[(k + 1) % samples.len()];
        for j in 1..n {
            checks += 1;
            record(dd(&dd(f, j), j).is_zero(), format!("d{j}^2 = 0"), f);

            checks += 1;
            let sf = f.permute_x(&Permutation::simple(n, j).unwrap()).unwrap();
            let lhs = dd(&(f * g), j);
            let rhs = &(&dd(f, j) * g) + &(&sf * &dd(g, j));
            record(lhs == rhs, format!("twisted Leibniz at {j}"), f);

            if j + 1 < n {
                checks += 1;
                let left = dd(&dd(&dd(f, j), j + 1), j);
                let right = dd(&dd(&dd(f, j + 1), j), j + 1);
                record(left == right, format!("braid d{j}d{}d{j}", j + 1), f);
            }
            for i in j + 2..n {
                checks += 1;
                record(dd(&dd(f, i), j) == dd(&dd(f, j), i), format!("d{i}d{j} = d{j}d{i}"), f);
            }
        }
        for w in &perms {
            let canonical = f.demazure(w).expect("rank matches");
            for word in w.reduced_words().iter().skip(1) {
                checks += 1;
                let other = f.demazure_along(w, word).expect("reduced word");
                record(other == canonical, format!("reduced-word independence for {w} via {word:?}"), f);
            }
        }
    }

    DemazureCertificate { check: "demazure-algebra".into(), n, trials, seed, checks, violations }
}
