//! Schubert and double Schubert polynomials.
//!
//! `𝔖_w = ∂_{w⁻¹w₀}(x₁^{n-1}···x_{n-1})` and
//! `𝔖_w(x;y) = ∂_{w⁻¹w₀} Δ(x;y)` with `Δ(x;y) = ∏_{i+j≤n}(x_i − y_j)`,
//! the operators acting on x only.

use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::perm::Permutation;
use crate::poly::Poly;
use crate::rational::Rational;

/// `x₁^{n-1} x₂^{n-2} ··· x_{n-1}`.
pub fn staircase(n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let exps = (0..n).map(|i| (n - 1 - i) as u32).collect();
    Ok(Poly::monomial(n, exps, Rational::one()))
}

/// `Δ_w = ∏_{(i,j) ∈ inv(w)} (x_i − x_j)`.
pub fn delta_w(w: &Permutation) -> Poly {
    let n = w.n();
    w.inversions()
        .into_iter()
        .fold(Poly::one(n), |acc, (i, j)| &acc * &(&Poly::x(n, i) - &Poly::x(n, j)))
}

/// `Δ(x;y) = ∏_{i+j≤n} (x_i − y_j)`.
pub fn double_delta(n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let mut acc = Poly::one(n);
    for i in 1..n {
        for j in 1..=n - i {
            acc = &acc * &(&Poly::x(n, i) - &Poly::y(n, j));
        }
    }
    Ok(acc)
}

fn complement_of(w: &Permutation) -> Permutation {
    let w0 = Permutation::longest(w.n()).expect("rank is positive");
    w.inverse().compose(&w0).expect("same rank")
}

pub fn schubert_poly(w: &Permutation) -> Poly {
    staircase(w.n())
        .and_then(|s| s.demazure(&complement_of(w)))
        .expect("divided differences of a polynomial are exact")
}

pub fn double_schubert(w: &Permutation) -> Poly {
    double_delta(w.n())
        .and_then(|d| d.demazure(&complement_of(w)))
        .expect("divided differences of a polynomial are exact")
}

/// `Σ 𝔖_u(x) 𝔖_v(−y)` over `w = v⁻¹u` with `ℓ(w) = ℓ(u) + ℓ(v)`, built from
/// single Schubert polynomials only.
pub fn double_schubert_expansion(w: &Permutation) -> Poly {
    double_schubert_expansion_with(&SchubertBasis::new(w.n()), w)
}

fn double_schubert_expansion_with(basis: &SchubertBasis, w: &Permutation) -> Poly {
    let n = w.n();
    let mut acc = Poly::zero(n);
    for v in Permutation::all(n) {
        let u = v.compose(w).expect("same rank");
        if u.length() + v.length() == w.length() {
            acc += &(basis.get(&u) * &basis.get(&v).x_to_neg_y());
        }
    }
    acc
}

/// `𝔖_w(w′x; x)`: permute the x-block by `w′`, then set `y = x`.
pub fn specialization_check(w: &Permutation, w_prime: &Permutation) -> Result<Poly> {
    if w.n() != w_prime.n() {
        return Err(Error::RankMismatch { expected: w.n(), found: w_prime.n() });
    }
    if w_prime.length() > w.length() {
        return Err(Error::Precondition(format!(
            "ℓ({w_prime}) = {} exceeds ℓ({w}) = {}",
            w_prime.length(),
            w.length()
        )));
    }
    Ok(double_schubert(w).permute_x(w_prime)?.specialize_y_to_x())
}

/// The value `𝔖_w(w′x; x)` takes when `ℓ(w′) ≤ ℓ(w)`:
/// `(−1)^{ℓ(w)} δ_{w,w′} Δ_{w⁻¹}`.
///
/// With right-to-left composition and `x_i ↦ x_{w(i)}`, the diagonal value is
/// indexed by the inverse; equivalently it is `w·Δ_w`. For involutions this
/// coincides with `(−1)^{ℓ(w)} Δ_w`.
pub fn specialization_expected(w: &Permutation, w_prime: &Permutation) -> Poly {
    if w != w_prime {
        return Poly::zero(w.n());
    }
    signed_delta(w.length(), &delta_w(&w.inverse()))
}

/// `(−1)^{ℓ(w)} δ_{w,w′} Δ_w`, the diagonal indexed by `w` itself.
pub fn specialization_expected_direct(w: &Permutation, w_prime: &Permutation) -> Poly {
    if w != w_prime {
        return Poly::zero(w.n());
    }
    signed_delta(w.length(), &delta_w(w))
}

fn signed_delta(len: usize, delta: &Poly) -> Poly {
    if len % 2 == 0 {
        delta.clone()
    } else {
        -delta
    }
}

/// All partitions of `k` with at most `parts` parts, largest part first.
fn partitions(k: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        if prefix.len() == parts {
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, parts, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, parts, &mut Vec::new(), &mut out);
    out
}

/// Monomial symmetric polynomial `m_λ(x₁..xₙ)`.
fn monomial_symmetric(n: usize, lambda: &[u32]) -> Poly {
    let mut exps: Vec<u32> = lambda.to_vec();
    exps.resize(n, 0);
    exps.sort_unstable();
    let mut out = Poly::zero(n);
    // iterate distinct rearrangements via next-permutation
    loop {
        out += &Poly::monomial(n, exps.clone(), Rational::one());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| exps[i] < exps[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| exps[j] > exps[i]).unwrap();
        exps.swap(i, j);
        exps[i + 1..].reverse();
    }
    out
}

/// The Schubert polynomials of `Sₙ`, computed once.
#[derive(Clone, Debug)]
pub struct SchubertBasis {
    n: usize,
    polys: BTreeMap<Permutation, Poly>,
}

impl SchubertBasis {
    pub fn new(n: usize) -> Self {
        let polys = Permutation::all(n).into_iter().map(|w| {
            let p = schubert_poly(&w);
            (w, p)
        });
        Self { n, polys: polys.collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, w: &Permutation) -> &Poly {
        &self.polys[w]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &Poly)> {
        self.polys.iter()
    }

    /// Expresses `f = Σ_w c_w 𝔖_w` with every `c_w` symmetric.
    ///
    /// Each homogeneous component of degree `d` is solved as an exact linear
    /// system whose unknowns are the coordinates of `c_w` in the monomial
    /// symmetric basis of degree `d − ℓ(w)`.
    pub fn expand(&self, f: &Poly) -> Result<BTreeMap<Permutation, Poly>> {
        if f.rank() != self.n {
            return Err(Error::RankMismatch { expected: self.n, found: f.rank() });
        }
        if f.uses_y() {
            return Err(Error::Precondition("Schubert expansion needs an x-only polynomial".into()));
        }
        let mut out: BTreeMap<Permutation, Poly> = BTreeMap::new();
        for (d, part) in f.homogeneous_components() {
            for (w, c) in self.expand_homogeneous(d, &part)? {
                let slot = out.entry(w).or_insert_with(|| Poly::zero(self.n));
                *slot += &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn expand_homogeneous(&self, d: u32, f: &Poly) -> Result<Vec<(Permutation, Poly)>> {
        let n = self.n;
        let mut unknowns: Vec<(Permutation, Poly)> = Vec::new();
        let mut columns: Vec<Poly> = Vec::new();
        for (w, s) in &self.polys {
            let len = w.length() as u32;
            if len > d {
                continue;
            }
            for lambda in partitions(d - len, n) {
                let m = monomial_symmetric(n, &lambda);
                columns.push(&m * s);
                unknowns.push((w.clone(), m));
            }
        }

        let mut rows: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for p in columns.iter().chain(std::iter::once(f)) {
            for (exp, _) in p.terms() {
                let next = rows.len();
                rows.entry(exp.to_vec()).or_insert(next);
            }
        }
        let mut a = vec![vec![Rational::zero(); columns.len()]; rows.len()];
        for (col, p) in columns.iter().enumerate() {
            for (exp, c) in p.terms() {
                a[rows[exp]][col] = c.clone();
            }
        }
        let mut b = vec![Rational::zero(); rows.len()];
        for (exp, c) in f.terms() {
            b[rows[exp]] = c.clone();
        }

        let solution = linalg::solve_unique(a, b)?;
        let mut coeffs: BTreeMap<Permutation, Poly> = BTreeMap::new();
        for ((w, m), alpha) in unknowns.into_iter().zip(solution) {
            if alpha.is_zero() {
                continue;
            }
            *coeffs.entry(w).or_insert_with(|| Poly::zero(n)) += &m.scale(&alpha);
        }
        Ok(coeffs.into_iter().collect())
    }

    /// `Σ_w c_w 𝔖_w`.
    pub fn recombine(&self, coeffs: &BTreeMap<Permutation, Poly>) -> Poly {
        let mut acc = Poly::zero(self.n);
        for (w, c) in coeffs {
            acc += &(c * self.get(w));
        }
        acc
    }
}

pub fn expand_in_schubert_basis(f: &Poly) -> Result<BTreeMap<Permutation, Poly>> {
    SchubertBasis::new(f.rank()).expand(f)
}

#[derive(Serialize)]
struct ExpansionEntry<'a> {
    w: &'a Permutation,
    poly: &'a Poly,
}

#[derive(Serialize)]
struct ExpansionJson<'a> {
    coeffs: Vec<ExpansionEntry<'a>>,
}

/// `{"coeffs": [{"w": [..], "poly": {..}}, ..]}` in enumeration order.
pub fn expansion_to_json(coeffs: &BTreeMap<Permutation, Poly>) -> serde_json::Value {
    let doc = ExpansionJson { coeffs: coeffs.iter().map(|(w, poly)| ExpansionEntry { w, poly }).collect() };
    serde_json::to_value(doc).expect("expansion serializes")
}

/// Sweep over `Sₙ` checking the double Schubert expansion identity;
/// returns the permutations where it fails.
pub fn expansion_mismatches(n: usize) -> Vec<Permutation> {
    let basis = SchubertBasis::new(n);
    Permutation::all(n)
        .into_iter()
        .filter(|w| double_schubert(w) != double_schubert_expansion_with(&basis, w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(word: &[usize]) -> Permutation {
        Permutation::new(word.to_vec()).unwrap()
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::x(n, i)
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(staircase(1).unwrap(), Poly::one(1));
        assert_eq!(staircase(2).unwrap(), x(2, 1));
        assert_eq!(staircase(4).unwrap(), &(&x(4, 1).pow(3) * &x(4, 2).pow(2)) * &x(4, 3));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_w(&Permutation::identity(3)), Poly::one(3));
        assert_eq!(delta_w(&p(&[2, 1])), &x(2, 1) - &x(2, 2));
        let vandermonde = &(&(&x(3, 1) - &x(3, 2)) * &(&x(3, 1) - &x(3, 3))) * &(&x(3, 2) - &x(3, 3));
        assert_eq!(delta_w(&p(&[3, 2, 1])), vandermonde);
    }

    #[test]
    fn schubert_examples() {
        for n in 1..=4 {
            assert_eq!(schubert_poly(&Permutation::identity(n)), Poly::one(n));
        }
        assert_eq!(schubert_poly(&p(&[2, 1])), x(2, 1));
        assert_eq!(schubert_poly(&p(&[1, 3, 2])), &x(3, 1) + &x(3, 2));
        assert_eq!(schubert_poly(&p(&[2, 3, 1])), &x(3, 1) * &x(3, 2));
        assert_eq!(schubert_poly(&p(&[3, 1, 2])), x(3, 1).pow(2));
    }

    #[test]
    fn schubert_structure() {
        for n in 1..=4 {
            let w0 = Permutation::longest(n).unwrap();
            assert_eq!(schubert_poly(&w0), staircase(n).unwrap());
            for w in Permutation::all(n) {
                let s = schubert_poly(&w);
                assert!(s.is_homogeneous());
                assert_eq!(s.total_degree(), Some(w.length() as u32));
                assert!(s.is_integral() && s.is_nonnegative(), "{w}: {s}");
            }
        }
    }

    #[test]
    fn double_delta_examples() {
        assert_eq!(double_delta(1).unwrap(), Poly::one(1));
        assert_eq!(double_delta(2).unwrap(), &x(2, 1) - &Poly::y(2, 1));
        let want = &(&(&x(3, 1) - &Poly::y(3, 1)) * &(&x(3, 1) - &Poly::y(3, 2))) * &(&x(3, 2) - &Poly::y(3, 1));
        assert_eq!(double_delta(3).unwrap(), want);
        assert_eq!(double_delta(4).unwrap().total_degree(), Some(6));
    }

    #[test]
    fn double_schubert_examples() {
        assert_eq!(double_schubert(&p(&[2, 1])), &x(2, 1) - &Poly::y(2, 1));
        for n in 1..=4 {
            assert_eq!(double_schubert(&Permutation::identity(n)), Poly::one(n));
            let w0 = Permutation::longest(n).unwrap();
            assert_eq!(double_schubert(&w0), double_delta(n).unwrap());
        }
    }

    #[test]
    fn double_schubert_at_y_zero() {
        for w in Permutation::all(4) {
            assert_eq!(double_schubert(&w).set_y_zero(), schubert_poly(&w), "{w}");
        }
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(double_schubert_expansion(&Permutation::identity(3)), Poly::one(3));
        assert_eq!(double_schubert_expansion(&p(&[2, 1])), &x(2, 1) - &Poly::y(2, 1));
        assert!(expansion_mismatches(3).is_empty());
    }

    #[test]
    fn specialization_examples() {
        let e2 = Permutation::identity(2);
        let s1 = p(&[2, 1]);
        assert_eq!(specialization_check(&e2, &e2).unwrap(), Poly::one(2));
        assert!(specialization_check(&s1, &e2).unwrap().is_zero());
        assert_eq!(specialization_check(&s1, &s1).unwrap(), &x(2, 2) - &x(2, 1));
        assert!(matches!(specialization_check(&e2, &s1), Err(Error::Precondition(_))));
    }

    #[test]
    fn specialization_y_equals_x() {
        for u in Permutation::all(3) {
            let v = double_schubert(&u).specialize_y_to_x();
            assert_eq!(v, if u.is_identity() { Poly::one(3) } else { Poly::zero(3) });
        }
    }

    #[test]
    fn diagonal_value_is_indexed_by_inverse() {
        // [2,3,1] is not an involution: the two readings differ
        let w = p(&[2, 3, 1]);
        let got = specialization_check(&w, &w).unwrap();
        assert_eq!(got, specialization_expected(&w, &w));
        assert_ne!(got, specialization_expected_direct(&w, &w));
        assert_eq!(got, delta_w(&w).permute_x(&w).unwrap());
    }

    #[test]
    fn partitions_small() {
        assert_eq!(partitions(0, 3), vec![Vec::<u32>::new()]);
        assert_eq!(partitions(4, 2), vec![vec![4], vec![3, 1], vec![2, 2]]);
        assert_eq!(partitions(3, 3).len(), 3);
    }

    #[test]
    fn monomial_symmetric_small() {
        let m = monomial_symmetric(3, &[2, 1]);
        assert_eq!(m.len(), 6);
        assert!(m.is_symmetric());
        assert_eq!(monomial_symmetric(2, &[]), Poly::one(2));
    }

    #[test]
    fn expand_examples() {
        let e = Permutation::identity(2);
        let s1 = p(&[2, 1]);

        let one = expand_in_schubert_basis(&Poly::one(2)).unwrap();
        assert_eq!(one, BTreeMap::from([(e.clone(), Poly::one(2))]));

        let got = expand_in_schubert_basis(&x(2, 2)).unwrap();
        let want = BTreeMap::from([(e.clone(), &x(2, 1) + &x(2, 2)), (s1.clone(), Poly::integer(2, -1))]);
        assert_eq!(got, want);

        let got = expand_in_schubert_basis(&x(2, 1).pow(2)).unwrap();
        let want = BTreeMap::from([(e, -(&x(2, 1) * &x(2, 2))), (s1, &x(2, 1) + &x(2, 2))]);
        assert_eq!(got, want);
    }

    #[test]
    fn expand_rejects_y() {
        assert!(expand_in_schubert_basis(&Poly::y(2, 1)).is_err());
    }

    #[test]
    fn expand_round_trip_inhomogeneous() {
        let basis = SchubertBasis::new(3);
        let f = &(&x(3, 3).pow(4) - &x(3, 2).scale(&int(7))) + &Poly::integer(3, 2);
        let coeffs = basis.expand(&f).unwrap();
        assert!(coeffs.values().all(Poly::is_symmetric));
        assert_eq!(basis.recombine(&coeffs), f);
    }

    #[test]
    fn expansion_json_shape() {
        let coeffs = expand_in_schubert_basis(&x(2, 1)).unwrap();
        let json = expansion_to_json(&coeffs);
        assert_eq!(json["coeffs"][0]["w"], serde_json::json!([2, 1]));
        assert_eq!(json["coeffs"][0]["poly"]["nvars"], 4);
    }
}
