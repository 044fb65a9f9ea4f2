//! The bimodule `R ⊗_{R^{Sₙ}} R` and its length filtration.
//!
//! Elements are stored in left-module coordinates over the basis
//! `{1 ⊗ 𝔖_u}`; a general tensor `f ⊗ g` is reduced by expanding `g` in the
//! Schubert basis and moving the symmetric coefficients across the tensor.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::Poly;
use crate::schubert::{delta_w, SchubertBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleElement {
    n: usize,
    coords: BTreeMap<Permutation, Poly>,
}

impl BimoduleElement {
    pub fn zero(n: usize) -> Self {
        Self { n, coords: BTreeMap::new() }
    }

    /// `1 ⊗ 𝔖_u`.
    pub fn basis(u: &Permutation) -> Self {
        Self { n: u.n(), coords: BTreeMap::from([(u.clone(), Poly::one(u.n()))]) }
    }

    pub fn from_coords(n: usize, coords: BTreeMap<Permutation, Poly>) -> Result<Self> {
        for (u, c) in &coords {
            if u.n() != n || c.rank() != n {
                return Err(Error::RankMismatch { expected: n, found: if u.n() != n { u.n() } else { c.rank() } });
            }
            if c.uses_y() {
                return Err(Error::Precondition("bimodule coordinates must be x-only".into()));
            }
        }
        let mut coords = coords;
        coords.retain(|_, c| !c.is_zero());
        Ok(Self { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &BTreeMap<Permutation, Poly> {
        &self.coords
    }

    pub fn coord(&self, u: &Permutation) -> Poly {
        self.coords.get(u).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn accumulate(&mut self, u: &Permutation, p: &Poly) {
        let slot = self.coords.entry(u.clone()).or_insert_with(|| Poly::zero(self.n));
        *slot += p;
        if slot.is_zero() {
            self.coords.remove(u);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (u, p) in &other.coords {
            out.accumulate(u, p);
        }
        out
    }

    /// `f · elem`.
    pub fn left_multiply(&self, f: &Poly) -> Self {
        let mut out = Self::zero(self.n);
        for (u, p) in &self.coords {
            out.accumulate(u, &(f * p));
        }
        out
    }
}

impl Serialize for BimoduleElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            u: &'a Permutation,
            poly: &'a Poly,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            n: usize,
            coords: Vec<Entry<'a>>,
        }
        Doc { n: self.n, coords: self.coords.iter().map(|(u, poly)| Entry { u, poly }).collect() }.serialize(s)
    }
}

/// Result of expressing an element over the `{S_w}` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// Coordinates over `{S_w}`; zero entries omitted.
    pub witness: BTreeMap<Permutation, Poly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisMatrix {
    /// Row and column order: length, then lexicographic.
    pub order: Vec<Permutation>,
    /// `entries[r][c]` is the coordinate of `S_{order[r]}` at `1 ⊗ 𝔖_{order[c]}`.
    pub entries: Vec<Vec<Poly>>,
}

/// Computation context for `R ⊗_{R^{Sₙ}} R`, caching the Schubert basis.
#[derive(Clone, Debug)]
pub struct Bimodule {
    basis: SchubertBasis,
}

impl Bimodule {
    pub fn new(n: usize) -> Self {
        Self { basis: SchubertBasis::new(n) }
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn schubert(&self) -> &SchubertBasis {
        &self.basis
    }

    fn check_rank(&self, found: usize) -> Result<()> {
        if found != self.n() {
            return Err(Error::RankMismatch { expected: self.n(), found });
        }
        Ok(())
    }

    /// `S_w = 1⊗𝔖_w + Σ 𝔖_v(−x) ⊗ 𝔖_u` over `w = v⁻¹u`, `ℓ(w) = ℓ(v) + ℓ(u)`,
    /// `ℓ(u) < ℓ(w)`.
    pub fn s_element(&self, w: &Permutation) -> BimoduleElement {
        let n = self.n();
        let w_inv = w.inverse();
        let mut out = BimoduleElement::basis(w);
        for (u, _) in self.basis.iter() {
            if u.length() >= w.length() {
                continue;
            }
            let v = u.compose(&w_inv).expect("same rank");
            if v.length() + u.length() == w.length() {
                out.accumulate(u, &self.basis.get(&v).negate_x());
            }
        }
        debug_assert_eq!(out.n(), n);
        out
    }

    /// `f ⊗ g` in left-basis coordinates.
    pub fn tensor(&self, f: &Poly, g: &Poly) -> Result<BimoduleElement> {
        self.check_rank(f.rank())?;
        let coeffs = self.basis.expand(g)?;
        let mut out = BimoduleElement::zero(self.n());
        for (t, c) in coeffs {
            out.accumulate(&t, &(f * &c));
        }
        Ok(out)
    }

    /// `F_w(f ⊗ g) = g(x_{w(1)}, .., x_{w(n)}) · f`.
    pub fn f_map(&self, w: &Permutation, elem: &BimoduleElement) -> Result<Poly> {
        self.check_rank(w.n())?;
        self.check_rank(elem.n())?;
        let mut acc = Poly::zero(self.n());
        for (u, c) in &elem.coords {
            acc += &(c * &self.basis.get(u).permute_x(w)?);
        }
        Ok(acc)
    }

    pub fn change_of_basis_matrix(&self) -> BasisMatrix {
        let order: Vec<Permutation> = self.basis.iter().map(|(w, _)| w.clone()).collect();
        let entries = order
            .iter()
            .map(|w| {
                let s = self.s_element(w);
                order.iter().map(|u| s.coord(u)).collect()
            })
            .collect();
        BasisMatrix { order, entries }
    }

    /// `elem · g` for an x-only `g`.
    pub fn right_multiply(&self, elem: &BimoduleElement, g: &Poly) -> Result<BimoduleElement> {
        self.check_rank(elem.n())?;
        self.check_rank(g.rank())?;
        let mut out = BimoduleElement::zero(self.n());
        for (u, p) in &elem.coords {
            let product = self.basis.get(u) * g;
            for (t, c) in self.basis.expand(&product)? {
                out.accumulate(&t, &(p * &c));
            }
        }
        Ok(out)
    }

    /// Solves the length-unitriangular system `elem = Σ a_w S_w` and tests
    /// whether `a_w = 0` whenever `ℓ(w) < j`.
    pub fn membership_in_gamma(&self, elem: &BimoduleElement, j: usize) -> Membership {
        let elements: BTreeMap<Permutation, BimoduleElement> =
            self.basis.iter().map(|(w, _)| (w.clone(), self.s_element(w))).collect();
        let mut witness: BTreeMap<Permutation, Poly> = BTreeMap::new();
        // decreasing length; inside a length class the block is the identity
        for (u, _) in self.basis.iter().collect::<Vec<_>>().into_iter().rev() {
            let mut a = elem.coord(u);
            for (w, coeff) in &witness {
                if w.length() > u.length() {
                    a -= &(coeff * &elements[w].coord(u));
                }
            }
            if !a.is_zero() {
                witness.insert(u.clone(), a);
            }
        }
        let member = witness.keys().all(|w| w.length() >= j);
        Membership { member, witness }
    }
}

/// Which polynomial the diagonal of the filtration identity is compared to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Diagonal {
    /// `(−1)^{ℓ(w)} Δ_{w⁻¹}`, i.e. `w·Δ_w`: the value under these conventions.
    InverseIndexed,
    /// `(−1)^{ℓ(w)} Δ_w`.
    Direct,
}

impl Diagonal {
    pub fn value(self, w: &Permutation) -> Poly {
        let delta = match self {
            Diagonal::InverseIndexed => delta_w(&w.inverse()),
            Diagonal::Direct => delta_w(w),
        };
        if w.length() % 2 == 0 {
            delta
        } else {
            -delta
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairViolation {
    pub w: Permutation,
    pub w_prime: Permutation,
    pub got: Poly,
    pub expected: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationCertificate {
    pub check: String,
    pub n: usize,
    pub diagonal: Diagonal,
    pub pairs: usize,
    pub violations: Vec<PairViolation>,
}

impl Certificate for FiltrationCertificate {
    fn check(&self) -> &str {
        &self.check
    }

    fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// `F_w(S_{w′}) = (−1)^{ℓ(w)} δ_{w,w′} Δ_{w⁻¹}` for all `ℓ(w′) ≥ ℓ(w)`.
pub fn verify_filtration_identity(n: usize) -> FiltrationCertificate {
    verify_filtration_identity_with(n, Diagonal::InverseIndexed)
}

pub fn verify_filtration_identity_with(n: usize, diagonal: Diagonal) -> FiltrationCertificate {
    let ctx = Bimodule::new(n);
    let perms = Permutation::all(n);
    let s_elements: Vec<BimoduleElement> = perms.iter().map(|w| ctx.s_element(w)).collect();
    let mut pairs = 0;
    let mut violations = Vec::new();
    for w in &perms {
        for (w_prime, s) in perms.iter().zip(&s_elements) {
            if w_prime.length() < w.length() {
                continue;
            }
            pairs += 1;
            let got = ctx.f_map(w, s).expect("ranks agree");
            let expected = if w == w_prime { diagonal.value(w) } else { Poly::zero(n) };
            if got != expected {
                violations.push(PairViolation { w: w.clone(), w_prime: w_prime.clone(), got, expected });
            }
        }
    }
    FiltrationCertificate { check: "filtration-identity".into(), n, diagonal, pairs, violations }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryViolation {
    pub row: Permutation,
    pub col: Permutation,
    pub entry: Poly,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitriangularCertificate {
    pub check: String,
    pub n: usize,
    pub entries: usize,
    pub violations: Vec<EntryViolation>,
}

impl Certificate for UnitriangularCertificate {
    fn check(&self) -> &str {
        &self.check
    }

    fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// Unit diagonal, and zero wherever the column is not strictly shorter.
pub fn verify_unitriangularity(n: usize) -> UnitriangularCertificate {
    let m = Bimodule::new(n).change_of_basis_matrix();
    let mut violations = Vec::new();
    for (r, row) in m.order.iter().enumerate() {
        for (c, col) in m.order.iter().enumerate() {
            let entry = &m.entries[r][c];
            let reason = if r == c {
                (*entry != Poly::one(n)).then_some("diagonal entry is not 1")
            } else if col.length() >= row.length() {
                (!entry.is_zero()).then_some("nonzero entry outside the strictly-shorter block")
            } else {
                None
            };
            if let Some(reason) = reason {
                violations.push(EntryViolation {
                    row: row.clone(),
                    col: col.clone(),
                    entry: entry.clone(),
                    reason: reason.into(),
                });
            }
        }
    }
    UnitriangularCertificate { check: "unitriangularity".into(), n, entries: m.order.len().pow(2), violations }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureViolation {
    pub generator: Permutation,
    pub variable: usize,
    pub witness: Vec<(Permutation, Poly)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureCertificate {
    pub check: String,
    pub n: usize,
    pub j: usize,
    pub products: usize,
    pub violations: Vec<ClosureViolation>,
}

impl Certificate for ClosureCertificate {
    fn check(&self) -> &str {
        &self.check
    }

    fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// `S_w · x_k ∈ Γ_j` for every generator `S_w` of `Γ_j` and every `k`.
pub fn verify_bimodule_closure(n: usize, j: usize) -> ClosureCertificate {
    let ctx = Bimodule::new(n);
    let mut products = 0;
    let mut violations = Vec::new();
    for w in Permutation::all(n).into_iter().filter(|w| w.length() >= j) {
        let s = ctx.s_element(&w);
        for k in 1..=n {
            products += 1;
            let product = ctx.right_multiply(&s, &Poly::x(n, k)).expect("ranks agree");
            let m = ctx.membership_in_gamma(&product, j);
            if !m.member {
                violations.push(ClosureViolation { generator: w.clone(), variable: k, witness: m.witness.into_iter().collect() });
            }
        }
    }
    ClosureCertificate { check: "bimodule-closure".into(), n, j, products, violations }
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityCertificate {
    pub check: String,
    pub n: usize,
    pub j: usize,
    pub size: usize,
    pub determinant: Poly,
    /// `±1` relating the determinant to `∏_{ℓ(w)<j} Δ_w`, or `0` if neither sign matches.
    pub sign: i8,
    pub violations: Vec<String>,
}

impl Certificate for InjectivityCertificate {
    fn check(&self) -> &str {
        &self.check
    }

    fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// Determinant by the Leibniz formula, skipping zero products.
fn leibniz_det(m: &[Vec<Poly>], n: usize) -> Poly {
    fn go(m: &[Vec<Poly>], row: usize, used: &mut Vec<bool>, sign: bool, acc: Poly, out: &mut Poly) {
        if row == m.len() {
            *out += &(if sign { -acc } else { acc });
            return;
        }
        // sign flips by the number of used columns to the right of c
        for c in 0..m.len() {
            if used[c] || m[row][c].is_zero() {
                continue;
            }
            let inversions = used[c + 1..].iter().filter(|&&u| u).count();
            used[c] = true;
            go(m, row + 1, used, sign ^ (inversions % 2 == 1), &acc * &m[row][c], out);
            used[c] = false;
        }
    }
    let mut out = Poly::zero(n);
    go(m, 0, &mut vec![false; m.len()], false, Poly::one(n), &mut out);
    out
}

/// The matrix `(F_w(S_{w′}))` over `ℓ(w), ℓ(w′) < j`, ordered by decreasing
/// length, must be triangular with determinant `±∏ Δ_w`.
pub fn verify_triangular_injectivity(n: usize, j: usize) -> InjectivityCertificate {
    let ctx = Bimodule::new(n);
    let mut order: Vec<Permutation> = Permutation::all(n).into_iter().filter(|w| w.length() < j).collect();
    order.reverse();
    let s_elements: Vec<BimoduleElement> = order.iter().map(|w| ctx.s_element(w)).collect();
    let matrix: Vec<Vec<Poly>> = order
        .iter()
        .map(|w| s_elements.iter().map(|s| ctx.f_map(w, s).expect("ranks agree")).collect())
        .collect();

    let mut violations = Vec::new();
    for (r, w) in order.iter().enumerate() {
        for (c, w_prime) in order.iter().enumerate() {
            if r != c && w_prime.length() >= w.length() && !matrix[r][c].is_zero() {
                violations.push(format!("entry ({w}, {w_prime}) breaks triangularity"));
            }
        }
    }

    let determinant = leibniz_det(&matrix, n);
    let product = order.iter().fold(Poly::one(n), |acc, w| &acc * &delta_w(w));
    let sign = if determinant == product {
        1
    } else if determinant == -&product {
        -1
    } else {
        0
    };
    if sign == 0 {
        violations.push("determinant is not ±∏Δ_w".into());
    }
    if determinant.is_zero() {
        violations.push("determinant vanishes".into());
    }
    InjectivityCertificate { check: "triangular-injectivity".into(), n, j, size: order.len(), determinant, sign, violations }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphTwistEntry {
    pub w: Permutation,
    pub inversion_set: Vec<(usize, usize)>,
    pub delta_w: Poly,
    /// `degrees[i]` is the degree of `x_{i+1}` in `Δ_w`.
    pub degrees: Vec<u32>,
}

pub fn graph_twist_table(n: usize) -> Vec<GraphTwistEntry> {
    Permutation::all(n)
        .into_iter()
        .map(|w| {
            let delta = delta_w(&w);
            let degrees = (1..=n).map(|i| delta.degree_in_x(i)).collect();
            GraphTwistEntry { inversion_set: w.inversions(), delta_w: delta, degrees, w }
        })
        .collect()
}
