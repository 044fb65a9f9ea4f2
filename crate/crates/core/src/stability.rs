//! Exact phases, desk-scale Harder–Narasimhan filtrations and the relation
//! calculus for twisted stability conditions.
//!
//! A phase is never evaluated numerically. Charges in the strip
//! `{Im z > 0} ∪ {Im z = 0, Re z < 0}` are ordered by the sign of the cross
//! product `Re z₁ Im z₂ − Re z₂ Im z₁`, which is positive exactly when `z₂` has
//! the larger argument. Shifts are compared first.
//!
//! The Bayer scan is a *shadow* check: it verifies a consequence of the
//! categorical relation at the level of central charges only. Likewise HN
//! filtrations on `E` are not determined by classes, so only the formal
//! regrouping of pieces declared semistable is offered.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::kclass::{central_charge, twist, ChargeParams, ExactComplex, LatticeVector};
use crate::rational::{self, Rational};

/// A nonzero charge in the strip together with a homological shift; the total
/// phase lies in `(shift, shift + 1]`.
///
/// Equality and ordering compare phases only: `1 + i` and `2 + 2i` are equal.
#[derive(Clone, Debug)]
pub struct Phase {
    charge: ExactComplex,
    shift: i64,
}

fn in_strip(z: &ExactComplex) -> bool {
    z.im.is_positive() || (z.im.is_zero() && z.re.is_negative())
}

impl Phase {
    pub fn new(charge: ExactComplex, shift: i64) -> Result<Self> {
        if charge.is_zero() {
            return Err(Error::ZeroCharge);
        }
        if !in_strip(&charge) {
            return Err(Error::OutsideStrip(charge.to_string()));
        }
        Ok(Self { charge, shift })
    }

    pub fn charge(&self) -> &ExactComplex {
        &self.charge
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn shifted(&self, k: i64) -> Self {
        Self { charge: self.charge.clone(), shift: self.shift + k }
    }

    /// The phase is an integer (the charge is negative real).
    pub fn is_integral(&self) -> bool {
        self.charge.im.is_zero()
    }

    /// Exactly one half above the shift.
    pub fn is_half(&self) -> bool {
        self.charge.re.is_zero()
    }
}

/// `θ ∈ (0, 1]` with `z ∈ ℝ_{>0} e^{iπθ}`.
pub fn phase(z: &ExactComplex) -> Result<Phase> {
    Phase::new(z.clone(), 0)
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shift.cmp(&other.shift).then_with(|| {
            let (a, b) = (&self.charge, &other.charge);
            let cross = &a.re * &b.im - &b.re * &a.im;
            // both arguments lie in (0, π], so the cross product decides
            Rational::zero().cmp(&cross)
        })
    }
}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Phase {}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arg({})/π + {}", self.charge, self.shift)
    }
}

impl Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            re: String,
            im: String,
            shift: i64,
        }
        Doc { re: rational::format(&self.charge.re), im: rational::format(&self.charge.im), shift: self.shift }
            .serialize(s)
    }
}

/// Phase bookkeeping for a filtration: the smallest factor phase.
pub fn phase_lower_bound(factor_phases: &[Phase]) -> Result<Phase> {
    factor_phases.iter().min().cloned().ok_or(Error::EmptyInput)
}

/// `⊕ O(d_i) ⊕ (torsion of lengths l_j)` on `P¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSheafP1 {
    pub bundle_degrees: Vec<i64>,
    pub torsion_lengths: Vec<u64>,
}

impl SplitSheafP1 {
    pub fn new(bundle_degrees: Vec<i64>, torsion_lengths: Vec<u64>) -> Result<Self> {
        if torsion_lengths.contains(&0) {
            return Err(Error::Precondition("torsion lengths must be positive".into()));
        }
        Ok(Self { bundle_degrees, torsion_lengths })
    }

    pub fn is_zero(&self) -> bool {
        self.bundle_degrees.is_empty() && self.torsion_lengths.is_empty()
    }

    pub fn summand_count(&self) -> usize {
        self.bundle_degrees.len() + self.torsion_lengths.len()
    }

    /// `(rank, degree)`.
    pub fn class(&self) -> (i64, i64) {
        let rank = self.bundle_degrees.len() as i64;
        let degree = self.bundle_degrees.iter().sum::<i64>() + self.torsion_lengths.iter().sum::<u64>() as i64;
        (rank, degree)
    }

    /// `Z = −deg + (b + ia)·rank`.
    pub fn charge(&self, p: &ChargeParams) -> ExactComplex {
        let (r, d) = self.class();
        curve_charge(p, r, d)
    }
}

fn curve_charge(p: &ChargeParams, rank: i64, degree: i64) -> ExactComplex {
    let r = rational::int(rank);
    ExactComplex::new(p.b() * &r - rational::int(degree), p.a() * &r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnFactor {
    pub factor: SplitSheafP1,
    pub phase: Phase,
}

/// HN filtration of a split sheaf on `P¹`: torsion on top, then line
/// bundles grouped by degree in decreasing order.
pub fn hn_split_p1(sheaf: &SplitSheafP1, p: &ChargeParams) -> Result<Vec<HnFactor>> {
    if p.n() != 1 {
        return Err(Error::RankMismatch { expected: 1, found: p.n() });
    }
    if sheaf.is_zero() {
        return Err(Error::ZeroClass);
    }
    let mut factors = Vec::new();
    if !sheaf.torsion_lengths.is_empty() {
        let mut lengths = sheaf.torsion_lengths.clone();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        let torsion = SplitSheafP1 { bundle_degrees: Vec::new(), torsion_lengths: lengths };
        let phase = phase(&torsion.charge(p))?;
        factors.push(HnFactor { factor: torsion, phase });
    }
    let mut by_degree: BTreeMap<i64, usize> = BTreeMap::new();
    for &d in &sheaf.bundle_degrees {
        *by_degree.entry(d).or_default() += 1;
    }
    for (&d, &count) in by_degree.iter().rev() {
        let factor = SplitSheafP1 { bundle_degrees: vec![d; count], torsion_lengths: Vec::new() };
        let phase = phase(&factor.charge(p))?;
        factors.push(HnFactor { factor, phase });
    }
    if factors.windows(2).any(|w| w[0].phase <= w[1].phase) {
        return Err(Error::Internal("HN factor phases are not strictly decreasing".into()));
    }
    Ok(factors)
}

/// Groups `(rank, degree)` classes on `E` by phase, highest phase first.
///
/// The phase order of such classes is the slope order for every `(a, b)`, so
/// no parameters are needed. Rank 0 classes must have positive degree.
pub fn hn_slope_regroup(pieces: &[(i64, i64)]) -> Result<Vec<Vec<(i64, i64)>>> {
    let unit = ChargeParams::new(rational::int(1), rational::int(0), 1).expect("a = 1 is positive");
    let mut keyed: Vec<(Phase, (i64, i64))> = Vec::with_capacity(pieces.len());
    for &(r, d) in pieces {
        if r == 0 && d == 0 {
            return Err(Error::ZeroClass);
        }
        keyed.push((phase(&curve_charge(&unit, r, d))?, (r, d)));
    }
    let mut groups: Vec<(Phase, Vec<(i64, i64)>)> = Vec::new();
    for (ph, piece) in keyed {
        match groups.iter_mut().find(|(g, _)| *g == ph) {
            Some((_, members)) => members.push(piece),
            None => groups.push((ph, vec![piece])),
        }
    }
    groups.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(groups.into_iter().map(|(_, members)| members).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct BayerViolation {
    pub vector: LatticeVector,
    pub before: Phase,
    pub after: Phase,
}

#[derive(Clone, Debug, Serialize)]
pub struct BayerCertificate {
    pub check: String,
    pub params: ChargeParams,
    pub bound: i64,
    /// Only the `n = 1` scan asserts the inequality.
    pub rigorous: bool,
    pub shadow: bool,
    pub scanned: usize,
    pub skipped: usize,
    pub equalities: usize,
    pub exploratory_violations: usize,
    pub violations: Vec<BayerViolation>,
}

impl Certificate for BayerCertificate {
    fn check(&self) -> &str {
        &self.check
    }

    fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// Shadow of `σ ⪅ σ ⊗ O(H)`: `θ(Z(v ⊗ O(−H))) ≤ θ(Z(v))`.
///
/// For `n = 1` scans `1 ≤ r ≤ bound`, `|d| ≤ bound` and torsion `(0, d)`,
/// `1 ≤ d ≤ bound`, asserting strict decrease off torsion and equality on it.
/// For `n ≥ 2` scans every vector with components in `[−bound, bound]`,
/// skipping charges outside the strip, and only counts failures.
pub fn bayer_shadow_scan(p: &ChargeParams, bound: i64) -> Result<BayerCertificate> {
    let n = p.n();
    let dual_h = vec![-1i64; n];
    let mut cert = BayerCertificate {
        check: "bayer-shadow".into(),
        params: p.clone(),
        bound,
        rigorous: n == 1,
        shadow: true,
        scanned: 0,
        skipped: 0,
        equalities: 0,
        exploratory_violations: 0,
        violations: Vec::new(),
    };

    if n == 1 {
        let classes = (1..=bound)
            .flat_map(|r| (-bound..=bound).map(move |d| (r, d)))
            .chain((1..=bound).map(|d| (0, d)));
        for (r, d) in classes {
            let v = LatticeVector::curve_class(r, d);
            let before = phase(&central_charge(p, &v)?)?;
            let after = phase(&central_charge(p, &twist(&v, &dual_h)?)?)?;
            cert.scanned += 1;
            let ok = if r == 0 { after == before } else { after < before };
            if after == before {
                cert.equalities += 1;
            }
            if !ok {
                cert.violations.push(BayerViolation { vector: v, before, after });
            }
        }
        return Ok(cert);
    }

    let dim = 1usize << n;
    let width = (2 * bound + 1) as usize;
    let total = width.checked_pow(dim as u32).ok_or_else(|| Error::Precondition("scan box too large".into()))?;
    for code in 0..total {
        let mut c = code;
        let comps = (0..dim)
            .map(|_| {
                let digit = (c % width) as i64 - bound;
                c /= width;
                rational::int(digit)
            })
            .collect();
        let v = LatticeVector::from_components(n, comps)?;
        let before = central_charge(p, &v)?;
        let after = central_charge(p, &twist(&v, &dual_h)?)?;
        let (Ok(before), Ok(after)) = (phase(&before), phase(&after)) else {
            cert.skipped += 1;
            continue;
        };
        cert.scanned += 1;
        match after.cmp(&before) {
            Ordering::Equal => cert.equalities += 1,
            Ordering::Greater => cert.exploratory_violations += 1,
            Ordering::Less => {}
        }
    }
    Ok(cert)
}

/// `σ ⊗ O(twist) ⪯ σ[shift]`, with `⪯` strict (`≲`) or not (`⪅`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationFact {
    pub twist: i64,
    pub shift: u32,
    pub strict: bool,
}

impl RelationFact {
    pub const IDENTITY: RelationFact = RelationFact { twist: 0, shift: 0, strict: false };

    pub fn new(twist: i64, shift: u32, strict: bool) -> Self {
        Self { twist, shift, strict }
    }

    /// `σ ⪅ σ ⊗ O(1)`, tensored by `O(−1)`.
    pub fn bayer() -> Self {
        Self::new(-1, 0, false)
    }

    /// `σ ⊗ O(N) ≲ σ[1]`.
    pub fn restriction(big_n: u64) -> Self {
        Self::new(big_n as i64, 1, true)
    }
}

/// Transitivity after twisting and shifting the first relation by the second.
pub fn compose_relations(f1: &RelationFact, f2: &RelationFact) -> RelationFact {
    RelationFact { twist: f1.twist + f2.twist, shift: f1.shift + f2.shift, strict: f1.strict || f2.strict }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainStep {
    /// One `O(−1)` weakening via the Bayer relation.
    Bayer,
    /// One use of `σ ⊗ O(N) ≲ σ[1]`.
    Restriction,
}

impl ChainStep {
    pub fn fact(self, big_n: u64) -> RelationFact {
        match self {
            ChainStep::Bayer => RelationFact::bayer(),
            ChainStep::Restriction => RelationFact::restriction(big_n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    pub j: u32,
    pub a_j: u64,
    pub goal: RelationFact,
    pub steps: Vec<ChainStep>,
}

impl ChainCertificate {
    /// Folds the steps with [`compose_relations`].
    pub fn replay(&self, big_n: u64) -> RelationFact {
        self.steps
            .iter()
            .fold(RelationFact::IDENTITY, |acc, s| compose_relations(&acc, &s.fact(big_n)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ChainOutcome {
    Proved(ChainCertificate),
    Refused { j: u32, a_j: u64, reachable_twist: u64, obstruction: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistChainReport {
    pub check: String,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub outcomes: Vec<ChainOutcome>,
    pub violations: Vec<String>,
}

impl Certificate for TwistChainReport {
    fn check(&self) -> &str {
        &self.check
    }

    fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// For each `j`, proves `σ ⊗ O(a_j) ≲ σ[j]` from the Bayer and
/// restriction relations, or refuses when `a_j > jN`.
///
/// Facts generated by `p` Bayer and `q` restriction steps are
/// `(qN − p, q, q ≥ 1)`, so the goal `(a_j, j, strict)` needs `q = j` and
/// `p = jN − a_j ≥ 0`.
pub fn derive_twist_chain(a_degrees: &[u64], big_n: u64) -> Result<TwistChainReport> {
    if big_n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let mut outcomes = Vec::with_capacity(a_degrees.len());
    let mut violations = Vec::new();
    for (idx, &a_j) in a_degrees.iter().enumerate() {
        let j = idx as u32 + 1;
        let reachable = u64::from(j) * big_n;
        if a_j > reachable {
            let obstruction = format!("a_{j} = {a_j} exceeds jN = {reachable}");
            violations.push(obstruction.clone());
            outcomes.push(ChainOutcome::Refused { j, a_j, reachable_twist: reachable, obstruction });
            continue;
        }
        let mut steps = vec![ChainStep::Bayer; (reachable - a_j) as usize];
        steps.extend(std::iter::repeat_n(ChainStep::Restriction, j as usize));
        let cert = ChainCertificate { j, a_j, goal: RelationFact::new(a_j as i64, j, true), steps };
        debug_assert_eq!(cert.replay(big_n), cert.goal);
        outcomes.push(ChainOutcome::Proved(cert));
    }
    Ok(TwistChainReport { check: "twist-chain".into(), big_n, outcomes, violations })
}
