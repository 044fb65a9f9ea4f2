//! The numerical lattice `Λ ≅ ℤ^{2ⁿ}` of `Eⁿ` and the central charges `Z^{a,b}`.
//!
//! A class is recorded by its pairings `∫ H_S · ch_{n−|S|}(F)` for subsets
//! `S ⊆ {1..n}`, with `H_S = ∏_{i∈S} H_i` and `H_i² = 0`. Subsets are stored
//! as bitmasks: bit `i−1` set iff `i ∈ S`. The full subset carries the rank and
//! the empty subset carries `ch_n`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::sample;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.re * c, &self.im * c)
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for &ExactComplex {
    type Output = ExactComplex;

    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ExactComplex {
    type Output = ExactComplex;

    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ExactComplex {
    type Output = ExactComplex;

    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;

    fn neg(self) -> ExactComplex {
        ExactComplex::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{} {sign} {}i", rational::format(&self.re), rational::format(&self.im.abs()))
    }
}

impl Serialize for ExactComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            re: String,
            im: String,
        }
        Doc { re: rational::format(&self.re), im: rational::format(&self.im) }.serialize(s)
    }
}

/// Parameters `(a, b) ∈ ℚ_{>0} × ℚ` of `Z^{a,b}` on `Eⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeParams {
    a: Rational,
    b: Rational,
    n: usize,
}

impl ChargeParams {
    pub fn new(a: Rational, b: Rational, n: usize) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::Precondition(format!("a = {} must be positive", rational::format(&a))));
        }
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { a, b, n })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `b + ia`.
    pub fn complexified(&self) -> ExactComplex {
        ExactComplex::new(self.b.clone(), self.a.clone())
    }

    fn with(&self, a: Rational, b: Rational) -> Self {
        Self { a, b, n: self.n }
    }
}

impl Serialize for ChargeParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            a: String,
            b: String,
            n: usize,
        }
        Doc { a: rational::format(&self.a), b: rational::format(&self.b), n: self.n }.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    n: usize,
    comps: Vec<Rational>,
}

impl LatticeVector {
    pub fn zero(n: usize) -> Self {
        Self { n, comps: vec![Rational::zero(); 1 << n] }
    }

    /// Components indexed by subset bitmask; `comps.len()` must be `2ⁿ`.
    pub fn from_components(n: usize, comps: Vec<Rational>) -> Result<Self> {
        if comps.len() != 1 << n {
            return Err(Error::RankMismatch { expected: 1 << n, found: comps.len() });
        }
        Ok(Self { n, comps })
    }

    /// `(rank, degree)` on a single elliptic curve.
    pub fn curve_class(rank: i64, degree: i64) -> Self {
        Self { n: 1, comps: vec![rational::int(degree), rational::int(rank)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, subset: u32) -> &Rational {
        &self.comps[subset as usize]
    }

    pub fn set(&mut self, subset: u32, value: Rational) {
        self.comps[subset as usize] = value;
    }

    pub fn components(&self) -> &[Rational] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> &Rational {
        &self.comps[(1 << self.n) - 1]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { n: self.n, comps: self.comps.iter().map(|v| v * c).collect() }
    }

    pub fn sup_norm(&self) -> Rational {
        self.comps.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::RankMismatch { expected: n, found: self.n });
        }
        Ok(())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.n, rhs.n, "lattice rank mismatch");
        LatticeVector { n: self.n, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect() }
    }
}

fn subset_members(n: usize, mask: u32) -> Vec<usize> {
    (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect()
}

fn subset_mask(members: &[usize]) -> u32 {
    members.iter().fold(0, |m, i| m | (1 << (i - 1)))
}

/// Subset bitmasks ordered by size, then lexicographically by members.
fn subsets_in_order(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), subset_members(n, m)));
    masks
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    subset: Vec<usize>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    n: usize,
    components: Vec<ComponentJson>,
}

impl Serialize for LatticeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let components = subsets_in_order(self.n)
            .into_iter()
            .filter(|&m| !self.comps[m as usize].is_zero())
            .map(|m| ComponentJson { subset: subset_members(self.n, m), value: rational::format(&self.comps[m as usize]) })
            .collect();
        LatticeJson { n: self.n, components }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = LatticeJson::deserialize(d)?;
        if raw.n == 0 || raw.n > 16 {
            return Err(D::Error::custom(format!("unsupported rank {}", raw.n)));
        }
        let mut v = LatticeVector::zero(raw.n);
        for c in raw.components {
            if c.subset.iter().any(|&i| i == 0 || i > raw.n) || c.subset.windows(2).any(|w| w[0] >= w[1]) {
                return Err(D::Error::custom(format!("subset {:?} is not a sorted subset of 1..={}", c.subset, raw.n)));
            }
            let value = rational::parse(&c.value).map_err(D::Error::custom)?;
            v.set(subset_mask(&c.subset), value);
        }
        Ok(v)
    }
}

/// `v(O(Σ c_i H_i))`: component at `S` is `∏_{i∉S} c_i`.
pub fn v_of_line_bundle(c: &[i64]) -> LatticeVector {
    let n = c.len();
    let full = (1u32 << n) - 1;
    let comps = (0..=full)
        .map(|mask| {
            let outside = subset_members(n, full & !mask);
            outside.iter().fold(Rational::one(), |acc, &i| acc * rational::int(c[i - 1]))
        })
        .collect();
    LatticeVector { n, comps }
}

/// `v(O_p)`: the point class, 1 at `S = ∅`.
pub fn v_of_point(n: usize) -> LatticeVector {
    let mut v = LatticeVector::zero(n);
    v.set(0, Rational::one());
    v
}

/// `Z^{a,b}(v) = −∫ e^{−(b+ia)H} ch = Σ_s −(−1)^s (b+ia)^s Σ_{|S|=s} v_S`.
pub fn central_charge(p: &ChargeParams, v: &LatticeVector) -> Result<ExactComplex> {
    v.check_rank(p.n)?;
    let base = p.complexified();
    let mut power = ExactComplex::one();
    let mut z = ExactComplex::zero();
    for s in 0..=p.n {
        let sum: Rational = v
            .comps
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask.count_ones() as usize == s)
            .map(|(_, c)| c.clone())
            .sum();
        let term = power.scale(&sum);
        z = if s % 2 == 0 { &z - &term } else { &z + &term };
        power = &power * &base;
    }
    Ok(z)
}

/// `ch ↦ ch · e^{Σ c_i H_i}`: `new[S] = Σ_{T ⊆ Sᶜ} (∏_{i∈T} c_i) old[S ∪ T]`.
pub fn twist(v: &LatticeVector, c: &[i64]) -> Result<LatticeVector> {
    v.check_rank(c.len())?;
    let n = v.n;
    let full = (1u32 << n) - 1;
    let mut out = LatticeVector::zero(n);
    for s in 0..=full {
        let complement = full & !s;
        let mut acc = Rational::zero();
        // iterate subsets t of the complement
        let mut t = complement;
        loop {
            let weight = subset_members(n, t).iter().fold(BigInt::one(), |w, &i| w * c[i - 1]);
            if !weight.is_zero() {
                acc += &v.comps[(s | t) as usize] * Rational::from_integer(weight);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & complement;
        }
        out.comps[s as usize] = acc;
    }
    Ok(out)
}

fn scale_by_codegree(v: &LatticeVector, m: u64, pullback: bool) -> LatticeVector {
    let m = Rational::from_integer(BigInt::from(m));
    let n = v.n;
    let comps = v
        .comps
        .iter()
        .enumerate()
        .map(|(mask, c)| {
            let size = (mask as u32).count_ones() as usize;
            // ch_j with j = n − |S|
            let exp = if pullback { 2 * (n - size) } else { 2 * size };
            c * rational::pow(&m, exp as u32)
        })
        .collect();
    LatticeVector { n, comps }
}

/// `π_m^*`: scales the `ch_j` pairing by `m^{2j}`.
pub fn isogeny_pullback(m: u64, v: &LatticeVector) -> Result<LatticeVector> {
    if m == 0 {
        return Err(Error::Precondition("isogeny degree m must be positive".into()));
    }
    Ok(scale_by_codegree(v, m, true))
}

/// `π_{m*}`: scales the `ch_j` pairing by `m^{2n−2j}`.
pub fn isogeny_pushforward(m: u64, v: &LatticeVector) -> Result<LatticeVector> {
    if m == 0 {
        return Err(Error::Precondition("isogeny degree m must be positive".into()));
    }
    Ok(scale_by_codegree(v, m, false))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChargeViolation {
    pub identity: String,
    pub vector: LatticeVector,
    pub lhs: ExactComplex,
    pub rhs: ExactComplex,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChargeCertificate {
    pub check: String,
    pub params: ChargeParams,
    pub m: u64,
    pub trials: usize,
    pub seed: u64,
    pub identities_checked: usize,
    pub violations: Vec<ChargeViolation>,
}

impl Certificate for ChargeCertificate {
    fn check(&self) -> &str {
        &self.check
    }

    fn violation_count(&self) -> usize {
        self.violations.len()
    }
}

/// For `trials` seeded random vectors checks
/// `Z^{a,b}∘π_m^* = m^{2n} Z^{a/m²,b/m²}`, `Z^{a,b}∘π_{m*} = Z^{m²a,m²b}`
/// and `Z^{a,b}(v ⊗ L⁻¹) = Z^{a,b+1}(v)` for `L ≡ H`.
pub fn verify_charge_transforms(p: &ChargeParams, m: u64, trials: usize, seed: u64) -> Result<ChargeCertificate> {
    if m == 0 {
        return Err(Error::Precondition("isogeny degree m must be positive".into()));
    }
    let n = p.n;
    let mut rng = sample::seeded(seed);
    let m2 = rational::int((m * m) as i64);
    let scale = rational::pow(&m2, n as u32);
    let down = p.with(p.a() / &m2, p.b() / &m2);
    let up = p.with(p.a() * &m2, p.b() * &m2);
    let shifted = p.with(p.a().clone(), p.b() + Rational::one());
    let dual_h = vec![-1i64; n];

    let mut violations = Vec::new();
    let mut checked = 0;
    let mut compare = |identity: &str, v: &LatticeVector, lhs: ExactComplex, rhs: ExactComplex| {
        checked += 1;
        if lhs != rhs {
            violations.push(ChargeViolation { identity: identity.into(), vector: v.clone(), lhs, rhs });
        }
    };
    for _ in 0..trials {
        let v = sample::random_lattice_vector(&mut rng, n, 10);
        compare(
            "pullback",
            &v,
            central_charge(p, &isogeny_pullback(m, &v)?)?,
            central_charge(&down, &v)?.scale(&scale),
        );
        compare("pushforward", &v, central_charge(p, &isogeny_pushforward(m, &v)?)?, central_charge(&up, &v)?);
        compare("twist", &v, central_charge(p, &twist(&v, &dual_h)?)?, central_charge(&shifted, &v)?);
    }
    Ok(ChargeCertificate {
        check: "charge-transforms".into(),
        params: p.clone(),
        m,
        trials,
        seed,
        identities_checked: checked,
        violations,
    })
}

/// `min |Z(v)|² / ‖v‖²_∞` over the given classes (sup-norm, squared).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportConstant {
    Value(Rational),
    /// Some class has `Z(v) = 0`.
    Undefined,
}

impl Serialize for SupportConstant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SupportConstant::Value(r) => s.serialize_str(&rational::format(r)),
            SupportConstant::Undefined => s.serialize_str("undefined"),
        }
    }
}

pub fn support_constant(p: &ChargeParams, classes: &[LatticeVector]) -> Result<SupportConstant> {
    if classes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut best: Option<Rational> = None;
    for v in classes {
        if v.is_zero() {
            return Err(Error::ZeroClass);
        }
        let z = central_charge(p, v)?;
        if z.is_zero() {
            return Ok(SupportConstant::Undefined);
        }
        let norm = v.sup_norm();
        let ratio = z.norm_sqr() / (&norm * &norm);
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    Ok(SupportConstant::Value(best.expect("nonempty")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn params(a: Rational, b: Rational, n: usize) -> ChargeParams {
        ChargeParams::new(a, b, n).unwrap()
    }

    #[test]
    fn params_reject_nonpositive_a() {
        assert!(ChargeParams::new(int(0), int(1), 1).is_err());
        assert!(ChargeParams::new(int(-1), int(1), 1).is_err());
    }

    #[test]
    fn line_bundle_examples() {
        let o = v_of_line_bundle(&[0, 0, 0]);
        for mask in 0..8u32 {
            assert_eq!(*o.get(mask), if mask == 7 { int(1) } else { int(0) });
        }
        assert_eq!(v_of_line_bundle(&[5]), LatticeVector::curve_class(1, 5));
        let l = v_of_line_bundle(&[1, 1]);
        assert!(l.components().iter().all(|c| *c == int(1)));
        // ∅ ↦ c1 c2, {1} ↦ c2, {2} ↦ c1
        let l = v_of_line_bundle(&[2, 3]);
        assert_eq!(l.components(), &[int(6), int(3), int(2), int(1)]);
    }

    #[test]
    fn point_examples() {
        assert_eq!(v_of_point(1), LatticeVector::curve_class(0, 1));
        let p3 = v_of_point(3);
        assert!((1..8).all(|m| p3.get(m).is_zero()));
        for (a, b) in [(int(1), int(0)), (ratio(7, 3), int(-2))] {
            let z = central_charge(&params(a, b, 3), &p3).unwrap();
            assert_eq!(z, ExactComplex::real(int(-1)));
        }
    }

    #[test]
    fn charge_examples() {
        let p = params(ratio(3, 2), ratio(-1, 5), 1);
        assert_eq!(central_charge(&p, &LatticeVector::curve_class(1, 0)).unwrap(), p.complexified());
        let p2 = params(int(1), int(0), 2);
        let z = central_charge(&p2, &v_of_line_bundle(&[0, 0])).unwrap();
        assert_eq!(z, ExactComplex::real(int(1)));
        assert!(central_charge(&p2, &v_of_point(1)).is_err());
    }

    #[test]
    fn twist_examples() {
        let v = LatticeVector::curve_class(3, -2);
        assert_eq!(twist(&v, &[0]).unwrap(), v);
        assert_eq!(twist(&v, &[1]).unwrap(), LatticeVector::curve_class(3, 1));
        assert_eq!(twist(&v_of_line_bundle(&[1, -2]), &[3, 4]).unwrap(), v_of_line_bundle(&[4, 2]));
        assert!(twist(&v, &[1, 1]).is_err());
    }

    #[test]
    fn isogeny_examples() {
        let v = LatticeVector::curve_class(1, 1);
        assert_eq!(isogeny_pullback(1, &v).unwrap(), v);
        assert_eq!(isogeny_pullback(2, &v).unwrap(), LatticeVector::curve_class(1, 4));
        assert_eq!(isogeny_pushforward(2, &v).unwrap(), LatticeVector::curve_class(4, 1));
        assert!(isogeny_pullback(0, &v).is_err());
    }

    #[test]
    fn twist_identity_at_n1() {
        let p = params(ratio(2, 3), ratio(1, 4), 1);
        let shifted = params(ratio(2, 3), ratio(5, 4), 1);
        for (r, d) in [(1, 0), (2, -3), (0, 4)] {
            let lhs = central_charge(&p, &LatticeVector::curve_class(r, d - r)).unwrap();
            let rhs = central_charge(&shifted, &LatticeVector::curve_class(r, d)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn transforms_hold() {
        for n in 1..=3 {
            let p = params(ratio(5, 7), ratio(-3, 2), n);
            let cert = verify_charge_transforms(&p, 3, 10, 42).unwrap();
            assert!(cert.passed(), "{:?}", cert.violations);
            assert_eq!(cert.identities_checked, 30);
        }
    }

    #[test]
    fn zero_vector_transforms() {
        let p = params(int(1), int(0), 2);
        let zero = LatticeVector::zero(2);
        assert!(central_charge(&p, &isogeny_pullback(2, &zero).unwrap()).unwrap().is_zero());
        assert!(central_charge(&p, &twist(&zero, &[-1, -1]).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn support_constant_examples() {
        let p3 = params(ratio(1, 2), int(2), 3);
        assert_eq!(support_constant(&p3, &[v_of_point(3)]).unwrap(), SupportConstant::Value(int(1)));
        let p1 = params(int(1), int(0), 1);
        let c = support_constant(&p1, &[LatticeVector::curve_class(1, 0)]).unwrap();
        assert_eq!(c, SupportConstant::Value(int(1)));
        assert_eq!(support_constant(&p1, &[]), Err(Error::EmptyInput));
        assert_eq!(support_constant(&p1, &[LatticeVector::zero(1)]), Err(Error::ZeroClass));
    }

    #[test]
    fn support_constant_undefined_on_kernel() {
        // n = 2, (a, b) = (1, 0): Z = −c∅ + i(c1 + c2) + c12, so (1, 0, 0, 1) ↦ 0
        let p = params(int(1), int(0), 2);
        let v = LatticeVector::from_components(2, vec![int(1), int(0), int(0), int(1)]).unwrap();
        assert!(central_charge(&p, &v).unwrap().is_zero());
        assert_eq!(support_constant(&p, &[v_of_point(2), v]).unwrap(), SupportConstant::Undefined);
    }

    #[test]
    fn json_round_trip() {
        let v = v_of_line_bundle(&[2, -3]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"components":[{"subset":[],"value":"-6"},{"subset":[1],"value":"-3"},{"subset":[2],"value":"2"},{"subset":[1,2],"value":"1"}]}"#
        );
        let back: LatticeVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<LatticeVector>(r#"{"n":2,"components":[{"subset":[3],"value":"1"}]}"#).is_err());
    }
}
