//! Sparse polynomials over ℚ in `x₁..xₙ, y₁..yₙ`.
//!
//! Exponent vectors always have `2n` slots: the x-block first, then the
//! y-block. Operations that act on x leave the y-block untouched. Terms are
//! kept in graded lexicographic order with no zero coefficients, so structural
//! equality is polynomial equality.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rational::{self, Rational};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; 2 * n], c);
        p
    }

    pub fn integer(n: usize, c: i64) -> Self {
        Self::constant(n, rational::int(c))
    }

    /// `x_i`, 1-based.
    pub fn x(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "x{i} out of range for rank {n}");
        let mut exps = vec![0; 2 * n];
        exps[i - 1] = 1;
        Self::monomial(n, exps, Rational::one())
    }

    /// `y_i`, 1-based.
    pub fn y(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "y{i} out of range for rank {n}");
        let mut exps = vec![0; 2 * n];
        exps[n + i - 1] = 1;
        Self::monomial(n, exps, Rational::one())
    }

    /// `coeff · x^exps`; `exps` may cover only the x-block.
    pub fn monomial(n: usize, mut exps: Vec<u32>, coeff: Rational) -> Self {
        assert!(exps.len() == n || exps.len() == 2 * n, "exponent vector of length {} for rank {n}", exps.len());
        exps.resize(2 * n, 0);
        let mut p = Self::zero(n);
        p.add_term(exps, coeff);
        p
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(n);
        for (exps, c) in terms {
            p.add_term(exps, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), 2 * self.n);
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Number of x-variables.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m.exps(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        let mut key = exps.to_vec();
        key.resize(2 * self.n, 0);
        self.terms.get(&Monomial(key)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogeneous components keyed by degree; zero components omitted.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Poly::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn uses_y(&self) -> bool {
        self.terms.keys().any(|m| m.0[self.n..].iter().any(|&e| e > 0))
    }

    /// Highest power of `x_i` (1-based) occurring.
    pub fn degree_in_x(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i - 1]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check_rank(&self, other: &Poly) {
        assert_eq!(self.n, other.n, "polynomial rank mismatch");
    }

    /// Applies `f` to every exponent vector; `f` returns the new vector and a sign.
    fn map_monomials<F>(&self, mut f: F) -> Poly
    where
        F: FnMut(&[u32]) -> (Vec<u32>, bool),
    {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let (exps, negate) = f(&m.0);
            out.add_term(exps, if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Substitutes `x_i ↦ x_{w(i)}`.
    pub fn permute_x(&self, w: &Permutation) -> Result<Poly> {
        if w.n() != self.n {
            return Err(Error::RankMismatch { expected: self.n, found: w.n() });
        }
        let n = self.n;
        Ok(self.map_monomials(|e| {
            let mut out = e.to_vec();
            for i in 1..=n {
                out[w.apply(i) - 1] = e[i - 1];
            }
            (out, false)
        }))
    }

    /// `s_j · f`: swaps `x_j` and `x_{j+1}`.
    fn swap_x(&self, j: usize) -> Poly {
        self.map_monomials(|e| {
            let mut out = e.to_vec();
            out.swap(j - 1, j);
            (out, false)
        })
    }

    fn check_simple_index(&self, j: usize) -> Result<()> {
        if j == 0 || j >= self.n {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        Ok(())
    }

    /// `∂_j f = (f − s_j f)/(x_j − x_{j+1})`.
    pub fn divided_difference(&self, j: usize) -> Result<Poly> {
        self.check_simple_index(j)?;
        let numerator = self - &self.swap_x(j);
        numerator.div_by_difference(j)
    }

    /// Exact division by `x_j − x_{j+1}` via synthetic division in `x_j`.
    ///
    /// Terms are grouped by their exponents outside slots `j, j+1`; each group
    /// is a polynomial in `u = x_j` with coefficients in `ℚ[v]`, `v = x_{j+1}`,
    /// divided by `u − v` with Horner's scheme. A nonzero remainder is an error.
    fn div_by_difference(&self, j: usize) -> Result<Poly> {
        let (ju, jv) = (j - 1, j);
        // rest -> u-power -> (v-power -> coeff)
        let mut groups: BTreeMap<Vec<u32>, BTreeMap<u32, BTreeMap<u32, Rational>>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let (du, dv) = (rest[ju], rest[jv]);
            rest[ju] = 0;
            rest[jv] = 0;
            groups.entry(rest).or_default().entry(du).or_default().insert(dv, c.clone());
        }

        let mut out = Poly::zero(self.n);
        for (rest, by_u) in groups {
            let top = *by_u.keys().next_back().unwrap();
            // carry = q_{k}; q_{k-1} = p_k + v·q_k
            let mut carry: BTreeMap<u32, Rational> = BTreeMap::new();
            for k in (0..=top).rev() {
                let mut next: BTreeMap<u32, Rational> =
                    carry.iter().map(|(dv, c)| (dv + 1, c.clone())).collect();
                if let Some(pk) = by_u.get(&k) {
                    for (dv, c) in pk {
                        let slot = next.entry(*dv).or_insert_with(Rational::zero);
                        *slot += c;
                    }
                }
                next.retain(|_, c| !c.is_zero());
                if k == 0 {
                    if !next.is_empty() {
                        return Err(Error::Internal(format!(
                            "nonzero remainder dividing by x{} - x{}",
                            j,
                            j + 1
                        )));
                    }
                } else {
                    for (dv, c) in &next {
                        let mut exps = rest.clone();
                        exps[ju] = k - 1;
                        exps[jv] = *dv;
                        out.add_term(exps, c.clone());
                    }
                }
                carry = next;
            }
        }
        Ok(out)
    }

    /// `∂_w = ∂_{a₁}∘···∘∂_{a_ℓ}` along the canonical reduced word of `w`.
    pub fn demazure(&self, w: &Permutation) -> Result<Poly> {
        self.demazure_along(w, &w.canonical_reduced_word())
    }

    /// `∂_w` along an explicit word, which must be a reduced word of `w`.
    pub fn demazure_along(&self, w: &Permutation, word: &[usize]) -> Result<Poly> {
        if w.n() != self.n {
            return Err(Error::RankMismatch { expected: self.n, found: w.n() });
        }
        if word.len() != w.length() || Permutation::from_reduced_word(self.n, word)? != *w {
            return Err(Error::Precondition(format!("{word:?} is not a reduced word of {w}")));
        }
        let mut f = self.clone();
        for &a in word.iter().rev() {
            f = f.divided_difference(a)?;
        }
        Ok(f)
    }

    /// Invariant under every simple reflection acting on x.
    pub fn is_symmetric(&self) -> bool {
        (1..self.n).all(|j| self.swap_x(j) == *self)
    }

    pub fn is_invariant_under(&self, j: usize) -> bool {
        self.swap_x(j) == *self
    }

    /// `y_i ↦ x_i`.
    pub fn specialize_y_to_x(&self) -> Poly {
        let n = self.n;
        self.map_monomials(|e| {
            let mut out = e.to_vec();
            for i in 0..n {
                out[i] += out[n + i];
                out[n + i] = 0;
            }
            (out, false)
        })
    }

    /// `y_i ↦ 0`.
    pub fn set_y_zero(&self) -> Poly {
        let n = self.n;
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            if m.0[n..].iter().all(|&e| e == 0) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// `x_i ↦ −x_i`.
    pub fn negate_x(&self) -> Poly {
        let n = self.n;
        self.map_monomials(|e| {
            let odd = e[..n].iter().sum::<u32>() % 2 == 1;
            (e.to_vec(), odd)
        })
    }

    /// `x_i ↦ −y_i`, for an x-only input.
    pub fn x_to_neg_y(&self) -> Poly {
        let n = self.n;
        self.map_monomials(|e| {
            let mut out = vec![0; 2 * n];
            out[n..].copy_from_slice(&e[..n]);
            for i in 0..n {
                out[n + i] += e[n + i];
            }
            let odd = e[..n].iter().sum::<u32>() % 2 == 1;
            (out, odd)
        })
    }

    /// Coefficients are integral.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| *c >= Rational::zero())
    }

    /// `f(values)` for an x-only polynomial with rational values.
    pub fn eval_x(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate().take(self.n) {
                t *= rational::pow(&values[i], e);
            }
            acc += t;
        }
        acc
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.check_rank(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.0.clone(), c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check_rank(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.0.clone(), -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.check_rank(rhs);
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                *acc.entry(Monomial(exps)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { n: self.n, terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exps, c)) in self.terms().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (slot, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if slot < self.n { format!("x{}", slot + 1) } else { format!("y{}", slot - self.n + 1) };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            let unit = abs.is_one();
            if factors.is_empty() {
                write!(f, "{}", rational::format(&abs))?;
            } else if unit {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", rational::format(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    num: String,
    den: String,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars(),
            terms: self
                .terms()
                .map(|(exp, c)| TermJson { exp: exp.to_vec(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        if raw.nvars == 0 || raw.nvars % 2 != 0 {
            return Err(D::Error::custom(format!("nvars must be a positive even number, got {}", raw.nvars)));
        }
        let n = raw.nvars / 2;
        let mut p = Poly::zero(n);
        for t in raw.terms {
            if t.exp.len() != raw.nvars {
                return Err(D::Error::custom("exponent vector length differs from nvars"));
            }
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            p.add_term(t.exp, Rational::new(num, den));
        }
        Ok(p)
    }
}
