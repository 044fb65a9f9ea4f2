//! Permutations of `{1..n}` in one-line notation.
//!
//! Composition is right-to-left: `(p∘q)(i) = p(q(i))`. A word `(a₁,..,a_ℓ)`
//! denotes the product `s_{a₁}∘···∘s_{a_ℓ}` of simple transpositions
//! `s_j = (j j+1)`.
//!
//! The derived ordering sorts by length and then lexicographically by the
//! one-line word, which is the enumeration order used for all output.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds from one-line notation, checking that `word` is a bijection of `{1..n}`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{word:?} is not a bijection of 1..={n}")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { word })
    }

    pub fn identity(n: usize) -> Self {
        Self { word: (1..=n).collect() }
    }

    /// The simple transposition `s_j`, `1 ≤ j ≤ n-1`.
    pub fn simple(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        let mut word: Vec<usize> = (1..=n).collect();
        word.swap(j - 1, j);
        Ok(Self { word })
    }

    /// `w₀ = [n, n-1, .., 1]`.
    pub fn longest(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { word: (1..=n).rev().collect() })
    }

    /// Product of simple transpositions `s_{a₁}∘···∘s_{a_ℓ}`.
    pub fn from_reduced_word(n: usize, letters: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &a in letters {
            w = w.compose(&Self::simple(n, a)?)?;
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { expected: self.n(), found: other.n() });
        }
        Ok(Self { word: other.word.iter().map(|&q| self.word[q - 1]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut word = vec![0; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v - 1] = i + 1;
        }
        Self { word }
    }

    /// Pairs `(i, j)` with `i < j` and `w(i) > w(j)`, sorted lexicographically.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.word[i] > self.word[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        let n = self.n();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.word[i] > self.word[j]).count())
            .sum()
    }

    /// `j` such that `ℓ(w∘s_j) < ℓ(w)`, i.e. `w(j) > w(j+1)`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&j| self.word[j - 1] > self.word[j]).collect()
    }

    /// `j` such that `ℓ(s_j∘w) < ℓ(w)`, i.e. `w⁻¹(j) > w⁻¹(j+1)`.
    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// The lexicographically smallest reduced word.
    pub fn canonical_reduced_word(&self) -> Vec<usize> {
        let n = self.n();
        let mut w = self.clone();
        let mut letters = Vec::with_capacity(self.length());
        while let Some(&a) = w.left_descents().first() {
            letters.push(a);
            // s_a∘w drops the letter a from the front
            w = Self::simple(n, a).unwrap().compose(&w).unwrap();
        }
        letters
    }

    /// Every reduced word of `w`, sorted lexicographically.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let descents = self.right_descents();
        if descents.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for j in descents {
            let shorter = self.compose(&Self::simple(n, j).unwrap()).unwrap();
            for mut word in shorter.reduced_words() {
                word.push(j);
                out.push(word);
            }
        }
        out.sort();
        out
    }

    /// All of `Sₙ`, sorted by length then one-line word.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut word: Vec<usize> = (1..=n).collect();
        heap_permutations(&mut word, n, &mut out);
        let mut perms: Vec<Self> = out.into_iter().map(|word| Self { word }).collect();
        perms.sort();
        perms
    }
}

fn heap_permutations(word: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(word.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(word, k - 1, out);
        if k % 2 == 0 {
            word.swap(i, k - 1);
        } else {
            word.swap(0, k - 1);
        }
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.length().cmp(&other.length()))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        Self::new(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
