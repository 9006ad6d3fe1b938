//! Permutations in one-line notation and words in the adjacent transpositions.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    oneline: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            oneline: (1..=n as u32).collect(),
        }
    }

    /// The longest permutation `n n-1 … 1`.
    pub fn longest(n: usize) -> Self {
        Self {
            oneline: (1..=n as u32).rev().collect(),
        }
    }

    pub fn from_oneline(oneline: Vec<u32>) -> Result<Self> {
        let n = oneline.len();
        if n == 0 {
            return Err(invalid("permutation must have length at least 1"));
        }
        let mut seen = vec![false; n + 1];
        for &v in &oneline {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(invalid(format!(
                    "{oneline:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { oneline })
    }

    pub fn len(&self) -> usize {
        self.oneline.len()
    }

    pub fn is_empty(&self) -> bool {
        self.oneline.is_empty()
    }

    pub fn oneline(&self) -> &[u32] {
        &self.oneline
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.oneline[i - 1]
    }

    /// 1-based position holding value `v`.
    pub fn position_of(&self, v: u32) -> Option<usize> {
        self.oneline.iter().position(|&x| x == v).map(|p| p + 1)
    }

    /// Right multiplication by `s_i`: swaps positions `i` and `i+1`.
    pub fn mul_generator(&mut self, i: usize) {
        self.oneline.swap(i - 1, i);
    }

    /// Inversion count, i.e. the Coxeter length, via a Fenwick tree.
    pub fn inversions(&self) -> usize {
        let n = self.oneline.len();
        let mut tree = vec![0usize; n + 1];
        let mut inv = 0;
        for (seen, &v) in self.oneline.iter().enumerate() {
            let mut le = 0;
            let mut i = v as usize;
            while i > 0 {
                le += tree[i];
                i &= i - 1;
            }
            inv += seen - le;
            let mut i = v as usize;
            while i <= n {
                tree[i] += 1;
                i += i & i.wrapping_neg();
            }
        }
        inv
    }

    /// Whether `s_i` is a right descent (`w(i) > w(i+1)`).
    pub fn has_descent(&self, i: usize) -> bool {
        self.oneline[i - 1] > self.oneline[i]
    }
}

/// A word `s_{i_1} ⋯ s_{i_l}` over the generators of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    pub n: usize,
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        let w = Self { n, letters };
        w.check()?;
        Ok(w)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            letters: Vec::new(),
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("word ambient size n must be positive"));
        }
        if let Some(&bad) = self.letters.iter().find(|&&i| i == 0 || i >= self.n) {
            return Err(invalid(format!(
                "letter s_{bad} is not a generator of S_{}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of occurrences of `s_k`.
    pub fn count(&self, k: usize) -> usize {
        self.letters.iter().filter(|&&i| i == k).count()
    }

    pub fn product(&self) -> Permutation {
        let mut w = Permutation::identity(self.n);
        for &i in &self.letters {
            w.mul_generator(i);
        }
        w
    }
}

/// A word is reduced iff its length equals the inversion count of its product.
pub fn is_reduced(w: &Word) -> Result<bool> {
    w.check()?;
    Ok(w.product().inversions() == w.len())
}

/// Extends a reduced word to a reduced word of the longest permutation by
/// appending the leftmost length-increasing generator until none remains.
pub fn complete_to_w0(w: &Word) -> Result<Word> {
    if !is_reduced(w)? {
        return Err(invalid("complete_to_w0 needs a reduced word"));
    }
    let mut perm = w.product();
    let mut out = w.clone();
    while let Some(i) = (1..w.n).find(|&i| !perm.has_descent(i)) {
        perm.mul_generator(i);
        out.letters.push(i);
    }
    Ok(out)
}
