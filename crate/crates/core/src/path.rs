//! k-subsets, weak separation, and monotone weakly separated paths, together
//! with the translation between reduced words and such paths.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{contradiction, invalid, Result};
use crate::word::{is_reduced, Permutation, Word};

/// A strictly increasing list of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct KSubset(Vec<u32>);

impl KSubset {
    /// Builds a subset from arbitrary-order distinct positive elements.
    pub fn new(mut elems: Vec<u32>) -> Result<Self> {
        elems.sort_unstable();
        if elems.first() == Some(&0) {
            return Err(invalid("subset elements must be positive"));
        }
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid(format!("repeated element in {elems:?}")));
        }
        Ok(Self(elems))
    }

    /// `{1, …, k}`.
    pub fn initial(k: usize) -> Self {
        Self((1..=k as u32).collect())
    }

    /// `{n-k+1, …, n}`.
    pub fn terminal(k: usize, n: usize) -> Self {
        Self(((n - k + 1) as u32..=n as u32).collect())
    }

    pub fn from_mask(mut mask: u64) -> Self {
        let mut v = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            v.push(mask.trailing_zeros() + 1);
            mask &= mask - 1;
        }
        Self(v)
    }

    /// Bit `i-1` set for each element `i`; elements must be at most 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &e| m | 1 << (e - 1))
    }

    pub fn elems(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn shifted(&self, t: i64) -> Result<Self> {
        self.0
            .iter()
            .map(|&e| {
                u32::try_from(e as i64 + t)
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| invalid(format!("shift by {t} leaves the positive integers")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// Elements of `self` not in `other`.
    pub fn minus(&self, other: &Self) -> Vec<u32> {
        self.0
            .iter()
            .copied()
            .filter(|&e| !other.contains(e))
            .collect()
    }
}

impl TryFrom<Vec<u32>> for KSubset {
    type Error = crate::Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<KSubset> for Vec<u32> {
    fn from(s: KSubset) -> Self {
        s.0
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|&e| e < 10);
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        if compact {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

/// Weak separation on bitmasks: `max(I−J) < min(J−I)` or the reverse.
#[inline]
pub fn weakly_separated_masks(i: u64, j: u64) -> bool {
    let a = i & !j;
    let b = j & !i;
    if a == 0 || b == 0 {
        return true;
    }
    let top = |m: u64| 63 - m.leading_zeros();
    let bottom = |m: u64| m.trailing_zeros();
    top(a) < bottom(b) || top(b) < bottom(a)
}

pub fn is_weakly_separated(i: &KSubset, j: &KSubset) -> Result<bool> {
    if i.len() != j.len() {
        return Err(invalid(format!(
            "weak separation compares equal-size sets, got {} and {}",
            i.len(),
            j.len()
        )));
    }
    let a = i.minus(j);
    let b = j.minus(i);
    Ok(match (a.last(), b.first(), b.last(), a.first()) {
        (Some(&amax), Some(&bmin), Some(&bmax), Some(&amin)) => amax < bmin || bmax < amin,
        _ => true,
    })
}

/// The first reason a sequence of sets fails to be a monotone weakly separated path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathViolation {
    Empty,
    WrongSize {
        index: usize,
    },
    OutOfRange {
        index: usize,
    },
    /// Step `index-1 → index` is not a single swap `x → y` with `y > x`.
    NotMonotone {
        index: usize,
    },
    NotWeaklySeparated {
        first: usize,
        second: usize,
    },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "path has no sets"),
            Self::WrongSize { index } => write!(f, "set {index} has the wrong size"),
            Self::OutOfRange { index } => write!(f, "set {index} leaves the ground set"),
            Self::NotMonotone { index } => write!(f, "step into set {index} is not monotone"),
            Self::NotWeaklySeparated { first, second } => {
                write!(f, "sets {first} and {second} are not weakly separated")
            }
        }
    }
}

/// A sequence of k-subsets of `[n]`. Construction does not validate; use
/// [`MonotonePath::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonotonePath {
    pub k: usize,
    pub n: usize,
    pub sets: Vec<KSubset>,
}

impl MonotonePath {
    pub fn new(k: usize, n: usize, sets: Vec<KSubset>) -> Self {
        Self { k, n, sets }
    }

    /// Parses the compact notation `123-124-134`, one digit per element.
    pub fn parse_compact(n: usize, text: &str) -> Result<Self> {
        let sets = text
            .split('-')
            .map(|s| {
                s.trim()
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .ok_or_else(|| invalid(format!("bad digit {c:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .and_then(KSubset::new)
            })
            .collect::<Result<Vec<_>>>()?;
        let k = sets.first().map_or(0, KSubset::len);
        Ok(Self { k, n, sets })
    }

    /// Number of steps, `len(P) − 1`.
    pub fn steps(&self) -> usize {
        self.sets.len().saturating_sub(1)
    }

    pub fn first(&self) -> Option<&KSubset> {
        self.sets.first()
    }

    pub fn last(&self) -> Option<&KSubset> {
        self.sets.last()
    }

    /// The `(removed, added)` pair of each step; `None` if some step is not a single swap.
    pub fn step_pairs(&self) -> Option<Vec<(u32, u32)>> {
        self.sets
            .windows(2)
            .map(|w| match (&w[0].minus(&w[1])[..], &w[1].minus(&w[0])[..]) {
                ([x], [y]) => Some((*x, *y)),
                _ => None,
            })
            .collect()
    }

    /// Checks every set's shape, every step's monotonicity, and weak separation
    /// of every pair of sets.
    pub fn validate(&self) -> Result<(), PathViolation> {
        if self.sets.is_empty() {
            return Err(PathViolation::Empty);
        }
        for (index, s) in self.sets.iter().enumerate() {
            if s.len() != self.k {
                return Err(PathViolation::WrongSize { index });
            }
            if s.max().is_some_and(|m| m as usize > self.n) {
                return Err(PathViolation::OutOfRange { index });
            }
        }
        for index in 1..self.sets.len() {
            let removed = self.sets[index - 1].minus(&self.sets[index]);
            let added = self.sets[index].minus(&self.sets[index - 1]);
            match (&removed[..], &added[..]) {
                ([x], [y]) if y > x => {}
                _ => return Err(PathViolation::NotMonotone { index }),
            }
        }
        for first in 0..self.sets.len() {
            for second in first + 1..self.sets.len() {
                // sizes already checked
                if !is_weakly_separated(&self.sets[first], &self.sets[second]).unwrap_or(false) {
                    return Err(PathViolation::NotWeaklySeparated { first, second });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }
}

impl fmt::Display for MonotonePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("-"))
    }
}

/// The path `P_k(w)`: the value set of the first `k` positions, sampled after
/// every occurrence of `s_k` in `w`.
pub fn word_to_path(w: &Word, k: usize) -> Result<MonotonePath> {
    if k == 0 || k >= w.n {
        return Err(invalid(format!("k = {k} out of range for S_{}", w.n)));
    }
    if !is_reduced(w)? {
        return Err(invalid("word_to_path needs a reduced word"));
    }
    let mut perm = Permutation::identity(w.n);
    let top = |p: &Permutation| KSubset::new(p.oneline()[..k].to_vec());
    let mut sets = vec![top(&perm)?];
    for &i in &w.letters {
        perm.mul_generator(i);
        if i == k {
            sets.push(top(&perm)?);
        }
    }
    Ok(MonotonePath::new(k, w.n, sets))
}

/// A reduced word whose path is `path`, built by moving the outgoing value to
/// position `k`, the incoming value to position `k+1`, and applying `s_k`.
pub fn path_to_word(path: &MonotonePath) -> Result<Word> {
    path.validate()
        .map_err(|v| invalid(format!("not a monotone weakly separated path: {v}")))?;
    let k = path.k;
    if k == 0 || k >= path.n {
        return Err(invalid(format!("k = {k} out of range for n = {}", path.n)));
    }
    if path.sets[0] != KSubset::initial(k) {
        return Err(invalid("path must start at {1..k}"));
    }
    let mut perm = Permutation::identity(path.n);
    let mut letters = Vec::new();
    for (x, y) in path
        .step_pairs()
        .expect("validated path has single-swap steps")
    {
        let a = perm.position_of(x).expect("value present");
        let b = perm.position_of(y).expect("value present");
        debug_assert!(a <= k && b > k);
        for i in a..k {
            perm.mul_generator(i);
            letters.push(i);
        }
        for i in (k + 1..b).rev() {
            perm.mul_generator(i);
            letters.push(i);
        }
        perm.mul_generator(k);
        letters.push(k);
    }
    let word = Word { n: path.n, letters };
    if !is_reduced(&word)? {
        return Err(contradiction(format!(
            "path {path} produced a non-reduced word"
        )));
    }
    Ok(word)
}
