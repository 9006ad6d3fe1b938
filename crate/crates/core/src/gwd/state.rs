//! The finite encoding of a simple diagram at one moment: the level-to-rank
//! permutation of the wires still present, the number of fallen wires, and
//! the number of crossings at level `k` so far.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A single step of a generalized wiring diagram; levels are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "level", rename_all = "lowercase")]
pub enum Move {
    /// The wires at levels `h` and `h+1` swap.
    Cross(usize),
    /// The wire at level `h` leaves, meeting every wire below it.
    Fall(usize),
}

impl Move {
    pub fn level(self) -> usize {
        match self {
            Move::Cross(h) | Move::Fall(h) => h,
        }
    }

    /// Whether the move contributes an intersection at level `k`.
    pub fn hits_level(self, k: usize) -> bool {
        match self {
            Move::Cross(h) => h == k,
            Move::Fall(h) => h <= k,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Cross(h) => write!(f, "cross({h})"),
            Move::Fall(h) => write!(f, "fall({h})"),
        }
    }
}

/// Rank permutation of the remaining wires by level, with the trailing
/// fixed points trimmed so that equal states compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ranks(Vec<u32>);

impl Ranks {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn from_oneline(mut v: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; v.len() + 1];
        for &x in &v {
            if x == 0 || x as usize > v.len() || std::mem::replace(&mut seen[x as usize], true) {
                return Err(invalid(format!("{v:?} is not a permutation")));
            }
        }
        trim(&mut v);
        Ok(Self(v))
    }

    /// Rank at level `h`; levels past the stored prefix are fixed.
    pub fn at(&self, h: usize) -> u32 {
        self.0.get(h - 1).copied().unwrap_or(h as u32)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of larger ranks above level `i`.
    fn larger_above(&self, i: usize) -> usize {
        let v = self.at(i);
        (1..i).filter(|&j| self.at(j) > v).count()
    }

    /// Largest number of larger ranks above any level.
    pub fn max_larger_above(&self) -> usize {
        (1..=self.0.len())
            .map(|i| self.larger_above(i))
            .max()
            .unwrap_or(0)
    }

    /// Last level whose rank exceeds some rank below it.
    pub fn last_inverted_level(&self) -> usize {
        let v = &self.0;
        let mut suffix_min = u32::MAX;
        let mut last = 0;
        for i in (0..v.len()).rev() {
            if v[i] > suffix_min {
                last = last.max(i + 1);
            }
            suffix_min = suffix_min.min(v[i]);
        }
        last
    }

    pub fn inversions(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[j] < v[i]).count())
            .sum()
    }
}

fn trim(v: &mut Vec<u32>) {
    while v.last().is_some_and(|&x| x as usize == v.len()) {
        v.pop();
    }
}

impl fmt::Display for Ranks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let compact = self.0.len() < 10;
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(if compact { "" } else { "," }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GwdState {
    pub pi: Ranks,
    pub fallen: u64,
    pub kappa: u64,
}

impl GwdState {
    pub fn initial() -> Self {
        Self {
            pi: Ranks::identity(),
            fallen: 0,
            kappa: 0,
        }
    }
}

/// Whether `m` is a legal simple move from `pi`.
pub fn is_legal(pi: &Ranks, k: usize, m: Move) -> bool {
    match m {
        Move::Cross(h) => {
            if h == 0 {
                return false;
            }
            let (lo, hi) = (pi.at(h), pi.at(h + 1));
            lo < hi
                && !(h != k && hi == lo + 1)
                // after the swap, `lo` sits at h+1 under one more larger rank
                && pi.larger_above(h) + 1 < k
        }
        Move::Fall(h) => {
            if h == 0 {
                return false;
            }
            let v = pi.at(h);
            let len = pi.0.len().max(h);
            if (h + 1..=len).any(|j| pi.at(j) < v) {
                return false;
            }
            let next = (1..=len + 1)
                .find(|&j| pi.at(j) == v + 1)
                .expect("rank present");
            next < h || next - 1 == k
        }
    }
}

/// All legal simple moves from `pi`, crossings first, by level.
pub fn legal_moves(pi: &Ranks, k: usize) -> Vec<Move> {
    let top = pi.0.len().max(k) + 1;
    let mut out: Vec<Move> = (1..=top)
        .map(Move::Cross)
        .filter(|&m| is_legal(pi, k, m))
        .collect();
    out.extend((1..=top).map(Move::Fall).filter(|&m| is_legal(pi, k, m)));
    out
}

/// Applies a move without checking legality.
pub fn apply_unchecked(pi: &Ranks, m: Move) -> Ranks {
    let mut v = pi.0.clone();
    match m {
        Move::Cross(h) => {
            while v.len() < h + 1 {
                v.push(v.len() as u32 + 1);
            }
            v.swap(h - 1, h);
        }
        Move::Fall(h) => {
            while v.len() < h {
                v.push(v.len() as u32 + 1);
            }
            let gone = v.remove(h - 1);
            for x in &mut v {
                if *x > gone {
                    *x -= 1;
                }
            }
        }
    }
    trim(&mut v);
    Ranks(v)
}

pub fn apply_move(state: &GwdState, m: Move, k: usize) -> Result<GwdState> {
    if !is_legal(&state.pi, k, m) {
        return Err(invalid(format!(
            "{m} is not a legal simple move from {}",
            state.pi
        )));
    }
    Ok(GwdState {
        pi: apply_unchecked(&state.pi, m),
        fallen: state.fallen + matches!(m, Move::Fall(_)) as u64,
        kappa: state.kappa + m.hits_level(k) as u64,
    })
}
