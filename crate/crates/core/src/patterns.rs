//! Repeatable patterns: paths that can be chained with themselves under a
//! translation. Chaining copies of an optimal pattern gives long paths for
//! every `n`, and `L / d` bounds the asymptotic growth rate from below.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::path::{KSubset, MonotonePath};
use crate::search::for_each_path;

/// Chains `q` onto the end of `p`, translating `q` so that its first set
/// coincides with the last set of `p`. The result is validated.
pub fn concatenate(p: &MonotonePath, q: &MonotonePath) -> Result<MonotonePath> {
    let joined = concatenate_unchecked(p, q)?;
    joined
        .validate()
        .map_err(|v| invalid(format!("concatenation {joined} is not a valid path: {v}")))?;
    Ok(joined)
}

/// [`concatenate`] without the final validation.
pub fn concatenate_unchecked(p: &MonotonePath, q: &MonotonePath) -> Result<MonotonePath> {
    let (last, first) = match (p.last(), q.first()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(invalid("cannot concatenate an empty sequence")),
    };
    if p.k != q.k {
        return Err(invalid(format!("subset sizes differ: {} vs {}", p.k, q.k)));
    }
    let t = last.min().unwrap_or(0) as i64 - first.min().unwrap_or(0) as i64;
    if &first.shifted(t)? != last {
        return Err(invalid(format!("{last} is not a translate of {first}")));
    }
    let mut sets = p.sets[..p.sets.len() - 1].to_vec();
    for s in &q.sets {
        sets.push(s.shifted(t)?);
    }
    let n = sets.iter().filter_map(KSubset::max).max().unwrap_or(0) as usize;
    Ok(MonotonePath::new(p.k, n.max(p.n), sets))
}

/// A path `A_0, …, A_L` with `A_L = A_0 + d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatablePattern {
    pub base: MonotonePath,
    pub d: u32,
}

/// On-disk form `{"k":…, "d":…, "sets":[[…]]}`.
#[derive(Serialize, Deserialize)]
struct PatternFile {
    k: usize,
    d: u32,
    sets: Vec<KSubset>,
}

impl Serialize for RepeatablePattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PatternFile {
            k: self.base.k,
            d: self.d,
            sets: self.base.sets.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepeatablePattern {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let f = PatternFile::deserialize(de)?;
        Ok(Self::from_sets(f.k, f.d, f.sets))
    }
}

impl RepeatablePattern {
    /// No validation; see [`RepeatablePattern::check`].
    pub fn from_sets(k: usize, d: u32, sets: Vec<KSubset>) -> Self {
        let n = sets.iter().filter_map(KSubset::max).max().unwrap_or(0) as usize;
        Self {
            base: MonotonePath::new(k, n, sets),
            d,
        }
    }

    /// Parses compact notation, e.g. `12-13-23-34` with `d = 2`.
    pub fn parse(text: &str, d: u32) -> Result<Self> {
        let p = MonotonePath::parse_compact(0, text)?;
        Ok(Self::from_sets(p.k, d, p.sets))
    }

    /// Number of steps per period.
    pub fn steps(&self) -> usize {
        self.base.steps()
    }

    /// Distance between the smallest element of `A_0` and the largest of `A_L`.
    pub fn span(&self) -> u32 {
        let lo = self.base.first().and_then(KSubset::min).unwrap_or(0);
        let hi = self.base.last().and_then(KSubset::max).unwrap_or(0);
        hi.saturating_sub(lo)
    }

    /// Copies needed to certify every repetition: sets from copies at least
    /// `⌈span/d⌉` apart lie in disjoint ranges and are separated by order.
    pub fn certifying_copies(&self) -> usize {
        (self.span().div_ceil(self.d.max(1))) as usize + 1
    }

    /// The `m`-fold self-concatenation, unvalidated.
    pub fn repeat(&self, m: usize) -> Result<MonotonePath> {
        if m == 0 {
            return Err(invalid("repetition count must be positive"));
        }
        let mut out = self.base.clone();
        for _ in 1..m {
            out = concatenate_unchecked(&out, &self.base)?;
        }
        Ok(out)
    }

    /// Shape check: nonempty, positive shift, and `A_L = A_0 + d`.
    pub fn check_shift(&self) -> Result<()> {
        if self.d == 0 {
            return Err(invalid("shift must be positive"));
        }
        let (first, last) = match (self.base.first(), self.base.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(invalid("empty pattern")),
        };
        if &first.shifted(self.d as i64)? != last {
            return Err(invalid(format!(
                "last set {last} is not the first set {first} shifted by {}",
                self.d
            )));
        }
        Ok(())
    }

    pub fn is_repeatable(&self) -> Result<bool> {
        self.check_shift()?;
        Ok(self.repeat(self.certifying_copies())?.is_valid())
    }

    /// Steps per unit shift, `L / d`.
    pub fn density(&self) -> Ratio<i64> {
        Ratio::new(self.steps() as i64, self.d as i64)
    }
}

/// `is_repeatable` for a bare path and shift.
pub fn is_repeatable(pattern: &MonotonePath, d: u32) -> Result<bool> {
    RepeatablePattern {
        base: pattern.clone(),
        d,
    }
    .is_repeatable()
}

/// A repeatable pattern plus hand-made short paths; longer paths are built as
/// `pattern ∗ seed[n − d]`.
#[derive(Clone, Debug)]
pub struct PatternFamily {
    pub k: usize,
    pub pattern: RepeatablePattern,
    pub seeds: BTreeMap<usize, MonotonePath>,
}

impl PatternFamily {
    fn from_compact(k: usize, pattern: &str, d: u32, seeds: &[(usize, &str)]) -> Self {
        let seeds = seeds
            .iter()
            .map(|&(n, s)| (n, MonotonePath::parse_compact(n, s).expect("built-in seed")))
            .collect();
        Self {
            k,
            pattern: RepeatablePattern::parse(pattern, d).expect("built-in pattern"),
            seeds,
        }
    }

    /// Optimal families for `k ≤ 3`.
    pub fn builtin(k: usize) -> Result<Self> {
        Ok(match k {
            1 => Self::from_compact(1, "1-2", 1, &[(2, "1-2")]),
            2 => Self::from_compact(2, "12-13-23-34", 2, &[(3, "12-13-23"), (4, "12-13-23-34")]),
            3 => Self::from_compact(
                3,
                "123-124-125-145-245-345-456-457-567-578-678-789",
                6,
                &[
                    (4, "123-124-134-234"),
                    (5, "123-124-125-145-245-345"),
                    (6, "123-124-125-145-245-345-456"),
                    (7, "123-124-125-145-245-345-456-457-567"),
                    (8, "123-124-125-145-245-345-456-457-567-578-678"),
                    (9, "123-124-125-145-245-345-456-457-567-578-579-589-789"),
                ],
            ),
            _ => {
                return Err(Error::Unsupported(format!(
                    "no built-in pattern family for k={k}"
                )))
            }
        })
    }

    /// A validated path from `{1..k}` to `{n-k+1..n}`.
    pub fn assemble_witness(&self, n: usize) -> Result<MonotonePath> {
        if n < self.k + 1 {
            return Err(invalid(format!("need n >= {}, got {n}", self.k + 1)));
        }
        let d = self.pattern.d as usize;
        let mut base = n;
        let mut copies = 0;
        while !self.seeds.contains_key(&base) {
            if base < d + self.k + 1 {
                return Err(invalid(format!(
                    "family for k={} does not cover n={n}",
                    self.k
                )));
            }
            base -= d;
            copies += 1;
        }
        let mut path = self.seeds[&base].clone();
        for _ in 0..copies {
            path = concatenate_unchecked(&self.pattern.base, &path)?;
        }
        path.n = n;
        path.validate()
            .map_err(|v| crate::error::contradiction(format!("assembled path {path}: {v}")))?;
        if path.last() != Some(&KSubset::terminal(self.k, n)) {
            return Err(crate::error::contradiction(format!(
                "assembled path {path} does not end at the terminal set"
            )));
        }
        Ok(path)
    }
}

/// Every repeatable pattern that starts at `{1..k}` and stays inside `[1, n]`,
/// found by scanning all path prefixes.
pub fn search_patterns(k: usize, n: usize) -> Result<Vec<RepeatablePattern>> {
    let mut found = Vec::new();
    let start = KSubset::initial(k).mask();
    let mut err = None;
    for_each_path(k, n, false, |masks| {
        let last = *masks.last().unwrap();
        if masks.len() > 1 && last.count_ones() as usize == k {
            let shift = last.trailing_zeros();
            if shift > 0 && last == start << shift {
                let p = RepeatablePattern {
                    base: crate::search::masks_to_path(k, n, masks),
                    d: shift,
                };
                match p.is_repeatable() {
                    Ok(true) => found.push(p),
                    Ok(false) => {}
                    Err(e) => {
                        err = Some(e);
                        return false;
                    }
                }
            }
        }
        true
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}
