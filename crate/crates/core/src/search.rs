//! Exact computation of `M(k,n)` (maximum multiplicity of `s_k` in a reduced
//! word of `w_0`) by two independent methods, plus the numeric upper bounds.
//!
//! * [`max_multiplicity_path_dfs`] searches monotone weakly separated paths
//!   depth-first with an admissible arc-weight bound.
//! * [`max_multiplicity_weak_order_dp`] runs a dynamic program over the right
//!   weak order of `S_n`; reduced words of `w_0` are its maximal chains.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{contradiction, invalid, Error, Result};
use crate::path::{path_to_word, weakly_separated_masks, word_to_path, KSubset, MonotonePath};
use crate::word::{complete_to_w0, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PathDfs,
    WeakOrderDp,
}

/// Objective for the weak-order dynamic program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DpMode {
    /// Maximum number of `s_k`.
    Max,
    /// Minimum number of `s_k`.
    Min,
    /// Maximum number of letters in `{s_k, s_{n-k}}`.
    MaxPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Path(MonotonePath),
    Word(Word),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub k: usize,
    pub n: usize,
    pub value: usize,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl SearchResult {
    /// Whether the witness certifies the value.
    pub fn witness_certifies(&self, mode: DpMode) -> bool {
        match &self.witness {
            None => true,
            Some(Witness::Path(p)) => p.is_valid() && p.steps() == self.value,
            Some(Witness::Word(w)) => {
                let count = match mode {
                    DpMode::Max | DpMode::Min => w.count(self.k),
                    DpMode::MaxPair => w
                        .letters
                        .iter()
                        .filter(|&&i| i == self.k || i == self.n - self.k)
                        .count(),
                };
                count == self.value
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct DfsOptions {
    /// Disable the arc-weight bound and explore every path.
    pub exhaustive: bool,
    /// Worker threads for top-level branches; `1` runs on the calling thread.
    pub jobs: usize,
    pub caps: Caps,
}

impl Default for DfsOptions {
    fn default() -> Self {
        Self {
            exhaustive: false,
            jobs: 1,
            caps: Caps::default(),
        }
    }
}

fn check_range(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(invalid(format!("need 1 <= k <= n-1, got k={k}, n={n}")));
    }
    Ok(())
}

/// The first `k` terms of `1, 1/2, 1/2, 1/3, 1/3, 1/3, …`.
pub fn series_prefix(k: usize) -> Ratio<i64> {
    let mut sum = Ratio::from_integer(0);
    let mut t = 1i64;
    let mut left = k;
    while left > 0 {
        let take = left.min(t as usize);
        sum += Ratio::new(take as i64, t);
        left -= take;
        t += 1;
    }
    sum
}

/// `n · (1 + 1/2 + 1/2 + 1/3 + …)` with `k` terms.
pub fn series_upper_bound(k: usize, n: usize) -> Result<Ratio<i64>> {
    check_range(k, n)?;
    Ok(series_prefix(k) * Ratio::from_integer(n as i64))
}

/// `√(2k) · n`.
pub fn sqrt_upper_bound(k: usize, n: usize) -> f64 {
    (2.0 * k as f64).sqrt() * n as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: usize,
    pub n: usize,
    pub value: usize,
    pub series_bound: Ratio<i64>,
    pub sqrt_bound: f64,
}

impl BoundReport {
    pub fn new(k: usize, n: usize, value: usize) -> Result<Self> {
        Ok(Self {
            k,
            n,
            value,
            series_bound: series_upper_bound(k, n)?,
            sqrt_bound: sqrt_upper_bound(k, n),
        })
    }

    /// `value ≤ series ≤ sqrt·(1+ε)`.
    pub fn holds(&self) -> bool {
        let series = *self.series_bound.numer() as f64 / *self.series_bound.denom() as f64;
        Ratio::from_integer(self.value as i64) <= self.series_bound
            && series <= self.sqrt_bound * (1.0 + 1e-12)
            && (self.value as f64) <= self.sqrt_bound
    }
}

/// Shared state of the path search over a fixed `(k, n)`.
struct Dfs {
    n: usize,
    target: u64,
    /// `lcm(1..n)`; arc weights are stored as integer multiples of `1/scale`.
    scale: i64,
    /// Per-strip capacity: the largest weight any path can place over `[i, i+1]`.
    capacity: Vec<i64>,
    exhaustive: bool,
}

struct Frame {
    path: Vec<u64>,
    strip: Vec<i64>,
}

impl Dfs {
    fn new(k: usize, n: usize, exhaustive: bool) -> Self {
        let scale = (1..=n as i64).fold(1, |acc, t| acc.lcm(&t));
        let capacity = (0..n)
            .map(|i| {
                if i == 0 {
                    return 0;
                }
                let pieces = k.min(i).min(n - i);
                let r = series_prefix(pieces) * Ratio::from_integer(scale);
                debug_assert!(r.is_integer());
                r.to_integer()
            })
            .collect();
        Self {
            n,
            target: KSubset::terminal(k, n).mask(),
            scale,
            capacity,
            exhaustive,
        }
    }

    /// Candidate successors of `set`, shortest swaps first.
    fn successors(&self, set: u64) -> Vec<(u64, u32, u32)> {
        let mut out = Vec::new();
        for x in 1..=self.n as u32 {
            if set & (1 << (x - 1)) == 0 {
                continue;
            }
            for y in x + 1..=self.n as u32 {
                if set & (1 << (y - 1)) == 0 {
                    out.push((set & !(1 << (x - 1)) | 1 << (y - 1), x, y));
                }
            }
        }
        out.sort_by_key(|&(_, x, y)| (y - x, x));
        out
    }

    /// Optimistic count of steps still possible from the current frame.
    fn remaining_bound(&self, frame: &Frame) -> usize {
        let last = *frame.path.last().expect("non-empty path");
        let lo = last.trailing_zeros() as usize + 1;
        let slack: i64 = (lo..self.n)
            .map(|i| self.capacity[i] - frame.strip[i])
            .sum();
        (slack.max(0) / self.scale) as usize
    }

    fn add_arc(&self, frame: &mut Frame, x: u32, y: u32, sign: i64) {
        let w = sign * self.scale / (y - x) as i64;
        for i in x..y {
            frame.strip[i as usize] += w;
        }
    }

    fn admissible(frame: &Frame, next: u64) -> bool {
        frame.path.iter().all(|&s| weakly_separated_masks(s, next))
    }

    fn run(&self, frame: &mut Frame, best: &AtomicUsize, best_path: &Mutex<Vec<u64>>) {
        let steps = frame.path.len() - 1;
        let last = *frame.path.last().unwrap();
        if last == self.target {
            if best.fetch_max(steps, Ordering::SeqCst) < steps {
                let mut guard = best_path.lock().unwrap();
                if guard.len() < frame.path.len() {
                    *guard = frame.path.clone();
                }
            }
            return;
        }
        if !self.exhaustive && steps + self.remaining_bound(frame) <= best.load(Ordering::Relaxed) {
            return;
        }
        for (next, x, y) in self.successors(last) {
            if !Self::admissible(frame, next) {
                continue;
            }
            frame.path.push(next);
            self.add_arc(frame, x, y, 1);
            self.run(frame, best, best_path);
            self.add_arc(frame, x, y, -1);
            frame.path.pop();
        }
    }
}

fn dfs_longest(k: usize, n: usize, opts: &DfsOptions) -> Result<MonotonePath> {
    let dfs = Dfs::new(k, n, opts.exhaustive);
    let start = KSubset::initial(k).mask();
    let best = AtomicUsize::new(0);
    let best_path = Mutex::new(vec![start]);
    let root = Frame {
        path: vec![start],
        strip: vec![0; n],
    };
    let branches: Vec<(u64, u32, u32)> = dfs.successors(start);
    let explore = |&(next, x, y): &(u64, u32, u32)| {
        let mut frame = Frame {
            path: root.path.clone(),
            strip: root.strip.clone(),
        };
        frame.path.push(next);
        dfs.add_arc(&mut frame, x, y, 1);
        dfs.run(&mut frame, &best, &best_path);
    };
    if start == dfs.target {
        return Ok(MonotonePath::new(k, n, vec![KSubset::from_mask(start)]));
    }
    if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Resource(e.to_string()))?;
        pool.install(|| branches.par_iter().for_each(explore));
    } else {
        branches.iter().for_each(explore);
    }
    let masks = best_path.into_inner().unwrap();
    let path = MonotonePath::new(k, n, masks.into_iter().map(KSubset::from_mask).collect());
    if path.last() != Some(&KSubset::terminal(k, n)) {
        return Err(contradiction(format!(
            "no path from 1..{k} to the terminal set for n={n}"
        )));
    }
    Ok(path)
}

/// Conjugates a reduced word of `w_0` by `w_0`, sending `s_i` to `s_{n-i}`.
fn mirror_word(w: &Word) -> Word {
    Word {
        n: w.n,
        letters: w.letters.iter().map(|&i| w.n - i).collect(),
    }
}

/// `M(k, n)` by depth-first search over monotone weakly separated paths.
/// Uses `M(k,n) = M(n-k,n)` to search with `min(k, n-k)`.
pub fn max_multiplicity_path_dfs(k: usize, n: usize, opts: &DfsOptions) -> Result<SearchResult> {
    check_range(k, n)?;
    let kk = k.min(n - k);
    if kk > opts.caps.dfs_k || n > opts.caps.dfs_n || n > 63 {
        return Err(Error::Resource(format!(
            "path-dfs caps are k <= {}, n <= {}; got k={kk}, n={n}",
            opts.caps.dfs_k, opts.caps.dfs_n
        )));
    }
    let mut path = dfs_longest(kk, n, opts)?;
    if kk != k {
        let word = complete_to_w0(&path_to_word(&path)?)?;
        path = word_to_path(&mirror_word(&word), k)?;
    }
    let value = path.steps();
    Ok(SearchResult {
        k,
        n,
        value,
        witness: Some(Witness::Path(path)),
        method: Method::PathDfs,
    })
}

/// Visits every monotone weakly separated path that starts at `{1..k}`.
/// With `complete_only`, only paths ending at `{n-k+1..n}` are reported.
/// Returning `false` from the visitor stops the enumeration.
pub fn for_each_path<F>(k: usize, n: usize, complete_only: bool, mut visit: F) -> Result<()>
where
    F: FnMut(&[u64]) -> bool,
{
    check_range(k, n)?;
    if n > 63 {
        return Err(Error::Resource("ground set larger than 63".into()));
    }
    let dfs = Dfs::new(k, n, true);
    let mut path = vec![KSubset::initial(k).mask()];
    fn go<F: FnMut(&[u64]) -> bool>(
        dfs: &Dfs,
        path: &mut Vec<u64>,
        complete_only: bool,
        visit: &mut F,
    ) -> bool {
        let last = *path.last().unwrap();
        if (!complete_only || last == dfs.target) && !visit(path) {
            return false;
        }
        for (next, _, _) in dfs.successors(last) {
            if path.iter().all(|&s| weakly_separated_masks(s, next)) {
                path.push(next);
                let more = go(dfs, path, complete_only, visit);
                path.pop();
                if !more {
                    return false;
                }
            }
        }
        true
    }
    go(&dfs, &mut path, complete_only, &mut visit);
    Ok(())
}

pub fn masks_to_path(k: usize, n: usize, masks: &[u64]) -> MonotonePath {
    MonotonePath::new(k, n, masks.iter().map(|&m| KSubset::from_mask(m)).collect())
}

/// Uniformly random walk from `{1..k}` that stops at `{n-k+1..n}`. Every
/// valid prefix extends to the terminal set, so the walk never gets stuck.
pub fn random_complete_path<R: rand::Rng>(k: usize, n: usize, rng: &mut R) -> Result<MonotonePath> {
    check_range(k, n)?;
    let dfs = Dfs::new(k, n, true);
    let mut path = vec![KSubset::initial(k).mask()];
    while *path.last().unwrap() != dfs.target {
        let options: Vec<u64> = dfs
            .successors(*path.last().unwrap())
            .into_iter()
            .map(|(m, _, _)| m)
            .filter(|&m| path.iter().all(|&s| weakly_separated_masks(s, m)))
            .collect();
        if options.is_empty() {
            return Err(contradiction(format!(
                "path {} cannot be extended",
                masks_to_path(k, n, &path)
            )));
        }
        path.push(options[rng.gen_range(0..options.len())]);
    }
    Ok(masks_to_path(k, n, &path))
}

const FACTORIALS: [usize; 13] = [
    1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600,
];

/// Longest or shortest weighted maximal chain in the right weak order of `S_n`.
/// Permutations are indexed by the rank of their Lehmer code; one value per
/// permutation is kept and levels are processed in order of length.
pub fn max_multiplicity_weak_order_dp(
    k: usize,
    n: usize,
    mode: DpMode,
    caps: &Caps,
) -> Result<SearchResult> {
    check_range(k, n)?;
    if n > caps.dp_n || n > 12 {
        return Err(Error::Resource(format!(
            "weak-order-dp cap is n <= {}; got n={n}",
            caps.dp_n.min(12)
        )));
    }
    let weight = |i: usize| -> i16 {
        let hit = match mode {
            DpMode::Max | DpMode::Min => i == k,
            DpMode::MaxPair => i == k || i == n - k,
        };
        hit as i16
    };
    let total = FACTORIALS[n];
    // place value of code digit j (0-based position)
    let place: Vec<usize> = (0..n).map(|j| FACTORIALS[n - 1 - j]).collect();
    let decode = |mut r: usize, code: &mut [u8]| {
        for j in 0..n {
            code[j] = (r / place[j]) as u8;
            r %= place[j];
        }
    };
    let max_len = n * (n - 1) / 2;
    let mut by_len: Vec<Vec<u32>> = vec![Vec::new(); max_len + 1];
    let mut code = vec![0u8; n];
    for r in 0..total {
        decode(r, &mut code);
        let len: usize = code.iter().map(|&c| c as usize).sum();
        by_len[len].push(r as u32);
    }
    let unset = match mode {
        DpMode::Min => i16::MAX,
        _ => i16::MIN,
    };
    let better = |a: i16, b: i16| match mode {
        DpMode::Min => a < b,
        _ => a > b,
    };
    let mut value = vec![unset; total];
    value[0] = 0;
    // rank of w·s_i given w's code, for a right descent at position i (1-based)
    let down = |r: usize, code: &[u8], i: usize| -> usize {
        let (a, b) = (code[i - 1] as usize, code[i] as usize);
        r - a * place[i - 1] - b * place[i] + b * place[i - 1] + (a - 1) * place[i]
    };
    for level in by_len.iter().skip(1) {
        for &r in level {
            let r = r as usize;
            decode(r, &mut code);
            let mut best = unset;
            for i in 1..n {
                if code[i - 1] > code[i] {
                    let cand = value[down(r, &code, i)] + weight(i);
                    if best == unset || better(cand, best) {
                        best = cand;
                    }
                }
            }
            value[r] = best;
        }
    }
    // walk back down from w_0, whose code is (n-1, n-2, …, 0)
    let mut letters = Vec::with_capacity(max_len);
    let mut r = total - 1;
    while r != 0 {
        decode(r, &mut code);
        let i = (1..n)
            .find(|&i| code[i - 1] > code[i] && value[down(r, &code, i)] + weight(i) == value[r])
            .ok_or_else(|| contradiction("weak-order backtrack lost the optimum"))?;
        letters.push(i);
        r = down(r, &code, i);
    }
    letters.reverse();
    Ok(SearchResult {
        k,
        n,
        value: value[total - 1] as usize,
        witness: Some(Witness::Word(Word { n, letters })),
        method: Method::WeakOrderDp,
    })
}

/// Superadditivity and monotonicity of `M(k, ·)` at `(n, m)`:
/// `M(k,n) ≤ M(k,m)` and `M(k,n) + M(k,m) ≤ M(k,n+m)`.
pub fn check_superadditivity(k: usize, n: usize, m: usize, opts: &DfsOptions) -> Result<bool> {
    if !(k < n && n <= m) {
        return Err(invalid(format!("need k < n <= m, got k={k}, n={n}, m={m}")));
    }
    let value = |size| max_multiplicity_path_dfs(k, size, opts).map(|r| r.value);
    let (a, b, c) = (value(n)?, value(m)?, value(n + m)?);
    Ok(a <= b && a + b <= c)
}
