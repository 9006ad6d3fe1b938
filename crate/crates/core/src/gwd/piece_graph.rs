//! The graph of simple pieces: nodes are the reachable rank permutations,
//! edges the legal simple moves weighted by level-`k` crossings and falls.
//! Its best crossings-per-fall cycle is `c_k`.

use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;
use serde::Serialize;

use super::diagram::{gwd_to_path_indexed, ExplicitDiagram};
use super::ratio::{max_ratio_cycle, RatioEdge};
use super::state::{apply_unchecked, legal_moves, Move, Ranks};
use crate::caps::Caps;
use crate::error::{contradiction, Error, Result};
use crate::path::KSubset;
use crate::patterns::{PatternFamily, RepeatablePattern};
use crate::rational;
use crate::search::series_prefix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PieceEdge {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "move")]
    pub mv: Move,
    pub dkappa: u8,
    pub dfall: u8,
}

#[derive(Clone, Debug)]
pub struct PieceGraph {
    pub k: usize,
    /// Node 0 is the identity.
    pub nodes: Vec<Ranks>,
    pub edges: Vec<PieceEdge>,
    /// False when exploration stopped at a node limit; edges leaving the
    /// explored part are then dropped.
    pub complete: bool,
    index: HashMap<Ranks, usize>,
}

/// `k^(k²+2k)`, saturating.
pub fn state_count_bound(k: usize) -> u128 {
    let e = (k * k + 2 * k) as u32;
    (k as u128).checked_pow(e).unwrap_or(u128::MAX)
}

/// Breadth-first exploration from the identity, stopping after `node_limit`
/// nodes. Checks on the way that every state keeps fewer than `k` larger
/// ranks above each position, that inversions stay within the first
/// `k² + 2k` levels, and that every crossing adds exactly one inversion.
pub fn explore(k: usize, node_limit: usize) -> Result<PieceGraph> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let mut g = PieceGraph {
        k,
        nodes: vec![Ranks::identity()],
        edges: Vec::new(),
        complete: true,
        index: HashMap::from([(Ranks::identity(), 0)]),
    };
    let reach = k * k + 2 * k;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let pi = g.nodes[u].clone();
        for m in legal_moves(&pi, k) {
            let next = apply_unchecked(&pi, m);
            let to = match g.index.get(&next) {
                Some(&v) => v,
                None if g.nodes.len() >= node_limit => {
                    g.complete = false;
                    continue;
                }
                None => {
                    if next.max_larger_above() >= k {
                        return Err(contradiction(format!(
                            "{next} has {k} larger ranks above a level"
                        )));
                    }
                    if next.last_inverted_level() > reach {
                        return Err(contradiction(format!(
                            "{next} has inversions below level {reach}"
                        )));
                    }
                    let v = g.nodes.len();
                    g.index.insert(next.clone(), v);
                    g.nodes.push(next.clone());
                    queue.push_back(v);
                    v
                }
            };
            let is_fall = matches!(m, Move::Fall(_));
            if !is_fall && next.inversions() != pi.inversions() + 1 {
                return Err(contradiction(format!(
                    "{m} from {pi} does not add one inversion"
                )));
            }
            g.edges.push(PieceEdge {
                from: u,
                to,
                mv: m,
                dkappa: m.hits_level(k) as u8,
                dfall: is_fall as u8,
            });
        }
    }
    if g.complete && g.nodes.len() as u128 > state_count_bound(k) {
        return Err(contradiction(format!(
            "{} states exceed the bound {}",
            g.nodes.len(),
            state_count_bound(k)
        )));
    }
    Ok(g)
}

/// The full piece graph, subject to the `tk_k` and `tk_nodes` caps.
pub fn enumerate_tk(k: usize, caps: &Caps) -> Result<PieceGraph> {
    if k > caps.tk_k {
        return Err(Error::Resource(format!(
            "k = {k} is above the piece-graph cap {}",
            caps.tk_k
        )));
    }
    let g = explore(k, caps.tk_nodes)?;
    if !g.complete {
        return Err(Error::Resource(format!(
            "more than {} states for k = {k}",
            caps.tk_nodes
        )));
    }
    Ok(g)
}

/// An optimal cycle: its ratio and edges in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalCycle {
    pub ratio: Ratio<i64>,
    pub edges: Vec<usize>,
}

impl PieceGraph {
    pub fn node(&self, pi: &Ranks) -> Option<usize> {
        self.index.get(pi).copied()
    }

    pub fn moves_of(&self, edges: &[usize]) -> Vec<Move> {
        edges.iter().map(|&i| self.edges[i].mv).collect()
    }

    /// Maximum level-`k` crossings per fall over all cycles.
    pub fn max_ratio_cycle(&self) -> Result<OptimalCycle> {
        let edges: Vec<RatioEdge> = self
            .edges
            .iter()
            .map(|e| RatioEdge {
                from: e.from,
                to: e.to,
                gain: e.dkappa as i64,
                cost: e.dfall as i64,
            })
            .collect();
        let best = max_ratio_cycle(self.nodes.len(), &edges)?
            .ok_or_else(|| contradiction("piece graph without cycles"))?;
        Ok(OptimalCycle {
            ratio: best.ratio,
            edges: best.edges,
        })
    }

    /// Shortest move sequence from the identity to `target`, using only
    /// crossings when `crossings_only`.
    fn prefix_to(&self, target: usize, crossings_only: bool) -> Option<Vec<Move>> {
        let mut via: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if !(crossings_only && e.dfall == 1) {
                out[e.from].push(i);
            }
        }
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            if u == target {
                let mut moves = Vec::new();
                let mut x = u;
                while let Some(i) = via[x] {
                    moves.push(self.edges[i].mv);
                    x = self.edges[i].from;
                }
                moves.reverse();
                return Some(moves);
            }
            for &i in &out[u] {
                let v = self.edges[i].to;
                if !seen[v] {
                    seen[v] = true;
                    via[v] = Some(i);
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

/// A pattern read off a cycle, with the diagram prefix used to reach it.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractedPattern {
    pub pattern: RepeatablePattern,
    pub prefix: Vec<Move>,
    /// Falls in the prefix; zero unless no crossing-only prefix exists.
    pub prefix_falls: usize,
    pub cycle: Vec<Move>,
}

/// Instantiates prefix + three copies of the cycle as a diagram and reads the
/// top-`k` sets sampled during the middle copy as a repeatable pattern,
/// shifted to start at 1.
pub fn extract_repeatable_pattern(g: &PieceGraph, cycle: &[usize]) -> Result<ExtractedPattern> {
    let k = g.k;
    if cycle.is_empty() {
        return Err(Error::InvalidInput("empty cycle".into()));
    }
    for w in 0..cycle.len() {
        let (a, b) = (cycle[w], cycle[(w + 1) % cycle.len()]);
        if g.edges[a].to != g.edges[b].from {
            return Err(Error::InvalidInput("edges do not form a cycle".into()));
        }
    }
    // rotate to the entry reachable by the shortest crossing-only prefix,
    // falling back to any prefix
    let pick = |crossings_only: bool| {
        (0..cycle.len())
            .filter_map(|r| {
                g.prefix_to(g.edges[cycle[r]].from, crossings_only)
                    .map(|p| (p.len(), r, p))
            })
            .min_by_key(|(len, r, _)| (*len, *r))
    };
    let (_, rot, prefix) = pick(true)
        .or_else(|| pick(false))
        .ok_or_else(|| contradiction("cycle unreachable from the identity"))?;
    let rotated: Vec<usize> = cycle[rot..].iter().chain(&cycle[..rot]).copied().collect();
    let cycle_moves = g.moves_of(&rotated);
    let gain: usize = rotated.iter().map(|&i| g.edges[i].dkappa as usize).sum();
    let d: usize = rotated.iter().map(|&i| g.edges[i].dfall as usize).sum();
    if d == 0 {
        return Err(contradiction("cycle without falls"));
    }

    let mut moves = prefix.clone();
    for _ in 0..3 {
        moves.extend_from_slice(&cycle_moves);
    }
    let diagram = ExplicitDiagram::new(k, moves);
    if !diagram.is_simple()? {
        return Err(contradiction(
            "cycle instantiates to a diagram that is not simple",
        ));
    }
    let (path, at) = gwd_to_path_indexed(&diagram)?;
    let t0 = prefix.len() + cycle_moves.len();
    let t1 = t0 + cycle_moves.len();
    let start = at.iter().filter(|&&t| t < t0).count();
    let taken = at.iter().filter(|&&t| t0 <= t && t < t1).count();
    if taken != gain {
        return Err(contradiction(format!(
            "middle copy sampled {taken} sets, expected {gain}"
        )));
    }
    let sets = &path.sets[start..=start + gain];
    let lo = KSubset::min(&sets[0]).unwrap_or(1) as i64;
    let sets = sets
        .iter()
        .map(|s| s.shifted(1 - lo))
        .collect::<Result<Vec<_>>>()?;
    let pattern = RepeatablePattern::from_sets(k, d as u32, sets);
    pattern
        .check_shift()
        .map_err(|e| contradiction(format!("extracted pattern is not periodic: {e}")))?;
    if !pattern.is_repeatable()? {
        return Err(contradiction(format!(
            "extracted pattern {} is not repeatable",
            pattern.base
        )));
    }
    let prefix_falls = prefix.iter().filter(|m| matches!(m, Move::Fall(_))).count();
    Ok(ExtractedPattern {
        pattern,
        prefix,
        prefix_falls,
        cycle: cycle_moves,
    })
}

/// Result of the `c_k` computation.
#[derive(Clone, Debug, Serialize)]
pub struct CkReport {
    pub k: usize,
    /// Whether the whole state graph was explored, making `value` exact.
    pub exact: bool,
    #[serde(serialize_with = "rational::opt")]
    pub value: Option<Ratio<i64>>,
    #[serde(serialize_with = "rational::one")]
    pub lower: Ratio<i64>,
    #[serde(serialize_with = "rational::one")]
    pub upper: Ratio<i64>,
    pub nodes: usize,
    pub edges: usize,
    pub cycle: Vec<Move>,
    pub pattern: Option<ExtractedPattern>,
}

/// `c_k` from the full piece graph. Above the `tk_k` cap, or when the graph
/// outgrows `tk_nodes`, the explored part still yields a lower bound (its
/// cycles are genuine), combined with the built-in pattern density; the
/// upper bound is then the series bound on `M(k,n)/n`.
pub fn compute_ck(k: usize, caps: &Caps) -> Result<CkReport> {
    let g = explore(k, caps.tk_nodes)?;
    let best = g.max_ratio_cycle()?;
    let cycle = g.moves_of(&best.edges);
    let pattern = extract_repeatable_pattern(&g, &best.edges)?;
    if pattern.pattern.density() != best.ratio {
        return Err(contradiction(format!(
            "pattern density {} differs from the cycle ratio {}",
            pattern.pattern.density(),
            best.ratio
        )));
    }
    let (value, lower, upper) = if g.complete {
        (Some(best.ratio), best.ratio, best.ratio)
    } else {
        let builtin = PatternFamily::builtin(k).map(|f| f.pattern.density()).ok();
        let lower = builtin.map_or(best.ratio, |b| b.max(best.ratio));
        (None, lower, series_prefix(k))
    };
    Ok(CkReport {
        k,
        exact: g.complete,
        value,
        lower,
        upper,
        nodes: g.nodes.len(),
        edges: g.edges.len(),
        cycle,
        pattern: Some(pattern),
    })
}
