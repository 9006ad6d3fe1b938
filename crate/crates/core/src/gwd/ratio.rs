//! Exact maximum gain/cost ratio over directed cycles.
//!
//! Costs are nonnegative and every cycle must have positive total cost. The
//! optimum is a fraction whose denominator is at most the cost of a simple
//! cycle, so it is located exactly by descending the Stern–Brocot tree; each
//! probe `λ = p/q` asks whether some cycle has `q·gain − p·cost` positive
//! (or nonnegative), answered by Bellman–Ford over integers.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_rational::Ratio;

use crate::error::{contradiction, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioEdge {
    pub from: usize,
    pub to: usize,
    pub gain: i64,
    pub cost: i64,
}

/// An optimal cycle as edge indices in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCycle {
    pub ratio: Ratio<i64>,
    pub edges: Vec<usize>,
}

/// Whether a cycle with positive `q·gain − p·cost` exists; with `strict`
/// false, nonnegative. Nonnegativity is reduced to positivity by scaling
/// every weight by `|V| + 1` and adding one, which turns a zero-weight simple
/// cycle positive but leaves every negative one negative.
fn has_cycle(nodes: usize, edges: &[RatioEdge], p: i64, q: i64, strict: bool) -> bool {
    let scale = if strict { 1 } else { nodes as i128 + 1 };
    let bump = if strict { 0 } else { 1 };
    let w: Vec<i128> = edges
        .iter()
        .map(|e| (q as i128 * e.gain as i128 - p as i128 * e.cost as i128) * scale + bump)
        .collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (i, e) in edges.iter().enumerate() {
        out[e.from].push(i);
    }
    // longest distances from a virtual source; a cycle in the predecessor
    // graph is always positive
    let mut dist = vec![0i128; nodes];
    let mut pred: Vec<Option<usize>> = vec![None; nodes];
    let mut queued = vec![true; nodes];
    let mut queue: VecDeque<usize> = (0..nodes).collect();
    let mut relaxations = 0usize;
    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        for &i in &out[u] {
            let v = edges[i].to;
            let cand = dist[u] + w[i];
            if cand > dist[v] {
                dist[v] = cand;
                pred[v] = Some(i);
                relaxations += 1;
                if relaxations.is_multiple_of(nodes.max(1)) && pred_has_cycle(edges, &pred) {
                    return true;
                }
                if !queued[v] {
                    queued[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    false
}

fn pred_has_cycle(edges: &[RatioEdge], pred: &[Option<usize>]) -> bool {
    // 0 unvisited, 1 on the current walk, 2 done
    let mut mark = vec![0u8; pred.len()];
    for s in 0..pred.len() {
        let mut v = s;
        while mark[v] == 0 {
            mark[v] = 1;
            match pred[v] {
                Some(i) => v = edges[i].from,
                None => break,
            }
        }
        let hit = mark[v] == 1 && pred[v].is_some();
        let mut u = s;
        while mark[u] == 1 {
            mark[u] = 2;
            match pred[u] {
                Some(i) => u = edges[i].from,
                None => break,
            }
        }
        if hit {
            return true;
        }
    }
    false
}

/// Where the optimum lies relative to `p/q`.
fn probe(nodes: usize, edges: &[RatioEdge], p: i64, q: i64) -> Ordering {
    if has_cycle(nodes, edges, p, q, true) {
        Ordering::Greater
    } else if has_cycle(nodes, edges, p, q, false) {
        Ordering::Equal
    } else {
        Ordering::Less
    }
}

/// Some cycle made of zero-cost edges, if any.
pub fn zero_cost_cycle(nodes: usize, edges: &[RatioEdge]) -> Option<Vec<usize>> {
    let keep: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].cost == 0).collect();
    find_cycle(nodes, edges, &keep)
}

/// A directed cycle within the edge subset `keep`, found by iterative DFS.
fn find_cycle(nodes: usize, edges: &[RatioEdge], keep: &[usize]) -> Option<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &i in keep {
        out[edges[i].from].push(i);
    }
    let mut state = vec![0u8; nodes];
    let mut via: Vec<Option<usize>> = vec![None; nodes];
    for s in 0..nodes {
        if state[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        state[s] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&i) = out[u].get(*next) {
                *next += 1;
                let v = edges[i].to;
                match state[v] {
                    0 => {
                        state[v] = 1;
                        via[v] = Some(i);
                        stack.push((v, 0));
                    }
                    1 => {
                        let mut cyc = vec![i];
                        let mut x = u;
                        while x != v {
                            let j = via[x].expect("on the DFS stack");
                            cyc.push(j);
                            x = edges[j].from;
                        }
                        cyc.reverse();
                        return Some(cyc);
                    }
                    _ => {}
                }
            } else {
                state[u] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Maximum of `Σ gain / Σ cost` over directed cycles, with an optimal simple
/// cycle; `None` for an acyclic graph. Costs must be nonnegative and no cycle
/// may have zero total cost.
pub fn max_ratio_cycle(nodes: usize, edges: &[RatioEdge]) -> Result<Option<RatioCycle>> {
    if edges
        .iter()
        .any(|e| e.cost < 0 || e.from >= nodes || e.to >= nodes)
    {
        return Err(contradiction("edge with negative cost or unknown endpoint"));
    }
    if let Some(c) = zero_cost_cycle(nodes, edges) {
        return Err(contradiction(format!(
            "cycle of {} edges without any cost",
            c.len()
        )));
    }
    if find_cycle(nodes, edges, &(0..edges.len()).collect::<Vec<_>>()).is_none() {
        return Ok(None);
    }
    let max_den = nodes as i64 * edges.iter().map(|e| e.cost).max().unwrap_or(1);
    let max_num = nodes as i64 * edges.iter().map(|e| e.gain.max(0)).max().unwrap_or(0) + 1;
    let cmp = |p: i64, q: i64| probe(nodes, edges, p, q);

    let (p, q) = match cmp(0, 1) {
        Ordering::Equal => (0, 1),
        Ordering::Less => return Err(contradiction("every cycle has negative gain")),
        Ordering::Greater => stern_brocot(cmp, max_num, max_den)?,
    };
    let ratio = Ratio::new(p, q);
    let cycle = tight_cycle(nodes, edges, p, q)?;
    let (g, c) = cycle
        .iter()
        .fold((0, 0), |(g, c), &i| (g + edges[i].gain, c + edges[i].cost));
    if c == 0 || Ratio::new(g, c) != ratio {
        return Err(contradiction(format!(
            "recovered cycle has ratio {g}/{c}, not {ratio}"
        )));
    }
    Ok(Some(RatioCycle {
        ratio,
        edges: cycle,
    }))
}

/// Descends the Stern–Brocot tree towards the positive target fraction,
/// galloping along runs of same-direction steps.
fn stern_brocot(
    cmp: impl Fn(i64, i64) -> Ordering,
    max_num: i64,
    max_den: i64,
) -> Result<(i64, i64)> {
    // target lies strictly between lo and hi
    let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 0i64));
    let within = |(p, q): (i64, i64)| p <= max_num && q <= max_den;
    loop {
        let mid = (lo.0 + hi.0, lo.1 + hi.1);
        if !within(mid) {
            return Err(contradiction("ratio search left its denominator bound"));
        }
        let dir = cmp(mid.0, mid.1);
        if dir == Ordering::Equal {
            return Ok(mid);
        }
        // move `from` towards `to` by t steps while the target stays on the
        // same side
        let (from, to) = if dir == Ordering::Greater {
            (lo, hi)
        } else {
            (hi, lo)
        };
        let at = |t: i64| (from.0 + t * to.0, from.1 + t * to.1);
        let (mut good, mut bad) = (1i64, 2i64);
        loop {
            let f = at(bad);
            if !within(f) {
                break;
            }
            match cmp(f.0, f.1) {
                Ordering::Equal => return Ok(f),
                o if o == dir => {
                    good = bad;
                    bad *= 2;
                }
                _ => break,
            }
        }
        while bad - good > 1 {
            let t = (good + bad) / 2;
            let f = at(t);
            if !within(f) {
                bad = t;
                continue;
            }
            match cmp(f.0, f.1) {
                Ordering::Equal => return Ok(f),
                o if o == dir => good = t,
                _ => bad = t,
            }
        }
        if dir == Ordering::Greater {
            lo = at(good);
        } else {
            hi = at(good);
        }
    }
}

/// With no positive cycle under weights `q·gain − p·cost`, longest-path
/// potentials exist and every zero-weight cycle uses only tight edges.
fn tight_cycle(nodes: usize, edges: &[RatioEdge], p: i64, q: i64) -> Result<Vec<usize>> {
    let w: Vec<i128> = edges
        .iter()
        .map(|e| q as i128 * e.gain as i128 - p as i128 * e.cost as i128)
        .collect();
    let mut dist = vec![0i128; nodes];
    for round in 0..=nodes {
        let mut changed = false;
        for (i, e) in edges.iter().enumerate() {
            if dist[e.from] + w[i] > dist[e.to] {
                dist[e.to] = dist[e.from] + w[i];
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == nodes {
            return Err(contradiction("positive cycle at the optimal ratio"));
        }
    }
    let tight: Vec<usize> = (0..edges.len())
        .filter(|&i| dist[edges[i].from] + w[i] == dist[edges[i].to])
        .collect();
    find_cycle(nodes, edges, &tight).ok_or_else(|| contradiction("no tight cycle at the optimum"))
}
