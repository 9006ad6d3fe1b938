//! Finite diagrams given as move sequences, simulated with explicit wire
//! labels: reducedness, the simplicity conditions, the rewriting that makes
//! a diagram simple, and the path read off the top `k` levels.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::{GwdState, Move, Ranks};
use crate::error::{contradiction, invalid, Error, Result};
use crate::path::{KSubset, MonotonePath};

/// A diagram as a sequence of moves. JSON form:
/// `{"k":2,"events":[{"t":0,"kind":"cross","level":2},…]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitDiagram {
    pub k: usize,
    pub n_hint: Option<usize>,
    pub events: Vec<Move>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Cross,
    Fall,
}

#[derive(Serialize, Deserialize)]
struct EventRecord {
    t: usize,
    kind: Kind,
    level: usize,
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_hint: Option<usize>,
    events: Vec<EventRecord>,
}

impl Serialize for ExplicitDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramFile {
            k: self.k,
            n_hint: self.n_hint,
            events: self
                .events
                .iter()
                .enumerate()
                .map(|(t, m)| match *m {
                    Move::Cross(level) => EventRecord {
                        t,
                        kind: Kind::Cross,
                        level,
                    },
                    Move::Fall(level) => EventRecord {
                        t,
                        kind: Kind::Fall,
                        level,
                    },
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExplicitDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let mut f = DiagramFile::deserialize(de)?;
        f.events.sort_by_key(|e| e.t);
        let events = f
            .events
            .into_iter()
            .map(|e| {
                if e.level == 0 {
                    return Err(serde::de::Error::custom("levels start at 1"));
                }
                Ok(match e.kind {
                    Kind::Cross => Move::Cross(e.level),
                    Kind::Fall => Move::Fall(e.level),
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self {
            k: f.k,
            n_hint: f.n_hint,
            events,
        })
    }
}

/// A move expressed by the wires it involves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireEvent {
    /// Wires `a < b` swap; the smaller one was on top.
    Cross(u32, u32),
    Fall(u32),
}

impl WireEvent {
    fn involves(self, w: u32) -> bool {
        match self {
            WireEvent::Cross(a, b) => a == w || b == w,
            WireEvent::Fall(a) => a == w,
        }
    }

    fn relabel(self, f: impl Fn(u32) -> u32) -> Self {
        match self {
            WireEvent::Cross(a, b) => {
                let (x, y) = (f(a), f(b));
                WireEvent::Cross(x.min(y), x.max(y))
            }
            WireEvent::Fall(a) => WireEvent::Fall(f(a)),
        }
    }
}

/// Which simplicity condition a step breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two wires with no surviving label between them cross off level `k`.
    AdjacentCross { a: u32, b: u32 },
    /// A falling wire meets the next surviving label off level `k`; `level`
    /// is where that wire sits when the fall starts.
    AdjacentFall { a: u32, b: u32, level: usize },
    /// Wire `a` crosses its `k`-th larger label.
    TooManyLarger { a: u32, b: u32 },
}

/// Wire positions while replaying a diagram.
#[derive(Clone, Debug)]
struct Sim {
    k: usize,
    levels: Vec<u32>,
    next: u32,
    fallen: Vec<bool>,
    crossed: HashSet<(u32, u32)>,
    larger: Vec<usize>,
    kappa: u64,
    falls: u64,
    /// Largest label that has crossed or fallen.
    touched: u32,
}

impl Sim {
    fn new(k: usize) -> Self {
        Self {
            k,
            levels: Vec::new(),
            next: 1,
            fallen: vec![false; 1],
            crossed: HashSet::new(),
            larger: vec![0; 1],
            kappa: 0,
            falls: 0,
            touched: 0,
        }
    }

    /// Materialises levels down to `h`.
    fn reach(&mut self, h: usize) {
        while self.levels.len() < h {
            self.levels.push(self.next);
            self.next += 1;
            self.fallen.push(false);
            self.larger.push(0);
        }
    }

    fn at(&mut self, h: usize) -> u32 {
        self.reach(h);
        self.levels[h - 1]
    }

    fn level_of(&mut self, w: u32) -> Option<usize> {
        if w >= self.next {
            self.reach(self.levels.len() + (w - self.next) as usize + 1);
        }
        if self.fallen[w as usize] {
            return None;
        }
        self.levels.iter().position(|&x| x == w).map(|i| i + 1)
    }

    fn all_fallen_between(&self, a: u32, b: u32) -> bool {
        (a + 1..b).all(|c| self.fallen[c as usize])
    }

    fn top(&mut self) -> KSubset {
        self.reach(self.k);
        KSubset::new(self.levels[..self.k].to_vec()).expect("distinct labels")
    }

    fn ranks(&mut self) -> Ranks {
        let v: Vec<u32> = self
            .levels
            .iter()
            .map(|&w| w - (1..w).filter(|&c| self.fallen[c as usize]).count() as u32)
            .collect();
        Ranks::from_oneline(v).expect("ranks form a permutation")
    }

    /// The first simplicity violation `m` would cause, if any.
    fn violation(&mut self, m: Move) -> Option<Violation> {
        match m {
            Move::Cross(h) => {
                let (a, b) = (self.at(h), self.at(h + 1));
                let (a, b) = (a.min(b), a.max(b));
                if h != self.k && self.all_fallen_between(a, b) {
                    return Some(Violation::AdjacentCross { a, b });
                }
                if self.larger[a as usize] + 1 >= self.k {
                    return Some(Violation::TooManyLarger { a, b });
                }
                None
            }
            Move::Fall(h) => {
                let a = self.at(h);
                self.reach(self.levels.len() + 1);
                (h + 1..=self.levels.len()).find_map(|j| {
                    let c = self.levels[j - 1];
                    let (lo, hi) = (a.min(c), a.max(c));
                    (j - 1 != self.k && self.all_fallen_between(lo, hi))
                        .then_some(Violation::AdjacentFall { a, b: c, level: j })
                })
            }
        }
    }

    /// Applies `m`, refusing any double crossing.
    fn step(&mut self, m: Move) -> Result<WireEvent> {
        let ev = match m {
            Move::Cross(h) => {
                if h == 0 {
                    return Err(invalid("levels start at 1"));
                }
                let (a, b) = (self.at(h), self.at(h + 1));
                if a > b || !self.crossed.insert((a, b)) {
                    return Err(invalid(format!("wires {a} and {b} cross twice")));
                }
                self.larger[a as usize] += 1;
                self.touched = self.touched.max(b);
                self.levels.swap(h - 1, h);
                WireEvent::Cross(a, b)
            }
            Move::Fall(h) => {
                if h == 0 {
                    return Err(invalid("levels start at 1"));
                }
                let a = self.at(h);
                if let Some(&c) = self.levels[h..].iter().find(|&&c| c < a) {
                    return Err(invalid(format!("falling wire {a} meets {c} a second time")));
                }
                self.levels.remove(h - 1);
                self.fallen[a as usize] = true;
                self.touched = self.touched.max(a);
                self.falls += 1;
                WireEvent::Fall(a)
            }
        };
        self.kappa += m.hits_level(self.k) as u64;
        Ok(ev)
    }

    /// Applies a wire-labelled event, recovering its level.
    fn step_wires(&mut self, ev: WireEvent) -> Result<Move> {
        let m = match ev {
            WireEvent::Cross(a, b) => {
                let (ha, hb) = (self.level_of(a), self.level_of(b));
                match (ha, hb) {
                    (Some(x), Some(y)) if y == x + 1 => Move::Cross(x),
                    _ => return Err(contradiction(format!("wires {a} and {b} are not adjacent"))),
                }
            }
            WireEvent::Fall(a) => match self.level_of(a) {
                Some(h) => Move::Fall(h),
                None => return Err(contradiction(format!("wire {a} already fell"))),
            },
        };
        self.step(m)?;
        Ok(m)
    }
}

impl ExplicitDiagram {
    pub fn new(k: usize, events: Vec<Move>) -> Self {
        Self {
            k,
            n_hint: None,
            events,
        }
    }

    /// The wires involved in each move; fails on a double crossing.
    pub fn wire_events(&self) -> Result<Vec<WireEvent>> {
        let mut sim = Sim::new(self.k);
        self.events.iter().map(|&m| sim.step(m)).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.wire_events().is_ok()
    }

    /// Intersections at level `k`.
    pub fn level_k_count(&self) -> usize {
        self.events.iter().filter(|m| m.hits_level(self.k)).count()
    }

    pub fn falls(&self) -> usize {
        self.events
            .iter()
            .filter(|m| matches!(m, Move::Fall(_)))
            .count()
    }

    /// First step breaking simplicity, with its index.
    pub fn first_violation(&self) -> Result<Option<(usize, Violation)>> {
        let mut sim = Sim::new(self.k);
        for (t, &m) in self.events.iter().enumerate() {
            if let Some(v) = sim.violation(m) {
                return Ok(Some((t, v)));
            }
            sim.step(m)?;
        }
        Ok(None)
    }

    pub fn is_simple(&self) -> Result<bool> {
        Ok(self.first_violation()?.is_none())
    }

    /// The `(f, κ, π)` encoding after every step, starting with the empty prefix.
    pub fn states(&self) -> Result<Vec<GwdState>> {
        let mut sim = Sim::new(self.k);
        let mut out = vec![GwdState::initial()];
        for &m in &self.events {
            sim.step(m)?;
            out.push(GwdState {
                pi: sim.ranks(),
                fallen: sim.falls,
                kappa: sim.kappa,
            });
        }
        Ok(out)
    }

    /// Largest label that ever reaches the top `k` levels.
    pub fn top_label_bound(&self) -> Result<u32> {
        let mut sim = Sim::new(self.k);
        let mut best = KSubset::max(&sim.top()).unwrap_or(0);
        for &m in &self.events {
            sim.step(m)?;
            best = best.max(KSubset::max(&sim.top()).unwrap_or(0));
        }
        Ok(best)
    }
}

fn from_wire_events(k: usize, evs: &[WireEvent]) -> Result<Vec<Move>> {
    let mut sim = Sim::new(k);
    evs.iter().map(|&e| sim.step_wires(e)).collect()
}

/// Rewrites a reduced diagram into a simple one with the same number of
/// intersections at level `k`, repairing the first violation each round:
/// an adjacent-label crossing is dropped; a fall that meets the next label
/// off level `k` is replaced by crossings down to that wire, which then
/// falls in its place; a crossing that would be a wire's `k`-th with a
/// larger label becomes a fall of that wire.
pub fn simplify(d: &ExplicitDiagram) -> Result<ExplicitDiagram> {
    let k = d.k;
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let mut evs = d
        .wire_events()
        .map_err(|e| invalid(format!("simplify needs a reduced diagram: {e}")))?;
    let mut cur = d.clone();
    let budget = 16 * (d.events.len() + 4).pow(2);
    for _ in 0..budget {
        let Some((t, v)) = cur.first_violation()? else {
            if cur.level_k_count() != d.level_k_count() {
                return Err(contradiction(format!(
                    "simplification changed the level-{k} count from {} to {}",
                    d.level_k_count(),
                    cur.level_k_count()
                )));
            }
            return Ok(cur);
        };
        (evs, cur) = simplify_step(&cur, &evs, t, v)?;
    }
    Err(contradiction("simplification did not terminate"))
}

fn simplify_step(
    cur: &ExplicitDiagram,
    evs: &[WireEvent],
    t: usize,
    v: Violation,
) -> Result<(Vec<WireEvent>, ExplicitDiagram)> {
    let k = cur.k;
    let mut next: Vec<WireEvent> = evs[..t].to_vec();
    match v {
        Violation::AdjacentCross { a, b } => {
            let swap = |w| {
                if w == a {
                    b
                } else if w == b {
                    a
                } else {
                    w
                }
            };
            next.extend(evs[t + 1..].iter().map(|e| e.relabel(swap)));
        }
        Violation::AdjacentFall { a, b, level } => {
            let mut sim = Sim::new(k);
            for &e in &evs[..t] {
                sim.step_wires(e)?;
            }
            let h = sim.level_of(a).expect("falling wire present");
            for j in h + 1..level {
                let c = sim.at(j);
                next.push(WireEvent::Cross(a.min(c), a.max(c)));
            }
            if level > k && b > sim.touched {
                // b heads the untouched tail, so letting it fall would repeat
                // the violation one level lower forever; in the limit nothing
                // falls and the tail labels close up
                let shift = |w| match w {
                    w if w == b => a,
                    w if w > b => w - 1,
                    w => w,
                };
                next.extend(evs[t + 1..].iter().map(|e| e.relabel(shift)));
            } else {
                next.push(WireEvent::Fall(b));
                next.extend(
                    evs[t + 1..]
                        .iter()
                        .map(|e| e.relabel(|w| if w == b { a } else { w })),
                );
            }
        }
        Violation::TooManyLarger { a, .. } => {
            next.push(WireEvent::Fall(a));
            next.extend(evs[t + 1..].iter().copied().filter(|e| !e.involves(a)));
        }
    }
    let moves = from_wire_events(k, &next)?;
    let d = ExplicitDiagram {
        k,
        n_hint: cur.n_hint,
        events: moves,
    };
    Ok((next, d))
}

/// The top-`k` label sets, sampled initially and after every intersection at
/// level `k`.
pub fn gwd_to_path(d: &ExplicitDiagram) -> Result<MonotonePath> {
    let (path, _) = gwd_to_path_indexed(d)?;
    Ok(path)
}

/// [`gwd_to_path`] plus, for each sampled set after the first, the index of
/// the move that produced it.
pub fn gwd_to_path_indexed(d: &ExplicitDiagram) -> Result<(MonotonePath, Vec<usize>)> {
    let k = d.k;
    let mut sim = Sim::new(k);
    let mut sets = vec![sim.top()];
    let mut at = Vec::new();
    for (t, &m) in d.events.iter().enumerate() {
        sim.step(m)
            .map_err(|e| invalid(format!("not reduced: {e}")))?;
        if m.hits_level(k) {
            sets.push(sim.top());
            at.push(t);
        }
    }
    let n = sets
        .iter()
        .filter_map(KSubset::max)
        .max()
        .unwrap_or(k as u32) as usize;
    let path = MonotonePath::new(k, n.max(d.n_hint.unwrap_or(0)), sets);
    path.validate()
        .map_err(|v| contradiction(format!("top-{k} sets {path} do not form a valid path: {v}")))?;
    Ok((path, at))
}

/// Reconstructs the move sequence from its `(f, κ, π)` encoding, assuming
/// the diagram is simple. Fails when no or several simple moves fit a step.
pub fn decode_states(states: &[GwdState], k: usize) -> Result<Vec<Move>> {
    let mut out = Vec::new();
    for w in states.windows(2) {
        let (s, t) = (&w[0], &w[1]);
        let top = s.pi.as_slice().len().max(t.pi.as_slice().len()).max(k) + 1;
        let fits: Vec<Move> = (1..=top)
            .flat_map(|h| [Move::Cross(h), Move::Fall(h)])
            .filter(|&m| super::state::is_legal(&s.pi, k, m))
            .filter(|&m| super::state::apply_move(s, m, k).is_ok_and(|r| &r == t))
            .collect();
        match fits[..] {
            [m] => out.push(m),
            [] => {
                return Err(invalid(format!(
                    "no simple move takes {} to {}",
                    s.pi, t.pi
                )))
            }
            _ => {
                return Err(contradiction(format!(
                    "moves {fits:?} all fit {} -> {}",
                    s.pi, t.pi
                )))
            }
        }
    }
    Ok(out)
}

/// A random reduced diagram of `len` moves using levels up to `depth`. At
/// each step a fall is chosen with probability `fall_prob` when one is legal.
pub fn random_reduced<R: Rng>(
    k: usize,
    len: usize,
    depth: usize,
    fall_prob: f64,
    rng: &mut R,
) -> ExplicitDiagram {
    let mut sim = Sim::new(k);
    let mut events = Vec::with_capacity(len);
    for _ in 0..len {
        sim.reach(depth + 1);
        let crosses: Vec<Move> = (1..=depth)
            .filter(|&h| sim.levels[h - 1] < sim.levels[h])
            .map(Move::Cross)
            .collect();
        let falls: Vec<Move> = (1..=depth)
            .filter(|&h| sim.levels[h..].iter().all(|&c| c > sim.levels[h - 1]))
            .map(Move::Fall)
            .collect();
        let pick_fall = !falls.is_empty() && (crosses.is_empty() || rng.gen_bool(fall_prob));
        let pool = if pick_fall { &falls } else { &crosses };
        if pool.is_empty() {
            break;
        }
        let m = pool[rng.gen_range(0..pool.len())];
        sim.step(m).expect("only reduced moves are offered");
        events.push(m);
    }
    ExplicitDiagram {
        k,
        n_hint: None,
        events,
    }
}

/// Most level-`k` intersections over simple diagrams in which only wires
/// `1..=n` ever move, so that only they reach the top `k` levels. Memoised on
/// the order of the surviving wires and the set of fallen ones.
pub fn max_simple_crossings(k: usize, n: usize) -> Result<usize> {
    if k == 0 || k >= n {
        return Err(invalid(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    if n > 16 {
        return Err(Error::Resource(format!(
            "n = {n} is too large for the simple-diagram search"
        )));
    }
    fn go(sim: &Sim, n: u32, memo: &mut HashMap<(Vec<u32>, u32), usize>) -> usize {
        let alive: Vec<u32> = sim.levels.iter().copied().take_while(|&w| w <= n).collect();
        let fallen = (1..=n)
            .filter(|&w| sim.fallen[w as usize])
            .fold(0u32, |m, w| m | 1 << w);
        let key = (alive.clone(), fallen);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let h_max = alive.len();
        let moves = (1..h_max)
            .map(Move::Cross)
            .chain((1..=h_max).map(Move::Fall));
        let mut best = 0;
        for m in moves {
            let mut next = sim.clone();
            if next.violation(m).is_some() || next.step(m).is_err() {
                continue;
            }
            if next.top().elems().iter().any(|&w| w > n) {
                continue;
            }
            best = best.max(m.hits_level(sim.k) as usize + go(&next, n, memo));
        }
        memo.insert(key, best);
        best
    }
    let mut sim = Sim::new(k);
    sim.reach(n + 1);
    Ok(go(&sim, n as u32, &mut HashMap::new()))
}

/// An ordinary wiring diagram (reduced word) as a diagram without falls.
pub fn from_word(k: usize, letters: &[usize]) -> ExplicitDiagram {
    ExplicitDiagram::new(k, letters.iter().map(|&i| Move::Cross(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use Move::{Cross as C, Fall as F};

    /// The optimal k = 2 wiring diagram on six wires, as levels of its crossings.
    pub(crate) fn k2_wiring() -> ExplicitDiagram {
        from_word(2, &[2, 1, 2, 3, 2, 4, 3, 2, 1, 2, 5, 4, 3, 2])
    }

    fn k2_simple() -> Vec<Move> {
        vec![C(2), C(1), F(2), F(2), C(2), C(1), F(2), F(2)]
    }

    #[test]
    fn k2_wiring_labels() {
        let ev = k2_wiring().wire_events().unwrap();
        use WireEvent::Cross as X;
        assert_eq!(
            ev,
            vec![
                X(2, 3),
                X(1, 3),
                X(1, 2),
                X(1, 4),
                X(2, 4),
                X(1, 5),
                X(2, 5),
                X(4, 5),
                X(3, 5),
                X(3, 4),
                X(1, 6),
                X(2, 6),
                X(3, 6),
                X(4, 6)
            ]
        );
    }

    #[test]
    fn simplify_k2_wiring() {
        let d = k2_wiring();
        assert!(!d.is_simple().unwrap());
        let s = simplify(&d).unwrap();
        assert_eq!(s.events, k2_simple());
        assert_eq!(s.level_k_count(), d.level_k_count());
        assert_eq!(s.level_k_count(), 6);
        let pis: Vec<String> = s
            .states()
            .unwrap()
            .iter()
            .map(|x| x.pi.to_string())
            .collect();
        assert_eq!(
            pis,
            ["id", "132", "312", "21", "id", "132", "312", "21", "id"]
        );
    }

    #[test]
    fn path_of_simple_k2_diagram() {
        let d = ExplicitDiagram::new(2, k2_simple());
        assert_eq!(gwd_to_path(&d).unwrap().to_string(), "12-13-23-34-35-45-56");
        let empty = ExplicitDiagram::new(3, vec![]);
        assert_eq!(gwd_to_path(&empty).unwrap().sets.len(), 1);
    }

    /// The reduced diagram with two falls on six wires.
    fn two_falls() -> ExplicitDiagram {
        ExplicitDiagram::new(3, vec![C(1), F(2), C(2), C(1), F(3), C(2)])
    }

    #[test]
    fn two_falls_diagram() {
        let d = two_falls();
        use WireEvent::{Cross as X, Fall as Y};
        assert_eq!(
            d.wire_events().unwrap(),
            vec![X(1, 2), Y(1), X(3, 4), X(2, 4), Y(3), X(2, 5)]
        );
        let p = gwd_to_path(&d).unwrap();
        assert_eq!(p.steps(), d.level_k_count());
        let s = simplify(&d).unwrap();
        assert!(s.is_simple().unwrap());
        assert_eq!(s.level_k_count(), d.level_k_count());
    }

    #[test]
    fn dropping_an_adjacent_crossing() {
        // 2 falls, then 1 and 3 cross at level 1 with nothing between them
        let d = ExplicitDiagram::new(2, vec![F(2), C(1), C(2)]);
        assert_eq!(
            d.first_violation().unwrap(),
            Some((1, Violation::AdjacentCross { a: 1, b: 3 }))
        );
        let s = simplify(&d).unwrap();
        use WireEvent::{Cross as X, Fall as Y};
        assert_eq!(s.wire_events().unwrap(), vec![Y(2), X(3, 4)]);
        assert_eq!(s.events, vec![F(2), C(2)]);
    }

    #[test]
    fn rejects_double_crossings() {
        let d = ExplicitDiagram::new(2, vec![C(1), C(1)]);
        assert!(!d.is_reduced());
        assert!(simplify(&d).is_err());
        assert!(!ExplicitDiagram::new(2, vec![C(1), F(1)]).is_reduced());
    }

    #[test]
    fn json_shape() {
        let d = ExplicitDiagram::new(2, vec![C(2), F(2)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"k":2,"events":[{"t":0,"kind":"cross","level":2},{"t":1,"kind":"fall","level":2}]}"#
        );
        assert_eq!(serde_json::from_str::<ExplicitDiagram>(&s).unwrap(), d);
    }

    #[test]
    fn simple_diagrams_reach_the_maximum() {
        let got: Vec<usize> = (2..=7)
            .map(|n| max_simple_crossings(1, n).unwrap())
            .collect();
        assert_eq!(got, vec![1, 2, 3, 4, 5, 6]);
        let got: Vec<usize> = (3..=7)
            .map(|n| max_simple_crossings(2, n).unwrap())
            .collect();
        assert_eq!(got, vec![2, 3, 5, 6, 8]);
    }

    #[test]
    fn random_diagrams_simplify() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 1..=3 {
            for _ in 0..200 {
                let d = random_reduced(k, 40, 8, 0.2, &mut rng);
                assert!(d.is_reduced());
                let s = simplify(&d).unwrap();
                assert!(s.is_reduced() && s.is_simple().unwrap());
                assert_eq!(s.level_k_count(), d.level_k_count());
                let states = s.states().unwrap();
                assert_eq!(decode_states(&states, k).unwrap(), s.events);
                let p = gwd_to_path(&s).unwrap();
                assert_eq!(p.steps(), s.level_k_count());
            }
        }
    }
}
