//! Arc diagrams of monotone paths and the weight bookkeeping behind the
//! `k = 3` upper bound: exact weights, per-unit weight limits, the interval
//! decomposition, and bicolored diagrams with their structural predicates.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{contradiction, invalid, Error, Result};
use crate::path::{KSubset, MonotonePath};

pub type Q = Ratio<i64>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Vertices `1..=n` and arcs `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDiagram {
    pub n: usize,
    pub arcs: BTreeSet<(u32, u32)>,
}

impl ArcDiagram {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in arcs {
            if !(1 <= i && i < j && j as usize <= n) {
                return Err(invalid(format!(
                    "arc ({i},{j}) outside 1..={n} or not increasing"
                )));
            }
            if !set.insert((i, j)) {
                return Err(invalid(format!("duplicate arc ({i},{j})")));
            }
        }
        Ok(Self { n, arcs: set })
    }

    /// One arc per step, joining the removed and the added element.
    pub fn from_path(path: &MonotonePath) -> Result<Self> {
        path.validate()
            .map_err(|v| invalid(format!("not a monotone weakly separated path: {v}")))?;
        let pairs = path.step_pairs().expect("validated");
        let d = Self::new(path.n, pairs)?;
        if d.arcs.len() != path.steps() {
            return Err(contradiction(format!("path {path} repeats an arc")));
        }
        Ok(d)
    }

    pub fn has_arc(&self, i: u32, j: u32) -> bool {
        self.arcs.contains(&(i.min(j), i.max(j)))
    }

    /// Total arc mass over `[lo, hi]`; each arc spreads weight 1 evenly over its span.
    pub fn weight(&self, lo: Q, hi: Q) -> Result<Q> {
        if lo < q(1) || hi > q(self.n as i64) || lo > hi {
            return Err(invalid(format!(
                "interval [{lo}, {hi}] not inside [1, {}]",
                self.n
            )));
        }
        Ok(self
            .arcs
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (q(i as i64), q(j as i64));
                let overlap = b.min(hi) - a.max(lo);
                if overlap > q(0) {
                    overlap / (b - a)
                } else {
                    q(0)
                }
            })
            .sum())
    }

    pub fn weight_int(&self, lo: u32, hi: u32) -> Result<Q> {
        self.weight(q(lo as i64), q(hi as i64))
    }

    /// Weights of `[1,2], [2,3], …, [n-1,n]`.
    pub fn unit_weights(&self) -> Vec<Q> {
        let mut w = vec![q(0); self.n.saturating_sub(1)];
        for &(i, j) in &self.arcs {
            let share = Q::new(1, (j - i) as i64);
            for u in i..j {
                w[u as usize - 1] += share;
            }
        }
        w
    }

    /// Both the unit arc and the length-2 arc leave `i`.
    fn unit_and_double(&self, i: u32) -> bool {
        self.has_arc(i, i + 1) && self.has_arc(i, i + 2)
    }
}

/// Weight limit of the unit interval `[i, i+1]` in the `k = 3` regime.
fn unit_limit(n: u32, i: u32) -> Q {
    if i == 1 || i == n - 1 {
        q(1)
    } else if i == 2 || i == n - 2 {
        Q::new(3, 2)
    } else {
        Q::new(11, 6)
    }
}

/// Additive weight limit over `[lo, hi]`, integer endpoints, `n ≥ 6`.
pub fn wtlim(n: usize, lo: u32, hi: u32) -> Result<Q> {
    if n < 6 {
        return Err(Error::Unsupported(format!(
            "weight limits need n >= 6, got {n}"
        )));
    }
    if lo < 1 || hi as usize > n || lo > hi {
        return Err(invalid(format!(
            "interval [{lo}, {hi}] not inside [1, {n}]"
        )));
    }
    Ok((lo..hi).map(|i| unit_limit(n as u32, i)).sum())
}

/// Maximal runs of unit intervals under (`low`) and over (`high`) their
/// limits, alternating and covering `[1, n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segmentation {
    pub low: Vec<(u32, u32)>,
    pub high: Vec<(u32, u32)>,
}

pub fn segment(d: &ArcDiagram) -> Result<Segmentation> {
    let n = d.n as u32;
    let over: Vec<bool> = d
        .unit_weights()
        .iter()
        .enumerate()
        .map(|(u, &w)| w > unit_limit(n, u as u32 + 1))
        .collect();
    let (mut low, mut high) = (Vec::new(), Vec::new());
    let mut start = 1u32;
    for i in 1..n {
        let last = i + 1 == n || over[i as usize] != over[i as usize - 1];
        if last {
            let run = (start, i + 1);
            if over[i as usize - 1] {
                high.push(run);
            } else {
                low.push(run);
            }
            start = i + 1;
        }
    }
    Ok(Segmentation { low, high })
}

/// Length conditions on the segmentation: end runs of the low part have
/// length ≥ 2, interior low runs ≥ 3, high runs ≤ 4, and runs alternate
/// starting and ending with a low run.
pub fn check_lengths(d: &ArcDiagram, s: &Segmentation) -> Result<(), String> {
    let n = d.n as u32;
    let len = |r: &(u32, u32)| r.1 - r.0;
    if s.low.len() != s.high.len() + 1 {
        return Err(format!("segmentation {s:?} does not start and end low"));
    }
    let (first, last) = (s.low[0], *s.low.last().unwrap());
    if first.0 != 1 || last.1 != n {
        return Err(format!("segmentation {s:?} does not cover [1, {n}]"));
    }
    if len(&first) < 2 || len(&last) < 2 {
        return Err(format!("end run too short in {s:?}"));
    }
    let interior = s.low.len().saturating_sub(2);
    if let Some(r) = s.low.iter().skip(1).take(interior).find(|r| len(r) < 3) {
        return Err(format!("interior low run {r:?} shorter than 3"));
    }
    if let Some(r) = s.high.iter().find(|r| len(r) > 4) {
        return Err(format!("high run {r:?} longer than 4"));
    }
    let w = d.unit_weights();
    for &(a, b) in &s.high {
        if let Some(u) = (a..b).find(|&u| w[u as usize - 1] != q(2)) {
            return Err(format!(
                "over-limit unit [{u}, {}] has weight {}",
                u + 1,
                w[u as usize - 1]
            ));
        }
    }
    Ok(())
}

/// The left end `i` of a forbidden run of nine arcs: the five unit arcs over
/// `[i, i+5]` and the four length-2 arcs over `[i, i+5]`.
pub fn find_nine_arc_configuration(d: &ArcDiagram) -> Option<u32> {
    let n = d.n as u32;
    (1..=n.saturating_sub(5))
        .find(|&i| (i..i + 4).all(|u| d.unit_and_double(u)) && d.has_arc(i + 4, i + 5))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub lo: u32,
    pub hi: u32,
    /// Which branch of the algorithm produced the interval, e.g. `"3.1"`.
    pub case: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub intervals: Vec<Piece>,
}

impl Decomposition {
    /// Interiors pairwise disjoint and every interval within its weight limit.
    pub fn check(&self, d: &ArcDiagram) -> Result<()> {
        let mut sorted: Vec<&Piece> = self.intervals.iter().collect();
        sorted.sort_by_key(|p| (p.lo, p.hi));
        for w in sorted.windows(2) {
            if w[1].lo < w[0].hi {
                return Err(contradiction(format!(
                    "intervals [{}, {}] and [{}, {}] overlap",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        for p in &self.intervals {
            let (wt, lim) = (d.weight_int(p.lo, p.hi)?, wtlim(d.n, p.lo, p.hi)?);
            if wt > lim {
                return Err(contradiction(format!(
                    "interval [{}, {}] (case {}) has weight {wt} over its limit {lim}",
                    p.lo, p.hi, p.case
                )));
            }
        }
        Ok(())
    }
}

/// Groups every over-limit run with neighbouring units so that each group
/// fits under its weight limit. Expects the diagram of a `k = 3` path from
/// `{1,2,3}` to `{n-2,n-1,n}`; returns empty for `n ∈ {4, 5}`.
pub fn decompose(d: &ArcDiagram) -> Result<Decomposition> {
    let n = d.n as i64;
    if n < 4 {
        return Err(invalid(format!("decomposition needs n >= 4, got {n}")));
    }
    if n < 6 {
        return Ok(Decomposition::default());
    }
    let seg = segment(d)?;
    if seg.high.is_empty() {
        return Ok(Decomposition::default());
    }
    check_lengths(d, &seg).map_err(contradiction)?;
    let mut out = Vec::new();
    let arc = |i: i64, j: i64| i >= 1 && j <= n && d.has_arc(i as u32, j as u32);
    let mut push = |lo: i64, hi: i64, case: &str| -> Result<()> {
        if lo < 1 || hi > n {
            return Err(contradiction(format!(
                "case {case} asks for [{lo}, {hi}] outside [1, {n}]"
            )));
        }
        out.push(Piece {
            lo: lo as u32,
            hi: hi as u32,
            case: case.to_string(),
        });
        Ok(())
    };
    for &(a, b) in &seg.high {
        let (a, mu) = (a as i64, (b - a) as i64);
        let left = arc(a - 1, a);
        match mu {
            4 => {
                push(a - 1, a + 2, "1")?;
                push(a + 2, a + 5, "1")?;
            }
            3 if !left => push(a - 1, a + 3, "2.1")?,
            3 => push(a, a + 4, "2.2")?,
            2 if !left => push(a - 1, a + 2, "3.1")?,
            2 if !arc(a + 2, a + 3) => push(a, a + 3, "3.2")?,
            2 => {
                push(a - 2, a + 1, "3.3")?;
                push(a + 1, a + 4, "3.3")?;
            }
            1 if !left => push(a - 1, a + 1, "4.1")?,
            1 if !arc(a + 1, a + 2) => push(a, a + 2, "4.2")?,
            1 => {
                if a - 2 < 1 {
                    return Err(contradiction(format!(
                        "case 4.3 at a = {a} reaches below 1"
                    )));
                }
                let (lo, hi) = ((a - 2) as u32, (a + 1) as u32);
                if d.weight_int(lo, hi)? <= wtlim(d.n, lo, hi)? {
                    push(a - 2, a + 1, "4.3")?;
                } else {
                    push(a, a + 3, "4.3")?;
                }
            }
            _ => {
                return Err(contradiction(format!(
                    "over-limit run [{a}, {}] has length {mu}",
                    a + mu
                )))
            }
        }
    }
    Ok(Decomposition { intervals: out })
}

/// Which of the six admissible relative positions two consecutive step arcs
/// `(a, b)` then `(c, d)` are in (1-based), or `None` for a forbidden one.
pub fn consecutive_outcome((a, b): (u32, u32), (c, d): (u32, u32)) -> Option<u8> {
    if a < b && b == c && c < d {
        Some(1)
    } else if c < d && d == a && a < b {
        Some(2)
    } else if a < c && c < b && b < d {
        Some(3)
    } else if c < a && a < d && d < b {
        Some(4)
    } else if a < c && d < b {
        Some(5)
    } else if c < a && b < d {
        Some(6)
    } else {
        None
    }
}

/// Whether every consecutive pair of a step-arc sequence is admissible.
pub fn check_consecutive_pairs(seq: &[(u32, u32)]) -> bool {
    seq.windows(2)
        .all(|w| consecutive_outcome(w[0], w[1]).is_some())
}

pub fn check_consecutive_configurations(path: &MonotonePath) -> bool {
    path.step_pairs()
        .is_some_and(|s| check_consecutive_pairs(&s))
}

/// Black arcs in path order, plus red arcs joining the facing endpoints of
/// each consecutive pair of black arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicoloredArcDiagram {
    pub n: usize,
    pub black: Vec<(u32, u32)>,
    pub red: BTreeSet<(u32, u32)>,
}

pub fn build_bicolored(path: &MonotonePath) -> Result<BicoloredArcDiagram> {
    path.validate()
        .map_err(|v| invalid(format!("not a monotone weakly separated path: {v}")))?;
    if path.k != 3 {
        return Err(Error::Unsupported(format!(
            "bicolored diagrams need k = 3, got {}",
            path.k
        )));
    }
    let black = path.step_pairs().expect("validated");
    let mut seen: BTreeSet<(u32, u32)> = black.iter().copied().collect();
    if seen.len() != black.len() {
        return Err(contradiction(format!("path {path} repeats a black arc")));
    }
    let mut red = BTreeSet::new();
    let mut add = |x: u32, y: u32| -> Result<()> {
        let e = (x.min(y), x.max(y));
        if !seen.insert(e) {
            return Err(contradiction(format!(
                "red arc {e:?} duplicates an existing arc"
            )));
        }
        red.insert(e);
        Ok(())
    };
    for w in black.windows(2) {
        let ((a, b), (c, d)) = (w[0], w[1]);
        if b != c {
            add(b, c)?;
        }
        if a != d {
            add(a, d)?;
        }
    }
    Ok(BicoloredArcDiagram {
        n: path.n,
        black,
        red,
    })
}

/// Anything drawable as semicircles over `1..=n`.
pub trait ArcDrawing {
    fn vertex_count(&self) -> usize;
    /// `(i, j, red)` for every arc.
    fn drawn_arcs(&self) -> Vec<(u32, u32, bool)>;
}

impl ArcDrawing for ArcDiagram {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn drawn_arcs(&self) -> Vec<(u32, u32, bool)> {
        self.arcs.iter().map(|&(i, j)| (i, j, false)).collect()
    }
}

impl ArcDrawing for BicoloredArcDiagram {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn drawn_arcs(&self) -> Vec<(u32, u32, bool)> {
        let mut black = self.black.clone();
        black.sort_unstable();
        black
            .into_iter()
            .map(|(i, j)| (i, j, false))
            .chain(self.red.iter().map(|&(i, j)| (i, j, true)))
            .collect()
    }
}

/// Deterministic SVG: vertices at unit spacing on a baseline, arcs as upper
/// semicircles, red arcs dashed.
pub fn render_svg<D: ArcDrawing + ?Sized>(d: &D) -> String {
    const UNIT: u32 = 40;
    const MARGIN: u32 = 20;
    let n = d.vertex_count() as u32;
    let arcs = d.drawn_arcs();
    let tallest = arcs.iter().map(|&(i, j, _)| j - i).max().unwrap_or(0);
    let base = MARGIN + tallest * UNIT / 2;
    let width = 2 * MARGIN + n.saturating_sub(1) * UNIT;
    let height = base + 2 * MARGIN;
    let x = |i: u32| MARGIN + (i - 1) * UNIT;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        "<style>.arc{{fill:none;stroke-width:2}}.black{{stroke:#000}}.red{{stroke:#c00;stroke-dasharray:6 3}}</style>"
    );
    for &(i, j, red) in &arcs {
        let r = (j - i) * UNIT / 2;
        let class = if red { "arc red" } else { "arc black" };
        let _ = writeln!(
            s,
            r#"<path class="{class}" d="M {} {base} A {r} {r} 0 0 1 {} {base}"/>"#,
            x(i),
            x(j)
        );
    }
    for i in 1..=n {
        let _ = writeln!(
            s,
            r#"<circle class="vertex" cx="{}" cy="{base}" r="3"/>"#,
            x(i)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{i}</text>"#,
            x(i),
            base + 16
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Everything the `k = 3` theory promises about one path, checked at once:
/// arc count, simplicity of the bicolored diagram, admissible consecutive
/// arcs, no nine-arc run, the segmentation length conditions, a valid
/// decomposition, and total weight within `⌈11n/6⌉ − 5`.
pub fn audit_k3_path(path: &MonotonePath) -> Result<Decomposition> {
    if path.k != 3 || path.first() != Some(&KSubset::initial(3)) {
        return Err(invalid("audit expects a k = 3 path starting at 123"));
    }
    let complete = path.last() == Some(&KSubset::terminal(3, path.n));
    let d = ArcDiagram::from_path(path)?;
    if d.weight_int(1, path.n as u32)? != q(path.steps() as i64) {
        return Err(contradiction("total weight differs from the step count"));
    }
    build_bicolored(path)?;
    if !check_consecutive_configurations(path) {
        return Err(contradiction(format!(
            "path {path} has a forbidden consecutive pair"
        )));
    }
    if let Some(i) = find_nine_arc_configuration(&d) {
        return Err(contradiction(format!(
            "path {path} contains the nine-arc run at {i}"
        )));
    }
    if path.n < 6 || !complete {
        return Ok(Decomposition::default());
    }
    check_lengths(&d, &segment(&d)?).map_err(|e| contradiction(format!("{path}: {e}")))?;
    let dec = decompose(&d)?;
    dec.check(&d)?;
    let bound = (11 * path.n).div_ceil(6) - 5;
    if path.steps() > bound {
        return Err(contradiction(format!(
            "path {path} has more than {bound} steps"
        )));
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize, s: &str) -> MonotonePath {
        MonotonePath::parse_compact(n, s).unwrap()
    }

    fn example_g() -> MonotonePath {
        path(6, "123-124-134-234-345-346-456")
    }

    fn example_wt2() -> MonotonePath {
        path(7, "123-124-234-245-246-247-267-467-567")
    }

    #[test]
    fn diagrams_from_paths() {
        let d = ArcDiagram::from_path(&example_g()).unwrap();
        let want: BTreeSet<_> = [(1, 2), (2, 3), (3, 4), (5, 6), (3, 5), (2, 5)].into();
        assert_eq!(d.arcs, want);
        let d = ArcDiagram::from_path(&example_wt2()).unwrap();
        let want: BTreeSet<_> = [
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (1, 3),
            (2, 4),
            (3, 5),
            (4, 6),
        ]
        .into();
        assert_eq!(d.arcs, want);
        let single = MonotonePath::new(3, 5, vec![KSubset::initial(3)]);
        assert!(ArcDiagram::from_path(&single).unwrap().arcs.is_empty());
    }

    #[test]
    fn weights() {
        let d = ArcDiagram::from_path(&example_wt2()).unwrap();
        assert_eq!(d.weight_int(3, 4).unwrap(), q(2));
        assert_eq!(d.weight_int(1, 2).unwrap(), Q::new(1, 2));
        assert_eq!(d.weight_int(1, 7).unwrap(), q(8));
        let w: Vec<Q> = [(1, 2), (1, 1), (2, 1), (2, 1), (3, 2), (1, 1)]
            .iter()
            .map(|&(a, b)| Q::new(a, b))
            .collect();
        assert_eq!(d.unit_weights(), w);
        assert_eq!(d.weight(Q::new(3, 2), Q::new(5, 2)).unwrap(), Q::new(3, 4));
        assert!(d.weight_int(0, 3).is_err());
    }

    #[test]
    fn limits() {
        assert_eq!(wtlim(9, 1, 9).unwrap(), Q::new(74, 6));
        assert_eq!(wtlim(7, 2, 5).unwrap(), Q::new(31, 6));
        assert_eq!(wtlim(6, 1, 2).unwrap(), q(1));
        assert!(matches!(wtlim(5, 1, 2), Err(Error::Unsupported(_))));
        for n in 6..30 {
            assert_eq!(
                wtlim(n, 1, n as u32).unwrap(),
                Q::new(11 * n as i64 - 25, 6)
            );
        }
    }

    #[test]
    fn decomposition_of_the_weight_two_example() {
        let d = ArcDiagram::from_path(&example_wt2()).unwrap();
        let seg = segment(&d).unwrap();
        assert_eq!(seg.high, vec![(3, 5)]);
        let dec = decompose(&d).unwrap();
        assert_eq!(
            dec.intervals,
            vec![Piece {
                lo: 2,
                hi: 5,
                case: "3.1".into()
            }]
        );
        assert_eq!(d.weight_int(2, 5).unwrap(), q(5));
        dec.check(&d).unwrap();
    }

    #[test]
    fn decomposition_empty_when_under_limits() {
        let d = ArcDiagram::from_path(&example_g()).unwrap();
        assert!(decompose(&d).unwrap().intervals.is_empty());
        let small = ArcDiagram::new(5, [(1, 2)]).unwrap();
        assert!(decompose(&small).unwrap().intervals.is_empty());
    }

    #[test]
    fn bicolored_example() {
        let b = build_bicolored(&path(6, "123-124-145-146-456")).unwrap();
        assert_eq!(b.black, vec![(3, 4), (2, 5), (5, 6), (1, 5)]);
        let want: BTreeSet<_> = [(2, 4), (3, 5), (2, 6), (1, 6)].into();
        assert_eq!(b.red, want);
        let one = build_bicolored(&path(6, "123-124")).unwrap();
        assert!(one.red.is_empty());
        build_bicolored(&example_g()).unwrap();
    }

    #[test]
    fn consecutive_pairs() {
        assert!(check_consecutive_configurations(&example_g()));
        assert!(!check_consecutive_pairs(&[(1, 2), (3, 4)]));
        assert!(!check_consecutive_pairs(&[(4, 6), (1, 3)]));
        assert_eq!(consecutive_outcome((3, 4), (2, 5)), Some(6));
        assert_eq!(consecutive_outcome((2, 5), (5, 6)), Some(1));
    }

    #[test]
    fn nine_arcs_detected() {
        let mut arcs: Vec<(u32, u32)> = (2..7).map(|i| (i, i + 1)).collect();
        arcs.extend((2..6).map(|i| (i, i + 2)));
        let d = ArcDiagram::new(9, arcs).unwrap();
        assert_eq!(find_nine_arc_configuration(&d), Some(2));
        assert_eq!(
            find_nine_arc_configuration(&ArcDiagram::from_path(&example_g()).unwrap()),
            None
        );
    }

    #[test]
    fn svg_output() {
        let empty = ArcDiagram::new(3, []).unwrap();
        let s = render_svg(&empty);
        assert_eq!(s.matches("<circle").count(), 3);
        assert_eq!(s.matches("<path").count(), 0);
        let s = render_svg(&ArcDiagram::from_path(&example_g()).unwrap());
        assert_eq!(s.matches("<path").count(), 6);
        let b = build_bicolored(&path(6, "123-124-145-146-456")).unwrap();
        let s = render_svg(&b);
        assert_eq!(s.matches(r#"class="arc black""#).count(), 4);
        assert_eq!(s.matches(r#"class="arc red""#).count(), 4);
        assert_eq!(s, render_svg(&b));
    }

    #[test]
    fn audit_small_cases() {
        for n in 4..=7 {
            crate::search::for_each_path(3, n, true, |masks| {
                let p = crate::search::masks_to_path(3, n, masks);
                audit_k3_path(&p).unwrap();
                true
            })
            .unwrap();
        }
    }
}
