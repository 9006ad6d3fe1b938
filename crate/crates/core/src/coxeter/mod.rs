//! Finite Coxeter groups: a root-system engine for the crystallographic
//! types, the parabolic-quotient minimisation of generator multiplicities in
//! reduced words of `w_0`, and restricted Cartan matrix checks.
//!
//! Generator numbering follows the usual Dynkin labelling: in `B_n`, `s_1` is the end
//! of the double bond; in `D_n`, `s_1..s_{n-2}` is the chain and `s_{n-1}`,
//! `s_n` the fork; in `E_n`, `s_1..s_{n-1}` is the chain and `s_n` hangs off
//! `s_3`; `F_4` has its double bond between `s_2` and `s_3`.

mod cartan;
mod oracle;
mod quad;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub use cartan::{
    cartan_feasibility, explicit_cartan, verify_cartan, CartanCandidate, FeasibilityReport,
};
pub use oracle::min_multiplicity_dp_oracle;
pub use quad::QuadNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
    /// Diagram only; no element engine.
    H3,
    H4,
}

impl CoxeterType {
    /// From a family letter and rank, e.g. `("B", Some(5))` or `("E8", None)`.
    pub fn new(family: &str, rank: Option<usize>) -> Result<Self> {
        let fam = family.trim().to_ascii_uppercase();
        let need = |lo: usize| -> Result<usize> {
            let r = rank.ok_or_else(|| invalid(format!("type {fam} needs a rank")))?;
            if r < lo {
                return Err(invalid(format!("type {fam} needs rank at least {lo}")));
            }
            Ok(r)
        };
        let fixed = |t: CoxeterType| -> Result<Self> {
            match rank {
                Some(r) if r != t.rank() => Err(invalid(format!(
                    "type {fam} has rank {}, not {r}",
                    t.rank()
                ))),
                _ => Ok(t),
            }
        };
        match fam.as_str() {
            "A" => Ok(Self::A(need(1)?)),
            "B" | "C" => Ok(Self::B(need(2)?)),
            "D" => Ok(Self::D(need(4)?)),
            "E6" => fixed(Self::E6),
            "E7" => fixed(Self::E7),
            "E8" => fixed(Self::E8),
            "F4" => fixed(Self::F4),
            "G2" => fixed(Self::G2),
            "H3" => fixed(Self::H3),
            "H4" => fixed(Self::H4),
            "E" => match rank {
                Some(6) => Ok(Self::E6),
                Some(7) => Ok(Self::E7),
                Some(8) => Ok(Self::E8),
                _ => Err(invalid("type E needs rank 6, 7 or 8")),
            },
            "F" => fixed(Self::F4),
            "G" => fixed(Self::G2),
            "H" => match rank {
                Some(3) => Ok(Self::H3),
                Some(4) => Ok(Self::H4),
                _ => Err(invalid("type H needs rank 3 or 4")),
            },
            _ => Err(invalid(format!("unknown Coxeter type {family:?}"))),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Self::A(n) | Self::B(n) | Self::D(n) => n,
            Self::E6 => 6,
            Self::E7 => 7,
            Self::E8 => 8,
            Self::F4 | Self::H4 => 4,
            Self::H3 => 3,
            Self::G2 => 2,
        }
    }

    /// Coxeter matrix with 1 on the diagonal, 0-based.
    pub fn coxeter_matrix(self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut bond = |i: usize, j: usize, v: u32| {
            m[i - 1][j - 1] = v;
            m[j - 1][i - 1] = v;
        };
        match self {
            Self::A(n) => (1..n).for_each(|i| bond(i, i + 1, 3)),
            Self::B(n) => {
                bond(1, 2, 4);
                (2..n).for_each(|i| bond(i, i + 1, 3));
            }
            Self::D(n) => {
                (1..n - 2).for_each(|i| bond(i, i + 1, 3));
                bond(n - 2, n - 1, 3);
                bond(n - 2, n, 3);
            }
            Self::E6 | Self::E7 | Self::E8 => {
                let n = self.rank();
                (1..n - 1).for_each(|i| bond(i, i + 1, 3));
                bond(3, n, 3);
            }
            Self::F4 => {
                bond(1, 2, 3);
                bond(2, 3, 4);
                bond(3, 4, 3);
            }
            Self::G2 => bond(1, 2, 6),
            Self::H3 => {
                bond(1, 2, 3);
                bond(2, 3, 5);
            }
            Self::H4 => {
                bond(1, 2, 3);
                bond(2, 3, 3);
                bond(3, 4, 5);
            }
        }
        m
    }

    /// Integer Cartan matrix `a_ij` with `s_i(α_j) = α_j − a_ij α_i`, for the
    /// crystallographic types.
    pub fn cartan_matrix(self) -> Result<Vec<Vec<i64>>> {
        let m = self.coxeter_matrix();
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = match m[i][j] {
                    1 => 2,
                    2 => 0,
                    3 => -1,
                    4 | 6 => 0, // oriented below
                    _ => {
                        return Err(Error::Unsupported(format!(
                            "type {self} is not crystallographic"
                        )))
                    }
                };
            }
        }
        // one long and one short root across each multiple bond
        let mut orient = |i: usize, j: usize, big: i64| {
            a[i - 1][j - 1] = -big;
            a[j - 1][i - 1] = -1;
        };
        match self {
            Self::B(_) => orient(1, 2, 2),
            Self::F4 => orient(2, 3, 2),
            Self::G2 => orient(1, 2, 3),
            _ => {}
        }
        Ok(a)
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A(n) => write!(f, "A{n}"),
            Self::B(n) => write!(f, "B{n}"),
            Self::D(n) => write!(f, "D{n}"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// `A4`, `B5`, `E8`, `F4`, …
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (fam, num) = s.split_at(split);
        let rank = if num.is_empty() {
            None
        } else {
            Some(
                num.parse()
                    .map_err(|_| invalid(format!("bad rank in {s:?}")))?,
            )
        };
        Self::new(fam, rank)
    }
}

/// A crystallographic Coxeter system with its positive roots.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    pub ty: CoxeterType,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
}

/// A group element as its action on the simple roots: column `j` holds
/// `w(α_j)` in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    cols: Vec<Vec<i64>>,
}

impl CoxeterSystem {
    pub fn new(ty: CoxeterType) -> Result<Self> {
        let cartan = ty.cartan_matrix()?;
        let n = ty.rank();
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut at = 0;
        while at < roots.len() {
            let r = roots[at].clone();
            at += 1;
            for i in 0..n {
                let mut s = r.clone();
                let c: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                s[i] -= c;
                if s.iter().all(|&x| x >= 0) && seen.insert(s.clone()) {
                    roots.push(s);
                }
            }
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        Ok(Self {
            ty,
            cartan,
            positive_roots: roots,
        })
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn identity(&self) -> CoxeterElement {
        let n = self.rank();
        CoxeterElement {
            cols: (0..n)
                .map(|j| (0..n).map(|i| (i == j) as i64).collect())
                .collect(),
        }
    }

    /// `w·s_i` (0-based `i`).
    pub fn mul_generator(&self, w: &CoxeterElement, i: usize) -> CoxeterElement {
        // s_i(α_j) = α_j − a_ij α_i, so column j picks up −a_ij times column i
        let pivot = &w.cols[i];
        let cols = w
            .cols
            .iter()
            .zip(&self.cartan[i])
            .map(|(col, &a)| col.iter().zip(pivot).map(|(&x, &p)| x - a * p).collect())
            .collect();
        CoxeterElement { cols }
    }

    fn apply(&self, w: &CoxeterElement, v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|r| (0..n).map(|j| w.cols[j][r] * v[j]).sum())
            .collect()
    }

    /// Right descent at `s_i`: `w(α_i)` is negative.
    pub fn is_descent(&self, w: &CoxeterElement, i: usize) -> bool {
        w.cols[i].iter().all(|&x| x <= 0)
    }

    /// Positive roots sent to negative ones.
    pub fn length(&self, w: &CoxeterElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| self.apply(w, r).iter().all(|&x| x <= 0))
            .count()
    }

    /// Greedy ascent until every generator is a descent.
    pub fn longest_element(&self) -> CoxeterElement {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank()).find(|&i| !self.is_descent(&w, i)) {
            w = self.mul_generator(&w, i);
        }
        w
    }

    /// Minimal representative of `w W_J`, stripping right descents in `J`.
    pub fn parabolic_quotient(&self, w: &CoxeterElement, j: &[usize]) -> CoxeterElement {
        let mut w = w.clone();
        while let Some(&i) = j.iter().find(|&&i| self.is_descent(&w, i)) {
            w = self.mul_generator(&w, i);
        }
        w
    }

    /// Lengths of the iterates `w_0^J, (w·s_i)^J, …, id` with `J` all
    /// generators but `s_i` (1-based `i`); one fewer than the list length
    /// is the least number of `s_i` in a reduced word of `w_0`.
    pub fn min_multiplicity_trace(&self, i: usize) -> Result<Vec<usize>> {
        if i == 0 || i > self.rank() {
            return Err(invalid(format!(
                "generator {i} out of range 1..={}",
                self.rank()
            )));
        }
        let g = i - 1;
        let others: Vec<usize> = (0..self.rank()).filter(|&j| j != g).collect();
        let id = self.identity();
        let mut w = self.parabolic_quotient(&self.longest_element(), &others);
        let mut trace = vec![self.length(&w)];
        while w != id {
            w = self.parabolic_quotient(&self.mul_generator(&w, g), &others);
            trace.push(self.length(&w));
        }
        Ok(trace)
    }

    pub fn min_multiplicity(&self, i: usize) -> Result<usize> {
        Ok(self.min_multiplicity_trace(i)?.len() - 1)
    }

    /// `min_multiplicity` for every generator in order.
    pub fn min_multiplicities(&self) -> Result<Vec<usize>> {
        (1..=self.rank())
            .map(|i| self.min_multiplicity(i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> CoxeterSystem {
        CoxeterSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (t, roots) in [
            ("A2", 3),
            ("A7", 28),
            ("B2", 4),
            ("B5", 25),
            ("D4", 12),
            ("D6", 30),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            let s = sys(t);
            assert_eq!(s.positive_roots.len(), roots, "{t}");
            assert_eq!(s.length(&s.longest_element()), roots, "{t}");
        }
    }

    #[test]
    fn quotients() {
        let a2 = sys("A2");
        let w0 = a2.longest_element();
        assert_eq!(a2.length(&a2.parabolic_quotient(&w0, &[0])), 2);
        let id = a2.identity();
        assert_eq!(a2.parabolic_quotient(&id, &[0, 1]), id);
        let b3 = sys("B3");
        assert_eq!(
            b3.parabolic_quotient(&b3.longest_element(), &[0, 1, 2]),
            b3.identity()
        );
    }

    #[test]
    fn tables() {
        assert_eq!(sys("A4").min_multiplicities().unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(sys("B4").min_multiplicities().unwrap(), vec![4, 4, 3, 2]);
        assert_eq!(sys("F4").min_multiplicities().unwrap(), vec![3, 6, 6, 3]);
        assert_eq!(
            sys("E6").min_multiplicities().unwrap(),
            vec![2, 4, 6, 4, 2, 3]
        );
        assert_eq!(sys("G2").min_multiplicities().unwrap(), vec![3, 3]);
        assert_eq!(sys("D5").min_multiplicities().unwrap(), vec![2, 3, 4, 2, 2]);
    }

    #[test]
    fn iterates_shrink() {
        let e7 = sys("E7");
        for i in 1..=7 {
            let t = e7.min_multiplicity_trace(i).unwrap();
            assert!(t.windows(2).all(|w| w[1] < w[0]), "{t:?}");
            assert_eq!(*t.last().unwrap(), 0);
        }
    }

    #[test]
    fn parsing() {
        assert_eq!("b5".parse::<CoxeterType>().unwrap(), CoxeterType::B(5));
        assert_eq!(CoxeterType::new("E", Some(8)).unwrap(), CoxeterType::E8);
        assert!("E9".parse::<CoxeterType>().is_err());
        assert!("D3".parse::<CoxeterType>().is_err());
        assert!(CoxeterSystem::new(CoxeterType::H4).is_err());
    }
}
