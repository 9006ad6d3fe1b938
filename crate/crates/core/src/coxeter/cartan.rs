//! Restricted generalized Cartan matrices: exact verification of `Av ≥ 0`
//! and a numeric feasibility search with exact confirmation.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::Serialize;

use super::quad::QuadNum;
use super::CoxeterType;
use crate::error::{invalid, Error, Result};

/// A real matrix with entries in one quadratic field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CartanCandidate {
    pub entries: Vec<Vec<QuadNum>>,
}

/// `4cos²(π/m)`.
fn bond_product(m: u32) -> Result<QuadNum> {
    Ok(match m {
        2 => QuadNum::int(0),
        3 => QuadNum::int(1),
        4 => QuadNum::int(2),
        5 => QuadNum::golden() * QuadNum::golden(),
        6 => QuadNum::int(3),
        _ => return Err(Error::Unsupported(format!("bond with m = {m}"))),
    })
}

/// Checks the restricted generalized Cartan conditions against the diagram.
fn check_candidate(m: &[Vec<u32>], a: &CartanCandidate) -> Result<()> {
    let n = m.len();
    if a.entries.len() != n || a.entries.iter().any(|r| r.len() != n) {
        return Err(invalid(format!("matrix must be {n}x{n}")));
    }
    let zero = QuadNum::int(0);
    for (i, row) in m.iter().enumerate() {
        if a.entries[i][i] != QuadNum::int(2) {
            return Err(invalid(format!("diagonal entry {} is not 2", i + 1)));
        }
        for j in (0..n).filter(|&j| j != i) {
            let (x, y) = (a.entries[i][j], a.entries[j][i]);
            if x > zero {
                return Err(invalid(format!("entry ({},{}) is positive", i + 1, j + 1)));
            }
            if (x < zero) != (y < zero) {
                return Err(invalid(format!(
                    "entries ({0},{1}) and ({1},{0}) disagree in sign",
                    i + 1,
                    j + 1
                )));
            }
            if x * y != bond_product(row[j])? {
                return Err(invalid(format!(
                    "entries ({0},{1}) and ({1},{0}) multiply to {2}, not 4cos²(π/{3})",
                    i + 1,
                    j + 1,
                    x * y,
                    row[j]
                )));
            }
            if row[j] == 3 && x != QuadNum::int(-1) {
                return Err(invalid(format!(
                    "single bond ({},{}) must carry -1",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn product(a: &CartanCandidate, v: &[i64]) -> Vec<QuadNum> {
    a.entries
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(QuadNum::int(0), |acc, (&x, &vj)| acc + x * QuadNum::int(vj))
        })
        .collect()
}

/// `Av` in exact arithmetic and whether every entry is nonnegative.
pub fn verify_cartan(
    ty: CoxeterType,
    a: &CartanCandidate,
    v: &[i64],
) -> Result<(bool, Vec<QuadNum>)> {
    let m = ty.coxeter_matrix();
    if v.len() != m.len() {
        return Err(invalid(format!("vector needs {} entries", m.len())));
    }
    check_candidate(&m, a)?;
    let av = product(a, v);
    let ok = av.iter().all(|x| x.signum() != Ordering::Less);
    Ok((ok, av))
}

/// The explicit matrices used for the classical and exceptional types with
/// bonds of order at most 4: the standard one for simply-laced types,
/// `A_12 = −2, A_21 = −1` for `B_n`, and `A_23 = A_32 = −√2` for `F_4`.
pub fn explicit_cartan(ty: CoxeterType) -> Result<CartanCandidate> {
    let m = ty.coxeter_matrix();
    let n = m.len();
    let mut e = vec![vec![QuadNum::int(0); n]; n];
    for i in 0..n {
        for j in 0..n {
            e[i][j] = match m[i][j] {
                1 => QuadNum::int(2),
                2 => QuadNum::int(0),
                3 => QuadNum::int(-1),
                _ => QuadNum::int(0),
            };
        }
    }
    match ty {
        CoxeterType::B(_) => {
            e[0][1] = QuadNum::int(-2);
            e[1][0] = QuadNum::int(-1);
        }
        CoxeterType::F4 => {
            let r2 = -QuadNum::sqrt(2)?;
            e[1][2] = r2;
            e[2][1] = r2;
        }
        CoxeterType::A(_)
        | CoxeterType::D(_)
        | CoxeterType::E6
        | CoxeterType::E7
        | CoxeterType::E8 => {}
        other => {
            return Err(Error::Unsupported(format!(
                "no explicit matrix for {other}"
            )));
        }
    }
    Ok(CartanCandidate { entries: e })
}

#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub v: Vec<i64>,
    /// Smallest achievable value of `max_i ((Σ_{j≠i} |A_ij| v_j) / v_i − 2)`
    /// found by the solver; nonpositive means `Av ≥ 0` is attainable.
    pub min_max_violation: f64,
    /// An exactly verified matrix, when one was found.
    pub witness: Option<CartanCandidate>,
    pub av: Option<Vec<QuadNum>>,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.witness.is_some()
    }
}

/// Searches for a restricted matrix with `Av ≥ 0`. Each bond of order at
/// least 4 leaves one free parameter `t`, with entries `√c·e^t` and `√c·e^−t`
/// where `c = 4cos²(π/m)`; every row constraint is convex in these, so
/// coordinate descent on the worst normalised violation converges. A numeric
/// solution is then rounded to rational entries (partner entry `c/r`) or the
/// symmetric choice `√c`, and confirmed exactly.
pub fn cartan_feasibility(ty: CoxeterType, v: &[i64]) -> Result<FeasibilityReport> {
    let m = ty.coxeter_matrix();
    let n = m.len();
    if v.len() != n || v.iter().any(|&x| x <= 0) {
        return Err(invalid(format!("vector needs {n} positive entries")));
    }
    let bonds: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m[i][j] >= 3)
        .collect();
    if bonds.len() + 1 != n || !connected(n, &bonds) {
        return Err(Error::Unsupported(format!("diagram of {ty} is not a tree")));
    }
    let free: Vec<(usize, usize, f64)> = bonds
        .iter()
        .filter(|&&(i, j)| m[i][j] >= 4)
        .map(|&(i, j)| (i, j, bond_product(m[i][j]).map(|c| c.to_f64())))
        .map(|(i, j, c)| c.map(|c| (i, j, c)))
        .collect::<Result<_>>()?;

    let worst = |t: &[f64]| -> f64 {
        let mut x = vec![vec![0.0f64; n]; n];
        for &(i, j) in &bonds {
            x[i][j] = 1.0;
            x[j][i] = 1.0;
        }
        for (&(i, j, c), &tk) in free.iter().zip(t) {
            x[i][j] = c.sqrt() * tk.exp();
            x[j][i] = c.sqrt() * (-tk).exp();
        }
        (0..n)
            .map(|i| (0..n).map(|j| x[i][j] * v[j] as f64).sum::<f64>() / v[i] as f64 - 2.0)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut t = vec![0.0f64; free.len()];
    for _sweep in 0..200 {
        let before = worst(&t);
        for k in 0..t.len() {
            let (mut lo, mut hi) = (-30.0f64, 30.0f64);
            for _ in 0..200 {
                let (a, b) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
                let mut ta = t.clone();
                ta[k] = a;
                let mut tb = t.clone();
                tb[k] = b;
                if worst(&ta) <= worst(&tb) {
                    hi = b;
                } else {
                    lo = a;
                }
            }
            t[k] = (lo + hi) / 2.0;
        }
        if before - worst(&t) < 1e-13 {
            break;
        }
    }
    let min_max_violation = worst(&t);

    let mut report = FeasibilityReport {
        ty: ty.to_string(),
        v: v.to_vec(),
        min_max_violation,
        witness: None,
        av: None,
    };
    if min_max_violation > 1e-9 {
        return Ok(report);
    }
    let build = |choice: &[(QuadNum, QuadNum)]| -> CartanCandidate {
        let mut e = vec![vec![QuadNum::int(0); n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = QuadNum::int(2);
        }
        for &(i, j) in &bonds {
            e[i][j] = QuadNum::int(-1);
            e[j][i] = QuadNum::int(-1);
        }
        for (&(i, j, _), &(x, y)) in free.iter().zip(choice) {
            e[i][j] = -x;
            e[j][i] = -y;
        }
        CartanCandidate { entries: e }
    };
    let mut attempts: Vec<Vec<(QuadNum, QuadNum)>> = Vec::new();
    let symmetric: Result<Vec<_>> = free
        .iter()
        .map(|&(i, j, _)| {
            let r = match m[i][j] {
                4 => QuadNum::sqrt(2)?,
                5 => QuadNum::golden(),
                6 => QuadNum::sqrt(3)?,
                other => return Err(Error::Unsupported(format!("bond with m = {other}"))),
            };
            Ok((r, r))
        })
        .collect();
    attempts.push(symmetric?);
    for depth in 0..40 {
        let choice: Result<Vec<_>> = free
            .iter()
            .zip(&t)
            .map(|(&(i, j, c), &tk)| {
                let r = convergent(c.sqrt() * tk.exp(), depth);
                let exact = bond_product(m[i][j])?;
                let inv = QuadNum::rational(Ratio::new(*r.denom(), *r.numer()));
                Ok((QuadNum::rational(r), exact * inv))
            })
            .collect();
        attempts.push(choice?);
    }
    for choice in attempts {
        let cand = build(&choice);
        if let Ok((true, av)) = verify_cartan(ty, &cand, v) {
            report.witness = Some(cand);
            report.av = Some(av);
            break;
        }
    }
    Ok(report)
}

/// The `depth`-th continued-fraction convergent of a positive real.
fn convergent(x: f64, depth: usize) -> Ratio<i64> {
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..depth {
        if frac < 1e-12 || q1 > 1_000_000 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as i64;
        frac = inv - inv.floor();
        (p0, q0, p1, q1) = (p1, q1, a * p1 + p0, a * q1 + q0);
    }
    Ratio::new(p1.max(1), q1)
}

fn connected(n: usize, bonds: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(i, j) in bonds {
            for (a, b) in [(i, j), (j, i)] {
                if a == u && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_n_matrix() {
        for n in 2..=7 {
            let ty = CoxeterType::B(n);
            let mut v: Vec<i64> = vec![n as i64];
            v.extend((2..=n).map(|i| (n + 2 - i) as i64));
            let (ok, av) = verify_cartan(ty, &explicit_cartan(ty).unwrap(), &v).unwrap();
            assert!(ok);
            let mut want = vec![QuadNum::int(0); n];
            want[1] = QuadNum::int(1);
            want[n - 1] = want[n - 1] + QuadNum::int(1);
            assert_eq!(av, want, "B{n}");
        }
    }

    #[test]
    fn f4_and_a3() {
        let (ok, _) = verify_cartan(
            CoxeterType::F4,
            &explicit_cartan(CoxeterType::F4).unwrap(),
            &[3, 6, 6, 3],
        )
        .unwrap();
        assert!(ok);
        let (ok, av) = verify_cartan(
            CoxeterType::A(3),
            &explicit_cartan(CoxeterType::A(3)).unwrap(),
            &[1, 2, 1],
        )
        .unwrap();
        assert!(ok);
        assert_eq!(av, vec![QuadNum::int(0), QuadNum::int(2), QuadNum::int(0)]);
    }

    #[test]
    fn rejects_bad_matrices() {
        let mut a = explicit_cartan(CoxeterType::B(3)).unwrap();
        a.entries[0][1] = QuadNum::int(-3);
        assert!(verify_cartan(CoxeterType::B(3), &a, &[3, 3, 2]).is_err());
        let mut a = explicit_cartan(CoxeterType::A(3)).unwrap();
        a.entries[0][1] = QuadNum::int(-2);
        a.entries[1][0] = QuadNum::rational(Ratio::new(-1, 2));
        assert!(verify_cartan(CoxeterType::A(3), &a, &[1, 2, 1]).is_err());
    }

    #[test]
    fn feasibility_finds_verified_witnesses() {
        let r = cartan_feasibility(CoxeterType::B(5), &[5, 5, 4, 3, 2]).unwrap();
        assert!(r.feasible());
        let r = cartan_feasibility(CoxeterType::D(6), &[2, 3, 4, 5, 3, 3]).unwrap();
        assert!(r.feasible());
        // the short end can trade against its neighbour, the far end cannot
        let r = cartan_feasibility(CoxeterType::B(3), &[1, 3, 2]).unwrap();
        assert!(r.feasible());
        let r = cartan_feasibility(CoxeterType::B(3), &[1, 3, 1]).unwrap();
        assert!(!r.feasible());
        assert!((r.min_max_violation - 1.0).abs() < 1e-9);
    }

    #[test]
    fn convergents() {
        assert_eq!(convergent(std::f64::consts::PI, 1), Ratio::new(22, 7));
        assert_eq!(convergent(1.5, 5), Ratio::new(3, 2));
    }
}
