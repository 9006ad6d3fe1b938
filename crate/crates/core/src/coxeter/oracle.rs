//! Brute-force check of the generator multiplicities: a breadth-first walk of
//! the whole group, tracking for each element the fewest uses of one
//! generator over all of its reduced words.

use std::collections::HashMap;
use std::hash::Hash;

use super::{CoxeterSystem, CoxeterType};
use crate::caps::Caps;
use crate::error::{invalid, Error, Result};

fn group_order(ty: CoxeterType) -> Option<u128> {
    let fact = |n: usize| (1..=n as u128).try_fold(1u128, |a, b| a.checked_mul(b));
    match ty {
        CoxeterType::A(n) => fact(n + 1),
        CoxeterType::B(n) => fact(n)?.checked_mul(1u128.checked_shl(n as u32)?),
        CoxeterType::D(n) => fact(n)?.checked_mul(1u128.checked_shl(n as u32 - 1)?),
        CoxeterType::E6 => Some(51_840),
        CoxeterType::E7 => Some(2_903_040),
        CoxeterType::E8 => Some(696_729_600),
        CoxeterType::F4 => Some(1_152),
        CoxeterType::G2 => Some(12),
        CoxeterType::H3 => Some(120),
        CoxeterType::H4 => Some(14_400),
    }
}

/// Walks the Cayley graph from the identity; returns the value at the
/// farthest element, which is `w_0`.
fn walk<S: Clone + Eq + Hash>(
    id: S,
    gens: usize,
    target: usize,
    act: impl Fn(&S, usize) -> S,
) -> usize {
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut elems = vec![id.clone()];
    let mut dist = vec![0usize];
    let mut best = vec![0usize];
    index.insert(id, 0);
    let mut at = 0;
    while at < elems.len() {
        let u = elems[at].clone();
        for g in 0..gens {
            let v = act(&u, g);
            let cand = best[at] + (g == target) as usize;
            match index.get(&v) {
                Some(&j) => {
                    if dist[j] == dist[at] + 1 && cand < best[j] {
                        best[j] = cand;
                    }
                }
                None => {
                    index.insert(v.clone(), elems.len());
                    elems.push(v);
                    dist.push(dist[at] + 1);
                    best.push(cand);
                }
            }
        }
        at += 1;
    }
    best[elems.len() - 1]
}

/// Least number of `s_i` (1-based) in a reduced word of the longest element,
/// by exhaustive search. Types `A`, `B`, `D` act on (signed) permutations;
/// the others go through the reflection representation.
pub fn min_multiplicity_dp_oracle(ty: CoxeterType, i: usize, caps: &Caps) -> Result<usize> {
    let n = ty.rank();
    if i == 0 || i > n {
        return Err(invalid(format!("generator {i} out of range 1..={n}")));
    }
    let order = group_order(ty).unwrap_or(u128::MAX);
    if order > caps.group_order as u128 {
        return Err(Error::Resource(format!(
            "{ty} has {order} elements, above the group_order cap {}",
            caps.group_order
        )));
    }
    let g = i - 1;
    Ok(match ty {
        CoxeterType::A(n) => {
            let id: Vec<i32> = (0..=n as i32).collect();
            walk(id, n, g, |w, s| {
                let mut w = w.clone();
                w.swap(s, s + 1);
                w
            })
        }
        // s_1 negates the first entry, s_j swaps entries j-1 and j
        CoxeterType::B(n) => {
            let id: Vec<i32> = (1..=n as i32).collect();
            walk(id, n, g, |w, s| {
                let mut w = w.clone();
                if s == 0 {
                    w[0] = -w[0];
                } else {
                    w.swap(s - 1, s);
                }
                w
            })
        }
        // s_j swaps entries n-j and n-j+1 for j < n; s_n swaps and negates
        // the first two
        CoxeterType::D(n) => {
            let id: Vec<i32> = (1..=n as i32).collect();
            walk(id, n, g, |w, s| {
                let mut w = w.clone();
                if s == n - 1 {
                    let (a, b) = (w[0], w[1]);
                    w[0] = -b;
                    w[1] = -a;
                } else {
                    let t = n - 1 - s;
                    w.swap(t - 1, t);
                }
                w
            })
        }
        _ => {
            let sys = CoxeterSystem::new(ty)?;
            walk(sys.identity(), n, g, |w, s| sys.mul_generator(w, s))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_quotients() {
        let caps = Caps::default();
        for ty in [
            CoxeterType::A(4),
            CoxeterType::B(3),
            CoxeterType::B(5),
            CoxeterType::D(4),
            CoxeterType::D(5),
            CoxeterType::F4,
            CoxeterType::G2,
        ] {
            let sys = CoxeterSystem::new(ty).unwrap();
            for i in 1..=ty.rank() {
                assert_eq!(
                    min_multiplicity_dp_oracle(ty, i, &caps).unwrap(),
                    sys.min_multiplicity(i).unwrap(),
                    "{ty} s{i}"
                );
            }
        }
    }

    #[test]
    fn order_cap() {
        let caps = Caps::default();
        assert!(matches!(
            min_multiplicity_dp_oracle(CoxeterType::E7, 1, &caps),
            Err(Error::Resource(_))
        ));
        assert!(min_multiplicity_dp_oracle(CoxeterType::A(3), 9, &caps).is_err());
    }
}
