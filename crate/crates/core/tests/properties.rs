//! Cross-module properties, mostly as proptests.

use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use redmax::caps::Caps;
use redmax::coxeter::{min_multiplicity_dp_oracle, CoxeterSystem, CoxeterType, QuadNum};
use redmax::gwd::{
    decode_states, enumerate_tk, gwd_to_path, max_simple_crossings, random_reduced, simplify,
};
use redmax::path::{path_to_word, word_to_path};
use redmax::search::{
    max_multiplicity_path_dfs, max_multiplicity_weak_order_dp, random_complete_path, DfsOptions,
    DpMode,
};
use redmax::word::{is_reduced, Permutation, Word};

/// A reduced word built by ascending: each choice picks among the current
/// non-descents.
fn reduced_word(n: usize, choices: &[usize]) -> Word {
    let mut p = Permutation::identity(n);
    let mut letters = Vec::new();
    for &c in choices {
        let ups: Vec<usize> = (1..n).filter(|&i| !p.has_descent(i)).collect();
        if ups.is_empty() {
            break;
        }
        let i = ups[c % ups.len()];
        p.mul_generator(i);
        letters.push(i);
    }
    Word { n, letters }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_path_word(n in 3usize..9, k_off in 0usize..8, choices in prop::collection::vec(0usize..64, 0..40)) {
        let k = 1 + k_off % (n - 1);
        let w = reduced_word(n, &choices);
        prop_assert!(is_reduced(&w).unwrap());
        let p = word_to_path(&w, k).unwrap();
        prop_assert!(p.is_valid());
        prop_assert_eq!(p.steps(), w.count(k));
        let back = path_to_word(&p).unwrap();
        prop_assert!(is_reduced(&back).unwrap());
        prop_assert_eq!(word_to_path(&back, k).unwrap(), p);
    }

    #[test]
    fn random_paths_stay_below_the_maximum(k in 1usize..4, extra in 1usize..6, seed in any::<u64>()) {
        let n = k + extra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_complete_path(k, n, &mut rng).unwrap();
        let best = max_multiplicity_path_dfs(k, n, &DfsOptions::default()).unwrap().value;
        prop_assert!(p.is_valid() && p.steps() <= best);
    }

    #[test]
    fn simplify_invariants(k in 1usize..4, len in 0usize..60, depth in 2usize..10, p in 0.0f64..0.6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_reduced(k, len, depth, p, &mut rng);
        let s = simplify(&d).unwrap();
        prop_assert!(s.is_reduced());
        prop_assert!(s.is_simple().unwrap());
        prop_assert_eq!(s.level_k_count(), d.level_k_count());
        prop_assert_eq!(decode_states(&s.states().unwrap(), k).unwrap(), s.events.clone());
        prop_assert_eq!(gwd_to_path(&s).unwrap().steps(), s.level_k_count());
        // a simple diagram is its own simplification
        prop_assert_eq!(simplify(&s).unwrap(), s);
    }

    #[test]
    fn quadratic_arithmetic_matches_floats(a in -50i64..50, b in -50i64..50, c in -50i64..50, e in -50i64..50, d in prop::sample::select(vec![2i64, 3, 5])) {
        let x = QuadNum::new(Ratio::from_integer(a), Ratio::new(b, 3), d).unwrap();
        let y = QuadNum::new(Ratio::new(c, 7), Ratio::from_integer(e), d).unwrap();
        let close = |q: QuadNum, f: f64| (q.to_f64() - f).abs() < 1e-9 * (1.0 + f.abs());
        prop_assert!(close(x + y, x.to_f64() + y.to_f64()));
        prop_assert!(close(x * y, x.to_f64() * y.to_f64()));
        prop_assert!(close(x - y, x.to_f64() - y.to_f64()));
        let diff = x.to_f64() - y.to_f64();
        if diff.abs() > 1e-9 {
            prop_assert_eq!(x > y, diff > 0.0);
        }
    }
}

#[test]
fn dp_modes_are_consistent() {
    let caps = Caps::default();
    for n in 2..=7 {
        for k in 1..n {
            let v = |mode| {
                max_multiplicity_weak_order_dp(k, n, mode, &caps)
                    .unwrap()
                    .value
            };
            let (max, min, pair) = (v(DpMode::Max), v(DpMode::Min), v(DpMode::MaxPair));
            assert!(min <= max, "({k},{n})");
            if 2 * k == n {
                assert_eq!(pair, max);
            } else {
                // the pair count splits into two single counts
                assert!(max <= pair && pair <= 2 * max, "({k},{n})");
            }
        }
    }
}

#[test]
fn type_a_minimum_matches_the_weak_order() {
    let caps = Caps::default();
    for n in 2..=8 {
        let sys = CoxeterSystem::new(CoxeterType::A(n - 1)).unwrap();
        for k in 1..n {
            let dp = max_multiplicity_weak_order_dp(k, n, DpMode::Min, &caps).unwrap();
            assert_eq!(sys.min_multiplicity(k).unwrap(), dp.value, "S_{n}, s_{k}");
        }
    }
}

#[test]
fn coxeter_oracle_agrees_in_cap() {
    let caps = Caps::default();
    let mut types: Vec<CoxeterType> = (1..=7).map(CoxeterType::A).collect();
    types.extend((2..=5).map(CoxeterType::B));
    types.extend([
        CoxeterType::D(4),
        CoxeterType::D(5),
        CoxeterType::F4,
        CoxeterType::G2,
    ]);
    for ty in types {
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
fn simple_diagrams_reach_the_path_maximum() {
    let opts = DfsOptions::default();
    for k in 1..=2 {
        for n in k + 1..=7 {
            let m = max_multiplicity_path_dfs(k, n, &opts).unwrap().value;
            assert_eq!(max_simple_crossings(k, n).unwrap(), m, "k={k}, n={n}");
        }
    }
    for n in 4..=8 {
        let m = max_multiplicity_path_dfs(3, n, &opts).unwrap().value;
        assert_eq!(max_simple_crossings(3, n).unwrap(), m, "k=3, n={n}");
    }
}

#[test]
fn piece_graph_cycles_all_fall() {
    // every cycle loses at least one wire: no cycle is crossing-only
    for k in 1..=3 {
        let g = enumerate_tk(k, &Caps::default()).unwrap();
        let crossing_edges: Vec<_> = g.edges.iter().filter(|e| e.dfall == 0).collect();
        let n = g.nodes.len();
        let mut indeg = vec![0usize; n];
        for e in &crossing_edges {
            indeg[e.to] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for e in crossing_edges.iter().filter(|e| e.from == v) {
                indeg[e.to] -= 1;
                if indeg[e.to] == 0 {
                    queue.push(e.to);
                }
            }
        }
        assert_eq!(seen, n, "crossing-only cycle for k={k}");
    }
}
