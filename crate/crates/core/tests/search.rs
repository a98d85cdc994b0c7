mod common;

use std::collections::BTreeSet;

use greenseq_core::fixtures;
use greenseq_core::{
    classify, enumerate_mgs, enumerate_reddening, export_exchange_graph, mutate_matrix,
    prune_check, repetition_prune_check, rotate, run_sequence, CanonicalCMatrix, ExchangeMatrix,
    IntMatrix, SearchConfig, Seed, Vertex,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Brute force over the extended matrix `[B; I]` with plain matrix mutation:
/// every sequence of green steps (or of at most `r` red steps) up to `bound`.
fn oracle(b0: &ExchangeMatrix, bound: usize, r: usize) -> BTreeSet<Vec<Vertex>> {
    let n = b0.n();
    let mut ext = IntMatrix::zeros(2 * n, n);
    for i in 0..n {
        for j in 0..n {
            ext[(i, j)] = b0.b()[(i, j)].clone();
        }
        ext[(n + i, i)] = BigInt::from(1);
    }
    let mut out = BTreeSet::new();
    let mut stack = vec![(ext, Vec::new(), 0usize)];
    while let Some((m, path, red)) = stack.pop() {
        let c_entries = (n..2 * n).flat_map(|i| (0..n).map(move |j| (i, j)));
        if c_entries.clone().all(|(i, j)| !m[(i, j)].is_positive()) {
            out.insert(path.clone());
        }
        if path.len() == bound {
            continue;
        }
        for k in 1..=n {
            let green = (n..2 * n).any(|i| m[(i, k - 1)].is_positive());
            let red_next = red + usize::from(!green);
            if red_next > r {
                continue;
            }
            let mut p = path.clone();
            p.push(k);
            stack.push((mutate_matrix(&m, k).unwrap(), p, red_next));
        }
    }
    out
}

fn as_set(v: Vec<Vec<Vertex>>) -> BTreeSet<Vec<Vertex>> {
    v.into_iter().collect()
}

#[test]
fn mgs_matches_brute_force() {
    for (name, b0) in fixtures::regression_set() {
        let bound = 8;
        let mut cfg = SearchConfig::mgs(bound);
        cfg.prune_infinite_source = false;
        cfg.prune_repetition = false;
        let got = enumerate_mgs(&b0, &cfg).unwrap().sequences();
        assert_eq!(as_set(got), oracle(&b0, bound, 0), "{name}");
    }
}

#[test]
fn reddening_matches_brute_force() {
    let k = fixtures::exchange("kronecker").unwrap();
    let a2 = fixtures::exchange("a2").unwrap();
    for b0 in [k, a2] {
        for r in 0..=2 {
            let mut cfg = SearchConfig::reddening(7, r);
            cfg.prune_repetition = false;
            let got = enumerate_reddening(&b0, &cfg).unwrap();
            assert_eq!(as_set(got.sequences()), oracle(&b0, 7, r));
            // Repetition pruning loses nothing.
            cfg.prune_repetition = true;
            assert_eq!(enumerate_reddening(&b0, &cfg).unwrap().found, got.found);
        }
    }
}

#[test]
fn catalogue_counts() {
    let count = |name: &str, bound| {
        enumerate_mgs(
            &fixtures::exchange(name).unwrap(),
            &SearchConfig::mgs(bound),
        )
        .unwrap()
        .count()
    };
    assert_eq!(count("a2", 10), 2);
    assert_eq!(count("a3_linear", 10), 9);
    assert_eq!(count("muller", 12), 3);
}

#[test]
fn kronecker_reddening_r1() {
    let k = fixtures::exchange("kronecker").unwrap();
    let report = enumerate_reddening(&k, &SearchConfig::reddening(6, 1)).unwrap();
    let with_r: Vec<(Vec<Vertex>, usize)> = report
        .found
        .iter()
        .map(|f| (f.sequence.clone(), f.red_count))
        .collect();
    assert_eq!(
        with_r,
        vec![
            (vec![1, 1, 1, 2], 1),
            (vec![1, 2], 0),
            (vec![1, 2, 1, 1], 1),
            (vec![1, 2, 2, 2], 1),
            (vec![2, 2, 1, 2], 1),
        ]
    );
    for bound in [10, 14] {
        assert_eq!(
            enumerate_reddening(&k, &SearchConfig::reddening(bound, 1))
                .unwrap()
                .count(),
            5
        );
    }
}

#[test]
fn max_red_zero_is_mgs() {
    for (_, b0) in fixtures::regression_set() {
        let mut cfg = SearchConfig::reddening(10, 0);
        cfg.prune_infinite_source = false;
        let red = enumerate_reddening(&b0, &cfg).unwrap();
        let mgs = enumerate_mgs(&b0, &cfg).unwrap();
        assert_eq!(red, mgs);
    }
}

#[test]
fn parallel_and_sequential_agree() {
    for (_, b0) in fixtures::regression_set() {
        let mut cfg = SearchConfig::reddening(8, 1);
        let a = enumerate_reddening(&b0, &cfg).unwrap();
        cfg.parallel = false;
        assert_eq!(a, enumerate_reddening(&b0, &cfg).unwrap());
    }
}

#[test]
fn every_emitted_sequence_classifies() {
    for (_, b0) in fixtures::regression_set() {
        for f in enumerate_reddening(&b0, &SearchConfig::reddening(8, 1))
            .unwrap()
            .found
        {
            let class = classify(&run_sequence(&b0, &f.sequence).unwrap()).unwrap();
            assert_eq!(class.red_count(), Some(f.red_count));
            assert_eq!(class.sigma(), Some(&f.sigma));
        }
    }
}

#[test]
fn rotation_closure() {
    for (name, b0) in fixtures::regression_set() {
        let cfg = SearchConfig::mgs(12);
        for f in enumerate_mgs(&b0, &cfg).unwrap().found {
            let (b1, rotated) = rotate(&b0, &f.sequence).unwrap();
            let others = enumerate_mgs(&b1, &cfg).unwrap().sequences();
            assert!(others.contains(&rotated), "{name}: {rotated:?} missing");
        }
    }
}

#[test]
fn prune_check_fixtures() {
    let seed = |n: &str| Seed::initial(&fixtures::exchange(n).unwrap());
    assert_eq!(prune_check(&seed("muller")).unwrap(), vec![1, 2]);
    assert_eq!(prune_check(&seed("kronecker")).unwrap(), vec![1]);
    assert_eq!(prune_check(&seed("a3_cyclic")).unwrap(), vec![1, 2, 3]);
}

#[test]
fn kronecker_green_path_never_repeats_a_class() {
    let k = fixtures::exchange("kronecker").unwrap();
    let path: Vec<Vertex> = (0..12).map(|s| if s % 2 == 0 { 2 } else { 1 }).collect();
    let t = run_sequence(&k, &path).unwrap();
    assert_eq!(t.red_count(), 0);
    let keys: Vec<CanonicalCMatrix> = t.c_matrices().iter().map(CanonicalCMatrix::new).collect();
    assert!(repetition_prune_check(&keys, 0));
    assert!(!t.terminal().is_all_red());
}

#[test]
fn exchange_graphs() {
    let a3 = fixtures::exchange("a3_linear").unwrap();
    let g = export_exchange_graph(&a3, 6).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (14, 21));
    let c = fixtures::exchange("a3_cyclic").unwrap();
    let g = export_exchange_graph(&c, 6).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (14, 21));
    assert_eq!(export_exchange_graph(&a3, 0).unwrap().nodes.len(), 1);
    // One source (C = I) and one sink (C = -P).
    let outdeg = |i: usize| g.edges.iter().filter(|e| e.from == i).count();
    let indeg = |i: usize| g.edges.iter().filter(|e| e.to == i).count();
    assert_eq!((0..14).filter(|&i| indeg(i) == 0).count(), 1);
    assert_eq!((0..14).filter(|&i| outdeg(i) == 0).count(), 1);
    let dot = g.to_dot();
    assert_eq!(dot.matches("->").count(), 21);
}

#[test]
fn tail_witness_simple_roots() {
    // When both e_i and e_j appear in the maximal green tail of a reddening
    // sequence, e_i (target of an infinite-type arrow j -> i) comes first.
    for name in ["kronecker", "muller"] {
        let q = fixtures::quiver(name).unwrap();
        let b0 = ExchangeMatrix::from_quiver(&q);
        for f in enumerate_reddening(&b0, &SearchConfig::reddening(8, 1))
            .unwrap()
            .found
        {
            let t = run_sequence(&b0, &f.sequence).unwrap();
            let tail = t.maximal_green_tail();
            for a in q.infinite_type_arrows() {
                let pos = |v: Vertex| {
                    tail.iter().position(|s| {
                        s.c_vector.iter().enumerate().all(|(i, x)| {
                            if i + 1 == v {
                                x == &BigInt::from(1)
                            } else {
                                x.is_zero()
                            }
                        })
                    })
                };
                if let (Some(pi), Some(pj)) = (pos(a.target), pos(a.source)) {
                    assert!(pi < pj, "{name} {:?}", f.sequence);
                }
            }
        }
    }
}

#[test]
fn config_errors() {
    let k = fixtures::exchange("kronecker").unwrap();
    let mut cfg = SearchConfig::reddening(4, 1);
    cfg.prune_infinite_source = true;
    assert!(enumerate_reddening(&k, &cfg).is_err());
    assert!(enumerate_mgs(&k, &SearchConfig::mgs(0)).is_err());
}
