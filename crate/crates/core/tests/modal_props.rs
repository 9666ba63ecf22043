use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

use pointwise::logic::syntax::Formula;
use pointwise::modal::fixpoint::{holds_at, reachable};
use pointwise::modal::frames_gen::canonical_form;
use pointwise::modal::*;

/// Tree pre-orders found by scanning every relation on `n` worlds.
fn brute_force_trees(n: usize) -> BTreeSet<u64> {
    let mut keys = BTreeSet::new();
    for code in 0u64..1 << (n * n) {
        let edges: Vec<(usize, usize)> = (0..n * n).filter(|&i| code >> i & 1 == 1).map(|i| (i / n, i % n)).collect();
        let f = KripkeFrame::new(n, &edges).unwrap();
        if !f.is_reflexive() || !f.is_transitive() {
            continue;
        }
        let rooted = (0..n).any(|r| (0..n).all(|w| f.sees(r, w)));
        let tree = (0..n).all(|w| {
            let below: Vec<usize> = (0..n).filter(|&a| f.sees(a, w)).collect();
            below.iter().all(|&a| below.iter().all(|&b| f.sees(a, b) || f.sees(b, a)))
        });
        if rooted && tree {
            keys.insert(canonical_form(&f).0);
        }
    }
    keys
}

#[test]
fn generator_matches_brute_force() {
    for n in 1..=4 {
        let generated: BTreeSet<u64> = generate_tree_preorders(n).iter().map(|f| canonical_form(f).0).collect();
        assert_eq!(generated, brute_force_trees(n), "n = {n}");
    }
    let counts: Vec<usize> = (1..=5).map(|n| generate_tree_preorders(n).len()).collect();
    assert_eq!(&counts[..4], [1, 2, 5, 13]);
    for n in 1..=5 {
        assert!(generate_tree_preorders(n).iter().all(|f| f.is_reflexive() && f.is_transitive()));
    }
}

#[test]
fn s4_theorems_valid_on_tree_preorders() {
    for n in 1..=5 {
        for frame in generate_tree_preorders(n) {
            for (name, f) in s4_theorems() {
                let v = check_frame_validity(&f, &frame, 3).unwrap();
                assert!(v.valid, "{name} fails on {:?}", frame.edges());
            }
        }
    }
}

#[test]
fn s4_theorems_valid_on_all_small_preorders() {
    for n in 1..=3 {
        for code in 0u64..1 << (n * n) {
            let edges: Vec<(usize, usize)> = (0..n * n).filter(|&i| code >> i & 1 == 1).map(|i| (i / n, i % n)).collect();
            let Ok(frame) = KripkeFrame::s4(n, &edges) else { continue };
            for (name, f) in s4_theorems() {
                assert!(check_frame_validity(&f, &frame, 3).unwrap().valid, "{name}");
            }
        }
    }
}

#[test]
fn stronger_axioms_fail_somewhere() {
    for (name, axiom) in stronger_axioms() {
        let failure = (1..=4).flat_map(generate_tree_preorders).find_map(|frame| check_frame_validity(&axiom, &frame, 3).unwrap().countermodel);
        let c = failure.unwrap_or_else(|| panic!("{name} holds on every tree pre-order"));
        assert!(!check_model(&axiom, &c.model, c.world).unwrap());
        assert!(!holds_at(&axiom, &c.model, c.world).unwrap());
    }
}

fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::prop(["P", "Q"][rng.gen_range(0..2)]);
    }
    let a = random_formula(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => Formula::not(a),
        1 => Formula::and(a, random_formula(rng, depth - 1)),
        2 => Formula::or(a, random_formula(rng, depth - 1)),
        3 => Formula::implies(a, random_formula(rng, depth - 1)),
        4 => Formula::necessarily(a),
        _ => Formula::possibly(a),
    }
}

fn random_model(rng: &mut ChaCha8Rng) -> KripkeModel {
    let n = rng.gen_range(1..=7);
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.3)).collect();
    let valuation = ["P", "Q"].iter().map(|p| (p.to_string(), (0..n).filter(|_| rng.gen_bool(0.5)).collect())).collect();
    KripkeModel::new(KripkeFrame::new(n, &edges).unwrap(), valuation).unwrap()
}

#[test]
fn evaluators_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let m = random_model(&mut rng);
        let f = random_formula(&mut rng, 5);
        for w in 0..m.frame.worlds() {
            assert_eq!(check_model(&f, &m, w).unwrap(), holds_at(&f, &m, w).unwrap(), "{f} at {w}");
        }
    }
}

#[test]
fn switch_matches_reachability() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.2)).collect();
        let p: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let g = WorldGraph { worlds: n, edges: edges.clone(), valuation: BTreeMap::from([("P".to_string(), p.clone())]) };
        let succ: Vec<u64> = (0..n).map(|a| edges.iter().filter(|e| e.0 == a).fold(0, |s, e| s | 1 << e.1)).collect();
        let yes = p.iter().fold(0u64, |s, &w| s | 1 << w);
        let no = !yes & ((1u64 << n) - 1);
        let all = (1u64 << n) - 1;
        let expected = reachable(yes, &succ) == all && reachable(no, &succ) == all;
        assert_eq!(is_switch("P", &g).unwrap(), expected);
    }
}

#[test]
fn preorder_generator_covers_every_labelled_preorder() {
    for (n, labelled) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
        let mut classes = BTreeSet::new();
        let mut count = 0;
        for code in 0u64..1 << (n * n) {
            let edges: Vec<(usize, usize)> = (0..n * n).filter(|&i| code >> i & 1 == 1).map(|i| (i / n, i % n)).collect();
            let Ok(frame) = KripkeFrame::s4(n, &edges) else { continue };
            count += 1;
            classes.insert(canonical_form(&frame).0);
        }
        assert_eq!(count, labelled);
        let generated: BTreeSet<u64> = generate_preorders(n).iter().map(|f| canonical_form(f).0).collect();
        assert_eq!(generated, classes, "n = {n}");
        assert_eq!(generate_preorders(n).len(), classes.len());
    }
}
