//! Finite tree pre-orders: reflexive-transitive closures of rooted trees of
//! clusters.

use std::collections::BTreeMap;

use super::frame::KripkeFrame;

pub const MAX_TREE_WORLDS: usize = 5;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn mask(f: &KripkeFrame) -> u64 {
    f.edges().iter().fold(0, |m, &(a, b)| m | 1 << (a * f.worlds() + b))
}

/// The least adjacency mask over all renamings, and the renamed frame.
pub fn canonical_form(f: &KripkeFrame) -> (u64, KripkeFrame) {
    permutations(f.worlds())
        .iter()
        .map(|p| {
            let g = f.permuted(p);
            (mask(&g), g)
        })
        .min_by_key(|(m, _)| *m)
        .expect("at least one permutation")
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    (1..=n - (parts - 1))
        .flat_map(|first| {
            compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Parent arrays `p` with `p[i] < i` for clusters `1..c`.
fn parent_arrays(c: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 1..c {
        out = out.into_iter().flat_map(|p: Vec<usize>| (0..i).map(move |q| [p.clone(), vec![q]].concat())).collect();
    }
    out
}

/// Every tree pre-order with exactly `n` worlds, one per isomorphism type,
/// ordered by canonical adjacency mask.
pub fn generate_tree_preorders(n: usize) -> Vec<KripkeFrame> {
    assert!(n <= MAX_TREE_WORLDS, "at most {MAX_TREE_WORLDS} worlds");
    if n == 0 {
        return vec![];
    }
    let mut found = BTreeMap::new();
    for c in 1..=n {
        for parents in parent_arrays(c) {
            let ancestor = |mut a: usize, b: usize| loop {
                if a == b {
                    return true;
                }
                if a == 0 {
                    return false;
                }
                a = parents[a - 1];
            };
            for sizes in compositions(n, c) {
                let cluster: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
                let edges: Vec<(usize, usize)> =
                    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| ancestor(cluster[b], cluster[a])).collect();
                let f = KripkeFrame::s4(n, &edges).expect("closure of a tree order");
                let (key, canon) = canonical_form(&f);
                found.entry(key).or_insert(canon);
            }
        }
    }
    found.into_values().collect()
}

/// Every reflexive-transitive frame with exactly `n` worlds, one per
/// isomorphism type, ordered by canonical adjacency mask.
pub fn generate_preorders(n: usize) -> Vec<KripkeFrame> {
    assert!(n <= MAX_TREE_WORLDS, "at most {MAX_TREE_WORLDS} worlds");
    if n == 0 {
        return vec![];
    }
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut found = BTreeMap::new();
    for code in 0u64..1 << off.len() {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|w| (w, w)).collect();
        edges.extend(off.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &e)| e));
        let f = KripkeFrame::new(n, &edges).expect("worlds in range");
        if f.is_transitive() {
            let (key, canon) = canonical_form(&f);
            found.entry(key).or_insert(canon);
        }
    }
    found.into_values().collect()
}
