use proptest::prelude::*;
use std::collections::BTreeSet;

use pointwise::definability::extension::{is_covering, is_end_extension, is_top_extension};
use pointwise::definability::*;
use pointwise::logic::classify::{classify, ClassKind};
use pointwise::logic::enumerate::Pool;
use pointwise::logic::eval::{evaluate, Assignment};
use pointwise::logic::signature::{Signature, Symbol};
use pointwise::logic::syntax::Formula;
use pointwise::structure::FiniteStructure;

fn graph_sig() -> Signature {
    Signature::empty("G").extended("G", &[], &[Symbol::new("E", 2), Symbol::new("P", 1)], false)
}

fn structure(n: usize, edges: &[(usize, usize)], marked: &[usize]) -> FiniteStructure {
    let mut m = FiniteStructure::new(n, graph_sig());
    for &(a, b) in edges {
        m.insert("E", &[a % n, b % n]).unwrap();
    }
    for &a in marked {
        m.insert("P", &[a % n]).unwrap();
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbits_match_types(n in 1usize..=5, edges in prop::collection::vec((0usize..5, 0usize..5), 0..8), marked in prop::collection::vec(0usize..5, 0..3)) {
        let m = structure(n, &edges, &marked);
        prop_assert_eq!(definable_elements(&m).unwrap(), definable_by_types(&m).unwrap());
    }

    #[test]
    fn top_implies_end(keep in prop::collection::btree_set(0usize..16, 1..10)) {
        let v4 = hf_universe(4).unwrap();
        let keep: Vec<usize> = keep.into_iter().collect();
        let sub = v4.restrict(&keep).unwrap();
        let e = Embedding::new(&sub, &v4, keep.clone()).unwrap();
        let end = is_end_extension(&e).unwrap();
        let top = is_top_extension(&e).unwrap();
        prop_assert!(!top || end);
        let transitive = keep.iter().all(|&b| v4.members(b).iter().all(|a| keep.contains(a)));
        prop_assert_eq!(end, transitive);
        if let Some(w) = is_covering(&e).unwrap() {
            prop_assert!(keep.iter().all(|&a| v4.member(a, w)));
        }
    }
}

fn holds(f: &Formula, m: &FiniteStructure, vars: &[&str], vals: &[usize]) -> bool {
    let mut a = Assignment::new();
    for (v, &x) in vars.iter().zip(vals) {
        a.insert(v.to_string(), x);
    }
    evaluate(f, m, &a).unwrap()
}

#[test]
fn delta0_absolute_between_hf_levels() {
    let vs: Vec<FiniteStructure> = (0..=4).map(|n| hf_universe(n).unwrap()).collect();
    for i in 0..=4 {
        for j in i..=4 {
            let e = Embedding::inclusion(&vs[i], &vs[j]).unwrap();
            let size = if j == 4 && i > 0 { 10 } else { 9 };
            let v = is_sigma_m_elementary(&e, 0, size).unwrap();
            assert!(v.elementary, "V_{i} -> V_{j}: {:?}", v.counterexample);
        }
    }
}

#[test]
fn delta0_oracle_by_evaluation() {
    let (v3, v4) = (hf_universe(3).unwrap(), hf_universe(4).unwrap());
    let vars = ["x", "y"];
    let mut pool = Pool::new(&Signature::set(), &vars);
    let mut checked = 0;
    for f in pool.formulas_up_to(7).into_iter().filter(|f| f.is_bounded()) {
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(holds(&f, &v3, &vars, &[a, b]), holds(&f, &v4, &vars, &[a, b]), "{f}");
            }
        }
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn sigma1_counterexample_is_real() {
    let (v3, v4) = (hf_universe(3).unwrap(), hf_universe(4).unwrap());
    let e = Embedding::inclusion(&v3, &v4).unwrap();
    let c = is_sigma_m_elementary(&e, 1, 6).unwrap().counterexample.expect("fails");
    let vars: Vec<&str> = c.parameters.keys().map(String::as_str).collect();
    let vals: Vec<usize> = c.parameters.values().copied().collect();
    assert_eq!(holds(&c.formula, &v3, &vars, &vals), c.source_truth);
    assert_ne!(holds(&c.formula, &v4, &vars, &vals), c.source_truth);
}

#[test]
fn canonical_definitions_classified() {
    let v4 = hf_universe(4).unwrap();
    for x in 0..16 {
        let f = canonical_definition(&v4, x).unwrap();
        assert!(f.free_vars().into_iter().eq(["v".to_string()]));
        let class = classify(&f).unwrap();
        assert!(matches!(class.kind, ClassKind::Pi | ClassKind::Delta0), "{x}: {class}");
    }
}

#[test]
fn paris_matches_ordinal_subset() {
    for n in 1..=4 {
        let v = hf_universe(n).unwrap();
        let p = paris_check(&v).unwrap();
        let ords: BTreeSet<usize> = p.ordinals.iter().copied().collect();
        assert_eq!(p.paris, ords.is_subset(&definable_elements(&v).unwrap()));
        assert!(p.implication_holds);
    }
}

#[test]
fn reconstruction_isomorphic() {
    for n in 1..=3 {
        let v = hf_universe(n).unwrap();
        let t = bounded_theory(&v, 64).unwrap();
        let r = reconstruct_from_theory(&t, v.signature(), 64).unwrap();
        assert!(find_isomorphism(&v, &r).is_some(), "V_{n}");
    }
    let path = structure(2, &[(0, 1)], &[]);
    let t = bounded_theory(&path, 5).unwrap();
    let r = reconstruct_from_theory(&t, path.signature(), 5).unwrap();
    assert!(find_isomorphism(&path, &r).is_some());
}

#[test]
fn symmetric_structure_is_insufficient() {
    let m = structure(2, &[], &[]);
    let t = bounded_theory(&m, 5).unwrap();
    assert!(matches!(reconstruct_from_theory(&t, m.signature(), 5), Err(DefinabilityError::Insufficient(_))));
}
