mod common;

use common::*;
use pointwise::logic::coding::{decode, encode};
use pointwise::logic::eval::{evaluate, Assignment};
use pointwise::logic::prenex::{is_prenex, prenex};
use pointwise::logic::syntax::{Formula, Term};
use pointwise::logic::{classify, godel_decode, godel_encode, parse, Signature};
use proptest::prelude::*;
use std::collections::HashSet;
use std::sync::OnceLock;

fn small_structures() -> &'static Vec<pointwise::structure::FiniteStructure> {
    static S: OnceLock<Vec<pointwise::structure::FiniteStructure>> = OnceLock::new();
    S.get_or_init(|| {
        let mut v = all_digraphs(3);
        // a sample of the 4-element ones
        v.extend((0..64u64).map(|i| digraph(4, i.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 16)));
        v
    })
}

fn assignments(n: usize) -> Vec<Assignment> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push(Assignment::from([("x".into(), a), ("y".into(), b), ("z".into(), c)]));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_round_trip(f in set_formula()) {
        let back = parse(&f.to_string(), &Signature::set()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn arith_render_parse_round_trip(f in arith_formula()) {
        let back = parse(&f.to_string(), &Signature::arith()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn coding_round_trip(f in arith_formula()) {
        prop_assert_eq!(godel_decode(&godel_encode(&f)).unwrap(), f);
    }

    #[test]
    fn term_coding_round_trip(f in arith_formula()) {
        if let Formula::Atom(_, args) = &f {
            for t in args {
                prop_assert_eq!(&decode::<Term>(&encode(t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn prenex_is_prenex_and_idempotent(f in set_formula()) {
        let p = prenex(&f).unwrap();
        prop_assert!(is_prenex(&p));
        prop_assert_eq!(prenex(&p).unwrap(), p.clone());
        prop_assert_eq!(p.free_vars(), f.free_vars());
    }

    #[test]
    fn classify_agrees_with_shape(f in set_formula()) {
        let c = classify(&f).unwrap();
        let s = pointwise::logic::classify::shape(&f);
        prop_assert_eq!(c, pointwise::logic::ComplexityClass::of_blocks(&s));
    }

    #[test]
    fn classify_monotone_under_one_quantifier(f in set_formula(), v in var(), universal in any::<bool>()) {
        let c = classify(&f).unwrap();
        let g = if universal { Formula::forall(v, f) } else { Formula::exists(v, f) };
        let d = classify(&g).unwrap();
        prop_assert!(d.level <= c.level + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn prenex_preserves_truth(f in set_formula().prop_filter("size <= 10", |f| f.size() <= 10)) {
        let p = prenex(&f).unwrap();
        for m in small_structures() {
            for asg in assignments(m.size()) {
                prop_assert_eq!(evaluate(&f, m, &asg).unwrap(), evaluate(&p, m, &asg).unwrap(), "{} vs {}", f, p);
            }
        }
    }
}

#[test]
fn coding_is_injective_on_a_corpus() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]));
    let strat = arith_formula();
    let mut seen = std::collections::HashMap::new();
    let mut distinct = HashSet::new();
    for _ in 0..10_000 {
        let f = strat.new_tree(&mut runner).unwrap().current();
        let c = godel_encode(&f);
        if let Some(prev) = seen.insert(c.clone(), f.clone()) {
            assert_eq!(prev, f, "collision at {c}");
        }
        distinct.insert(f);
    }
    assert_eq!(seen.len(), distinct.len());
}
