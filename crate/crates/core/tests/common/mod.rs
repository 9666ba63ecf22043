#![allow(dead_code)]

use pointwise::logic::syntax::{BoundKind, Formula, Term};
use pointwise::logic::Signature;
use pointwise::structure::FiniteStructure;
use proptest::prelude::*;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn var() -> impl Strategy<Value = String> {
    prop::sample::select(&VARS[..]).prop_map(String::from)
}

/// Formulas over `{in, =}` in the variables x, y, z.
pub fn set_formula() -> impl Strategy<Value = Formula> {
    let atom = (var(), var(), any::<bool>()).prop_map(|(a, b, member)| {
        if member {
            Formula::mem(Term::Var(a), Term::Var(b))
        } else {
            Formula::eq(Term::Var(a), Term::Var(b))
        }
    });
    atom.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (var(), inner.clone()).prop_map(|(v, f)| Formula::forall(v, f)),
            (var(), inner.clone()).prop_map(|(v, f)| Formula::exists(v, f)),
            (var(), var(), inner.clone()).prop_map(|(v, b, f)| Formula::bounded_forall(v, BoundKind::In, Term::Var(b), f)),
            (var(), var(), inner).prop_map(|(v, b, f)| Formula::bounded_exists(v, BoundKind::In, Term::Var(b), f)),
        ]
    })
}

fn arith_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        var().prop_map(Term::Var),
        Just(Term::Zero),
        (1u32..500).prop_map(|n| Term::Num(n.into())),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)),
        ]
    })
}

/// Arithmetic formulas with arbitrary terms and both bound kinds' arithmetic form.
pub fn arith_formula() -> impl Strategy<Value = Formula> {
    let atom = (arith_term(), arith_term(), any::<bool>()).prop_map(|(a, b, lt)| if lt { Formula::lt(a, b) } else { Formula::eq(a, b) });
    atom.prop_recursive(4, 20, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (var(), inner.clone()).prop_map(|(v, f)| Formula::forall(v, f)),
            (var(), inner.clone()).prop_map(|(v, f)| Formula::exists(v, f)),
            (var(), arith_term(), inner).prop_map(|(v, t, f)| Formula::bounded_forall(v, BoundKind::Lt, t, f)),
        ]
    })
}

/// Every `{in}`-structure on 1..=max elements.
pub fn all_digraphs(max: usize) -> Vec<FiniteStructure> {
    let mut out = Vec::new();
    for n in 1..=max {
        for bits in 0u64..(1 << (n * n)) {
            let mut m = FiniteStructure::new(n, Signature::set());
            for a in 0..n {
                for b in 0..n {
                    if bits >> (a * n + b) & 1 == 1 {
                        m.insert("in", &[a, b]).unwrap();
                    }
                }
            }
            out.push(m);
        }
    }
    out
}

/// A digraph on `n` elements from the low bits of `bits`.
pub fn digraph(n: usize, bits: u64) -> FiniteStructure {
    let mut m = FiniteStructure::new(n, Signature::set());
    for a in 0..n {
        for b in 0..n {
            if bits >> ((a * n + b) % 64) & 1 == 1 {
                m.insert("in", &[a, b]).unwrap();
            }
        }
    }
    m
}
