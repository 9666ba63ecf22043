//! Rebuilding a pointwise definable structure from its bounded theory.
//!
//! The bounded theory decides a fixed syntactic family of sentences built
//! from candidate definitions `φ(v)`: cardinality bounds, "φ has exactly one
//! satisfier", "φ and ψ pick the same element" and the atomic diagram read
//! through definitions. Reconstruction only queries that family.

use std::collections::{BTreeMap, BTreeSet};

use super::canonical::canonical_definition;
use super::hf::hf_universe;
use super::DefinabilityError;
use crate::logic::enumerate::Pool;
use crate::logic::eval::evaluate_sentence;
use crate::logic::signature::Signature;
use crate::logic::syntax::{Formula, Term, EQ, IN};
use crate::structure::{tuples_over, FiniteStructure};

/// Candidates from the generic pool have at most this size.
pub const POOL_LIMIT: usize = 5;
/// Canonical ∈-definitions are drawn from codes below this.
const CANONICAL_CODES: usize = 16;
pub const RECONSTRUCT_LIMIT: usize = 8;

/// Answers sentences of the family; `None` when undecided.
pub trait TheoryOracle {
    fn holds(&self, sentence: &Formula) -> Option<bool>;
}

/// A finite set of sentences asserted true.
#[derive(Clone, Debug)]
pub struct BoundedTheory {
    pub signature: Signature,
    pub bound: usize,
    pub sentences: Vec<Formula>,
    truth: BTreeMap<String, bool>,
}

impl BoundedTheory {
    pub fn new(signature: Signature, bound: usize, sentences: Vec<Formula>) -> Result<Self, DefinabilityError> {
        let mut truth = BTreeMap::new();
        for s in &sentences {
            let (key, value) = match s {
                Formula::Not(inner) => (inner.to_string(), false),
                _ => (s.to_string(), true),
            };
            if truth.insert(key.clone(), value) == Some(!value) {
                return Err(DefinabilityError::Inconsistent(format!("asserts both {key} and its negation")));
            }
        }
        Ok(BoundedTheory { signature, bound, sentences, truth })
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

impl TheoryOracle for BoundedTheory {
    fn holds(&self, sentence: &Formula) -> Option<bool> {
        match sentence {
            Formula::Not(inner) => self.truth.get(&inner.to_string()).map(|v| !v),
            _ => self.truth.get(&sentence.to_string()).copied(),
        }
    }
}

fn param(i: usize) -> String {
    format!("a{i}")
}

fn at(phi: &Formula, var: &str) -> Formula {
    phi.substitute("v", &Term::var(var))
}

/// Candidate definitions with the single free variable `v`, in a fixed order.
pub fn candidates(sig: &Signature, bound: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    if sig.has_relation(IN) {
        let hf = hf_universe(4).expect("V_4");
        for c in 0..CANONICAL_CODES {
            let f = canonical_definition(&hf, c).expect("HF universe");
            if f.size() <= bound && seen.insert(f.to_string()) {
                out.push(f);
            }
        }
    }
    let mut pool = Pool::new(sig, &["v", "u"]);
    for f in pool.formulas_up_to(bound.min(POOL_LIMIT)) {
        if f.free_vars().into_iter().eq(["v".to_string()]) && seen.insert(f.to_string()) {
            out.push(f);
        }
    }
    out
}

pub fn at_least(k: usize) -> Formula {
    let distinct = Formula::conjoin(
        (0..k).flat_map(|i| (i + 1..k).map(move |j| Formula::not(Formula::eq(Term::var(param(i)), Term::var(param(j)))))),
    )
    .unwrap_or_else(|| Formula::eq(Term::var(param(0)), Term::var(param(0))));
    (0..k).rev().fold(distinct, |f, i| Formula::exists(param(i), f))
}

pub fn unique(phi: &Formula) -> Formula {
    let (a, b) = (param(0), param(1));
    let some = Formula::exists(&a, at(phi, &a));
    let same = Formula::implies(Formula::and(at(phi, &a), at(phi, &b)), Formula::eq(Term::var(&a), Term::var(&b)));
    Formula::and(some, Formula::forall(&a, Formula::forall(&b, same)))
}

pub fn same(phi: &Formula, psi: &Formula) -> Formula {
    let a = param(0);
    Formula::exists(&a, Formula::and(at(phi, &a), at(psi, &a)))
}

/// `∃a0..ak (φ_0(a0) ∧ .. ∧ R(a0, .., ak))`
pub fn related(rel: &str, defs: &[&Formula]) -> Formula {
    let body = defs
        .iter()
        .enumerate()
        .rev()
        .fold(Formula::atom(rel, (0..defs.len()).map(|i| Term::var(param(i))).collect()), |f, (i, d)| Formula::and(at(d, &param(i)), f));
    (0..defs.len()).rev().fold(body, |f, i| Formula::exists(param(i), f))
}

fn diagram_relations(sig: &Signature) -> Vec<(String, usize)> {
    sig.relations.iter().filter(|r| r.name != EQ).map(|r| (r.name.clone(), r.arity)).collect()
}

fn check_relational(sig: &Signature) -> Result<(), DefinabilityError> {
    if sig.constants.is_empty() && sig.functions.is_empty() {
        Ok(())
    } else {
        Err(DefinabilityError::Insufficient("function and constant symbols are not reconstructed".into()))
    }
}

/// Every sentence of the family, each stated as true or negated.
pub fn bounded_theory(m: &FiniteStructure, bound: usize) -> Result<BoundedTheory, DefinabilityError> {
    check_relational(m.signature())?;
    if m.size() > RECONSTRUCT_LIMIT {
        return Err(DefinabilityError::TooLarge { what: format!("universe of {}", m.size()), limit: RECONSTRUCT_LIMIT });
    }
    let sig = m.signature().clone();
    let defs = candidates(&sig, bound);
    let mut family: Vec<Formula> = (1..=RECONSTRUCT_LIMIT + 1).map(at_least).collect();
    family.extend(defs.iter().map(unique));
    for (i, p) in defs.iter().enumerate() {
        family.extend(defs[i + 1..].iter().map(|q| same(p, q)));
    }
    // Diagram sentences only through definitions of single elements, so the
    // family stays quadratic rather than one sentence per tuple of formulas.
    let singles: Vec<&Formula> = defs.iter().filter(|d| evaluate_sentence(&unique(d), m) == Ok(true)).collect();
    for (rel, arity) in diagram_relations(&sig) {
        for t in tuples_over(singles.len(), arity) {
            family.push(related(&rel, &t.iter().map(|&i| singles[i]).collect::<Vec<_>>()));
        }
    }
    let sentences = family
        .into_iter()
        .map(|s| match evaluate_sentence(&s, m) {
            Ok(true) => Ok(s),
            Ok(false) => Ok(Formula::not(s)),
            Err(e) => Err(DefinabilityError::Insufficient(e.to_string())),
        })
        .collect::<Result<_, _>>()?;
    BoundedTheory::new(sig, bound, sentences)
}

fn ask(t: &dyn TheoryOracle, s: &Formula) -> Result<bool, DefinabilityError> {
    t.holds(s).ok_or_else(|| DefinabilityError::Insufficient(format!("undecided: {s}")))
}

/// Reads a structure off the theory: element `i` is the `i`-th candidate
/// definition with a unique satisfier not matching an earlier one.
pub fn reconstruct_from_theory(t: &dyn TheoryOracle, sig: &Signature, bound: usize) -> Result<FiniteStructure, DefinabilityError> {
    check_relational(sig)?;
    let defs = candidates(sig, bound);
    let mut n = 0;
    while n <= RECONSTRUCT_LIMIT && ask(t, &at_least(n + 1))? {
        n += 1;
    }
    if n > RECONSTRUCT_LIMIT {
        return Err(DefinabilityError::TooLarge { what: format!("more than {RECONSTRUCT_LIMIT} elements"), limit: RECONSTRUCT_LIMIT });
    }
    let mut reps: Vec<&Formula> = Vec::new();
    for d in &defs {
        if reps.len() == n {
            break;
        }
        if !ask(t, &unique(d))? {
            continue;
        }
        let mut new = true;
        for r in &reps {
            // The family orders pairs by candidate position.
            if ask(t, &same(r, d))? {
                new = false;
                break;
            }
        }
        if new {
            reps.push(d);
        }
    }
    if reps.len() < n {
        return Err(DefinabilityError::Insufficient(format!("{} of {n} elements defined within size {bound}", reps.len())));
    }
    let mut m = FiniteStructure::new(n, sig.clone());
    for (rel, arity) in diagram_relations(sig) {
        for tuple in tuples_over(n, arity) {
            if ask(t, &related(&rel, &tuple.iter().map(|&i| reps[i]).collect::<Vec<_>>()))? {
                m.insert(&rel, &tuple).map_err(|e| DefinabilityError::Inconsistent(e.to_string()))?;
            }
        }
    }
    Ok(m)
}

/// An isomorphism `a → b` found by trying every bijection.
pub fn find_isomorphism(a: &FiniteStructure, b: &FiniteStructure) -> Option<Vec<usize>> {
    if a.size() != b.size() || a.size() > RECONSTRUCT_LIMIT || a.relation_symbols() != b.relation_symbols() {
        return None;
    }
    let n = a.size();
    let rels = a.relation_symbols();
    let preserves = |p: &[usize]| {
        rels.iter().all(|(r, k)| {
            tuples_over(n, *k).iter().all(|t| a.holds(r, t) == b.holds(r, &t.iter().map(|&x| p[x]).collect::<Vec<_>>()))
        })
    };
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if preserves(&perm) {
            return Some(perm);
        }
        // next lexicographic permutation
        let i = (1..n).rev().find(|&i| perm[i - 1] < perm[i])?;
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}
