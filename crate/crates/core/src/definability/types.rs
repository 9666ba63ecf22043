//! Definability through rank-q types, and least defining formulas.

use std::collections::{BTreeSet, HashMap};

use super::DefinabilityError;
use crate::logic::coding::godel_encode;
use crate::logic::enumerate::Pool;
use crate::logic::eval::{satisfiers, Assignment};
use crate::logic::syntax::Formula;
use crate::structure::{tuples_over, FiniteStructure};

/// Largest universe for the type computation (tuples of length `n + 1`).
pub const TYPE_LIMIT: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Atomic(Vec<bool>),
    Extended(u32, Vec<u32>),
}

struct Typer<'a> {
    m: &'a FiniteStructure,
    relations: Vec<(String, usize)>,
    intern: HashMap<Key, u32>,
    memo: HashMap<(usize, Vec<usize>), u32>,
}

impl<'a> Typer<'a> {
    fn id(&mut self, k: Key) -> u32 {
        let next = self.intern.len() as u32;
        *self.intern.entry(k).or_insert(next)
    }

    /// Equalities and relation facts among the tuple's entries.
    fn atomic(&mut self, t: &[usize]) -> u32 {
        let mut bits = Vec::new();
        for i in 0..t.len() {
            for j in 0..t.len() {
                bits.push(t[i] == t[j]);
            }
        }
        for (name, arity) in &self.relations {
            for pos in tuples_over(t.len(), *arity) {
                let args: Vec<usize> = pos.iter().map(|&p| t[p]).collect();
                bits.push(self.m.holds(name, &args) == Some(true));
            }
        }
        self.id(Key::Atomic(bits))
    }

    /// The rank-q type of `t`: what formulas of quantifier rank ≤ q say about it.
    fn tp(&mut self, t: &[usize], q: usize) -> u32 {
        if let Some(&id) = self.memo.get(&(q, t.to_vec())) {
            return id;
        }
        let a = self.atomic(t);
        let id = if q == 0 {
            a
        } else {
            let mut ext = t.to_vec();
            let mut children = BTreeSet::new();
            for b in self.m.elements() {
                ext.push(b);
                children.insert(self.tp(&ext, q - 1));
                ext.pop();
            }
            self.id(Key::Extended(a, children.into_iter().collect()))
        };
        self.memo.insert((q, t.to_vec()), id);
        id
    }
}

/// Elements whose rank-|M| type no other element shares. For relational
/// structures this is parameter-free definability.
pub fn definable_by_types(m: &FiniteStructure) -> Result<BTreeSet<usize>, DefinabilityError> {
    let n = m.size();
    if n > TYPE_LIMIT {
        return Err(DefinabilityError::TooLarge { what: format!("universe of {n}"), limit: TYPE_LIMIT });
    }
    let mut t = Typer { m, relations: m.relation_symbols(), intern: HashMap::new(), memo: HashMap::new() };
    let types: Vec<u32> = m.elements().map(|x| t.tp(&[x], n)).collect();
    Ok(m.elements().filter(|&x| types.iter().filter(|&&y| y == types[x]).count() == 1).collect())
}

pub fn quantifier_rank(f: &Formula) -> usize {
    use Formula::*;
    match f {
        Atom(..) => 0,
        Not(a) | Necessarily(a) | Possibly(a) => quantifier_rank(a),
        And(a, b) | Or(a, b) | Implies(a, b) => quantifier_rank(a).max(quantifier_rank(b)),
        Forall(_, a) | Exists(_, a) | BoundedForall(_, _, _, a) | BoundedExists(_, _, _, a) => 1 + quantifier_rank(a),
    }
}

/// The least formula `φ(v)` of size ≤ `max_size`, ordered by (quantifier
/// rank, code), whose only satisfier is `x`.
pub fn find_definition(m: &FiniteStructure, x: usize, max_size: usize) -> Option<Formula> {
    let mut pool = Pool::new(m.signature(), &["v", "u", "w"]);
    let mut best: Option<(usize, crate::logic::coding::GodelCode, Formula)> = None;
    for f in pool.formulas_up_to(max_size) {
        let free = f.free_vars();
        if free.len() != 1 || !free.contains("v") {
            continue;
        }
        if satisfiers(&f, "v", m, &Assignment::new()).ok()? != [x] {
            continue;
        }
        let key = (quantifier_rank(&f), godel_encode(&f));
        if best.as_ref().is_none_or(|(r, c, _)| (key.0, &key.1) < (*r, c)) {
            best = Some((key.0, key.1, f));
        }
    }
    best.map(|b| b.2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definability::automorphism::definable_elements;
    use crate::definability::hf::hf_universe;
    use crate::logic::signature::{Signature, Symbol};

    fn digraph(n: usize, edges: &[(usize, usize)]) -> FiniteStructure {
        let sig = Signature::empty("G").extended("G", &[], &[Symbol::new("E", 2)], false);
        let mut m = FiniteStructure::new(n, sig);
        for &(a, b) in edges {
            m.insert("E", &[a, b]).unwrap();
        }
        m
    }

    #[test]
    fn agrees_on_examples() {
        for m in [digraph(2, &[]), digraph(2, &[(0, 1)]), digraph(3, &[(0, 1), (1, 2), (2, 0)]), hf_universe(3).unwrap()] {
            assert_eq!(definable_by_types(&m).unwrap(), definable_elements(&m).unwrap());
        }
    }

    #[test]
    fn least_definitions() {
        let path = digraph(2, &[(0, 1)]);
        let d0 = find_definition(&path, 0, 5).unwrap();
        assert_eq!(quantifier_rank(&d0), 1);
        assert_eq!(satisfiers(&d0, "v", &path, &Assignment::new()).unwrap(), [0]);
        assert!(find_definition(&digraph(2, &[]), 0, 6).is_none());
        let v3 = hf_universe(3).unwrap();
        let empty = find_definition(&v3, 0, 6).unwrap();
        assert_eq!(satisfiers(&empty, "v", &v3, &Assignment::new()).unwrap(), [0]);
    }
}
