//! Σ_m-elementarity of embeddings, checked over every formula up to a size
//! bound by dynamic programming on truth tables.
//!
//! Each formula over the variables `x, y, z` is represented by its truth
//! tables on the source and target assignments, its quantifier blocks, and
//! the first formula found with them. Two formulas with the same tables and
//! blocks behave identically in every later combination, so keeping one per
//! class covers all formulas.

use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

use super::extension::Embedding;
use super::DefinabilityError;
use crate::logic::prenex::merge_plan;
use crate::logic::syntax::{BoundKind, Formula, Quantifier, Term, EQ};
use crate::proof::formula_text;
use crate::structure::FiniteStructure;

pub const SIZE_LIMIT: usize = 12;
pub const UNIVERSE_LIMIT: usize = 16;
const VARS: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(with = "formula_text")]
    pub formula: Formula,
    /// Values of the free variables, as source elements.
    pub parameters: BTreeMap<String, usize>,
    pub source_truth: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementarityVerdict {
    pub m: usize,
    pub size_bound: usize,
    pub elementary: bool,
    pub formulas_checked: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Table {
    bits: Vec<u64>,
}

impl Table {
    fn new(len: usize) -> Self {
        Table { bits: vec![0; len.div_ceil(64).max(1)] }
    }
    fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }
}

struct Side<'a> {
    m: &'a FiniteStructure,
    n: usize,
    len: usize,
    members: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(m: &'a FiniteStructure) -> Self {
        let n = m.size();
        Side { m, n, len: n.pow(VARS.len() as u32), members: m.elements().map(|b| m.members(b)).collect() }
    }

    fn digit(&self, a: usize, var: usize) -> usize {
        a / self.n.pow((VARS.len() - 1 - var) as u32) % self.n
    }

    fn with(&self, a: usize, var: usize, value: usize) -> usize {
        let w = self.n.pow((VARS.len() - 1 - var) as u32);
        a - self.digit(a, var) * w + value * w
    }

    fn atom(&self, rel: &str, i: usize, j: usize) -> Table {
        let mut t = Table::new(self.len);
        for a in 0..self.len {
            let (u, v) = (self.digit(a, i), self.digit(a, j));
            if if rel == EQ { u == v } else { self.m.member(u, v) } {
                t.set(a);
            }
        }
        t
    }

    fn not(&self, f: &Table) -> Table {
        let mut t = Table::new(self.len);
        (0..self.len).filter(|&a| !f.get(a)).for_each(|a| t.set(a));
        t
    }

    fn binary(&self, f: &Table, g: &Table, op: Op) -> Table {
        let mut t = Table::new(self.len);
        for a in 0..self.len {
            let (p, q) = (f.get(a), g.get(a));
            if match op {
                Op::And => p && q,
                Op::Or => p || q,
                Op::Implies => !p || q,
            } {
                t.set(a);
            }
        }
        t
    }

    /// `Qv φ`, or `Qv ∈ w φ` when `bound` is given.
    fn quantify(&self, f: &Table, q: Quantifier, var: usize, bound: Option<usize>) -> Table {
        let mut t = Table::new(self.len);
        let all: Vec<usize> = (0..self.n).collect();
        for a in 0..self.len {
            let range = match bound {
                Some(w) => &self.members[self.digit(a, w)],
                None => &all,
            };
            let mut it = range.iter().map(|&b| f.get(self.with(a, var, b)));
            if match q {
                Quantifier::Forall => it.all(|x| x),
                Quantifier::Exists => it.any(|x| x),
            } {
                t.set(a);
            }
        }
        t
    }
}

#[derive(Clone, Copy)]
enum Op {
    And,
    Or,
    Implies,
}

#[derive(Clone)]
struct Entry {
    source: Table,
    target: Table,
    blocks: Vec<Quantifier>,
    formula: Formula,
}

fn dual(b: &[Quantifier]) -> Vec<Quantifier> {
    b.iter().map(|q| q.dual()).collect()
}

fn cons(q: Quantifier, b: &[Quantifier]) -> Vec<Quantifier> {
    let mut v = b.to_vec();
    if v.first() != Some(&q) {
        v.insert(0, q);
    }
    v
}

/// Within Σ_m: at most `m` blocks, existential first when exactly `m`.
fn within_sigma(b: &[Quantifier], m: usize) -> bool {
    b.len() < m || (b.len() == m && b.first() == Some(&Quantifier::Exists)) || b.is_empty()
}

struct Search<'a> {
    src: Side<'a>,
    tgt: Side<'a>,
    map: &'a [usize],
    m: usize,
    levels: Vec<Vec<Entry>>,
    seen: HashSet<(Table, Table, Vec<Quantifier>)>,
    checked: usize,
}

impl<'a> Search<'a> {
    fn push(&mut self, size: usize, e: Entry) -> Option<Counterexample> {
        if e.blocks.len() > self.m {
            return None;
        }
        if !self.seen.insert((e.source.clone(), e.target.clone(), e.blocks.clone())) {
            return None;
        }
        let bad = within_sigma(&e.blocks, self.m).then(|| self.failure(&e)).flatten();
        self.checked += 1;
        self.levels[size].push(e);
        bad
    }

    fn failure(&self, e: &Entry) -> Option<Counterexample> {
        for a in 0..self.src.len {
            let image = (0..VARS.len()).fold(0, |acc, v| acc * self.tgt.n + self.map[self.src.digit(a, v)]);
            if e.source.get(a) != e.target.get(image) {
                let free = e.formula.free_vars();
                let parameters = VARS
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| free.contains(**v))
                    .map(|(i, v)| (v.to_string(), self.src.digit(a, i)))
                    .collect();
                return Some(tidy(&e.formula, parameters, e.source.get(a)));
            }
        }
        None
    }

    fn level(&mut self, size: usize) -> Option<Counterexample> {
        self.levels.push(Vec::new());
        let mut fresh: Vec<Entry> = Vec::new();
        let nv = VARS.len();
        if size == 3 {
            for rel in [crate::logic::syntax::IN, EQ] {
                for i in 0..nv {
                    for j in 0..nv {
                        let formula = Formula::atom(rel, vec![Term::var(VARS[i]), Term::var(VARS[j])]);
                        fresh.push(Entry { source: self.src.atom(rel, i, j), target: self.tgt.atom(rel, i, j), blocks: vec![], formula });
                    }
                }
            }
        }
        if size >= 2 {
            for e in self.levels[size - 1].clone() {
                fresh.push(Entry {
                    source: self.src.not(&e.source),
                    target: self.tgt.not(&e.target),
                    blocks: dual(&e.blocks),
                    formula: Formula::not(e.formula.clone()),
                });
                if self.m >= 1 {
                    for q in [Quantifier::Forall, Quantifier::Exists] {
                        for v in 0..nv {
                            fresh.push(Entry {
                                source: self.src.quantify(&e.source, q, v, None),
                                target: self.tgt.quantify(&e.target, q, v, None),
                                blocks: cons(q, &e.blocks),
                                formula: quantified(q, VARS[v], None, e.formula.clone()),
                            });
                        }
                    }
                }
            }
        }
        for a in 1..size.saturating_sub(1) {
            let b = size - 1 - a;
            for f in self.levels[a].clone() {
                for g in &self.levels[b] {
                    for (op, mk) in [(Op::And, Formula::and as fn(_, _) -> _), (Op::Or, Formula::or), (Op::Implies, Formula::implies)] {
                        let left = if matches!(op, Op::Implies) { dual(&f.blocks) } else { f.blocks.clone() };
                        fresh.push(Entry {
                            source: self.src.binary(&f.source, &g.source, op),
                            target: self.tgt.binary(&f.target, &g.target, op),
                            blocks: merge_plan(&left, &g.blocks),
                            formula: mk(f.formula.clone(), g.formula.clone()),
                        });
                    }
                }
            }
        }
        if size >= 3 {
            for e in self.levels[size - 2].clone() {
                for q in [Quantifier::Forall, Quantifier::Exists] {
                    for v in 0..nv {
                        for w in 0..nv {
                            let blocks = if e.blocks.is_empty() { vec![] } else { cons(q, &e.blocks) };
                            fresh.push(Entry {
                                source: self.src.quantify(&e.source, q, v, Some(w)),
                                target: self.tgt.quantify(&e.target, q, v, Some(w)),
                                blocks,
                                formula: quantified(q, VARS[v], Some(VARS[w]), e.formula.clone()),
                            });
                        }
                    }
                }
            }
        }
        for e in fresh {
            if let Some(c) = self.push(size, e) {
                return Some(c);
            }
        }
        None
    }
}

fn quantified(q: Quantifier, v: &str, bound: Option<&str>, body: Formula) -> Formula {
    match (q, bound) {
        (Quantifier::Forall, None) => Formula::forall(v, body),
        (Quantifier::Exists, None) => Formula::exists(v, body),
        (Quantifier::Forall, Some(w)) => Formula::bounded_forall(v, BoundKind::In, Term::var(w), body),
        (Quantifier::Exists, Some(w)) => Formula::bounded_exists(v, BoundKind::In, Term::var(w), body),
    }
}

/// Renames free variables to `x, x1, ..` and bound ones to `y, y1, ..`.
fn tidy(f: &Formula, parameters: BTreeMap<String, usize>, source_truth: bool) -> Counterexample {
    let name = |stem: &str, i: usize| if i == 0 { stem.to_string() } else { format!("{stem}{i}") };
    let mut renamed = f.clone();
    let mut params = BTreeMap::new();
    for (i, (v, value)) in parameters.iter().enumerate() {
        renamed = renamed.substitute(v, &Term::var(format!("#p{i}")));
        params.insert(name("x", i), *value);
    }
    let mut bound = 0;
    let renamed = rename_bound(&renamed, &mut bound);
    let mut out = renamed;
    for i in 0..parameters.len() {
        out = out.substitute(&format!("#p{i}"), &Term::var(name("x", i)));
    }
    Counterexample { formula: out, parameters: params, source_truth }
}

fn rename_bound(f: &Formula, next: &mut usize) -> Formula {
    use Formula::*;
    let fresh = |next: &mut usize| {
        let s = if *next == 0 { "y".to_string() } else { format!("y{next}") };
        *next += 1;
        s
    };
    match f {
        Atom(..) => f.clone(),
        Not(a) => Formula::not(rename_bound(a, next)),
        And(a, b) => Formula::and(rename_bound(a, next), rename_bound(b, next)),
        Or(a, b) => Formula::or(rename_bound(a, next), rename_bound(b, next)),
        Implies(a, b) => Formula::implies(rename_bound(a, next), rename_bound(b, next)),
        Forall(v, a) | Exists(v, a) => {
            let y = fresh(next);
            let body = rename_bound(&a.substitute(v, &Term::var(&y)), next);
            if matches!(f, Forall(..)) { Formula::forall(y, body) } else { Formula::exists(y, body) }
        }
        BoundedForall(v, k, t, a) | BoundedExists(v, k, t, a) => {
            let y = fresh(next);
            let body = rename_bound(&a.substitute(v, &Term::var(&y)), next);
            if matches!(f, BoundedForall(..)) {
                Formula::bounded_forall(y, *k, t.clone(), body)
            } else {
                Formula::bounded_exists(y, *k, t.clone(), body)
            }
        }
        Necessarily(_) | Possibly(_) => f.clone(),
    }
}

/// Whether every Σ_m formula (Δ_0 for `m = 0`) of size ≤ `size_bound` over
/// `x, y, z` has the same truth value at every source assignment and its
/// image. Returns the first failure in (size, generation) order.
pub fn is_sigma_m_elementary(e: &Embedding, m: usize, size_bound: usize) -> Result<ElementarityVerdict, DefinabilityError> {
    if size_bound > SIZE_LIMIT {
        return Err(DefinabilityError::TooLarge { what: format!("size bound {size_bound}"), limit: SIZE_LIMIT });
    }
    if e.target.size() > UNIVERSE_LIMIT {
        return Err(DefinabilityError::TooLarge { what: format!("universe of {}", e.target.size()), limit: UNIVERSE_LIMIT });
    }
    if !e.source.is_membership() || !e.target.is_membership() {
        return Err(DefinabilityError::NotMembership);
    }
    let mut s = Search { src: Side::new(e.source), tgt: Side::new(e.target), map: &e.map, m, levels: vec![vec![]], seen: HashSet::new(), checked: 0 };
    let mut counterexample = None;
    for size in 1..=size_bound {
        counterexample = s.level(size);
        if counterexample.is_some() {
            break;
        }
    }
    Ok(ElementarityVerdict { m, size_bound, elementary: counterexample.is_none(), formulas_checked: s.checked, counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definability::hf::hf_universe;

    #[test]
    fn v3_v4_sigma1_fails() {
        let (v3, v4) = (hf_universe(3).unwrap(), hf_universe(4).unwrap());
        let e = Embedding::inclusion(&v3, &v4).unwrap();
        let v = is_sigma_m_elementary(&e, 1, 6).unwrap();
        let c = v.counterexample.unwrap();
        assert_eq!(c.formula.to_string(), "exists y. x in y");
        assert_eq!(c.parameters, BTreeMap::from([("x".to_string(), 2)]));
        assert!(is_sigma_m_elementary(&e, 0, 7).unwrap().elementary);
    }

    #[test]
    fn identity_is_elementary() {
        let v3 = hf_universe(3).unwrap();
        let e = Embedding::inclusion(&v3, &v3).unwrap();
        for m in 0..3 {
            assert!(is_sigma_m_elementary(&e, m, 6).unwrap().elementary);
        }
    }
}
