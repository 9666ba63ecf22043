//! Size-ordered enumeration of terms and formulas over a finite variable pool.
//!
//! Within one size, objects are listed in increasing Gödel code.

use std::collections::HashMap;

use super::coding::{encode, godel_encode};
use super::signature::{Signature, SymbolKind};
use super::syntax::{BoundKind, Formula, Term, IN, LT};

/// Memoised generator of all terms and formulas of each size.
pub struct Pool {
    sig: Signature,
    vars: Vec<String>,
    terms: HashMap<usize, Vec<Term>>,
    formulas: HashMap<usize, Vec<Formula>>,
}

impl Pool {
    /// Only constants `0`, functions `S`, `+`, `*` and binary relations of
    /// the signature are used; numerals and other function symbols are not.
    pub fn new(sig: &Signature, vars: &[&str]) -> Self {
        Pool {
            sig: sig.clone(),
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: HashMap::new(),
            formulas: HashMap::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn has_fn(&self, name: &str, arity: usize) -> bool {
        let kind = if arity == 0 { SymbolKind::Constant } else { SymbolKind::Function };
        self.sig.lookup(kind, name) == Some(arity)
    }

    pub fn terms(&mut self, size: usize) -> &[Term] {
        if !self.terms.contains_key(&size) {
            let mut out = Vec::new();
            if size == 1 {
                out.extend(self.vars.iter().map(|v| Term::Var(v.clone())));
                if self.has_fn("0", 0) {
                    out.push(Term::Zero);
                }
            } else if size >= 2 {
                if self.has_fn("S", 1) {
                    let inner = self.terms(size - 1).to_vec();
                    out.extend(inner.into_iter().map(Term::succ));
                }
                for (name, mk) in [("+", Term::add as fn(Term, Term) -> Term), ("*", Term::mul)] {
                    if !self.has_fn(name, 2) {
                        continue;
                    }
                    for a in 1..size - 1 {
                        let left = self.terms(a).to_vec();
                        let right = self.terms(size - 1 - a).to_vec();
                        for l in &left {
                            for r in &right {
                                out.push(mk(l.clone(), r.clone()));
                            }
                        }
                    }
                }
            }
            let mut keyed: Vec<_> = out.into_iter().map(|t| (encode(&t), t)).collect();
            keyed.sort();
            self.terms.insert(size, keyed.into_iter().map(|p| p.1).collect());
        }
        &self.terms[&size]
    }

    fn relations(&self) -> Vec<String> {
        self.sig.relations.iter().filter(|r| r.arity == 2).map(|r| r.name.clone()).collect()
    }

    fn bound_kinds(&self) -> Vec<BoundKind> {
        let mut v = Vec::new();
        if self.sig.has_relation(LT) {
            v.push(BoundKind::Lt);
        }
        if self.sig.has_relation(IN) {
            v.push(BoundKind::In);
        }
        v
    }

    pub fn formulas(&mut self, size: usize) -> &[Formula] {
        if !self.formulas.contains_key(&size) {
            let mut out = Vec::new();
            // atoms
            for rel in self.relations() {
                for a in 1..size.saturating_sub(1) {
                    let left = self.terms(a).to_vec();
                    let right = self.terms(size - 1 - a).to_vec();
                    for l in &left {
                        for r in &right {
                            out.push(Formula::Atom(rel.clone(), vec![l.clone(), r.clone()]));
                        }
                    }
                }
            }
            if size >= 2 {
                let inner = self.formulas(size - 1).to_vec();
                for f in &inner {
                    out.push(Formula::not(f.clone()));
                    for v in self.vars.clone() {
                        out.push(Formula::forall(v.clone(), f.clone()));
                        out.push(Formula::exists(v, f.clone()));
                    }
                }
                for a in 1..size - 1 {
                    let left = self.formulas(a).to_vec();
                    let right = self.formulas(size - 1 - a).to_vec();
                    for l in &left {
                        for r in &right {
                            out.push(Formula::and(l.clone(), r.clone()));
                            out.push(Formula::or(l.clone(), r.clone()));
                            out.push(Formula::implies(l.clone(), r.clone()));
                        }
                    }
                }
                for k in self.bound_kinds() {
                    for t in 1..size - 1 {
                        let bounds = self.terms(t).to_vec();
                        let bodies = self.formulas(size - 1 - t).to_vec();
                        for v in self.vars.clone() {
                            for b in &bounds {
                                for body in &bodies {
                                    out.push(Formula::bounded_forall(v.clone(), k, b.clone(), body.clone()));
                                    out.push(Formula::bounded_exists(v.clone(), k, b.clone(), body.clone()));
                                }
                            }
                        }
                    }
                }
            }
            let mut keyed: Vec<_> = out.into_iter().map(|f| (godel_encode(&f), f)).collect();
            keyed.sort();
            self.formulas.insert(size, keyed.into_iter().map(|p| p.1).collect());
        }
        &self.formulas[&size]
    }

    /// Formulas of size `1..=max`, in (size, code) order.
    pub fn formulas_up_to(&mut self, max: usize) -> Vec<Formula> {
        (1..=max).flat_map(|s| self.formulas(s).to_vec()).collect()
    }
}
