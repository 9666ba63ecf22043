//! The proof checker.

use num_bigint::BigUint;
use std::collections::BTreeSet;
use thiserror::Error;

use super::theory::{Theory, SUB};
use super::{Proof, Rule};
use crate::logic::canonical::canonical;
use crate::logic::coding::{decode, encode, godel_encode, GodelCode, Name};
use crate::logic::syntax::{fresh_var, BoundKind, Formula, Term, EQ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Reject {
    #[error("bad rule instance at step {step}: {reason}")]
    BadRule { step: usize, reason: String },
    #[error("step {step} cites axiom {index}, outside the fragment of the first {k} axioms")]
    OutOfFragment { step: usize, index: usize, k: usize },
    #[error("the last step does not conclude the stated conclusion")]
    ConclusionMismatch,
    #[error("the stated premise list differs from the axioms cited")]
    PremisesMismatch,
    #[error("assumptions at steps {0:?} are never discharged")]
    OpenAssumptions(Vec<usize>),
    #[error("a proof needs at least one step")]
    Empty,
}

/// What the checker learned about an accepted step list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    /// Undischarged assumption steps the conclusion depends on.
    pub open: BTreeSet<usize>,
    /// Proof-term size: every rule node counts one, plus the size of each
    /// formula or term it introduces; citing axiom `i` costs ⌊log₂(i+1)⌋.
    pub size: usize,
}

/// Accepts iff every step is a valid rule instance, every cited axiom lies
/// below `k`, no assumption is left open and the conclusion is the last
/// step's formula.
pub fn check_proof(p: &Proof, theory: &Theory, k: usize) -> Result<(), Reject> {
    let a = analyze(p, theory, k)?;
    if !a.open.is_empty() {
        return Err(Reject::OpenAssumptions(a.open.into_iter().collect()));
    }
    Ok(())
}

pub fn axiom_cost(i: usize) -> usize {
    (usize::BITS - (i + 1).leading_zeros() - 1) as usize
}

/// Checks the steps without requiring the conclusion to be closed.
pub fn analyze(p: &Proof, theory: &Theory, k: usize) -> Result<Analysis, Reject> {
    let last = p.steps.last().ok_or(Reject::Empty)?;
    if !last.formula.alpha_eq(&p.conclusion) {
        return Err(Reject::ConclusionMismatch);
    }
    let cited: BTreeSet<usize> = p
        .steps
        .iter()
        .filter_map(|s| match s.rule {
            Rule::Axiom(i) => Some(i),
            _ => None,
        })
        .collect();
    if cited.into_iter().collect::<Vec<_>>() != p.premises {
        return Err(Reject::PremisesMismatch);
    }
    let mut deps: Vec<BTreeSet<usize>> = Vec::with_capacity(p.steps.len());
    let mut sizes: Vec<usize> = Vec::with_capacity(p.steps.len());
    for (i, step) in p.steps.iter().enumerate() {
        let bad = |reason: &str| Reject::BadRule { step: i, reason: reason.to_string() };
        if step.refs.iter().any(|&r| r >= i) {
            return Err(bad("references must point to earlier steps"));
        }
        let ctx = Ctx { p, deps: &deps, sizes: &sizes, i };
        let (d, size) = ctx.step(theory, k)?;
        deps.push(d);
        sizes.push(size);
    }
    Ok(Analysis { open: deps.pop().expect("nonempty"), size: *sizes.last().expect("nonempty") })
}

struct Ctx<'a> {
    p: &'a Proof,
    deps: &'a [BTreeSet<usize>],
    sizes: &'a [usize],
    i: usize,
}

fn closed_numeral(t: &Term) -> Option<BigUint> {
    match t {
        Term::Zero => Some(BigUint::default()),
        Term::Num(n) => Some(n.clone()),
        _ => None,
    }
}

/// The value of `sub(a, v, b)`: the code of the formula coded by `a` with the
/// numeral `b` for the variable named by `v`, and 0 when `a` or `v` is not a
/// code of the right kind.
pub fn sub_value(a: &BigUint, v: &BigUint, b: &BigUint) -> BigUint {
    let Ok(f) = crate::logic::coding::godel_decode(&GodelCode(a.clone())) else { return BigUint::default() };
    let Ok(Name(var)) = decode::<Name>(&GodelCode(v.clone())) else { return BigUint::default() };
    godel_encode(&f.substitute(&var, &Term::numeral(b.clone()))).0
}

/// Finds `t` with `pattern[x := t] ≡ target` (up to renaming of bound
/// variables). `Some(None)`: `x` does not occur free and `pattern ≡ target`.
pub fn match_instance(pattern: &Formula, x: &str, target: &Formula) -> Option<Option<Term>> {
    let (cp, ct) = (canonical(pattern), canonical(target));
    let mut found: Option<Term> = None;
    if !match_f(&cp, &ct, x, &mut found) {
        return None;
    }
    if let Some(t) = &found {
        // The witness must not mention variables bound at the occurrence.
        if t.vars().iter().any(|v| v.starts_with('#')) {
            return None;
        }
        if canonical(&pattern.substitute(x, t)) != ct {
            return None;
        }
    }
    Some(found)
}

fn match_t(p: &Term, t: &Term, x: &str, found: &mut Option<Term>) -> bool {
    match (p, t) {
        (Term::Var(v), _) if v == x => match found {
            Some(prev) => prev == t,
            None => {
                *found = Some(t.clone());
                true
            }
        },
        (Term::Succ(a), Term::Succ(b)) => match_t(a, b, x, found),
        (Term::Add(a, b), Term::Add(c, d)) | (Term::Mul(a, b), Term::Mul(c, d)) => {
            match_t(a, c, x, found) && match_t(b, d, x, found)
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| match_t(a, b, x, found))
        }
        _ => p == t,
    }
}

fn match_f(p: &Formula, t: &Formula, x: &str, found: &mut Option<Term>) -> bool {
    use Formula::*;
    match (p, t) {
        (Atom(r, xs), Atom(s, ys)) => r == s && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| match_t(a, b, x, found)),
        (Not(a), Not(b)) | (Necessarily(a), Necessarily(b)) | (Possibly(a), Possibly(b)) => match_f(a, b, x, found),
        (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) | (Implies(a, b), Implies(c, d)) => {
            match_f(a, c, x, found) && match_f(b, d, x, found)
        }
        (Forall(v, a), Forall(w, b)) | (Exists(v, a), Exists(w, b)) => v == w && match_f(a, b, x, found),
        (BoundedForall(v, k, s, a), BoundedForall(w, l, u, b)) | (BoundedExists(v, k, s, a), BoundedExists(w, l, u, b)) => {
            v == w && k == l && match_t(s, u, x, found) && match_f(a, b, x, found)
        }
        _ => false,
    }
}

/// Whether `result` is `source` with some occurrences of `s` replaced by `t`,
/// none of them inside the scope of a binder for a variable of `s` or `t`.
pub fn is_replacement(source: &Formula, result: &Formula, s: &Term, t: &Term) -> bool {
    fn term(a: &Term, b: &Term, s: &Term, t: &Term) -> bool {
        if a == b || (a == s && b == t) {
            return true;
        }
        match (a, b) {
            (Term::Succ(x), Term::Succ(y)) => term(x, y, s, t),
            (Term::Add(x1, x2), Term::Add(y1, y2)) | (Term::Mul(x1, x2), Term::Mul(y1, y2)) => {
                term(x1, y1, s, t) && term(x2, y2, s, t)
            }
            (Term::App(f, xs), Term::App(g, ys)) => f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term(x, y, s, t)),
            _ => false,
        }
    }
    fn form(a: &Formula, b: &Formula, s: &Term, t: &Term) -> bool {
        use Formula::*;
        match (a, b) {
            (Atom(r, xs), Atom(q, ys)) => r == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term(x, y, s, t)),
            (Not(x), Not(y)) | (Necessarily(x), Necessarily(y)) | (Possibly(x), Possibly(y)) => form(x, y, s, t),
            (And(x1, x2), And(y1, y2)) | (Or(x1, x2), Or(y1, y2)) | (Implies(x1, x2), Implies(y1, y2)) => {
                form(x1, y1, s, t) && form(x2, y2, s, t)
            }
            (Forall(v, x), Forall(w, y)) | (Exists(v, x), Exists(w, y)) => v == w && form(x, y, s, t),
            (BoundedForall(v, k, x0, x), BoundedForall(w, l, y0, y)) | (BoundedExists(v, k, x0, x), BoundedExists(w, l, y0, y)) => {
                v == w && k == l && term(x0, y0, s, t) && form(x, y, s, t)
            }
            _ => false,
        }
    }
    // Canonical names for bound variables start with '#', so a bound
    // occurrence can never be mistaken for a free variable of s or t.
    form(&canonical(source), &canonical(result), s, t)
}

/// One-step unfolding of a bounded quantifier at the root. A binder that
/// occurs in its own bound is renamed first.
pub fn unfold_bounded(f: &Formula) -> Option<Formula> {
    let (v, k, t, g) = match f {
        Formula::BoundedForall(v, k, t, g) | Formula::BoundedExists(v, k, t, g) => (v, *k, t, g),
        _ => return None,
    };
    let (v, g) = if t.has_var(v) {
        let w = fresh_var(v, &f.all_vars());
        (w.clone(), g.substitute(v, &Term::Var(w)))
    } else {
        (v.clone(), (**g).clone())
    };
    let g_ = guard(&v, k, t);
    Some(match f {
        Formula::BoundedForall(..) => Formula::forall(v, Formula::implies(g_, g)),
        _ => Formula::exists(v, Formula::and(g_, g)),
    })
}

fn guard(v: &str, k: BoundKind, t: &Term) -> Formula {
    Formula::atom(k.relation(), vec![Term::var(v), t.clone()])
}

impl Ctx<'_> {
    fn f(&self, j: usize) -> &Formula {
        &self.p.steps[j].formula
    }

    fn bad(&self, reason: impl Into<String>) -> Reject {
        Reject::BadRule { step: self.i, reason: reason.into() }
    }

    fn refs(&self, n: usize) -> Result<&[usize], Reject> {
        let r = &self.p.steps[self.i].refs;
        if r.len() != n {
            return Err(self.bad(format!("expected {n} references, found {}", r.len())));
        }
        Ok(r)
    }

    fn assumption(&self, j: usize) -> Result<(), Reject> {
        if self.p.steps[j].rule != Rule::Assume {
            return Err(self.bad(format!("step {j} is not an assumption")));
        }
        Ok(())
    }

    fn union(&self, js: &[usize]) -> BTreeSet<usize> {
        js.iter().flat_map(|&j| self.deps[j].iter().copied()).collect()
    }

    fn free_in_deps(&self, v: &str, deps: &BTreeSet<usize>) -> bool {
        deps.iter().any(|&j| self.f(j).has_free(v))
    }

    /// Size contribution of a discharged assumption: free when the premise
    /// actually used it, otherwise the assumption step itself is extra.
    fn discharge_cost(&self, a: usize, used_by: usize) -> usize {
        if self.deps[used_by].contains(&a) {
            0
        } else {
            1 + self.f(a).size()
        }
    }

    fn step(&self, theory: &Theory, k: usize) -> Result<(BTreeSet<usize>, usize), Reject> {
        let step = &self.p.steps[self.i];
        let phi = &step.formula;
        let sizes = |js: &[usize]| -> usize { js.iter().map(|&j| self.sizes[j]).sum() };
        let eq = |a: &Formula, b: &Formula| a.alpha_eq(b);
        match step.rule {
            Rule::Axiom(idx) => {
                self.refs(0)?;
                if idx >= k {
                    return Err(Reject::OutOfFragment { step: self.i, index: idx, k });
                }
                match theory.axiom(idx) {
                    Some(ax) if eq(&ax, phi) => Ok((BTreeSet::new(), 1 + axiom_cost(idx))),
                    Some(_) => Err(self.bad(format!("not axiom {idx} of {}", theory.name))),
                    None => Err(self.bad(format!("{} has no axiom {idx}", theory.name))),
                }
            }
            Rule::Assume => {
                self.refs(0)?;
                Ok((BTreeSet::from([self.i]), 1 + phi.size()))
            }
            Rule::AndIntro => {
                let r = self.refs(2)?;
                if !eq(phi, &Formula::and(self.f(r[0]).clone(), self.f(r[1]).clone())) {
                    return Err(self.bad("not the conjunction of the premises"));
                }
                Ok((self.union(r), 1 + sizes(r)))
            }
            Rule::AndElimLeft | Rule::AndElimRight => {
                let r = self.refs(1)?;
                let Formula::And(a, b) = self.f(r[0]) else { return Err(self.bad("premise is not a conjunction")) };
                let want = if step.rule == Rule::AndElimLeft { a } else { b };
                if !eq(phi, want) {
                    return Err(self.bad("not a conjunct of the premise"));
                }
                Ok((self.union(r), 1 + sizes(r)))
            }
            Rule::OrIntroLeft | Rule::OrIntroRight => {
                let r = self.refs(1)?;
                let Formula::Or(a, b) = phi else { return Err(self.bad("conclusion is not a disjunction")) };
                let (kept, added) = if step.rule == Rule::OrIntroLeft { (a, b) } else { (b, a) };
                if !eq(kept, self.f(r[0])) {
                    return Err(self.bad("premise is not the chosen disjunct"));
                }
                Ok((self.union(r), 1 + added.size() + sizes(r)))
            }
            Rule::OrElim => {
                let r = self.refs(5)?;
                let Formula::Or(a, b) = self.f(r[0]) else { return Err(self.bad("first premise is not a disjunction")) };
                self.assumption(r[1])?;
                self.assumption(r[3])?;
                if !eq(self.f(r[1]), a) || !eq(self.f(r[3]), b) {
                    return Err(self.bad("assumptions are not the disjuncts"));
                }
                if !eq(self.f(r[2]), phi) || !eq(self.f(r[4]), phi) {
                    return Err(self.bad("branches do not both conclude the result"));
                }
                let mut d = self.deps[r[0]].clone();
                d.extend(self.deps[r[2]].iter().filter(|&&j| j != r[1]));
                d.extend(self.deps[r[4]].iter().filter(|&&j| j != r[3]));
                let size = 1 + sizes(&[r[0], r[2], r[4]]) + self.discharge_cost(r[1], r[2]) + self.discharge_cost(r[3], r[4]);
                Ok((d, size))
            }
            Rule::ImpIntro => {
                let r = self.refs(2)?;
                self.assumption(r[0])?;
                if !eq(phi, &Formula::implies(self.f(r[0]).clone(), self.f(r[1]).clone())) {
                    return Err(self.bad("not the implication from the assumption to the premise"));
                }
                let d = self.deps[r[1]].iter().copied().filter(|&j| j != r[0]).collect();
                Ok((d, 1 + sizes(&r[1..]) + self.discharge_cost(r[0], r[1])))
            }
            Rule::ImpElim => {
                let r = self.refs(2)?;
                let Formula::Implies(a, b) = self.f(r[0]) else { return Err(self.bad("first premise is not an implication")) };
                if !eq(a, self.f(r[1])) || !eq(b, phi) {
                    return Err(self.bad("modus ponens does not match"));
                }
                Ok((self.union(r), 1 + sizes(r)))
            }
            Rule::NotIntro | Rule::Raa => {
                let r = self.refs(3)?;
                self.assumption(r[0])?;
                if !eq(self.f(r[2]), &Formula::not(self.f(r[1]).clone())) {
                    return Err(self.bad("premises are not contradictory"));
                }
                let ok = if step.rule == Rule::NotIntro {
                    eq(phi, &Formula::not(self.f(r[0]).clone()))
                } else {
                    eq(self.f(r[0]), &Formula::not(phi.clone()))
                };
                if !ok {
                    return Err(self.bad("conclusion does not match the discharged assumption"));
                }
                let d = self.union(&r[1..]).into_iter().filter(|&j| j != r[0]).collect();
                let used = self.deps[r[1]].contains(&r[0]) || self.deps[r[2]].contains(&r[0]);
                let extra = if used { 0 } else { 1 + self.f(r[0]).size() };
                Ok((d, 1 + sizes(&r[1..]) + extra))
            }
            Rule::ExFalso => {
                let r = self.refs(2)?;
                if !eq(self.f(r[1]), &Formula::not(self.f(r[0]).clone())) {
                    return Err(self.bad("premises are not contradictory"));
                }
                Ok((self.union(r), 1 + phi.size() + sizes(r)))
            }
            Rule::ForallIntro => {
                let r = self.refs(1)?;
                let Formula::Forall(x, body) = phi else { return Err(self.bad("conclusion is not universal")) };
                let premise = self.f(r[0]);
                let y = match match_instance(body, x, premise) {
                    None => return Err(self.bad("premise is not an instance of the body")),
                    Some(None) => x.clone(),
                    Some(Some(Term::Var(y))) => y,
                    Some(Some(_)) => return Err(self.bad("generalised over a non-variable")),
                };
                if self.free_in_deps(&y, &self.deps[r[0]]) {
                    return Err(self.bad(format!("`{y}` is free in an open assumption")));
                }
                if y != *x && phi.has_free(&y) {
                    return Err(self.bad(format!("`{y}` is free in the conclusion")));
                }
                Ok((self.deps[r[0]].clone(), 1 + sizes(r)))
            }
            Rule::ForallElim => {
                let r = self.refs(1)?;
                let Formula::Forall(x, body) = self.f(r[0]) else { return Err(self.bad("premise is not universal")) };
                let t = match match_instance(body, x, phi) {
                    None => return Err(self.bad("conclusion is not an instance")),
                    Some(t) => t,
                };
                Ok((self.deps[r[0]].clone(), 1 + t.map_or(0, |t| t.size()) + sizes(r)))
            }
            Rule::ExistsIntro => {
                let r = self.refs(1)?;
                let Formula::Exists(x, body) = phi else { return Err(self.bad("conclusion is not existential")) };
                if match_instance(body, x, self.f(r[0])).is_none() {
                    return Err(self.bad("premise is not an instance of the body"));
                }
                Ok((self.deps[r[0]].clone(), 1 + sizes(r)))
            }
            Rule::ExistsElim => {
                let r = self.refs(3)?;
                let ex = self.f(r[0]);
                let Formula::Exists(x, body) = ex else { return Err(self.bad("first premise is not existential")) };
                self.assumption(r[1])?;
                let y = match match_instance(body, x, self.f(r[1])) {
                    None => return Err(self.bad("assumption is not an instance of the body")),
                    Some(None) => None,
                    Some(Some(Term::Var(y))) => Some(y),
                    Some(Some(_)) => return Err(self.bad("witness is not a variable")),
                };
                if !eq(self.f(r[2]), phi) {
                    return Err(self.bad("conclusion differs from the derived formula"));
                }
                let rest: BTreeSet<usize> = self.deps[r[2]].iter().copied().filter(|&j| j != r[1]).collect();
                if let Some(y) = &y {
                    if phi.has_free(y) || ex.has_free(y) || self.free_in_deps(y, &rest) {
                        return Err(self.bad(format!("eigenvariable `{y}` is not fresh")));
                    }
                }
                let mut d = self.deps[r[0]].clone();
                d.extend(rest);
                Ok((d, 1 + sizes(&[r[0], r[2]]) + self.discharge_cost(r[1], r[2])))
            }
            Rule::EqRefl => {
                self.refs(0)?;
                match phi {
                    Formula::Atom(rel, args) if rel == EQ && args.len() == 2 && args[0] == args[1] => {
                        Ok((BTreeSet::new(), 1 + args[0].size()))
                    }
                    _ => Err(self.bad("not of the form t = t")),
                }
            }
            Rule::EqSubst => {
                let r = self.refs(2)?;
                let (s, t) = match self.f(r[0]) {
                    Formula::Atom(rel, args) if rel == EQ && args.len() == 2 => (&args[0], &args[1]),
                    _ => return Err(self.bad("first premise is not an equation")),
                };
                if !is_replacement(self.f(r[1]), phi, s, t) {
                    return Err(self.bad("conclusion is not obtained by replacing occurrences"));
                }
                Ok((self.union(r), 1 + sizes(r)))
            }
            Rule::BoundedDef => {
                let r = self.refs(1)?;
                let premise = self.f(r[0]);
                let ok = unfold_bounded(premise).is_some_and(|u| eq(&u, phi))
                    || unfold_bounded(phi).is_some_and(|u| eq(&u, premise));
                if !ok {
                    return Err(self.bad("not a bounded-quantifier unfolding"));
                }
                Ok((self.deps[r[0]].clone(), 1 + sizes(r)))
            }
            Rule::Compute => {
                self.refs(0)?;
                if !theory.substitution {
                    return Err(self.bad(format!("{} has no substitution function", theory.name)));
                }
                let Formula::Atom(rel, sides) = phi else { return Err(self.bad("not an equation")) };
                let ok = rel == EQ
                    && sides.len() == 2
                    && match &sides[0] {
                        Term::App(f, args) if f == SUB && args.len() == 3 => {
                            match (closed_numeral(&args[0]), closed_numeral(&args[1]), closed_numeral(&args[2]), closed_numeral(&sides[1])) {
                                (Some(a), Some(v), Some(b), Some(value)) => sub_value(&a, &v, &b) == value,
                                _ => false,
                            }
                        }
                        _ => false,
                    };
                if !ok {
                    return Err(self.bad("not a true equation of the substitution function"));
                }
                Ok((BTreeSet::new(), 1 + phi.size()))
            }
        }
    }
}

/// The code of a proof, for ordering.
pub fn proof_code(p: &Proof) -> GodelCode {
    encode(p)
}
