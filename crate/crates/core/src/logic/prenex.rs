//! Prenex normal form.
//!
//! Bounded (Δ₀) subformulas are kept whole inside the matrix. A bounded
//! quantifier whose body is not Δ₀ is unfolded into an unbounded one with a
//! guard. When two prefixes meet at a binary connective they are interleaved
//! so as to use as few quantifier blocks as possible, preferring an
//! existential block first on ties.

use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

use super::syntax::{fresh_var, Formula, Quantifier, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrenexError {
    #[error("modal operators cannot be put in prenex form")]
    Modal,
}

pub type Prefix = Vec<(Quantifier, String)>;

/// A logically equivalent formula in prenex form.
pub fn prenex(f: &Formula) -> Result<Formula, PrenexError> {
    if f.is_modal() {
        return Err(PrenexError::Modal);
    }
    let (prefix, matrix) = pnf(f);
    Ok(rebuild(&prefix, matrix))
}

/// Splits a formula into its unbounded quantifier prefix and the rest.
pub fn split_prefix(f: &Formula) -> (Prefix, &Formula) {
    let mut prefix = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Forall(v, g) => {
                prefix.push((Quantifier::Forall, v.clone()));
                cur = g;
            }
            Formula::Exists(v, g) => {
                prefix.push((Quantifier::Exists, v.clone()));
                cur = g;
            }
            _ => return (prefix, cur),
        }
    }
}

/// True when `f` is a (possibly empty) run of unbounded quantifiers over a Δ₀ matrix.
pub fn is_prenex(f: &Formula) -> bool {
    let (_, m) = split_prefix(f);
    m.is_bounded()
}

/// The block structure of a prefix: consecutive equal quantifiers collapse.
pub fn blocks(prefix: &[(Quantifier, String)]) -> Vec<Quantifier> {
    let mut out: Vec<Quantifier> = Vec::new();
    for (q, _) in prefix {
        if out.last() != Some(q) {
            out.push(*q);
        }
    }
    out
}

fn rebuild(prefix: &[(Quantifier, String)], matrix: Formula) -> Formula {
    prefix.iter().rev().fold(matrix, |acc, (q, v)| Formula::quant(*q, v.clone(), acc))
}

fn dual(prefix: Prefix) -> Prefix {
    prefix.into_iter().map(|(q, v)| (q.dual(), v)).collect()
}

fn unfold(f: &Formula) -> Formula {
    let (v, k, t, g, universal) = match f {
        Formula::BoundedForall(v, k, t, g) => (v, k, t, g, true),
        Formula::BoundedExists(v, k, t, g) => (v, k, t, g, false),
        _ => unreachable!("only bounded quantifiers are unfolded"),
    };
    // The bound lies outside the binder's scope; keep it that way.
    let (v, g) = if t.has_var(v) {
        let mut avoid = g.all_vars();
        t.vars_into(&mut avoid);
        let fresh = fresh_var(v, &avoid);
        (fresh.clone(), g.substitute(v, &Term::Var(fresh)))
    } else {
        (v.clone(), (**g).clone())
    };
    let guard = Formula::atom(k.relation(), vec![Term::Var(v.clone()), t.clone()]);
    if universal {
        Formula::forall(v, Formula::implies(guard, g))
    } else {
        Formula::exists(v, Formula::and(guard, g))
    }
}

fn pnf(f: &Formula) -> (Prefix, Formula) {
    if f.is_bounded() {
        return (Vec::new(), f.clone());
    }
    match f {
        Formula::Not(g) => {
            let (p, m) = pnf(g);
            (dual(p), Formula::not(m))
        }
        Formula::And(a, b) => combine(pnf(a), pnf(b), Formula::and),
        Formula::Or(a, b) => combine(pnf(a), pnf(b), Formula::or),
        Formula::Implies(a, b) => {
            let (pa, ma) = pnf(a);
            combine((dual(pa), ma), pnf(b), Formula::implies)
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let q = if matches!(f, Formula::Forall(..)) { Quantifier::Forall } else { Quantifier::Exists };
            let (mut p, m) = pnf(g);
            // An inner rebinding of v makes this one vacuous; rename it so the
            // prefix keeps distinct names.
            let name = if p.iter().any(|(_, w)| w == v) {
                let mut avoid: BTreeSet<String> = m.all_vars();
                avoid.extend(p.iter().map(|(_, w)| w.clone()));
                fresh_var(v, &avoid)
            } else {
                v.clone()
            };
            p.insert(0, (q, name));
            (p, m)
        }
        Formula::BoundedForall(..) | Formula::BoundedExists(..) => pnf(&unfold(f)),
        Formula::Atom(..) | Formula::Necessarily(_) | Formula::Possibly(_) => (Vec::new(), f.clone()),
    }
}

fn free_of(prefix: &Prefix, matrix: &Formula) -> BTreeSet<String> {
    let bound: BTreeSet<&String> = prefix.iter().map(|(_, v)| v).collect();
    matrix.free_vars().into_iter().filter(|v| !bound.contains(v)).collect()
}

fn rename(prefix: &mut Prefix, matrix: &mut Formula, clash: &dyn Fn(&str) -> bool, avoid: &mut BTreeSet<String>) {
    for (_, v) in prefix.iter_mut() {
        if clash(v) {
            let fresh = fresh_var(v, avoid);
            avoid.insert(fresh.clone());
            *matrix = matrix.substitute(v, &Term::Var(fresh.clone()));
            *v = fresh;
        }
    }
}

fn combine(a: (Prefix, Formula), b: (Prefix, Formula), op: fn(Formula, Formula) -> Formula) -> (Prefix, Formula) {
    let (mut pa, mut ma) = a;
    let (mut pb, mut mb) = b;
    if pa.is_empty() && pb.is_empty() {
        return (Vec::new(), op(ma, mb));
    }
    let free_a = free_of(&pa, &ma);
    let free_b = free_of(&pb, &mb);
    let mut avoid: BTreeSet<String> = ma.all_vars();
    avoid.extend(mb.all_vars());
    avoid.extend(pa.iter().chain(&pb).map(|(_, v)| v.clone()));
    let names_b: BTreeSet<String> = pb.iter().map(|(_, v)| v.clone()).collect();
    rename(&mut pa, &mut ma, &|v| free_b.contains(v) || names_b.contains(v), &mut avoid);
    rename(&mut pb, &mut mb, &|v| free_a.contains(v), &mut avoid);
    (merge(&pa, &pb), op(ma, mb))
}

fn grouped(prefix: &Prefix) -> Vec<(Quantifier, Vec<String>)> {
    let mut out: Vec<(Quantifier, Vec<String>)> = Vec::new();
    for (q, v) in prefix {
        match out.last_mut() {
            Some((lq, vs)) if lq == q => vs.push(v.clone()),
            _ => out.push((*q, vec![v.clone()])),
        }
    }
    out
}

/// Interleaves two block sequences using the fewest blocks; returns the
/// quantifier emitted at each step.
pub fn merge_plan(a: &[Quantifier], b: &[Quantifier]) -> Vec<Quantifier> {
    fn best(a: &[Quantifier], b: &[Quantifier], i: usize, j: usize, memo: &mut HashMap<(usize, usize), Vec<Quantifier>>) -> Vec<Quantifier> {
        if i == a.len() && j == b.len() {
            return Vec::new();
        }
        if let Some(r) = memo.get(&(i, j)) {
            return r.clone();
        }
        let mut result: Option<Vec<Quantifier>> = None;
        for q in [Quantifier::Exists, Quantifier::Forall] {
            let ti = a.get(i) == Some(&q);
            let tj = b.get(j) == Some(&q);
            if !ti && !tj {
                continue;
            }
            let mut rest = best(a, b, i + ti as usize, j + tj as usize, memo);
            rest.insert(0, q);
            if result.as_ref().is_none_or(|r| rest.len() < r.len()) {
                result = Some(rest);
            }
        }
        let r = result.expect("some block remains");
        memo.insert((i, j), r.clone());
        r
    }
    best(a, b, 0, 0, &mut HashMap::new())
}

fn merge(pa: &Prefix, pb: &Prefix) -> Prefix {
    let ga = grouped(pa);
    let gb = grouped(pb);
    let qa: Vec<Quantifier> = ga.iter().map(|g| g.0).collect();
    let qb: Vec<Quantifier> = gb.iter().map(|g| g.0).collect();
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    for q in merge_plan(&qa, &qb) {
        if qa.get(i) == Some(&q) {
            out.extend(ga[i].1.iter().map(|v| (q, v.clone())));
            i += 1;
        }
        if qb.get(j) == Some(&q) {
            out.extend(gb[j].1.iter().map(|v| (q, v.clone())));
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse;
    use crate::logic::signature::Signature;

    fn p(s: &str) -> Formula {
        parse(s, &Signature::full()).unwrap()
    }

    #[test]
    fn negated_existential() {
        assert_eq!(prenex(&p("~exists x. x = y")).unwrap(), p("forall x. ~(x = y)"));
    }

    #[test]
    fn implication_with_renaming() {
        assert_eq!(prenex(&p("(exists x. x = 0) -> y = 0")).unwrap(), p("forall x. (x = 0 -> y = 0)"));
        let g = prenex(&p("(exists x. x = 0) -> x < 0")).unwrap();
        assert_eq!(g, p("forall x0. (x0 = 0 -> x < 0)"));
    }

    #[test]
    fn prenex_input_unchanged() {
        for s in ["forall x. exists y. x < y", "exists x. forall y < x. y = y", "x = 0"] {
            assert_eq!(prenex(&p(s)).unwrap(), p(s));
        }
    }

    #[test]
    fn bounded_with_unbounded_body_is_unfolded() {
        assert_eq!(prenex(&p("forall x < y. exists z. z = x")).unwrap(), p("forall x. exists z. (x < y -> z = x)"));
        assert_eq!(prenex(&p("forall x < x. exists z. z = x")).unwrap(), p("forall x0. exists z. (x0 < x -> z = x0)"));
    }

    #[test]
    fn merging_minimises_blocks() {
        // Σ2 ∧ Σ2 stays Σ2
        let f = prenex(&p("(exists a. forall b. a < b) & (exists c. forall d. c < d)")).unwrap();
        let (prefix, _) = split_prefix(&f);
        assert_eq!(blocks(&prefix), vec![Quantifier::Exists, Quantifier::Forall]);
        assert_eq!(merge_plan(&[Quantifier::Exists, Quantifier::Forall], &[Quantifier::Forall, Quantifier::Exists]).len(), 3);
    }

    #[test]
    fn modal_rejected() {
        assert_eq!(prenex(&Formula::necessarily(p("x = 0"))), Err(PrenexError::Modal));
    }
}
