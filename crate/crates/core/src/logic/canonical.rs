//! Bound-variable canonicalisation.
//!
//! Every bound variable is renamed to `#d`, where `d` is the number of
//! binders enclosing it. The `#` prefix cannot be produced by the parser, so
//! canonical names never collide with free variables.

use super::syntax::{Formula, Term};

fn term(t: &Term, scope: &[(String, String)]) -> Term {
    match t {
        Term::Var(v) => match scope.iter().rev().find(|(from, _)| from == v) {
            Some((_, to)) => Term::Var(to.clone()),
            None => t.clone(),
        },
        Term::Zero | Term::Num(_) => t.clone(),
        Term::Succ(a) => Term::succ(term(a, scope)),
        Term::Add(a, b) => Term::add(term(a, scope), term(b, scope)),
        Term::Mul(a, b) => Term::mul(term(a, scope), term(b, scope)),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| term(a, scope)).collect()),
    }
}

fn go(f: &Formula, scope: &mut Vec<(String, String)>) -> Formula {
    let bind = |v: &str, body: &Formula, scope: &mut Vec<(String, String)>| {
        let name = format!("#{}", scope.len());
        scope.push((v.to_string(), name.clone()));
        let b = go(body, scope);
        scope.pop();
        (name, b)
    };
    match f {
        Formula::Atom(r, args) => Formula::Atom(r.clone(), args.iter().map(|t| term(t, scope)).collect()),
        Formula::Not(g) => Formula::not(go(g, scope)),
        Formula::Necessarily(g) => Formula::necessarily(go(g, scope)),
        Formula::Possibly(g) => Formula::possibly(go(g, scope)),
        Formula::And(a, b) => Formula::and(go(a, scope), go(b, scope)),
        Formula::Or(a, b) => Formula::or(go(a, scope), go(b, scope)),
        Formula::Implies(a, b) => Formula::implies(go(a, scope), go(b, scope)),
        Formula::Forall(v, g) => {
            let (n, b) = bind(v, g, scope);
            Formula::forall(n, b)
        }
        Formula::Exists(v, g) => {
            let (n, b) = bind(v, g, scope);
            Formula::exists(n, b)
        }
        Formula::BoundedForall(v, k, t, g) => {
            let t = term(t, scope);
            let (n, b) = bind(v, g, scope);
            Formula::bounded_forall(n, *k, t, b)
        }
        Formula::BoundedExists(v, k, t, g) => {
            let t = term(t, scope);
            let (n, b) = bind(v, g, scope);
            Formula::bounded_exists(n, *k, t, b)
        }
    }
}

/// The de Bruijn-style canonical form of `f`.
pub fn canonical(f: &Formula) -> Formula {
    go(f, &mut Vec::new())
}

pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    a == b || canonical(a) == canonical(b)
}
