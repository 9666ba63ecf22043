//! Tarskian satisfaction over finite structures.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;
use thiserror::Error;

use super::syntax::{BoundKind, Formula, Term};
use crate::structure::FiniteStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("free variable `{0}` is unassigned")]
    Unassigned(String),
    #[error("symbol `{name}`/{arity} is not interpreted in the structure")]
    SignatureMismatch { name: String, arity: usize },
    #[error("assignment value {value} for `{var}` is outside the universe")]
    OutOfRange { var: String, value: usize },
    #[error("modal operators have no first-order meaning")]
    Modal,
}

pub type Assignment = BTreeMap<String, usize>;

/// `M, asg ⊨ f`.
pub fn evaluate(f: &Formula, m: &FiniteStructure, asg: &Assignment) -> Result<bool, EvalError> {
    for (var, &value) in asg {
        if value >= m.size() {
            return Err(EvalError::OutOfRange { var: var.clone(), value });
        }
    }
    let mut env: Vec<(&str, usize)> = asg.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    Evaluator { m }.formula(f, &mut env)
}

/// Evaluates a sentence.
pub fn evaluate_sentence(f: &Formula, m: &FiniteStructure) -> Result<bool, EvalError> {
    evaluate(f, m, &Assignment::new())
}

/// The elements `a` with `M ⊨ f[var := a]` (other free variables from `asg`).
pub fn satisfiers(f: &Formula, var: &str, m: &FiniteStructure, asg: &Assignment) -> Result<Vec<usize>, EvalError> {
    let mut asg = asg.clone();
    let mut out = Vec::new();
    for a in m.elements() {
        asg.insert(var.to_string(), a);
        if evaluate(f, m, &asg)? {
            out.push(a);
        }
    }
    Ok(out)
}

struct Evaluator<'m> {
    m: &'m FiniteStructure,
}

impl<'m> Evaluator<'m> {
    fn mismatch(name: &str, arity: usize) -> EvalError {
        EvalError::SignatureMismatch { name: name.to_string(), arity }
    }

    fn apply(&self, name: &str, args: &[usize]) -> Result<usize, EvalError> {
        self.m.apply(name, args).ok_or_else(|| Self::mismatch(name, args.len()))
    }

    fn numeral(&self, n: &BigUint) -> Result<usize, EvalError> {
        // Follow S from 0 until a value repeats, then reduce n along the cycle.
        let mut seen = vec![usize::MAX; self.m.size()];
        let mut orbit = Vec::new();
        let mut x = self.apply("0", &[])?;
        loop {
            if let Some(k) = n.to_usize() {
                if k == orbit.len() {
                    return Ok(x);
                }
            }
            if seen[x] != usize::MAX {
                let start = seen[x];
                let cycle = orbit.len() - start;
                let offset = (n - BigUint::from(start)) % BigUint::from(cycle);
                return Ok(orbit[start + offset.to_usize().expect("below cycle length")]);
            }
            seen[x] = orbit.len();
            orbit.push(x);
            x = self.apply("S", &[x])?;
        }
    }

    fn term(&self, t: &Term, env: &[(&str, usize)]) -> Result<usize, EvalError> {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|p| p.1)
                .ok_or_else(|| EvalError::Unassigned(v.clone())),
            Term::Zero => self.apply("0", &[]),
            Term::Succ(a) => {
                let a = self.term(a, env)?;
                self.apply("S", &[a])
            }
            Term::Add(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.apply("+", &[a, b])
            }
            Term::Mul(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.apply("*", &[a, b])
            }
            Term::Num(n) => self.numeral(n),
            Term::App(f, args) => {
                let vals = args.iter().map(|a| self.term(a, env)).collect::<Result<Vec<_>, _>>()?;
                self.apply(f, &vals)
            }
        }
    }

    fn bounded(&self, k: BoundKind, bound: usize, x: usize) -> Result<bool, EvalError> {
        let rel = k.relation();
        self.m.holds(rel, &[x, bound]).ok_or_else(|| Self::mismatch(rel, 2))
    }

    fn formula<'f>(&self, f: &'f Formula, env: &mut Vec<(&'f str, usize)>) -> Result<bool, EvalError> {
        match f {
            Formula::Atom(r, args) => {
                let vals = args.iter().map(|a| self.term(a, env)).collect::<Result<Vec<_>, _>>()?;
                self.m.holds(r, &vals).ok_or_else(|| Self::mismatch(r, vals.len()))
            }
            Formula::Not(g) => Ok(!self.formula(g, env)?),
            Formula::And(a, b) => Ok(self.formula(a, env)? && self.formula(b, env)?),
            Formula::Or(a, b) => Ok(self.formula(a, env)? || self.formula(b, env)?),
            Formula::Implies(a, b) => Ok(!self.formula(a, env)? || self.formula(b, env)?),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let universal = matches!(f, Formula::Forall(..));
                for x in self.m.elements() {
                    env.push((v.as_str(), x));
                    let r = self.formula(g, env);
                    env.pop();
                    if r? != universal {
                        return Ok(!universal);
                    }
                }
                Ok(universal)
            }
            Formula::BoundedForall(v, k, t, g) | Formula::BoundedExists(v, k, t, g) => {
                let universal = matches!(f, Formula::BoundedForall(..));
                let bound = self.term(t, env)?;
                for x in self.m.elements() {
                    if !self.bounded(*k, bound, x)? {
                        continue;
                    }
                    env.push((v.as_str(), x));
                    let r = self.formula(g, env);
                    env.pop();
                    if r? != universal {
                        return Ok(!universal);
                    }
                }
                Ok(universal)
            }
            Formula::Necessarily(_) | Formula::Possibly(_) => Err(EvalError::Modal),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse;
    use crate::logic::signature::Signature;
    use crate::logic::syntax::IN;

    // V_3 under the Ackermann coding, built by hand: a ∈ b iff bit a of b.
    fn v3() -> FiniteStructure {
        let mut m = FiniteStructure::new(4, Signature::set());
        for b in 0..4usize {
            for a in 0..4usize {
                if b >> a & 1 == 1 {
                    m.insert(IN, &[a, b]).unwrap();
                }
            }
        }
        m
    }

    fn set(s: &str) -> Formula {
        parse(s, &Signature::set()).unwrap()
    }

    #[test]
    fn emptyset_exists_in_v3() {
        assert!(evaluate_sentence(&set("exists x. forall y. ~(y in x)"), &v3()).unwrap());
    }

    #[test]
    fn not_every_set_is_a_member_in_v3() {
        assert!(!evaluate_sentence(&set("forall x. exists y. x in y"), &v3()).unwrap());
        let witnesses = satisfiers(&set("exists y. x in y"), "x", &v3(), &Assignment::new()).unwrap();
        assert_eq!(witnesses, vec![0, 1]);
    }

    #[test]
    fn identity_under_any_assignment() {
        let f = set("x = x");
        for a in 0..4 {
            assert!(evaluate(&f, &v3(), &Assignment::from([("x".to_string(), a)])).unwrap());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(evaluate(&set("x = x"), &v3(), &Assignment::new()), Err(EvalError::Unassigned("x".into())));
        let arith = parse("0 = 0", &Signature::arith()).unwrap();
        assert!(matches!(evaluate_sentence(&arith, &v3()), Err(EvalError::SignatureMismatch { .. })));
        let modal = Formula::necessarily(set("x = x"));
        assert_eq!(evaluate_sentence(&modal, &v3()), Err(EvalError::Modal));
    }

    #[test]
    fn numerals_wrap_around_cycles() {
        // Z/3 with successor x+1
        let mut m = FiniteStructure::new(3, Signature::arith());
        for x in 0..3 {
            m.set_function("S", &[x], (x + 1) % 3).unwrap();
        }
        let f = parse("7 = S(0)", &Signature::arith()).unwrap();
        assert!(evaluate_sentence(&f, &m).unwrap());
        let g = parse("5 = 2", &Signature::arith()).unwrap();
        assert!(evaluate_sentence(&g, &m).unwrap());
    }

    #[test]
    fn bounded_quantifiers_range_over_members() {
        let f = set("exists x. forall y in x. exists z in x. ~(z = y)");
        // {∅,{∅}} has two members
        assert!(evaluate_sentence(&f, &v3()).unwrap());
        let g = set("forall x. forall y in x. exists z in x. ~(z = y)");
        assert!(!evaluate_sentence(&g, &v3()).unwrap());
    }
}
