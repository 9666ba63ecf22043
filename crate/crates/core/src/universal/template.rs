//! The statement a successful stage must have proved: "stage `n` of program
//! `c` never succeeds with `x`".

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

use crate::logic::canonical::canonical;
use crate::logic::parse::parse;
use crate::logic::syntax::{Formula, Term};
use crate::proof::Theory;

/// Free variables of a template: the program code, the stage and the value.
pub const SLOTS: [&str; 3] = ["c", "n", "x"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("unknown theory `{0}`")]
    Theory(String),
    #[error("template does not parse: {0}")]
    Parse(String),
    #[error("template must have free variables exactly c, n, x; found {0:?}")]
    Slots(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateConfig {
    pub theory: String,
    pub pattern: String,
}

impl Default for TemplateConfig {
    fn default() -> Self {
        TemplateConfig { theory: "PA".into(), pattern: "forall s. ~(((s + c) + S(x)) = n)".into() }
    }
}

/// A checked template over a theory.
#[derive(Clone, Debug)]
pub struct Template {
    pub config: TemplateConfig,
    pub theory: Arc<Theory>,
    pub formula: Formula,
}

impl TemplateConfig {
    pub fn compile(&self) -> Result<Template, TemplateError> {
        let theory = Theory::by_name(&self.theory).map_err(|_| TemplateError::Theory(self.theory.clone()))?;
        let formula = parse(&self.pattern, &theory.signature).map_err(|e| TemplateError::Parse(e.to_string()))?;
        let free = formula.free_vars();
        let want: BTreeSet<String> = SLOTS.iter().map(|s| s.to_string()).collect();
        if free != want {
            return Err(TemplateError::Slots(free.into_iter().collect()));
        }
        Ok(Template { config: self.clone(), theory: Arc::new(theory), formula })
    }
}

impl Template {
    pub fn statement(&self, c: &BigUint, n: &BigUint, x: &BigUint) -> Formula {
        self.for_program(c).instance(n, x)
    }

    pub fn for_program(&self, c: &BigUint) -> Bound {
        let f = self.formula.substitute("c", &Term::numeral(c.clone()));
        Bound { canonical: canonical(&f), formula: f }
    }
}

/// A template with the program code filled in.
#[derive(Clone, Debug)]
pub struct Bound {
    pub formula: Formula,
    canonical: Formula,
}

impl Bound {
    pub fn instance(&self, n: &BigUint, x: &BigUint) -> Formula {
        self.formula.substitute("n", &Term::numeral(n.clone())).substitute("x", &Term::numeral(x.clone()))
    }

    /// `(n, x)` when `f` is an instance with numerals in both slots.
    pub fn matches(&self, f: &Formula) -> Option<(BigUint, BigUint)> {
        let mut slots = [None, None];
        match_f(&self.canonical, &canonical(f), &mut slots).then_some(())?;
        let [Some(n), Some(x)] = slots else { return None };
        Some((n, x))
    }
}

fn numeral(t: &Term) -> Option<BigUint> {
    match t {
        Term::Zero => Some(BigUint::default()),
        Term::Num(n) => Some(n.clone()),
        Term::Succ(t) => numeral(t).map(|n| n + 1u32),
        _ => None,
    }
}

fn match_t(p: &Term, t: &Term, slots: &mut [Option<BigUint>; 2]) -> bool {
    match (p, t) {
        (Term::Var(v), _) if v == "n" || v == "x" => {
            let Some(value) = numeral(t) else { return false };
            let slot = &mut slots[(v == "x") as usize];
            match slot {
                Some(old) => *old == value,
                None => {
                    *slot = Some(value);
                    true
                }
            }
        }
        (Term::Succ(a), Term::Succ(b)) => match_t(a, b, slots),
        (Term::Add(a, b), Term::Add(c, d)) | (Term::Mul(a, b), Term::Mul(c, d)) => {
            std::mem::discriminant(p) == std::mem::discriminant(t) && match_t(a, c, slots) && match_t(b, d, slots)
        }
        (Term::App(f, xs), Term::App(g, ys)) => f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| match_t(a, b, slots)),
        _ => p == t,
    }
}

fn match_f(p: &Formula, t: &Formula, slots: &mut [Option<BigUint>; 2]) -> bool {
    use Formula::*;
    match (p, t) {
        (Atom(r, xs), Atom(s, ys)) => r == s && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| match_t(a, b, slots)),
        (Not(a), Not(b)) | (Necessarily(a), Necessarily(b)) | (Possibly(a), Possibly(b)) => match_f(a, b, slots),
        (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) | (Implies(a, b), Implies(c, d)) => {
            std::mem::discriminant(p) == std::mem::discriminant(t) && match_f(a, c, slots) && match_f(b, d, slots)
        }
        (Forall(v, a), Forall(w, b)) | (Exists(v, a), Exists(w, b)) => {
            std::mem::discriminant(p) == std::mem::discriminant(t) && v == w && match_f(a, b, slots)
        }
        (BoundedForall(v, k, s, a), BoundedForall(w, l, u, b)) | (BoundedExists(v, k, s, a), BoundedExists(w, l, u, b)) => {
            std::mem::discriminant(p) == std::mem::discriminant(t) && v == w && k == l && match_t(s, u, slots) && match_f(a, b, slots)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_template_round_trips() {
        let t = TemplateConfig::default().compile().unwrap();
        let b = t.for_program(&BigUint::from(77u32));
        let f = b.instance(&BigUint::from(3u32), &BigUint::from(9u32));
        assert!(f.is_sentence());
        assert_eq!(b.matches(&f), Some((3u32.into(), 9u32.into())));
        assert_eq!(t.for_program(&BigUint::from(78u32)).matches(&f), None);
    }

    #[test]
    fn successor_numerals_match() {
        let t = TemplateConfig::default().compile().unwrap();
        let b = t.for_program(&BigUint::from(5u32));
        let f = parse("forall z. ~(((z + 5) + S(S(0))) = 0)", &t.theory.signature).unwrap();
        assert_eq!(b.matches(&f), Some((0u32.into(), 1u32.into())));
    }

    #[test]
    fn malformed() {
        let bad = |p: &str| TemplateConfig { theory: "PA".into(), pattern: p.into() }.compile().unwrap_err();
        assert!(matches!(bad("c = n"), TemplateError::Slots(_)));
        assert!(matches!(bad("c = ("), TemplateError::Parse(_)));
        let t = TemplateConfig { theory: "XX".into(), pattern: "c = c".into() };
        assert!(matches!(t.compile(), Err(TemplateError::Theory(_))));
    }
}
