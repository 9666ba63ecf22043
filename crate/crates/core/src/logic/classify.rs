//! Syntactic Σₙ / Πₙ classification.

use serde::{Deserialize, Serialize};
use std::fmt;

use super::prenex::{blocks, merge_plan, prenex, split_prefix, PrenexError};
use super::syntax::{Formula, Quantifier};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassKind {
    Delta0,
    Sigma,
    Pi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComplexityClass {
    pub kind: ClassKind,
    pub level: usize,
}

impl ComplexityClass {
    pub const DELTA0: ComplexityClass = ComplexityClass { kind: ClassKind::Delta0, level: 0 };

    pub fn sigma(level: usize) -> Self {
        assert!(level >= 1);
        ComplexityClass { kind: ClassKind::Sigma, level }
    }

    pub fn pi(level: usize) -> Self {
        assert!(level >= 1);
        ComplexityClass { kind: ClassKind::Pi, level }
    }

    /// The class with the given block structure.
    pub fn of_blocks(bs: &[Quantifier]) -> Self {
        match bs.first() {
            None => ComplexityClass::DELTA0,
            Some(Quantifier::Exists) => ComplexityClass::sigma(bs.len()),
            Some(Quantifier::Forall) => ComplexityClass::pi(bs.len()),
        }
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClassKind::Delta0 => write!(f, "Delta0"),
            ClassKind::Sigma => write!(f, "Sigma {}", self.level),
            ClassKind::Pi => write!(f, "Pi {}", self.level),
        }
    }
}

/// The class read off the prenex form of `f`.
pub fn classify(f: &Formula) -> Result<ComplexityClass, PrenexError> {
    let p = prenex(f)?;
    let (prefix, _) = split_prefix(&p);
    Ok(ComplexityClass::of_blocks(&blocks(&prefix)))
}

/// The prefix block structure computed bottom-up, without building the
/// prenex form. Agrees with [`classify`] by construction of both.
pub fn shape(f: &Formula) -> Vec<Quantifier> {
    fn cons(q: Quantifier, mut rest: Vec<Quantifier>) -> Vec<Quantifier> {
        if rest.first() != Some(&q) {
            rest.insert(0, q);
        }
        rest
    }
    fn dual(v: Vec<Quantifier>) -> Vec<Quantifier> {
        v.into_iter().map(Quantifier::dual).collect()
    }
    if f.is_bounded() {
        return Vec::new();
    }
    match f {
        Formula::Not(g) => dual(shape(g)),
        Formula::And(a, b) | Formula::Or(a, b) => merge_plan(&shape(a), &shape(b)),
        Formula::Implies(a, b) => merge_plan(&dual(shape(a)), &shape(b)),
        Formula::Forall(_, g) | Formula::BoundedForall(_, _, _, g) => cons(Quantifier::Forall, shape(g)),
        Formula::Exists(_, g) | Formula::BoundedExists(_, _, _, g) => cons(Quantifier::Exists, shape(g)),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse;
    use crate::logic::signature::Signature;

    fn c(s: &str) -> String {
        classify(&parse(s, &Signature::full()).unwrap()).unwrap().to_string()
    }

    #[test]
    fn hand_counts() {
        assert_eq!(c("forall y. ~(y in x)"), "Pi 1");
        assert_eq!(c("forall x < t. x = 0"), "Delta0");
        assert_eq!(c("exists x. forall y. exists z. z = x"), "Sigma 3");
        assert_eq!(c("exists x. forall y. y = x"), "Sigma 2");
    }

    #[test]
    fn negation_and_implication_flip() {
        assert_eq!(c("~forall y. exists z. y < z"), "Sigma 2");
        assert_eq!(c("(forall x. x = x) -> exists y. y = y"), "Sigma 1");
    }

    #[test]
    fn bounded_over_unbounded_counts() {
        assert_eq!(c("forall x < y. exists z. z = x"), "Pi 2");
        assert_eq!(c("exists x in y. forall z in x. z = z"), "Delta0");
    }
}
