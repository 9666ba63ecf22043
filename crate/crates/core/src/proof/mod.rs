//! Natural-deduction proofs over enumerated theories.
//!
//! A proof is a list of steps; each step names a rule, the earlier steps it
//! uses, and the formula it concludes. The conclusion is the last formula.

pub mod check;
pub mod search;
pub mod theory;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;

use crate::logic::coding::{Codable, DecodeError, Reader, Writer};
use crate::logic::parse::parse_any;
use crate::logic::syntax::Formula;

pub use check::{check_proof, Reject};
pub use search::{enumerate_proofs, is_provable_within, ProofStream};
pub use theory::Theory;

/// Inference rules. `refs` conventions are listed per rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// The axiom with this index; no refs.
    Axiom(usize),
    /// Opens an assumption; no refs.
    Assume,
    /// `[a, b]`
    AndIntro,
    /// `[a∧b]`
    AndElimLeft,
    AndElimRight,
    /// `[a]` giving `a∨b`.
    OrIntroLeft,
    /// `[b]` giving `a∨b`.
    OrIntroRight,
    /// `[a∨b, assume a, c, assume b, c]`
    OrElim,
    /// `[assume a, b]`
    ImpIntro,
    /// `[a→b, a]`
    ImpElim,
    /// `[assume a, c, ~c]` giving `~a`.
    NotIntro,
    /// `[assume ~a, c, ~c]` giving `a`.
    Raa,
    /// `[c, ~c]` giving anything.
    ExFalso,
    /// `[φ[x:=y]]` giving `∀x φ`, `y` fresh.
    ForallIntro,
    /// `[∀x φ]` giving `φ[x:=t]`.
    ForallElim,
    /// `[φ[x:=t]]` giving `∃x φ`.
    ExistsIntro,
    /// `[∃x φ, assume φ[x:=y], c]` giving `c`, `y` fresh.
    ExistsElim,
    /// No refs; `t = t`.
    EqRefl,
    /// `[s = t, φ]` giving φ with some free occurrences of `s` replaced by `t`.
    EqSubst,
    /// `[φ]` where φ and the result differ by unfolding one bounded
    /// quantifier at the root: `∀x<t ψ` ⟷ `∀x (x<t → ψ)`, `∃x<t ψ` ⟷ `∃x (x<t ∧ ψ)`.
    BoundedDef,
    /// No refs; a true closed equation `sub(n, v, m) = k` of the substitution
    /// function, available in theories that declare it.
    Compute,
}

impl Rule {
    pub fn tag(self) -> u64 {
        match self {
            Rule::Axiom(_) => 0,
            Rule::Assume => 1,
            Rule::AndIntro => 2,
            Rule::AndElimLeft => 3,
            Rule::AndElimRight => 4,
            Rule::OrIntroLeft => 5,
            Rule::OrIntroRight => 6,
            Rule::OrElim => 7,
            Rule::ImpIntro => 8,
            Rule::ImpElim => 9,
            Rule::NotIntro => 10,
            Rule::Raa => 11,
            Rule::ExFalso => 12,
            Rule::ForallIntro => 13,
            Rule::ForallElim => 14,
            Rule::ExistsIntro => 15,
            Rule::ExistsElim => 16,
            Rule::EqRefl => 17,
            Rule::EqSubst => 18,
            Rule::BoundedDef => 19,
            Rule::Compute => 20,
        }
    }

    fn from_tag(tag: u64, axiom: usize) -> Option<Rule> {
        Some(match tag {
            0 => Rule::Axiom(axiom),
            1 => Rule::Assume,
            2 => Rule::AndIntro,
            3 => Rule::AndElimLeft,
            4 => Rule::AndElimRight,
            5 => Rule::OrIntroLeft,
            6 => Rule::OrIntroRight,
            7 => Rule::OrElim,
            8 => Rule::ImpIntro,
            9 => Rule::ImpElim,
            10 => Rule::NotIntro,
            11 => Rule::Raa,
            12 => Rule::ExFalso,
            13 => Rule::ForallIntro,
            14 => Rule::ForallElim,
            15 => Rule::ExistsIntro,
            16 => Rule::ExistsElim,
            17 => Rule::EqRefl,
            18 => Rule::EqSubst,
            19 => Rule::BoundedDef,
            20 => Rule::Compute,
            _ => return None,
        })
    }
}

/// Formulas travel as their rendered text.
pub mod formula_text {
    use super::*;

    pub fn serialize<S: Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        parse_any(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    #[serde(default)]
    pub refs: Vec<usize>,
    #[serde(with = "formula_text")]
    pub formula: Formula,
}

impl Step {
    pub fn new(rule: Rule, refs: Vec<usize>, formula: Formula) -> Self {
        Step { rule, refs, formula }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Proof {
    #[serde(with = "formula_text")]
    pub conclusion: Formula,
    /// Indices of the axioms cited, increasing.
    pub premises: Vec<usize>,
    pub steps: Vec<Step>,
}

impl Proof {
    /// Builds a proof whose conclusion and premise list are read off the steps.
    pub fn from_steps(steps: Vec<Step>) -> Proof {
        let conclusion = steps.last().map(|s| s.formula.clone()).unwrap_or_else(|| Formula::prop("EMPTY"));
        let premises: BTreeSet<usize> = steps
            .iter()
            .filter_map(|s| match s.rule {
                Rule::Axiom(i) => Some(i),
                _ => None,
            })
            .collect();
        Proof { conclusion, premises: premises.into_iter().collect(), steps }
    }

    /// The least `k` such that every cited axiom lies in the first `k`.
    pub fn fragment(&self) -> usize {
        self.premises.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Proof, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// A growable step list with helpers for building proofs by hand.
#[derive(Default, Clone, Debug)]
pub struct ProofBuilder {
    steps: Vec<Step>,
}

impl ProofBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rule: Rule, refs: &[usize], formula: Formula) -> usize {
        self.steps.push(Step::new(rule, refs.to_vec(), formula));
        self.steps.len() - 1
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.steps[i].formula
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Appends the steps of `other`, shifting its references, and returns the
    /// index of its last step.
    pub fn append(&mut self, other: &Proof) -> usize {
        let base = self.steps.len();
        for s in &other.steps {
            let refs = s.refs.iter().map(|r| r + base).collect();
            self.steps.push(Step::new(s.rule, refs, s.formula.clone()));
        }
        self.steps.len() - 1
    }

    pub fn finish(self) -> Proof {
        Proof::from_steps(self.steps)
    }
}

impl Codable for Proof {
    const KIND: u8 = crate::logic::coding::kind::PROOF;

    fn write(&self, w: &mut Writer) {
        w.varint(self.steps.len() as u64);
        for s in &self.steps {
            w.header(s.rule.tag(), s.refs.len() as u64);
            if let Rule::Axiom(i) = s.rule {
                w.varint(i as u64);
            }
            for &r in &s.refs {
                w.varint(r as u64);
            }
            s.formula.write(w);
        }
    }

    fn read(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let n = r.varint()?;
        let mut steps = Vec::new();
        for _ in 0..n {
            let at = r.offset();
            let (tag, nrefs) = r.header()?;
            let axiom = if tag == 0 { r.varint()? as usize } else { 0 };
            let rule = Rule::from_tag(tag, axiom).ok_or_else(|| r.bad_tag(at, tag, nrefs))?;
            let refs = (0..nrefs).map(|_| r.varint().map(|v| v as usize)).collect::<Result<_, _>>()?;
            let formula = Formula::read(r)?;
            steps.push(Step { rule, refs, formula });
        }
        Ok(Proof::from_steps(steps))
    }
}
