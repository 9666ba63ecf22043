//! Enumerated theories.
//!
//! A theory lists finitely many base axioms and at most one scheme. The
//! axiom sequence alternates base axioms and scheme instances until the base
//! axioms run out, then continues with scheme instances only. Scheme
//! instances follow the (size, code) order of their generating formulas.

use serde::Deserialize;
use std::sync::Mutex;
use thiserror::Error;

use crate::logic::enumerate::Pool;
use crate::logic::parse::parse;
use crate::logic::signature::{Signature, Symbol};
use crate::logic::syntax::{Formula, Term};

/// Name of the substitution function symbol used by the diagonal lemma.
pub const SUB: &str = "sub";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("axiom file: {0}")]
    File(String),
    #[error("unknown theory `{0}`")]
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scheme {
    /// `∀params [(φ(0) ∧ ∀x (φ(x) → φ(S(x)))) → ∀x φ(x)]`
    Induction { variable: String, parameters: Vec<String> },
    /// `∀params ∀z ∃y ∀x (x ∈ y ↔ (x ∈ z ∧ φ))`
    Separation { variable: String, parameters: Vec<String> },
}

impl Scheme {
    fn pool_vars(&self) -> Vec<String> {
        match self {
            Scheme::Induction { variable, parameters } | Scheme::Separation { variable, parameters } => {
                std::iter::once(variable.clone()).chain(parameters.iter().cloned()).collect()
            }
        }
    }

    pub fn instance(&self, phi: &Formula) -> Formula {
        match self {
            Scheme::Induction { variable: x, .. } => {
                let base = phi.substitute(x, &Term::Zero);
                let step = Formula::forall(
                    x.clone(),
                    Formula::implies(phi.clone(), phi.substitute(x, &Term::succ(Term::Var(x.clone())))),
                );
                Formula::implies(Formula::and(base, step), Formula::forall(x.clone(), phi.clone())).universal_closure()
            }
            Scheme::Separation { variable: x, .. } => {
                let (y, z) = (Term::var("y"), Term::var("z"));
                let xv = Term::Var(x.clone());
                let body = Formula::iff(Formula::mem(xv.clone(), y), Formula::and(Formula::mem(xv, z), phi.clone()));
                Formula::forall("z", Formula::exists("y", Formula::forall(x.clone(), body))).universal_closure()
            }
        }
    }
}

#[derive(Deserialize)]
struct AxiomFile {
    version: String,
    name: String,
    signature: String,
    axioms: Vec<String>,
    #[serde(default)]
    schemes: Vec<Scheme>,
    #[serde(default)]
    frozen_prefix: Vec<String>,
}

struct Instances {
    pool: Pool,
    size: usize,
    list: Vec<Formula>,
}

pub struct Theory {
    pub name: String,
    pub version: String,
    pub signature: Signature,
    base: Vec<Formula>,
    scheme: Option<Scheme>,
    /// Whether true equations of the substitution function count as axioms
    /// (checked by the `compute` rule).
    pub substitution: bool,
    frozen_prefix: Vec<String>,
    instances: Option<Mutex<Instances>>,
}

impl std::fmt::Debug for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Theory").field("name", &self.name).field("version", &self.version).finish()
    }
}

const PA_V1: &str = include_str!("axioms/pa-v1.json");
const ZF_V1: &str = include_str!("axioms/zf-v1.json");

impl Theory {
    fn from_file(text: &str) -> Result<Theory, TheoryError> {
        let file: AxiomFile = serde_json::from_str(text).map_err(|e| TheoryError::File(e.to_string()))?;
        let signature = Signature::by_name(&file.signature).ok_or_else(|| TheoryError::File(format!("signature {}", file.signature)))?;
        let base = file
            .axioms
            .iter()
            .map(|a| parse(a, &signature).map_err(|e| TheoryError::File(format!("{a}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if file.schemes.len() > 1 {
            return Err(TheoryError::File("at most one scheme".into()));
        }
        let scheme = file.schemes.into_iter().next();
        let instances = scheme.as_ref().map(|s| {
            let vars = s.pool_vars();
            let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
            Mutex::new(Instances { pool: Pool::new(&signature, &vars), size: 0, list: Vec::new() })
        });
        Ok(Theory {
            name: file.name,
            version: file.version,
            signature,
            base,
            scheme,
            substitution: false,
            frozen_prefix: file.frozen_prefix,
            instances,
        })
    }

    /// Peano arithmetic, `pa-v1`.
    pub fn pa() -> Theory {
        Theory::from_file(PA_V1).expect("bundled axiom file")
    }

    /// The set-theory fragment `zf-v1`: extensionality, empty set, pairing,
    /// union, foundation and separation.
    pub fn zf() -> Theory {
        Theory::from_file(ZF_V1).expect("bundled axiom file")
    }

    /// A theory with the given finitely many axioms.
    pub fn finite(name: &str, signature: Signature, axioms: Vec<Formula>) -> Theory {
        Theory {
            name: name.into(),
            version: format!("{name}-finite"),
            signature,
            base: axioms,
            scheme: None,
            substitution: false,
            frozen_prefix: Vec::new(),
            instances: None,
        }
    }

    /// Pure logic with the substitution function over arithmetic plus
    /// whatever relation symbols the caller needs. This is the base theory of
    /// fixed-point certificates.
    pub fn diagonal_base(extra_relations: &[Symbol]) -> Theory {
        let sig = Signature::arith().extended("ARITH+sub", &[Symbol::new(SUB, 3)], extra_relations, true);
        let mut t = Theory::finite("SUB", sig, Vec::new());
        t.version = "sub-v1".into();
        t.substitution = true;
        t
    }

    pub fn by_name(name: &str) -> Result<Theory, TheoryError> {
        match name.to_ascii_uppercase().as_str() {
            "PA" => Ok(Theory::pa()),
            "ZF" | "ZFC" => Ok(Theory::zf()),
            "PURE" | "LOGIC" => Ok(Theory::finite("PURE", Signature::arith(), Vec::new())),
            "SUB" => Ok(Theory::diagonal_base(&[])),
            _ => Err(TheoryError::Unknown(name.into())),
        }
    }

    pub fn base_axioms(&self) -> &[Formula] {
        &self.base
    }

    fn instance(&self, i: usize) -> Option<Formula> {
        let scheme = self.scheme.as_ref()?;
        let mut st = self.instances.as_ref()?.lock().expect("instance cache");
        while st.list.len() <= i {
            st.size += 1;
            let size = st.size;
            let batch = st.pool.formulas(size).to_vec();
            st.list.extend(batch.iter().map(|phi| scheme.instance(phi)));
        }
        Some(st.list[i].clone())
    }

    /// The axiom with index `k`, if the theory has that many.
    pub fn axiom(&self, k: usize) -> Option<Formula> {
        let b = self.base.len();
        if self.scheme.is_none() {
            return self.base.get(k).cloned();
        }
        if k < 2 * b {
            if k.is_multiple_of(2) {
                Some(self.base[k / 2].clone())
            } else {
                self.instance(k / 2)
            }
        } else {
            self.instance(k - b)
        }
    }

    /// The first `k` axioms (fewer only for finite theories).
    pub fn axioms_of(&self, k: usize) -> Vec<Formula> {
        (0..k).map_while(|i| self.axiom(i)).collect()
    }

    /// Whether the theory has infinitely many axioms.
    pub fn is_infinite(&self) -> bool {
        self.scheme.is_some()
    }

    /// The recorded prefix of the enumeration, as stored in the axiom file.
    pub fn frozen_prefix(&self) -> &[String] {
        &self.frozen_prefix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pa_starts_with_successor_axiom() {
        let pa = Theory::pa();
        assert!(pa.axioms_of(0).is_empty());
        let three = pa.axioms_of(3);
        assert_eq!(three.len(), 3);
        assert_eq!(three[0].to_string(), "forall x. ~(S(x) = 0)");
        assert_eq!(three[2].to_string(), "forall x. forall y. (S(x) = S(y) -> x = y)");
    }

    #[test]
    fn prefix_law() {
        let pa = Theory::pa();
        let a = pa.axioms_of(30);
        let b = pa.axioms_of(31);
        assert_eq!(&b[..30], &a[..]);
    }

    #[test]
    fn axioms_are_sentences() {
        for t in [Theory::pa(), Theory::zf()] {
            for a in t.axioms_of(60) {
                assert!(a.is_sentence(), "{a}");
            }
        }
    }

    #[test]
    fn induction_instances_have_the_expected_shape() {
        let pa = Theory::pa();
        let first = pa.axiom(1).unwrap();
        assert!(matches!(first, Formula::Implies(..) | Formula::Forall(..)));
    }

    #[test]
    fn enumeration_matches_frozen_file() {
        for t in [Theory::pa(), Theory::zf()] {
            let frozen = t.frozen_prefix().to_vec();
            assert!(frozen.len() >= 20);
            let live: Vec<String> = t.axioms_of(frozen.len()).iter().map(|a| a.to_string()).collect();
            assert_eq!(live, frozen, "{}", t.version);
        }
    }
}
