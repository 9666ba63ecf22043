//! Gödel–Carnap fixed points with checked proofs.
//!
//! For `φ(x)` let `θ(x) = φ(sub(x, ⌜x⌝, x))`, `g = ⌜θ⌝` and `ψ = θ(g)`.
//! Then `sub(g, ⌜x⌝, g)` evaluates to `⌜ψ⌝`, and two uses of equality
//! substitution give `ψ ↔ φ(⌜ψ⌝)`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::coding::{godel_encode, name_code};
use crate::logic::syntax::{Formula, Term};
use crate::proof::theory::SUB;
use crate::proof::{check_proof, formula_text, Proof, ProofBuilder, Reject, Rule, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("expected exactly one free variable, found {0:?}")]
    FreeVariables(Vec<String>),
    #[error("`{0}` is not free in the formula")]
    NotFree(String),
    #[error("theory {0} has no substitution function")]
    NoSubstitution(String),
    #[error("generated proof rejected: {0}")]
    Rejected(#[from] Reject),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCertificate {
    #[serde(with = "formula_text")]
    pub psi: Formula,
    #[serde(with = "formula_text")]
    pub phi: Formula,
    pub var: String,
    /// `⌜ψ⌝` as a decimal numeral.
    #[serde(with = "crate::logic::coding::decimal_big")]
    pub code: BigUint,
    /// A proof of `ψ ↔ φ(⌜ψ⌝)`.
    pub proof: Proof,
}

impl FixedPointCertificate {
    /// `φ(⌜ψ⌝)`
    pub fn instance(&self) -> Formula {
        self.phi.substitute(&self.var, &Term::numeral(self.code.clone()))
    }

    pub fn verify(&self, base: &Theory) -> Result<(), Reject> {
        let want = Formula::iff(self.psi.clone(), self.instance());
        if !self.proof.conclusion.alpha_eq(&want) {
            return Err(Reject::ConclusionMismatch);
        }
        check_proof(&self.proof, base, 0)
    }
}

/// The fixed point of a formula with exactly one free variable.
pub fn godel_carnap_fixed_point(phi: &Formula, base: &Theory) -> Result<FixedPointCertificate, DiagonalError> {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    if free.len() != 1 {
        return Err(DiagonalError::FreeVariables(free));
    }
    godel_carnap_fixed_point_in(phi, &free[0], base)
}

/// The fixed point in `var`; other free variables stay as parameters.
pub fn godel_carnap_fixed_point_in(phi: &Formula, var: &str, base: &Theory) -> Result<FixedPointCertificate, DiagonalError> {
    if !base.substitution {
        return Err(DiagonalError::NoSubstitution(base.name.clone()));
    }
    if !phi.has_free(var) {
        return Err(DiagonalError::NotFree(var.into()));
    }
    let x = Term::var(var);
    let v = Term::numeral(name_code(var).0);
    let theta = phi.substitute(var, &Term::app(SUB, vec![x.clone(), v.clone(), x]));
    let g = Term::numeral(godel_encode(&theta).0);
    let psi = theta.substitute(var, &g);
    let code = godel_encode(&psi).0;
    let c = Term::numeral(code.clone());
    let s = Term::app(SUB, vec![g.clone(), v, g]);
    let phi_c = phi.substitute(var, &c);

    let mut b = ProofBuilder::new();
    let eq = b.push(Rule::Compute, &[], Formula::eq(s.clone(), c.clone()));
    let a1 = b.push(Rule::Assume, &[], psi.clone());
    let to = b.push(Rule::EqSubst, &[eq, a1], phi_c.clone());
    let fwd = b.push(Rule::ImpIntro, &[a1, to], Formula::implies(psi.clone(), phi_c.clone()));
    let refl = b.push(Rule::EqRefl, &[], Formula::eq(s.clone(), s.clone()));
    let back_eq = b.push(Rule::EqSubst, &[eq, refl], Formula::eq(c, s));
    let a2 = b.push(Rule::Assume, &[], phi_c.clone());
    let from = b.push(Rule::EqSubst, &[back_eq, a2], psi.clone());
    let bwd = b.push(Rule::ImpIntro, &[a2, from], Formula::implies(phi_c, psi.clone()));
    let iff = Formula::and(b.formula(fwd).clone(), b.formula(bwd).clone());
    b.push(Rule::AndIntro, &[fwd, bwd], iff);

    let cert = FixedPointCertificate { psi, phi: phi.clone(), var: var.into(), code, proof: b.finish() };
    cert.verify(base)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::classify::classify;
    use crate::logic::parse::parse_any;
    use crate::logic::signature::Symbol;

    fn base() -> Theory {
        Theory::diagonal_base(&[Symbol::new("Tr", 1), Symbol::new("Prf", 2)])
    }

    #[test]
    fn degenerate_diagonal() {
        let cert = godel_carnap_fixed_point(&parse_any("x = x").unwrap(), &base()).unwrap();
        assert_eq!(cert.verify(&base()), Ok(()));
        // ψ is itself an instance of t = t.
        assert!(matches!(&cert.psi, Formula::Atom(_, xs) if xs[0] == xs[1]));
    }

    #[test]
    fn liar_sentence() {
        let cert = godel_carnap_fixed_point(&parse_any("~Tr(x)").unwrap(), &base()).unwrap();
        assert!(cert.psi.is_sentence());
        assert_eq!(cert.instance().to_string(), format!("~Tr({})", cert.code));
    }

    #[test]
    fn godel_sentence_keeps_its_class() {
        let phi = parse_any("~exists p. Prf(p, x)").unwrap();
        let cert = godel_carnap_fixed_point(&phi, &base()).unwrap();
        assert_eq!(classify(&cert.psi).unwrap(), classify(&phi).unwrap());
        let json = serde_json::to_string(&cert).unwrap();
        let back: FixedPointCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.verify(&base()), Ok(()));
    }

    #[test]
    fn errors() {
        let t = base();
        assert!(matches!(godel_carnap_fixed_point(&parse_any("x = y").unwrap(), &t), Err(DiagonalError::FreeVariables(_))));
        assert!(matches!(
            godel_carnap_fixed_point(&parse_any("~Tr(x)").unwrap(), &Theory::pa()),
            Err(DiagonalError::NoSubstitution(_))
        ));
        let with_param = godel_carnap_fixed_point_in(&parse_any("x = y").unwrap(), "x", &t).unwrap();
        assert!(with_param.psi.has_free("y"));
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut cert = godel_carnap_fixed_point(&parse_any("~Tr(x)").unwrap(), &base()).unwrap();
        cert.code += 1u32;
        assert!(cert.verify(&base()).is_err());
    }
}
