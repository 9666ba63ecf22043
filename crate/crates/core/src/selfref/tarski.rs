//! No formula satisfies every Tarski biconditional.
//!
//! The liar `λ ↔ ¬τ(⌜λ⌝)` for a candidate truth formula `τ` refutes the
//! biconditional `τ(⌜λ⌝) ↔ λ` outright: there is a closed proof of its
//! negation.

use serde::Serialize;

use super::diagonal::{godel_carnap_fixed_point, DiagonalError, FixedPointCertificate};
use crate::logic::eval::{evaluate_sentence, satisfiers, Assignment};
use crate::logic::signature::Signature;
use crate::logic::syntax::{Formula, Term};
use crate::proof::{check_proof, formula_text, Proof, ProofBuilder, Rule, Theory};
use crate::structure::FiniteStructure;

#[derive(Clone, Debug, Serialize)]
pub struct TarskiReport {
    #[serde(with = "formula_text")]
    pub candidate: Formula,
    /// Absent when the candidate has no free variable to diagonalise on.
    pub liar: Option<FixedPointCertificate>,
    /// `τ(⌜λ⌝) ↔ λ`
    #[serde(with = "option_text")]
    pub biconditional: Option<Formula>,
    /// A closed proof of the biconditional's negation, checked in the base.
    pub refutation: Option<Proof>,
    pub verdict: String,
    pub emptyset: Vec<EmptysetCase>,
}

/// `σ` is true iff `σ ∧ ∀y ¬(y ∈ x)` defines the empty set.
#[derive(Clone, Debug, Serialize)]
pub struct EmptysetCase {
    #[serde(with = "formula_text")]
    pub sentence: Formula,
    #[serde(with = "formula_text")]
    pub definition: Formula,
    pub sentence_holds: bool,
    pub satisfiers: Vec<usize>,
    pub defines_emptyset: bool,
}

/// The hereditarily finite sets with Ackermann codes below `n`: `i ∈ j` iff
/// bit `i` of `j` is set.
pub fn ackermann_structure(n: usize) -> FiniteStructure {
    let mut m = FiniteStructure::new(n, Signature::set());
    for j in 0..n {
        for i in 0..n.min(usize::BITS as usize) {
            if j >> i & 1 == 1 {
                m.insert("in", &[i, j]).expect("in is binary");
            }
        }
    }
    m
}

pub fn emptyset_definition(sigma: &Formula) -> Formula {
    let empty = Formula::forall("y", Formula::not(Formula::mem(Term::var("y"), Term::var("x"))));
    Formula::and(sigma.clone(), empty)
}

/// Evaluates the emptyset encoding of `σ` in the structure (element 0 is ∅).
pub fn emptyset_case(sigma: &Formula, m: &FiniteStructure) -> EmptysetCase {
    let definition = emptyset_definition(sigma);
    let sentence_holds = evaluate_sentence(sigma, m).expect("SET sentence");
    let satisfiers = satisfiers(&definition, "x", m, &Assignment::new()).expect("SET formula");
    let defines_emptyset = satisfiers == [0];
    EmptysetCase { sentence: sigma.clone(), definition, sentence_holds, satisfiers, defines_emptyset }
}

fn refute(liar: &FixedPointCertificate, base: &Theory) -> Proof {
    let l = liar.psi.clone();
    let not_t = liar.instance();
    let Formula::Not(t) = &not_t else { unreachable!("instance of ~τ") };
    let t = (**t).clone();
    let bic = Formula::iff(t.clone(), l.clone());
    let mut b = ProofBuilder::new();
    let cert = b.append(&liar.proof);
    let a = b.push(Rule::Assume, &[], bic.clone());
    let t_l = b.push(Rule::AndElimLeft, &[a], Formula::implies(t.clone(), l.clone()));
    let l_t = b.push(Rule::AndElimRight, &[a], Formula::implies(l.clone(), t.clone()));
    let l_nt = b.push(Rule::AndElimLeft, &[cert], Formula::implies(l.clone(), not_t.clone()));
    let nt_l = b.push(Rule::AndElimRight, &[cert], Formula::implies(not_t.clone(), l.clone()));
    let al = b.push(Rule::Assume, &[], l.clone());
    let nt = b.push(Rule::ImpElim, &[l_nt, al], not_t.clone());
    let tt = b.push(Rule::ImpElim, &[l_t, al], t.clone());
    let nl = b.push(Rule::NotIntro, &[al, tt, nt], Formula::not(l.clone()));
    let ant = b.push(Rule::Assume, &[], not_t.clone());
    let l2 = b.push(Rule::ImpElim, &[nt_l, ant], l.clone());
    let t2 = b.push(Rule::Raa, &[ant, l2, nl], t);
    let l3 = b.push(Rule::ImpElim, &[t_l, t2], l);
    b.push(Rule::NotIntro, &[a, l3, nl], Formula::not(bic));
    let p = b.finish();
    debug_assert_eq!(check_proof(&p, base, 0), Ok(()));
    p
}

mod option_text {
    use crate::logic::syntax::Formula;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(f: &Option<Formula>, s: S) -> Result<S::Ok, S::Error> {
        match f {
            Some(f) => s.serialize_str(&f.to_string()),
            None => s.serialize_none(),
        }
    }
}

/// Builds the liar for `candidate(x)` and refutes its biconditional.
pub fn tarski_obstruction_demo(candidate: &Formula, base: &Theory) -> Result<TarskiReport, DiagonalError> {
    let neg = Formula::not(candidate.clone());
    let liar = match godel_carnap_fixed_point(&neg, base) {
        Ok(l) => Some(l),
        Err(DiagonalError::FreeVariables(v)) if v.is_empty() => None,
        Err(e) => return Err(e),
    };
    let mut biconditional = None;
    let mut refutation = None;
    if let Some(liar) = &liar {
        let Formula::Not(t) = liar.instance() else { unreachable!() };
        biconditional = Some(Formula::iff(*t, liar.psi.clone()));
        let proof = refute(liar, base);
        if check_proof(&proof, base, 0).is_ok() {
            refutation = Some(proof);
        }
    }
    let verdict = if refutation.is_some() { "refuted" } else { "no refutation within budget" }.to_string();
    let v = ackermann_structure(4);
    let sentences = ["exists x. x = x", "forall x. exists y. x in y", "exists x. exists y. x in y", "forall x. ~(x in x)"];
    let emptyset = sentences
        .iter()
        .map(|s| emptyset_case(&crate::logic::parse::parse(s, &Signature::set()).expect("fixed text"), &v))
        .collect();
    Ok(TarskiReport { candidate: candidate.clone(), liar, biconditional, refutation, verdict, emptyset })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse_any;
    use crate::logic::signature::Symbol;

    #[test]
    fn truth_predicate_refuted() {
        let base = Theory::diagonal_base(&[Symbol::new("Tr", 1)]);
        let r = tarski_obstruction_demo(&parse_any("Tr(x)").unwrap(), &base).unwrap();
        assert_eq!(r.verdict, "refuted");
        let p = r.refutation.unwrap();
        assert_eq!(check_proof(&p, &base, 0), Ok(()));
        assert!(p.conclusion.alpha_eq(&Formula::not(r.biconditional.unwrap())));
    }

    #[test]
    fn vacuous_candidate() {
        let r = tarski_obstruction_demo(&parse_any("0 = 0").unwrap(), &Theory::diagonal_base(&[])).unwrap();
        assert_eq!(r.verdict, "no refutation within budget");
        assert!(r.liar.is_none());
    }

    #[test]
    fn arithmetic_candidate_refuted_too() {
        let base = Theory::diagonal_base(&[]);
        let r = tarski_obstruction_demo(&parse_any("exists y. x = (y+y)").unwrap(), &base).unwrap();
        assert!(r.refutation.is_some());
    }

    #[test]
    fn emptyset_encoding() {
        let v = ackermann_structure(4);
        for case in tarski_obstruction_demo(&parse_any("Tr(x)").unwrap(), &Theory::diagonal_base(&[Symbol::new("Tr", 1)]))
            .unwrap()
            .emptyset
        {
            assert_eq!(case.sentence_holds, case.defines_emptyset, "{}", case.sentence);
        }
        assert!(emptyset_case(&parse_any("exists x. x = x").unwrap(), &v).defines_emptyset);
    }
}
