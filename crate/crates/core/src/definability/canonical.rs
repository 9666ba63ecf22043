//! ∈-recursive definitions of hereditarily finite sets.

use super::hf::is_set_like;
use super::DefinabilityError;
use crate::logic::syntax::{Formula, Term};
use crate::structure::FiniteStructure;

fn bound_var(depth: usize) -> String {
    if depth == 0 {
        "u".into()
    } else {
        format!("u{depth}")
    }
}

fn define(m: &FiniteStructure, x: usize, var: &str, depth: usize) -> Formula {
    let u = bound_var(depth);
    let here = Formula::mem(Term::var(&u), Term::var(var));
    let members = m.members(x);
    if members.is_empty() {
        return Formula::forall(u, Formula::not(here));
    }
    let alternatives = members.iter().map(|&y| define(m, y, &u, depth + 1)).reduce(Formula::or).expect("nonempty");
    Formula::forall(u.clone(), Formula::iff(here, alternatives))
}

/// `φ_x(v) := ∀u (u ∈ v ↔ ⋁_{y ∈ x} φ_y(u))`, with `φ_∅(v) := ∀u ¬(u ∈ v)`.
pub fn canonical_definition(m: &FiniteStructure, x: usize) -> Result<Formula, DefinabilityError> {
    if !m.is_membership() {
        return Err(DefinabilityError::NotMembership);
    }
    if !is_set_like(m) {
        return Err(DefinabilityError::NotWellFounded);
    }
    Ok(define(m, x, "v", 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definability::hf::hf_universe;
    use crate::logic::eval::{satisfiers, Assignment};

    #[test]
    fn emptyset_and_singleton() {
        let v3 = hf_universe(3).unwrap();
        assert_eq!(canonical_definition(&v3, 0).unwrap().to_string(), "forall u. ~(u in v)");
        let one = canonical_definition(&v3, 1).unwrap();
        assert_eq!(satisfiers(&one, "v", &v3, &Assignment::new()).unwrap(), [1]);
    }

    #[test]
    fn v4_unique_satisfiers() {
        let v4 = hf_universe(4).unwrap();
        for x in v4.elements() {
            let d = canonical_definition(&v4, x).unwrap();
            assert!(d.free_vars().into_iter().eq(["v".to_string()]));
            assert_eq!(satisfiers(&d, "v", &v4, &Assignment::new()).unwrap(), [x]);
        }
    }
}
