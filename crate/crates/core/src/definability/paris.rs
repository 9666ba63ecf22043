//! Paris models at finite scale: every ordinal is definable without
//! parameters.

use serde::Serialize;
use std::collections::BTreeSet;

use super::automorphism::{automorphisms, definable_elements};
use super::hf::{is_set_like, ordinals};
use super::DefinabilityError;
use crate::structure::FiniteStructure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParisVerdict {
    pub ordinals: Vec<usize>,
    pub definable: BTreeSet<usize>,
    pub paris: bool,
    /// Elements fixed by every automorphism that fixes each ordinal, i.e.
    /// those definable from ordinal parameters.
    pub ordinal_definable: BTreeSet<usize>,
    pub all_ordinal_definable: bool,
    pub pointwise: bool,
    /// `paris ∧ all_ordinal_definable ⇒ pointwise` on this structure.
    pub implication_holds: bool,
}

pub fn paris_check(m: &FiniteStructure) -> Result<ParisVerdict, DefinabilityError> {
    if !m.is_membership() {
        return Err(DefinabilityError::NotMembership);
    }
    if !is_set_like(m) {
        return Err(DefinabilityError::NotWellFounded);
    }
    let ords = ordinals(m);
    let definable = definable_elements(m)?;
    let paris = ords.iter().all(|o| definable.contains(o));
    let fixing: Vec<Vec<usize>> = automorphisms(m)?.into_iter().filter(|p| ords.iter().all(|&o| p[o] == o)).collect();
    let ordinal_definable: BTreeSet<usize> = m.elements().filter(|&a| fixing.iter().all(|p| p[a] == a)).collect();
    let all_ordinal_definable = ordinal_definable.len() == m.size();
    let pointwise = definable.len() == m.size();
    Ok(ParisVerdict {
        implication_holds: !(paris && all_ordinal_definable) || pointwise,
        ordinals: ords,
        definable,
        paris,
        ordinal_definable,
        all_ordinal_definable,
        pointwise,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definability::hf::hf_universe;
    use crate::logic::signature::{Signature, Symbol};

    #[test]
    fn v3_is_paris() {
        let v = paris_check(&hf_universe(3).unwrap()).unwrap();
        assert_eq!(v.ordinals, [0, 1, 3]);
        assert!(v.paris && v.pointwise && v.implication_holds);
    }

    #[test]
    fn non_membership_rejected() {
        let sig = Signature::empty("G").extended("G", &[], &[Symbol::new("E", 2)], false);
        let mut m = FiniteStructure::new(2, sig);
        m.insert("E", &[0, 1]).unwrap();
        m.insert("E", &[1, 0]).unwrap();
        assert_eq!(paris_check(&m), Err(DefinabilityError::NotMembership));
    }
}
