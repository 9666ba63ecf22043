//! Embeddings of ∈-structures and the extension notions.

use super::hf::{ordinals, ranks};
use super::DefinabilityError;
use crate::structure::{tuples_over, FiniteStructure};

#[derive(Clone, Debug)]
pub struct Embedding<'a> {
    pub source: &'a FiniteStructure,
    pub target: &'a FiniteStructure,
    pub map: Vec<usize>,
}

impl<'a> Embedding<'a> {
    /// Checks injectivity and preservation of every relation both ways.
    pub fn new(source: &'a FiniteStructure, target: &'a FiniteStructure, map: Vec<usize>) -> Result<Self, DefinabilityError> {
        let bad = |s: String| Err(DefinabilityError::BadEmbedding(s));
        if map.len() != source.size() {
            return bad(format!("map has {} entries for {} elements", map.len(), source.size()));
        }
        if let Some(&x) = map.iter().find(|&&x| x >= target.size()) {
            return bad(format!("image {x} out of range"));
        }
        let mut seen = vec![false; target.size()];
        for &x in &map {
            if std::mem::replace(&mut seen[x], true) {
                return bad(format!("{x} hit twice"));
            }
        }
        for (name, arity) in source.relation_symbols() {
            for t in tuples_over(source.size(), arity) {
                let image: Vec<usize> = t.iter().map(|&x| map[x]).collect();
                if source.holds(&name, &t) != target.holds(&name, &image) {
                    return bad(format!("{name}{t:?} not preserved"));
                }
            }
        }
        Ok(Embedding { source, target, map })
    }

    /// The identity on codes `0..|source|`.
    pub fn inclusion(source: &'a FiniteStructure, target: &'a FiniteStructure) -> Result<Self, DefinabilityError> {
        Embedding::new(source, target, (0..source.size()).collect())
    }

    fn in_image(&self) -> Vec<bool> {
        let mut v = vec![false; self.target.size()];
        for &x in &self.map {
            v[x] = true;
        }
        v
    }

    fn membership(&self) -> Result<(), DefinabilityError> {
        if self.source.is_membership() && self.target.is_membership() {
            Ok(())
        } else {
            Err(DefinabilityError::NotMembership)
        }
    }
}

/// No new members of old sets.
pub fn is_end_extension(e: &Embedding) -> Result<bool, DefinabilityError> {
    e.membership()?;
    let old = e.in_image();
    Ok(e.map.iter().all(|&b| e.target.members(b).iter().all(|&a| old[a])))
}

/// A target set containing every old element, if there is one.
pub fn is_covering(e: &Embedding) -> Result<Option<usize>, DefinabilityError> {
    e.membership()?;
    Ok(e.target.elements().find(|&c| e.map.iter().all(|&x| e.target.member(x, c))))
}

/// An end extension whose new sets all have rank above every old ordinal.
pub fn is_top_extension(e: &Embedding) -> Result<bool, DefinabilityError> {
    if !is_end_extension(e)? {
        return Ok(false);
    }
    let rank = ranks(e.target)?;
    let top = ordinals(e.source).iter().map(|&a| rank[e.map[a]]).max();
    let old = e.in_image();
    Ok(e.target.elements().filter(|&x| !old[x]).all(|x| top.is_none_or(|t| rank[x] > t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definability::hf::hf_universe;
    use crate::logic::syntax::IN;

    #[test]
    fn v3_in_v4() {
        let (v3, v4) = (hf_universe(3).unwrap(), hf_universe(4).unwrap());
        let e = Embedding::inclusion(&v3, &v4).unwrap();
        assert!(is_end_extension(&e).unwrap());
        assert_eq!(is_covering(&e).unwrap(), Some(15));
        assert!(is_top_extension(&e).unwrap());
    }

    #[test]
    fn new_member_of_old_set() {
        let v2 = hf_universe(2).unwrap();
        // {a, b} with a ∈ b, plus a new element c ∈ b.
        let mut n = FiniteStructure::new(3, v2.signature().clone());
        n.insert(IN, &[0, 1]).unwrap();
        n.insert(IN, &[2, 1]).unwrap();
        let e = Embedding::inclusion(&v2, &n).unwrap();
        assert!(!is_end_extension(&e).unwrap());
        assert!(!is_top_extension(&e).unwrap());
    }

    #[test]
    fn bad_maps() {
        let (v2, v3) = (hf_universe(2).unwrap(), hf_universe(3).unwrap());
        assert!(Embedding::new(&v2, &v3, vec![0, 0]).is_err());
        assert!(Embedding::new(&v2, &v3, vec![1, 0]).is_err());
        assert!(Embedding::new(&v2, &v3, vec![0, 1]).is_ok());
    }
}
