//! Switches: propositions that can always be made true and always be made
//! false again.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use super::check::check_model;
use super::frame::{KripkeFrame, KripkeModel};
use super::ModalError;
use crate::logic::syntax::Formula;

/// Worlds with one-step extensions; accessibility is the reflexive-transitive
/// closure of `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorldGraph {
    pub worlds: usize,
    pub edges: Vec<(usize, usize)>,
    pub valuation: BTreeMap<String, BTreeSet<usize>>,
}

impl WorldGraph {
    pub fn model(&self) -> Result<KripkeModel, ModalError> {
        KripkeModel::new(KripkeFrame::closure(self.worlds, &self.edges)?, self.valuation.clone())
    }

    /// A cycle of `2k` worlds with `p` true at the even ones.
    pub fn alternating_cycle(p: &str, k: usize) -> Self {
        let n = 2 * k;
        WorldGraph { worlds: n, edges: (0..n).map(|w| (w, (w + 1) % n)).collect(), valuation: BTreeMap::from([(p.to_string(), (0..n).step_by(2).collect())]) }
    }

    /// A complete binary tree of the given depth, `p` true at even depths.
    pub fn alternating_tree(p: &str, depth: usize) -> Self {
        let n = (1 << (depth + 1)) - 1;
        let edges = (1..n).map(|w| ((w - 1) / 2, w)).collect();
        let depth_of = |w: usize| (usize::BITS - (w + 1).leading_zeros() - 1) as usize;
        WorldGraph { worlds: n, edges, valuation: BTreeMap::from([(p.to_string(), (0..n).filter(|&w| depth_of(w) % 2 == 0).collect())]) }
    }

    pub fn constant(p: &str, worlds: usize, value: bool) -> Self {
        let set = if value { (0..worlds).collect() } else { BTreeSet::new() };
        WorldGraph { worlds, edges: (1..worlds).map(|w| (w - 1, w)).collect(), valuation: BTreeMap::from([(p.to_string(), set)]) }
    }
}

/// `◇p ∧ ◇¬p` at every world.
pub fn is_switch(p: &str, g: &WorldGraph) -> Result<bool, ModalError> {
    let m = g.model()?;
    let atom = Formula::prop(p);
    let both = Formula::and(Formula::possibly(atom.clone()), Formula::possibly(Formula::not(atom)));
    for w in 0..g.worlds {
        if !check_model(&both, &m, w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(is_switch("P", &WorldGraph::alternating_cycle("P", 3)).unwrap());
        assert!(!is_switch("P", &WorldGraph::alternating_tree("P", 3)).unwrap());
        assert!(!is_switch("P", &WorldGraph::constant("P", 4, true)).unwrap());
        assert_eq!(is_switch("Q", &WorldGraph::constant("P", 2, true)), Err(ModalError::Undeclared("Q".into())));
    }
}
