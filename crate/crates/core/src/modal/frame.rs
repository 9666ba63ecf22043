//! Kripke frames and models.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use super::ModalError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KripkeFrame {
    worlds: usize,
    access: Vec<Vec<bool>>,
}

impl KripkeFrame {
    /// Any relation; see [`KripkeFrame::s4`] for the checked constructor.
    pub fn new(worlds: usize, edges: &[(usize, usize)]) -> Result<Self, ModalError> {
        let mut access = vec![vec![false; worlds]; worlds];
        for &(a, b) in edges {
            for w in [a, b] {
                if w >= worlds {
                    return Err(ModalError::BadWorld { world: w, worlds });
                }
            }
            access[a][b] = true;
        }
        Ok(KripkeFrame { worlds, access })
    }

    /// Rejects frames that are not reflexive and transitive.
    pub fn s4(worlds: usize, edges: &[(usize, usize)]) -> Result<Self, ModalError> {
        let f = Self::new(worlds, edges)?;
        if !f.is_reflexive() {
            return Err(ModalError::NotS4("reflexive"));
        }
        if !f.is_transitive() {
            return Err(ModalError::NotS4("transitive"));
        }
        Ok(f)
    }

    /// The reflexive-transitive closure of `edges`.
    pub fn closure(worlds: usize, edges: &[(usize, usize)]) -> Result<Self, ModalError> {
        let mut f = Self::new(worlds, edges)?;
        for w in 0..worlds {
            f.access[w][w] = true;
        }
        for k in 0..worlds {
            for i in 0..worlds {
                if f.access[i][k] {
                    for j in 0..worlds {
                        if f.access[k][j] {
                            f.access[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn sees(&self, a: usize, b: usize) -> bool {
        self.access[a][b]
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.worlds).filter(move |&b| self.access[a][b])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.worlds).flat_map(|a| self.successors(a).map(move |b| (a, b))).collect()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.worlds).all(|w| self.access[w][w])
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.worlds;
        (0..n).all(|a| (0..n).all(|b| !self.access[a][b] || (0..n).all(|c| !self.access[b][c] || self.access[a][c])))
    }

    /// The frame with world `w` renamed to `perm[w]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let edges: Vec<(usize, usize)> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        Self::new(self.worlds, &edges).expect("permutation of worlds")
    }
}

/// `{worlds, edges, valuation}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub worlds: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub valuation: BTreeMap<String, BTreeSet<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub frame: KripkeFrame,
    pub valuation: BTreeMap<String, BTreeSet<usize>>,
}

impl KripkeModel {
    /// Every declared proposition must appear in `valuation`, possibly empty.
    pub fn new(frame: KripkeFrame, valuation: BTreeMap<String, BTreeSet<usize>>) -> Result<Self, ModalError> {
        for ws in valuation.values() {
            if let Some(&w) = ws.iter().find(|&&w| w >= frame.worlds()) {
                return Err(ModalError::BadWorld { world: w, worlds: frame.worlds() });
            }
        }
        Ok(KripkeModel { frame, valuation })
    }

    pub fn holds(&self, prop: &str, w: usize) -> Result<bool, ModalError> {
        self.valuation.get(prop).map(|ws| ws.contains(&w)).ok_or_else(|| ModalError::Undeclared(prop.to_string()))
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile { worlds: self.frame.worlds(), edges: self.frame.edges(), valuation: self.valuation.clone() }
    }

    pub fn from_file(f: &ModelFile) -> Result<Self, ModalError> {
        Self::new(KripkeFrame::new(f.worlds, &f.edges)?, f.valuation.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, ModalError> {
        let f: ModelFile = serde_json::from_str(text).map_err(|e| ModalError::Format(e.to_string()))?;
        Self::from_file(&f)
    }
}

impl Serialize for KripkeModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_checks() {
        assert_eq!(KripkeFrame::s4(2, &[(0, 1)]), Err(ModalError::NotS4("reflexive")));
        assert_eq!(KripkeFrame::s4(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]), Err(ModalError::NotS4("transitive")));
        let c = KripkeFrame::closure(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(c.sees(0, 2) && c.is_reflexive() && c.is_transitive());
        assert!(matches!(KripkeFrame::new(2, &[(0, 2)]), Err(ModalError::BadWorld { world: 2, .. })));
    }

    #[test]
    fn json_round_trip() {
        let f = KripkeFrame::closure(2, &[(0, 1)]).unwrap();
        let m = KripkeModel::new(f, BTreeMap::from([("P".to_string(), BTreeSet::from([1]))])).unwrap();
        assert_eq!(KripkeModel::from_json(&m.to_json()).unwrap(), m);
    }
}
