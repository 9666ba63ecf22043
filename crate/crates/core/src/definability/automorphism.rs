//! Automorphism groups by backtracking over colour-refined candidates.

use std::collections::{BTreeSet, HashMap};

use super::DefinabilityError;
use crate::structure::{tuples_over, FiniteStructure};

/// Largest universe searched exhaustively.
pub const AUTOMORPHISM_LIMIT: usize = 16;

struct Tables {
    n: usize,
    /// `(arity, truth table indexed in base n)`
    relations: Vec<(usize, Vec<bool>)>,
    /// `(arity, value table)`; constants are arity 0.
    functions: Vec<(usize, Vec<usize>)>,
}

impl Tables {
    fn new(m: &FiniteStructure) -> Self {
        let n = m.size();
        let relations = m
            .relation_symbols()
            .into_iter()
            .map(|(name, arity)| {
                let table = tuples_over(n, arity).iter().map(|t| m.holds(&name, t) == Some(true)).collect();
                (arity, table)
            })
            .collect();
        let mut functions = Vec::new();
        for f in &m.signature().functions {
            functions.push((f.arity, tuples_over(n, f.arity).iter().map(|t| m.apply(&f.name, t).expect("total")).collect()));
        }
        for c in &m.signature().constants {
            functions.push((0, vec![m.apply(&c.name, &[]).expect("constant")]));
        }
        Tables { n, relations, functions }
    }

    fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |a, &x| a * self.n + x)
    }

    /// Colour refinement: elements with different final colours lie in
    /// different orbits.
    fn colours(&self) -> Vec<usize> {
        let n = self.n;
        let mut colour = vec![0usize; n];
        for (arity, table) in &self.functions {
            if *arity == 0 {
                colour[table[0]] += 1;
            }
        }
        loop {
            let mut sigs: Vec<(usize, Vec<Vec<usize>>)> = (0..n).map(|x| (colour[x], Vec::new())).collect();
            for (arity, table) in &self.relations {
                for t in tuples_over(n, *arity) {
                    if !table[self.index(&t)] {
                        continue;
                    }
                    let shape: Vec<usize> = t.iter().map(|&y| colour[y]).collect();
                    for (pos, &x) in t.iter().enumerate() {
                        let mut s = vec![pos];
                        s.extend(&shape);
                        sigs[x].1.push(s);
                    }
                }
            }
            for (arity, table) in &self.functions {
                for t in tuples_over(n, *arity) {
                    let v = table[self.index(&t)];
                    let mut s = vec![usize::MAX];
                    s.extend(t.iter().map(|&y| colour[y]));
                    sigs[v].1.push(s);
                }
            }
            for s in &mut sigs {
                s.1.sort();
            }
            let distinct: BTreeSet<_> = sigs.iter().collect();
            let ids: HashMap<_, usize> = distinct.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
            let next: Vec<usize> = sigs.iter().map(|s| ids[s]).collect();
            let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
            if classes(&next) == classes(&colour) {
                return next;
            }
            colour = next;
        }
    }

    /// Whether the partial map on `0..=x` is consistent at every tuple
    /// that mentions `x`.
    fn consistent(&self, map: &[usize], x: usize) -> bool {
        for (arity, table) in &self.relations {
            for t in tuples_over(x + 1, *arity) {
                if t.contains(&x) {
                    let image: Vec<usize> = t.iter().map(|&y| map[y]).collect();
                    if table[self.index(&t)] != table[self.index(&image)] {
                        return false;
                    }
                }
            }
        }
        for (arity, table) in &self.functions {
            for t in tuples_over(x + 1, *arity) {
                let v = table[self.index(&t)];
                if v > x || !(t.contains(&x) || v == x) {
                    continue;
                }
                let image: Vec<usize> = t.iter().map(|&y| map[y]).collect();
                if table[self.index(&image)] != map[v] {
                    return false;
                }
            }
        }
        true
    }
}

/// Every automorphism, as `perm[x] = image of x`, in lexicographic order.
pub fn automorphisms(m: &FiniteStructure) -> Result<Vec<Vec<usize>>, DefinabilityError> {
    let n = m.size();
    if n > AUTOMORPHISM_LIMIT {
        return Err(DefinabilityError::TooLarge { what: format!("universe of {n}"), limit: AUTOMORPHISM_LIMIT });
    }
    let t = Tables::new(m);
    let colour = t.colours();
    let mut out = Vec::new();
    let mut map = vec![0; n];
    let mut used = vec![false; n];
    fn go(t: &Tables, colour: &[usize], x: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if x == t.n {
            out.push(map.clone());
            return;
        }
        for y in 0..t.n {
            if used[y] || colour[y] != colour[x] {
                continue;
            }
            map[x] = y;
            if t.consistent(map, x) {
                used[y] = true;
                go(t, colour, x + 1, map, used, out);
                used[y] = false;
            }
        }
    }
    go(&t, &colour, 0, &mut map, &mut used, &mut out);
    Ok(out)
}

/// Elements fixed by every automorphism.
pub fn definable_elements(m: &FiniteStructure) -> Result<BTreeSet<usize>, DefinabilityError> {
    let group = automorphisms(m)?;
    Ok(m.elements().filter(|&x| group.iter().all(|g| g[x] == x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definability::hf::hf_universe;
    use crate::logic::signature::{Signature, Symbol};

    fn digraph(n: usize, edges: &[(usize, usize)]) -> FiniteStructure {
        let sig = Signature::empty("G").extended("G", &[], &[Symbol::new("E", 2)], false);
        let mut m = FiniteStructure::new(n, sig);
        for &(a, b) in edges {
            m.insert("E", &[a, b]).unwrap();
        }
        m
    }

    #[test]
    fn examples() {
        assert_eq!(automorphisms(&digraph(2, &[])).unwrap().len(), 2);
        assert_eq!(automorphisms(&digraph(3, &[(0, 1), (1, 2), (2, 0)])).unwrap().len(), 3);
        assert!(definable_elements(&digraph(2, &[])).unwrap().is_empty());
        assert_eq!(definable_elements(&digraph(2, &[(0, 1)])).unwrap(), BTreeSet::from([0, 1]));
        for n in 0..=4 {
            assert_eq!(automorphisms(&hf_universe(n).unwrap()).unwrap().len(), 1, "V_{n}");
        }
        assert!(automorphisms(&hf_universe(5).unwrap()).is_err());
    }
}
