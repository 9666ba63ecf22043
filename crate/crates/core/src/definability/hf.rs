//! Hereditarily finite universes under the Ackermann coding.

use super::DefinabilityError;
use crate::selfref::tarski::ackermann_structure;
use crate::structure::FiniteStructure;

pub const HF_LIMIT: usize = 5;

/// `|V_n|`: 0, 1, 2, 4, 16, 65536.
pub fn hf_size(n: usize) -> usize {
    (0..n).fold(0, |s, _| 1 << s)
}

/// `V_n`, where `a ∈ b` iff bit `a` of `b` is set.
pub fn hf_universe(n: usize) -> Result<FiniteStructure, DefinabilityError> {
    if n > HF_LIMIT {
        return Err(DefinabilityError::TooLarge { what: format!("V_{n}"), limit: HF_LIMIT });
    }
    Ok(ackermann_structure(hf_size(n)))
}

/// Rank of each element: the length of the longest ∈-chain below it.
pub fn ranks(m: &FiniteStructure) -> Result<Vec<usize>, DefinabilityError> {
    if !m.is_membership() {
        return Err(DefinabilityError::NotMembership);
    }
    let n = m.size();
    let members: Vec<Vec<usize>> = m.elements().map(|b| m.members(b)).collect();
    // 0 unvisited, 1 in progress, 2 done.
    let mut state = vec![0u8; n];
    let mut rank = vec![0usize; n];
    for root in 0..n {
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            if *next == 0 {
                if state[x] == 2 {
                    stack.pop();
                    continue;
                }
                state[x] = 1;
            }
            if let Some(&y) = members[x].get(*next) {
                *next += 1;
                match state[y] {
                    1 => return Err(DefinabilityError::NotWellFounded),
                    0 => stack.push((y, 0)),
                    _ => {}
                }
            } else {
                rank[x] = members[x].iter().map(|&y| rank[y] + 1).max().unwrap_or(0);
                state[x] = 2;
                stack.pop();
            }
        }
    }
    Ok(rank)
}

/// Well-founded and extensional.
pub fn is_set_like(m: &FiniteStructure) -> bool {
    if ranks(m).is_err() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    m.elements().all(|b| seen.insert(m.members(b)))
}

/// The von Neumann ordinals: transitive sets linearly ordered by ∈.
pub fn ordinals(m: &FiniteStructure) -> Vec<usize> {
    m.elements()
        .filter(|&a| {
            let xs = m.members(a);
            xs.iter().all(|&b| m.members(b).iter().all(|&c| m.member(c, a)))
                && xs.iter().all(|&b| xs.iter().all(|&c| b == c || m.member(b, c) || m.member(c, b)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::IN;

    #[test]
    fn small_universes() {
        assert_eq!((0..=5).map(hf_size).collect::<Vec<_>>(), [0, 1, 2, 4, 16, 65536]);
        let v1 = hf_universe(1).unwrap();
        assert_eq!(v1.size(), 1);
        assert!(v1.tuples(IN).is_empty());
        let v3 = hf_universe(3).unwrap();
        assert_eq!(v3.tuples(IN), vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert!(hf_universe(6).is_err());
    }

    #[test]
    fn ranks_and_ordinals() {
        let v4 = hf_universe(4).unwrap();
        let r = ranks(&v4).unwrap();
        assert_eq!(&r[..4], &[0, 1, 2, 2]);
        assert!(r[4..].iter().all(|&x| x == 3));
        assert_eq!(ordinals(&v4), vec![0, 1, 3, 11]);
        assert!(is_set_like(&v4));
    }

    #[test]
    fn cycles_rejected() {
        let mut m = FiniteStructure::new(2, crate::logic::signature::Signature::set());
        m.insert(IN, &[0, 1]).unwrap();
        m.insert(IN, &[1, 0]).unwrap();
        assert_eq!(ranks(&m), Err(DefinabilityError::NotWellFounded));
    }
}
