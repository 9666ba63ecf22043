//! A second evaluator: extensions computed bottom-up as world bitsets, with
//! `◇` as a least fixpoint of one-step predecessors.

use super::check::propositions;
use super::frame::KripkeModel;
use super::ModalError;
use crate::logic::syntax::Formula;

pub const FIXPOINT_WORLDS: usize = 64;

/// The set of worlds where `f` holds, bit `w` for world `w`.
pub fn extension(f: &Formula, m: &KripkeModel) -> Result<u64, ModalError> {
    let n = m.frame.worlds();
    if n > FIXPOINT_WORLDS {
        return Err(ModalError::TooLarge { what: format!("{n} worlds"), limit: FIXPOINT_WORLDS });
    }
    for p in propositions(f)? {
        if !m.valuation.contains_key(&p) {
            return Err(ModalError::Undeclared(p));
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // one-step successor masks, without closing under the relation
    let succ: Vec<u64> = (0..n).map(|a| (0..n).filter(|&b| m.frame.sees(a, b)).fold(0, |s, b| s | 1 << b)).collect();
    Ok(ext(f, m, &succ, all))
}

fn ext(f: &Formula, m: &KripkeModel, succ: &[u64], all: u64) -> u64 {
    use Formula::*;
    match f {
        Atom(p, _) => m.valuation[p].iter().fold(0, |s, &w| s | 1 << w),
        Not(a) => !ext(a, m, succ, all) & all,
        And(a, b) => ext(a, m, succ, all) & ext(b, m, succ, all),
        Or(a, b) => ext(a, m, succ, all) | ext(b, m, succ, all),
        Implies(a, b) => (!ext(a, m, succ, all) | ext(b, m, succ, all)) & all,
        Possibly(a) => pre(ext(a, m, succ, all), succ),
        Necessarily(a) => !pre(!ext(a, m, succ, all) & all, succ) & all,
        _ => unreachable!("checked by propositions"),
    }
}

/// Worlds with a successor in `target`.
fn pre(target: u64, succ: &[u64]) -> u64 {
    succ.iter().enumerate().filter(|(_, &s)| s & target != 0).fold(0, |acc, (w, _)| acc | 1 << w)
}

/// Worlds from which `target` is reachable in zero or more steps: the least
/// set containing `target` and closed under one-step predecessors.
pub fn reachable(target: u64, succ: &[u64]) -> u64 {
    let mut x = target;
    loop {
        let next = x | pre(x, succ);
        if next == x {
            return x;
        }
        x = next;
    }
}

pub fn holds_at(f: &Formula, m: &KripkeModel, w: usize) -> Result<bool, ModalError> {
    Ok(extension(f, m)? >> w & 1 == 1)
}
