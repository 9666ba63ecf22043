//! Kripke satisfaction and exhaustive frame validity.

use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

use super::frame::{KripkeFrame, KripkeModel};
use super::ModalError;
use crate::logic::syntax::Formula;

pub const MAX_VALIDITY_WORLDS: usize = 6;
pub const MAX_PROPS: usize = 3;

/// The propositions of a propositional modal formula.
pub fn propositions(f: &Formula) -> Result<BTreeSet<String>, ModalError> {
    let mut out = BTreeSet::new();
    collect(f, &mut out)?;
    Ok(out)
}

fn collect(f: &Formula, out: &mut BTreeSet<String>) -> Result<(), ModalError> {
    use Formula::*;
    match f {
        Atom(p, args) if args.is_empty() => {
            out.insert(p.clone());
        }
        Not(a) | Necessarily(a) | Possibly(a) => collect(a, out)?,
        And(a, b) | Or(a, b) | Implies(a, b) => {
            collect(a, out)?;
            collect(b, out)?;
        }
        _ => return Err(ModalError::NotPropositional(f.to_string())),
    }
    Ok(())
}

fn sat(f: &Formula, m: &KripkeModel, w: usize) -> Result<bool, ModalError> {
    use Formula::*;
    Ok(match f {
        Atom(p, args) if args.is_empty() => m.holds(p, w)?,
        Not(a) => !sat(a, m, w)?,
        And(a, b) => sat(a, m, w)? && sat(b, m, w)?,
        Or(a, b) => sat(a, m, w)? || sat(b, m, w)?,
        Implies(a, b) => !sat(a, m, w)? || sat(b, m, w)?,
        Necessarily(a) => {
            for v in m.frame.successors(w) {
                if !sat(a, m, v)? {
                    return Ok(false);
                }
            }
            true
        }
        Possibly(a) => {
            for v in m.frame.successors(w) {
                if sat(a, m, v)? {
                    return Ok(true);
                }
            }
            false
        }
        _ => return Err(ModalError::NotPropositional(f.to_string())),
    })
}

/// `M, w ⊨ f`.
pub fn check_model(f: &Formula, m: &KripkeModel, w: usize) -> Result<bool, ModalError> {
    if w >= m.frame.worlds() {
        return Err(ModalError::BadWorld { world: w, worlds: m.frame.worlds() });
    }
    for p in propositions(f)? {
        if !m.valuation.contains_key(&p) {
            return Err(ModalError::Undeclared(p));
        }
    }
    sat(f, m, w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Countermodel {
    pub model: KripkeModel,
    pub world: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameVerdict {
    pub valid: bool,
    pub valuations_checked: u64,
    pub countermodel: Option<Countermodel>,
}

/// True at every world under every valuation of the formula's propositions.
/// The first failure in valuation order is returned as a countermodel.
pub fn check_frame_validity(f: &Formula, frame: &KripkeFrame, max_props: usize) -> Result<FrameVerdict, ModalError> {
    let n = frame.worlds();
    if n > MAX_VALIDITY_WORLDS {
        return Err(ModalError::TooLarge { what: format!("{n} worlds"), limit: MAX_VALIDITY_WORLDS });
    }
    if max_props > MAX_PROPS {
        return Err(ModalError::TooLarge { what: format!("{max_props} propositions"), limit: MAX_PROPS });
    }
    let props: Vec<String> = propositions(f)?.into_iter().collect();
    if props.len() > max_props {
        return Err(ModalError::TooLarge { what: format!("{} propositions", props.len()), limit: max_props });
    }
    let total = 1u64 << (n * props.len());
    for code in 0..total {
        let valuation: BTreeMap<String, BTreeSet<usize>> = props
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), (0..n).filter(|&w| code >> (i * n + w) & 1 == 1).collect()))
            .collect();
        let model = KripkeModel::new(frame.clone(), valuation)?;
        for w in 0..n {
            if !sat(f, &model, w)? {
                return Ok(FrameVerdict { valid: false, valuations_checked: code + 1, countermodel: Some(Countermodel { model, world: w }) });
            }
        }
    }
    Ok(FrameVerdict { valid: true, valuations_checked: total, countermodel: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse_modal;

    fn fork() -> KripkeFrame {
        KripkeFrame::closure(3, &[(0, 1), (0, 2)]).unwrap()
    }

    fn model(frame: KripkeFrame, p: &[usize]) -> KripkeModel {
        KripkeModel::new(frame, BTreeMap::from([("P".to_string(), p.iter().copied().collect())])).unwrap()
    }

    #[test]
    fn examples() {
        let point = model(KripkeFrame::closure(1, &[]).unwrap(), &[0]);
        assert!(check_model(&parse_modal("box P").unwrap(), &point, 0).unwrap());
        let chain = model(KripkeFrame::closure(2, &[(0, 1)]).unwrap(), &[1]);
        assert!(check_model(&parse_modal("dia P").unwrap(), &chain, 0).unwrap());
        let f = model(fork(), &[1]);
        assert!(!check_model(&parse_modal("dia box P -> box dia P").unwrap(), &f, 0).unwrap());
    }

    #[test]
    fn undeclared_and_non_modal() {
        let m = model(fork(), &[]);
        assert_eq!(check_model(&parse_modal("Q").unwrap(), &m, 0), Err(ModalError::Undeclared("Q".into())));
        let fo = crate::logic::parse::parse_any("exists x. x = x").unwrap();
        assert!(matches!(check_model(&fo, &m, 0), Err(ModalError::NotPropositional(_))));
    }

    #[test]
    fn validity_examples() {
        let t = parse_modal("box P -> P").unwrap();
        let four = parse_modal("box P -> box box P").unwrap();
        let dot2 = parse_modal("dia box P -> box dia P").unwrap();
        assert!(check_frame_validity(&t, &fork(), 3).unwrap().valid);
        assert!(check_frame_validity(&four, &fork(), 3).unwrap().valid);
        let v = check_frame_validity(&dot2, &fork(), 3).unwrap();
        let c = v.countermodel.unwrap();
        assert!(!check_model(&dot2, &c.model, c.world).unwrap());
        let big = KripkeFrame::closure(7, &[]).unwrap();
        assert!(matches!(check_frame_validity(&t, &big, 3), Err(ModalError::TooLarge { .. })));
    }
}
