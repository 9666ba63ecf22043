//! Frozen formula lists.

use crate::logic::parse::parse_modal;
use crate::logic::syntax::Formula;

const S4: [(&str, &str); 12] = [
    ("K", "box (P -> Q) -> (box P -> box Q)"),
    ("T", "box P -> P"),
    ("4", "box P -> box box P"),
    ("T-dual", "P -> dia P"),
    ("4-dual", "dia dia P -> dia P"),
    ("D", "box P -> dia P"),
    ("box-and", "box (P & Q) <-> (box P & box Q)"),
    ("dia-or", "dia (P | Q) <-> (dia P | dia Q)"),
    ("box-dia-idem", "box dia box dia P <-> box dia P"),
    ("dia-box-idem", "dia box dia box P <-> dia box P"),
    ("box-or", "(box P | box Q) -> box (P | Q)"),
    ("box-weaken", "box P -> box (Q -> P)"),
];

const STRONGER: [(&str, &str); 3] = [
    (".2", "dia box P -> box dia P"),
    (".3", "box (box P -> Q) | box (box Q -> P)"),
    ("5", "dia P -> box dia P"),
];

fn parsed(list: &[(&'static str, &str)]) -> Vec<(&'static str, Formula)> {
    list.iter().map(|&(n, s)| (n, parse_modal(s).expect("frozen formula"))).collect()
}

pub fn s4_theorems() -> Vec<(&'static str, Formula)> {
    parsed(&S4)
}

/// Axioms of logics strictly above S4: S4.2, S4.3, S5.
pub fn stronger_axioms() -> Vec<(&'static str, Formula)> {
    parsed(&STRONGER)
}
