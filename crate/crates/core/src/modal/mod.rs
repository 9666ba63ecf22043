//! Propositional modal logic over finite Kripke frames: S4 validity,
//! tree pre-orders and switches.

pub mod check;
pub mod fixpoint;
pub mod frame;
pub mod frames_gen;
pub mod switch;
pub mod theorems;

use thiserror::Error;

pub use check::{check_frame_validity, check_model, FrameVerdict, MAX_PROPS, MAX_VALIDITY_WORLDS};
pub use frame::{KripkeFrame, KripkeModel};
pub use frames_gen::{generate_preorders, generate_tree_preorders};
pub use switch::{is_switch, WorldGraph};
pub use theorems::{s4_theorems, stronger_axioms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModalError {
    #[error("proposition `{0}` is not declared")]
    Undeclared(String),
    #[error("not a propositional modal formula: {0}")]
    NotPropositional(String),
    #[error("world {world} out of range for {worlds} worlds")]
    BadWorld { world: usize, worlds: usize },
    #[error("frame is not {0}")]
    NotS4(&'static str),
    #[error("{what} exceeds the limit {limit}")]
    TooLarge { what: String, limit: usize },
    #[error("malformed frame file: {0}")]
    Format(String),
}
