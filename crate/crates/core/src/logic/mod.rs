//! First-order syntax and its basic tools.

pub mod canonical;
pub mod classify;
pub mod coding;
pub mod enumerate;
pub mod eval;
pub mod parse;
pub mod prenex;
pub mod signature;
pub mod syntax;

pub use classify::{classify, ClassKind, ComplexityClass};
pub use coding::{godel_decode, godel_encode, pair, unpair, GodelCode, CODING_VERSION};
pub use eval::{evaluate, Assignment, EvalError};
pub use parse::{parse, parse_modal, ParseError};
pub use prenex::prenex;
pub use signature::Signature;
pub use syntax::{BoundKind, Formula, Quantifier, Term};
