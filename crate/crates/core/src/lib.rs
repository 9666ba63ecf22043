//! Logic workbench: formulas, proofs, self-reference, the universal
//! algorithm, definability on finite structures and potentialist modal logic.

#![allow(clippy::should_implement_trait, clippy::needless_range_loop)]

pub mod definability;
pub mod logic;
pub mod modal;
pub mod proof;
pub mod selfref;
pub mod structure;
pub mod tower;
pub mod universal;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/proofs.md")]
    mod proofs {}
    #[doc = include_str!("../../../book/src/self-reference.md")]
    mod self_reference {}
    #[doc = include_str!("../../../book/src/universal.md")]
    mod universal {}
    #[doc = include_str!("../../../book/src/definability.md")]
    mod definability {}
    #[doc = include_str!("../../../book/src/tower.md")]
    mod tower {}
    #[doc = include_str!("../../../book/src/modal.md")]
    mod modal {}
}
