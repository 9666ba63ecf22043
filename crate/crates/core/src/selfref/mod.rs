//! Self-reference: register machines, the recursion theorem, diagonal fixed
//! points and the Tarski obstruction.

pub mod asm;
pub mod diagonal;
pub mod kleene;
pub mod machine;
pub mod tarski;

pub use diagonal::{godel_carnap_fixed_point, godel_carnap_fixed_point_in, DiagonalError, FixedPointCertificate};
pub use kleene::{kleene_fixed_point, verify_fixed_point, KleeneError};
pub use machine::{run, run_plain, smn, Instr, NoOracle, Oracle, OracleError, Outcome, Program, Reply};
pub use tarski::{tarski_obstruction_demo, TarskiReport};
