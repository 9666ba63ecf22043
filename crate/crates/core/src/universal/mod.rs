//! The universal algorithm: a self-referential program whose stages succeed
//! only on proofs, in ever smaller fragments, that they never succeed.

pub mod oracle;
pub mod program;
pub mod run;
pub mod synth;
pub mod template;

pub use oracle::{Injection, LogEntry, ProofOracleScript, ReplayOracle, ScriptedOracle, SoundProofOracle};
pub use program::{build_oracle_universal_program, build_universal_program, UniversalProgram};
pub use run::{
    ignored_injections, replay_run, replay_script, run_universal, self_defeat_check, IgnoreReason, Ignored, StageRecord, UARun,
    UARunState,
};
pub use template::{TemplateConfig, TemplateError};
pub use synth::{synthesize_process_formula, Process, ProcessFormulaSpec, SynthError, Synthesis};
