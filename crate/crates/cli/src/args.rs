//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "pointwise", version, about = "Definability, universal sequences and potentialist modal logic")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Logic(LogicCmd),
    #[command(subcommand)]
    Ua(UaCmd),
    #[command(subcommand, name = "struct")]
    Struct(StructCmd),
    #[command(subcommand)]
    Modal(ModalCmd),
    #[command(subcommand)]
    Tower(TowerCmd),
    #[command(subcommand)]
    Synth(SynthCmd),
    #[command(subcommand)]
    Selfref(SelfrefCmd),
}

#[derive(Debug, Subcommand)]
pub enum LogicCmd {
    /// Σ_n / Π_n class of a formula.
    Classify { formula: String },
    Prenex { formula: String },
    /// Truth in a structure (`hf:N` or a JSON file).
    Eval {
        #[arg(long)]
        structure: String,
        /// `x=1,y=2`
        #[arg(long, default_value = "")]
        assign: String,
        formula: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Sound,
    Script,
}

#[derive(Debug, Args)]
pub struct UaCommon {
    #[arg(long, default_value = "PA")]
    pub theory: String,
    /// Step budget; `10^6` notation is accepted.
    #[arg(long, default_value = "10^6")]
    pub budget: String,
    /// Oracle level; 0 is the plain program.
    #[arg(long, default_value_t = 0)]
    pub m: u64,
    /// Attach the full oracle log (always attached when m > 0 or scripted).
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Subcommand)]
pub enum UaCmd {
    Run {
        #[command(flatten)]
        common: UaCommon,
        #[arg(long, value_enum, default_value = "sound")]
        oracle: OracleKind,
        #[arg(long)]
        script_file: Option<PathBuf>,
    },
    Script {
        #[command(flatten)]
        common: UaCommon,
        #[arg(long)]
        script_file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum StructCmd {
    Definable {
        #[arg(long)]
        structure: String,
        /// Size bound for least definitions.
        #[arg(long, default_value_t = 7)]
        max_size: usize,
    },
    ExtCheck {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Images of source elements, `0,1,..`; defaults to the inclusion.
        #[arg(long)]
        map: Option<String>,
        /// Check Σ_0 .. Σ_m elementarity.
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        size: usize,
    },
    Reconstruct {
        #[arg(long)]
        structure: String,
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    Paris {
        #[arg(long)]
        structure: String,
    },
    Hf {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModalCmd {
    Valid {
        /// A frozen name (K, T, 4, dot2, dot3, 5, S4 theorem names) or formula text.
        #[arg(long)]
        axiom: String,
        /// `tree:N`, `s4:N` (all frames with ≤ N worlds) or a model JSON file.
        #[arg(long)]
        frames: String,
        #[arg(long, default_value_t = 3)]
        max_props: usize,
        /// Write the first countermodel here.
        #[arg(long)]
        countermodel_out: Option<PathBuf>,
    },
    Frames {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "tree")]
        kind: String,
    },
    Switch {
        /// `cycle:K`, `tree:D`, `const:N` or a world-graph JSON file.
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "P")]
        prop: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum TowerCmd {
    Run {
        #[arg(long, default_value_t = 100)]
        stages: u64,
        /// Arrivals per stage, repeated cyclically: `5,0,2`.
        #[arg(long, default_value = "1")]
        arrivals: String,
        /// Definability level at stage 0.
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    A,
    B,
    C,
}

#[derive(Debug, Subcommand)]
pub enum SynthCmd {
    Process {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
    },
}

#[derive(Debug, Subcommand)]
pub enum SelfrefCmd {
    /// Gödel–Carnap fixed point of a formula in one free variable.
    Fixpoint {
        formula: String,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// The Kleene quine and its self-reproduction check.
    Quine,
    /// The liar for a candidate truth predicate.
    Tarski { formula: String },
}
