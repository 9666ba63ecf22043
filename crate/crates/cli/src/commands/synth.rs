use serde_json::json;

use pointwise::universal::synth::synthesis_base;
use pointwise::universal::{synthesize_process_formula, Process, ProcessFormulaSpec};

use crate::args::{SynthCmd, Which};
use crate::report::{semantic, CliError, Report};

pub fn run(cmd: &SynthCmd) -> Result<Report, CliError> {
    let SynthCmd::Process { m, which } = cmd;
    let process = match which {
        Which::A => Process::A,
        Which::B => Process::B,
        Which::C => Process::C,
    };
    let s = synthesize_process_formula(&ProcessFormulaSpec::new(*m), process).map_err(semantic)?;
    let base = synthesis_base();
    let verified = s.certificate.verify(&base).is_ok();
    let parts: Vec<_> = s.parts.iter().map(|p| json!({ "name": p.name, "class": p.class.to_string() })).collect();
    let results = json!({
        "process": process,
        "m": m,
        "formula": s.formula.to_string(),
        "class": s.class.to_string(),
        "certificate": { "verified": verified, "proof_lines": s.certificate.proof.steps.len() },
        "parts": parts,
        "merge_guard": s.has_part("only_a_after_a"),
    });
    let theories = vec![format!("{} {}", base.name, base.version)];
    let inputs = json!({ "m": m, "which": process });
    Ok(Report::new("synth process", &inputs, results, theories, "proof lines", s.certificate.proof.steps.len() as u64))
}
