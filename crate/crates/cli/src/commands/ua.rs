use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};
use std::path::Path;

use pointwise::selfref::Outcome;
use pointwise::universal::oracle::{LogEntry, SoundProofOracle};
use pointwise::universal::run::{ignored_injections, Ignored, SelfDefeat, StageRecord, UARunState};
use pointwise::universal::{
    build_oracle_universal_program, replay_run, replay_script, run_universal, self_defeat_check, ProofOracleScript, ScriptedOracle,
    TemplateConfig, UARun, UniversalProgram,
};

use super::{parse_count, read};
use crate::args::{OracleKind, UaCmd, UaCommon};
use crate::report::{parse_error, semantic, CliError, Report};

#[derive(Serialize)]
struct ProgramSummary {
    level: u64,
    template: TemplateConfig,
    code_digits: usize,
    code_sha256: String,
    self_referential: bool,
}

#[derive(Serialize)]
struct SearchSummary {
    examined: usize,
    size_level: usize,
    work: usize,
}

#[derive(Serialize)]
struct ScriptCheck {
    ignored: Vec<Ignored>,
    replay_sequence: Vec<u64>,
    replay_ignored: Vec<Ignored>,
    agrees_with_replay: bool,
    self_defeat: Vec<SelfDefeat>,
}

#[derive(Serialize)]
struct RunResults {
    program: ProgramSummary,
    state: UARunState,
    invariants_hold: bool,
    stage_log: Vec<StageRecord>,
    halted: bool,
    steps: usize,
    advances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    script: Option<ScriptCheck>,
    oracle_log_len: usize,
    oracle_log_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_log: Option<Vec<LogEntry>>,
    replay_identical: bool,
}

fn summary(u: &UniversalProgram) -> ProgramSummary {
    let code = u.code().to_string();
    ProgramSummary {
        level: u.level,
        template: u.template.clone(),
        code_digits: code.len(),
        code_sha256: hex::encode(Sha256::digest(code.as_bytes())),
        self_referential: u.self_code_check(),
    }
}

fn load_script(path: &Path) -> Result<(ProofOracleScript, String), CliError> {
    let text = read(path)?;
    let script: ProofOracleScript = serde_json::from_str(&text).map_err(parse_error)?;
    script.validate().map_err(parse_error)?;
    Ok((script, text))
}

fn finish(u: &UniversalProgram, run: UARun, budget: usize, attach: bool, search: Option<SearchSummary>, script: Option<ScriptCheck>) -> RunResults {
    let replay = replay_run(u, run.oracle_log.clone(), budget);
    let bytes = |r: &UARun| serde_json::to_vec(r).expect("serialisable run");
    let log_bytes = serde_json::to_vec(&run.oracle_log).expect("serialisable log");
    RunResults {
        program: summary(u),
        invariants_hold: run.state.invariants_hold(),
        halted: matches!(run.outcome, Outcome::Halted { .. }),
        steps: run.outcome.steps(),
        replay_identical: bytes(&replay) == bytes(&run),
        oracle_log_len: run.oracle_log.len(),
        oracle_log_sha256: hex::encode(Sha256::digest(&log_bytes)),
        advances: run.advances,
        state: run.state,
        stage_log: run.stage_log,
        search,
        script,
        oracle_log: attach.then_some(run.oracle_log),
    }
}

fn program(common: &UaCommon) -> Result<(UniversalProgram, usize), CliError> {
    let budget = parse_count(&common.budget)?;
    let config = TemplateConfig { theory: common.theory.clone(), ..TemplateConfig::default() };
    let u = build_oracle_universal_program(&config, common.m).map_err(semantic)?;
    Ok((u, budget))
}

fn theories(u: &UniversalProgram) -> Vec<String> {
    vec![format!("{} {}", u.compiled.theory.name, u.compiled.theory.version)]
}

fn scripted(common: &UaCommon, path: &Path, command: &str) -> Result<Report, CliError> {
    let (script, text) = load_script(path)?;
    let (u, budget) = program(common)?;
    let run = run_universal(&u, &mut ScriptedOracle::new(script.clone(), common.m), budget);
    let replay = replay_script(&script);
    let ignored = ignored_injections(&script, &run);
    let check = ScriptCheck {
        agrees_with_replay: replay.sequence == run.state.sequence && replay.fragment_indices == run.state.fragment_indices && replay.ignored == ignored,
        ignored,
        replay_sequence: replay.sequence,
        replay_ignored: replay.ignored,
        self_defeat: self_defeat_check(&u, &run),
    };
    let inputs = json!({ "theory": common.theory, "budget": budget, "m": common.m, "script": text });
    let steps = run.outcome.steps() as u64;
    let results = finish(&u, run, budget, true, None, Some(check));
    Ok(Report::new(command, &inputs, results, theories(&u), "steps", steps))
}

pub fn run(cmd: &UaCmd) -> Result<Report, CliError> {
    match cmd {
        UaCmd::Script { common, script_file } => scripted(common, script_file, "ua script"),
        UaCmd::Run { common, oracle: OracleKind::Script, script_file } => {
            let path = script_file.as_deref().ok_or_else(|| parse_error("--oracle script needs --script-file"))?;
            scripted(common, path, "ua run")
        }
        UaCmd::Run { common, oracle: OracleKind::Sound, .. } => {
            let (u, budget) = program(common)?;
            let mut o = SoundProofOracle::new(&u.compiled, &u.code(), common.m, budget);
            let run = run_universal(&u, &mut o, budget);
            let search = SearchSummary { examined: o.examined, size_level: o.size_level(), work: o.work() };
            let inputs = json!({ "theory": common.theory, "budget": budget, "m": common.m });
            let steps = run.outcome.steps() as u64;
            let results = finish(&u, run, budget, common.log || common.m > 0, Some(search), None);
            Ok(Report::new("ua run", &inputs, results, theories(&u), "steps", steps))
        }
    }
}
