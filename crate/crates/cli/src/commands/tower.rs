use serde_json::json;

use pointwise::tower::{check_exhaustion, levels_increase, persistence_holds, run_tower, MockSystem};

use super::parse_list;
use crate::args::TowerCmd;
use crate::report::{parse_error, semantic, CliError, Report};

pub fn run(cmd: &TowerCmd) -> Result<Report, CliError> {
    let TowerCmd::Run { stages, arrivals, m } = cmd;
    let pattern = parse_list(arrivals)?;
    if pattern.is_empty() {
        return Err(parse_error("empty arrival pattern"));
    }
    let per_stage: Vec<u64> = pattern.iter().copied().cycle().take(*stages as usize + 1).collect();
    let mut sys = MockSystem::new(per_stage.clone());
    let start = sys.start();
    let trace = run_tower(&mut sys, start, *stages, *m).map_err(semantic)?;
    let scheduled: Vec<_> = trace.elements.iter().filter(|e| e.id < *stages).collect();
    let results = json!({
        "exhaustion": check_exhaustion(&trace),
        "persistence": persistence_holds(&trace),
        "levels_increase": levels_increase(&trace),
        "scheduled_elements": scheduled.len(),
        "scheduled_flagged": scheduled.iter().filter(|e| e.definable_at_stage.is_some()).count(),
        "trace": trace,
    });
    let inputs = json!({ "stages": stages, "arrivals": per_stage, "m": m });
    Ok(Report::new("tower run", &inputs, results, vec![], "stages", *stages))
}
