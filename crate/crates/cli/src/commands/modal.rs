use serde::Serialize;
use serde_json::json;
use std::path::Path;

use pointwise::logic::parse_modal;
use pointwise::logic::syntax::Formula;
use pointwise::modal::frame::ModelFile;
use pointwise::modal::*;

use super::read;
use crate::args::ModalCmd;
use crate::report::{parse_error, semantic, CliError, Report};

/// A frozen name or formula text.
fn axiom(name: &str) -> Result<(String, Formula), CliError> {
    let alias = match name {
        "dot2" => ".2",
        "dot3" => ".3",
        "S5" => "5",
        other => other,
    };
    let known = s4_theorems().into_iter().chain(stronger_axioms()).find(|(n, _)| *n == alias);
    match known {
        Some((n, f)) => Ok((n.to_string(), f)),
        None => Ok((name.to_string(), parse_modal(name).map_err(parse_error)?)),
    }
}

fn sized(spec: &str, prefix: &str) -> Result<Option<usize>, CliError> {
    spec.strip_prefix(prefix).map(|n| n.parse().map_err(parse_error)).transpose()
}

/// Frames named by `tree:N`, `s4:N` or a file, plus its text for the digest.
fn frames(spec: &str) -> Result<(Vec<KripkeFrame>, String), CliError> {
    let limit = |n: usize| if n > 5 { Err(semantic(format!("{n} worlds exceeds the limit 5"))) } else { Ok(n) };
    if let Some(n) = sized(spec, "tree:")? {
        return Ok(((1..=limit(n)?).flat_map(generate_tree_preorders).collect(), spec.to_string()));
    }
    if let Some(n) = sized(spec, "s4:")? {
        return Ok(((1..=limit(n)?).flat_map(generate_preorders).collect(), spec.to_string()));
    }
    let text = read(Path::new(spec))?;
    let m = KripkeModel::from_json(&text).map_err(parse_error)?;
    Ok((vec![m.frame], text))
}

#[derive(Serialize)]
struct ValidResults {
    axiom: String,
    formula: String,
    frames_checked: usize,
    valuations_checked: u64,
    valid: bool,
    failing_frames: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    countermodel: Option<CountermodelOut>,
}

#[derive(Serialize)]
struct CountermodelOut {
    frame_index: usize,
    world: usize,
    model: ModelFile,
}

fn graph(spec: &str, prop: &str) -> Result<(WorldGraph, String), CliError> {
    if let Some(k) = sized(spec, "cycle:")? {
        return Ok((WorldGraph::alternating_cycle(prop, k), spec.to_string()));
    }
    if let Some(d) = sized(spec, "tree:")? {
        return Ok((WorldGraph::alternating_tree(prop, d.min(10)), spec.to_string()));
    }
    if let Some(n) = sized(spec, "const:")? {
        return Ok((WorldGraph::constant(prop, n, true), spec.to_string()));
    }
    let text = read(Path::new(spec))?;
    Ok((serde_json::from_str(&text).map_err(parse_error)?, text))
}

pub fn run(cmd: &ModalCmd) -> Result<Report, CliError> {
    match cmd {
        ModalCmd::Valid { axiom: name, frames: spec, max_props, countermodel_out } => {
            let (label, f) = axiom(name)?;
            let (list, text) = frames(spec)?;
            let mut valuations = 0;
            let mut first = None;
            let mut failing = 0;
            for (i, frame) in list.iter().enumerate() {
                let v = check_frame_validity(&f, frame, *max_props).map_err(semantic)?;
                valuations += v.valuations_checked;
                if let Some(c) = v.countermodel {
                    failing += 1;
                    first.get_or_insert(CountermodelOut { frame_index: i, world: c.world, model: c.model.to_file() });
                }
            }
            if let (Some(path), Some(c)) = (countermodel_out, &first) {
                let body = serde_json::to_string_pretty(&c.model).expect("plain data");
                std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let results = ValidResults {
                axiom: label,
                formula: f.to_string(),
                frames_checked: list.len(),
                valuations_checked: valuations,
                valid: first.is_none(),
                failing_frames: failing,
                countermodel: first,
            };
            let inputs = json!({ "axiom": name, "frames": text, "max_props": max_props });
            Ok(Report::new("modal valid", &inputs, results, vec![], "valuations", valuations))
        }
        ModalCmd::Frames { n, kind } => {
            if *n > 5 {
                return Err(semantic(format!("{n} worlds exceeds the limit 5")));
            }
            let list = match kind.as_str() {
                "tree" => generate_tree_preorders(*n),
                "s4" => generate_preorders(*n),
                other => return Err(parse_error(format!("unknown frame kind {other}"))),
            };
            let edges: Vec<Vec<(usize, usize)>> = list.iter().map(|f| f.edges()).collect();
            let results = json!({ "worlds": n, "kind": kind, "count": list.len(), "frames": edges });
            Ok(Report::new("modal frames", &json!({ "n": n, "kind": kind }), results, vec![], "frames", list.len() as u64))
        }
        ModalCmd::Switch { graph: spec, prop } => {
            let (g, text) = graph(spec, prop)?;
            let switch = is_switch(prop, &g).map_err(semantic)?;
            let results = json!({ "prop": prop, "worlds": g.worlds, "switch": switch });
            Ok(Report::new("modal switch", &json!({ "graph": text, "prop": prop }), results, vec![], "worlds", g.worlds as u64))
        }
    }
}
