use serde_json::json;

use pointwise::logic::eval::{evaluate, Assignment};
use pointwise::logic::parse::{parse, parse_any};
use pointwise::logic::{classify, prenex};

use super::load_structure;
use crate::args::LogicCmd;
use crate::report::{parse_error, semantic, CliError, Report};

fn assignment(text: &str) -> Result<Assignment, CliError> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (v, n) = p.split_once('=').ok_or_else(|| parse_error(format!("expected var=value, got {p}")))?;
            Ok((v.trim().to_string(), n.trim().parse().map_err(parse_error)?))
        })
        .collect()
}

pub fn run(cmd: &LogicCmd) -> Result<Report, CliError> {
    match cmd {
        LogicCmd::Classify { formula } => {
            let f = parse_any(formula).map_err(parse_error)?;
            let class = classify(&f).map_err(semantic)?;
            let p = prenex(&f).map_err(semantic)?;
            let results = json!({ "formula": f.to_string(), "class": class.to_string(), "prenex": p.to_string() });
            Ok(Report::new("logic classify", &json!({ "formula": formula }), results, vec![], "nodes", f.size() as u64))
        }
        LogicCmd::Prenex { formula } => {
            let f = parse_any(formula).map_err(parse_error)?;
            let p = prenex(&f).map_err(semantic)?;
            let results = json!({ "formula": f.to_string(), "prenex": p.to_string() });
            Ok(Report::new("logic prenex", &json!({ "formula": formula }), results, vec![], "nodes", p.size() as u64))
        }
        LogicCmd::Eval { structure, assign, formula } => {
            let (m, text) = load_structure(structure)?;
            let f = parse(formula, m.signature()).map_err(parse_error)?;
            let asg = assignment(assign)?;
            let value = evaluate(&f, &m, &asg).map_err(semantic)?;
            let inputs = json!({ "formula": formula, "structure": text, "assign": asg });
            let results = json!({ "formula": f.to_string(), "value": value });
            Ok(Report::new("logic eval", &inputs, results, vec![], "elements", m.size() as u64))
        }
    }
}
