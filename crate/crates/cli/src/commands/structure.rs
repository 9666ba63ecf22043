use serde::Serialize;
use serde_json::json;

use pointwise::definability::elementary::ElementarityVerdict;
use pointwise::definability::hf::ranks;
use pointwise::definability::*;
use pointwise::logic::classify;
use pointwise::proof::formula_text;
use pointwise::logic::syntax::Formula;

use super::{load_structure, parse_list};
use crate::args::StructCmd;
use crate::report::{semantic, CliError, Report};

#[derive(Serialize)]
struct Definition {
    element: usize,
    #[serde(with = "formula_text")]
    formula: Formula,
    /// Least in (quantifier rank, code) among formulas within the size bound;
    /// otherwise the canonical ∈-definition.
    least: bool,
    class: String,
}

#[derive(Serialize)]
struct DefinableResults {
    size: usize,
    automorphisms: usize,
    definable: Vec<usize>,
    by_types: Vec<usize>,
    methods_agree: bool,
    pointwise: bool,
    definitions: Vec<Definition>,
}

#[derive(Serialize)]
struct ExtResults {
    map: Vec<usize>,
    end: bool,
    covering: Option<usize>,
    top: bool,
    source_ranks: Vec<usize>,
    target_ranks: Vec<usize>,
    elementarity: Vec<ElementarityVerdict>,
}

pub fn run(cmd: &StructCmd) -> Result<Report, CliError> {
    match cmd {
        StructCmd::Definable { structure, max_size } => {
            let (m, text) = load_structure(structure)?;
            let group = automorphisms(&m).map_err(semantic)?;
            let definable = definable_elements(&m).map_err(semantic)?;
            let by_types = definable_by_types(&m).map_err(semantic)?;
            let mut definitions = Vec::new();
            for &x in &definable {
                let (formula, least) = match find_definition(&m, x, *max_size) {
                    Some(f) => (f, true),
                    None if m.is_membership() => (canonical_definition(&m, x).map_err(semantic)?, false),
                    None => continue,
                };
                let class = classify(&formula).map_err(semantic)?.to_string();
                definitions.push(Definition { element: x, formula, least, class });
            }
            let results = DefinableResults {
                size: m.size(),
                automorphisms: group.len(),
                pointwise: definable.len() == m.size(),
                methods_agree: definable == by_types,
                definable: definable.into_iter().collect(),
                by_types: by_types.into_iter().collect(),
                definitions,
            };
            let inputs = json!({ "structure": text, "max_size": max_size });
            Ok(Report::new("struct definable", &inputs, results, vec![], "automorphisms", group.len() as u64))
        }
        StructCmd::ExtCheck { source, target, map, m, size } => {
            let (s, s_text) = load_structure(source)?;
            let (t, t_text) = load_structure(target)?;
            let map: Vec<usize> = match map {
                Some(text) => parse_list(text)?.into_iter().map(|x| x as usize).collect(),
                None => (0..s.size()).collect(),
            };
            let e = Embedding::new(&s, &t, map.clone()).map_err(semantic)?;
            let elementarity = (0..=*m).map(|level| is_sigma_m_elementary(&e, level, *size)).collect::<Result<Vec<_>, _>>().map_err(semantic)?;
            let checked: usize = elementarity.iter().map(|v| v.formulas_checked).sum();
            let results = ExtResults {
                map,
                end: is_end_extension(&e).map_err(semantic)?,
                covering: is_covering(&e).map_err(semantic)?,
                top: is_top_extension(&e).map_err(semantic)?,
                source_ranks: ranks(&s).map_err(semantic)?,
                target_ranks: ranks(&t).map_err(semantic)?,
                elementarity,
            };
            let inputs = json!({ "source": s_text, "target": t_text, "map": results.map, "m": m, "size": size });
            Ok(Report::new("struct ext-check", &inputs, results, vec![], "formula classes", checked as u64))
        }
        StructCmd::Reconstruct { structure, bound } => {
            let (m, text) = load_structure(structure)?;
            let theory = bounded_theory(&m, *bound).map_err(semantic)?;
            let r = reconstruct_from_theory(&theory, m.signature(), *bound).map_err(semantic)?;
            let iso = find_isomorphism(&m, &r);
            let results = json!({
                "theory_sentences": theory.len(),
                "reconstructed": r.to_json_value(),
                "isomorphism": iso,
                "isomorphic": iso.is_some(),
            });
            let inputs = json!({ "structure": text, "bound": bound });
            Ok(Report::new("struct reconstruct", &inputs, results, vec![], "sentences", theory.len() as u64))
        }
        StructCmd::Paris { structure } => {
            let (m, text) = load_structure(structure)?;
            let v = paris_check(&m).map_err(semantic)?;
            Ok(Report::new("struct paris", &json!({ "structure": text }), v, vec![], "elements", m.size() as u64))
        }
        StructCmd::Hf { n } => {
            let (m, text) = load_structure(&format!("hf:{n}"))?;
            let results = json!({ "size": m.size(), "structure": m.to_json_value() });
            Ok(Report::new("struct hf", &json!({ "n": n, "structure": text }), results, vec![], "elements", m.size() as u64))
        }
    }
}
