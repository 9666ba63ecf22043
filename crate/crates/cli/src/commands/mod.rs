//! One module per command group; each returns a [`Report`].

mod logic;
mod modal;
mod selfref;
mod structure;
mod synth;
mod tower;
mod ua;

use std::path::Path;

use pointwise::definability::hf::HF_LIMIT;
use pointwise::definability::hf_universe;
use pointwise::structure::FiniteStructure;

use crate::args::Command;
use crate::report::{parse_error, semantic, CliError, Report};

pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Logic(c) => logic::run(c),
        Command::Ua(c) => ua::run(c),
        Command::Struct(c) => structure::run(c),
        Command::Modal(c) => modal::run(c),
        Command::Tower(c) => tower::run(c),
        Command::Synth(c) => synth::run(c),
        Command::Selfref(c) => selfref::run(c),
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `hf:N` or the path of a structure file, with its canonical text for the
/// input digest.
pub(crate) fn load_structure(spec: &str) -> Result<(FiniteStructure, String), CliError> {
    let m = match spec.strip_prefix("hf:") {
        Some(n) => {
            let n: usize = n.parse().map_err(parse_error)?;
            if n > HF_LIMIT {
                return Err(semantic(format!("hf:{n} exceeds the limit {HF_LIMIT}")));
            }
            hf_universe(n).map_err(semantic)?
        }
        None => FiniteStructure::from_json(&read(Path::new(spec))?).map_err(parse_error)?,
    };
    let text = m.to_json();
    Ok((m, text))
}

/// A decimal count or `a^b`.
pub(crate) fn parse_count(s: &str) -> Result<usize, CliError> {
    let bad = || parse_error(format!("not a count: {s}"));
    match s.split_once('^') {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            a.checked_pow(b).ok_or_else(bad)
        }
        None => s.trim().replace('_', "").parse().map_err(|_| bad()),
    }
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse().map_err(parse_error)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("10^6").unwrap(), 1_000_000);
        assert_eq!(parse_count("1_000").unwrap(), 1000);
        assert!(parse_count("ten").is_err());
        assert_eq!(parse_list("5, 0,2").unwrap(), [5, 0, 2]);
    }
}
