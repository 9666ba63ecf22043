use serde_json::json;

use pointwise::logic::parse::parse_any;
use pointwise::logic::signature::{Signature, Symbol};
use pointwise::logic::syntax::Formula;
use pointwise::proof::Theory;
use pointwise::selfref::kleene::{is_self_referential, quine_transform};
use pointwise::selfref::{godel_carnap_fixed_point_in, kleene_fixed_point, run_plain, tarski_obstruction_demo, Program};

use crate::args::SelfrefCmd;
use crate::report::{parse_error, semantic, CliError, Report};

/// The substitution base extended with the formula's non-arithmetic relations.
fn base_for(f: &Formula) -> Theory {
    let arith = Signature::arith();
    let extra: Vec<Symbol> = f.relations().into_iter().filter(|(n, _)| !arith.has_relation(n)).map(|(n, a)| Symbol::new(n, a)).collect();
    Theory::diagonal_base(&extra)
}

fn theory_id(t: &Theory) -> Vec<String> {
    vec![format!("{} {}", t.name, t.version)]
}

pub fn run(cmd: &SelfrefCmd) -> Result<Report, CliError> {
    match cmd {
        SelfrefCmd::Fixpoint { formula, var } => {
            let phi = parse_any(formula).map_err(parse_error)?;
            let base = base_for(&phi);
            let c = godel_carnap_fixed_point_in(&phi, var, &base).map_err(semantic)?;
            let verified = c.verify(&base).is_ok();
            let results = json!({
                "phi": phi.to_string(),
                "psi": c.psi.to_string(),
                "code_digits": c.code.to_string().len(),
                "proof_steps": c.proof.steps.len(),
                "verified": verified,
            });
            let inputs = json!({ "formula": formula, "var": var });
            Ok(Report::new("selfref fixpoint", &inputs, results, theory_id(&base), "proof steps", c.proof.steps.len() as u64))
        }
        SelfrefCmd::Quine => {
            let t = quine_transform();
            let e = kleene_fixed_point(&t);
            let out = run_plain(&e, &[], 10_000);
            let code = e.code().0;
            let printed = out.output().cloned();
            let results = json!({
                "code_digits": code.to_string().len(),
                "self_referential": is_self_referential(&e, &t),
                "prints_own_code": printed.as_ref() == Some(&code),
                "decodes_to_itself": printed.as_ref().and_then(|p| Program::from_code(p).ok()).as_ref() == Some(&e),
            });
            Ok(Report::new("selfref quine", &json!({}), results, vec![], "steps", out.steps() as u64))
        }
        SelfrefCmd::Tarski { formula } => {
            let tau = parse_any(formula).map_err(parse_error)?;
            let base = base_for(&tau);
            let r = tarski_obstruction_demo(&tau, &base).map_err(semantic)?;
            let steps = r.refutation.as_ref().map_or(0, |p| p.steps.len() as u64);
            let results = json!({
                "candidate": tau.to_string(),
                "verdict": r.verdict,
                "liar": r.liar.as_ref().map(|l| l.psi.to_string()),
                "refutation_steps": steps,
                "emptyset": r.emptyset,
            });
            Ok(Report::new("selfref tarski", &json!({ "formula": formula }), results, theory_id(&base), "proof steps", steps))
        }
    }
}
