//! Acceptance suite. Prints one line per criterion and exits nonzero when
//! any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use pointwise::definability::{automorphisms, canonical_definition, definable_by_types, definable_elements, hf_universe};
use pointwise::logic::eval::{satisfiers, Assignment};
use pointwise::logic::signature::{Signature, Symbol};
use pointwise::proof::{check_proof, Theory};
use pointwise::selfref::kleene::quine_transform;
use pointwise::selfref::{godel_carnap_fixed_point_in, kleene_fixed_point, run_plain};
use pointwise::structure::FiniteStructure;
use pointwise::universal::{Injection, ProofOracleScript};
use pointwise_cli::{run_cli, Cli};

type Outcome = Result<String, String>;

/// Runs command lines through the library front end and keeps every report.
struct Session {
    dir: PathBuf,
    reports: Vec<(Vec<String>, String)>,
}

impl Session {
    fn run(&mut self, args: &[&str]) -> Result<Value, String> {
        let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let cli = Cli::try_parse_from(std::iter::once("pointwise".to_string()).chain(argv.clone())).map_err(|e| e.to_string())?;
        let text = run_cli(&cli).map_err(|e| format!("{}: {e}", args.join(" ")))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        self.reports.push((argv, text));
        Ok(value["results"].clone())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.join(name);
        std::fs::write(&p, text).expect("temp file");
        p
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: u64) -> Result<Duration, String> {
    let d = t.elapsed();
    ensure(d < Duration::from_secs(limit), format!("took {d:.1?}, limit {limit} s"))?;
    Ok(d)
}

fn u64s(v: &Value) -> Vec<u64> {
    v.as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default()
}

fn strictly_decreasing(v: &[u64]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

fn c1(s: &mut Session) -> Outcome {
    let t = Instant::now();
    let r = s.run(&["ua", "run", "--theory", "PA", "--budget", "10^6"])?;
    let d = within(t, 60)?;
    ensure(u64s(&r["state"]["sequence"]).is_empty(), "sequence not empty")?;
    ensure(r["replay_identical"] == true, "replay differs")?;
    Ok(format!("empty after {} proofs examined in {d:.1?}", r["search"]["examined"]))
}

/// An admissible script with inadmissible noise after each injection, and
/// the noise positions with the reason each must be ignored.
struct Scripted {
    target: Vec<u64>,
    first_k: u64,
    noise: Vec<(usize, &'static str)>,
    results: Value,
}

fn noisy_script(rng: &mut ChaCha8Rng) -> (Vec<u64>, u64, ProofOracleScript, Vec<(usize, &'static str)>) {
    let len = rng.gen_range(0..=6);
    let target: Vec<u64> = (0..len).map(|_| rng.gen_range(0..50)).collect();
    let first_k = len as u64 + rng.gen_range(0..4);
    let gap = rng.gen_range(3..20);
    let clean = ProofOracleScript::admissible(&target, first_k.max(1), gap);
    let mut injections = vec![Injection { at_step: 1, stage: 1, fragment_k: 3, value: 7 }];
    let mut noise = vec![(0, "wrong_stage")];
    for (i, inj) in clean.injections.into_iter().enumerate() {
        let (stage, k) = (i as u64 + 1, inj.fragment_k);
        let at_step = inj.at_step + 1;
        injections.push(inj);
        let (fake, reason) = match rng.gen_range(0..3) {
            0 => (Injection { at_step, stage: stage - 1, fragment_k: k.saturating_sub(1), value: 1 }, "wrong_stage"),
            1 => (Injection { at_step, stage, fragment_k: 0, value: 2 }, "empty_fragment"),
            _ => (Injection { at_step, stage, fragment_k: k, value: 3 }, "not_decreasing"),
        };
        noise.push((injections.len(), reason));
        injections.push(fake);
    }
    (target, first_k.max(1), ProofOracleScript { injections }, noise)
}

fn scripted_suite(s: &mut Session) -> Result<(Vec<Scripted>, Duration), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let t = Instant::now();
    let mut out = Vec::new();
    for n in 0..50 {
        let (target, first_k, script, noise) = noisy_script(&mut rng);
        let path = s.file(&format!("script{n}.json"), &serde_json::to_string(&script).expect("script"));
        let m = (n % 3).to_string();
        let results = s.run(&["ua", "script", "--script-file", path.to_str().expect("utf-8 path"), "--budget", "50000", "--m", &m])?;
        out.push(Scripted { target, first_k, noise, results });
    }
    Ok((out, t.elapsed()))
}

fn c2(runs: &[Scripted], elapsed: Duration) -> Outcome {
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:.1?}, limit 30 s"))?;
    let mut ignored_total = 0;
    for (n, r) in runs.iter().enumerate() {
        let res = &r.results;
        let seq = u64s(&res["state"]["sequence"]);
        let ks = u64s(&res["state"]["fragment_indices"]);
        ensure(seq == r.target, format!("script {n}: sequence {seq:?}, target {:?}", r.target))?;
        ensure(strictly_decreasing(&ks), format!("script {n}: fragments {ks:?}"))?;
        ensure(seq.len() as u64 <= r.first_k, format!("script {n}: more successes than k"))?;
        let ignored: Vec<(usize, String)> = res["script"]["ignored"]
            .as_array()
            .ok_or("no ignored log")?
            .iter()
            .map(|i| (i["index"].as_u64().unwrap_or(u64::MAX) as usize, i["reason"].as_str().unwrap_or("").to_string()))
            .collect();
        let expected: Vec<(usize, String)> = r.noise.iter().map(|(i, why)| (*i, why.to_string())).collect();
        ensure(ignored == expected, format!("script {n}: ignored {ignored:?}, expected {expected:?}"))?;
        ensure(res["script"]["replay_ignored"] == res["script"]["ignored"], format!("script {n}: replay oracle disagrees"))?;
        ensure(res["script"]["agrees_with_replay"] == true, format!("script {n}: replay disagrees"))?;
        ensure(res["invariants_hold"] == true, format!("script {n}: invariants"))?;
        ignored_total += ignored.len();
    }
    Ok(format!("{} scripts exact, {ignored_total} inadmissible injections ignored, {elapsed:.1?}", runs.len()))
}

fn c3(runs: &[Scripted]) -> Outcome {
    let (mut successes, mut violations) = (0, 0);
    for r in runs {
        let defeats = r.results["script"]["self_defeat"].as_array().cloned().unwrap_or_default();
        let seq = u64s(&r.results["state"]["sequence"]);
        successes += seq.len();
        violations += seq.len().abs_diff(defeats.len());
        for (n, d) in defeats.iter().enumerate() {
            let matches = d["stage"] == n as u64 && d["value"] == seq.get(n).copied().unwrap_or(u64::MAX);
            if d["falsified"] != true || !matches || d["statement"].as_str().is_none_or(str::is_empty) {
                violations += 1;
            }
        }
    }
    ensure(violations == 0, format!("{violations} violations"))?;
    Ok(format!("{successes} successes, each falsifies its proved statement"))
}

fn c4(s: &mut Session) -> Outcome {
    for m in 0..=3 {
        let r = s.run(&["ua", "run", "--m", &m.to_string(), "--budget", "10^5"])?;
        ensure(u64s(&r["state"]["sequence"]).is_empty(), format!("m={m}: not empty"))?;
        ensure(r["replay_identical"] == true, format!("m={m}: log replay differs"))?;
        ensure(r["oracle_log_len"].as_u64() > Some(0), format!("m={m}: no oracle queries"))?;
    }
    Ok("m = 0..3 empty, oracle logs replay identically".into())
}

const FIXED_POINT_PREDICATES: [&str; 10] = [
    "~Tr(x)",
    "Tr(x)",
    "x = 0",
    "~(x = 0)",
    "exists y. x = S(y)",
    "exists y. x = (y + y)",
    "forall y. ~(x = S(y))",
    "(Tr(x) -> x = 0)",
    "exists y. (Prov(y) & y = S(x))",
    "(Prov(x) | ~Tr(x))",
];

fn c5(s: &mut Session) -> Outcome {
    let mut slowest = Duration::ZERO;
    for text in FIXED_POINT_PREDICATES {
        let t = Instant::now();
        let phi = pointwise::logic::parse::parse_any(text).map_err(|e| format!("{text}: {e}"))?;
        let extra: Vec<Symbol> = ["Tr", "Prov"].iter().filter(|r| text.contains(*r)).map(|r| Symbol::new(*r, 1)).collect();
        let base = Theory::diagonal_base(&extra);
        let c = godel_carnap_fixed_point_in(&phi, "x", &base).map_err(|e| format!("{text}: {e}"))?;
        check_proof(&c.proof, &base, 0).map_err(|e| format!("{text}: {e:?}"))?;
        c.verify(&base).map_err(|e| format!("{text}: {e:?}"))?;
        slowest = slowest.max(within(t, 10).map_err(|e| format!("{text}: {e}"))?);
        let r = s.run(&["selfref", "fixpoint", text])?;
        ensure(r["verified"] == true, format!("{text}: report not verified"))?;
    }
    let liar = s.run(&["selfref", "tarski", "Tr(x)"])?;
    ensure(liar["verdict"] == "refuted", "Tarski obstruction not refuted")?;
    let e = kleene_fixed_point(&quine_transform());
    let printed = run_plain(&e, &[], 10_000).output().cloned().ok_or("quine produced no output")?;
    ensure(printed.to_bytes_be() == e.code().0.to_bytes_be(), "quine output differs from its code")?;
    let q = s.run(&["selfref", "quine"])?;
    ensure(q["prints_own_code"] == true && q["decodes_to_itself"] == true, "quine report")?;
    Ok(format!("10 certificates check (slowest {slowest:.1?}), liar refuted, quine exact"))
}

fn c6(s: &mut Session) -> Outcome {
    let t = Instant::now();
    for m in 1..=4u32 {
        for which in ["A", "B", "C"] {
            let r = s.run(&["synth", "process", "--m", &m.to_string(), "--which", which])?;
            let want = format!("Sigma {}", m + 1);
            ensure(r["class"] == want.as_str(), format!("{which} m={m}: class {}", r["class"]))?;
            ensure(r["certificate"]["verified"] == true, format!("{which} m={m}: certificate"))?;
            ensure(r["merge_guard"] == (which == "C"), format!("{which} m={m}: merge guard"))?;
        }
    }
    let d = within(t, 60)?;
    Ok(format!("12 formulas Sigma(m+1), guard only in C, {d:.1?}"))
}

fn graph(rng: &mut ChaCha8Rng) -> FiniteStructure {
    let sig = Signature::empty("G").extended("G", &[], &[Symbol::new("E", 2), Symbol::new("P", 1)], false);
    let n = rng.gen_range(1..=5);
    let mut m = FiniteStructure::new(n, sig);
    for _ in 0..rng.gen_range(0..=2 * n) {
        m.insert("E", &[rng.gen_range(0..n), rng.gen_range(0..n)]).expect("binary");
    }
    for _ in 0..rng.gen_range(0..=2) {
        m.insert("P", &[rng.gen_range(0..n)]).expect("unary");
    }
    m
}

fn c7(s: &mut Session) -> Outcome {
    let map_err = |e: pointwise::definability::DefinabilityError| e.to_string();
    for n in 0..=4 {
        let v = hf_universe(n).map_err(map_err)?;
        ensure(automorphisms(&v).map_err(map_err)?.len() == 1, format!("V_{n} has a nontrivial automorphism"))?;
    }
    let v4 = hf_universe(4).map_err(map_err)?;
    for x in v4.elements() {
        let f = canonical_definition(&v4, x).map_err(map_err)?;
        let sat = satisfiers(&f, "v", &v4, &Assignment::new()).map_err(|e| e.to_string())?;
        ensure(sat == [x], format!("definition of {x} is satisfied by {sat:?}"))?;
    }
    s.run(&["struct", "paris", "--structure", "hf:4"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rigid = 0;
    for k in 0..200 {
        let m = graph(&mut rng);
        let orbits = definable_elements(&m).map_err(map_err)?;
        let types = definable_by_types(&m).map_err(map_err)?;
        ensure(orbits == types, format!("structure {k}: orbit {orbits:?}, formula {types:?}"))?;
        rigid += (orbits.len() == m.size()) as usize;
    }
    Ok(format!("V_0..V_4 rigid, 16 canonical definitions unique, 200 structures agree ({rigid} pointwise)"))
}

fn c8(s: &mut Session) -> Outcome {
    let t = Instant::now();
    let r = s.run(&["struct", "ext-check", "--source", "hf:3", "--target", "hf:4", "--m", "1", "--size", "10"])?;
    let d = within(t, 120)?;
    ensure(r["end"] == true && r["top"] == true && r["covering"].is_u64(), "not end + covering + top")?;
    let delta0 = &r["elementarity"][0];
    ensure(delta0["m"] == 0 && delta0["elementary"] == true, "not elementary for Delta_0 at size 10")?;
    let sigma1 = &r["elementarity"][1];
    ensure(sigma1["elementary"] == false, "Sigma_1-elementary")?;
    let cx = &sigma1["counterexample"];
    ensure(cx["formula"] == "exists y. x in y", format!("counterexample {}", cx["formula"]))?;
    // {{∅}} has Ackermann code 2
    ensure(cx["parameters"] == serde_json::json!({ "x": 2 }), format!("parameters {}", cx["parameters"]))?;
    Ok(format!("end, covering at {}, top; {} Delta_0 classes; Sigma_1 fails at {{{{∅}}}}; {d:.1?}", r["covering"], delta0["formulas_checked"]))
}

fn c9(s: &mut Session) -> Outcome {
    for n in [2, 3] {
        let r = s.run(&["struct", "reconstruct", "--structure", &format!("hf:{n}"), "--bound", "64"])?;
        ensure(r["isomorphic"] == true, format!("V_{n}: not isomorphic"))?;
        let copy = FiniteStructure::from_json(&r["reconstructed"].to_string()).map_err(|e| e.to_string())?;
        let iso: Vec<usize> = u64s(&r["isomorphism"]).into_iter().map(|x| x as usize).collect();
        let v = hf_universe(n).map_err(|e| e.to_string())?;
        ensure(iso.len() == v.size() && copy.size() == v.size(), format!("V_{n}: sizes"))?;
        for a in v.elements() {
            for b in v.elements() {
                ensure(v.member(a, b) == copy.member(iso[a], iso[b]), format!("V_{n}: map breaks {a} ∈ {b}"))?;
            }
        }
    }
    Ok("V_2 and V_3 rebuilt, isomorphisms checked".into())
}

fn c10(s: &mut Session) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut patterns = vec!["1".to_string(), "5".to_string(), "0,0,5".to_string(), "2,0,1,5,3".to_string()];
    patterns.extend((0..4).map(|_| (0..7).map(|_| rng.gen_range(0..=5).to_string()).collect::<Vec<_>>().join(",")));
    for p in &patterns {
        let r = s.run(&["tower", "run", "--stages", "100", "--arrivals", p])?;
        ensure(r["exhaustion"]["exhausted"] == true, format!("{p}: not exhausted"))?;
        ensure(r["persistence"] == true, format!("{p}: persistence fails"))?;
        let levels = u64s(&r["trace"]["levels"]);
        ensure(levels.len() == 100 && levels.windows(2).all(|w| w[0] < w[1]), format!("{p}: levels"))?;
        for e in r["trace"]["elements"].as_array().ok_or("no elements")? {
            let (i, j) = (e["arrival_stage"].as_u64().unwrap_or(0), e["index"].as_u64().unwrap_or(0));
            let code = (i + j) * (i + j + 1) / 2 + j;
            ensure(code >= 100 || e["definable_at_stage"].is_u64(), format!("{p}: element ({i}, {j}) never definable"))?;
        }
    }
    Ok(format!("{} arrival patterns, 100 stages each", patterns.len()))
}

fn c11(s: &mut Session) -> Outcome {
    use pointwise::modal::fixpoint::holds_at;
    use pointwise::modal::{s4_theorems, stronger_axioms, KripkeModel};
    let t = Instant::now();
    let mut valuations = 0;
    for (name, _) in s4_theorems() {
        let r = s.run(&["modal", "valid", "--axiom", name, "--frames", "s4:5", "--max-props", "3"])?;
        ensure(r["valid"] == true, format!("{name} fails on a preorder"))?;
        valuations += r["valuations_checked"].as_u64().unwrap_or(0);
    }
    for (name, f) in stronger_axioms() {
        let out = s.dir.join(format!("counter{name}.json"));
        let r = s.run(&["modal", "valid", "--axiom", name, "--frames", "tree:4", "--countermodel-out", out.to_str().expect("utf-8 path")])?;
        ensure(r["valid"] == false, format!("{name} valid on trees"))?;
        let text = std::fs::read_to_string(&out).map_err(|e| format!("{name}: {e}"))?;
        let model = KripkeModel::from_json(&text).map_err(|e| e.to_string())?;
        ensure(model.frame.is_reflexive() && model.frame.is_transitive(), format!("{name}: countermodel not a preorder"))?;
        let w = r["countermodel"]["world"].as_u64().ok_or("no world")? as usize;
        ensure(holds_at(&f, &model, w) == Ok(false), format!("{name}: countermodel satisfies the axiom"))?;
    }
    let d = within(t, 120)?;
    Ok(format!("12 theorems valid ({valuations} valuations), .2 .3 5 refuted, {d:.1?}"))
}

fn c12(s: &mut Session) -> Outcome {
    let first = std::mem::take(&mut s.reports);
    for (args, text) in &first {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        s.run(&argv)?;
        let again = &s.reports.last().expect("just pushed").1;
        ensure(again == text, format!("report differs: {}", args.join(" ")))?;
    }
    Ok(format!("{} reports byte-identical on re-run", first.len()))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut s = Session { dir: dir.path().to_path_buf(), reports: vec![] };
    let mut results: Vec<(u32, Outcome)> = Vec::new();
    let mut report = |n: u32, o: Outcome| {
        match &o {
            Ok(msg) => println!("criterion {n:>2}: PASS  {msg}"),
            Err(msg) => println!("criterion {n:>2}: FAIL  {msg}"),
        }
        results.push((n, o));
    };
    report(1, c1(&mut s));
    match scripted_suite(&mut s) {
        Ok((runs, elapsed)) => {
            report(2, c2(&runs, elapsed));
            report(3, c3(&runs));
        }
        Err(e) => {
            report(2, Err(e.clone()));
            report(3, Err(e));
        }
    }
    report(4, c4(&mut s));
    report(5, c5(&mut s));
    report(6, c6(&mut s));
    report(7, c7(&mut s));
    report(8, c8(&mut s));
    report(9, c9(&mut s));
    report(10, c10(&mut s));
    report(11, c11(&mut s));
    report(12, c12(&mut s));
    let failed = results.iter().filter(|(_, o)| o.is_err()).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
