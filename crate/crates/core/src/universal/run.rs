//! Running the universal program and reading its staged state off the run.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::oracle::{Injection, LogEntry, Logged, ProofOracleScript, ReplayOracle, ACK, ADVANCE, STAGE, VALUE};
use super::program::UniversalProgram;
use crate::logic::coding::unpair;
use crate::selfref::{run, Oracle, Outcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: u64,
    pub value: u64,
    pub fragment_k: u64,
    /// The `ADVANCE` query that found the proof.
    pub at_step: u64,
    /// Stage and value of the statement the oracle claimed proved.
    pub proved: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UARunState {
    pub sequence: Vec<u64>,
    pub fragment_indices: Vec<u64>,
    pub stage: u64,
    pub steps_consumed: usize,
}

impl UARunState {
    pub fn invariants_hold(&self) -> bool {
        self.fragment_indices.windows(2).all(|w| w[0] > w[1])
            && self.sequence.len() == self.fragment_indices.len()
            && self.stage as usize == self.sequence.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UARun {
    pub state: UARunState,
    pub stage_log: Vec<StageRecord>,
    pub outcome: Outcome,
    pub advances: u64,
    pub oracle_log: Vec<LogEntry>,
}

/// Runs the program against the oracle, logging every exchange.
pub fn run_universal(u: &UniversalProgram, oracle: &mut dyn Oracle, budget: usize) -> UARun {
    let mut logged = Logged::new(oracle);
    let outcome = run(&u.program, &[], &mut logged, budget);
    read_run(outcome, logged.log)
}

/// Re-runs against a recorded log.
pub fn replay_run(u: &UniversalProgram, log: Vec<LogEntry>, budget: usize) -> UARun {
    run_universal(u, &mut ReplayOracle::new(log), budget)
}

fn small(n: &BigUint) -> u64 {
    n.to_u64().unwrap_or(u64::MAX)
}

fn read_run(outcome: Outcome, log: Vec<LogEntry>) -> UARun {
    let sequence: Vec<u64> = outcome.emitted().iter().map(small).collect();
    let mut stage_log = Vec::new();
    let mut advances = 0u64;
    let mut proved = (0, 0);
    for e in &log {
        match small(&unpair(&e.query).1) {
            ADVANCE => advances += 1,
            STAGE => proved.0 = small(&e.value),
            VALUE => proved.1 = small(&e.value),
            ACK => {
                let stage = stage_log.len() as u64;
                let value = sequence.get(stage as usize).copied().unwrap_or(u64::MAX);
                stage_log.push(StageRecord { stage, value, fragment_k: small(&e.arg), at_step: advances - 1, proved });
            }
            _ => {}
        }
    }
    // A run cut off between an emission and its report loses that stage.
    let sequence: Vec<u64> = sequence.into_iter().take(stage_log.len()).collect();
    let state = UARunState {
        stage: stage_log.len() as u64,
        fragment_indices: stage_log.iter().map(|s| s.fragment_k).collect(),
        sequence,
        steps_consumed: outcome.steps(),
    };
    UARun { state, stage_log, outcome, advances, oracle_log: log }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IgnoreReason {
    /// Not for the stage the run was at.
    WrongStage,
    /// Fragment 0 proves nothing about programs.
    EmptyFragment,
    /// Fragment index not below the previous success's.
    NotDecreasing,
    /// The run stopped before the injection's step.
    NotReached,
    /// Should have succeeded; a violation.
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ignored {
    pub index: usize,
    pub reason: IgnoreReason,
}

/// Which injections of the script the run did not turn into successes, and
/// why, judged from the run's own progress at each injection.
pub fn ignored_injections(script: &ProofOracleScript, run: &UARun) -> Vec<Ignored> {
    let mut out = Vec::new();
    let mut done = 0;
    for (index, inj) in script.injections.iter().enumerate() {
        if inj.at_step >= run.advances {
            out.push(Ignored { index, reason: IgnoreReason::NotReached });
            continue;
        }
        while done < run.stage_log.len() && run.stage_log[done].at_step < inj.at_step {
            done += 1;
        }
        if run.stage_log.get(done).is_some_and(|s| s.at_step == inj.at_step) {
            continue;
        }
        let last = done.checked_sub(1).map(|i| run.stage_log[i].fragment_k);
        let reason = if inj.stage != done as u64 {
            IgnoreReason::WrongStage
        } else if inj.fragment_k == 0 {
            IgnoreReason::EmptyFragment
        } else if last.is_some_and(|l| inj.fragment_k >= l) {
            IgnoreReason::NotDecreasing
        } else {
            IgnoreReason::Unexplained
        };
        out.push(Ignored { index, reason });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptReplay {
    pub sequence: Vec<u64>,
    pub fragment_indices: Vec<u64>,
    pub ignored: Vec<Ignored>,
}

/// What a script should do, computed from the admissibility rule alone.
pub fn replay_script(script: &ProofOracleScript) -> ScriptReplay {
    let mut r = ScriptReplay { sequence: vec![], fragment_indices: vec![], ignored: vec![] };
    for (index, inj) in script.injections.iter().enumerate() {
        let reason = admissibility(inj, r.sequence.len() as u64, r.fragment_indices.last().copied());
        match reason {
            Some(reason) => r.ignored.push(Ignored { index, reason }),
            None => {
                r.sequence.push(inj.value);
                r.fragment_indices.push(inj.fragment_k);
            }
        }
    }
    r
}

fn admissibility(inj: &Injection, stage: u64, last_k: Option<u64>) -> Option<IgnoreReason> {
    if inj.stage != stage {
        Some(IgnoreReason::WrongStage)
    } else if inj.fragment_k == 0 {
        Some(IgnoreReason::EmptyFragment)
    } else if last_k.is_some_and(|l| inj.fragment_k >= l) {
        Some(IgnoreReason::NotDecreasing)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDefeat {
    pub stage: u64,
    pub value: u64,
    /// "stage n never succeeds with x", as proved by the oracle.
    pub statement: String,
    /// The run's trace has value x at stage n.
    pub falsified: bool,
}

/// Each success proved that its own stage would never succeed with its
/// value; the trace shows that it did.
pub fn self_defeat_check(u: &UniversalProgram, run: &UARun) -> Vec<SelfDefeat> {
    let bound = u.compiled.for_program(&u.code());
    run.stage_log
        .iter()
        .map(|s| {
            let (n, x) = s.proved;
            let statement = bound.instance(&n.into(), &x.into());
            let emitted = run.outcome.emitted().get(n as usize);
            let falsified = n == s.stage && emitted.is_some_and(|v| *v == BigUint::from(x));
            SelfDefeat { stage: n, value: x, statement: statement.to_string(), falsified }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universal::oracle::{ScriptedOracle, SoundProofOracle};
    use crate::universal::program::{build_oracle_universal_program, build_universal_program};
    use crate::universal::template::TemplateConfig;

    fn inj(at_step: u64, stage: u64, fragment_k: u64, value: u64) -> Injection {
        Injection { at_step, stage, fragment_k, value }
    }

    fn scripted(injections: Vec<Injection>) -> (UniversalProgram, ProofOracleScript, UARun) {
        let u = build_universal_program(&TemplateConfig::default()).unwrap();
        let script = ProofOracleScript { injections };
        let run = run_universal(&u, &mut ScriptedOracle::new(script.clone(), 0), 5_000);
        (u, script, run)
    }

    #[test]
    fn empty_script() {
        let (_, _, run) = scripted(vec![]);
        assert!(run.state.sequence.is_empty());
        assert!(matches!(run.outcome, Outcome::OutOfBudget { .. }));
    }

    #[test]
    fn two_successes() {
        let (u, script, run) = scripted(vec![inj(3, 0, 7, 5), inj(10, 1, 2, 9)]);
        assert_eq!(run.state.sequence, [5, 9]);
        assert_eq!(run.state.fragment_indices, [7, 2]);
        assert!(run.state.invariants_hold());
        assert!(ignored_injections(&script, &run).is_empty());
        assert!(self_defeat_check(&u, &run).iter().all(|d| d.falsified));
    }

    #[test]
    fn non_decreasing_k_ignored() {
        let (_, script, run) = scripted(vec![inj(0, 0, 3, 1), inj(1, 1, 3, 2), inj(2, 1, 0, 2), inj(4, 0, 1, 2)]);
        assert_eq!(run.state.sequence, [1]);
        let ignored = ignored_injections(&script, &run);
        assert_eq!(ignored, replay_script(&script).ignored);
        let reasons: Vec<_> = ignored.iter().map(|i| i.reason).collect();
        assert_eq!(reasons, [IgnoreReason::NotDecreasing, IgnoreReason::EmptyFragment, IgnoreReason::WrongStage]);
    }

    #[test]
    fn unreached_injection() {
        let (_, script, run) = scripted(vec![inj(100_000, 0, 3, 1)]);
        assert_eq!(ignored_injections(&script, &run)[0].reason, IgnoreReason::NotReached);
    }

    #[test]
    fn replay_is_identical() {
        let (u, _, run) = scripted(vec![inj(3, 0, 7, 5), inj(10, 1, 2, 9)]);
        let again = replay_run(&u, run.oracle_log.clone(), 5_000);
        assert_eq!(serde_json::to_string(&again).unwrap(), serde_json::to_string(&run).unwrap());
    }

    #[test]
    fn sound_oracle_small_budget() {
        for m in 0..2 {
            let u = build_oracle_universal_program(&TemplateConfig::default(), m).unwrap();
            let mut o = SoundProofOracle::new(&u.compiled, &u.code(), m, 20_000);
            let run = run_universal(&u, &mut o, 20_000);
            assert!(run.state.sequence.is_empty());
            assert!(o.examined > 0);
            assert!(o.matched.is_empty());
        }
    }
}
