//! Proof oracles consumed by the universal program.
//!
//! Queries are `pair(m, kind)` with the kinds below; `m` is the oracle level
//! (0 for plain proof search). After an `ADVANCE` reply of 1 the `STAGE`,
//! `FRAGMENT` and `VALUE` queries describe the candidate proof.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use super::template::{Bound, Template};
use crate::logic::coding::{decimal_big, pair_u64, unpair};
use crate::proof::{ProofStream, Theory};
use crate::selfref::{Oracle, OracleError, Reply};

pub const ADVANCE: u64 = 0;
pub const STAGE: u64 = 1;
pub const FRAGMENT: u64 = 2;
pub const VALUE: u64 = 3;
/// Sent after each emission, with the fragment index of the success.
pub const ACK: u64 = 4;

pub fn query(m: u64, kind: u64) -> BigUint {
    pair_u64(m, kind).into()
}

fn split(q: &BigUint, level: u64) -> Result<u64, OracleError> {
    let (m, kind) = unpair(q);
    let err = |reason: &str| OracleError { query: q.to_string(), reason: reason.into() };
    if m != BigUint::from(level) {
        return Err(err(&format!("expected level {level}")));
    }
    kind.to_u64().filter(|&k| k <= ACK).ok_or_else(|| err("unknown query kind"))
}

/// A candidate proof of a template instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub stage: u64,
    pub fragment_k: u64,
    pub value: u64,
}

fn describe(c: &Option<Candidate>, kind: u64) -> u64 {
    c.as_ref().map_or(0, |c| match kind {
        STAGE => c.stage,
        FRAGMENT => c.fragment_k,
        _ => c.value,
    })
}

/// Searches for real proofs in the theory, charging the run one step per
/// candidate derivation the enumerator examines.
pub struct SoundProofOracle {
    level: u64,
    stream: ProofStream<Arc<Theory>>,
    bound: Bound,
    current: Option<Candidate>,
    pub examined: usize,
    pub matched: Vec<Candidate>,
}

impl SoundProofOracle {
    /// `work_limit` caps the enumerator's total work.
    pub fn new(template: &Template, program_code: &BigUint, level: u64, work_limit: usize) -> Self {
        let stream = ProofStream::new(template.theory.clone(), None, None).with_work_limit(work_limit);
        SoundProofOracle { level, stream, bound: template.for_program(program_code), current: None, examined: 0, matched: Vec::new() }
    }

    pub fn work(&self) -> usize {
        self.stream.work()
    }

    pub fn size_level(&self) -> usize {
        self.stream.level()
    }
}

impl Oracle for SoundProofOracle {
    fn answer(&mut self, q: &BigUint, _: &BigUint) -> Result<Reply, OracleError> {
        let kind = split(q, self.level)?;
        if kind != ADVANCE {
            let value = if kind == ACK { 0 } else { describe(&self.current, kind) };
            return Ok(Reply { value: value.into(), cost: 0 });
        }
        let before = self.stream.work();
        self.current = None;
        let Some(p) = self.stream.next() else { return Ok(Reply { value: 0u32.into(), cost: 0 }) };
        self.examined += 1;
        if let Some((n, x)) = self.bound.matches(&p.conclusion) {
            let k = p.premises.last().map_or(0, |i| i + 1) as u64;
            // Instances with out-of-range numerals cannot be admissible stages.
            if let (Some(stage), Some(value)) = (n.to_u64(), x.to_u64()) {
                let c = Candidate { stage, fragment_k: k, value };
                self.matched.push(c.clone());
                self.current = Some(c);
            }
        }
        let cost = self.stream.work() - before;
        Ok(Reply { value: (self.current.is_some() as u32).into(), cost })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Injection {
    /// Index of the `ADVANCE` query that receives the injection.
    pub at_step: u64,
    pub stage: u64,
    pub fragment_k: u64,
    pub value: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofOracleScript {
    pub injections: Vec<Injection>,
}

impl ProofOracleScript {
    /// Injections that drive the run to `target`: stage `i` succeeds with
    /// fragment `first_k - i` at advance `(i + 1) * gap`.
    pub fn admissible(target: &[u64], first_k: u64, gap: u64) -> Self {
        assert!(first_k >= target.len() as u64 && gap >= 1);
        let injections = target
            .iter()
            .enumerate()
            .map(|(i, &value)| Injection { at_step: (i as u64 + 1) * gap, stage: i as u64, fragment_k: first_k - i as u64, value })
            .collect();
        ProofOracleScript { injections }
    }

    pub fn validate(&self) -> Result<(), String> {
        match self.injections.windows(2).position(|w| w[0].at_step >= w[1].at_step) {
            Some(i) => Err(format!("at_step not strictly increasing at injection {}", i + 1)),
            None => Ok(()),
        }
    }
}

/// Plays a script: each injection is an apparent proof delivered at its
/// `at_step`; every other `ADVANCE` finds nothing.
pub struct ScriptedOracle {
    level: u64,
    script: ProofOracleScript,
    advances: u64,
    next: usize,
    current: Option<usize>,
}

impl ScriptedOracle {
    pub fn new(script: ProofOracleScript, level: u64) -> Self {
        ScriptedOracle { level, script, advances: 0, next: 0, current: None }
    }

    pub fn script(&self) -> &ProofOracleScript {
        &self.script
    }

    pub fn advances(&self) -> u64 {
        self.advances
    }
}

impl Oracle for ScriptedOracle {
    fn answer(&mut self, q: &BigUint, _: &BigUint) -> Result<Reply, OracleError> {
        let kind = split(q, self.level)?;
        let zero = Reply { value: 0u32.into(), cost: 0 };
        match kind {
            ADVANCE => {
                let step = self.advances;
                self.advances += 1;
                self.current = None;
                match self.script.injections.get(self.next) {
                    Some(inj) if inj.at_step == step => {
                        self.current = Some(self.next);
                        self.next += 1;
                        Ok(Reply { value: 1u32.into(), cost: 0 })
                    }
                    _ => Ok(zero),
                }
            }
            ACK => Ok(zero),
            _ => {
                let c = self.current.map(|i| {
                    let inj = &self.script.injections[i];
                    Candidate { stage: inj.stage, fragment_k: inj.fragment_k, value: inj.value }
                });
                Ok(Reply { value: describe(&c, kind).into(), cost: 0 })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    #[serde(with = "decimal_big")]
    pub query: BigUint,
    #[serde(with = "decimal_big")]
    pub arg: BigUint,
    #[serde(with = "decimal_big")]
    pub value: BigUint,
    pub cost: usize,
}

/// Records every exchange with the wrapped oracle.
pub struct Logged<O> {
    pub inner: O,
    pub log: Vec<LogEntry>,
}

impl<O> Logged<O> {
    pub fn new(inner: O) -> Self {
        Logged { inner, log: Vec::new() }
    }
}

impl<O: Oracle> Oracle for Logged<O> {
    fn answer(&mut self, q: &BigUint, arg: &BigUint) -> Result<Reply, OracleError> {
        let r = self.inner.answer(q, arg)?;
        self.log.push(LogEntry { query: q.clone(), arg: arg.clone(), value: r.value.clone(), cost: r.cost });
        Ok(r)
    }
}

/// Answers from a log, failing on any query that differs from the record.
pub struct ReplayOracle {
    log: Vec<LogEntry>,
    pos: usize,
}

impl ReplayOracle {
    pub fn new(log: Vec<LogEntry>) -> Self {
        ReplayOracle { log, pos: 0 }
    }

    pub fn consumed(&self) -> usize {
        self.pos
    }
}

impl Oracle for ReplayOracle {
    fn answer(&mut self, q: &BigUint, arg: &BigUint) -> Result<Reply, OracleError> {
        let err = |reason: String| OracleError { query: q.to_string(), reason };
        let e = self.log.get(self.pos).ok_or_else(|| err("log exhausted".into()))?;
        if e.query != *q || e.arg != *arg {
            return Err(err(format!("entry {} was query {} arg {}", self.pos, e.query, e.arg)));
        }
        self.pos += 1;
        Ok(Reply { value: e.value.clone(), cost: e.cost })
    }
}
