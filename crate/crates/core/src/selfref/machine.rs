//! Register machines over unbounded naturals, with an oracle instruction.
//!
//! Inputs arrive in registers `1..`, the output is register 0. Besides the
//! counter-machine core (`inc`, `decjz`, `halt`) there are instructions that
//! treat registers as program codes: `smn` specialises a coded program and
//! `exec` runs one as a subroutine.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::rc::Rc;
use thiserror::Error;

use crate::logic::coding::{decode, encode, kind, Codable, DecodeError, GodelCode, Reader, Writer};

/// Highest register index a program may name.
pub const MAX_REGISTER: usize = 4095;
/// Nesting depth of `exec` beyond which a run counts as out of budget.
pub const MAX_DEPTH: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Instr {
    Inc(usize),
    /// Jump to the target if the register is zero, otherwise decrement it.
    DecJz(usize, usize),
    Halt,
    /// Asks the oracle about `query` (with `arg`, or 0) and stores the reply in `dst`.
    Oracle { dst: usize, query: usize, arg: Option<usize> },
    Load(usize, #[serde(with = "crate::logic::coding::decimal_big")] BigUint),
    /// `Copy(dst, src)`
    Copy(usize, usize),
    /// Moves registers `1..` up by `n`, clearing `1..=n`.
    Shift(usize),
    /// `dst := ⌜smn(decode(prog), [arg])⌝`
    Smn { dst: usize, prog: usize, arg: usize },
    /// Runs the coded program on the listed registers; its output goes to `dst`.
    Exec { prog: usize, args: Vec<usize>, dst: usize },
    /// Appends the register's value to the run's emitted sequence.
    Emit(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Program {
    pub instrs: Vec<Instr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("instruction {at}: jump target {target} past the end ({len})")]
    JumpOutOfRange { at: usize, target: usize, len: usize },
    #[error("instruction {at}: register {reg} beyond the limit {MAX_REGISTER}")]
    Register { at: usize, reg: usize },
}

impl Program {
    pub fn new(instrs: Vec<Instr>) -> Self {
        Program { instrs }
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    pub fn code(&self) -> GodelCode {
        encode(self)
    }

    pub fn from_code(code: &BigUint) -> Result<Program, DecodeError> {
        decode(&GodelCode(code.clone()))
    }

    /// Jump targets may equal the length (falling off the end halts).
    pub fn validate(&self) -> Result<(), ProgramError> {
        let len = self.len();
        for (at, i) in self.instrs.iter().enumerate() {
            if let Instr::DecJz(_, target) = i {
                if *target > len {
                    return Err(ProgramError::JumpOutOfRange { at, target: *target, len });
                }
            }
            if let Some(&reg) = i.registers().iter().find(|&&r| r > MAX_REGISTER) {
                return Err(ProgramError::Register { at, reg });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }
}

impl Instr {
    fn tag(&self) -> u64 {
        match self {
            Instr::Inc(_) => 0,
            Instr::DecJz(..) => 1,
            Instr::Halt => 2,
            Instr::Oracle { .. } => 3,
            Instr::Load(..) => 4,
            Instr::Copy(..) => 5,
            Instr::Shift(_) => 6,
            Instr::Smn { .. } => 7,
            Instr::Exec { .. } => 8,
            Instr::Emit(_) => 9,
        }
    }

    pub fn registers(&self) -> Vec<usize> {
        match self {
            Instr::Inc(r) | Instr::DecJz(r, _) | Instr::Load(r, _) | Instr::Emit(r) => vec![*r],
            Instr::Halt | Instr::Shift(_) => vec![],
            Instr::Oracle { dst, query, arg } => [Some(*dst), Some(*query), *arg].into_iter().flatten().collect(),
            Instr::Copy(a, b) => vec![*a, *b],
            Instr::Smn { dst, prog, arg } => vec![*dst, *prog, *arg],
            Instr::Exec { prog, args, dst } => std::iter::once(*prog).chain(args.iter().copied()).chain([*dst]).collect(),
        }
    }
}

impl Codable for Program {
    const KIND: u8 = kind::PROGRAM;

    fn write(&self, w: &mut Writer) {
        w.varint(self.instrs.len() as u64);
        for i in &self.instrs {
            let fields: Vec<u64> = match i {
                Instr::Inc(r) | Instr::Emit(r) | Instr::Shift(r) | Instr::Load(r, _) => vec![*r as u64],
                Instr::DecJz(r, t) | Instr::Copy(r, t) => vec![*r as u64, *t as u64],
                Instr::Halt => vec![],
                Instr::Oracle { dst, query, arg } => vec![*dst as u64, *query as u64, arg.map_or(0, |a| a as u64 + 1)],
                Instr::Smn { dst, prog, arg } => vec![*dst as u64, *prog as u64, *arg as u64],
                Instr::Exec { prog, args, dst } => {
                    let mut v = vec![*prog as u64, *dst as u64];
                    v.extend(args.iter().map(|&a| a as u64));
                    v
                }
            };
            w.header(i.tag(), fields.len() as u64);
            for f in fields {
                w.varint(f);
            }
            if let Instr::Load(_, n) = i {
                w.big(n);
            }
        }
    }

    fn read(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let n = r.count()?;
        let mut instrs = Vec::with_capacity(n.min(1 << 16));
        for _ in 0..n {
            let at = r.offset();
            let (tag, arity) = r.header()?;
            let bad = |r: &Reader<'_>| r.bad_tag(at, tag, arity);
            let expected = match tag {
                2 => Some(0),
                0 | 4 | 6 | 9 => Some(1),
                1 | 5 => Some(2),
                3 | 7 => Some(3),
                8 => None,
                _ => return Err(bad(r)),
            };
            if expected.is_some_and(|e| e != arity) || (tag == 8 && arity < 2) {
                return Err(bad(r));
            }
            let mut f = Vec::with_capacity(arity as usize);
            for _ in 0..arity {
                f.push(r.varint()? as usize);
            }
            instrs.push(match tag {
                0 => Instr::Inc(f[0]),
                1 => Instr::DecJz(f[0], f[1]),
                2 => Instr::Halt,
                3 => Instr::Oracle { dst: f[0], query: f[1], arg: f[2].checked_sub(1) },
                4 => Instr::Load(f[0], r.big()?),
                5 => Instr::Copy(f[0], f[1]),
                6 => Instr::Shift(f[0]),
                7 => Instr::Smn { dst: f[0], prog: f[1], arg: f[2] },
                8 => Instr::Exec { prog: f[0], dst: f[1], args: f[2..].to_vec() },
                _ => Instr::Emit(f[0]),
            });
        }
        Ok(Program { instrs })
    }
}

/// `smn(p, a)` behaves on `b` as `p` does on `a ++ b`.
pub fn smn(p: &Program, frozen: &[BigUint]) -> Program {
    if frozen.is_empty() {
        return p.clone();
    }
    let mut instrs = vec![Instr::Shift(frozen.len())];
    instrs.extend(frozen.iter().enumerate().map(|(i, a)| Instr::Load(i + 1, a.clone())));
    let offset = instrs.len();
    instrs.extend(p.instrs.iter().map(|i| match i {
        Instr::DecJz(r, t) => Instr::DecJz(*r, t + offset),
        other => other.clone(),
    }));
    Program { instrs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reply {
    pub value: BigUint,
    /// Extra steps charged to the run for answering.
    pub cost: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("oracle cannot answer query {query}: {reason}")]
pub struct OracleError {
    pub query: String,
    pub reason: String,
}

pub trait Oracle {
    fn answer(&mut self, query: &BigUint, arg: &BigUint) -> Result<Reply, OracleError>;
}

/// Rejects every query.
pub struct NoOracle;

impl Oracle for NoOracle {
    fn answer(&mut self, query: &BigUint, _: &BigUint) -> Result<Reply, OracleError> {
        Err(OracleError { query: query.to_string(), reason: "no oracle attached".into() })
    }
}

impl<O: Oracle + ?Sized> Oracle for &mut O {
    fn answer(&mut self, query: &BigUint, arg: &BigUint) -> Result<Reply, OracleError> {
        (**self).answer(query, arg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Halted { output: BigUint, emitted: Vec<BigUint>, steps: usize },
    OutOfBudget { emitted: Vec<BigUint>, steps: usize },
    /// A configuration error: an undecodable program code or an oracle failure.
    Fault { reason: String, emitted: Vec<BigUint>, steps: usize },
}

impl Outcome {
    pub fn output(&self) -> Option<&BigUint> {
        match self {
            Outcome::Halted { output, .. } => Some(output),
            _ => None,
        }
    }

    pub fn emitted(&self) -> &[BigUint] {
        match self {
            Outcome::Halted { emitted, .. } | Outcome::OutOfBudget { emitted, .. } | Outcome::Fault { emitted, .. } => emitted,
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            Outcome::Halted { steps, .. } | Outcome::OutOfBudget { steps, .. } | Outcome::Fault { steps, .. } => *steps,
        }
    }

    /// Same result ignoring the step count.
    pub fn same_behaviour(&self, other: &Outcome) -> bool {
        match (self, other) {
            (Outcome::Halted { output: a, emitted: x, .. }, Outcome::Halted { output: b, emitted: y, .. }) => a == b && x == y,
            (Outcome::OutOfBudget { .. }, Outcome::OutOfBudget { .. }) => true,
            (Outcome::Fault { reason: a, .. }, Outcome::Fault { reason: b, .. }) => a == b,
            _ => false,
        }
    }
}

struct Frame {
    prog: Rc<Program>,
    pc: usize,
    regs: Vec<BigUint>,
    /// Register of the caller receiving this frame's output.
    ret: usize,
}

impl Frame {
    fn new(prog: Rc<Program>, input: Vec<BigUint>, ret: usize) -> Self {
        let mut regs = vec![BigUint::zero()];
        regs.extend(input);
        Frame { prog, pc: 0, regs, ret }
    }

    fn get(&self, r: usize) -> BigUint {
        self.regs.get(r).cloned().unwrap_or_default()
    }

    fn reg(&mut self, r: usize) -> &mut BigUint {
        if self.regs.len() <= r {
            self.regs.resize(r + 1, BigUint::zero());
        }
        &mut self.regs[r]
    }
}

enum Stop {
    Budget,
    Fault(String),
}

/// Runs `p` on `input` for at most `budget` steps. Every instruction but
/// `halt` costs one step, plus whatever the oracle charges.
pub fn run(p: &Program, input: &[BigUint], oracle: &mut dyn Oracle, budget: usize) -> Outcome {
    let mut steps = 0;
    let mut emitted = Vec::new();
    let result = execute(p, input, oracle, budget, &mut steps, &mut emitted);
    match result {
        Ok(output) => Outcome::Halted { output, emitted, steps },
        Err(Stop::Budget) => Outcome::OutOfBudget { emitted, steps },
        Err(Stop::Fault(reason)) => Outcome::Fault { reason, emitted, steps },
    }
}

/// Runs with natural-number inputs and no oracle.
pub fn run_plain(p: &Program, input: &[u64], budget: usize) -> Outcome {
    let input: Vec<BigUint> = input.iter().map(|&n| BigUint::from(n)).collect();
    run(p, &input, &mut NoOracle, budget)
}

fn execute(
    p: &Program,
    input: &[BigUint],
    oracle: &mut dyn Oracle,
    budget: usize,
    steps: &mut usize,
    emitted: &mut Vec<BigUint>,
) -> Result<BigUint, Stop> {
    let mut cache: HashMap<BigUint, Rc<Program>> = HashMap::new();
    let mut load = |code: &BigUint| -> Result<Rc<Program>, Stop> {
        if let Some(p) = cache.get(code) {
            return Ok(p.clone());
        }
        let p = Program::from_code(code).map_err(|e| Stop::Fault(format!("not a program code: {e}")))?;
        p.validate().map_err(|e| Stop::Fault(e.to_string()))?;
        let p = Rc::new(p);
        cache.insert(code.clone(), p.clone());
        Ok(p)
    };
    p.validate().map_err(|e| Stop::Fault(e.to_string()))?;
    let mut stack = vec![Frame::new(Rc::new(p.clone()), input.to_vec(), 0)];
    loop {
        let top = stack.last_mut().expect("frame");
        let instr = top.prog.instrs.get(top.pc).cloned().unwrap_or(Instr::Halt);
        if instr == Instr::Halt {
            let done = stack.pop().expect("frame");
            let out = done.get(0);
            match stack.last_mut() {
                None => return Ok(out),
                Some(caller) => {
                    *caller.reg(done.ret) = out;
                    caller.pc += 1;
                    continue;
                }
            }
        }
        if *steps >= budget {
            return Err(Stop::Budget);
        }
        *steps += 1;
        top.pc += 1;
        match instr {
            Instr::Halt => unreachable!(),
            Instr::Inc(r) => *top.reg(r) += 1u32,
            Instr::DecJz(r, t) => {
                let v = top.reg(r);
                if v.is_zero() {
                    top.pc = t;
                } else {
                    *v -= 1u32;
                }
            }
            Instr::Oracle { dst, query, arg } => {
                let q = top.get(query);
                let a = arg.map(|a| top.get(a)).unwrap_or_default();
                let reply = oracle.answer(&q, &a).map_err(|e| Stop::Fault(e.to_string()))?;
                if *steps + reply.cost > budget {
                    *steps = budget;
                    return Err(Stop::Budget);
                }
                *steps += reply.cost;
                *top.reg(dst) = reply.value;
            }
            Instr::Load(r, n) => *top.reg(r) = n,
            Instr::Copy(d, s) => *top.reg(d) = top.get(s),
            Instr::Shift(n) => {
                if n > 0 && top.regs.len() > 1 {
                    let tail = top.regs.split_off(1);
                    top.regs.extend(std::iter::repeat_n(BigUint::zero(), n));
                    top.regs.extend(tail);
                }
            }
            Instr::Smn { dst, prog, arg } => {
                let q = load(&top.get(prog))?;
                let code = smn(&q, &[top.get(arg)]).code().0;
                *top.reg(dst) = code;
            }
            Instr::Exec { prog, args, dst } => {
                let q = load(&top.get(prog))?;
                let input = args.iter().map(|&a| top.get(a)).collect();
                // The caller resumes at the exec itself; the return advances it.
                top.pc -= 1;
                if stack.len() >= MAX_DEPTH {
                    return Err(Stop::Budget);
                }
                stack.push(Frame::new(q, input, dst));
            }
            Instr::Emit(r) => emitted.push(top.get(r)),
        }
    }
}

/// `n` as a machine value.
pub fn nat(n: u64) -> BigUint {
    BigUint::from(n)
}
