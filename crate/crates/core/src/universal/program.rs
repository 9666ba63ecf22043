//! The universal program: a Kleene fixed point running staged proof search.

use num_bigint::BigUint;
use serde::Serialize;

use super::oracle::{query, ACK, ADVANCE, FRAGMENT, STAGE, VALUE};
use super::template::{Template, TemplateConfig, TemplateError};
use crate::selfref::asm::Asm;
use crate::selfref::kleene::{is_self_referential, kleene_fixed_point, transformed};
use crate::selfref::{Instr, Program};

const STAGE_REG: usize = 20;
const LAST_K: usize = 21;
const SUCCEEDED: usize = 22;
const FOUND: usize = 30;
const N: usize = 31;
const K: usize = 32;
const X: usize = 33;
const SINK: usize = 34;
const QUERIES: usize = 40;
const T1: usize = 50;
const T2: usize = 51;

#[derive(Clone, Debug, Serialize)]
pub struct UniversalProgram {
    /// Level of the oracle the searches are routed through.
    pub level: u64,
    pub template: TemplateConfig,
    /// The staged search, expecting its own code in register 1.
    pub body: Program,
    pub transform: Program,
    /// `e`, the fixed point of `c ↦ smn(body, [c])`.
    pub program: Program,
    #[serde(skip)]
    pub compiled: Template,
}

/// Loop: ask for the next candidate; it succeeds when it proves the template
/// for the current stage in a fragment below every earlier one. Then emit
/// its value, report the fragment and move to the next stage.
pub fn body_program(level: u64) -> Program {
    let mut a = Asm::new();
    for (i, kind) in [ADVANCE, STAGE, FRAGMENT, VALUE, ACK].into_iter().enumerate() {
        a.load(QUERIES + i, query(level, kind));
    }
    a.label("top").oracle(FOUND, QUERIES, Some(STAGE_REG)).jump_if_zero(FOUND, "top");
    a.oracle(N, QUERIES + 1, Some(STAGE_REG)).oracle(K, QUERIES + 2, Some(STAGE_REG)).oracle(X, QUERIES + 3, Some(STAGE_REG));
    a.jump_if_eq(N, STAGE_REG, "stage_ok", T1, T2).jump("top");
    a.label("stage_ok").jump_if_zero(K, "top").jump_if_zero(SUCCEEDED, "accept");
    a.jump_if_lt(K, LAST_K, "accept", T1, T2).jump("top");
    a.label("accept").emit(X).oracle(SINK, QUERIES + 4, Some(K));
    a.copy(LAST_K, K).inc(SUCCEEDED).inc(STAGE_REG).jump("top");
    a.halt();
    a.assemble().expect("fixed labels")
}

/// `c ↦ ⌜smn(body, [c])⌝`
fn transform_program(body: &Program) -> Program {
    Program::new(vec![Instr::Load(2, body.code().0), Instr::Smn { dst: 0, prog: 2, arg: 1 }, Instr::Halt])
}

pub fn build_oracle_universal_program(config: &TemplateConfig, m: u64) -> Result<UniversalProgram, TemplateError> {
    let compiled = config.compile()?;
    let body = body_program(m);
    let transform = transform_program(&body);
    let program = kleene_fixed_point(&transform);
    Ok(UniversalProgram { level: m, template: config.clone(), body, transform, program, compiled })
}

pub fn build_universal_program(config: &TemplateConfig) -> Result<UniversalProgram, TemplateError> {
    build_oracle_universal_program(config, 0)
}

impl UniversalProgram {
    pub fn code(&self) -> BigUint {
        self.program.code().0
    }

    /// `e` is a fixed point of the transform, and the program it becomes
    /// carries `⌜e⌝` as its frozen argument.
    pub fn self_code_check(&self) -> bool {
        if !is_self_referential(&self.program, &self.transform) {
            return false;
        }
        let Ok(p) = transformed(&self.transform, &self.program, 100) else { return false };
        matches!(p.instrs.get(1), Some(Instr::Load(1, c)) if *c == self.code())
    }
}
