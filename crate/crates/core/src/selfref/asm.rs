//! A small assembler: symbolic labels and comparison macros.

use num_bigint::BigUint;
use std::collections::HashMap;
use thiserror::Error;

use super::machine::{Instr, Program};

/// Kept at zero by every program the assembler emits; unconditional jumps
/// test it.
pub const ZERO: usize = 4000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsmError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` defined twice")]
    DuplicateLabel(String),
}

enum Item {
    Plain(Instr),
    Jz(usize, String),
}

#[derive(Default)]
pub struct Asm {
    items: Vec<Item>,
    labels: HashMap<String, usize>,
    duplicate: Option<String>,
    fresh: usize,
}

impl Asm {
    pub fn new() -> Self {
        Self::default()
    }

    fn op(&mut self, i: Instr) -> &mut Self {
        self.items.push(Item::Plain(i));
        self
    }

    /// A label name not used elsewhere.
    pub fn fresh(&mut self, stem: &str) -> String {
        self.fresh += 1;
        format!("{stem}#{}", self.fresh)
    }

    pub fn label(&mut self, name: &str) -> &mut Self {
        if self.labels.insert(name.to_string(), self.items.len()).is_some() {
            self.duplicate.get_or_insert_with(|| name.to_string());
        }
        self
    }

    pub fn inc(&mut self, r: usize) -> &mut Self {
        self.op(Instr::Inc(r))
    }

    /// Jumps to `target` if `r` is zero, otherwise decrements it.
    pub fn decjz(&mut self, r: usize, target: &str) -> &mut Self {
        self.items.push(Item::Jz(r, target.to_string()));
        self
    }

    pub fn jump(&mut self, target: &str) -> &mut Self {
        self.decjz(ZERO, target)
    }

    pub fn halt(&mut self) -> &mut Self {
        self.op(Instr::Halt)
    }

    pub fn load(&mut self, r: usize, n: impl Into<BigUint>) -> &mut Self {
        self.op(Instr::Load(r, n.into()))
    }

    pub fn copy(&mut self, dst: usize, src: usize) -> &mut Self {
        self.op(Instr::Copy(dst, src))
    }

    pub fn oracle(&mut self, dst: usize, query: usize, arg: Option<usize>) -> &mut Self {
        self.op(Instr::Oracle { dst, query, arg })
    }

    pub fn smn(&mut self, dst: usize, prog: usize, arg: usize) -> &mut Self {
        self.op(Instr::Smn { dst, prog, arg })
    }

    pub fn exec(&mut self, prog: usize, args: &[usize], dst: usize) -> &mut Self {
        self.op(Instr::Exec { prog, args: args.to_vec(), dst })
    }

    pub fn emit(&mut self, r: usize) -> &mut Self {
        self.op(Instr::Emit(r))
    }

    /// Jumps to `target` when `r` is zero, leaving `r` unchanged.
    pub fn jump_if_zero(&mut self, r: usize, target: &str) -> &mut Self {
        self.decjz(r, target).inc(r)
    }

    /// Jumps to `target` when `a < b`; clobbers `t1`, `t2`.
    pub fn jump_if_lt(&mut self, a: usize, b: usize, target: &str, t1: usize, t2: usize) -> &mut Self {
        let (top, end) = (self.fresh("lt"), self.fresh("lt_end"));
        self.copy(t1, a).copy(t2, b);
        self.label(&top).decjz(t2, &end).decjz(t1, target).jump(&top);
        self.label(&end)
    }

    /// Jumps to `target` when `a = b`; clobbers `t1`, `t2`.
    pub fn jump_if_eq(&mut self, a: usize, b: usize, target: &str, t1: usize, t2: usize) -> &mut Self {
        let (top, a_zero, end) = (self.fresh("eq"), self.fresh("eq_a0"), self.fresh("eq_end"));
        self.copy(t1, a).copy(t2, b);
        self.label(&top).decjz(t1, &a_zero).decjz(t2, &end).jump(&top);
        self.label(&a_zero).decjz(t2, target);
        self.label(&end)
    }

    pub fn assemble(&self) -> Result<Program, AsmError> {
        if let Some(d) = &self.duplicate {
            return Err(AsmError::DuplicateLabel(d.clone()));
        }
        let instrs = self
            .items
            .iter()
            .map(|it| match it {
                Item::Plain(i) => Ok(i.clone()),
                Item::Jz(r, l) => self.labels.get(l).map(|&t| Instr::DecJz(*r, t)).ok_or_else(|| AsmError::UnknownLabel(l.clone())),
            })
            .collect::<Result<_, _>>()?;
        Ok(Program::new(instrs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfref::machine::{nat, run_plain};

    fn comparator(eq: bool) -> Program {
        let mut a = Asm::new();
        if eq {
            a.jump_if_eq(1, 2, "yes", 10, 11);
        } else {
            a.jump_if_lt(1, 2, "yes", 10, 11);
        }
        a.halt().label("yes").inc(0).halt();
        a.assemble().unwrap()
    }

    #[test]
    fn comparisons_match_integers() {
        let (lt, eq) = (comparator(false), comparator(true));
        for x in 0..6u64 {
            for y in 0..6u64 {
                assert_eq!(run_plain(&lt, &[x, y], 500).output(), Some(&nat((x < y) as u64)));
                assert_eq!(run_plain(&eq, &[x, y], 500).output(), Some(&nat((x == y) as u64)));
            }
        }
    }

    #[test]
    fn label_errors() {
        let mut a = Asm::new();
        a.jump("nowhere");
        assert_eq!(a.assemble(), Err(AsmError::UnknownLabel("nowhere".into())));
        let mut b = Asm::new();
        b.label("x").label("x");
        assert_eq!(b.assemble(), Err(AsmError::DuplicateLabel("x".into())));
    }
}
