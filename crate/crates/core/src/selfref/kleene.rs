//! The recursion theorem for register machines.

use num_bigint::BigUint;
use thiserror::Error;

use super::machine::{run, smn, Instr, NoOracle, Outcome, Program};

/// Number of inputs a fixed point passes on to the transformed program.
pub const FORWARDED: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KleeneError {
    #[error("the transform did not halt on the fixed point's code within {0} steps")]
    NotTotal(usize),
    #[error("the transform's output is not a program code")]
    NotAProgram,
    #[error("input {input:?}: fixed point and transformed program disagree")]
    Disagree { input: Vec<u64> },
}

/// `D`: given its own code `d` in register 1, computes `⌜smn(D, [d])⌝`,
/// applies the transform and runs the result on the remaining inputs.
pub fn diagonal_program(transform: &Program) -> Program {
    let mut instrs = vec![
        Instr::Smn { dst: 10, prog: 1, arg: 1 },
        Instr::Load(11, transform.code().0),
        Instr::Exec { prog: 11, args: vec![10], dst: 12 },
    ];
    instrs.push(Instr::Exec { prog: 12, args: (2..2 + FORWARDED).collect(), dst: 0 });
    instrs.push(Instr::Halt);
    Program::new(instrs)
}

/// `e = smn(D, [⌜D⌝])`, so that `e` behaves like `transform(⌜e⌝)`.
pub fn kleene_fixed_point(transform: &Program) -> Program {
    let d = diagonal_program(transform);
    smn(&d, &[d.code().0])
}

/// Recovers the frozen argument of a fixed point and checks `e = smn(D, [⌜D⌝])`.
pub fn is_self_referential(e: &Program, transform: &Program) -> bool {
    let Some(Instr::Load(1, n)) = e.instrs.get(1) else { return false };
    let d = diagonal_program(transform);
    *n == d.code().0 && smn(&d, std::slice::from_ref(n)) == *e
}

/// The program `transform(⌜e⌝)`.
pub fn transformed(transform: &Program, e: &Program, budget: usize) -> Result<Program, KleeneError> {
    match run(transform, &[e.code().0], &mut NoOracle, budget) {
        Outcome::Halted { output, .. } => Program::from_code(&output).map_err(|_| KleeneError::NotAProgram),
        _ => Err(KleeneError::NotTotal(budget)),
    }
}

/// Runs `e` and `transform(⌜e⌝)` on each input and compares results.
pub fn verify_fixed_point(transform: &Program, e: &Program, inputs: &[Vec<u64>], budget: usize) -> Result<(), KleeneError> {
    let target = transformed(transform, e, budget)?;
    for input in inputs {
        let xs: Vec<BigUint> = input.iter().map(|&n| n.into()).collect();
        let a = run(e, &xs, &mut NoOracle, budget);
        let b = run(&target, &xs, &mut NoOracle, budget);
        if !a.same_behaviour(&b) {
            return Err(KleeneError::Disagree { input: input.clone() });
        }
    }
    Ok(())
}

/// Transform with `T(c) = ⌜program printing c⌝`; its fixed point is a quine.
pub fn quine_transform() -> Program {
    let print_first = Program::new(vec![Instr::Copy(0, 1), Instr::Halt]);
    Program::new(vec![Instr::Load(2, print_first.code().0), Instr::Smn { dst: 0, prog: 2, arg: 1 }, Instr::Halt])
}

/// Transform returning its input code unchanged.
pub fn identity_transform() -> Program {
    Program::new(vec![Instr::Copy(0, 1), Instr::Halt])
}

/// Transform ignoring its input and returning `⌜c⌝`.
pub fn constant_transform(c: &Program) -> Program {
    Program::new(vec![Instr::Load(0, c.code().0), Instr::Halt])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfref::machine::{nat, run_plain};

    #[test]
    fn quine_prints_its_own_code() {
        let t = quine_transform();
        let e = kleene_fixed_point(&t);
        assert!(is_self_referential(&e, &t));
        let out = run_plain(&e, &[], 10_000);
        assert_eq!(out.output(), Some(&e.code().0));
        assert_eq!(Program::from_code(out.output().unwrap()).unwrap(), e);
    }

    #[test]
    fn constant_transform_fixed_point() {
        let c = Program::new(vec![Instr::Inc(0), Instr::Inc(0), Instr::Halt]);
        let t = constant_transform(&c);
        let e = kleene_fixed_point(&t);
        let inputs: Vec<Vec<u64>> = (0..=20).map(|n| vec![n]).collect();
        assert_eq!(verify_fixed_point(&t, &e, &inputs, 10_000), Ok(()));
        assert_eq!(run_plain(&e, &[3], 10_000).output(), Some(&nat(2)));
    }

    #[test]
    fn identity_transform_diverges_on_both_sides() {
        let t = identity_transform();
        let e = kleene_fixed_point(&t);
        assert_eq!(verify_fixed_point(&t, &e, &[vec![], vec![1]], 2_000), Ok(()));
        assert!(matches!(run_plain(&e, &[], 2_000), Outcome::OutOfBudget { .. }));
    }

    #[test]
    fn non_total_transform_reported() {
        let looping = Program::new(vec![Instr::DecJz(5, 0)]);
        let e = kleene_fixed_point(&looping);
        assert_eq!(verify_fixed_point(&looping, &e, &[vec![]], 100), Err(KleeneError::NotTotal(100)));
        let junk = Program::new(vec![Instr::Inc(0), Instr::Halt]);
        let e = kleene_fixed_point(&junk);
        assert_eq!(verify_fixed_point(&junk, &e, &[vec![]], 100), Err(KleeneError::NotAProgram));
    }
}
