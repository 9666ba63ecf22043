//! Process formulas for the set-theoretic universal sequence.
//!
//! `ψ(n, a)` says: some `y = V_d` is Σ_m-correct and gives a reason for
//! placing `a` at stage `n`, the fragment index `k` falls below every
//! earlier stage's, and `(d, a, k)` is lexically least inside `y`. Earlier
//! stages are read through the slot `Sat(x, j, a, k)`, and `x` is then fixed
//! to the formula's own code.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::classify::{classify, ComplexityClass};
use crate::logic::coding::{godel_encode, name_code};
use crate::logic::signature::Symbol;
use crate::logic::syntax::{BoundKind, Formula, Term};
use crate::proof::theory::SUB;
use crate::proof::Theory;
use crate::selfref::{godel_carnap_fixed_point_in, DiagonalError, FixedPointCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Process {
    A,
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicRoles {
    pub delta_n: String,
    pub alpha_n: String,
    pub k_n: String,
    pub lambda_n: String,
}

impl Default for SymbolicRoles {
    fn default() -> Self {
        SymbolicRoles {
            delta_n: "Σ_m-correct cardinal".into(),
            alpha_n: "enumerated ordinal".into(),
            k_n: "decreasing fragment index".into(),
            lambda_n: "Π¹₁ tree rank (symbolic only)".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessFormulaSpec {
    pub m: usize,
    pub theory: String,
    pub symbolic_roles: SymbolicRoles,
}

impl ProcessFormulaSpec {
    pub fn new(m: usize) -> Self {
        ProcessFormulaSpec { m, theory: "ZF".into(), symbolic_roles: SymbolicRoles::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("m = 0 is the Σ_1 case, already handled by the plain Σ_1 universal sequence")]
    Delegated,
    #[error(transparent)]
    Diagonal(#[from] DiagonalError),
}

#[derive(Clone, Debug, Serialize)]
pub struct Part {
    pub name: String,
    #[serde(with = "crate::proof::formula_text")]
    pub formula: Formula,
    pub class: ComplexityClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct Synthesis {
    pub process: Process,
    pub m: usize,
    /// `ψ(n, a)`, closed under the fixed point.
    #[serde(with = "crate::proof::formula_text")]
    pub formula: Formula,
    pub certificate: FixedPointCertificate,
    pub class: ComplexityClass,
    /// Named pieces of the template before closure.
    pub parts: Vec<Part>,
}

fn v(s: &str) -> Term {
    Term::var(s)
}

fn mem(a: &str, b: &str) -> Formula {
    Formula::mem(v(a), v(b))
}

fn all_in(x: &str, t: &str, body: Formula) -> Formula {
    Formula::BoundedForall(x.into(), BoundKind::In, v(t), Box::new(body))
}

fn ex_in(x: &str, t: &str, body: Formula) -> Formula {
    Formula::BoundedExists(x.into(), BoundKind::In, v(t), Box::new(body))
}

fn and_all(fs: Vec<Formula>) -> Formula {
    fs.into_iter().reduce(Formula::and).expect("nonempty")
}

fn slot(name: &str, args: &[&str]) -> Formula {
    Formula::atom(name, args.iter().map(|a| v(a)).collect())
}

/// Bounds every unbounded quantifier by `y`.
pub fn relativize(f: &Formula, y: &str) -> Formula {
    use Formula::*;
    let r = |g: &Formula| Box::new(relativize(g, y));
    match f {
        Atom(..) => f.clone(),
        Not(g) => Not(r(g)),
        And(a, b) => And(r(a), r(b)),
        Or(a, b) => Or(r(a), r(b)),
        Implies(a, b) => Implies(r(a), r(b)),
        Forall(x, g) => BoundedForall(x.clone(), BoundKind::In, v(y), r(g)),
        Exists(x, g) => BoundedExists(x.clone(), BoundKind::In, v(y), r(g)),
        BoundedForall(x, k, t, g) => BoundedForall(x.clone(), *k, t.clone(), r(g)),
        BoundedExists(x, k, t, g) => BoundedExists(x.clone(), *k, t.clone(), r(g)),
        Necessarily(g) => Necessarily(r(g)),
        Possibly(g) => Possibly(r(g)),
    }
}

fn transitive(y: &str) -> Formula {
    all_in("t1", y, all_in("t2", "t1", mem("t2", y)))
}

fn ordinal(d: &str) -> Formula {
    Formula::and(transitive(d), all_in("t3", d, transitive("t3")))
}

/// `y = V_d`: `d` an ordinal and `y` the transitive set of subsets of `y`
/// ranked below `d`.
pub fn rank_segment(y: &str, d: &str) -> Formula {
    let z = "z_";
    let sub = all_in("w_", z, mem("w_", y));
    let ranked = ex_in("b_", d, all_in("w_", z, Formula::not(mem("b_", "w_"))));
    let body = Formula::iff(mem(z, y), Formula::and(sub, ranked));
    and_all(vec![ordinal(d), transitive(y), Formula::forall(z, body)])
}

/// The Σ_m truth template at parameter `p`.
fn sigma_truth(m: usize, p: &str) -> Formula {
    let ws: Vec<String> = (1..=m).map(|i| format!("w{i}")).collect();
    let mut matrix: Vec<Formula> = ws.windows(2).map(|w| mem(&w[0], &w[1])).collect();
    matrix.push(mem(&ws[m - 1], p));
    let mut f = and_all(matrix);
    for (i, w) in ws.iter().enumerate().rev() {
        f = if i % 2 == 0 { Formula::exists(w.as_str(), f) } else { Formula::forall(w.as_str(), f) };
    }
    f
}

/// `y` is Σ_m-correct: Σ_m truths with parameters in `y` hold in `y`.
pub fn sigma_correct(m: usize, y: &str) -> Formula {
    let p = "p_";
    all_in(p, y, Formula::implies(sigma_truth(m, p), relativize(&sigma_truth(m, p), y)))
}

/// No covering Σ_m-elementary end extension of `y`.
pub fn no_extension(m: usize, y: &str) -> Formula {
    let e = "e_";
    let covers = ex_in("c_", e, all_in("u_", y, mem("u_", "c_")));
    let end = all_in("u_", y, Formula::and(mem("u_", e), all_in("w_", e, Formula::implies(mem("w_", "u_"), mem("w_", y)))));
    let elem = all_in("p_", y, Formula::iff(relativize(&sigma_truth(m, "p_"), y), relativize(&sigma_truth(m, "p_"), e)));
    Formula::forall(e, Formula::not(and_all(vec![covers, end, elem])))
}

fn a_reason(m: usize, a: &str, d: &str, y: &str) -> Formula {
    Formula::and(no_extension(m, y), Formula::eq(v(a), v(d)))
}

fn b_reason(a: &str, y: &str) -> Formula {
    Formula::and(mem(a, y), ex_in("tr_", y, slot("TreeRank", &["tr_", a])))
}

/// After an A-reason stage only A-reason stages follow.
fn only_a_after_a(n: &str, y: &str) -> Formula {
    all_in("j_", n, all_in("a_", y, all_in("k_", y, Formula::not(slot("SatA", &["x", "j_", "a_", "k_"])))))
}

fn reason(which: Process, m: usize, n: &str, a: &str, d: &str, y: &str) -> Formula {
    match which {
        Process::A => a_reason(m, a, d, y),
        Process::B => b_reason(a, y),
        Process::C => Formula::or(a_reason(m, a, d, y), Formula::and(b_reason(a, y), only_a_after_a(n, y))),
    }
}

/// Every earlier stage succeeded, with a larger fragment index.
fn earlier(n: &str, k: &str, y: &str) -> Formula {
    all_in("j_", n, ex_in("a_", y, ex_in("k_", y, Formula::and(slot("Sat", &["x", "j_", "a_", "k_"]), mem(k, "k_")))))
}

fn success(which: Process, m: usize, n: &str, a: &str, d: &str, y: &str, k: &str) -> Formula {
    and_all(vec![rank_segment(y, d), sigma_correct(m, y), mem(k, y), reason(which, m, n, a, d, y), earlier(n, k, y)])
}

/// No lexically smaller `(d1, a1, k1)` succeeds, judged inside `y`.
fn lexically_least(which: Process, m: usize, y: &str) -> Formula {
    let local = |d: &str, a: &str, k: &str| relativize(&ex_in("y1", y, success(which, m, "n", a, d, "y1", k)), y);
    and_all(vec![
        all_in("d1", "d", all_in("a1", y, all_in("k1", y, Formula::not(local("d1", "a1", "k1"))))),
        all_in("a1", "a", all_in("k1", y, Formula::not(local("d", "a1", "k1")))),
        all_in("k1", "k", Formula::not(local("d", "a", "k1"))),
    ])
}

/// The template `φ(x, n, a)` before closure, with its named parts.
pub fn process_template(which: Process, m: usize) -> (Formula, Vec<(String, Formula)>) {
    let body = Formula::and(success(which, m, "n", "a", "d", "y", "k"), lexically_least(which, m, "y"));
    let phi = Formula::exists("d", Formula::exists("y", Formula::exists("k", body)));
    let mut parts = vec![
        ("rank_segment".to_string(), rank_segment("y", "d")),
        ("sigma_correct".to_string(), sigma_correct(m, "y")),
        ("earlier_stages".to_string(), earlier("n", "k", "y")),
        ("lexically_least".to_string(), lexically_least(which, m, "y")),
    ];
    if which != Process::B {
        parts.push(("a_reason".into(), a_reason(m, "a", "d", "y")));
        parts.push(("no_extension".into(), no_extension(m, "y")));
    }
    if which != Process::A {
        parts.push(("b_reason".into(), b_reason("a", "y")));
    }
    if which == Process::C {
        parts.push(("only_a_after_a".into(), only_a_after_a("n", "y")));
    }
    (phi, parts)
}

/// Base theory of the certificates: the substitution function plus the
/// membership relation and the designated slots.
pub fn synthesis_base() -> Theory {
    Theory::diagonal_base(&[Symbol::new("in", 2), Symbol::new("Sat", 4), Symbol::new("SatA", 4), Symbol::new("TreeRank", 2)])
}

pub fn synthesize_process_formula(spec: &ProcessFormulaSpec, which: Process) -> Result<Synthesis, SynthError> {
    if spec.m == 0 {
        return Err(SynthError::Delegated);
    }
    let (phi, parts) = process_template(which, spec.m);
    let certificate = godel_carnap_fixed_point_in(&phi, "x", &synthesis_base())?;
    let formula = certificate.psi.clone();
    let class = classify(&formula).expect("synthesised formulas have no modal operators");
    let parts = parts
        .into_iter()
        .map(|(name, f)| {
            let class = classify(&f).expect("set-theoretic part");
            Part { name, formula: f, class }
        })
        .collect();
    Ok(Synthesis { process: which, m: spec.m, formula, certificate, class, parts })
}

impl Synthesis {
    /// `ψ` contains the named part, with the self-reference slot closed.
    pub fn has_part(&self, name: &str) -> bool {
        let Some(part) = self.parts.iter().find(|p| p.name == name) else { return false };
        let x = v(&self.certificate.var);
        let s = Term::app(SUB, vec![x.clone(), Term::numeral(name_code(&self.certificate.var).0), x]);
        let theta = self.certificate.phi.substitute(&self.certificate.var, &s);
        let g = Term::numeral(godel_encode(&theta).0);
        let closed = part.formula.substitute(&self.certificate.var, &s).substitute(&self.certificate.var, &g);
        contains(&self.formula, &closed)
    }
}

fn contains(f: &Formula, g: &Formula) -> bool {
    use Formula::*;
    f == g
        || match f {
            Atom(..) => false,
            Not(a) | Necessarily(a) | Possibly(a) => contains(a, g),
            And(a, b) | Or(a, b) | Implies(a, b) => contains(a, g) || contains(b, g),
            Forall(_, a) | Exists(_, a) | BoundedForall(_, _, _, a) | BoundedExists(_, _, _, a) => contains(a, g),
        }
}
