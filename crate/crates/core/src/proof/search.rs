//! Size-ordered proof enumeration.
//!
//! Derivations are built bottom-up, one size level at a time, as judgments
//! `H ⊢ φ` with `H` a set of open assumptions. Each judgment is kept only
//! with its first derivation of least size, so a level is finite and the
//! levels up to `b` never change once built. Closed judgments become proofs
//! and are emitted per level in increasing proof code.
//!
//! Formulas and terms introduced from outside the premises (assumptions,
//! the extra disjunct of `∨I`, the conclusion of ex falso, the instance of
//! `∀E`, the term of `t = t`) range over a fixed variable pool.

use std::collections::{HashMap, VecDeque};
use std::ops::Deref;

use super::check::unfold_bounded;
use super::theory::Theory;
use super::{Proof, Rule, Step};
use crate::logic::canonical::canonical;
use crate::logic::coding::{encode, GodelCode};
use crate::logic::enumerate::Pool;
use crate::logic::syntax::{BoundKind, Formula, Term, EQ, IN, LT};

pub const DEFAULT_VARS: [&str; 2] = ["x", "y"];

type Fid = u32;
type Jid = usize;

#[derive(Clone, Debug)]
struct Judgment {
    fid: Fid,
    hyps: Vec<Fid>,
    rule: Rule,
    refs: Vec<Jid>,
}

struct Candidate {
    formula: Formula,
    hyps: Vec<Fid>,
    rule: Rule,
    refs: Vec<Jid>,
}

struct Engine<T> {
    theory: T,
    k: Option<usize>,
    pool: Pool,
    ids: HashMap<Formula, Fid>,
    reps: Vec<Formula>,
    judgments: Vec<Judgment>,
    index: HashMap<(Fid, Vec<Fid>), Jid>,
    levels: Vec<Vec<Jid>>,
    by_formula: HashMap<(usize, Fid), Vec<Jid>>,
    assume: HashMap<Fid, Jid>,
    /// `(level, instance, eigenvariable)` to existential judgments of that level.
    instances: HashMap<(usize, Fid, String), Vec<Jid>>,
    exhausted_axioms: bool,
}

fn union(a: &[Fid], b: &[Fid]) -> Vec<Fid> {
    let mut v: Vec<Fid> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn without(a: &[Fid], x: Fid) -> Vec<Fid> {
    a.iter().copied().filter(|&h| h != x).collect()
}

fn replace_term(t: &Term, s: &Term, by: &Term, n: &mut usize) -> Term {
    if t == s {
        *n += 1;
        return by.clone();
    }
    match t {
        Term::Succ(a) => Term::succ(replace_term(a, s, by, n)),
        Term::Add(a, b) => Term::add(replace_term(a, s, by, n), replace_term(b, s, by, n)),
        Term::Mul(a, b) => Term::mul(replace_term(a, s, by, n), replace_term(b, s, by, n)),
        Term::App(f, xs) => Term::App(f.clone(), xs.iter().map(|x| replace_term(x, s, by, n)).collect()),
        _ => t.clone(),
    }
}

/// Replaces every occurrence of `s` by `by` outside the scope of binders for
/// their variables; returns the result and the number of replacements.
pub(crate) fn replace_free(f: &Formula, s: &Term, by: &Term) -> (Formula, usize) {
    fn go(f: &Formula, s: &Term, by: &Term, n: &mut usize) -> Formula {
        let blocked = |v: &str| s.has_var(v) || by.has_var(v);
        match f {
            Formula::Atom(r, xs) => Formula::Atom(r.clone(), xs.iter().map(|x| replace_term(x, s, by, n)).collect()),
            Formula::Not(g) => Formula::not(go(g, s, by, n)),
            Formula::Necessarily(g) => Formula::necessarily(go(g, s, by, n)),
            Formula::Possibly(g) => Formula::possibly(go(g, s, by, n)),
            Formula::And(a, b) => Formula::and(go(a, s, by, n), go(b, s, by, n)),
            Formula::Or(a, b) => Formula::or(go(a, s, by, n), go(b, s, by, n)),
            Formula::Implies(a, b) => Formula::implies(go(a, s, by, n), go(b, s, by, n)),
            Formula::Forall(v, g) if !blocked(v) => Formula::forall(v.clone(), go(g, s, by, n)),
            Formula::Exists(v, g) if !blocked(v) => Formula::exists(v.clone(), go(g, s, by, n)),
            Formula::BoundedForall(v, k, t, g) => {
                let t = replace_term(t, s, by, n);
                let g = if blocked(v) { (**g).clone() } else { go(g, s, by, n) };
                Formula::bounded_forall(v.clone(), *k, t, g)
            }
            Formula::BoundedExists(v, k, t, g) => {
                let t = replace_term(t, s, by, n);
                let g = if blocked(v) { (**g).clone() } else { go(g, s, by, n) };
                Formula::bounded_exists(v.clone(), *k, t, g)
            }
            _ => f.clone(),
        }
    }
    let mut n = 0;
    let out = go(f, s, by, &mut n);
    (out, n)
}

fn subterms(f: &Formula, out: &mut Vec<Term>) {
    fn term(t: &Term, out: &mut Vec<Term>) {
        if !out.contains(t) {
            out.push(t.clone());
        }
        match t {
            Term::Succ(a) => term(a, out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                term(a, out);
                term(b, out);
            }
            Term::App(_, xs) => xs.iter().for_each(|x| term(x, out)),
            _ => {}
        }
    }
    match f {
        Formula::Atom(_, xs) => xs.iter().for_each(|x| term(x, out)),
        Formula::Not(g) | Formula::Necessarily(g) | Formula::Possibly(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
            subterms(g, out)
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            subterms(a, out);
            subterms(b, out);
        }
        Formula::BoundedForall(_, _, t, g) | Formula::BoundedExists(_, _, t, g) => {
            term(t, out);
            subterms(g, out);
        }
    }
}

/// The inverse of bounded-quantifier unfolding at the root.
fn fold_bounded(f: &Formula) -> Option<Formula> {
    let guard = |g: &Formula, v: &str| match g {
        Formula::Atom(r, xs) if xs.len() == 2 && xs[0] == Term::var(v) && !xs[1].has_var(v) => {
            let kind = match r.as_str() {
                LT => BoundKind::Lt,
                IN => BoundKind::In,
                _ => return None,
            };
            Some((kind, xs[1].clone()))
        }
        _ => None,
    };
    match f {
        Formula::Forall(v, body) => match &**body {
            Formula::Implies(g, rest) => guard(g, v).map(|(k, t)| Formula::bounded_forall(v.clone(), k, t, (**rest).clone())),
            _ => None,
        },
        Formula::Exists(v, body) => match &**body {
            Formula::And(g, rest) => guard(g, v).map(|(k, t)| Formula::bounded_exists(v.clone(), k, t, (**rest).clone())),
            _ => None,
        },
        _ => None,
    }
}


/// Outcome of building one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Built {
    /// Candidate derivations examined, duplicates included.
    pub work: usize,
    /// False when the work limit stopped the level early.
    pub complete: bool,
}

fn cand(formula: Formula, hyps: Vec<Fid>, rule: Rule, refs: Vec<Jid>) -> Candidate {
    Candidate { formula, hyps, rule, refs }
}

impl<T: Deref<Target = Theory>> Engine<T> {
    fn new(theory: T, k: Option<usize>, vars: &[&str]) -> Self {
        let pool = Pool::new(&theory.signature, vars);
        Engine {
            theory,
            k,
            pool,
            ids: HashMap::new(),
            reps: Vec::new(),
            judgments: Vec::new(),
            index: HashMap::new(),
            levels: vec![Vec::new()],
            by_formula: HashMap::new(),
            assume: HashMap::new(),
            instances: HashMap::new(),
            exhausted_axioms: false,
        }
    }

    fn intern(&mut self, f: &Formula) -> Fid {
        let c = canonical(f);
        if let Some(&id) = self.ids.get(&c) {
            return id;
        }
        let id = self.reps.len() as Fid;
        self.reps.push(f.clone());
        self.ids.insert(c, id);
        id
    }

    fn lookup(&self, f: &Formula) -> Option<Fid> {
        self.ids.get(&canonical(f)).copied()
    }

    fn formula(&self, j: Jid) -> &Formula {
        &self.reps[self.judgments[j].fid as usize]
    }

    fn level(&self, s: usize) -> &[Jid] {
        self.levels.get(s).map(Vec::as_slice).unwrap_or(&[])
    }

    fn with_formula(&self, level: usize, fid: Fid) -> &[Jid] {
        self.by_formula.get(&(level, fid)).map(Vec::as_slice).unwrap_or(&[])
    }

    fn vars(&self) -> Vec<String> {
        self.pool.vars().to_vec()
    }

    /// Builds level `s`; lower levels must already exist. Stops once more
    /// than `limit` candidates have been examined.
    fn build(&mut self, s: usize, limit: Option<usize>) -> Built {
        debug_assert_eq!(self.levels.len(), s);
        self.levels.push(Vec::new());
        let pf: Vec<Vec<Formula>> = (0..s).map(|i| self.pool.formulas(i).to_vec()).collect();
        let pt: Vec<Vec<Term>> = (0..s).map(|i| self.pool.terms(i).to_vec()).collect();
        let mut out = self.axioms(s);
        for a in &pf[s - 1] {
            out.push(cand(a.clone(), Vec::new(), Rule::Assume, Vec::new()));
        }
        if self.theory.signature.has_relation(EQ) {
            for t in &pt[s - 1] {
                out.push(cand(Formula::eq(t.clone(), t.clone()), Vec::new(), Rule::EqRefl, Vec::new()));
            }
        }
        let mut work = 0;
        let over = |work: usize| limit.is_some_and(|l| work > l);
        work += out.len();
        for c in out.drain(..) {
            self.insert(c, s);
        }
        for a in 1..s {
            for idx in 0..self.levels[a].len() {
                if over(work) {
                    return Built { work, complete: false };
                }
                let j = self.levels[a][idx];
                self.premise_rules(s, a, j, &pf, &pt, &mut out);
                work += out.len();
                for c in out.drain(..) {
                    self.insert(c, s);
                }
            }
        }
        Built { work, complete: !over(work) }
    }

    fn axioms(&mut self, s: usize) -> Vec<Candidate> {
        let mut out = Vec::new();
        if self.exhausted_axioms || s > 40 {
            return out;
        }
        let (lo, hi) = ((1usize << (s - 1)) - 1, (1usize << s) - 1);
        for i in lo..hi {
            if self.k.is_some_and(|k| i >= k) {
                self.exhausted_axioms = true;
                break;
            }
            match self.theory.axiom(i) {
                Some(a) => out.push(cand(a, Vec::new(), Rule::Axiom(i), Vec::new())),
                None => {
                    self.exhausted_axioms = true;
                    break;
                }
            }
        }
        out
    }

    fn insert(&mut self, c: Candidate, s: usize) {
        let fid = self.intern(&c.formula);
        let hyps = if c.rule == Rule::Assume { vec![fid] } else { c.hyps };
        let key = (fid, hyps);
        if self.index.contains_key(&key) {
            return;
        }
        let jid = self.judgments.len();
        self.index.insert(key.clone(), jid);
        self.levels[s].push(jid);
        self.by_formula.entry((s, fid)).or_default().push(jid);
        if c.rule == Rule::Assume {
            self.assume.insert(fid, jid);
        }
        self.judgments.push(Judgment { fid, hyps: key.1, rule: c.rule, refs: c.refs });
        if let Formula::Exists(x, body) = &self.reps[fid as usize] {
            let (x, body) = (x.clone(), (**body).clone());
            for y in self.vars() {
                if y == x || !body.has_free(&y) {
                    let inst = self.intern(&body.substitute(&x, &Term::Var(y.clone())));
                    self.instances.entry((s, inst, y)).or_default().push(jid);
                }
            }
        }
    }

    /// Every rule instance at level `s` whose first premise is `j`, of level `a`.
    fn premise_rules(&self, s: usize, a: usize, j: Jid, pf: &[Vec<Formula>], pt: &[Vec<Term>], out: &mut Vec<Candidate>) {
        if a == s - 1 {
            self.unary(j, out);
        }
        self.forall_elim(s, a, j, pt, out);
        if a + 1 < s {
            self.binary(s - 1 - a, j, out);
        }
        self.with_pool_formula(s, a, j, pf, out);
        self.or_elim(s, a, j, out);
    }
}

impl<T: Deref<Target = Theory>> Engine<T> {
    fn unary(&self, j: Jid, out: &mut Vec<Candidate>) {
        let vars = self.vars();
        let jd = &self.judgments[j];
        let f = self.formula(j);
        let h = || jd.hyps.clone();
        if let Formula::And(a, b) = f {
            out.push(cand((**a).clone(), h(), Rule::AndElimLeft, vec![j]));
            out.push(cand((**b).clone(), h(), Rule::AndElimRight, vec![j]));
        }
        if let Some(u) = unfold_bounded(f).or_else(|| fold_bounded(f)) {
            out.push(cand(u, h(), Rule::BoundedDef, vec![j]));
        }
        for y in &vars {
            if f.has_free(y) && !jd.hyps.iter().any(|&h| self.reps[h as usize].has_free(y)) {
                out.push(cand(Formula::forall(y.clone(), f.clone()), h(), Rule::ForallIntro, vec![j]));
            }
        }
        let all = f.all_vars();
        let mut subs = Vec::new();
        for x in &vars {
            if f.has_free(x) {
                out.push(cand(Formula::exists(x.clone(), f.clone()), h(), Rule::ExistsIntro, vec![j]));
            } else if !all.contains(x) {
                if subs.is_empty() {
                    subterms(f, &mut subs);
                }
                for t in &subs {
                    let (g, n) = replace_free(f, t, &Term::Var(x.clone()));
                    if n > 0 {
                        out.push(cand(Formula::exists(x.clone(), g), h(), Rule::ExistsIntro, vec![j]));
                    }
                }
            }
        }
        for &hyp in &jd.hyps {
            let imp = Formula::implies(self.reps[hyp as usize].clone(), f.clone());
            out.push(cand(imp, without(&jd.hyps, hyp), Rule::ImpIntro, vec![self.assume[&hyp], j]));
        }
    }

    fn forall_elim(&self, s: usize, a: usize, j: Jid, pt: &[Vec<Term>], out: &mut Vec<Candidate>) {
        let jd = &self.judgments[j];
        let Formula::Forall(x, body) = self.formula(j) else { return };
        if body.has_free(x) {
            for t in &pt[s - 1 - a] {
                out.push(cand(body.substitute(x, t), jd.hyps.clone(), Rule::ForallElim, vec![j]));
            }
        } else if a == s - 1 {
            out.push(cand((**body).clone(), jd.hyps.clone(), Rule::ForallElim, vec![j]));
        }
    }

    fn binary(&self, b: usize, j1: Jid, out: &mut Vec<Candidate>) {
        let g1 = &self.judgments[j1];
        let f1 = self.formula(j1);
        for &j2 in self.level(b) {
            let g2 = &self.judgments[j2];
            out.push(cand(Formula::and(f1.clone(), self.formula(j2).clone()), union(&g1.hyps, &g2.hyps), Rule::AndIntro, vec![j1, j2]));
        }
        if let Formula::Implies(p, q) = f1 {
            if let Some(fp) = self.lookup(p) {
                for &j2 in self.with_formula(b, fp) {
                    let hyps = union(&g1.hyps, &self.judgments[j2].hyps);
                    out.push(cand((**q).clone(), hyps, Rule::ImpElim, vec![j1, j2]));
                }
            }
        }
        if let Formula::Atom(r, xs) = f1 {
            if r == EQ && xs.len() == 2 && xs[0] != xs[1] {
                for &j2 in self.level(b) {
                    let (g, n) = replace_free(self.formula(j2), &xs[0], &xs[1]);
                    if n > 0 {
                        let hyps = union(&g1.hyps, &self.judgments[j2].hyps);
                        out.push(cand(g, hyps, Rule::EqSubst, vec![j1, j2]));
                    }
                }
            }
        }
        if let Some(fneg) = self.lookup(&Formula::not(f1.clone())) {
            for &j2 in self.with_formula(b, fneg) {
                let hyps = union(&g1.hyps, &self.judgments[j2].hyps);
                for &h in &hyps {
                    let assumed = &self.reps[h as usize];
                    let refs = vec![self.assume[&h], j1, j2];
                    out.push(cand(Formula::not(assumed.clone()), without(&hyps, h), Rule::NotIntro, refs.clone()));
                    if let Formula::Not(d) = assumed {
                        out.push(cand((**d).clone(), without(&hyps, h), Rule::Raa, refs));
                    }
                }
            }
        }
        // ∃E with j1 as the derivation from the instance assumption.
        for &h in &g1.hyps {
            for y in &self.vars() {
                if !self.reps[h as usize].has_free(y) || f1.has_free(y) {
                    continue;
                }
                let rest = without(&g1.hyps, h);
                if rest.iter().any(|&o| self.reps[o as usize].has_free(y)) {
                    continue;
                }
                let Some(exs) = self.instances.get(&(b, h, y.clone())) else { continue };
                for &j0 in exs {
                    if self.formula(j0).has_free(y) {
                        continue;
                    }
                    let hyps = union(&self.judgments[j0].hyps, &rest);
                    out.push(cand(f1.clone(), hyps, Rule::ExistsElim, vec![j0, self.assume[&h], j1]));
                }
            }
        }
    }

    /// Rules whose conclusion brings in a pool formula: `∨I`, vacuous `→I`
    /// and ex falso.
    fn with_pool_formula(&self, s: usize, a: usize, j: Jid, pf: &[Vec<Formula>], out: &mut Vec<Candidate>) {
        let jd = &self.judgments[j];
        let f = self.formula(j);
        for e in &pf[s - 1 - a] {
            out.push(cand(Formula::or(f.clone(), e.clone()), jd.hyps.clone(), Rule::OrIntroLeft, vec![j]));
            out.push(cand(Formula::or(e.clone(), f.clone()), jd.hyps.clone(), Rule::OrIntroRight, vec![j]));
        }
        if a + 2 <= s {
            for e in &pf[s - 2 - a] {
                let Some(fe) = self.lookup(e) else { continue };
                if jd.hyps.contains(&fe) {
                    continue;
                }
                let Some(&aj) = self.assume.get(&fe) else { continue };
                out.push(cand(Formula::implies(e.clone(), f.clone()), jd.hyps.clone(), Rule::ImpIntro, vec![aj, j]));
            }
        }
        let Some(fneg) = self.lookup(&Formula::not(f.clone())) else { return };
        for b in 1..s.saturating_sub(a) {
            let goals = &pf[s - 1 - a - b];
            if goals.is_empty() {
                continue;
            }
            for &j2 in self.with_formula(b, fneg) {
                let hyps = union(&jd.hyps, &self.judgments[j2].hyps);
                for g in goals {
                    out.push(cand(g.clone(), hyps.clone(), Rule::ExFalso, vec![j, j2]));
                }
            }
        }
    }

    fn or_elim(&self, s: usize, a: usize, j0: Jid, out: &mut Vec<Candidate>) {
        let g0 = &self.judgments[j0];
        let Formula::Or(l, r) = self.formula(j0) else { return };
        let (Some(fl), Some(fr)) = (self.lookup(l), self.lookup(r)) else { return };
        let (Some(&al), Some(&ar)) = (self.assume.get(&fl), self.assume.get(&fr)) else { return };
        for b in 1..s.saturating_sub(a + 1) {
            let c = s - 1 - a - b;
            for &j1 in self.level(b) {
                let g1 = &self.judgments[j1];
                if !g1.hyps.contains(&fl) {
                    continue;
                }
                for &j2 in self.with_formula(c, g1.fid) {
                    let g2 = &self.judgments[j2];
                    if !g2.hyps.contains(&fr) {
                        continue;
                    }
                    let hyps = union(&union(&g0.hyps, &without(&g1.hyps, fl)), &without(&g2.hyps, fr));
                    out.push(cand(self.formula(j1).clone(), hyps, Rule::OrElim, vec![j0, al, j1, ar, j2]));
                }
            }
        }
    }

    fn proof(&self, j: Jid) -> Proof {
        fn emit<T: Deref<Target = Theory>>(e: &Engine<T>, j: Jid, steps: &mut Vec<Step>, memo: &mut HashMap<Jid, usize>) -> usize {
            if let Some(&i) = memo.get(&j) {
                return i;
            }
            let jd = &e.judgments[j];
            let refs = jd.refs.iter().map(|&r| emit(e, r, steps, memo)).collect();
            steps.push(Step::new(jd.rule, refs, e.formula(j).clone()));
            memo.insert(j, steps.len() - 1);
            steps.len() - 1
        }
        let mut steps = Vec::new();
        emit(self, j, &mut steps, &mut HashMap::new());
        Proof::from_steps(steps)
    }
}

/// A proof together with its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizedProof {
    pub size: usize,
    pub proof: Proof,
}

/// The closed proofs of each size in turn, in code order within a size.
pub struct ProofStream<T: Deref<Target = Theory>> {
    engine: Engine<T>,
    max_size: Option<usize>,
    work_limit: Option<usize>,
    work: usize,
    truncated: bool,
    queue: VecDeque<SizedProof>,
}

impl<T: Deref<Target = Theory>> ProofStream<T> {
    /// Proofs citing only axioms below `k` (all axioms when `None`), up to
    /// `max_size` (unbounded when `None`).
    pub fn new(theory: T, k: Option<usize>, max_size: Option<usize>) -> Self {
        Self::with_vars(theory, k, max_size, &DEFAULT_VARS)
    }

    pub fn with_vars(theory: T, k: Option<usize>, max_size: Option<usize>, vars: &[&str]) -> Self {
        ProofStream {
            engine: Engine::new(theory, k, vars),
            max_size,
            work_limit: None,
            work: 0,
            truncated: false,
            queue: VecDeque::new(),
        }
    }

    /// Ends the stream once `limit` candidate derivations have been examined.
    pub fn with_work_limit(mut self, limit: usize) -> Self {
        self.work_limit = Some(limit);
        self
    }

    /// The size level most recently built.
    pub fn level(&self) -> usize {
        self.engine.levels.len() - 1
    }

    /// Judgments derived so far, open ones included.
    pub fn judgments(&self) -> usize {
        self.engine.judgments.len()
    }

    /// Candidate derivations examined so far.
    pub fn work(&self) -> usize {
        self.work
    }

    /// Whether the work limit cut the stream short.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn next_sized(&mut self) -> Option<SizedProof> {
        while self.queue.is_empty() {
            let s = self.level() + 1;
            if self.truncated || self.max_size.is_some_and(|m| s > m) {
                return None;
            }
            let remaining = self.work_limit.map(|l| l.saturating_sub(self.work));
            let built = self.engine.build(s, remaining);
            self.work += built.work;
            if !built.complete {
                self.truncated = true;
                return None;
            }
            let engine = &self.engine;
            let mut closed: Vec<(GodelCode, Proof)> = engine.levels[s]
                .iter()
                .filter(|&&j| engine.judgments[j].hyps.is_empty())
                .map(|&j| {
                    let p = engine.proof(j);
                    (encode(&p), p)
                })
                .collect();
            closed.sort_by(|a, b| a.0.cmp(&b.0));
            self.queue.extend(closed.into_iter().map(|(_, proof)| SizedProof { size: s, proof }));
        }
        self.queue.pop_front()
    }
}

impl<T: Deref<Target = Theory>> Iterator for ProofStream<T> {
    type Item = Proof;

    fn next(&mut self) -> Option<Proof> {
        self.next_sized().map(|s| s.proof)
    }
}

/// The closed proofs of size at most `size_budget` citing axioms below `k`.
pub fn enumerate_proofs(theory: &Theory, k: usize, size_budget: usize) -> ProofStream<&Theory> {
    ProofStream::new(theory, Some(k), Some(size_budget))
}

/// The first enumerated proof of `goal`, if any lies within the budget.
pub fn is_provable_within(theory: &Theory, k: usize, goal: &Formula, size_budget: usize) -> Option<Proof> {
    let target = canonical(goal);
    enumerate_proofs(theory, k, size_budget).find(|p| canonical(&p.conclusion) == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse_any;
    use crate::proof::check::analyze;

    #[test]
    fn budget_one_cites_a_single_axiom() {
        let pa = Theory::pa();
        let ps: Vec<Proof> = enumerate_proofs(&pa, 10, 1).collect();
        assert!(ps.iter().all(|p| p.steps.len() == 1 && matches!(p.steps[0].rule, Rule::Axiom(_))));
    }

    #[test]
    fn small_identities() {
        let pa = Theory::pa();
        let goal = parse_any("S(0) = S(0)").unwrap();
        assert!(enumerate_proofs(&pa, 5, 7).any(|p| p.conclusion == goal));
        let p = is_provable_within(&pa, 0, &parse_any("forall x. x = x").unwrap(), 4).unwrap();
        assert_eq!(analyze(&p, &pa, 0).unwrap().size, 3);
        assert!(is_provable_within(&pa, 9, &parse_any("0 = S(0)").unwrap(), 6).is_none());
    }

    #[test]
    fn prefix_monotone_and_deterministic() {
        let zf = Theory::zf();
        let a: Vec<Proof> = enumerate_proofs(&zf, 4, 5).collect();
        let b: Vec<Proof> = enumerate_proofs(&zf, 4, 6).collect();
        assert_eq!(&b[..a.len()], &a[..]);
        let c: Vec<Proof> = enumerate_proofs(&zf, 4, 6).collect();
        assert_eq!(b, c);
    }

    #[test]
    fn code_order_within_level() {
        let pa = Theory::pa();
        let mut st = ProofStream::new(&pa, Some(3), Some(6));
        let mut prev: Option<(usize, GodelCode)> = None;
        while let Some(sp) = st.next_sized() {
            let key = (sp.size, encode(&sp.proof));
            if let Some(p) = &prev {
                assert!(*p < key);
            }
            prev = Some(key);
        }
    }

    #[test]
    fn work_limit_truncates() {
        let pa = Theory::pa();
        let mut st = ProofStream::new(&pa, None, None).with_work_limit(500);
        while st.next().is_some() {}
        assert!(st.truncated());
        assert!(st.work() > 500);
    }
}
