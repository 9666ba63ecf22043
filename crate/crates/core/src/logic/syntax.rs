//! Terms and formulas.
//!
//! Bounded quantifiers are first-class nodes rather than abbreviations, so the
//! bounded-only (Δ₀) fragment can be recognised by looking at the tree alone.
//! Modal operators share the same tree; the modal checkers reject first-order
//! nodes and the first-order tools reject modal ones.

use num_bigint::BigUint;
use num_traits::Zero as _;
use std::collections::BTreeSet;
use std::fmt;

/// The relation symbol used for equality.
pub const EQ: &str = "=";
/// The arithmetic order relation.
pub const LT: &str = "<";
/// Set membership.
pub const IN: &str = "in";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    /// A decimal numeral `n ≥ 1`; `0` is always [`Term::Zero`].
    Num(BigUint),
    /// An application of a declared function symbol (arity may be zero).
    App(String, Vec<Term>),
}

/// Which relation bounds a bounded quantifier: `x < t` or `x in t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    Lt,
    In,
}

impl BoundKind {
    pub fn relation(self) -> &'static str {
        match self {
            BoundKind::Lt => LT,
            BoundKind::In => IN,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    BoundedForall(String, BoundKind, Term, Box<Formula>),
    BoundedExists(String, BoundKind, Term, Box<Formula>),
    Necessarily(Box<Formula>),
    Possibly(Box<Formula>),
}

/// Universal or existential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

// ---------------------------------------------------------------------------
// Term helpers

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    /// The canonical numeral for `n`.
    pub fn numeral(n: BigUint) -> Term {
        if n.is_zero() {
            Term::Zero
        } else {
            Term::Num(n)
        }
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::Num(_) => 1,
            Term::Succ(t) => 1 + t.size(),
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::Num(_) => {}
            Term::Succ(t) => t.vars_into(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.vars_into(out);
                b.vars_into(out);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.vars_into(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    pub fn has_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Zero | Term::Num(_) => false,
            Term::Succ(t) => t.has_var(name),
            Term::Add(a, b) | Term::Mul(a, b) => a.has_var(name) || b.has_var(name),
            Term::App(_, args) => args.iter().any(|a| a.has_var(name)),
        }
    }

    /// Replaces every occurrence of `var` by `by`.
    pub fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Var(_) | Term::Zero | Term::Num(_) => self.clone(),
            Term::Succ(t) => Term::succ(t.substitute(var, by)),
            Term::Add(a, b) => Term::add(a.substitute(var, by), b.substitute(var, by)),
            Term::Mul(a, b) => Term::mul(a.substitute(var, by), b.substitute(var, by)),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(var, by)).collect())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Formula constructors

impl Formula {
    pub fn atom(rel: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(rel.into(), args)
    }

    /// A 0-ary relation atom, used as a propositional letter in modal formulas.
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into(), Vec::new())
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(EQ.into(), vec![a, b])
    }

    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::Atom(LT.into(), vec![a, b])
    }

    pub fn mem(a: Term, b: Term) -> Formula {
        Formula::Atom(IN.into(), vec![a, b])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `(a -> b) & (b -> a)`; there is no primitive biconditional.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn quant(q: Quantifier, v: impl Into<String>, body: Formula) -> Formula {
        match q {
            Quantifier::Forall => Formula::forall(v, body),
            Quantifier::Exists => Formula::exists(v, body),
        }
    }

    pub fn bounded_forall(v: impl Into<String>, kind: BoundKind, bound: Term, body: Formula) -> Formula {
        Formula::BoundedForall(v.into(), kind, bound, Box::new(body))
    }

    pub fn bounded_exists(v: impl Into<String>, kind: BoundKind, bound: Term, body: Formula) -> Formula {
        Formula::BoundedExists(v.into(), kind, bound, Box::new(body))
    }

    pub fn necessarily(f: Formula) -> Formula {
        Formula::Necessarily(Box::new(f))
    }

    pub fn possibly(f: Formula) -> Formula {
        Formula::Possibly(Box::new(f))
    }

    /// Conjunction of a list, `None` when empty.
    pub fn conjoin(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Disjunction of a list, `None` when empty.
    pub fn disjoin(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    /// Universal closure over the free variables, in sorted order.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, v| Formula::forall(v, acc))
    }
}

// ---------------------------------------------------------------------------
// Structural queries

impl Formula {
    /// Node count: every connective, quantifier, atom and term node counts one.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Not(f) | Formula::Necessarily(f) | Formula::Possibly(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::BoundedForall(_, _, t, f) | Formula::BoundedExists(_, _, t, f) => {
                1 + t.size() + f.size()
            }
        }
    }

    pub fn is_modal(&self) -> bool {
        match self {
            Formula::Atom(..) => false,
            Formula::Necessarily(_) | Formula::Possibly(_) => true,
            Formula::Not(f)
            | Formula::Forall(_, f)
            | Formula::Exists(_, f)
            | Formula::BoundedForall(_, _, _, f)
            | Formula::BoundedExists(_, _, _, f) => f.is_modal(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.is_modal() || b.is_modal(),
        }
    }

    /// True when the formula contains no unbounded quantifier (and no modality).
    pub fn is_bounded(&self) -> bool {
        match self {
            Formula::Atom(..) => true,
            Formula::Not(f) => f.is_bounded(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.is_bounded() && b.is_bounded(),
            Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::BoundedForall(_, _, _, f) | Formula::BoundedExists(_, _, _, f) => f.is_bounded(),
            Formula::Necessarily(_) | Formula::Possibly(_) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let term_vars = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| term_vars(t, bound, out)),
            Formula::Not(f) | Formula::Necessarily(f) | Formula::Possibly(f) => f.free_vars_into(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.free_vars_into(bound, out);
                bound.pop();
            }
            Formula::BoundedForall(v, _, t, f) | Formula::BoundedExists(v, _, t, f) => {
                term_vars(t, bound, out);
                bound.push(v.clone());
                f.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, name: &str) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().any(|t| t.has_var(name)),
            Formula::Not(f) | Formula::Necessarily(f) | Formula::Possibly(f) => f.has_free(name),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.has_free(name) || b.has_free(name),
            Formula::Forall(v, f) | Formula::Exists(v, f) => v != name && f.has_free(name),
            Formula::BoundedForall(v, _, t, f) | Formula::BoundedExists(v, _, t, f) => {
                t.has_var(name) || (v != name && f.has_free(name))
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.all_vars_into(&mut out);
        out
    }

    fn all_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.vars_into(out)),
            Formula::Not(f) | Formula::Necessarily(f) | Formula::Possibly(f) => f.all_vars_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.all_vars_into(out);
                b.all_vars_into(out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                out.insert(v.clone());
                f.all_vars_into(out);
            }
            Formula::BoundedForall(v, _, t, f) | Formula::BoundedExists(v, _, t, f) => {
                out.insert(v.clone());
                t.vars_into(out);
                f.all_vars_into(out);
            }
        }
    }

    /// Relation symbols with the arities they are used at.
    pub fn relations(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(r, args) = f {
                out.insert((r.clone(), args.len()));
            }
        });
        out
    }

    /// Pre-order traversal of formula nodes.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Atom(..) => {}
            Formula::Not(g)
            | Formula::Necessarily(g)
            | Formula::Possibly(g)
            | Formula::Forall(_, g)
            | Formula::Exists(_, g)
            | Formula::BoundedForall(_, _, _, g)
            | Formula::BoundedExists(_, _, _, g) => g.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Capture-avoiding substitution of `by` for the free occurrences of `var`.
    pub fn substitute(&self, var: &str, by: &Term) -> Formula {
        let incoming = by.vars();
        self.subst_inner(var, by, &incoming)
    }

    fn subst_inner(&self, var: &str, by: &Term, incoming: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Atom(r, args) => Formula::Atom(r.clone(), args.iter().map(|t| t.substitute(var, by)).collect()),
            Formula::Not(f) => Formula::not(f.subst_inner(var, by, incoming)),
            Formula::Necessarily(f) => Formula::necessarily(f.subst_inner(var, by, incoming)),
            Formula::Possibly(f) => Formula::possibly(f.subst_inner(var, by, incoming)),
            Formula::And(a, b) => Formula::and(a.subst_inner(var, by, incoming), b.subst_inner(var, by, incoming)),
            Formula::Or(a, b) => Formula::or(a.subst_inner(var, by, incoming), b.subst_inner(var, by, incoming)),
            Formula::Implies(a, b) => {
                Formula::implies(a.subst_inner(var, by, incoming), b.subst_inner(var, by, incoming))
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let q = if matches!(self, Formula::Forall(..)) { Quantifier::Forall } else { Quantifier::Exists };
                if v == var || !f.has_free(var) {
                    return self.clone();
                }
                let (v2, body) = self.freshen_binder(v, f, incoming);
                Formula::quant(q, v2, body.subst_inner(var, by, incoming))
            }
            Formula::BoundedForall(v, k, t, f) | Formula::BoundedExists(v, k, t, f) => {
                let universal = matches!(self, Formula::BoundedForall(..));
                let t2 = t.substitute(var, by);
                let (v2, body) = if v == var || !f.has_free(var) {
                    (v.clone(), (**f).clone())
                } else {
                    let (v2, body) = self.freshen_binder(v, f, incoming);
                    (v2, body.subst_inner(var, by, incoming))
                };
                if universal {
                    Formula::bounded_forall(v2, *k, t2, body)
                } else {
                    Formula::bounded_exists(v2, *k, t2, body)
                }
            }
        }
    }

    fn freshen_binder(&self, v: &str, body: &Formula, incoming: &BTreeSet<String>) -> (String, Formula) {
        if !incoming.contains(v) {
            return (v.to_string(), body.clone());
        }
        let mut avoid = self.all_vars();
        avoid.extend(incoming.iter().cloned());
        let fresh = fresh_var(v, &avoid);
        (fresh.clone(), body.substitute(v, &Term::Var(fresh)))
    }

    /// Renames the variable bound at the top of a quantifier node, leaving the
    /// meaning unchanged. Returns `None` for non-quantifier nodes.
    pub fn rename_bound(&self, to: &str) -> Option<Formula> {
        let t = Term::Var(to.to_string());
        Some(match self {
            Formula::Forall(v, f) => Formula::forall(to, f.substitute(v, &t)),
            Formula::Exists(v, f) => Formula::exists(to, f.substitute(v, &t)),
            Formula::BoundedForall(v, k, b, f) => Formula::bounded_forall(to, *k, b.clone(), f.substitute(v, &t)),
            Formula::BoundedExists(v, k, b, f) => Formula::bounded_exists(to, *k, b.clone(), f.substitute(v, &t)),
            _ => return None,
        })
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        crate::logic::canonical::alpha_eq(self, other)
    }
}

/// A variable name based on `base` that is not in `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem: String = base.trim_end_matches(|c: char| c.is_ascii_digit()).to_string();
    let stem = if stem.is_empty() { "v".to_string() } else { stem };
    (0..)
        .map(|i| format!("{stem}{i}"))
        .find(|c| !avoid.contains(c) && !crate::logic::parse::is_keyword(c))
        .expect("unbounded supply of names")
}

// ---------------------------------------------------------------------------
// Rendering

impl fmt::Display for Term {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(out, "{v}"),
            Term::Zero => write!(out, "0"),
            Term::Num(n) => write!(out, "{n}"),
            Term::Succ(t) => write!(out, "S({t})"),
            Term::Add(a, b) => write!(out, "({a}+{b})"),
            Term::Mul(a, b) => write!(out, "({a}*{b})"),
            Term::App(f, args) => {
                write!(out, "{f}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(out, ", ")?;
                    }
                    write!(out, "{a}")?;
                }
                write!(out, ")")
            }
        }
    }
}

// A formula "ends open" when its rightmost construct is a quantifier whose
// body the parser would extend over a following binary operator.
fn ends_open(f: &Formula) -> bool {
    match f {
        Formula::Forall(..) | Formula::Exists(..) | Formula::BoundedForall(..) | Formula::BoundedExists(..) => true,
        Formula::Not(g) | Formula::Necessarily(g) | Formula::Possibly(g) => ends_open(g),
        _ => false,
    }
}

fn is_infix(rel: &str) -> bool {
    rel == EQ || rel == LT || rel == IN
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |out: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| {
            if ends_open(a) {
                write!(out, "(({a}) {op} {b})")
            } else {
                write!(out, "({a} {op} {b})")
            }
        };
        match self {
            Formula::Atom(r, args) if is_infix(r) && args.len() == 2 => write!(out, "{} {r} {}", args[0], args[1]),
            Formula::Atom(r, args) if args.is_empty() => write!(out, "{r}"),
            Formula::Atom(r, args) => {
                write!(out, "{r}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(out, ", ")?;
                    }
                    write!(out, "{a}")?;
                }
                write!(out, ")")
            }
            Formula::Not(f) => match &**f {
                Formula::Atom(r, args) if is_infix(r) && args.len() == 2 => write!(out, "~({f})"),
                _ => write!(out, "~{f}"),
            },
            Formula::And(a, b) => binary(out, a, "&", b),
            Formula::Or(a, b) => binary(out, a, "|", b),
            Formula::Implies(a, b) => binary(out, a, "->", b),
            Formula::Forall(v, f) => write!(out, "forall {v}. {f}"),
            Formula::Exists(v, f) => write!(out, "exists {v}. {f}"),
            Formula::BoundedForall(v, k, t, f) => write!(out, "forall {v} {} {t}. {f}", k.relation()),
            Formula::BoundedExists(v, k, t, f) => write!(out, "exists {v} {} {t}. {f}", k.relation()),
            Formula::Necessarily(f) => match &**f {
                Formula::Atom(r, args) if is_infix(r) && args.len() == 2 => write!(out, "box ({f})"),
                _ => write!(out, "box {f}"),
            },
            Formula::Possibly(f) => match &**f {
                Formula::Atom(r, args) if is_infix(r) && args.len() == 2 => write!(out, "dia ({f})"),
                _ => write!(out, "dia {f}"),
            },
        }
    }
}
