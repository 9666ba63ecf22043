//! Parser for the ASCII formula grammar.
//!
//! ```text
//! formula  := imp
//! imp      := or ( ("->" | "<->") imp )?
//! or       := and ( "|" and )*
//! and      := unary ( "&" unary )*
//! unary    := "~" unary | ("box" | "dia") unary
//!           | ("forall" | "exists") var ( ("<" | "in") term )? "." formula
//!           | "(" formula ")" | atom
//! atom     := term ("=" | "<" | "in") term | Rel ( "(" terms ")" )?
//! term     := prod ( "+" prod )*
//! prod     := base ( "*" base )*
//! base     := "0" | digits | "S" "(" term ")" | fun "(" terms ")" | var | "(" term ")"
//! ```
//!
//! Variables and function names are lowercase identifiers (a function name is
//! always followed by `(`); relation names start with an uppercase letter,
//! except for the reserved successor `S`.

use num_bigint::BigUint;
use thiserror::Error;

use super::signature::{Signature, SymbolKind};
use super::syntax::{BoundKind, Formula, Term, EQ, IN, LT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("arity mismatch for `{name}` at {pos}: expected {expected}, found {found}")]
    Arity { name: String, pos: usize, expected: usize, found: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::UnknownSymbol { pos, .. } | ParseError::Arity { pos, .. } => *pos,
        }
    }
}

const KEYWORDS: [&str; 5] = ["forall", "exists", "in", "box", "dia"];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Whether `s` is a legal variable name.
pub fn is_variable_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
        && !is_keyword(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(BigUint),
    Sym(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    const SYMS: [&str; 13] = ["<->", "->", "(", ")", ",", ".", "~", "&", "|", "=", "<", "+", "*"];
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &text[start..i];
            if digits.len() > 1 && digits.starts_with('0') {
                return Err(ParseError::Syntax { pos: start, msg: "numeral with leading zero".into() });
            }
            let n: BigUint = digits.parse().expect("digits");
            out.push((Tok::Number(n), start));
            continue;
        }
        for s in SYMS {
            if text[i..].starts_with(s) {
                out.push((Tok::Sym(s), i));
                i += s.len();
                continue 'outer;
            }
        }
        return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character `{}`", c as char) });
    }
    Ok(out)
}

/// Parser configuration.
#[derive(Clone, Debug)]
pub struct Parser<'s> {
    sig: &'s Signature,
    free_props: bool,
    free_symbols: bool,
}

impl<'s> Parser<'s> {
    pub fn new(sig: &'s Signature) -> Self {
        Parser { sig, free_props: false, free_symbols: false }
    }

    /// Accept any uppercase identifier without arguments as a propositional
    /// letter, whether or not the signature declares it.
    pub fn with_free_props(mut self) -> Self {
        self.free_props = true;
        self
    }

    /// Accept every relation and function symbol at whatever arity it is
    /// used with. Used when reading serialised objects back.
    pub fn with_free_symbols(mut self) -> Self {
        self.free_props = true;
        self.free_symbols = true;
        self
    }

    pub fn parse(&self, text: &str) -> Result<Formula, ParseError> {
        let toks = tokenize(text)?;
        let mut st = State { toks: &toks, pos: 0, end: text.len(), cfg: self };
        let f = st.formula()?;
        if st.pos < toks.len() {
            return Err(st.syntax("unexpected trailing input"));
        }
        Ok(f)
    }

    pub fn parse_term(&self, text: &str) -> Result<Term, ParseError> {
        let toks = tokenize(text)?;
        let mut st = State { toks: &toks, pos: 0, end: text.len(), cfg: self };
        let t = st.term()?;
        if st.pos < toks.len() {
            return Err(st.syntax("unexpected trailing input"));
        }
        Ok(t)
    }
}

/// Parses a formula over `sig`.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    Parser::new(sig).parse(text)
}

/// Parses without a fixed vocabulary: `=`, `<`, `in`, `0`, `S`, `+`, `*`,
/// numerals and any other symbol are all accepted.
pub fn parse_any(text: &str) -> Result<Formula, ParseError> {
    let sig = Signature::full();
    Parser::new(&sig).with_free_symbols().parse(text)
}

/// Parses a propositional modal formula; propositions are uppercase letters.
pub fn parse_modal(text: &str) -> Result<Formula, ParseError> {
    let sig = Signature::empty("MODAL");
    let f = Parser::new(&sig).with_free_props().parse(text)?;
    Ok(f)
}

struct State<'a, 's> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    cfg: &'a Parser<'s>,
}

impl State<'_, '_> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.offset(), msg: msg.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(t)) if *t == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{s}`")))
        }
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(t)) if t == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat_sym("->") {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        if self.eat_sym("<->") {
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat_sym("|") {
            let rhs = self.and()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat_sym("&") {
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(v)) if is_variable_name(v) && !matches!(self.peek_at(1), Some(Tok::Sym("("))) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.syntax("expected a variable")),
        }
    }

    fn require_relation(&self, name: &str, arity: usize, pos: usize) -> Result<(), ParseError> {
        match self.cfg.sig.lookup(SymbolKind::Relation, name) {
            Some(a) if a == arity => Ok(()),
            Some(a) => Err(ParseError::Arity { name: name.into(), pos, expected: a, found: arity }),
            None if self.cfg.free_symbols || (arity == 0 && self.cfg.free_props) => Ok(()),
            None => Err(ParseError::UnknownSymbol { name: name.into(), pos }),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat_sym("~") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat_kw("box") {
            return Ok(Formula::necessarily(self.unary()?));
        }
        if self.eat_kw("dia") {
            return Ok(Formula::possibly(self.unary()?));
        }
        let universal = matches!(self.peek(), Some(Tok::Ident(k)) if k == "forall");
        if universal || matches!(self.peek(), Some(Tok::Ident(k)) if k == "exists") {
            self.pos += 1;
            let v = self.variable()?;
            let bound_pos = self.offset();
            let bound = if self.eat_sym("<") {
                Some(BoundKind::Lt)
            } else if self.eat_kw("in") {
                Some(BoundKind::In)
            } else {
                None
            };
            let bound = match bound {
                Some(kind) => {
                    self.require_relation(kind.relation(), 2, bound_pos)?;
                    Some((kind, self.term()?))
                }
                None => None,
            };
            self.expect_sym(".")?;
            let body = self.formula()?;
            return Ok(match (universal, bound) {
                (true, None) => Formula::forall(v, body),
                (false, None) => Formula::exists(v, body),
                (true, Some((k, t))) => Formula::bounded_forall(v, k, t, body),
                (false, Some((k, t))) => Formula::bounded_exists(v, k, t, body),
            });
        }
        if matches!(self.peek(), Some(Tok::Sym("("))) {
            // Either a parenthesised formula or an atom whose left term is
            // parenthesised; try the formula reading first.
            let save = self.pos;
            self.pos += 1;
            match self.formula().and_then(|f| self.expect_sym(")").map(|_| f)) {
                Ok(f) => {
                    // `(x+y) = z` parses `(x+y)` as garbage before failing, so
                    // a successful formula reading followed by a relation
                    // operator is impossible; keep it.
                    return Ok(f);
                }
                Err(e1) => {
                    self.pos = save;
                    return self.atom().map_err(|e2| if e2.position() >= e1.position() { e2 } else { e1 });
                }
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        if let Some(Tok::Ident(name)) = self.peek() {
            if name.starts_with(|c: char| c.is_ascii_uppercase()) && name != "S" {
                let name = name.clone();
                let pos = self.offset();
                self.pos += 1;
                let args = if self.eat_sym("(") { self.term_list()? } else { Vec::new() };
                self.require_relation(&name, args.len(), pos)?;
                return Ok(Formula::Atom(name, args));
            }
        }
        let lhs = self.term()?;
        let pos = self.offset();
        let rel = if self.eat_sym("=") {
            EQ
        } else if self.eat_sym("<") {
            LT
        } else if self.eat_kw("in") {
            IN
        } else {
            return Err(self.syntax("expected `=`, `<` or `in`"));
        };
        self.require_relation(rel, 2, pos)?;
        let rhs = self.term()?;
        Ok(Formula::Atom(rel.into(), vec![lhs, rhs]))
    }

    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if self.eat_sym(")") {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat_sym(")") {
                return Ok(args);
            }
            self.expect_sym(",")?;
        }
    }

    fn require_function(&self, name: &str, arity: usize, pos: usize) -> Result<(), ParseError> {
        let kind = if arity == 0 && self.cfg.sig.lookup(SymbolKind::Constant, name).is_some() {
            SymbolKind::Constant
        } else {
            SymbolKind::Function
        };
        match self.cfg.sig.lookup(kind, name) {
            Some(a) if a == arity => Ok(()),
            Some(a) => Err(ParseError::Arity { name: name.into(), pos, expected: a, found: arity }),
            None if self.cfg.free_symbols => Ok(()),
            None => Err(ParseError::UnknownSymbol { name: name.into(), pos }),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.product()?;
        loop {
            let pos = self.offset();
            if !self.eat_sym("+") {
                return Ok(acc);
            }
            self.require_function("+", 2, pos)?;
            acc = Term::add(acc, self.product()?);
        }
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.base()?;
        loop {
            let pos = self.offset();
            if !self.eat_sym("*") {
                return Ok(acc);
            }
            self.require_function("*", 2, pos)?;
            acc = Term::mul(acc, self.base()?);
        }
    }

    fn base(&mut self) -> Result<Term, ParseError> {
        let pos = self.offset();
        match self.peek().cloned() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                if num_traits::Zero::is_zero(&n) {
                    self.require_function("0", 0, pos)?;
                    Ok(Term::Zero)
                } else if self.cfg.sig.numerals || self.cfg.free_symbols {
                    Ok(Term::Num(n))
                } else {
                    Err(ParseError::UnknownSymbol { name: n.to_string(), pos })
                }
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect_sym(")")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) if name == "S" => {
                self.pos += 1;
                self.expect_sym("(")?;
                let args = self.term_list()?;
                self.require_function("S", args.len(), pos)?;
                Ok(Term::succ(args.into_iter().next().expect("arity checked")))
            }
            Some(Tok::Ident(name)) if matches!(self.peek_at(1), Some(Tok::Sym("("))) => {
                if !name.starts_with(|c: char| c.is_ascii_lowercase()) || is_keyword(&name) {
                    return Err(self.syntax("expected a term"));
                }
                self.pos += 2;
                let args = self.term_list()?;
                self.require_function(&name, args.len(), pos)?;
                Ok(Term::App(name, args))
            }
            Some(Tok::Ident(name)) if is_variable_name(&name) => {
                self.pos += 1;
                Ok(Term::Var(name))
            }
            _ => Err(self.syntax("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arith(s: &str) -> Formula {
        parse(s, &Signature::arith()).unwrap()
    }

    #[test]
    fn exists_x_equals_zero() {
        assert_eq!(arith("exists x. x = 0"), Formula::exists("x", Formula::eq(Term::var("x"), Term::Zero)));
    }

    #[test]
    fn emptiness_clause_over_set() {
        let f = parse("forall y. ~(y in x)", &Signature::set()).unwrap();
        assert_eq!(f, Formula::forall("y", Formula::not(Formula::mem(Term::var("y"), Term::var("x")))));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["x".to_string()]);
    }

    #[test]
    fn bounded_universal_node() {
        let f = arith("forall x < S(0). x = 0");
        assert_eq!(
            f,
            Formula::bounded_forall("x", BoundKind::Lt, Term::succ(Term::Zero), Formula::eq(Term::var("x"), Term::Zero))
        );
    }

    #[test]
    fn parenthesised_terms_on_the_left() {
        let f = arith("(x+y) = (y*x)");
        assert_eq!(
            f,
            Formula::eq(Term::add(Term::var("x"), Term::var("y")), Term::mul(Term::var("y"), Term::var("x")))
        );
        let g = arith("((x+y) = 0 & x < y)");
        assert!(matches!(g, Formula::And(..)));
    }

    #[test]
    fn membership_is_unknown_in_arithmetic() {
        let e = parse("x in y", &Signature::arith()).unwrap_err();
        assert!(matches!(e, ParseError::UnknownSymbol { ref name, .. } if name == "in"));
    }

    #[test]
    fn arity_errors_are_reported() {
        let e = parse("S(x, y) = 0", &Signature::arith()).unwrap_err();
        assert!(matches!(e, ParseError::Arity { expected: 1, found: 2, .. }));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse("exists x x = 0", &Signature::arith()).unwrap_err();
        assert_eq!(e, ParseError::Syntax { pos: 9, msg: "expected `.`".into() });
        assert!(parse("(x = 0", &Signature::arith()).is_err());
        assert!(parse("x = ", &Signature::arith()).is_err());
    }

    #[test]
    fn keywords_are_not_variables() {
        assert!(parse("forall in. in = in", &Signature::set()).is_err());
    }

    #[test]
    fn modal_formulas() {
        let f = parse_modal("dia box P -> box dia P").unwrap();
        assert_eq!(
            f,
            Formula::implies(
                Formula::possibly(Formula::necessarily(Formula::prop("P"))),
                Formula::necessarily(Formula::possibly(Formula::prop("P")))
            )
        );
    }

    #[test]
    fn render_reparses() {
        for s in [
            "exists x. forall y. exists z. z = x",
            "((forall x. x = x) & exists y. y < S(0))",
            "forall x < (y+S(0)). ~(x = y)",
            "(~forall x. x = 0 -> 0 = 0)",
            "17 = (3*x)",
        ] {
            let f = arith(s);
            assert_eq!(arith(&f.to_string()), f, "{s} rendered as {f}");
        }
    }
}
