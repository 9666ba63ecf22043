use serde::{Deserialize, Serialize};

use super::syntax::{EQ, IN, LT};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol { name: name.into(), arity }
    }
}

/// A first-order vocabulary. Equality is always available and is listed among
/// the relations of the built-in signatures.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub name: String,
    #[serde(default)]
    pub constants: Vec<Symbol>,
    #[serde(default)]
    pub functions: Vec<Symbol>,
    #[serde(default)]
    pub relations: Vec<Symbol>,
    /// Whether decimal numerals (`7`, Gödel codes) are admitted as closed terms.
    #[serde(default)]
    pub numerals: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Constant,
    Function,
    Relation,
}

impl Signature {
    pub fn empty(name: impl Into<String>) -> Self {
        Signature {
            name: name.into(),
            constants: Vec::new(),
            functions: Vec::new(),
            relations: vec![Symbol::new(EQ, 2)],
            numerals: false,
        }
    }

    /// `{0, S, +, ·, <, =}`.
    pub fn arith() -> Self {
        Signature {
            name: "ARITH".into(),
            constants: vec![Symbol::new("0", 0)],
            functions: vec![Symbol::new("S", 1), Symbol::new("+", 2), Symbol::new("*", 2)],
            relations: vec![Symbol::new(LT, 2), Symbol::new(EQ, 2)],
            numerals: true,
        }
    }

    /// `{∈, =}`.
    pub fn set() -> Self {
        Signature {
            name: "SET".into(),
            constants: Vec::new(),
            functions: Vec::new(),
            relations: vec![Symbol::new(IN, 2), Symbol::new(EQ, 2)],
            numerals: false,
        }
    }

    /// The union of ARITH and SET, used when a formula's vocabulary is not known
    /// in advance.
    pub fn full() -> Self {
        let mut s = Signature::arith();
        s.name = "FULL".into();
        s.relations.insert(0, Symbol::new(IN, 2));
        s
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name.to_ascii_uppercase().as_str() {
            "ARITH" | "PA" => Some(Signature::arith()),
            "SET" | "ZF" | "ZFC" => Some(Signature::set()),
            "FULL" => Some(Signature::full()),
            _ => None,
        }
    }

    pub fn lookup(&self, kind: SymbolKind, name: &str) -> Option<usize> {
        let list = match kind {
            SymbolKind::Constant => &self.constants,
            SymbolKind::Function => &self.functions,
            SymbolKind::Relation => &self.relations,
        };
        list.iter().find(|s| s.name == name).map(|s| s.arity)
    }

    pub fn has_relation(&self, name: &str) -> bool {
        self.lookup(SymbolKind::Relation, name).is_some()
    }

    /// A copy with additional symbols. Names already present are left alone.
    pub fn extended(
        &self,
        name: impl Into<String>,
        functions: &[Symbol],
        relations: &[Symbol],
        numerals: bool,
    ) -> Signature {
        let mut s = self.clone();
        s.name = name.into();
        for f in functions {
            if s.lookup(SymbolKind::Function, &f.name).is_none() {
                s.functions.push(f.clone());
            }
        }
        for r in relations {
            if !s.has_relation(&r.name) {
                s.relations.push(r.clone());
            }
        }
        s.numerals |= numerals;
        s
    }

    /// Checks that symbol names are unique across the three symbol lists.
    pub fn validate(&self) -> Result<(), String> {
        let mut seen = std::collections::BTreeSet::new();
        for s in self.constants.iter().chain(&self.functions).chain(&self.relations) {
            if !seen.insert(s.name.as_str()) {
                return Err(format!("symbol `{}` declared twice in signature {}", s.name, self.name));
            }
        }
        for c in &self.constants {
            if c.arity != 0 {
                return Err(format!("constant `{}` must have arity 0", c.name));
            }
        }
        if self.lookup(SymbolKind::Relation, EQ) != Some(2) {
            return Err(format!("signature {} lacks binary equality", self.name));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        for s in [Signature::arith(), Signature::set(), Signature::full()] {
            s.validate().unwrap();
        }
    }

    #[test]
    fn duplicate_symbols_are_rejected() {
        let mut s = Signature::set();
        s.relations.push(Symbol::new(IN, 2));
        assert!(s.validate().is_err());
    }
}
