//! Explicit finite structures.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

use crate::logic::signature::{Signature, SymbolKind};
use crate::logic::syntax::{EQ, IN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("symbol `{0}` is not in the signature")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("element {element} out of range for a universe of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("function `{0}` is not total")]
    Partial(String),
    #[error("unknown signature `{0}`")]
    UnknownSignature(String),
    #[error("invalid signature: {0}")]
    BadSignature(String),
}

const DENSE_LIMIT: usize = 1 << 24;

/// A relation table, dense when small enough.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Dense { arity: usize, bits: Vec<u64> },
    Sparse { arity: usize, tuples: HashSet<Vec<usize>> },
}

impl Relation {
    fn new(arity: usize, size: usize) -> Relation {
        match size.checked_pow(arity as u32) {
            Some(cells) if cells <= DENSE_LIMIT => Relation::Dense { arity, bits: vec![0; cells.div_ceil(64).max(1)] },
            _ => Relation::Sparse { arity, tuples: HashSet::new() },
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Relation::Dense { arity, .. } | Relation::Sparse { arity, .. } => *arity,
        }
    }
}

fn index(tuple: &[usize], size: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * size + x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    size: usize,
    signature: Signature,
    relations: BTreeMap<String, Relation>,
    functions: BTreeMap<String, (usize, Vec<usize>)>,
    constants: BTreeMap<String, usize>,
}

impl FiniteStructure {
    /// An empty interpretation of `signature`: relations empty, functions
    /// constantly 0, constants 0. Nothing is allocated for equality.
    pub fn new(size: usize, signature: Signature) -> Self {
        let mut relations = BTreeMap::new();
        for r in &signature.relations {
            if r.name != EQ {
                relations.insert(r.name.clone(), Relation::new(r.arity, size));
            }
        }
        let functions = signature
            .functions
            .iter()
            .map(|f| (f.name.clone(), (f.arity, vec![0; size.pow(f.arity as u32)])))
            .collect();
        let constants = signature.constants.iter().map(|c| (c.name.clone(), 0)).collect();
        FiniteStructure { size, signature, relations, functions, constants }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    fn check(&self, tuple: &[usize]) -> Result<(), StructureError> {
        match tuple.iter().find(|&&x| x >= self.size) {
            Some(&element) => Err(StructureError::OutOfRange { element, size: self.size }),
            None => Ok(()),
        }
    }

    pub fn set(&mut self, rel: &str, tuple: &[usize], value: bool) -> Result<(), StructureError> {
        self.check(tuple)?;
        let size = self.size;
        let r = self.relations.get_mut(rel).ok_or_else(|| StructureError::UnknownSymbol(rel.into()))?;
        if r.arity() != tuple.len() {
            return Err(StructureError::Arity { name: rel.into(), expected: r.arity(), found: tuple.len() });
        }
        match r {
            Relation::Dense { bits, .. } => {
                let i = index(tuple, size);
                if value {
                    bits[i / 64] |= 1 << (i % 64);
                } else {
                    bits[i / 64] &= !(1 << (i % 64));
                }
            }
            Relation::Sparse { tuples, .. } => {
                if value {
                    tuples.insert(tuple.to_vec());
                } else {
                    tuples.remove(tuple);
                }
            }
        }
        Ok(())
    }

    pub fn insert(&mut self, rel: &str, tuple: &[usize]) -> Result<(), StructureError> {
        self.set(rel, tuple, true)
    }

    /// Whether `tuple` is in `rel`. `None` when the relation is unknown or
    /// used at the wrong arity. Equality is identity.
    pub fn holds(&self, rel: &str, tuple: &[usize]) -> Option<bool> {
        if rel == EQ {
            return (tuple.len() == 2).then(|| tuple[0] == tuple[1]);
        }
        match self.relations.get(rel)? {
            Relation::Dense { arity, bits } => {
                if *arity != tuple.len() {
                    return None;
                }
                let i = index(tuple, self.size);
                Some(bits[i / 64] >> (i % 64) & 1 == 1)
            }
            Relation::Sparse { arity, tuples } => (*arity == tuple.len()).then(|| tuples.contains(tuple)),
        }
    }

    pub fn set_function(&mut self, name: &str, args: &[usize], value: usize) -> Result<(), StructureError> {
        self.check(args)?;
        self.check(&[value])?;
        if let Some(c) = self.constants.get_mut(name) {
            if !args.is_empty() {
                return Err(StructureError::Arity { name: name.into(), expected: 0, found: args.len() });
            }
            *c = value;
            return Ok(());
        }
        let size = self.size;
        let (arity, table) = self.functions.get_mut(name).ok_or_else(|| StructureError::UnknownSymbol(name.into()))?;
        if *arity != args.len() {
            return Err(StructureError::Arity { name: name.into(), expected: *arity, found: args.len() });
        }
        table[index(args, size)] = value;
        Ok(())
    }

    /// Value of a function or constant symbol.
    pub fn apply(&self, name: &str, args: &[usize]) -> Option<usize> {
        if args.is_empty() {
            if let Some(&c) = self.constants.get(name) {
                return Some(c);
            }
        }
        let (arity, table) = self.functions.get(name)?;
        (*arity == args.len()).then(|| table[index(args, self.size)])
    }

    pub fn has_function(&self, name: &str, arity: usize) -> bool {
        match self.functions.get(name) {
            Some((a, _)) => *a == arity,
            None => arity == 0 && self.constants.contains_key(name),
        }
    }

    /// Non-equality relation names with their arities.
    pub fn relation_symbols(&self) -> Vec<(String, usize)> {
        self.relations.iter().map(|(n, r)| (n.clone(), r.arity())).collect()
    }

    /// All tuples of a relation, in lexicographic order.
    pub fn tuples(&self, rel: &str) -> Vec<Vec<usize>> {
        let Some(r) = self.relations.get(rel) else { return Vec::new() };
        match r {
            Relation::Dense { arity, .. } => {
                let mut out = Vec::new();
                let total = self.size.pow(*arity as u32);
                for i in 0..total {
                    let mut t = vec![0; *arity];
                    let mut k = i;
                    for slot in t.iter_mut().rev() {
                        *slot = k % self.size;
                        k /= self.size;
                    }
                    if self.holds(rel, &t) == Some(true) {
                        out.push(t);
                    }
                }
                out
            }
            Relation::Sparse { tuples, .. } => {
                let mut v: Vec<_> = tuples.iter().cloned().collect();
                v.sort();
                v
            }
        }
    }

    /// True when the only non-equality symbol is binary membership.
    pub fn is_membership(&self) -> bool {
        self.functions.is_empty()
            && self.constants.is_empty()
            && self.relations.len() == 1
            && self.relations.get(IN).map(Relation::arity) == Some(2)
    }

    /// `a ∈ b`, false for structures without membership.
    pub fn member(&self, a: usize, b: usize) -> bool {
        self.holds(IN, &[a, b]).unwrap_or(false)
    }

    /// Members of `b`, in increasing order.
    pub fn members(&self, b: usize) -> Vec<usize> {
        self.elements().filter(|&a| self.member(a, b)).collect()
    }

    /// The substructure on `keep` (in the given order), renumbered 0.. .
    /// Functions and constants must be closed on `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Result<FiniteStructure, StructureError> {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in keep.iter().enumerate() {
            self.check(&[x])?;
            pos[x] = i;
        }
        let mut out = FiniteStructure::new(keep.len(), self.signature.clone());
        for (name, _) in self.relation_symbols() {
            for t in self.tuples(&name) {
                if t.iter().all(|&x| pos[x] != usize::MAX) {
                    let mapped: Vec<usize> = t.iter().map(|&x| pos[x]).collect();
                    out.insert(&name, &mapped)?;
                }
            }
        }
        for (name, (arity, _)) in &self.functions {
            for args in tuples_over(keep.len(), *arity) {
                let orig: Vec<usize> = args.iter().map(|&i| keep[i]).collect();
                let v = self.apply(name, &orig).expect("declared");
                if pos[v] == usize::MAX {
                    return Err(StructureError::Partial(name.clone()));
                }
                out.set_function(name, &args, pos[v])?;
            }
        }
        for (name, &c) in &self.constants {
            if pos[c] == usize::MAX {
                return Err(StructureError::Partial(name.clone()));
            }
            out.set_function(name, &[], pos[c])?;
        }
        Ok(out)
    }

    /// The structure with elements renamed by `perm` (element `x` becomes `perm[x]`).
    pub fn permuted(&self, perm: &[usize]) -> FiniteStructure {
        let mut out = FiniteStructure::new(self.size, self.signature.clone());
        for (name, _) in self.relation_symbols() {
            for t in self.tuples(&name) {
                let mapped: Vec<usize> = t.iter().map(|&x| perm[x]).collect();
                out.insert(&name, &mapped).expect("in range");
            }
        }
        for (name, (arity, _)) in &self.functions {
            for args in tuples_over(self.size, *arity) {
                let v = self.apply(name, &args).expect("declared");
                let mapped: Vec<usize> = args.iter().map(|&x| perm[x]).collect();
                out.set_function(name, &mapped, perm[v]).expect("in range");
            }
        }
        for (name, &c) in &self.constants {
            out.set_function(name, &[], perm[c]).expect("in range");
        }
        out
    }
}

/// All `arity`-tuples over `0..n` in lexicographic order.
pub fn tuples_over(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t2 = t.clone();
                    t2.push(x);
                    t2
                })
            })
            .collect();
    }
    out
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SignatureRef {
    Named(String),
    Explicit(Signature),
}

#[derive(Serialize, Deserialize)]
struct StructureFile {
    universe_size: usize,
    signature: SignatureRef,
    #[serde(default)]
    relations: BTreeMap<String, Vec<Vec<usize>>>,
    /// Graphs as `[args..., value]` rows.
    #[serde(default)]
    functions: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default)]
    constants: BTreeMap<String, usize>,
}

impl FiniteStructure {
    pub fn from_json(text: &str) -> Result<FiniteStructure, Box<dyn std::error::Error + Send + Sync>> {
        let file: StructureFile = serde_json::from_str(text)?;
        let signature = match file.signature {
            SignatureRef::Named(n) => Signature::by_name(&n).ok_or(StructureError::UnknownSignature(n))?,
            SignatureRef::Explicit(s) => s,
        };
        signature.validate().map_err(StructureError::BadSignature)?;
        let mut m = FiniteStructure::new(file.universe_size, signature);
        for (name, rows) in &file.relations {
            if name == EQ {
                continue;
            }
            for t in rows {
                m.insert(name, t)?;
            }
        }
        for (name, rows) in &file.functions {
            let arity = m.signature.lookup(SymbolKind::Function, name).ok_or_else(|| StructureError::UnknownSymbol(name.clone()))?;
            let mut seen = HashSet::new();
            for row in rows {
                if row.len() != arity + 1 {
                    return Err(StructureError::Arity { name: name.clone(), expected: arity + 1, found: row.len() }.into());
                }
                m.set_function(name, &row[..arity], row[arity])?;
                seen.insert(row[..arity].to_vec());
            }
            if seen.len() != m.size.pow(arity as u32) {
                return Err(StructureError::Partial(name.clone()).into());
            }
        }
        for (name, &v) in &file.constants {
            if !m.constants.contains_key(name) {
                return Err(StructureError::UnknownSymbol(name.clone()).into());
            }
            m.set_function(name, &[], v)?;
        }
        Ok(m)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let signature = match Signature::by_name(&self.signature.name) {
            Some(s) if s == self.signature => SignatureRef::Named(self.signature.name.clone()),
            _ => SignatureRef::Explicit(self.signature.clone()),
        };
        let relations = self.relation_symbols().into_iter().map(|(n, _)| (n.clone(), self.tuples(&n))).collect();
        let functions = self
            .functions
            .iter()
            .map(|(n, (arity, _))| {
                let rows = tuples_over(self.size, *arity)
                    .into_iter()
                    .map(|mut args| {
                        let v = self.apply(n, &args).expect("declared");
                        args.push(v);
                        args
                    })
                    .collect();
                (n.clone(), rows)
            })
            .collect();
        let file = StructureFile {
            universe_size: self.size,
            signature,
            relations,
            functions,
            constants: self.constants.clone(),
        };
        serde_json::to_value(file).expect("serialisable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serialisable")
    }
}
