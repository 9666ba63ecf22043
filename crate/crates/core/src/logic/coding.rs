//! Gödel coding.
//!
//! A code is the big-endian reading of a byte string `01 kind node...`. Each
//! node starts with a varint header holding `pair(tag, arity)`; strings and
//! big numbers are length-prefixed. The leading `01` byte keeps leading zero
//! bytes from vanishing when the string is read as a number.

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use super::syntax::{BoundKind, Formula, Term};

/// Cantor pairing `(a+b)(a+b+1)/2 + b`.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z+1) - 1) / 2)
    let w: BigUint = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = &w - &b;
    (a, b)
}

pub fn pair_u64(a: u64, b: u64) -> u64 {
    let s = a + b;
    s * (s + 1) / 2 + b
}

pub fn unpair_u64(z: u64) -> (u64, u64) {
    let w = (((8 * z as u128 + 1).sqrt() - 1) / 2) as u64;
    let t = w * (w + 1) / 2;
    let b = z - t;
    (w - b, b)
}

/// Identifier of the frozen code layout.
pub const CODING_VERSION: &str = "coding-v1";

/// A Gödel code. Serialised as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GodelCode(pub BigUint);

/// Serde adapter writing a natural as a decimal string.
pub mod decimal_big {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<BigUint>().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GodelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for GodelCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for GodelCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigUint>().map(GodelCode).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("not a code: {0}")]
    NotACode(String),
    #[error("code is a {found}, expected a {expected}")]
    WrongKind { expected: String, found: String },
    #[error("code truncated at byte {0}")]
    Truncated(usize),
    #[error("unknown tag {tag} with arity {arity} at byte {offset}")]
    BadTag { offset: usize, tag: u64, arity: u64 },
    #[error("{0} trailing bytes after the object")]
    Trailing(usize),
    #[error("invalid string at byte {0}")]
    BadString(usize),
}

/// Kinds of codable objects.
pub mod kind {
    pub const FORMULA: u8 = 1;
    pub const TERM: u8 = 2;
    pub const PROOF: u8 = 3;
    pub const PROGRAM: u8 = 4;
    pub const NAME: u8 = 5;

    pub fn name(k: u8) -> String {
        match k {
            FORMULA => "formula".into(),
            TERM => "term".into(),
            PROOF => "proof".into(),
            PROGRAM => "program".into(),
            NAME => "name".into(),
            other => format!("kind {other}"),
        }
    }
}

const SENTINEL: u8 = 1;

#[derive(Default)]
pub struct Writer {
    bytes: Vec<u8>,
}

impl Writer {
    pub fn varint(&mut self, mut v: u64) {
        loop {
            let b = (v & 0x7f) as u8;
            v >>= 7;
            if v == 0 {
                self.bytes.push(b);
                return;
            }
            self.bytes.push(b | 0x80);
        }
    }

    pub fn header(&mut self, tag: u64, arity: u64) {
        self.varint(pair_u64(tag, arity));
    }

    pub fn byte(&mut self, b: u8) {
        self.bytes.push(b);
    }

    pub fn string(&mut self, s: &str) {
        self.varint(s.len() as u64);
        self.bytes.extend_from_slice(s.as_bytes());
    }

    pub fn big(&mut self, n: &BigUint) {
        let bytes = if n.is_zero() { Vec::new() } else { n.to_bytes_be() };
        self.varint(bytes.len() as u64);
        self.bytes.extend_from_slice(&bytes);
    }
}

pub struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn offset(&self) -> usize {
        self.pos
    }

    pub fn byte(&mut self) -> Result<u8, DecodeError> {
        let b = *self.bytes.get(self.pos).ok_or(DecodeError::Truncated(self.pos))?;
        self.pos += 1;
        Ok(b)
    }

    pub fn varint(&mut self) -> Result<u64, DecodeError> {
        let start = self.pos;
        let mut v: u64 = 0;
        for shift in (0..64).step_by(7) {
            let b = self.byte()?;
            v |= ((b & 0x7f) as u64) << shift;
            if b & 0x80 == 0 {
                return Ok(v);
            }
        }
        Err(DecodeError::NotACode(format!("overlong varint at byte {start}")))
    }

    pub fn header(&mut self) -> Result<(u64, u64), DecodeError> {
        Ok(unpair_u64(self.varint()?))
    }

    pub fn count(&mut self) -> Result<usize, DecodeError> {
        let n = self.varint()? as usize;
        if n > self.bytes.len() - self.pos {
            return Err(DecodeError::Truncated(self.pos));
        }
        Ok(n)
    }

    pub fn string(&mut self) -> Result<String, DecodeError> {
        let at = self.pos;
        let n = self.count()?;
        let s = std::str::from_utf8(&self.bytes[self.pos..self.pos + n]).map_err(|_| DecodeError::BadString(at))?;
        self.pos += n;
        Ok(s.to_string())
    }

    pub fn big(&mut self) -> Result<BigUint, DecodeError> {
        let n = self.count()?;
        let v = BigUint::from_bytes_be(&self.bytes[self.pos..self.pos + n]);
        self.pos += n;
        Ok(v)
    }

    pub fn bad_tag(&self, offset: usize, tag: u64, arity: u64) -> DecodeError {
        DecodeError::BadTag { offset, tag, arity }
    }
}

/// Objects with a Gödel code.
pub trait Codable: Sized {
    const KIND: u8;
    fn write(&self, w: &mut Writer);
    fn read(r: &mut Reader<'_>) -> Result<Self, DecodeError>;
}

pub fn encode<T: Codable>(x: &T) -> GodelCode {
    let mut w = Writer { bytes: vec![SENTINEL, T::KIND] };
    x.write(&mut w);
    GodelCode(BigUint::from_bytes_be(&w.bytes))
}

pub fn decode<T: Codable>(code: &GodelCode) -> Result<T, DecodeError> {
    if code.0.is_zero() {
        return Err(DecodeError::NotACode("zero codes nothing".into()));
    }
    let bytes = code.0.to_bytes_be();
    if bytes[0] != SENTINEL || bytes.len() < 2 {
        return Err(DecodeError::NotACode("missing sentinel byte".into()));
    }
    if bytes[1] != T::KIND {
        return Err(DecodeError::WrongKind { expected: kind::name(T::KIND), found: kind::name(bytes[1]) });
    }
    let mut r = Reader { bytes: &bytes, pos: 2 };
    let x = T::read(&mut r)?;
    if r.pos != bytes.len() {
        return Err(DecodeError::Trailing(bytes.len() - r.pos));
    }
    Ok(x)
}

/// The kind byte of a code, if it is one.
pub fn kind_of(code: &GodelCode) -> Option<u8> {
    let bytes = code.0.to_bytes_be();
    (bytes.len() >= 2 && bytes[0] == SENTINEL).then(|| bytes[1])
}

/// Shorthand for formula codes.
pub fn godel_encode(f: &Formula) -> GodelCode {
    encode(f)
}

pub fn godel_decode(code: &GodelCode) -> Result<Formula, DecodeError> {
    decode(code)
}

/// A variable or symbol name as a codable object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name(pub String);

impl Codable for Name {
    const KIND: u8 = kind::NAME;
    fn write(&self, w: &mut Writer) {
        w.string(&self.0);
    }
    fn read(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        r.string().map(Name)
    }
}

pub fn name_code(v: &str) -> GodelCode {
    encode(&Name(v.to_string()))
}

impl Codable for Term {
    const KIND: u8 = kind::TERM;
    fn write(&self, w: &mut Writer) {
        match self {
            Term::Var(v) => {
                w.header(0, 0);
                w.string(v);
            }
            Term::Zero => w.header(1, 0),
            Term::Succ(t) => {
                w.header(2, 1);
                t.write(w);
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                w.header(if matches!(self, Term::Add(..)) { 3 } else { 4 }, 2);
                a.write(w);
                b.write(w);
            }
            Term::Num(n) => {
                w.header(5, 0);
                w.big(n);
            }
            Term::App(f, args) => {
                w.header(6, args.len() as u64);
                w.string(f);
                args.iter().for_each(|a| a.write(w));
            }
        }
    }

    fn read(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let at = r.offset();
        Ok(match r.header()? {
            (0, 0) => Term::Var(r.string()?),
            (1, 0) => Term::Zero,
            (2, 1) => Term::succ(Term::read(r)?),
            (3, 2) => Term::add(Term::read(r)?, Term::read(r)?),
            (4, 2) => Term::mul(Term::read(r)?, Term::read(r)?),
            (5, 0) => {
                let n = r.big()?;
                if n.is_zero() {
                    return Err(DecodeError::NotACode(format!("numeral 0 at byte {at}")));
                }
                Term::Num(n)
            }
            (6, n) => {
                let f = r.string()?;
                let args = (0..n).map(|_| Term::read(r)).collect::<Result<_, _>>()?;
                Term::App(f, args)
            }
            (tag, arity) => return Err(r.bad_tag(at, tag, arity)),
        })
    }
}

fn bound_byte(k: BoundKind) -> u8 {
    match k {
        BoundKind::Lt => 0,
        BoundKind::In => 1,
    }
}

impl Codable for Formula {
    const KIND: u8 = kind::FORMULA;
    fn write(&self, w: &mut Writer) {
        match self {
            Formula::Atom(rel, args) => {
                w.header(0, args.len() as u64);
                w.string(rel);
                args.iter().for_each(|a| a.write(w));
            }
            Formula::Not(f) | Formula::Necessarily(f) | Formula::Possibly(f) => {
                let tag = match self {
                    Formula::Not(_) => 1,
                    Formula::Necessarily(_) => 9,
                    _ => 10,
                };
                w.header(tag, 1);
                f.write(w);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let tag = match self {
                    Formula::And(..) => 2,
                    Formula::Or(..) => 3,
                    _ => 4,
                };
                w.header(tag, 2);
                a.write(w);
                b.write(w);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                w.header(if matches!(self, Formula::Forall(..)) { 5 } else { 6 }, 1);
                w.string(v);
                f.write(w);
            }
            Formula::BoundedForall(v, k, t, f) | Formula::BoundedExists(v, k, t, f) => {
                w.header(if matches!(self, Formula::BoundedForall(..)) { 7 } else { 8 }, 2);
                w.string(v);
                w.byte(bound_byte(*k));
                t.write(w);
                f.write(w);
            }
        }
    }

    fn read(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let at = r.offset();
        let bounded = |r: &mut Reader<'_>| -> Result<(String, BoundKind, Term, Formula), DecodeError> {
            let v = r.string()?;
            let at = r.offset();
            let k = match r.byte()? {
                0 => BoundKind::Lt,
                1 => BoundKind::In,
                b => return Err(DecodeError::NotACode(format!("bound kind {b} at byte {at}"))),
            };
            Ok((v, k, Term::read(r)?, Formula::read(r)?))
        };
        Ok(match r.header()? {
            (0, n) => {
                let rel = r.string()?;
                let args = (0..n).map(|_| Term::read(r)).collect::<Result<_, _>>()?;
                Formula::Atom(rel, args)
            }
            (1, 1) => Formula::not(Formula::read(r)?),
            (2, 2) => Formula::and(Formula::read(r)?, Formula::read(r)?),
            (3, 2) => Formula::or(Formula::read(r)?, Formula::read(r)?),
            (4, 2) => Formula::implies(Formula::read(r)?, Formula::read(r)?),
            (5, 1) => Formula::forall(r.string()?, Formula::read(r)?),
            (6, 1) => Formula::exists(r.string()?, Formula::read(r)?),
            (7, 2) => {
                let (v, k, t, f) = bounded(r)?;
                Formula::bounded_forall(v, k, t, f)
            }
            (8, 2) => {
                let (v, k, t, f) = bounded(r)?;
                Formula::bounded_exists(v, k, t, f)
            }
            (9, 1) => Formula::necessarily(Formula::read(r)?),
            (10, 1) => Formula::possibly(Formula::read(r)?),
            (tag, arity) => return Err(r.bad_tag(at, tag, arity)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse;
    use crate::logic::signature::Signature;

    #[test]
    fn pairing_values() {
        assert_eq!(pair_u64(0, 0), 0);
        assert_eq!(pair_u64(2, 1), 7);
        assert_eq!(pair(&BigUint::from(2u32), &BigUint::from(1u32)), BigUint::from(7u32));
        for z in 0..2000u64 {
            let (a, b) = unpair_u64(z);
            assert_eq!(pair_u64(a, b), z);
            let (a2, b2) = unpair(&BigUint::from(z));
            assert_eq!((a2, b2), (BigUint::from(a), BigUint::from(b)));
        }
    }

    #[test]
    fn formula_round_trip() {
        let f = parse("forall x < S(0). exists y in x. ~(x = 17 | y < (x*x))", &Signature::full()).unwrap();
        let c = godel_encode(&f);
        assert_eq!(godel_decode(&c).unwrap(), f);
    }

    #[test]
    fn non_codes_are_diagnosed() {
        assert!(matches!(godel_decode(&GodelCode(BigUint::zero())), Err(DecodeError::NotACode(_))));
        assert!(matches!(godel_decode(&GodelCode(BigUint::from(7u32))), Err(DecodeError::NotACode(_))));
        let t = encode(&Term::Zero);
        assert!(matches!(godel_decode(&t), Err(DecodeError::WrongKind { .. })));
        let mut bytes = godel_encode(&Formula::prop("P")).0.to_bytes_be();
        bytes.push(0);
        let e = godel_decode(&GodelCode(BigUint::from_bytes_be(&bytes))).unwrap_err();
        assert_eq!(e, DecodeError::Trailing(1));
        bytes.truncate(bytes.len() - 2);
        assert!(godel_decode(&GodelCode(BigUint::from_bytes_be(&bytes))).is_err());
    }

    #[test]
    fn names_have_their_own_kind() {
        let c = name_code("x");
        assert_eq!(kind_of(&c), Some(kind::NAME));
        assert_eq!(decode::<Name>(&c).unwrap(), Name("x".into()));
    }
}
