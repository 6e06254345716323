//! The Heisenberg group `H_g` in normal form `a^m b^n σ^l`, together with its
//! quotients `H_g/<σ^r>` and the finite Heisenberg group `H_g/<a^r, b^r, σ^r>`.
//!
//! Sign convention: `[a_i, b_i] = a_i b_i a_i^-1 b_i^-1 = σ²`, equivalently
//! `a_i b_i = σ² b_i a_i`. Moving a `b` past an `a` to the right therefore
//! costs `σ^-2`, which gives the product rule
//!
//! ```text
//! (m, n, l) · (m', n', l') = (m + m', n + n', l + l' - 2 n·m')
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{parse_err, HeisError, Result};
use crate::group_ring::GroupElement;

/// Which quotient of `H_g` an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum QuotientSpec {
    #[default]
    Full,
    /// `H_{g,r} = H_g / <σ^r>`: only `l` is reduced.
    ModSigma(u64),
    /// The finite Heisenberg group: `l`, every `m_i` and every `n_i` are reduced.
    Finite(u64),
}

impl QuotientSpec {
    pub fn mod_sigma(r: u64) -> Result<Self> {
        if r == 0 {
            return Err(HeisError::Invalid("quotient modulus must be >= 1".into()));
        }
        Ok(QuotientSpec::ModSigma(r))
    }

    pub fn finite(r: u64) -> Result<Self> {
        if r == 0 {
            return Err(HeisError::Invalid("quotient modulus must be >= 1".into()));
        }
        Ok(QuotientSpec::Finite(r))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            QuotientSpec::Full => None,
            QuotientSpec::ModSigma(r) | QuotientSpec::Finite(r) => Some(*r),
        }
    }

    /// True when the quotient map `self -> target` is well defined.
    pub fn maps_onto(&self, target: &QuotientSpec) -> bool {
        use QuotientSpec::*;
        match (self, target) {
            (_, Full) => matches!(self, Full),
            (Full, _) => true,
            (ModSigma(r), ModSigma(s)) | (ModSigma(r), Finite(s)) | (Finite(r), Finite(s)) => {
                r % s == 0
            }
            (Finite(_), ModSigma(_)) => false,
        }
    }

    fn reduce_l(&self, l: &mut BigInt) {
        if let Some(r) = self.modulus() {
            *l = l.mod_floor(&BigInt::from(r));
        }
    }

    fn reduce_mn(&self, v: &mut [BigInt]) {
        if let QuotientSpec::Finite(r) = self {
            let r = BigInt::from(*r);
            for x in v.iter_mut() {
                *x = x.mod_floor(&r);
            }
        }
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSpec::Full => write!(f, "full"),
            QuotientSpec::ModSigma(r) => write!(f, "mod_sigma_{r}"),
            QuotientSpec::Finite(r) => write!(f, "finite_{r}"),
        }
    }
}

/// `a_1^{m_1} … a_g^{m_g} b_1^{n_1} … b_g^{n_g} σ^l` in a declared quotient.
///
/// The derived ordering is lexicographic on `(m, n, l)`, which is the
/// canonical term order used when serializing group-ring elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisenbergElement {
    m: Vec<BigInt>,
    n: Vec<BigInt>,
    l: BigInt,
    q: QuotientSpec,
}

impl HeisenbergElement {
    pub fn new(m: Vec<BigInt>, n: Vec<BigInt>, l: BigInt) -> Result<Self> {
        if m.len() != n.len() {
            return Err(HeisError::GenusMismatch(m.len(), n.len()));
        }
        if m.is_empty() {
            return Err(HeisError::Invalid("genus must be positive".into()));
        }
        Ok(HeisenbergElement { m, n, l, q: QuotientSpec::Full })
    }

    pub fn from_i64(m: &[i64], n: &[i64], l: i64) -> Result<Self> {
        Self::new(
            m.iter().map(|&x| BigInt::from(x)).collect(),
            n.iter().map(|&x| BigInt::from(x)).collect(),
            BigInt::from(l),
        )
    }

    pub fn identity(g: usize) -> Self {
        assert!(g > 0, "genus must be positive");
        HeisenbergElement {
            m: vec![BigInt::zero(); g],
            n: vec![BigInt::zero(); g],
            l: BigInt::zero(),
            q: QuotientSpec::Full,
        }
    }

    pub fn sigma_pow(g: usize, e: impl Into<BigInt>) -> Self {
        let mut x = Self::identity(g);
        x.l = e.into();
        x
    }

    /// `a_{i+1}^e` (index is zero-based).
    pub fn a_pow(g: usize, i: usize, e: impl Into<BigInt>) -> Self {
        let mut x = Self::identity(g);
        x.m[i] = e.into();
        x
    }

    /// `b_{i+1}^e` (index is zero-based).
    pub fn b_pow(g: usize, i: usize, e: impl Into<BigInt>) -> Self {
        let mut x = Self::identity(g);
        x.n[i] = e.into();
        x
    }

    pub(crate) fn from_parts_unchecked(m: Vec<BigInt>, n: Vec<BigInt>, l: BigInt, q: QuotientSpec) -> Self {
        let mut x = HeisenbergElement { m, n, l, q };
        x.normalize();
        x
    }

    pub fn genus(&self) -> usize {
        self.m.len()
    }
    pub fn m(&self) -> &[BigInt] {
        &self.m
    }
    pub fn n(&self) -> &[BigInt] {
        &self.n
    }
    pub fn l(&self) -> &BigInt {
        &self.l
    }
    pub fn quotient(&self) -> QuotientSpec {
        self.q
    }

    /// The image `(m, n) ∈ Z^{2g}` in the abelianization.
    pub fn abelianization(&self) -> Vec<BigInt> {
        self.m.iter().chain(self.n.iter()).cloned().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.l.is_zero() && self.m.iter().all(Zero::is_zero) && self.n.iter().all(Zero::is_zero)
    }

    /// True when the element is a power of σ.
    pub fn is_central(&self) -> bool {
        self.m.iter().all(Zero::is_zero) && self.n.iter().all(Zero::is_zero)
    }

    fn normalize(&mut self) {
        self.q.reduce_l(&mut self.l);
        self.q.reduce_mn(&mut self.m);
        self.q.reduce_mn(&mut self.n);
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.genus() != other.genus() {
            return Err(HeisError::GenusMismatch(self.genus(), other.genus()));
        }
        if self.q != other.q {
            return Err(HeisError::QuotientMismatch(format!("{} vs {}", self.q, other.q)));
        }
        Ok(())
    }

    /// Normal form of `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_raw(other))
    }

    fn mul_raw(&self, other: &Self) -> Self {
        let mut l = &self.l + &other.l;
        for (ni, mi) in self.n.iter().zip(&other.m) {
            if !ni.is_zero() && !mi.is_zero() {
                l -= 2 * (ni * mi);
            }
        }
        let m = self.m.iter().zip(&other.m).map(|(x, y)| x + y).collect();
        let n = self.n.iter().zip(&other.n).map(|(x, y)| x + y).collect();
        let mut out = HeisenbergElement { m, n, l, q: self.q };
        out.normalize();
        out
    }

    pub fn inverse(&self) -> Self {
        let dot: BigInt = self.n.iter().zip(&self.m).map(|(x, y)| x * y).sum();
        let mut out = HeisenbergElement {
            m: self.m.iter().map(|x| -x).collect(),
            n: self.n.iter().map(|x| -x).collect(),
            l: -&self.l - 2 * dot,
            q: self.q,
        };
        out.normalize();
        out
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.genus()).with_quotient_unchecked(self.q);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_raw(&sq);
            }
            sq = sq.mul_raw(&sq);
            k >>= 1;
        }
        acc
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.multiply(other)?.multiply(&self.inverse())?.multiply(&other.inverse())?)
    }

    /// Image under the quotient map to `q`.
    pub fn reduce(&self, q: QuotientSpec) -> Result<Self> {
        if !self.q.maps_onto(&q) {
            return Err(HeisError::QuotientMismatch(format!("cannot map {} onto {}", self.q, q)));
        }
        Ok(self.clone().with_quotient_unchecked(q))
    }

    fn with_quotient_unchecked(mut self, q: QuotientSpec) -> Self {
        self.q = q;
        self.normalize();
        self
    }

    /// Reads an element from text such as `a1^2 b3^-1 s^4` in genus `g`.
    ///
    /// Tokens may be separated by whitespace or `*`; an uppercase letter
    /// denotes the inverse generator and `1` denotes the identity. Tokens
    /// are multiplied in order, so non-normal-form input is accepted.
    pub fn parse_with_genus(text: &str, g: usize) -> Result<Self> {
        let toks = tokenize_letters(text)?;
        let mut acc = Self::identity(g);
        for (pos, tok) in toks {
            match tok {
                Letter::One => {}
                Letter::Gen { kind, index, exp } => {
                    let x = match kind {
                        'a' | 'b' if index == 0 || index > g => {
                            return parse_err(pos, format!("generator index {index} outside 1..={g}"))
                        }
                        'a' => Self::a_pow(g, index - 1, exp),
                        'b' => Self::b_pow(g, index - 1, exp),
                        _ => Self::sigma_pow(g, exp),
                    };
                    acc = acc.mul_raw(&x);
                }
            }
        }
        Ok(acc)
    }

    /// JSON form `{"m":[..],"n":[..],"l":k}`; a non-full quotient adds `"quotient"`.
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("m".into(), Value::Array(self.m.iter().map(bigint_to_json).collect()));
        obj.insert("n".into(), Value::Array(self.n.iter().map(bigint_to_json).collect()));
        obj.insert("l".into(), bigint_to_json(&self.l));
        if self.q != QuotientSpec::Full {
            obj.insert("quotient".into(), Value::String(self.q.to_string()));
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| HeisError::Missing(format!("field '{k}'")));
        let vec = |k: &str| -> Result<Vec<BigInt>> {
            field(k)?
                .as_array()
                .ok_or_else(|| HeisError::Invalid(format!("'{k}' must be an array")))?
                .iter()
                .map(bigint_from_json)
                .collect()
        };
        let x = Self::new(vec("m")?, vec("n")?, bigint_from_json(field("l")?)?)?;
        match v.get("quotient").and_then(Value::as_str) {
            None => Ok(x),
            Some(s) => x.reduce(parse_quotient_name(s)?),
        }
    }
}

impl GroupElement for HeisenbergElement {
    fn op(&self, other: &Self) -> Self {
        self.multiply(other).expect("incompatible Heisenberg elements")
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_identity(&self) -> bool {
        HeisenbergElement::is_identity(self)
    }
}

fn parse_quotient_name(s: &str) -> Result<QuotientSpec> {
    if s == "full" {
        return Ok(QuotientSpec::Full);
    }
    let num = |rest: &str| rest.parse::<u64>().map_err(|_| HeisError::Invalid(format!("bad quotient '{s}'")));
    if let Some(rest) = s.strip_prefix("mod_sigma_") {
        return QuotientSpec::mod_sigma(num(rest)?);
    }
    if let Some(rest) = s.strip_prefix("finite_") {
        return QuotientSpec::finite(num(rest)?);
    }
    Err(HeisError::Invalid(format!("bad quotient '{s}'")))
}

pub(crate) fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| HeisError::Invalid(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| HeisError::Invalid(format!("not an integer: {s}"))),
        other => Err(HeisError::Invalid(format!("not an integer: {other}"))),
    }
}

impl Serialize for HeisenbergElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeisenbergElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, first: &mut bool, name: &str, e: &BigInt) -> fmt::Result {
    if e.is_zero() {
        return Ok(());
    }
    if !*first {
        f.write_str(" ")?;
    }
    *first = false;
    if e.is_one() {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, e) in self.m.iter().enumerate() {
            write_power(f, &mut first, &format!("a{}", i + 1), e)?;
        }
        for (i, e) in self.n.iter().enumerate() {
            write_power(f, &mut first, &format!("b{}", i + 1), e)?;
        }
        write_power(f, &mut first, "s", &self.l)?;
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl FromStr for HeisenbergElement {
    type Err = HeisError;

    /// Parses with the genus inferred as the largest generator index (at least 1).
    fn from_str(s: &str) -> Result<Self> {
        let g = tokenize_letters(s)?
            .iter()
            .filter_map(|(_, t)| match t {
                Letter::Gen { kind: 'a' | 'b', index, .. } => Some(*index),
                _ => None,
            })
            .max()
            .unwrap_or(1)
            .max(1);
        Self::parse_with_genus(s, g)
    }
}

#[derive(Debug)]
enum Letter {
    One,
    Gen { kind: char, index: usize, exp: BigInt },
}

fn tokenize_letters(text: &str) -> Result<Vec<(usize, Letter)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() || c == '*' {
            i += 1;
            continue;
        }
        let start = i;
        if c == '1' {
            i += 1;
            if i < bytes.len() && !(bytes[i] as char).is_whitespace() && bytes[i] != b'*' {
                return parse_err(i, "unexpected character after '1'");
            }
            out.push((start, Letter::One));
            continue;
        }
        let lower = c.to_ascii_lowercase();
        if !matches!(lower, 'a' | 'b' | 's') {
            return parse_err(start, format!("unexpected character '{c}'"));
        }
        let inverted = c.is_ascii_uppercase();
        i += 1;
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let index = if digits_start == i {
            if lower != 's' {
                return parse_err(i, "missing generator index");
            }
            0
        } else {
            text[digits_start..i]
                .parse::<usize>()
                .map_err(|_| HeisError::Parse { pos: digits_start, msg: "bad index".into() })?
        };
        let mut exp = BigInt::one();
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let es = i;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            exp = text[es..i]
                .parse::<BigInt>()
                .map_err(|_| HeisError::Parse { pos: es, msg: "bad exponent".into() })?;
        }
        if inverted {
            exp = -exp;
        }
        out.push((start, Letter::Gen { kind: lower, index, exp }));
    }
    Ok(out)
}

/// Abelianized symplectic form `ω(X, Y) = m·n' - n·m'` on `Z^{2g} = (m, n)`.
pub fn omega(x: &[BigInt], y: &[BigInt]) -> BigInt {
    assert_eq!(x.len(), y.len());
    let g = x.len() / 2;
    let mut acc = BigInt::zero();
    for i in 0..g {
        acc += &x[i] * &y[g + i] - &x[g + i] * &y[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(m: &[i64], n: &[i64], l: i64) -> HeisenbergElement {
        HeisenbergElement::from_i64(m, n, l).unwrap()
    }

    #[test]
    fn ab_equals_ba_sigma_squared() {
        let a = h(&[1], &[0], 0);
        let b = h(&[0], &[1], 0);
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        assert_eq!(ab, ba.multiply(&HeisenbergElement::sigma_pow(1, 2)).unwrap());
        assert_eq!(a.commutator(&b).unwrap(), HeisenbergElement::sigma_pow(1, 2));
    }

    #[test]
    fn inverse_of_a_b_sigma() {
        let x = h(&[1], &[1], 1);
        let inv = x.inverse();
        assert_eq!(inv, h(&[-1], &[-1], -3));
        assert!(x.multiply(&inv).unwrap().is_identity());
        assert!(inv.multiply(&x).unwrap().is_identity());
    }

    #[test]
    fn reductions() {
        let q2 = QuotientSpec::mod_sigma(2).unwrap();
        assert_eq!(HeisenbergElement::sigma_pow(1, 5).reduce(q2).unwrap().l(), &BigInt::from(1));
        let f3 = QuotientSpec::finite(3).unwrap();
        assert!(HeisenbergElement::a_pow(1, 0, 3).reduce(f3).unwrap().is_identity());
        assert!(HeisenbergElement::sigma_pow(1, 5).reduce(q2).unwrap().reduce(QuotientSpec::Full).is_err());
    }

    #[test]
    fn text_round_trip() {
        let x: HeisenbergElement = "a1^2 b3^-1 s^4".parse().unwrap();
        assert_eq!(x.genus(), 3);
        assert_eq!(x.to_string(), "a1^2 b3^-1 s^4");
        assert_eq!("1".parse::<HeisenbergElement>().unwrap().to_string(), "1");
        let y: HeisenbergElement = "b1 a1".parse().unwrap();
        assert_eq!(y.to_string(), "a1 b1 s^-2");
        assert_eq!("A1 a1".parse::<HeisenbergElement>().unwrap().to_string(), "1");
        match "a1 q2".parse::<HeisenbergElement>() {
            Err(HeisError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(HeisenbergElement::parse_with_genus("a3", 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = h(&[1, -2], &[0, 5], 7);
        let v = x.to_json();
        assert_eq!(v.to_string(), r#"{"l":7,"m":[1,-2],"n":[0,5]}"#);
        assert_eq!(HeisenbergElement::from_json(&v).unwrap(), x);
    }

    #[test]
    fn genus_mismatch_is_an_error() {
        assert!(matches!(
            HeisenbergElement::identity(1).multiply(&HeisenbergElement::identity(2)),
            Err(HeisError::GenusMismatch(1, 2))
        ));
    }
}
