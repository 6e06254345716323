//! Integral group rings `Z[G]` as sparse maps from group elements to nonzero
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, HeisError, Result};
use crate::heisenberg::{HeisenbergElement, QuotientSpec};

/// A group whose elements carry enough shape information (genus, rank) to
/// multiply without a separate context object.
pub trait GroupElement: Clone + Ord + fmt::Debug {
    /// Group law; panics when the two operands have incompatible shapes.
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// The identity of the group this element belongs to.
    fn identity_like(&self) -> Self {
        self.op(&self.inv())
    }
}

/// A finite formal sum `Σ c_h h` with `c_h ≠ 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RingElement<G: Ord> {
    terms: BTreeMap<G, BigInt>,
}

impl<G: Ord> Default for RingElement<G> {
    fn default() -> Self {
        RingElement { terms: BTreeMap::new() }
    }
}

impl<G: GroupElement> RingElement<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_group(h: G) -> Self {
        Self::monomial(h, BigInt::one())
    }

    pub fn monomial(h: G, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(h, c.into());
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (G, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (h, c) in terms {
            out.add_term(h, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&G, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, h: &G) -> BigInt {
        self.terms.get(h).cloned().unwrap_or_default()
    }

    /// Adds `c·h` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, h: G, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(h) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingElement { terms: self.terms.iter().map(|(h, c)| (h.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RingElement { terms: self.terms.iter().map(|(h, c)| (h.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (h1, c1) in &self.terms {
            for (h2, c2) in &other.terms {
                out.add_term(h1.op(h2), c1 * c2);
            }
        }
        out
    }

    /// Left multiplication by a group element, `h·x`.
    pub fn left_mul_group(&self, h: &G) -> Self {
        RingElement { terms: self.terms.iter().map(|(k, c)| (h.op(k), c.clone())).collect() }
    }

    /// Right multiplication by a group element, `x·h`.
    pub fn right_mul_group(&self, h: &G) -> Self {
        RingElement { terms: self.terms.iter().map(|(k, c)| (k.op(h), c.clone())).collect() }
    }

    /// Augmentation `ε(Σ c_h h) = Σ c_h`.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The anti-involution induced by `h ↦ h^-1`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(h, c)| (h.inv(), c.clone())))
    }

    /// Push-forward along a map of groups (assumed to be a homomorphism).
    pub fn map_group<H: GroupElement>(&self, f: impl Fn(&G) -> H) -> RingElement<H> {
        RingElement::from_terms(self.terms.iter().map(|(h, c)| (f(h), c.clone())))
    }

    /// Push-forward along a map of groups into another ring.
    pub fn map_into<H: GroupElement>(&self, f: impl Fn(&G) -> RingElement<H>) -> RingElement<H> {
        let mut out = RingElement::zero();
        for (h, c) in &self.terms {
            for (k, d) in f(h).terms {
                out.add_term(k, d * c);
            }
        }
        out
    }

    /// True when this is `1·identity`.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(h, c)| h.is_identity() && c.is_one())
    }

    /// Single term `c·h`, if this element has exactly one term.
    pub fn as_monomial(&self) -> Option<(&G, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn pow(&self, one: &Self, e: u64) -> Self {
        let mut acc = one.clone();
        let mut sq = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }
}

/// `Z[H_g]` and its quotient rings.
pub type HeisRing = RingElement<HeisenbergElement>;

impl RingElement<HeisenbergElement> {
    pub fn one(g: usize) -> Self {
        Self::from_group(HeisenbergElement::identity(g))
    }

    pub fn one_in(g: usize, q: QuotientSpec) -> Self {
        Self::from_group(HeisenbergElement::identity(g).reduce(q).expect("full maps onto any quotient"))
    }

    /// `c·σ^e` in genus `g` and quotient `q`.
    pub fn sigma_term(g: usize, q: QuotientSpec, e: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        let h = HeisenbergElement::sigma_pow(g, e).reduce(q).expect("full maps onto any quotient");
        Self::monomial(h, c)
    }

    /// Ring involution fixing `a_i, b_i` and sending `σ ↦ -σ`.
    ///
    /// In a quotient `σ^r = 1` with `r` odd this is only well defined on
    /// representatives; the canonical representative `0 ≤ l < r` is used.
    pub fn involution_sigma_neg(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(h, c)| {
            let c = if h.l().is_odd() { -c } else { c.clone() };
            (h.clone(), c)
        }))
    }

    /// Image under the quotient map to `q`.
    pub fn reduce(&self, q: QuotientSpec) -> Result<Self> {
        let mut out = Self::zero();
        for (h, c) in &self.terms {
            out.add_term(h.reduce(q)?, c.clone());
        }
        Ok(out)
    }

    /// Common genus and quotient of the terms, if any.
    pub fn shape(&self) -> Option<(usize, QuotientSpec)> {
        self.terms.keys().next().map(|h| (h.genus(), h.quotient()))
    }

    /// Reads `±c*<elt> ± …` in genus `g`; a bare `c` is `c·1`, a bare element is `1·elt`.
    pub fn parse_with_genus(text: &str, g: usize) -> Result<Self> {
        let mut out = Self::zero();
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut sign = BigInt::one();
        let mut expect_term = true;
        let mut saw_term = false;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            if c == b'+' || c == b'-' {
                if !expect_term {
                    expect_term = true;
                    sign = BigInt::one();
                }
                if c == b'-' {
                    sign = -sign;
                }
                i += 1;
                continue;
            }
            if !expect_term {
                return parse_err(i, "expected '+' or '-' between terms");
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && !(bytes[i] == b'-' && !is_exponent_minus(bytes, i)) {
                i += 1;
            }
            let term = text[start..i].trim();
            let (coef, elt) = split_coefficient(term);
            let coef: BigInt = match coef {
                Some(s) => s.parse().map_err(|_| HeisError::Parse { pos: start, msg: "bad coefficient".into() })?,
                None => BigInt::one(),
            };
            let h = if elt.is_empty() {
                HeisenbergElement::identity(g)
            } else {
                HeisenbergElement::parse_with_genus(elt, g).map_err(|e| match e {
                    HeisError::Parse { pos, msg } => HeisError::Parse { pos: pos + start, msg },
                    other => other,
                })?
            };
            out.add_term(h, sign.clone() * coef);
            sign = BigInt::one();
            expect_term = false;
            saw_term = true;
        }
        if expect_term && saw_term {
            return parse_err(text.len(), "dangling sign");
        }
        Ok(out)
    }
}

fn is_exponent_minus(bytes: &[u8], i: usize) -> bool {
    i > 0 && bytes[i - 1] == b'^'
}

fn split_coefficient(term: &str) -> (Option<&str>, &str) {
    if let Some(star) = term.find('*') {
        let (c, rest) = term.split_at(star);
        if !c.trim().is_empty() && c.trim().bytes().all(|b| b.is_ascii_digit()) {
            return (Some(c.trim()), rest[1..].trim());
        }
    }
    if !term.is_empty() && term.bytes().all(|b| b.is_ascii_digit()) {
        return (Some(term), "");
    }
    (None, term)
}

impl<G: GroupElement + fmt::Display> fmt::Display for RingElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (h, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if h.is_identity() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{h}")?;
            } else {
                write!(f, "{abs}*{h}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: usize, e: i64, c: i64) -> HeisRing {
        HeisRing::sigma_term(g, QuotientSpec::Full, e, c)
    }

    #[test]
    fn involution_and_product_examples() {
        let x = s(1, 1, 1).add(&s(1, 2, -1));
        assert_eq!(x.involution_sigma_neg(), s(1, 1, -1).add(&s(1, 2, -1)));
        let p = s(1, 0, 1).add(&s(1, 1, 1)).mul(&s(1, 0, 1).add(&s(1, 1, -1)));
        assert_eq!(p, s(1, 0, 1).add(&s(1, 2, -1)));
    }

    #[test]
    fn kernel_sum_augments_to_zero() {
        let x = [(-2, 1), (-4, -1), (-2, 1), (0, -1), (-4, 1), (-2, -1), (0, 1), (-2, -1)]
            .iter()
            .fold(HeisRing::zero(), |acc, &(e, c)| acc.add(&s(6, e, c)));
        assert!(x.is_zero());
        assert_eq!(x.augment(), BigInt::zero());
    }

    #[test]
    fn parse_and_display() {
        let x = HeisRing::parse_with_genus("2*a1 s^-1 - 3 + b1", 1).unwrap();
        assert_eq!(x.to_string(), "-3 + b1 + 2*a1 s^-1");
        assert_eq!(HeisRing::parse_with_genus(&x.to_string(), 1).unwrap(), x);
        assert_eq!(HeisRing::parse_with_genus("0", 1).unwrap().to_string(), "0");
        assert_eq!(HeisRing::parse_with_genus("1 - s^2", 1).unwrap(), s(1, 0, 1).add(&s(1, 2, -1)));
        assert!(HeisRing::parse_with_genus("1 +", 1).is_err());
    }

    #[test]
    fn reduce_mod_sigma() {
        let x = s(2, 0, 1).add(&s(2, 4, -1));
        assert!(x.reduce(QuotientSpec::ModSigma(4)).unwrap().is_zero());
        assert!(!x.reduce(QuotientSpec::ModSigma(3)).unwrap().is_zero());
    }
}
