//! Laurent monomials in finitely many commuting variables and the Laurent
//! polynomial ring they span.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::group_ring::{GroupElement, RingElement};

/// `x_1^{e_1} … x_k^{e_k}`, stored with trailing zero exponents trimmed so
/// that equal monomials compare equal regardless of the ambient rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<i64>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// `x_{i+1}^e` (index is zero-based).
    pub fn var(i: usize, e: i64) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Self::new(v)
    }

    pub fn exponent(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(self.0.iter().map(|x| x.checked_mul(e).expect("exponent overflow")).collect())
    }

    /// Renders with the given variable names, e.g. `s1^2*t1^-1`.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl GroupElement for Monomial {
    fn op(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new(
            (0..n)
                .map(|i| self.exponent(i).checked_add(other.exponent(i)).expect("exponent overflow"))
                .collect(),
        )
    }
    fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|x| -x).collect())
    }
    fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

pub type LaurentPoly = RingElement<Monomial>;

impl RingElement<Monomial> {
    pub fn one() -> Self {
        Self::from_group(Monomial::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    /// `x_{i+1}^e` as a polynomial.
    pub fn var(i: usize, e: i64) -> Self {
        Self::from_group(Monomial::var(i, e))
    }

    /// Renders with the given variable names, e.g. `1 - s1^2*t1^-1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            out.push_str(match (idx, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if m.is_identity() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{abs}*{}", m.render(names)));
            }
        }
        out
    }

    /// Substitutes `x_i ↦ x_{f(i)}`.
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Self {
        self.map_group(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .fold(Monomial::one(), |acc, (i, &e)| acc.op(&Monomial::var(f(i), e)))
        })
    }

    /// Value at `x_i = 1` for every variable.
    pub fn eval_ones(&self) -> BigInt {
        self.augment()
    }
}

/// Names `prefix1 … prefixk`.
pub fn var_names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_are_trimmed() {
        assert_eq!(Monomial::new(vec![1, 0, 0]), Monomial::var(0, 1));
        assert!(Monomial::var(2, 3).op(&Monomial::var(2, -3)).is_identity());
    }

    #[test]
    fn render_matches_cli_syntax() {
        let names = vec!["s1".to_string(), "t1".to_string()];
        let p = LaurentPoly::var(0, 2).mul(&LaurentPoly::var(1, -1)).sub(&LaurentPoly::one());
        assert_eq!(p.render(&names), "-1 + s1^2*t1^-1");
    }

    #[test]
    fn rename_collapses_variables() {
        let p = LaurentPoly::var(0, 1).add(&LaurentPoly::var(1, 1));
        assert_eq!(p.rename(|_| 0), LaurentPoly::monomial(Monomial::var(0, 1), 2));
    }
}
