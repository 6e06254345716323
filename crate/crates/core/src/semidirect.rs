//! The semidirect product `H_g ⋊ Aut⁺(H_g)` with `Aut⁺(H_g) = Z^{2g} ⋊ Sp_{2g}(Z)`,
//! and the uncrossing of crossed matrices.
//!
//! An automorphism `f = (Y, M)` is realized by the block matrix
//! `[[1, 0, 0], [0, M, Y], [0, 0, 1]]`, so `(Y1, M1)(Y2, M2) = (Y1 + M1 Y2, M1 M2)`.
//! Its action on `x = (X, l)` is conjugation in the supra-tautological model:
//! `M` sends `X ↦ MX` keeping `l + m·n` fixed, and the translation `Y`
//! adds `ω(Y, X)` to `l`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{HeisError, Result};
use crate::group_ring::{GroupElement, HeisRing, RingElement};
use crate::heisenberg::{omega, HeisenbergElement};
use crate::matrix::{IntMatrix, Matrix};

/// The standard form `J(X, Y) = (-Y, X)` on `Z^{2g}`.
pub fn j_matrix(g: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(i, g + i, -BigInt::one());
        j.set(g + i, i, BigInt::one());
    }
    j
}

pub fn is_symplectic(m: &IntMatrix) -> bool {
    if !m.is_square() || m.rows() % 2 != 0 {
        return false;
    }
    let j = j_matrix(m.rows() / 2);
    m.mul(&j).mul(&m.transpose()) == j
}

/// `M^-1 = J Mᵀ J^-1`, valid for symplectic `M`.
pub fn symplectic_inverse(m: &IntMatrix) -> IntMatrix {
    let j = j_matrix(m.rows() / 2);
    j.mul(&m.transpose()).mul(&j.neg())
}

fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..m.rows()).map(|i| m.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// An element `(Y, M)` of `Aut⁺(H_g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutPlusElement {
    y: Vec<BigInt>,
    m: IntMatrix,
}

impl AutPlusElement {
    /// Checks `M ∈ Sp_{2g}(Z)` and `|Y| = 2g`.
    pub fn new(y: Vec<BigInt>, m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(HeisError::NotSquare(m.rows(), m.cols()));
        }
        if y.len() != m.rows() || m.rows() % 2 != 0 || m.rows() == 0 {
            return Err(HeisError::Dimension(format!("translation length {} vs matrix {}", y.len(), m.rows())));
        }
        if !is_symplectic(&m) {
            return Err(HeisError::NotSymplectic);
        }
        Ok(AutPlusElement { y, m })
    }

    pub fn identity(g: usize) -> Self {
        AutPlusElement { y: vec![BigInt::zero(); 2 * g], m: IntMatrix::int_identity(2 * g) }
    }

    pub fn translation(y: Vec<BigInt>) -> Result<Self> {
        let n = y.len();
        Self::new(y, IntMatrix::int_identity(n))
    }

    pub fn symplectic(m: IntMatrix) -> Result<Self> {
        Self::new(vec![BigInt::zero(); m.rows()], m)
    }

    pub fn genus(&self) -> usize {
        self.y.len() / 2
    }
    pub fn translation_part(&self) -> &[BigInt] {
        &self.y
    }
    pub fn matrix_part(&self) -> &IntMatrix {
        &self.m
    }

    pub fn compose(&self, other: &Self) -> Self {
        let my2 = mat_vec(&self.m, &other.y);
        AutPlusElement { y: self.y.iter().zip(my2).map(|(a, b)| a + b).collect(), m: self.m.mul(&other.m) }
    }

    pub fn inverse(&self) -> Self {
        let minv = symplectic_inverse(&self.m);
        let y = mat_vec(&minv, &self.y).into_iter().map(|x| -x).collect();
        AutPlusElement { y, m: minv }
    }

    pub fn is_identity(&self) -> bool {
        self.y.iter().all(Zero::is_zero) && self.m.is_identity(&BigInt::one())
    }

    /// `f(x)` for `x ∈ H_g` (full group only).
    pub fn apply(&self, x: &HeisenbergElement) -> Result<HeisenbergElement> {
        if x.genus() != self.genus() {
            return Err(HeisError::GenusMismatch(x.genus(), self.genus()));
        }
        let g = x.genus();
        let xv = x.abelianization();
        let dot = |v: &[BigInt]| -> BigInt { v[..g].iter().zip(&v[g..]).map(|(a, b)| a * b).sum() };
        let sym = x.l() + dot(&xv);
        let mx = mat_vec(&self.m, &xv);
        // Conjugating by ι(Y)ι(M): first M, then Y.
        let new_sym = sym + omega(&self.y, &mx);
        let l = &new_sym - dot(&mx);
        let x2 = HeisenbergElement::new(mx[..g].to_vec(), mx[g..].to_vec(), l)?;
        x2.reduce(x.quotient())
    }

    pub fn apply_ring(&self, x: &HeisRing) -> Result<HeisRing> {
        let mut out = HeisRing::zero();
        for (h, c) in x.terms() {
            out.add_term(self.apply(h)?, c.clone());
        }
        Ok(out)
    }
}

impl GroupElement for AutPlusElement {
    fn op(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_identity(&self) -> bool {
        AutPlusElement::is_identity(self)
    }
}

/// `(h, f)` with `(h1, f1)(h2, f2) = (h1 · f1(h2), f1 f2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemidirectElement {
    pub h: HeisenbergElement,
    pub aut: AutPlusElement,
}

impl SemidirectElement {
    pub fn new(h: HeisenbergElement, aut: AutPlusElement) -> Result<Self> {
        if h.genus() != aut.genus() {
            return Err(HeisError::GenusMismatch(h.genus(), aut.genus()));
        }
        Ok(SemidirectElement { h, aut })
    }

    pub fn from_heisenberg(h: HeisenbergElement) -> Self {
        let g = h.genus();
        SemidirectElement { h, aut: AutPlusElement::identity(g) }
    }

    pub fn from_aut(aut: AutPlusElement) -> Self {
        SemidirectElement { h: HeisenbergElement::identity(aut.genus()), aut }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let h2 = self.aut.apply(&other.h)?;
        Ok(SemidirectElement { h: self.h.multiply(&h2)?, aut: self.aut.compose(&other.aut) })
    }

    pub fn inverse(&self) -> Self {
        let ainv = self.aut.inverse();
        let h = ainv.apply(&self.h.inverse()).expect("genus agrees");
        SemidirectElement { h, aut: ainv }
    }
}

impl GroupElement for SemidirectElement {
    fn op(&self, other: &Self) -> Self {
        self.multiply(other).expect("incompatible semidirect elements")
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_identity(&self) -> bool {
        self.h.is_identity() && self.aut.is_identity()
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.aut.is_identity() {
            write!(f, "{}", self.h)
        } else {
            let y: Vec<String> = self.aut.y.iter().map(|v| v.to_string()).collect();
            let m: Vec<String> = self.aut.m.to_rows().iter().map(|r| {
                format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            }).collect();
            write!(f, "({} ; Y=[{}] M=[{}])", self.h, y.join(","), m.join(","))
        }
    }
}

pub type SemidirectRing = RingElement<SemidirectElement>;

/// `Mat · (f_* I)`: each entry `Σ c_h h` becomes `Σ c_h (h, f_*)`.
pub fn uncross_matrix(mat: &Matrix<HeisRing>, fstar: &AutPlusElement) -> Result<Matrix<SemidirectRing>> {
    if !mat.is_square() {
        return Err(HeisError::NotSquare(mat.rows(), mat.cols()));
    }
    for e in mat.entries() {
        if let Some((g, _)) = e.shape() {
            if g != fstar.genus() {
                return Err(HeisError::GenusMismatch(g, fstar.genus()));
            }
        }
    }
    Ok(mat.map(|e| e.map_group(|h| SemidirectElement { h: h.clone(), aut: fstar.clone() })))
}

/// Entry-wise action `Mat^{f}`.
pub fn twist_matrix(mat: &Matrix<HeisRing>, f: &AutPlusElement) -> Result<Matrix<HeisRing>> {
    let rows: Result<Vec<Vec<HeisRing>>> =
        mat.to_rows().iter().map(|r| r.iter().map(|e| f.apply_ring(e)).collect()).collect();
    Matrix::from_rows(rows?)
}

/// True when every term has trivial automorphism part, i.e. the matrix lies
/// in the image of `Z[H_g]`.
pub fn lies_in_heisenberg_ring(mat: &Matrix<SemidirectRing>) -> bool {
    mat.entries().all(|e| e.terms().all(|(z, _)| z.aut.is_identity()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rejects_non_symplectic() {
        let m = IntMatrix::from_i64(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(AutPlusElement::symplectic(m), Err(HeisError::NotSymplectic));
    }

    #[test]
    fn action_is_an_automorphism() {
        let m = IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]]);
        let f = AutPlusElement::new(v(&[2, -1]), m).unwrap();
        let x = HeisenbergElement::from_i64(&[1], &[2], 3).unwrap();
        let y = HeisenbergElement::from_i64(&[-2], &[1], 0).unwrap();
        let lhs = f.apply(&x.multiply(&y).unwrap()).unwrap();
        let rhs = f.apply(&x).unwrap().multiply(&f.apply(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(f.inverse().apply(&f.apply(&x).unwrap()).unwrap(), x);
        let s = HeisenbergElement::sigma_pow(1, 1);
        assert_eq!(f.apply(&s).unwrap(), s);
    }

    #[test]
    fn uncrossing_identity_and_kernel_test() {
        let g = 1;
        let mat = Matrix::from_rows(vec![vec![HeisRing::parse_with_genus("1 + a1", g).unwrap()]]).unwrap();
        let up = uncross_matrix(&mat, &AutPlusElement::identity(g)).unwrap();
        assert!(lies_in_heisenberg_ring(&up));
        let f = AutPlusElement::translation(v(&[1, 0])).unwrap();
        assert!(!lies_in_heisenberg_ring(&uncross_matrix(&mat, &f).unwrap()));
        let ragged = Matrix::<HeisRing>::zeros(1, 2);
        assert!(uncross_matrix(&ragged, &f).is_err());
    }
}
