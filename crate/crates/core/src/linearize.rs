//! Matrix linearizations: the tautological representation of `H_g`, the
//! supra-tautological representation of `H_g ⋊ Aut⁺(H_g)`, the faithful
//! representation of `Z[H_{g,r}]` on `V^{⊗(g+1)}`, and the annihilator
//! certificate for the image of `σ` under a finite-dimensional representation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{HeisError, Result};
use crate::group_ring::{GroupElement, HeisRing};
use crate::heisenberg::{HeisenbergElement, QuotientSpec};
use crate::laurent::{var_names, LaurentPoly, Monomial};
use crate::matrix::{IntMatrix, Matrix, RationalMatrix};
use crate::semidirect::{j_matrix, AutPlusElement, SemidirectElement};

fn mn_dot(x: &HeisenbergElement) -> BigInt {
    x.m().iter().zip(x.n()).map(|(a, b)| a * b).sum()
}

fn require_full(x: &HeisenbergElement) -> Result<()> {
    if x.quotient() != QuotientSpec::Full {
        return Err(HeisError::QuotientMismatch(format!("expected full H_g, got {}", x.quotient())));
    }
    Ok(())
}

/// Integral form of the tautological matrix, conjugated by `diag(2, 1, …, 1)`:
/// first row `(1, 2m_1, …, 2m_g, l + 2 m·n)`, last column `(…, n_1, …, n_g, 1)`.
pub fn tautological_scaled(x: &HeisenbergElement) -> Result<IntMatrix> {
    require_full(x)?;
    let g = x.genus();
    let mut t = IntMatrix::int_identity(g + 2);
    for i in 0..g {
        t.set(0, i + 1, 2 * &x.m()[i]);
        t.set(i + 1, g + 1, x.n()[i].clone());
    }
    t.set(0, g + 1, x.l() + 2 * mn_dot(x));
    Ok(t)
}

/// Undoes the `diag(2, 1, …, 1)` scaling of [`tautological_scaled`].
pub fn unscale_tautological(t: &IntMatrix) -> RationalMatrix {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut out = t.to_rational();
    for j in 1..t.cols() {
        let v = out.get(0, j) * &half;
        out.set(0, j, v);
    }
    out
}

/// Tautological matrix of size `g+2`: first row `(1, m, l/2 + m·n)`,
/// last column `(l/2 + m·n, n_1, …, n_g, 1)`, identity elsewhere.
pub fn tautological(x: &HeisenbergElement) -> Result<RationalMatrix> {
    Ok(unscale_tautological(&tautological_scaled(x)?))
}

/// Supra-tautological image of `x ∈ H_g`:
/// `[[1, (JX)ᵀ, l + m·n], [0, I, X], [0, 0, 1]]` with `X = (m, n)`.
pub fn suprataut_heis(x: &HeisenbergElement) -> Result<IntMatrix> {
    require_full(x)?;
    let g = x.genus();
    let d = 2 * g + 2;
    let xv = x.abelianization();
    let j = j_matrix(g);
    let jx: Vec<BigInt> = (0..2 * g).map(|i| j.row(i).iter().zip(&xv).map(|(a, b)| a * b).sum()).collect();
    let mut out = IntMatrix::int_identity(d);
    for i in 0..2 * g {
        out.set(0, i + 1, jx[i].clone());
        out.set(i + 1, d - 1, xv[i].clone());
    }
    out.set(0, d - 1, x.l() + mn_dot(x));
    Ok(out)
}

/// Supra-tautological image of `(Y, M)`: `[[1, 0, 0], [0, M, Y], [0, 0, 1]]`.
pub fn suprataut_aut(f: &AutPlusElement) -> IntMatrix {
    let g2 = 2 * f.genus();
    let d = g2 + 2;
    let mut out = IntMatrix::int_identity(d);
    for i in 0..g2 {
        for k in 0..g2 {
            out.set(i + 1, k + 1, f.matrix_part().get(i, k).clone());
        }
        out.set(i + 1, d - 1, f.translation_part()[i].clone());
    }
    out
}

/// `ι(h, f) = ι(h) ι(f)`.
pub fn suprataut(z: &SemidirectElement) -> Result<IntMatrix> {
    Ok(suprataut_heis(&z.h)?.mul(&suprataut_aut(&z.aut)))
}

/// Left inverse of [`suprataut`] on its image; `None` if the matrix is not in the image.
pub fn suprataut_decode(mat: &IntMatrix) -> Option<SemidirectElement> {
    let d = mat.rows();
    if !mat.is_square() || d < 4 || d % 2 != 0 {
        return None;
    }
    let g = (d - 2) / 2;
    let m = IntMatrix::from_fn(2 * g, 2 * g, |i, k| mat.get(i + 1, k + 1).clone());
    let lin = AutPlusElement::symplectic(m.clone()).ok()?;
    // Top row is (JX)ᵀ M and the last column is X + Y.
    let row: Vec<BigInt> = (0..2 * g).map(|k| mat.get(0, k + 1).clone()).collect();
    let minv = lin.inverse();
    let jx: Vec<BigInt> = (0..2 * g)
        .map(|k| (0..2 * g).map(|i| &row[i] * minv.matrix_part().get(i, k)).sum())
        .collect();
    // J^-1 = -J, so X = -J (JX).
    let j = j_matrix(g);
    let xv: Vec<BigInt> = (0..2 * g).map(|i| -j.row(i).iter().zip(&jx).map(|(a, b)| a * b).sum::<BigInt>()).collect();
    let y: Vec<BigInt> = (0..2 * g).map(|i| mat.get(i + 1, d - 1) - &xv[i]).collect();
    let aut = AutPlusElement::new(y, m).ok()?;
    let mut h = HeisenbergElement::new(xv[..g].to_vec(), xv[g..].to_vec(), BigInt::zero()).ok()?;
    let corner = mat.mul(&suprataut_aut(&aut.inverse())).get(0, d - 1).clone();
    h = HeisenbergElement::new(h.m().to_vec(), h.n().to_vec(), corner - mn_dot(&h)).ok()?;
    let z = SemidirectElement::new(h, aut).ok()?;
    (suprataut(&z).ok()? == *mat).then_some(z)
}

/// A monomial-scaled permutation on `V^{⊗(g+1)}`, `dim V = r`.
///
/// Basis tuples `(j_1, …, j_{g+1})` are encoded as `Σ j_k r^{k-1}`. Column
/// `c` has its single nonzero entry `coef[c]` in row `target[c]`. Variables
/// are `s_1 … s_g` (indices `0..g`) and `t_1 … t_g` (indices `g..2g`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMonomialOperator {
    g: usize,
    r: usize,
    target: Vec<usize>,
    coef: Vec<Monomial>,
}

impl SparseMonomialOperator {
    pub fn dimension(&self) -> usize {
        self.target.len()
    }
    pub fn genus(&self) -> usize {
        self.g
    }
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn decode(&self, idx: usize) -> Vec<usize> {
        let mut t = Vec::with_capacity(self.g + 1);
        let mut x = idx;
        for _ in 0..=self.g {
            t.push(x % self.r);
            x /= self.r;
        }
        t
    }

    /// Image of the basis vector with tuple `j` as `(target tuple, coefficient)`.
    pub fn apply_basis(&self, j: &[usize]) -> (Vec<usize>, Monomial) {
        let idx = encode(j, self.r);
        (self.decode(self.target[idx]), self.coef[idx].clone())
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!((self.g, self.r), (other.g, other.r), "operators on different spaces");
        let target = other.target.iter().map(|&t| self.target[t]).collect();
        let coef = other.target.iter().zip(&other.coef).map(|(&t, c)| self.coef[t].op(c)).collect();
        SparseMonomialOperator { g: self.g, r: self.r, target, coef }
    }

    pub fn to_sparse(&self) -> SparseLaurentMatrix {
        let mut entries = BTreeMap::new();
        for (col, (&row, c)) in self.target.iter().zip(&self.coef).enumerate() {
            entries.insert((row, col), LaurentPoly::from_group(c.clone()));
        }
        SparseLaurentMatrix { dim: self.dimension(), entries }
    }

    /// Dense matrix; the caller accepts the `r^{g+1}` blow-up.
    pub fn to_dense(&self) -> Matrix<LaurentPoly> {
        self.to_sparse().to_dense()
    }

    /// Specialization `s_i = t_i = 1`: a permutation matrix.
    pub fn specialize_ones(&self) -> RationalMatrix {
        let d = self.dimension();
        let mut m = RationalMatrix::zeros(d, d);
        for (col, &row) in self.target.iter().enumerate() {
            m.set(row, col, BigRational::one());
        }
        m
    }
}

fn encode(j: &[usize], r: usize) -> usize {
    j.iter().rev().fold(0, |acc, &x| acc * r + x)
}

/// Sparse square matrix with Laurent polynomial entries, keyed by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseLaurentMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl SparseLaurentMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseLaurentMatrix { dim, entries: BTreeMap::new() }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> LaurentPoly {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.entries.iter()
    }

    fn add_entry(&mut self, key: (usize, usize), v: &LaurentPoly) {
        let e = self.entries.entry(key).or_default();
        *e = e.add(v);
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_entry(*k, v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut by_row: BTreeMap<usize, Vec<(usize, &LaurentPoly)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = Self::zero(self.dim);
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    out.add_entry((*i, *j), &a.mul(b));
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix<LaurentPoly> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for ((r, c), v) in &self.entries {
            m.set(*r, *c, v.clone());
        }
        m
    }
}

/// Variable names `s1 … sg t1 … tg` for rendering [`iota_r`] entries.
pub fn iota_names(g: usize) -> Vec<String> {
    let mut v = var_names("s", g);
    v.extend(var_names("t", g));
    v
}

/// `ι(h)` for a single group element of `H_{g,r}`.
///
/// On `e_j` this applies `σ^l`, then `b^n`, then `a^m`, giving
/// `s^m t^n e_{j'}` with `j'_i = j_i + n_i` and
/// `j'_{g+1} = j_{g+1} + l + 2 Σ m_i (j_i + n_i)`, all mod `r`.
pub fn iota_r_element(h: &HeisenbergElement, r: usize) -> Result<SparseMonomialOperator> {
    if r < 2 {
        return Err(HeisError::Invalid(format!("r must be at least 2, got {r}")));
    }
    let h = match h.quotient() {
        QuotientSpec::Full => h.clone(),
        QuotientSpec::ModSigma(q) if q as usize == r => h.clone(),
        other => return Err(HeisError::QuotientMismatch(format!("expected mod_sigma_{r}, got {other}"))),
    };
    let g = h.genus();
    let rb = BigInt::from(r);
    let red = |x: &BigInt| -> usize { usize::try_from(x.mod_floor(&rb)).expect("residue fits") };
    let m: Vec<usize> = h.m().iter().map(red).collect();
    let n: Vec<usize> = h.n().iter().map(red).collect();
    let l = red(h.l());
    let mut exps: Vec<i64> = Vec::with_capacity(2 * g);
    for x in h.m().iter().chain(h.n()) {
        exps.push(i64::try_from(x).map_err(|_| HeisError::Invalid("exponent too large for a monomial".into()))?);
    }
    let coef = Monomial::new(exps);
    let dim = r.pow((g + 1) as u32);
    let mut target = Vec::with_capacity(dim);
    let mut j = vec![0usize; g + 1];
    for idx in 0..dim {
        let mut x = idx;
        for slot in j.iter_mut() {
            *slot = x % r;
            x /= r;
        }
        let mut last = j[g] + l;
        for i in 0..g {
            let ji = (j[i] + n[i]) % r;
            last += 2 * m[i] * ji;
            j[i] = ji;
        }
        j[g] = last % r;
        target.push(encode(&j, r));
    }
    Ok(SparseMonomialOperator { g, r, target, coef: vec![coef; dim] })
}

/// `ι(x) = Σ c_h ι(h)` for `x ∈ Z[H_{g,r}]`.
pub fn iota_r(x: &HeisRing, g: usize, r: usize) -> Result<SparseLaurentMatrix> {
    if r < 2 {
        return Err(HeisError::Invalid(format!("r must be at least 2, got {r}")));
    }
    let dim = r.pow((g + 1) as u32);
    let mut out = SparseLaurentMatrix::zero(dim);
    for (h, c) in x.terms() {
        if h.genus() != g {
            return Err(HeisError::GenusMismatch(h.genus(), g));
        }
        let op = iota_r_element(h, r)?;
        for (col, (&row, m)) in op.target.iter().zip(&op.coef).enumerate() {
            out.add_entry((row, col), &LaurentPoly::monomial(m.clone(), c.clone()));
        }
    }
    Ok(out)
}

/// Dense univariate polynomial over `Q`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lead = d.0[dd].clone();
        if rem.len() < d.0.len() {
            return (Poly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (i, di) in d.0.iter().enumerate() {
                    rem[k + i] -= &c * di;
                }
            }
            q[k] = c;
        }
        (Poly::new(q), Poly::new(rem))
    }

    /// `x^d - 1`.
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut c = vec![BigRational::zero(); d + 1];
        c[0] = -BigRational::one();
        c[d] = BigRational::one();
        Poly(c)
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let (mut n, mut out) = (n, n);
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn mobius(n: u64) -> i32 {
    let (mut n, mut sign) = (n, 1);
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Φ_d(x) = Π_{e | d} (x^e - 1)^{μ(d/e)}`.
pub fn cyclotomic(d: u64) -> Poly {
    let mut num = Poly::from_ints(&[1]);
    let mut den = Poly::from_ints(&[1]);
    for e in 1..=d {
        if d % e == 0 {
            match mobius(d / e) {
                1 => num = num.mul(&Poly::x_pow_minus_one(e as usize)),
                -1 => den = den.mul(&Poly::x_pow_minus_one(e as usize)),
                _ => {}
            }
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub fn charpoly(a: &RationalMatrix) -> Result<Poly> {
    if !a.is_square() {
        return Err(HeisError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut h = a.to_rows();
    // Similarity reduction to upper Hessenberg form.
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| !h[i][k].is_zero()) else { continue };
        if p != k + 1 {
            h.swap(p, k + 1);
            for row in h.iter_mut() {
                row.swap(p, k + 1);
            }
        }
        for i in k + 2..n {
            if h[i][k].is_zero() {
                continue;
            }
            let f = &h[i][k] / &h[k + 1][k];
            for j in 0..n {
                let v = &f * &h[k + 1][j];
                h[i][j] -= v;
            }
            for row in h.iter_mut() {
                let v = &f * &row[i];
                row[k + 1] += v;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - Σ_{i<m} h_im (Π_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    let mut p: Vec<Poly> = vec![Poly::from_ints(&[1])];
    for m in 0..n {
        let lin = Poly::new(vec![-h[m][m].clone(), BigRational::one()]);
        let mut next = lin.mul(&p[m]);
        let mut prod = BigRational::one();
        for i in (0..m).rev() {
            prod *= &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let c = &prod * &h[i][m];
            if !c.is_zero() {
                let term = p[i].mul(&Poly::new(vec![c]));
                next = Poly::new(sub_vec(next.coeffs(), term.coeffs()));
            }
        }
        p.push(next);
    }
    Ok(p.pop().expect("nonempty"))
}

fn sub_vec(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

/// Factorization of a polynomial into cyclotomic factors `(d, multiplicity)`.
/// Fails when a non-cyclotomic factor remains.
pub fn cyclotomic_factorization(p: &Poly) -> Result<Vec<(u64, usize)>> {
    if p.is_zero() {
        return Err(HeisError::Certificate("zero polynomial".into()));
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    let deg = p.degree() as u64;
    // φ(d) ≥ sqrt(d/2), so no cyclotomic factor of degree ≤ deg has d > 2 deg².
    let bound = 2 * deg * deg + 2;
    let mut d = 1;
    while rest.degree() > 0 && d <= bound {
        if totient(d) <= rest.degree() as u64 {
            let phi = cyclotomic(d);
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&phi);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((d, mult));
            }
        }
        d += 1;
    }
    if rest.degree() > 0 {
        return Err(HeisError::Certificate(format!(
            "characteristic polynomial has a factor of degree {} whose roots are not roots of unity",
            rest.degree()
        )));
    }
    Ok(out)
}

/// `(X^N - 1)^k` annihilates the image of `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorCertificate {
    /// Least common multiple of the orders of the eigenvalues.
    pub n: u64,
    /// Smallest `k` with `(M^N - I)^k = 0`.
    pub k: usize,
    /// Largest algebraic multiplicity of an eigenvalue; always `≥ k`.
    pub max_multiplicity: usize,
    /// Cyclotomic factors `(d, multiplicity)` of the characteristic polynomial.
    pub factors: Vec<(u64, usize)>,
}

/// Certificate for a single matrix `M` (the image of `σ`).
pub fn annihilator_certificate(m: &RationalMatrix) -> Result<AnnihilatorCertificate> {
    let factors = cyclotomic_factorization(&charpoly(m)?)?;
    let n = factors.iter().fold(1u64, |acc, (d, _)| acc.lcm(d));
    let max_mult = factors.iter().map(|(_, k)| *k).max().unwrap_or(0);
    let one = BigRational::one();
    let dim = m.rows();
    let base = m.pow(&one, n).sub(&RationalMatrix::identity(dim, &one));
    let mut acc = RationalMatrix::identity(dim, &one);
    for k in 1..=max_mult.max(1) {
        acc = acc.mul(&base);
        if acc.is_zero() {
            return Ok(AnnihilatorCertificate { n, k, max_multiplicity: max_mult, factors });
        }
    }
    Err(HeisError::Certificate(format!("(M^{n} - I)^{max_mult} is not zero")))
}

/// Checks that `σ` commutes with every `a_i, b_i` and that
/// `a_i b_i = σ² b_i a_i`, then certifies `σ`.
pub fn annihilator_certificate_for(
    a: &[RationalMatrix],
    b: &[RationalMatrix],
    sigma: &RationalMatrix,
) -> Result<AnnihilatorCertificate> {
    if a.len() != b.len() {
        return Err(HeisError::Dimension("need as many a-images as b-images".into()));
    }
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        for x in [ai, bi] {
            if x.try_mul(sigma)? != sigma.mul(x) {
                return Err(HeisError::Invalid(format!("σ-image does not commute with generator {}", i + 1)));
            }
        }
        if ai.mul(bi) != sigma.mul(sigma).mul(bi).mul(ai) {
            return Err(HeisError::Invalid(format!("a_{0} b_{0} ≠ σ² b_{0} a_{0}", i + 1)));
        }
    }
    annihilator_certificate(sigma)
}

/// Generator images of `ι` for `H_{g,r}` with `s_i = t_i = 1`: `(a, b, σ)`.
pub fn iota_r_specialized_generators(
    g: usize,
    r: usize,
) -> Result<(Vec<RationalMatrix>, Vec<RationalMatrix>, RationalMatrix)> {
    let a = (0..g)
        .map(|i| iota_r_element(&HeisenbergElement::a_pow(g, i, 1), r).map(|o| o.specialize_ones()))
        .collect::<Result<Vec<_>>>()?;
    let b = (0..g)
        .map(|i| iota_r_element(&HeisenbergElement::b_pow(g, i, 1), r).map(|o| o.specialize_ones()))
        .collect::<Result<Vec<_>>>()?;
    let s = iota_r_element(&HeisenbergElement::sigma_pow(g, 1), r)?.specialize_ones();
    Ok((a, b, s))
}
