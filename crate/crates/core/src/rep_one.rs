//! Action of separating Dehn twists on twisted first homology.
//!
//! Coordinates are taken in the basis `[α_1], [β_1], …, [α_g], [β_g]` of
//! arcs; a class is a row vector over `Z[H_g]` (or a quotient) and matrices
//! act on the right, so a twist word is multiplied left to right in
//! application order.
//!
//! Curves come from a catalog. The built-in model for a separating curve
//! around a block of handles `I` uses the loop
//! `w = Π_{i∈I} [α_i^-1, β_i^-1]`: its class has coordinates `φ(∂w/∂x_j)`
//! and its pairing row is `1 - φ(x_j)` on the block and `0` elsewhere, so
//! that `⟨α, α⟩ = 1 - σ^{2k}` by the Fox fundamental formula.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{parse_err, HeisError, Result};
use crate::group_ring::HeisRing;
use crate::heisenberg::{HeisenbergElement, QuotientSpec};
use crate::matrix::Matrix;
use crate::pairing::{pair_1pt, IntersectionDiagram1, IntersectionPoint, PointLoop};
use crate::words::{fox_derivative, FreeWord, HeisAccumulator, SurfaceGen, SurfaceLetter};

pub type HomologyClassVector = Vec<HeisRing>;

/// Per-arc decomposition `e_j = ext_j + int_j` relative to a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub ext: HomologyClassVector,
    pub int: HomologyClassVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingCurveData {
    pub name: String,
    /// Genus `k` of the subsurface cut off by the curve.
    pub genus: usize,
    pub curve_class: HomologyClassVector,
    pub pairing_row: HomologyClassVector,
    pub splittings: Option<Vec<Splitting>>,
}

fn unit_vector(g: usize, j: usize) -> HomologyClassVector {
    (0..2 * g).map(|i| if i == j { HeisRing::one(g) } else { HeisRing::zero() }).collect()
}

/// `φ` on the free group `π_1(Σ_{g,1}) = F(x_1, …, x_{2g})` with
/// `x_{2i-1} ↦ a_i`, `x_{2i} ↦ b_i`.
pub fn phi_free(w: &FreeWord) -> HeisenbergElement {
    let g = w.rank() / 2;
    let mut acc = HeisAccumulator::new(g);
    for &l in w.letters() {
        let idx = l.unsigned_abs() as usize - 1;
        let gen = if idx % 2 == 0 { SurfaceGen::Alpha(idx / 2) } else { SurfaceGen::Beta(idx / 2) };
        acc.push(SurfaceLetter::new(gen, l < 0));
    }
    acc.finish(QuotientSpec::Full)
}

/// The loop `Π_{i∈handles} [α_i^-1, β_i^-1]` as a free word of rank `2g`.
pub fn separating_free_word(g: usize, handles: &[usize]) -> Result<FreeWord> {
    let mut letters = Vec::with_capacity(4 * handles.len());
    for &h in handles {
        if h >= g {
            return Err(HeisError::Index(format!("handle {} outside 1..={g}", h + 1)));
        }
        let (a, b) = (2 * h as i32 + 1, 2 * h as i32 + 2);
        letters.extend([-a, -b, a, b]);
    }
    FreeWord::from_letters(2 * g, &letters)
}

impl SeparatingCurveData {
    /// Separating curve around the given handles (zero-based).
    ///
    /// Arcs through the block are interior, the others exterior.
    pub fn handle_block(name: &str, g: usize, handles: &[usize]) -> Result<Self> {
        let mut hs = handles.to_vec();
        hs.sort_unstable();
        hs.dedup();
        if hs.len() != handles.len() || hs.is_empty() {
            return Err(HeisError::Invalid(format!("curve {name}: handles must be distinct and nonempty")));
        }
        let w = separating_free_word(g, handles)?;
        let curve_class = (0..2 * g)
            .map(|j| Ok(fox_derivative(&w, j)?.map_group(phi_free)))
            .collect::<Result<Vec<_>>>()?;
        let in_block = |j: usize| hs.contains(&(j / 2));
        let pairing_row = (0..2 * g)
            .map(|j| {
                if in_block(j) {
                    HeisRing::one(g).sub(&HeisRing::from_group(phi_free(&FreeWord::generator(2 * g, j, false))))
                } else {
                    HeisRing::zero()
                }
            })
            .collect();
        let zero = vec![HeisRing::zero(); 2 * g];
        let splittings = (0..2 * g)
            .map(|j| {
                let e = unit_vector(g, j);
                if in_block(j) {
                    Splitting { ext: zero.clone(), int: e }
                } else {
                    Splitting { ext: e, int: zero.clone() }
                }
            })
            .collect();
        Ok(SeparatingCurveData { name: name.into(), genus: hs.len(), curve_class, pairing_row, splittings: Some(splittings) })
    }

    /// The boundary-parallel curve, acting on absolute classes: zero pairing
    /// and every basis arc interior.
    pub fn boundary(g: usize) -> Self {
        let zero = vec![HeisRing::zero(); 2 * g];
        SeparatingCurveData {
            name: "delta".into(),
            genus: g,
            curve_class: zero.clone(),
            pairing_row: zero.clone(),
            splittings: Some((0..2 * g).map(|j| Splitting { ext: zero.clone(), int: unit_vector(g, j) }).collect()),
        }
    }

    pub fn surface_genus(&self) -> usize {
        self.curve_class.len() / 2
    }

    /// `⟨α, v⟩ = Σ_j v_j p_j`, reduced by `q`.
    pub fn pair_with(&self, v: &[HeisRing], q: QuotientSpec) -> Result<HeisRing> {
        if v.len() != self.pairing_row.len() {
            return Err(HeisError::Dimension(format!("vector of length {} vs {}", v.len(), self.pairing_row.len())));
        }
        let mut out = HeisRing::zero();
        for (x, p) in v.iter().zip(&self.pairing_row) {
            out = out.add(&x.reduce(q)?.mul(&p.reduce(q)?));
        }
        Ok(out)
    }

    /// `⟨α, α⟩`.
    pub fn self_pairing(&self, q: QuotientSpec) -> Result<HeisRing> {
        self.pair_with(&self.curve_class, q)
    }
}

fn check_mod2k(alpha: &SeparatingCurveData, q: QuotientSpec) -> Result<()> {
    match q {
        QuotientSpec::ModSigma(r) if (2 * alpha.genus as u64) % r == 0 => Ok(()),
        _ => Err(HeisError::QuotientMismatch(format!(
            "curve {} of genus {} needs σ^{} = 1, got {q}",
            alpha.name,
            alpha.genus,
            2 * alpha.genus
        ))),
    }
}

fn reduce_vec(v: &[HeisRing], q: QuotientSpec) -> Result<HomologyClassVector> {
    v.iter().map(|x| x.reduce(q)).collect()
}

/// `v ↦ v + ⟨α, v⟩ [α]`, valid when `σ^{2k} = 1` in the quotient.
pub fn act_twist_mod2k(alpha: &SeparatingCurveData, v: &[HeisRing], q: QuotientSpec) -> Result<HomologyClassVector> {
    check_mod2k(alpha, q)?;
    let lam = alpha.pair_with(v, q)?;
    let c = reduce_vec(&alpha.curve_class, q)?;
    v.iter().zip(&c).map(|(x, cj)| x.reduce(q).map(|x| x.add(&lam.mul(cj)))).collect()
}

fn row_times(v: &[HeisRing], m: &Matrix<HeisRing>) -> HomologyClassVector {
    (0..m.cols())
        .map(|j| {
            let mut acc = HeisRing::zero();
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    acc = acc.add(&x.mul(m.get(i, j)));
                }
            }
            acc
        })
        .collect()
}

/// Matrix of `τ_α^e` acting on row vectors, `σ^{2k} = 1`.
///
/// `τ_α = I + p ⊗ c` and `τ_α^-1 = I - p u ⊗ c` with `u = (1 + ⟨α, α⟩)^-1`.
pub fn transvection_matrix(alpha: &SeparatingCurveData, q: QuotientSpec, e: i64) -> Result<Matrix<HeisRing>> {
    check_mod2k(alpha, q)?;
    let g = alpha.surface_genus();
    let one = HeisRing::one_in(g, q);
    let p = reduce_vec(&alpha.pairing_row, q)?;
    let c = reduce_vec(&alpha.curve_class, q)?;
    let aa = alpha.self_pairing(q)?;
    let unit = one.add(&aa);
    let u = match unit.as_monomial() {
        Some((h, k)) if k.is_one() => HeisRing::from_group(h.inverse()),
        Some((h, k)) if *k == -BigInt::one() => HeisRing::monomial(h.inverse(), -1),
        _ => return Err(HeisError::Invalid(format!("1 + ⟨α,α⟩ = {unit} is not a unit"))),
    };
    let id = Matrix::identity(2 * g, &one);
    let fwd = Matrix::from_fn(2 * g, 2 * g, |i, j| p[i].mul(&c[j])).add(&id);
    let bwd = id.sub(&Matrix::from_fn(2 * g, 2 * g, |i, j| p[i].mul(&u).mul(&c[j])));
    let base = if e >= 0 { fwd } else { bwd };
    Ok(base.pow(&one, e.unsigned_abs()))
}

/// `τ_α(e_j) = ext_j + σ^{-2k} int_j + ⟨α, e_j⟩ [α]` over the full group ring.
pub fn act_twist_full(alpha: &SeparatingCurveData, j: usize) -> Result<HomologyClassVector> {
    let g = alpha.surface_genus();
    let sp = alpha
        .splittings
        .as_ref()
        .and_then(|s| s.get(j))
        .ok_or_else(|| HeisError::Missing(format!("splitting of arc {} for curve {}", j + 1, alpha.name)))?;
    let twist = HeisRing::sigma_term(g, QuotientSpec::Full, -2 * alpha.genus as i64, 1);
    let p = &alpha.pairing_row[j];
    Ok((0..2 * g).map(|i| sp.ext[i].add(&twist.mul(&sp.int[i])).add(&p.mul(&alpha.curve_class[i]))).collect())
}

/// All rows of [`act_twist_full`].
pub fn twist_full_matrix(alpha: &SeparatingCurveData) -> Result<Matrix<HeisRing>> {
    let rows = (0..2 * alpha.surface_genus()).map(|j| act_twist_full(alpha, j)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// Assembles a matrix whose `(j, j')` entry is the pairing of the image of
/// basis arc `j` with the dual arc `j'`, given as intersection diagrams.
pub fn matrix_from_pairings(rows: &[Vec<IntersectionDiagram1>], q: QuotientSpec) -> Result<Matrix<HeisRing>> {
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (j, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(HeisError::Missing(format!("row {} has {} of {n} pairings", j + 1, r.len())));
        }
        out.push(r.iter().map(|d| pair_1pt(d, q)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(out)
}

/// Intersection diagram whose pairing is the given ring element: one point
/// per unit of each coefficient, with signs chosen against the `σ ↦ -σ` twist.
pub fn diagram_for_entry(x: &HeisRing, g: usize) -> Result<IntersectionDiagram1> {
    let mut pts = Vec::new();
    for (h, c) in x.terms() {
        let lift = HeisenbergElement::new(h.m().to_vec(), h.n().to_vec(), h.l().clone())?;
        let flip = if (h.l() % 2u32).is_zero() { 1 } else { -1 };
        let sign = if c.sign() == num_bigint::Sign::Minus { -flip } else { flip };
        let count = usize::try_from(c.magnitude()).map_err(|_| HeisError::Invalid("coefficient too large".into()))?;
        for _ in 0..count {
            pts.push(IntersectionPoint { sign, loop_: PointLoop::Element(lift.clone()) });
        }
    }
    IntersectionDiagram1::new(g, pts)
}

/// Diagrams for every entry of a matrix, row by row.
pub fn diagrams_for_matrix(m: &Matrix<HeisRing>, g: usize) -> Result<Vec<Vec<IntersectionDiagram1>>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| diagram_for_entry(x, g)).collect()).collect()
}

/// The diagrams for the identity mapping class: each basis arc meets its own
/// dual once, positively, with trivial loop.
pub fn identity_pairing_rows(g: usize) -> Vec<Vec<IntersectionDiagram1>> {
    (0..2 * g)
        .map(|j| {
            (0..2 * g)
                .map(|jp| {
                    if j == jp {
                        IntersectionDiagram1::from_sigma_exps(g, &[(1, 0)]).expect("valid")
                    } else {
                        IntersectionDiagram1::empty(g)
                    }
                })
                .collect()
        })
        .collect()
}

/// A product of twists `T_name^e`, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWord(pub Vec<(String, i64)>);

impl TwistWord {
    /// Parses `Ta Tb Ta^-1 Tb^-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() || bytes[i] == b'*' {
                i += 1;
                continue;
            }
            if bytes[i] != b'T' {
                return parse_err(i, format!("expected 'T', found '{}'", bytes[i] as char));
            }
            i += 1;
            let ns = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            if ns == i {
                return parse_err(i, "missing curve name");
            }
            let name = text[ns..i].to_string();
            let mut e = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                if i < bytes.len() && bytes[i] == b'-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                e = text[es..i].parse().map_err(|_| HeisError::Parse { pos: es, msg: "bad exponent".into() })?;
            }
            out.push((name, e));
        }
        Ok(TwistWord(out))
    }

    pub fn commutator(a: &str, b: &str) -> Self {
        TwistWord(vec![(a.into(), 1), (b.into(), 1), (a.into(), -1), (b.into(), -1)])
    }

    pub fn inverse(&self) -> Self {
        TwistWord(self.0.iter().rev().map(|(n, e)| (n.clone(), -e)).collect())
    }
}

impl std::fmt::Display for TwistWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|(n, e)| if *e == 1 { format!("T{n}") } else { format!("T{n}^{e}") }).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Named curves on a genus-`g` surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCatalog {
    pub genus: usize,
    pub quotient: Option<QuotientSpec>,
    pub curves: BTreeMap<String, SeparatingCurveData>,
}

fn parse_quotient(s: &str) -> Result<QuotientSpec> {
    if s == "full" {
        return Ok(QuotientSpec::Full);
    }
    let num = |p: &str| -> Result<u64> { p.parse().map_err(|_| HeisError::Invalid(format!("bad quotient {s:?}"))) };
    if let Some(r) = s.strip_prefix("mod_sigma_") {
        QuotientSpec::mod_sigma(num(r)?)
    } else if let Some(r) = s.strip_prefix("finite_") {
        QuotientSpec::finite(num(r)?)
    } else {
        Err(HeisError::Invalid(format!("bad quotient {s:?}")))
    }
}

fn ring_vec(v: &Value, g: usize, what: &str) -> Result<HomologyClassVector> {
    let arr = v.as_array().ok_or_else(|| HeisError::Invalid(format!("{what} must be an array")))?;
    if arr.len() != 2 * g {
        return Err(HeisError::Dimension(format!("{what} has {} entries, expected {}", arr.len(), 2 * g)));
    }
    arr.iter()
        .map(|x| match x {
            Value::String(s) => HeisRing::parse_with_genus(s, g),
            Value::Number(n) => {
                let c = n.as_i64().ok_or_else(|| HeisError::Invalid(format!("{what}: bad integer")))?;
                Ok(HeisRing::one(g).scale(&BigInt::from(c)))
            }
            _ => Err(HeisError::Invalid(format!("{what}: entries are ring strings"))),
        })
        .collect()
}

impl CurveCatalog {
    pub fn new(genus: usize) -> Self {
        CurveCatalog { genus, quotient: None, curves: BTreeMap::new() }
    }

    pub fn insert(&mut self, c: SeparatingCurveData) -> Result<()> {
        if c.surface_genus() != self.genus {
            return Err(HeisError::GenusMismatch(c.surface_genus(), self.genus));
        }
        self.curves.insert(c.name.clone(), c);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&SeparatingCurveData> {
        self.curves.get(name).ok_or_else(|| HeisError::Unresolved(format!("curve {name:?} is not in the catalog")))
    }

    /// Two genus-`2k` curves on `Σ_{3k,1}` whose handle blocks `1..2k` and
    /// `k+1..3k` overlap in a genus-`k` bigon region.
    pub fn kernel_pair(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(HeisError::Invalid("k must be positive".into()));
        }
        let g = 3 * k;
        let mut cat = CurveCatalog::new(g);
        cat.quotient = Some(QuotientSpec::mod_sigma(2 * k as u64)?);
        cat.insert(SeparatingCurveData::handle_block("a", g, &(0..2 * k).collect::<Vec<_>>())?)?;
        cat.insert(SeparatingCurveData::handle_block("b", g, &(k..3 * k).collect::<Vec<_>>())?)?;
        Ok(cat)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let g = v.get("genus").and_then(Value::as_u64).ok_or_else(|| HeisError::Missing("genus".into()))? as usize;
        if g == 0 {
            return Err(HeisError::Invalid("genus must be positive".into()));
        }
        let mut cat = CurveCatalog::new(g);
        if let Some(q) = v.get("quotient").and_then(Value::as_str) {
            cat.quotient = Some(parse_quotient(q)?);
        }
        let curves = v.get("curves").and_then(Value::as_array).ok_or_else(|| HeisError::Missing("curves".into()))?;
        for c in curves {
            let name = c.get("name").and_then(Value::as_str).ok_or_else(|| HeisError::Missing("curve name".into()))?;
            let curve = if let Some(h) = c.get("handles") {
                let hs: Vec<usize> = h
                    .as_array()
                    .ok_or_else(|| HeisError::Invalid("handles must be an array".into()))?
                    .iter()
                    .map(|x| match x.as_u64() {
                        Some(i) if i >= 1 => Ok(i as usize - 1),
                        _ => Err(HeisError::Invalid(format!("curve {name}: handles are 1-based integers"))),
                    })
                    .collect::<Result<_>>()?;
                SeparatingCurveData::handle_block(name, g, &hs)?
            } else if c.get("boundary").and_then(Value::as_bool) == Some(true) {
                let mut d = SeparatingCurveData::boundary(g);
                d.name = name.into();
                d
            } else {
                let k = c.get("genus").and_then(Value::as_u64).ok_or_else(|| HeisError::Missing(format!("{name}.genus")))?;
                let curve_class = ring_vec(c.get("class").ok_or_else(|| HeisError::Missing(format!("{name}.class")))?, g, "class")?;
                let pairing_row =
                    ring_vec(c.get("pairing_row").ok_or_else(|| HeisError::Missing(format!("{name}.pairing_row")))?, g, "pairing_row")?;
                let splittings = match c.get("splitting").and_then(Value::as_array) {
                    None => None,
                    Some(arr) => Some(
                        arr.iter()
                            .map(|s| {
                                Ok(Splitting {
                                    ext: ring_vec(s.get("ext").ok_or_else(|| HeisError::Missing("ext".into()))?, g, "ext")?,
                                    int: ring_vec(s.get("int").ok_or_else(|| HeisError::Missing("int".into()))?, g, "int")?,
                                })
                            })
                            .collect::<Result<Vec<_>>>()?,
                    ),
                };
                SeparatingCurveData { name: name.into(), genus: k as usize, curve_class, pairing_row, splittings }
            };
            cat.insert(curve)?;
        }
        Ok(cat)
    }
}

/// Outcome of evaluating a twist word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub is_identity_on_basis: bool,
    pub matrix: Matrix<HeisRing>,
}

/// Matrix of a twist word in the given quotient.
pub fn twist_word_matrix(w: &TwistWord, cat: &CurveCatalog, q: QuotientSpec) -> Result<Matrix<HeisRing>> {
    let one = HeisRing::one_in(cat.genus, q);
    let mut m = Matrix::identity(2 * cat.genus, &one);
    for (name, e) in &w.0 {
        m = m.mul(&transvection_matrix(cat.get(name)?, q, *e)?);
    }
    Ok(m)
}

pub fn kernel_certificate(w: &TwistWord, cat: &CurveCatalog, q: QuotientSpec) -> Result<KernelReport> {
    let matrix = twist_word_matrix(w, cat, q)?;
    let one = HeisRing::one_in(cat.genus, q);
    Ok(KernelReport { is_identity_on_basis: matrix.is_identity(&one), matrix })
}

/// Coefficients `λ_n` with `τ_α^n(v) = v + λ_n [α]` in the Magnus reduction
/// `H_{g,1}`, for `n = 1..=n_max`; each is checked against the matrix power.
pub fn infinite_order_witness(alpha: &SeparatingCurveData, v: &[HeisRing], n_max: usize) -> Result<Vec<HeisRing>> {
    let q = QuotientSpec::ModSigma(1);
    let pv = alpha.pair_with(v, q)?;
    if pv.is_zero() {
        return Err(HeisError::Certificate(format!("⟨{}, v⟩ = 0: no witness from this class", alpha.name)));
    }
    let aa = alpha.self_pairing(q)?;
    let c = reduce_vec(&alpha.curve_class, q)?;
    let v = reduce_vec(v, q)?;
    let t = transvection_matrix(alpha, q, 1)?;
    let mut cur = v.clone();
    let mut lam = HeisRing::zero();
    let mut out = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        // τ(v + λ c) = v + (λ + ⟨α,v⟩ + λ ⟨α,α⟩) c
        lam = lam.add(&pv).add(&lam.mul(&aa));
        cur = row_times(&cur, &t);
        let expect: Vec<HeisRing> = v.iter().zip(&c).map(|(x, cj)| x.add(&lam.mul(cj))).collect();
        if expect != cur {
            return Err(HeisError::Certificate("iterated transvection disagrees with v + λ[α]".into()));
        }
        out.push(lam.clone());
    }
    Ok(out)
}

/// JSON view of a matrix over a group ring.
pub fn ring_matrix_json(m: &Matrix<HeisRing>) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_pairing_is_one_minus_sigma_2k() {
        let a = SeparatingCurveData::handle_block("a", 3, &[0, 2]).unwrap();
        let expect = HeisRing::one(3).sub(&HeisRing::sigma_term(3, QuotientSpec::Full, 4, 1));
        assert_eq!(a.self_pairing(QuotientSpec::Full).unwrap(), expect);
    }

    #[test]
    fn kernel_pair_commutes() {
        let cat = CurveCatalog::kernel_pair(1).unwrap();
        let q = cat.quotient.unwrap();
        let (a, b) = (cat.get("a").unwrap(), cat.get("b").unwrap());
        assert!(a.pair_with(&b.curve_class, q).unwrap().is_zero());
        assert!(kernel_certificate(&TwistWord::commutator("a", "b"), &cat, q).unwrap().is_identity_on_basis);
        assert!(!kernel_certificate(&TwistWord::parse("Ta").unwrap(), &cat, q).unwrap().is_identity_on_basis);
        assert!(kernel_certificate(&TwistWord::parse("Ta Ta^-1").unwrap(), &cat, q).unwrap().is_identity_on_basis);
    }

    #[test]
    fn wrong_quotient_is_rejected() {
        let cat = CurveCatalog::kernel_pair(2).unwrap();
        let e = transvection_matrix(cat.get("a").unwrap(), QuotientSpec::ModSigma(3), 1);
        assert!(matches!(e, Err(HeisError::QuotientMismatch(_))));
        assert!(matches!(TwistWord::parse("Tz").map(|w| twist_word_matrix(&w, &cat, QuotientSpec::ModSigma(4))), Ok(Err(HeisError::Unresolved(_)))));
    }

    #[test]
    fn full_action_reduces_to_mod2k() {
        let cat = CurveCatalog::kernel_pair(1).unwrap();
        let q = cat.quotient.unwrap();
        let a = cat.get("a").unwrap();
        for j in 0..6 {
            let full = reduce_vec(&act_twist_full(a, j).unwrap(), q).unwrap();
            assert_eq!(full, act_twist_mod2k(a, &unit_vector(3, j), q).unwrap());
        }
    }

    #[test]
    fn twist_word_parse_errors() {
        assert_eq!(TwistWord::parse("Ta Tb^-2").unwrap().0, vec![("a".into(), 1), ("b".into(), -2)]);
        assert!(matches!(TwistWord::parse("Ta x"), Err(HeisError::Parse { pos: 3, .. })));
    }
}
