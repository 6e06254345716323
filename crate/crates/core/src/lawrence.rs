//! Burau and Gassner matrices from Fox calculus, Lawrence local systems on
//! holed disks embedded in `Σ_{g,1}`, and the abelian action of the
//! subgroups generated by twists along the curves `c_i`, `t_{i,j}`.
//!
//! Burau convention: entry `(i, j)` of the unreduced matrix is the
//! abelianized Fox derivative `∂β(x_j)/∂x_i`, where `β` acts on the free
//! group by the Artin action. The reduced matrix is
//! `R_ij = J_ij - J_kj t^{i-k}` for `i, j < k` (one-based).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::Value;

use crate::error::{HeisError, Result};
use crate::group_ring::HeisRing;
use crate::heisenberg::{HeisenbergElement, QuotientSpec};
use crate::laurent::{LaurentPoly, Monomial};
use crate::matrix::{Matrix, Ring};
use crate::rep_one::TwistWord;
use crate::words::{
    artin_images, eval_heisenberg, fox_derivative, separating_word_on, BraidWord, DiskBraidWord, DiskGen,
    DiskLetter, DiskLocalSystem, FreeWord, SurfaceBraidWord,
};

pub type LaurentMatrix = Matrix<LaurentPoly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BurauVariant {
    Reduced,
    Unreduced,
}

fn fox_jacobian(b: &BraidWord, abelianize: impl Fn(&FreeWord) -> Monomial) -> Result<LaurentMatrix> {
    let k = b.strands();
    let images = artin_images(b);
    let mut rows = vec![vec![LaurentPoly::zero(); k]; k];
    for (j, w) in images.iter().enumerate() {
        for (i, row) in rows.iter_mut().enumerate() {
            row[j] = fox_derivative(w, i)?.map_group(&abelianize);
        }
    }
    Matrix::from_rows(rows)
}

/// Unreduced (size `k`) or reduced (size `k-1`) Burau matrix in the variable `t`.
pub fn burau(b: &BraidWord, variant: BurauVariant) -> Result<LaurentMatrix> {
    let k = b.strands();
    let j = fox_jacobian(b, |w| Monomial::var(0, w.abelianization().iter().sum()))?;
    match variant {
        BurauVariant::Unreduced => Ok(j),
        BurauVariant::Reduced => {
            if k < 2 {
                return Err(HeisError::Invalid("reduced Burau needs at least 2 strands".into()));
            }
            Ok(Matrix::from_fn(k - 1, k - 1, |i, c| {
                let shift = LaurentPoly::var(0, i as i64 + 1 - k as i64);
                j.get(i, c).sub(&j.get(k - 1, c).mul(&shift))
            }))
        }
    }
}

/// Gassner matrix in `t_1 … t_k` (variables `0..k`); defined on pure braids.
pub fn gassner(b: &BraidWord) -> Result<LaurentMatrix> {
    if !b.is_pure() {
        return Err(HeisError::NotPure);
    }
    fox_jacobian(b, |w| Monomial::new(w.abelianization()))
}

/// `t_i ↦ t` for every `i`.
pub fn specialize_to_one_variable(m: &LaurentMatrix) -> LaurentMatrix {
    m.map(|x| x.rename(|_| 0))
}

/// Value at `t = 1` (every variable set to 1).
pub fn specialize_at_one(m: &LaurentMatrix) -> Matrix<BigInt> {
    m.map(|x| x.eval_ones())
}

/// The anti-involution `A ↦ A^*` with `(A^*)_{ij} = \overline{A_{ji}}`,
/// where the bar sends each monomial to its inverse.
pub fn anti_involution(m: &LaurentMatrix) -> LaurentMatrix {
    m.transpose().map(|x| x.bar())
}

/// Leibniz determinant; intended for the small matrices of this module.
pub fn determinant<R: Ring>(m: &Matrix<R>, one: &R) -> Result<R> {
    if !m.is_square() {
        return Err(HeisError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    if n > 9 {
        return Err(HeisError::Invalid(format!("Leibniz determinant refused for size {n}")));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = R::zero();
    permute(0, &mut perm, &mut |p: &[usize]| {
        let mut term = one.clone();
        for (i, &j) in p.iter().enumerate() {
            let e = m.get(i, j);
            if e.is_zero() {
                return;
            }
            term = term.mul(e);
        }
        let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
        if inversions % 2 == 1 {
            term = term.neg();
        }
        total.add_assign(&term);
    });
    Ok(total)
}

fn permute(pos: usize, p: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pos == p.len() {
        f(p);
        return;
    }
    for i in pos..p.len() {
        p.swap(pos, i);
        permute(pos + 1, p, f);
        p.swap(pos, i);
    }
}

/// Permutation matrix with a `1` in row `π(j)` of column `j`.
pub fn permutation_matrix(b: &BraidWord) -> Matrix<BigInt> {
    let p = b.permutation();
    let k = b.strands();
    let mut m = Matrix::zeros(k, k);
    for (j, &pj) in p.iter().enumerate() {
        m.set(pj, j, BigInt::one());
    }
    m
}

/// A subsurface of `Σ_{g,1}` homeomorphic to a holed disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// A sphere with `g` holes, each bounding a one-holed torus.
    HoledSphere,
    /// The half surface whose hole loops map to `b_1 … b_g`.
    HalfSurface,
    /// The neighborhood with `2g` holes `c_1, d_1, …, c_g, d_g`.
    Neighborhood,
}

impl Region {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "S" | "s" | "g_holed_sphere_S" => Ok(Region::HoledSphere),
            "S_g" | "Sg" | "half_surface_S_g" => Ok(Region::HalfSurface),
            "V_2g" | "V2g" | "neighborhood_V_2g" => Ok(Region::Neighborhood),
            _ => Err(HeisError::Invalid(format!("unknown region {s:?} (expected S, S_g or V_2g)"))),
        }
    }

    pub fn holes(&self, g: usize) -> usize {
        match self {
            Region::HoledSphere | Region::HalfSurface => g,
            Region::Neighborhood => 2 * g,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Region::HoledSphere => "S",
            Region::HalfSurface => "S_g",
            Region::Neighborhood => "V_2g",
        }
    }
}

/// The loop on `Σ_{g,1}` realizing a hole generator of the region.
fn hole_loop_word(region: Region, g: usize, hole: usize) -> Result<SurfaceBraidWord> {
    match region {
        // The hole bounds a one-holed torus around handle `hole`, traversed negatively.
        Region::HoledSphere => separating_word_on(g, &[hole], -1),
        Region::HalfSurface => SurfaceBraidWord::parse(&format!("b{}", hole + 1), g, 1),
        Region::Neighborhood => {
            let i = hole / 2 + 1;
            if hole % 2 == 0 {
                SurfaceBraidWord::parse(&format!("a{i}"), g, 1)
            } else {
                // β_i^-1 α_i^-1 β_i
                SurfaceBraidWord::parse(&format!("B{i} A{i} b{i}"), g, 1)
            }
        }
    }
}

/// `φ`-image of a generator of the holed-disk configuration braid group
/// of the region: a hole loop or a strand exchange.
pub fn heisenberg_restriction(region: Region, g: usize, gen: DiskGen) -> Result<HeisenbergElement> {
    match gen {
        DiskGen::Hole(i) => {
            if i >= region.holes(g) {
                return Err(HeisError::Index(format!("hole {} outside 1..={}", i + 1, region.holes(g))));
            }
            Ok(eval_heisenberg(&hole_loop_word(region, g, i)?, QuotientSpec::Full))
        }
        DiskGen::Exchange(_) => Ok(HeisenbergElement::sigma_pow(g, 1)),
    }
}

/// `φ`-image of a whole holed-disk braid word.
pub fn restrict_word(region: Region, g: usize, w: &DiskBraidWord) -> Result<HeisenbergElement> {
    let mut acc = HeisenbergElement::identity(g);
    for l in w.letters() {
        let mut h = heisenberg_restriction(region, g, l.gen)?;
        if l.inverse {
            h = h.inverse();
        }
        acc = acc.multiply(&h)?;
    }
    Ok(acc)
}

/// Images of `s_1 … s_k, σ` in `H_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMap {
    images: Vec<HeisenbergElement>,
}

impl SubstitutionMap {
    /// Requires the images to commute pairwise.
    pub fn new(images: Vec<HeisenbergElement>) -> Result<Self> {
        for (i, x) in images.iter().enumerate() {
            for (j, y) in images.iter().enumerate().skip(i + 1) {
                if !x.commutator(y)?.is_identity() {
                    return Err(HeisError::Invalid(format!("images {} and {} do not commute", i + 1, j + 1)));
                }
            }
        }
        if images.is_empty() {
            return Err(HeisError::Invalid("substitution needs at least the σ image".into()));
        }
        Ok(SubstitutionMap { images })
    }

    /// Standard substitution for the region: `s ↦ σ^-2`, `s_i ↦ b_i`,
    /// or `s_{2i-1} ↦ a_i, s_{2i} ↦ a_i^-1 σ^-2`; always `σ ↦ σ`.
    pub fn standard(region: Region, g: usize) -> Result<Self> {
        let mut images = Vec::new();
        for h in 0..region.holes(g) {
            images.push(match region {
                Region::HoledSphere => HeisenbergElement::sigma_pow(g, -2),
                Region::HalfSurface => HeisenbergElement::b_pow(g, h, 1),
                Region::Neighborhood if h % 2 == 0 => HeisenbergElement::a_pow(g, h / 2, 1),
                Region::Neighborhood => {
                    HeisenbergElement::a_pow(g, h / 2, -1).multiply(&HeisenbergElement::sigma_pow(g, -2))?
                }
            });
        }
        images.push(HeisenbergElement::sigma_pow(g, 1));
        Self::new(images)
    }

    pub fn images(&self) -> &[HeisenbergElement] {
        &self.images
    }

    /// Replaces one image without the commutation check (used to perturb a map).
    pub fn with_image(&self, i: usize, h: HeisenbergElement) -> Self {
        let mut images = self.images.clone();
        images[i] = h;
        SubstitutionMap { images }
    }

    pub fn apply(&self, m: &Monomial) -> Result<HeisenbergElement> {
        let g = self.images[0].genus();
        let mut acc = HeisenbergElement::identity(g);
        for (i, &e) in m.exponents().iter().enumerate() {
            let img = self
                .images
                .get(i)
                .ok_or_else(|| HeisError::Dimension(format!("monomial uses variable {} beyond the map", i + 1)))?;
            acc = acc.multiply(&img.pow(e))?;
        }
        Ok(acc)
    }

    pub fn apply_poly(&self, p: &LaurentPoly) -> Result<HeisRing> {
        let mut out = HeisRing::zero();
        for (m, c) in p.terms() {
            out.add_term(self.apply(m)?, c.clone());
        }
        Ok(out)
    }
}

/// A single-point style diagram inside a holed disk: signed points with loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskDiagram {
    pub points: Vec<(i8, DiskBraidWord)>,
}

/// Lawrence pairing `Σ ε_x φ_L(δ_x)|_{σ=-σ}` in the Laurent ring.
pub fn lawrence_pairing(d: &DiskDiagram, l: &DiskLocalSystem) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (sign, w) in &d.points {
        let m = crate::words::eval_disk(w, l)?;
        let flip = if m.exponent(l.sigma_var()) % 2 == 0 { 1 } else { -1 };
        out.add_term(m, BigInt::from(*sign as i64 * flip));
    }
    Ok(out)
}

/// The same pairing computed through `φ_n^{H_g}` restricted to the region.
pub fn heisenberg_pairing(d: &DiskDiagram, region: Region, g: usize) -> Result<HeisRing> {
    let mut out = HeisRing::zero();
    for (sign, w) in &d.points {
        out.add_term(restrict_word(region, g, w)?, BigInt::from(*sign as i64));
    }
    Ok(out.involution_sigma_neg())
}

/// A small fixed family of disk diagrams touching every generator.
pub fn standard_disk_diagrams(holes: usize, points: usize) -> Result<Vec<DiskDiagram>> {
    let mut out = Vec::new();
    for h in 1..=holes {
        let mut pts = vec![(1, DiskBraidWord::parse(&format!("h{h}"), holes, points)?)];
        pts.push((-1, DiskBraidWord::parse(&format!("H{h}^2"), holes, points)?));
        if points >= 2 {
            pts.push((1, DiskBraidWord::parse(&format!("s1 h{h} S1"), holes, points)?));
            pts.push((-1, DiskBraidWord::parse(&format!("s1^3 h{}", h % holes + 1), holes, points)?));
        }
        out.push(DiskDiagram { points: pts });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionReport {
    pub region: Region,
    pub generators_checked: usize,
    pub diagrams_checked: usize,
    /// Human-readable descriptions of every mismatch.
    pub failures: Vec<String>,
}

impl SubstitutionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `sub ∘ eval_disk = φ|_region` on every generator of the holed-disk
/// configuration braid group on `points` strands, and the induced equality of
/// pairing values on `diagrams`.
pub fn substitution_check(
    l: &DiskLocalSystem,
    sub: &SubstitutionMap,
    region: Region,
    g: usize,
    points: usize,
    diagrams: &[DiskDiagram],
) -> Result<SubstitutionReport> {
    let holes = region.holes(g);
    if l.holes != holes || sub.images.len() != holes + 1 {
        return Err(HeisError::Dimension(format!(
            "region {} has {holes} holes; local system has {}, substitution has {} hole images",
            region.label(),
            l.holes,
            sub.images.len().saturating_sub(1)
        )));
    }
    let mut gens: Vec<DiskGen> = (0..holes).map(DiskGen::Hole).collect();
    gens.extend((0..points.saturating_sub(1)).map(DiskGen::Exchange));
    let mut failures = Vec::new();
    for &gen in &gens {
        let w = DiskBraidWord::new(holes, points.max(1), vec![DiskLetter { gen, inverse: false }])?;
        let via_lawrence = sub.apply(&crate::words::eval_disk(&w, l)?)?;
        let direct = heisenberg_restriction(region, g, gen)?;
        if via_lawrence != direct {
            let name = match gen {
                DiskGen::Hole(i) => format!("hole loop {}", i + 1),
                DiskGen::Exchange(j) => format!("exchange {}", j + 1),
            };
            failures.push(format!("{name}: substitution gives {via_lawrence}, restriction gives {direct}"));
        }
    }
    for (i, d) in diagrams.iter().enumerate() {
        let lhs = sub.apply_poly(&lawrence_pairing(d, l)?)?;
        let rhs = heisenberg_pairing(d, region, g)?;
        if lhs != rhs {
            failures.push(format!("diagram {}: Lawrence side {lhs}, Heisenberg side {rhs}", i + 1));
        }
    }
    Ok(SubstitutionReport { region, generators_checked: gens.len(), diagrams_checked: diagrams.len(), failures })
}

/// Which generators a subgroup action moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    /// `a_i ↦ a_i b^{m^i}`, `b_i ↦ b_i`.
    Half,
    /// `a_i ↦ a_i`, `b_i ↦ b_i a^{m^i} σ^{l_i}`.
    Neighborhood,
}

/// `(M, l)` for a generator or a word in the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupActionRecord {
    pub kind: ActionKind,
    pub m: Vec<Vec<i64>>,
    pub l: Vec<i64>,
}

impl SubgroupActionRecord {
    pub fn new(kind: ActionKind, m: Vec<Vec<i64>>, l: Vec<i64>) -> Result<Self> {
        let g = l.len();
        if m.len() != g || m.iter().any(|r| r.len() != g) {
            return Err(HeisError::Dimension(format!("M must be {g}×{g}")));
        }
        for i in 0..g {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(HeisError::Invalid("M must be symmetric".into()));
                }
            }
        }
        Ok(SubgroupActionRecord { kind, m, l })
    }

    pub fn zero(kind: ActionKind, g: usize) -> Self {
        SubgroupActionRecord { kind, m: vec![vec![0; g]; g], l: vec![0; g] }
    }

    pub fn genus(&self) -> usize {
        self.l.len()
    }

    /// `M(τ_{c_i}) = E_ii`.
    pub fn twist_c(g: usize, i: usize) -> Self {
        let mut r = Self::zero(ActionKind::Half, g);
        r.m[i][i] = 1;
        r
    }

    /// `M(τ_{t_{i,j}}) = E_ij + E_ji + E_ii + E_jj`.
    pub fn twist_t(g: usize, i: usize, j: usize) -> Self {
        let mut r = Self::zero(ActionKind::Half, g);
        r.m[i][j] += 1;
        r.m[j][i] += 1;
        r.m[i][i] += 1;
        r.m[j][j] += 1;
        r
    }

    pub fn is_trivial(&self) -> bool {
        self.m.iter().flatten().all(|&x| x == 0) && self.l.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, e: i64) -> Self {
        SubgroupActionRecord {
            kind: self.kind,
            m: self.m.iter().map(|r| r.iter().map(|x| x * e).collect()).collect(),
            l: self.l.iter().map(|x| x * e).collect(),
        }
    }

    /// Composition; the contributions add.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind || self.genus() != other.genus() {
            return Err(HeisError::Invalid("cannot compose actions of different kinds or genera".into()));
        }
        let m = self.m.iter().zip(&other.m).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        let l = self.l.iter().zip(&other.l).map(|(x, y)| x + y).collect();
        Ok(SubgroupActionRecord { kind: self.kind, m, l })
    }

    fn generator_images(&self) -> (Vec<HeisenbergElement>, Vec<HeisenbergElement>) {
        let g = self.genus();
        let a_vec = |v: &[i64]| HeisenbergElement::from_i64(v, &vec![0; g], 0).expect("length g");
        let b_vec = |v: &[i64]| HeisenbergElement::from_i64(&vec![0; g], v, 0).expect("length g");
        let mut ai = Vec::with_capacity(g);
        let mut bi = Vec::with_capacity(g);
        for i in 0..g {
            match self.kind {
                ActionKind::Half => {
                    ai.push(HeisenbergElement::a_pow(g, i, 1).multiply(&b_vec(&self.m[i])).expect("same genus"));
                    bi.push(HeisenbergElement::b_pow(g, i, 1));
                }
                ActionKind::Neighborhood => {
                    ai.push(HeisenbergElement::a_pow(g, i, 1));
                    bi.push(
                        HeisenbergElement::b_pow(g, i, 1)
                            .multiply(&a_vec(&self.m[i]))
                            .and_then(|x| x.multiply(&HeisenbergElement::sigma_pow(g, self.l[i])))
                            .expect("same genus"),
                    );
                }
            }
        }
        (ai, bi)
    }

    /// `f_*(x)` for `x ∈ H_g`, extending the generator images multiplicatively.
    pub fn apply(&self, x: &HeisenbergElement) -> Result<HeisenbergElement> {
        let g = self.genus();
        if x.genus() != g {
            return Err(HeisError::GenusMismatch(x.genus(), g));
        }
        let small = |v: &BigInt| -> Result<i64> {
            i64::try_from(v).map_err(|_| HeisError::Invalid("exponent too large".into()))
        };
        let (ai, bi) = self.generator_images();
        let mut acc = HeisenbergElement::identity(g);
        for (i, e) in x.m().iter().enumerate() {
            acc = acc.multiply(&ai[i].pow(small(e)?))?;
        }
        for (i, e) in x.n().iter().enumerate() {
            acc = acc.multiply(&bi[i].pow(small(e)?))?;
        }
        acc.multiply(&HeisenbergElement::sigma_pow(g, x.l().clone()))?.reduce(x.quotient())
    }
}

/// Named generators of a subgroup together with their `(M, l)` records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCatalog {
    pub genus: usize,
    pub generators: BTreeMap<String, SubgroupActionRecord>,
}

impl SubgroupCatalog {
    /// `c1 … cg` and `t1_2, t1_3, …` (one-based).
    pub fn standard(g: usize) -> Self {
        let mut generators = BTreeMap::new();
        for i in 0..g {
            generators.insert(format!("c{}", i + 1), SubgroupActionRecord::twist_c(g, i));
            for j in i + 1..g {
                generators.insert(format!("t{}_{}", i + 1, j + 1), SubgroupActionRecord::twist_t(g, i, j));
            }
        }
        SubgroupCatalog { genus: g, generators }
    }

    /// Reads `{"genus": g, "generators": [{"name", "kind": "S"|"V", "M", "l"}]}`,
    /// added on top of the standard generators.
    pub fn from_json(v: &Value) -> Result<Self> {
        let g = v.get("genus").and_then(Value::as_u64).ok_or_else(|| HeisError::Missing("genus".into()))? as usize;
        let mut cat = Self::standard(g);
        for r in v.get("generators").and_then(Value::as_array).into_iter().flatten() {
            let name = r.get("name").and_then(Value::as_str).ok_or_else(|| HeisError::Missing("generator name".into()))?;
            let kind = match r.get("kind").and_then(Value::as_str).unwrap_or("S") {
                "S" | "S_g" => ActionKind::Half,
                "V" | "V_2g" => ActionKind::Neighborhood,
                k => return Err(HeisError::Invalid(format!("unknown action kind {k:?}"))),
            };
            let m: Vec<Vec<i64>> = serde_json::from_value(r.get("M").cloned().unwrap_or(Value::Null))
                .map_err(|e| HeisError::Invalid(format!("{name}.M: {e}")))?;
            let l: Vec<i64> = match r.get("l") {
                Some(x) => serde_json::from_value(x.clone()).map_err(|e| HeisError::Invalid(format!("{name}.l: {e}")))?,
                None => vec![0; g],
            };
            cat.generators.insert(name.into(), SubgroupActionRecord::new(kind, m, l)?);
        }
        Ok(cat)
    }
}

/// Sums the generator contributions of a twist word.
pub fn subgroup_mf(w: &TwistWord, cat: &SubgroupCatalog) -> Result<SubgroupActionRecord> {
    let mut acc: Option<SubgroupActionRecord> = None;
    for (name, e) in &w.0 {
        let r = cat
            .generators
            .get(name)
            .ok_or_else(|| HeisError::Unresolved(format!("unknown generator {name:?}")))?
            .scaled(*e);
        acc = Some(match acc {
            None => r,
            Some(a) => a.compose(&r)?,
        });
    }
    Ok(acc.unwrap_or_else(|| SubgroupActionRecord::zero(ActionKind::Half, cat.genus)))
}

/// Applies each twist of the word in turn (left to right) to `x`.
pub fn apply_word(w: &TwistWord, cat: &SubgroupCatalog, x: &HeisenbergElement) -> Result<HeisenbergElement> {
    let mut acc = x.clone();
    for (name, e) in w.0.iter().rev() {
        let r = cat.generators.get(name).ok_or_else(|| HeisError::Unresolved(format!("unknown generator {name:?}")))?;
        acc = r.scaled(*e).apply(&acc)?;
    }
    Ok(acc)
}
