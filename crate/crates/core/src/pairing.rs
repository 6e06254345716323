//! Twisted intersection pairings of arc diagrams.
//!
//! Diagrams carry their intersection data explicitly: for the single-point
//! pairing each intersection point has a sign and a loop (or its image in
//! `H_g`); for the n-point pairing of two arcs meeting in `k` points the data
//! are the σ-exponents `n_j` and the winding indices `A_{j,j'}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{HeisError, Result};
use crate::group_ring::HeisRing;
use crate::heisenberg::{HeisenbergElement, QuotientSpec};
use crate::words::{eval_heisenberg, separating_word_on, HeisAccumulator, SurfaceBraidWord, SurfaceGen, SurfaceLetter};

/// How the monomial of an intersection point is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLoop {
    /// `φ(δ_x) = σ^e`.
    SigmaExp(i64),
    /// A based loop on `Σ_{g,1}` (one strand).
    Word(SurfaceBraidWord),
    /// The image `φ(δ_x)` itself.
    Element(HeisenbergElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub sign: i8,
    pub loop_: PointLoop,
}

/// Intersection data of an arc and a dual arc, ordered along the first arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionDiagram1 {
    genus: usize,
    points: Vec<IntersectionPoint>,
}

impl IntersectionDiagram1 {
    pub fn new(genus: usize, points: Vec<IntersectionPoint>) -> Result<Self> {
        if genus == 0 {
            return Err(HeisError::Invalid("genus must be positive".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.sign != 1 && p.sign != -1 {
                return Err(HeisError::Invalid(format!("point {i}: sign must be ±1")));
            }
            match &p.loop_ {
                PointLoop::Word(w) if w.genus() != genus => return Err(HeisError::GenusMismatch(w.genus(), genus)),
                PointLoop::Element(h) if h.genus() != genus => {
                    return Err(HeisError::GenusMismatch(h.genus(), genus))
                }
                PointLoop::Element(h) if h.quotient() != QuotientSpec::Full => {
                    return Err(HeisError::QuotientMismatch(format!("point {i}: loop images live in full H_g")))
                }
                _ => {}
            }
        }
        Ok(IntersectionDiagram1 { genus, points })
    }

    pub fn empty(genus: usize) -> Self {
        IntersectionDiagram1 { genus, points: Vec::new() }
    }

    /// Convenience constructor from `(sign, σ-exponent)` pairs.
    pub fn from_sigma_exps(genus: usize, pts: &[(i8, i64)]) -> Result<Self> {
        Self::new(
            genus,
            pts.iter().map(|&(sign, e)| IntersectionPoint { sign, loop_: PointLoop::SigmaExp(e) }).collect(),
        )
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn points(&self) -> &[IntersectionPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Disjoint union of the two point sets.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(HeisError::GenusMismatch(self.genus, other.genus));
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        Ok(IntersectionDiagram1 { genus: self.genus, points })
    }

    pub fn signed_count(&self) -> i64 {
        self.points.iter().map(|p| p.sign as i64).sum()
    }

    fn loop_image(&self, p: &IntersectionPoint) -> HeisenbergElement {
        match &p.loop_ {
            PointLoop::SigmaExp(e) => HeisenbergElement::sigma_pow(self.genus, *e),
            PointLoop::Word(w) => eval_heisenberg(w, QuotientSpec::Full),
            PointLoop::Element(h) => h.clone(),
        }
    }

    /// Per-point contributions `ε_x · φ(δ_x)|_{σ=-σ}` in diagram order, reduced by `q`.
    pub fn contributions(&self, q: QuotientSpec) -> Result<Vec<HeisRing>> {
        self.points
            .iter()
            .map(|p| HeisRing::monomial(self.loop_image(p), p.sign as i64).involution_sigma_neg().reduce(q))
            .collect()
    }
}

/// Single-point twisted pairing.
pub fn pair_1pt(d: &IntersectionDiagram1, q: QuotientSpec) -> Result<HeisRing> {
    let mut out = HeisRing::zero();
    for c in d.contributions(q)? {
        out = out.add(&c);
    }
    Ok(out)
}

/// `(ε(⟨d⟩), signed point count)`; the two agree for every diagram.
pub fn augmentation_check(d: &IntersectionDiagram1) -> Result<(BigInt, i64)> {
    Ok((pair_1pt(d, QuotientSpec::Full)?.augment(), d.signed_count()))
}

/// Two arcs meeting in `k` points `x_0 … x_{k-1}`, with alternating signs
/// starting at `+1`, loop images `φ(η_j) = σ^{2 n_j}` and winding indices `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NPointDiagram {
    genus: usize,
    n_j: Vec<i64>,
    a: Vec<Vec<i64>>,
}

impl NPointDiagram {
    pub fn new(genus: usize, n_j: Vec<i64>, a: Vec<Vec<i64>>) -> Result<Self> {
        let k = n_j.len();
        if k == 0 {
            return Err(HeisError::Invalid("an n-point diagram needs at least one intersection point".into()));
        }
        if genus == 0 {
            return Err(HeisError::Invalid("genus must be positive".into()));
        }
        if a.len() != k || a.iter().any(|r| r.len() != k) {
            return Err(HeisError::Dimension(format!("A must be {k}×{k}")));
        }
        for i in 0..k {
            for j in 0..i {
                if a[i][j] != a[j][i] {
                    return Err(HeisError::Invalid(format!("A is not symmetric at ({}, {})", i, j)));
                }
            }
        }
        Ok(NPointDiagram { genus, n_j, a })
    }

    /// `k` points, all `A = 0`.
    pub fn unlinked(genus: usize, n_j: Vec<i64>) -> Result<Self> {
        let k = n_j.len();
        Self::new(genus, n_j, vec![vec![0; k]; k])
    }

    /// The genus-`d` bigon: two points with `n = (0, d)` and `A = 0`.
    pub fn bigon(genus: usize, d: i64) -> Self {
        Self::unlinked(genus, vec![0, d]).expect("two points")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn k(&self) -> usize {
        self.n_j.len()
    }
    pub fn n_j(&self) -> &[i64] {
        &self.n_j
    }
    pub fn a(&self) -> &[Vec<i64>] {
        &self.a
    }
}

/// Signed σ-exponent histogram of the n-point sum: `exp ↦ coefficient`.
fn npt_histogram(d: &NPointDiagram, n: usize) -> BTreeMap<i128, i128> {
    let k = d.k();
    let max_n = d.n_j.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as i128;
    let max_a = d.a.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(0) as i128;
    let n128 = n as i128;
    let bound = 2 * n128 * max_n + n128 * (n128 - 1) / 2 * max_a;
    let width = (2 * bound + 1) as usize;

    // Chunk on the first index; the merge below is order independent.
    let partials: Vec<Vec<i128>> = (0..k)
        .into_par_iter()
        .map(|first| {
            let mut hist = vec![0i128; width];
            let mut cnt = vec![0usize; k];
            let mut stack: Vec<usize> = Vec::with_capacity(n);
            npt_dfs(d, n, first, &mut cnt, &mut stack, 0, 0, 0, bound, &mut hist);
            hist
        })
        .collect();
    let mut out = BTreeMap::new();
    for idx in 0..width {
        let c: i128 = partials.iter().map(|h| h[idx]).sum();
        if c != 0 {
            out.insert(idx as i128 - bound, c);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn npt_dfs(
    d: &NPointDiagram,
    n: usize,
    next: usize,
    cnt: &mut [usize],
    stack: &mut Vec<usize>,
    parity: u32,
    two_n: i128,
    wind: i128,
    bound: i128,
    hist: &mut [i128],
) {
    // Winding of the new point against all earlier ones.
    let add_wind: i128 = (0..d.k()).map(|c| cnt[c] as i128 * d.a[c][next] as i128).sum();
    let parity = parity + next as u32;
    let two_n = two_n + 2 * d.n_j[next] as i128;
    let wind = wind + add_wind;
    if stack.len() + 1 == n {
        // (-1)^{Σ i} σ^{2Σ n} (-σ)^{ΣA}
        let sign = if (parity as i128 + wind).rem_euclid(2) == 0 { 1 } else { -1 };
        hist[(two_n + wind + bound) as usize] += sign;
        return;
    }
    cnt[next] += 1;
    stack.push(next);
    for i in 0..d.k() {
        npt_dfs(d, n, i, cnt, stack, parity, two_n, wind, bound, hist);
    }
    stack.pop();
    cnt[next] -= 1;
}

/// n-point twisted pairing of the two arcs, reduced by `q`.
pub fn pair_npt(d: &NPointDiagram, n: usize, q: QuotientSpec) -> Result<HeisRing> {
    if n == 0 {
        return Err(HeisError::Invalid("configuration size must be at least 1".into()));
    }
    let mut out = HeisRing::zero();
    for (e, c) in npt_histogram(d, n) {
        out = out.add(&HeisRing::sigma_term(d.genus, QuotientSpec::Full, e, c).reduce(q)?);
    }
    Ok(out)
}

/// Independent evaluation of [`pair_npt`]: every tuple's loop is assembled as
/// a surface braid word on `n` strands and evaluated letter by letter.
///
/// `η_j` is a separating loop around `|n_j|` handles, so the oracle needs
/// genus at least `max |n_j|`; it runs in that genus and maps back.
pub fn pair_npt_oracle(d: &NPointDiagram, n: usize, q: QuotientSpec) -> Result<HeisRing> {
    if n == 0 {
        return Err(HeisError::Invalid("configuration size must be at least 1".into()));
    }
    let k = d.k();
    let g = d.n_j.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0).max(1);
    let etas: Vec<SurfaceBraidWord> = d
        .n_j
        .iter()
        .map(|&x| {
            let handles: Vec<usize> = (0..x.unsigned_abs() as usize).collect();
            separating_word_on(g, &handles, if x < 0 { -1 } else { 1 })
        })
        .collect::<Result<_>>()?;
    let exch = |e: i64| SurfaceLetter::new(SurfaceGen::Sigma(0), e < 0);
    let total = k.checked_pow(n as u32).ok_or_else(|| HeisError::Invalid("too many tuples".into()))?;
    let mut sigma_coeffs: BTreeMap<i128, i64> = BTreeMap::new();
    let mut tuple = vec![0usize; n];
    for _ in 0..total {
        let mut acc = HeisAccumulator::new(g);
        for j in 0..n {
            acc.push_word(etas[tuple[j]].letters());
            for l in 0..j {
                let a = d.a[tuple[l]][tuple[j]];
                for _ in 0..a.unsigned_abs() {
                    acc.push(exch(a));
                }
            }
        }
        let l = acc
            .central_exponent()
            .ok_or_else(|| HeisError::Invalid("tuple loop is not central".into()))?;
        // sign of the point times the σ ↦ -σ involution
        let parity = tuple.iter().sum::<usize>() as i128 + l;
        *sigma_coeffs.entry(l).or_insert(0) += if parity.rem_euclid(2) == 0 { 1 } else { -1 };
        // odometer
        for slot in tuple.iter_mut() {
            *slot += 1;
            if *slot < k {
                break;
            }
            *slot = 0;
        }
    }
    let mut out = HeisRing::zero();
    for (e, c) in sigma_coeffs {
        if c != 0 {
            out = out.add(&HeisRing::sigma_term(d.genus, QuotientSpec::Full, e, c).reduce(q)?);
        }
    }
    Ok(out)
}

/// A pair `(a, b) ∈ N^g × N^g` with `Σ a_i + Σ b_i = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Composition {
    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(HeisError::Dimension("a and b must have the same positive length".into()));
        }
        Ok(Composition { a, b })
    }

    pub fn genus(&self) -> usize {
        self.a.len()
    }

    pub fn size(&self) -> usize {
        self.a.iter().chain(&self.b).sum()
    }

    /// Point counts per basis arc in the order `α_1, β_1, …, α_g, β_g`.
    pub fn arc_counts(&self) -> Vec<usize> {
        self.a.iter().zip(&self.b).flat_map(|(x, y)| [*x, *y]).collect()
    }

    fn from_arc_counts(c: &[usize]) -> Self {
        Composition { a: c.iter().step_by(2).copied().collect(), b: c.iter().skip(1).step_by(2).copied().collect() }
    }

    /// All compositions, in lexicographic order of [`Composition::arc_counts`].
    pub fn enumerate(g: usize, n: usize) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; 2 * g];
        fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Composition::from_arc_counts(cur));
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
        }
        if g > 0 {
            rec(0, n, &mut cur, &mut out);
        }
        out.sort_by_key(|c| c.arc_counts());
        out
    }
}

/// `N_{g,n} = C(2g + n - 1, n)`.
pub fn basis_size(g: usize, n: usize) -> BigInt {
    let top = 2 * g + n - 1;
    let mut c = BigInt::one();
    for i in 0..n {
        c = c * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    c
}

/// Number of intersecting configurations between `n` points distributed on
/// basis arcs by `c` and the parallelized dual family of `c'`, when basis arc
/// `i` meets each parallel copy of dual arc `j` in `meet[i][j]` points.
///
/// Each dual copy carries exactly one configuration point; with `X_{ij}`
/// copies of dual `j` landing on arc `i`, the count is
/// `Σ_X Π_j (c'_j! / Π_i X_{ij}!) Π_i meet[i][j]^{X_{ij}}`.
pub fn intersecting_configurations(c: &[usize], cp: &[usize], meet: &[Vec<usize>]) -> BigInt {
    let m = c.len();
    let fact = |x: usize| -> BigInt { (1..=x).map(BigInt::from).product() };
    // Distribute the copies of each dual arc column by column.
    fn cols(
        j: usize,
        need: &mut Vec<usize>,
        cp: &[usize],
        meet: &[Vec<usize>],
        fact: &dyn Fn(usize) -> BigInt,
    ) -> BigInt {
        if j == cp.len() {
            return if need.iter().all(|&x| x == 0) { BigInt::one() } else { BigInt::zero() };
        }
        let mut total = BigInt::zero();
        let mut x = vec![0usize; need.len()];
        fn split(
            i: usize,
            left: usize,
            x: &mut Vec<usize>,
            j: usize,
            need: &mut Vec<usize>,
            cp: &[usize],
            meet: &[Vec<usize>],
            fact: &dyn Fn(usize) -> BigInt,
            total: &mut BigInt,
        ) {
            if i == x.len() {
                if left != 0 {
                    return;
                }
                let mut w = fact(cp[j]);
                for (r, &xi) in x.iter().enumerate() {
                    w = w / fact(xi) * BigInt::from(meet[r][j]).pow(xi as u32);
                }
                if w.is_zero() {
                    return;
                }
                for (r, &xi) in x.iter().enumerate() {
                    need[r] -= xi;
                }
                *total += w * cols(j + 1, need, cp, meet, fact);
                for (r, &xi) in x.iter().enumerate() {
                    need[r] += xi;
                }
                return;
            }
            for v in 0..=left.min(need[i]) {
                x[i] = v;
                split(i + 1, left - v, x, j, need, cp, meet, fact, total);
            }
            x[i] = 0;
        }
        split(0, cp[j], &mut x, j, need, cp, meet, fact, &mut total);
        total
    }
    let mut need = c.to_vec();
    debug_assert_eq!(need.len(), m);
    cols(0, &mut need, cp, meet, &fact)
}

/// `⟨Γ(c), Γ†(c')⟩` for the standard basis and dual family.
///
/// Basis arc `i` meets only dual arc `i`, once and positively, and the loop
/// of the unique configuration (when it exists) is trivial.
pub fn dual_pairing(c: &Composition, cp: &Composition) -> Result<HeisRing> {
    if c.genus() != cp.genus() || c.size() != cp.size() {
        return Err(HeisError::Dimension(format!(
            "compositions of different shape: (g={}, n={}) vs (g={}, n={})",
            c.genus(),
            c.size(),
            cp.genus(),
            cp.size()
        )));
    }
    let g = c.genus();
    let meet: Vec<Vec<usize>> = (0..2 * g).map(|i| (0..2 * g).map(|j| usize::from(i == j)).collect()).collect();
    let count = intersecting_configurations(&c.arc_counts(), &cp.arc_counts(), &meet);
    Ok(HeisRing::monomial(HeisenbergElement::identity(g), count))
}

/// Gram matrix `⟨Γ(c_i), Γ†(c_j)⟩` over all compositions of `n` into `2g` parts.
pub fn dual_gram(g: usize, n: usize) -> Result<Vec<Vec<HeisRing>>> {
    let basis = Composition::enumerate(g, n);
    basis.iter().map(|c| basis.iter().map(|cp| dual_pairing(c, cp)).collect()).collect()
}

/// Diagrams found by [`kernel_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchHit {
    /// Sorted multiset of `(sign, σ-exponent)` points.
    OnePoint(Vec<(i8, i64)>),
    NPoint { diagram: NPointDiagram, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest number of intersection points.
    pub max_k: usize,
    /// Largest `|σ-exponent|` of a single-point loop, and largest `|n_j|` for n-point diagrams.
    pub exponent_bound: i64,
    /// Largest `|A_{j,j'}|`.
    pub winding_bound: i64,
    /// Configuration sizes for n-point diagrams; empty means single-point only.
    pub n_values: Vec<usize>,
    /// Refuse when the estimated work exceeds this many elementary steps.
    pub limit: u128,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_k: 2, exponent_bound: 2, winding_bound: 0, n_values: Vec::new(), limit: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub examined: u128,
    pub hits: Vec<SearchHit>,
}

fn binom(n: u128, k: u128) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.saturating_mul(n - i) / (i + 1);
    }
    c
}

/// Work estimate for [`kernel_search`].
pub fn search_cost(b: &SearchBounds) -> u128 {
    // One-point: multisets of size k over 2·(#even exponents) point types.
    let types = 2 * (b.exponent_bound.max(0) as u128 / 2 * 2 + 1);
    let mut cost: u128 = 0;
    for k in 1..=b.max_k as u128 {
        cost = cost.saturating_add(binom(types + k - 1, k).saturating_mul(k));
    }
    let ne = 2 * b.exponent_bound.max(0) as u128 + 1;
    let na = 2 * b.winding_bound.max(0) as u128 + 1;
    for k in 2..=b.max_k as u32 {
        let diagrams = ne.saturating_pow(k - 1).saturating_mul(na.saturating_pow(k * (k - 1) / 2));
        for &n in &b.n_values {
            cost = cost.saturating_add(diagrams.saturating_mul((k as u128).saturating_pow(n as u32)));
        }
    }
    cost
}

/// Exhaustive search for diagrams with vanishing pairing.
///
/// Single-point diagrams are enumerated as multisets of points whose loops
/// are even σ-powers `σ^e`, `|e| ≤ exponent_bound` (the pairing ignores the
/// order of points). n-point diagrams are normalized by `n_0 = 0`.
pub fn kernel_search(bounds: &SearchBounds, q: QuotientSpec) -> Result<SearchReport> {
    let estimate = search_cost(bounds);
    if estimate > bounds.limit {
        return Err(HeisError::TooLarge { estimate, limit: bounds.limit });
    }
    let g = 1;
    let mut examined = 0u128;
    let mut hits = Vec::new();

    let eb = bounds.exponent_bound.max(0);
    let mut types: Vec<(i8, i64)> = Vec::new();
    for e in (-eb..=eb).filter(|e| e % 2 == 0) {
        types.push((1, e));
        types.push((-1, e));
    }
    types.sort();
    for k in 1..=bounds.max_k {
        let mut idx = vec![0usize; k];
        loop {
            examined += 1;
            let pts: Vec<(i8, i64)> = idx.iter().map(|&i| types[i]).collect();
            if pair_1pt(&IntersectionDiagram1::from_sigma_exps(g, &pts)?, q)?.is_zero() {
                hits.push(SearchHit::OnePoint(pts));
            }
            // next non-decreasing index tuple
            let Some(p) = (0..k).rev().find(|&p| idx[p] + 1 < types.len()) else { break };
            let v = idx[p] + 1;
            for slot in idx[p..].iter_mut() {
                *slot = v;
            }
        }
    }

    let wb = bounds.winding_bound.max(0);
    for k in 2..=bounds.max_k {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let mut nv = vec![-eb; k - 1];
        loop {
            let mut av = vec![-wb; pairs.len()];
            loop {
                let mut a = vec![vec![0i64; k]; k];
                for (&(i, j), &x) in pairs.iter().zip(&av) {
                    a[i][j] = x;
                    a[j][i] = x;
                }
                let mut n_j = vec![0i64];
                n_j.extend(&nv);
                let d = NPointDiagram::new(g, n_j, a)?;
                for &n in &bounds.n_values {
                    examined += 1;
                    if pair_npt(&d, n, q)?.is_zero() {
                        hits.push(SearchHit::NPoint { diagram: d.clone(), n });
                    }
                }
                if !odometer(&mut av, -wb, wb) {
                    break;
                }
            }
            if !odometer(&mut nv, -eb, eb) {
                break;
            }
        }
    }
    Ok(SearchReport { examined, hits })
}

fn odometer(v: &mut [i64], lo: i64, hi: i64) -> bool {
    for x in v.iter_mut() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

/// A diagram read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    OnePoint(IntersectionDiagram1),
    NPoint { diagram: NPointDiagram, n: Option<usize> },
}

fn infer_genus(text: &str) -> usize {
    let mut g = 1;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if matches!(c, 'a' | 'b' | 'A' | 'B') {
            let mut num = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                num.push(*d);
                chars.next();
            }
            if let Ok(i) = num.parse::<usize>() {
                g = g.max(i);
            }
        }
    }
    g
}

fn get_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| HeisError::Invalid(format!("{what} must be an integer")))
}

impl Diagram {
    pub fn from_json(v: &Value) -> Result<Diagram> {
        let ty = v.get("type").and_then(Value::as_str).ok_or_else(|| HeisError::Missing("type".into()))?;
        let genus_field = v.get("genus").map(|x| get_i64(x, "genus")).transpose()?;
        match ty {
            "one_point" => {
                let pts = v.get("points").and_then(Value::as_array).ok_or_else(|| HeisError::Missing("points".into()))?;
                let g = match genus_field {
                    Some(g) if g > 0 => g as usize,
                    Some(_) => return Err(HeisError::Invalid("genus must be positive".into())),
                    None => pts
                        .iter()
                        .filter_map(|p| p.get("loop").and_then(Value::as_str))
                        .map(infer_genus)
                        .max()
                        .unwrap_or(1),
                };
                let mut points = Vec::with_capacity(pts.len());
                for (i, p) in pts.iter().enumerate() {
                    let sign = get_i64(p.get("sign").ok_or_else(|| HeisError::Missing(format!("points[{i}].sign")))?, "sign")?;
                    if sign != 1 && sign != -1 {
                        return Err(HeisError::Invalid(format!("points[{i}].sign must be ±1")));
                    }
                    let loop_ = if let Some(e) = p.get("sigma_exp") {
                        PointLoop::SigmaExp(get_i64(e, "sigma_exp")?)
                    } else if let Some(w) = p.get("loop") {
                        let text = w.as_str().ok_or_else(|| HeisError::Invalid("loop must be a string".into()))?;
                        PointLoop::Word(SurfaceBraidWord::parse(text, g, 1)?)
                    } else if let Some(e) = p.get("element") {
                        PointLoop::Element(HeisenbergElement::from_json(e)?)
                    } else {
                        return Err(HeisError::Missing(format!("points[{i}]: one of sigma_exp, loop, element")));
                    };
                    points.push(IntersectionPoint { sign: sign as i8, loop_ });
                }
                Ok(Diagram::OnePoint(IntersectionDiagram1::new(g, points)?))
            }
            "n_point" => {
                let n_j: Vec<i64> = v
                    .get("n_j")
                    .and_then(Value::as_array)
                    .ok_or_else(|| HeisError::Missing("n_j".into()))?
                    .iter()
                    .map(|x| get_i64(x, "n_j entry"))
                    .collect::<Result<_>>()?;
                let a: Vec<Vec<i64>> = match v.get("A") {
                    None => vec![vec![0; n_j.len()]; n_j.len()],
                    Some(rows) => rows
                        .as_array()
                        .ok_or_else(|| HeisError::Invalid("A must be an array of rows".into()))?
                        .iter()
                        .map(|r| {
                            r.as_array()
                                .ok_or_else(|| HeisError::Invalid("A must be an array of rows".into()))?
                                .iter()
                                .map(|x| get_i64(x, "A entry"))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<_>>()?,
                };
                let g = genus_field.unwrap_or(1);
                if g <= 0 {
                    return Err(HeisError::Invalid("genus must be positive".into()));
                }
                let n = v.get("n").map(|x| get_i64(x, "n")).transpose()?.map(|x| x as usize);
                Ok(Diagram::NPoint { diagram: NPointDiagram::new(g as usize, n_j, a)?, n })
            }
            other => Err(HeisError::Invalid(format!("unknown diagram type {other:?}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Diagram::OnePoint(d) => {
                let pts: Vec<Value> = d
                    .points
                    .iter()
                    .map(|p| match &p.loop_ {
                        PointLoop::SigmaExp(e) => json!({"sign": p.sign, "sigma_exp": e}),
                        PointLoop::Word(w) => json!({"sign": p.sign, "loop": w.to_string()}),
                        PointLoop::Element(h) => json!({"sign": p.sign, "element": h.to_json()}),
                    })
                    .collect();
                json!({"type": "one_point", "genus": d.genus, "points": pts})
            }
            Diagram::NPoint { diagram, n } => {
                let mut v = json!({"type": "n_point", "genus": diagram.genus, "n_j": diagram.n_j, "A": diagram.a});
                if let Some(n) = n {
                    v["n"] = json!(n);
                }
                v
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_basics() {
        let d = IntersectionDiagram1::from_sigma_exps(2, &[(1, 0), (-1, 4)]).unwrap();
        assert!(!pair_1pt(&d, QuotientSpec::Full).unwrap().is_zero());
        assert!(pair_1pt(&d, QuotientSpec::ModSigma(4)).unwrap().is_zero());
        assert!(pair_1pt(&IntersectionDiagram1::empty(3), QuotientSpec::Full).unwrap().is_zero());
        let odd = IntersectionDiagram1::from_sigma_exps(1, &[(1, 1)]).unwrap();
        assert_eq!(pair_1pt(&odd, QuotientSpec::Full).unwrap(), HeisRing::sigma_term(1, QuotientSpec::Full, 1, -1));
    }

    #[test]
    fn npt_single_point_is_one() {
        let d = NPointDiagram::unlinked(1, vec![0]).unwrap();
        for n in 1..5 {
            assert!(pair_npt(&d, n, QuotientSpec::Full).unwrap().is_one());
        }
    }

    #[test]
    fn npt_matches_oracle_small() {
        let d = NPointDiagram::new(1, vec![1, -2], vec![vec![0, 1], vec![1, 0]]).unwrap();
        for n in 1..4 {
            assert_eq!(
                pair_npt(&d, n, QuotientSpec::Full).unwrap(),
                pair_npt_oracle(&d, n, QuotientSpec::Full).unwrap()
            );
        }
    }

    #[test]
    fn rejects_asymmetric_a() {
        assert!(NPointDiagram::new(1, vec![0, 1], vec![vec![0, 1], vec![2, 0]]).is_err());
    }

    #[test]
    fn compositions_and_duality() {
        assert_eq!(Composition::enumerate(1, 2).len(), 3);
        assert_eq!(basis_size(2, 3), BigInt::from(20));
        let gram = dual_gram(1, 2).unwrap();
        for (i, row) in gram.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn search_refuses_large_bounds() {
        let b = SearchBounds { max_k: 12, exponent_bound: 10, n_values: vec![6], limit: 1000, ..Default::default() };
        assert!(matches!(kernel_search(&b, QuotientSpec::Full), Err(HeisError::TooLarge { .. })));
    }

    #[test]
    fn json_round_trip() {
        let v: Value = serde_json::from_str(r#"{"type":"one_point","points":[{"sign":1,"sigma_exp":-2},{"sign":-1,"loop":"a2 b2 A2 B2"}]}"#).unwrap();
        let d = Diagram::from_json(&v).unwrap();
        let Diagram::OnePoint(ref d1) = d else { panic!() };
        assert_eq!(d1.genus(), 2);
        assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
        let v: Value = serde_json::from_str(r#"{"type":"n_point","n_j":[0,3],"A":[[0,1],[1,0]]}"#).unwrap();
        assert!(matches!(Diagram::from_json(&v).unwrap(), Diagram::NPoint { .. }));
    }
}
