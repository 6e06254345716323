//! The verification battery behind `heisrep verify --suite paper`.
//!
//! Each check returns a pass/fail status and a JSON witness. Witnesses carry
//! no timings, so the report is identical across runs; timing budgets are
//! enforced as booleans.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{HeisError, Result};
use crate::fixtures;
use crate::group_ring::HeisRing;
use crate::heisenberg::{HeisenbergElement, QuotientSpec};
use crate::lawrence::{
    burau, gassner, permutation_matrix, specialize_at_one, specialize_to_one_variable, standard_disk_diagrams,
    subgroup_mf, apply_word, substitution_check, BurauVariant, Region, SubgroupCatalog, SubstitutionMap,
};
use crate::linearize::{
    annihilator_certificate, annihilator_certificate_for, iota_r, iota_r_element, iota_r_specialized_generators,
    suprataut, suprataut_aut, suprataut_decode, suprataut_heis, tautological_scaled, AnnihilatorCertificate,
};
use crate::matrix::{IntMatrix, RationalMatrix};
use crate::pairing::{
    augmentation_check, basis_size, dual_gram, pair_1pt, pair_npt, pair_npt_oracle, Diagram, NPointDiagram,
};
use crate::rep_one::{infinite_order_witness, kernel_certificate, CurveCatalog, SeparatingCurveData, TwistWord};
use crate::sample::{self, ChaCha8Rng};
use crate::semidirect::{j_matrix, AutPlusElement};
use crate::words::{
    eval_heisenberg, separating_word, BraidWord, DiskLocalSystem, SurfaceGen, SurfaceLetter,
};

/// `(id, label)` for every check, in report order.
pub const CHECKS: &[(u8, &str)] = &[
    (1, "normal form agrees with tautological matrices"),
    (2, "separating curves evaluate to even sigma powers"),
    (3, "eight-point kernel diagram cancels"),
    (4, "curve pairs with trivial twist commutator mod sigma^2k"),
    (5, "standard basis and dual family are dual"),
    (6, "augmentation recovers the signed intersection count"),
    (7, "supra-tautological blocks, commutation and injectivity"),
    (8, "iota on H_{g,r}: relations and nonvanishing"),
    (9, "annihilator certificates for specialized iota images"),
    (10, "infinite-order witness coefficients grow linearly"),
    (11, "n-point formula against word assembly; bigon vanishing"),
    (12, "Burau and Gassner relations and specializations"),
    (13, "Lawrence local systems as Heisenberg restrictions"),
    (14, "abelian subgroup action is a homomorphism"),
];

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: u8,
    pub anchor: &'static str,
    pub passed: bool,
    pub witness: Value,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "anchor": self.anchor,
            "status": if self.passed { "pass" } else { "fail" },
            "witness": self.witness,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": "paper",
            "passed": self.passed(),
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn run_check(id: u8) -> Result<CheckResult> {
    let anchor = CHECKS
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, a)| *a)
        .ok_or_else(|| HeisError::Index(format!("no check {id}")))?;
    let t0 = Instant::now();
    let outcome = match id {
        1 => check_heisenberg_oracle(),
        2 => check_separating_curves(),
        3 => check_kernel_8pt(),
        4 => check_kernel_pairs(),
        5 => check_duality(),
        6 => check_augmentation(),
        7 => check_suprataut(),
        8 => check_iota_r(),
        9 => check_annihilator(),
        10 => check_infinite_order(),
        11 => check_npoint(),
        12 => check_burau_gassner(),
        13 => check_substitution(),
        _ => check_subgroup_action(),
    };
    let (passed, witness) = outcome.unwrap_or_else(|e| (false, json!({ "error": e.to_string() })));
    Ok(CheckResult { id, anchor, passed, witness, elapsed: t0.elapsed() })
}

pub fn run_suite() -> SuiteReport {
    SuiteReport { checks: CHECKS.iter().map(|(id, _)| run_check(*id).expect("listed id")).collect() }
}

type Outcome = Result<(bool, Value)>;

const FULL: QuotientSpec = QuotientSpec::Full;

// ---- 1 ------------------------------------------------------------------

/// Right multiplication by the scaled tautological matrix of one letter,
/// which is `I + c E_{r,s}`.
fn push_letter_matrix(acc: &mut [Vec<i128>], g: usize, letter: SurfaceLetter) {
    let e: i128 = if letter.inverse { -1 } else { 1 };
    let (r, s, c) = match letter.gen {
        SurfaceGen::Alpha(i) => (0, i + 1, 2 * e),
        SurfaceGen::Beta(i) => (i + 1, g + 1, e),
        SurfaceGen::Sigma(_) => (0, g + 1, e),
    };
    for row in acc.iter_mut() {
        row[s] += c * row[r];
    }
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i128::try_from(x).expect("small entries")).collect()).collect()
}

fn check_heisenberg_oracle() -> Outcome {
    let mut rng = sample::rng(1);
    let t0 = Instant::now();
    let products = 10_000;
    let mut mismatches = 0usize;
    let mut first = Value::Null;
    for _ in 0..products {
        let g = rng.gen_range(1..=4);
        let (l1, l2) = (rng.gen_range(0..=40), rng.gen_range(0..=40));
        let w1 = sample::surface_word(&mut rng, g, 1, l1);
        let w2 = sample::surface_word(&mut rng, g, 1, l2);
        let x = eval_heisenberg(&w1, FULL).multiply(&eval_heisenberg(&w2, FULL))?;
        let nf = to_i128(&tautological_scaled(&x)?);
        let mut acc: Vec<Vec<i128>> = (0..g + 2).map(|i| (0..g + 2).map(|j| (i == j) as i128).collect()).collect();
        for &letter in w1.letters().iter().chain(w2.letters()) {
            push_letter_matrix(&mut acc, g, letter);
        }
        if acc != nf {
            mismatches += 1;
            if first.is_null() {
                first = json!({"w1": w1.to_string(), "w2": w2.to_string(), "normal_form": x.to_string()});
            }
        }
    }
    let fast = t0.elapsed() < Duration::from_secs(5);
    Ok((
        mismatches == 0 && fast,
        json!({"products": products, "mismatches": mismatches, "first_mismatch": first, "within_5s": fast}),
    ))
}

// ---- 2 ------------------------------------------------------------------

fn check_separating_curves() -> Outcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in 1..=5 {
        for k in 1..=g {
            for eps in [1i32, -1] {
                let got = eval_heisenberg(&separating_word(g, k, eps)?, FULL);
                let want = HeisenbergElement::sigma_pow(g, 2 * eps as i64 * k as i64);
                cases += 1;
                if got != want {
                    failures.push(json!({"g": g, "k": k, "eps": eps, "got": got.to_string()}));
                }
            }
        }
    }
    Ok((failures.is_empty(), json!({"cases": cases, "failures": failures})))
}

// ---- 3 ------------------------------------------------------------------

fn check_kernel_8pt() -> Outcome {
    let v = fixtures::json("kernel_8pt.json")?;
    let Diagram::OnePoint(d) = Diagram::from_json(&v)? else {
        return Err(HeisError::Invalid("kernel_8pt is not a one-point diagram".into()));
    };
    let g = d.genus();
    let expected_exps = [-2i64, -4, -2, 0, -4, -2, 0, -2];
    let contributions = d.contributions(FULL)?;
    let expected: Vec<HeisRing> = expected_exps
        .iter()
        .enumerate()
        .map(|(i, &e)| HeisRing::sigma_term(g, FULL, e, if i % 2 == 0 { 1 } else { -1 }))
        .collect();
    let total = pair_1pt(&d, FULL)?;
    let seq_ok = contributions == expected;
    Ok((
        seq_ok && total.is_zero(),
        json!({
            "genus": g,
            "sequence": contributions.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "sequence_matches": seq_ok,
            "pairing": total.to_string(),
        }),
    ))
}

// ---- 4 ------------------------------------------------------------------

fn check_kernel_pairs() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 1..=3 {
        let t0 = Instant::now();
        let v = fixtures::json(&format!("kernel_pair_k{k}.json"))?;
        let cat = CurveCatalog::from_json(&v)?;
        let q = cat.quotient.ok_or_else(|| HeisError::Missing("quotient".into()))?;
        let alpha = cat.get("alpha")?;
        let beta = cat.get("beta")?;
        let pairing = alpha.pair_with(&beta.curve_class, q)?;
        let word = TwistWord::parse(v.get("word").and_then(Value::as_str).unwrap_or("Talpha Tbeta Talpha^-1 Tbeta^-1"))?;
        let report = kernel_certificate(&word, &cat, q)?;
        let fast = t0.elapsed() < Duration::from_secs(1);
        let pass = pairing.is_zero() && report.is_identity_on_basis && fast;
        ok &= pass;
        rows.push(json!({
            "k": k, "genus": cat.genus, "quotient": q.to_string(),
            "pairing": pairing.to_string(), "identity_on_basis": report.is_identity_on_basis,
            "basis_vectors": 2 * cat.genus, "within_1s": fast,
        }));
    }
    Ok((ok, json!({ "pairs": rows })))
}

// ---- 5 ------------------------------------------------------------------

fn check_duality() -> Outcome {
    let limit = BigInt::from(50);
    let mut cases = Vec::new();
    let mut ok = true;
    let mut g = 1;
    while basis_size(g, 1) <= limit {
        let mut n = 1;
        while basis_size(g, n) <= limit {
            let gram = dual_gram(g, n)?;
            let one = HeisRing::one(g);
            let identity = gram.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, x)| if i == j { *x == one } else { x.is_zero() })
            });
            ok &= identity;
            cases.push(json!([g, n, gram.len(), identity]));
            n += 1;
        }
        g += 1;
    }
    Ok((ok, json!({ "cases_g_n_size_identity": cases })))
}

// ---- 6 ------------------------------------------------------------------

fn check_augmentation() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for name in fixtures::one_point_names() {
        let Diagram::OnePoint(d) = Diagram::from_json(&fixtures::json(name)?)? else { continue };
        let (eps, count) = augmentation_check(&d)?;
        let same = eps == BigInt::from(count);
        ok &= same;
        rows.push(json!({"fixture": name, "augmentation": eps.to_string(), "signed_count": count}));
    }
    Ok((ok && !rows.is_empty(), json!({ "fixtures": rows })))
}

// ---- 7 ------------------------------------------------------------------

fn coords(x: &HeisenbergElement) -> Vec<BigInt> {
    x.m().iter().chain(x.n()).cloned().collect()
}

fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..m.rows()).map(|i| m.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `ι(σ)^e = I + e E_{1,2g+2}`.
fn iota_sigma_pow(g: usize, e: &BigInt) -> IntMatrix {
    let mut m = IntMatrix::int_identity(2 * g + 2);
    m.set(0, 2 * g + 1, e.clone());
    m
}

/// Expected `ι(x)` assembled directly from the block description.
fn suprataut_blocks(x: &HeisenbergElement) -> IntMatrix {
    let g = x.genus();
    let xv = coords(x);
    let jx = mat_vec(&j_matrix(g), &xv);
    let mut m = IntMatrix::int_identity(2 * g + 2);
    for i in 0..2 * g {
        m.set(0, i + 1, jx[i].clone());
        m.set(i + 1, 2 * g + 1, xv[i].clone());
    }
    let mn: BigInt = x.m().iter().zip(x.n()).map(|(a, b)| a * b).sum();
    m.set(0, 2 * g + 1, x.l() + mn);
    m
}

fn aut_blocks(f: &AutPlusElement) -> IntMatrix {
    let g = f.genus();
    let mut m = IntMatrix::int_identity(2 * g + 2);
    for i in 0..2 * g {
        for j in 0..2 * g {
            m.set(i + 1, j + 1, f.matrix_part().get(i, j).clone());
        }
        m.set(i + 1, 2 * g + 1, f.translation_part()[i].clone());
    }
    m
}

fn check_suprataut() -> Outcome {
    let mut rng = sample::rng(7);
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |what: String| {
        if failures.len() < 10 {
            failures.push(what);
        }
    };
    let mut counts = [0usize; 5];
    for g in 1..=3 {
        if suprataut_heis(&HeisenbergElement::sigma_pow(g, 1))? != iota_sigma_pow(g, &BigInt::one()) {
            fail(format!("g={g}: ι(σ) is not I + E"));
        }
        for _ in 0..50 {
            // block formulas for H_g and Aut⁺ elements
            let x = sample::heisenberg(&mut rng, g, 5);
            let f = sample::aut_plus(&mut rng, g, 4, 6);
            counts[0] += 1;
            if suprataut_heis(&x)? != suprataut_blocks(&x) {
                fail(format!("ι({x}) differs from its block form"));
            }
            if suprataut_aut(&f) != aut_blocks(&f) {
                fail(format!("g={g}: ι(Y, M) differs from its block form"));
            }
            // conjugation by M and by Y
            let ix = suprataut_heis(&x)?;
            let m_only = AutPlusElement::symplectic(f.matrix_part().clone())?;
            let conj_m = suprataut_aut(&m_only).mul(&ix).mul(&suprataut_aut(&m_only.inverse()));
            let mx = mat_vec(f.matrix_part(), &coords(&x));
            let jmx = mat_vec(&j_matrix(g), &mx);
            let top_ok = (0..2 * g).all(|i| conj_m.get(0, i + 1) == &jmx[i]);
            let col_ok = (0..2 * g).all(|i| conj_m.get(i + 1, 2 * g + 1) == &mx[i]);
            if !(top_ok && col_ok && conj_m == suprataut_heis(&m_only.apply(&x)?)?) {
                fail(format!("conjugating ι({x}) by M"));
            }
            let y_only = AutPlusElement::translation(f.translation_part().to_vec())?;
            let conj_y = suprataut_aut(&y_only).mul(&ix).mul(&suprataut_aut(&y_only.inverse()));
            let jx = mat_vec(&j_matrix(g), &coords(&x));
            let shift = -dot(&jx, f.translation_part());
            if conj_y != ix.mul(&iota_sigma_pow(g, &shift)) || conj_y != suprataut_heis(&y_only.apply(&x)?)? {
                fail(format!("conjugating ι({x}) by Y"));
            }
            // commutation ι(X)ι(Y) = ι(Y)ι(X)ι(σ)^{2(JX)ᵀY}
            let y = sample::heisenberg(&mut rng, g, 5);
            let iy = suprataut_heis(&y)?;
            let e = 2 * dot(&jx, &coords(&y));
            counts[1] += 1;
            if ix.mul(&iy) != iy.mul(&ix).mul(&iota_sigma_pow(g, &e)) {
                fail(format!("commutation fails for {x}, {y}"));
            }
            // multiplicativity on the semidirect product
            let z1 = sample::semidirect(&mut rng, g, 4, 5);
            let z2 = sample::semidirect(&mut rng, g, 4, 5);
            counts[2] += 1;
            if suprataut(&z1.multiply(&z2)?)? != suprataut(&z1)?.mul(&suprataut(&z2)?) {
                fail(format!("g={g}: ι is not multiplicative"));
            }
        }
    }
    // injectivity on distinct random elements
    let mut elements = BTreeSet::new();
    while elements.len() < 1000 {
        let g = rng.gen_range(1..=3);
        elements.insert(sample::semidirect(&mut rng, g, 3, 4));
    }
    let mut images = BTreeSet::new();
    for z in &elements {
        let im = suprataut(z)?;
        counts[3] += 1;
        if suprataut_decode(&im).as_ref() != Some(z) {
            fail(format!("decode does not invert ι on {z}"));
        }
        images.insert(im);
    }
    counts[4] = images.len();
    let injective = images.len() == elements.len();
    if !injective {
        fail("two distinct elements share an image".into());
    }
    Ok((
        failures.is_empty(),
        json!({
            "block_cases": counts[0], "commutation_cases": counts[1], "product_cases": counts[2],
            "distinct_elements": counts[3], "distinct_images": counts[4], "failures": failures,
        }),
    ))
}

// ---- 8 ------------------------------------------------------------------

fn check_iota_r() -> Outcome {
    let mut rng = sample::rng(8);
    let mut relations = Vec::new();
    let mut ok = true;
    let combos: Vec<(usize, usize)> = (1..=2).flat_map(|g| (2..=4).map(move |r| (g, r))).collect();
    for &(g, r) in &combos {
        let id = iota_r_element(&HeisenbergElement::identity(g), r)?;
        let sig_r = iota_r_element(&HeisenbergElement::sigma_pow(g, r as i64), r)?;
        let s2 = iota_r_element(&HeisenbergElement::sigma_pow(g, 2), r)?;
        let mut rel_ok = sig_r == id;
        for i in 0..g {
            let a = iota_r_element(&HeisenbergElement::a_pow(g, i, 1), r)?;
            let b = iota_r_element(&HeisenbergElement::b_pow(g, i, 1), r)?;
            rel_ok &= a.compose(&b) == s2.compose(&b).compose(&a);
        }
        ok &= rel_ok;
        relations.push(json!({"g": g, "r": r, "dimension": id.dimension(), "relations_hold": rel_ok}));
    }
    let mut zero_images = 0usize;
    let samples = 500;
    for i in 0..samples {
        let (g, r) = combos[i % combos.len()];
        let q = QuotientSpec::mod_sigma(r as u64)?;
        let x = sample::nonzero_ring_element(&mut rng, g, q, 4, 3)?;
        if iota_r(&x, g, r)?.is_zero() {
            zero_images += 1;
        }
    }
    let mut algebra_failures = 0usize;
    for i in 0..60 {
        let (g, r) = combos[i % combos.len()];
        let q = QuotientSpec::mod_sigma(r as u64)?;
        let x = sample::ring_element(&mut rng, g, q, 3, 2, 3)?;
        let y = sample::ring_element(&mut rng, g, q, 3, 2, 3)?;
        let (ix, iy) = (iota_r(&x, g, r)?, iota_r(&y, g, r)?);
        if iota_r(&x.mul(&y), g, r)? != ix.mul(&iy) || iota_r(&x.add(&y), g, r)? != ix.add(&iy) {
            algebra_failures += 1;
        }
    }
    ok &= zero_images == 0 && algebra_failures == 0;
    Ok((
        ok,
        json!({
            "relations": relations, "nonzero_samples": samples, "zero_images": zero_images,
            "algebra_map_samples": 60, "algebra_map_failures": algebra_failures,
        }),
    ))
}

// ---- 9 ------------------------------------------------------------------

/// `(M^N - I)^k = 0`, recomputed from scratch.
fn annihilates(m: &RationalMatrix, c: &AnnihilatorCertificate) -> bool {
    let one = num_rational::BigRational::one();
    let base = m.pow(&one, c.n).sub(&RationalMatrix::rational_identity(m.rows()));
    base.pow(&one, c.k as u64).is_zero()
}

fn check_annihilator() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for g in 1..=2 {
        for r in 2..=4 {
            let (a, b, s) = iota_r_specialized_generators(g, r)?;
            let cs = annihilator_certificate_for(&a, &b, &s)?;
            let mut pass = annihilates(&s, &cs);
            for m in a.iter().chain(&b) {
                let c = annihilator_certificate(m)?;
                pass &= annihilates(m, &c);
            }
            ok &= pass;
            rows.push(json!({"g": g, "r": r, "sigma_N": cs.n, "sigma_k": cs.k, "factors": cs.factors, "verified": pass}));
        }
    }
    Ok((ok, json!({ "certificates": rows })))
}

// ---- 10 -----------------------------------------------------------------

fn check_infinite_order() -> Outcome {
    let q = QuotientSpec::ModSigma(1);
    let mut rng = sample::rng(10);
    let mut rows = Vec::new();
    let mut ok = true;
    for g in 1..=3 {
        for kk in 1..=g {
            let alpha = SeparatingCurveData::handle_block("alpha", g, &(0..kk).collect::<Vec<_>>())?;
            let mut vectors: Vec<Vec<HeisRing>> = (0..2 * g).map(|j| sample::unit_vector(g, q, 2 * g, j)).collect();
            vectors.push((0..2 * g).map(|_| sample::ring_element(&mut rng, g, q, 2, 2, 2)).collect::<Result<_>>()?);
            for v in vectors {
                let pv = alpha.pair_with(&v, q)?;
                if pv.is_zero() {
                    continue;
                }
                let lambdas = infinite_order_witness(&alpha, &v, 100)?;
                let linear = lambdas.iter().enumerate().all(|(i, lam)| *lam == pv.scale(&BigInt::from(i + 1)));
                ok &= linear && lambdas.len() == 100;
                rows.push(json!({"g": g, "alpha_genus": kk, "pairing": pv.to_string(), "linear_to_100": linear}));
            }
        }
    }
    Ok((ok && !rows.is_empty(), json!({ "witnesses": rows })))
}

// ---- 11 -----------------------------------------------------------------

fn symmetric_fill(k: usize, off: &[i64]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; k]; k];
    let mut it = off.iter();
    for i in 0..k {
        for j in i + 1..k {
            let v = *it.next().expect("one entry per pair");
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    a
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

fn check_npoint() -> Outcome {
    let t0 = Instant::now();
    let mut diagrams = 0usize;
    let mut evaluations = 0usize;
    let mut mismatches = Vec::new();
    for k in 1..=3usize {
        let pairs = k * (k - 1) / 2;
        let mut nj = vec![-3i64; k];
        loop {
            let mut off = vec![-2i64; pairs];
            loop {
                let d = NPointDiagram::new(3, nj.clone(), symmetric_fill(k, &off))?;
                diagrams += 1;
                for n in 1..=4 {
                    evaluations += 1;
                    if pair_npt(&d, n, FULL)? != pair_npt_oracle(&d, n, FULL)? && mismatches.len() < 5 {
                        mismatches.push(json!({"n_j": nj, "A": d.a(), "n": n}));
                    }
                }
                if !odometer(&mut off, -2, 2) {
                    break;
                }
            }
            if !odometer(&mut nj, -3, 3) {
                break;
            }
        }
    }
    let fast = t0.elapsed() < Duration::from_secs(30);

    // Bigon of genus d, read literally: vanishing mod σ^{2k} whenever d | k.
    let mut literal_failures = Vec::new();
    let mut vanishing_matches_k_divides_d = true;
    for k in 1..=6i64 {
        let q = QuotientSpec::mod_sigma(2 * k as u64)?;
        for d in 1..=6i64 {
            let bigon = NPointDiagram::bigon(6, d);
            for n in 1..=5 {
                let zero = pair_npt(&bigon, n, q)?.is_zero();
                vanishing_matches_k_divides_d &= zero == (d % k == 0);
                if k % d == 0 && !zero && literal_failures.len() < 8 {
                    literal_failures.push(json!({"d": d, "k": k, "n": n}));
                }
            }
        }
    }
    let consistency = mismatches.is_empty() && fast;
    Ok((
        consistency && literal_failures.is_empty(),
        json!({
            "diagrams": diagrams, "evaluations": evaluations, "mismatches": mismatches, "within_30s": fast,
            "bigon_vanishes_for_d_dividing_k": literal_failures.is_empty(),
            "bigon_counterexamples": literal_failures,
            "bigon_vanishes_iff_k_divides_d": vanishing_matches_k_divides_d,
        }),
    ))
}

// ---- 12 -----------------------------------------------------------------

fn check_burau_gassner() -> Outcome {
    let mut failures = Vec::new();
    let mut relations = 0usize;
    for k in 2..=4usize {
        let bw = |l: Vec<i32>| BraidWord::new(k, l);
        for variant in [BurauVariant::Unreduced, BurauVariant::Reduced] {
            let id = burau(&bw(vec![])?, variant)?;
            for i in 1..k as i32 {
                relations += 1;
                if burau(&bw(vec![i, -i])?, variant)? != id {
                    failures.push(format!("k={k} {variant:?}: s{i} S{i} ≠ 1"));
                }
                for j in i + 1..k as i32 {
                    relations += 1;
                    let (l, r) = if j == i + 1 {
                        (vec![i, j, i], vec![j, i, j])
                    } else {
                        (vec![i, j], vec![j, i])
                    };
                    if burau(&bw(l)?, variant)? != burau(&bw(r)?, variant)? {
                        failures.push(format!("k={k} {variant:?}: relation between s{i} and s{j}"));
                    }
                }
            }
        }
    }
    let mut rng = sample::rng(12);
    let mut perm_cases = 0;
    for _ in 0..100 {
        let k = rng.gen_range(2..=4);
        let len = rng.gen_range(0..=12);
        let b = sample::braid_word(&mut rng, k, len);
        perm_cases += 1;
        if specialize_at_one(&burau(&b, BurauVariant::Unreduced)?) != permutation_matrix(&b) {
            failures.push(format!("t = 1 is not the permutation of {b}"));
        }
    }
    let mut pure_cases = 0;
    for _ in 0..100 {
        let k = rng.gen_range(2..=4);
        let b = pure_braid(&mut rng, k);
        pure_cases += 1;
        if specialize_to_one_variable(&gassner(&b)?) != burau(&b, BurauVariant::Unreduced)? {
            failures.push(format!("Gassner at t_i = t differs from Burau on {b}"));
        }
    }
    failures.truncate(10);
    Ok((
        failures.is_empty(),
        json!({"relations": relations, "permutation_cases": perm_cases, "pure_cases": pure_cases, "failures": failures}),
    ))
}

fn pure_braid(rng: &mut ChaCha8Rng, k: usize) -> BraidWord {
    let factors = rng.gen_range(1..=3);
    let conj = rng.gen_range(0..=3);
    sample::pure_braid_word(rng, k, factors, conj)
}

// ---- 13 -----------------------------------------------------------------

fn check_substitution() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for g in 1..=2 {
        for region in [Region::HoledSphere, Region::HalfSurface, Region::Neighborhood] {
            let holes = region.holes(g);
            let points = 3;
            let l = DiskLocalSystem::new(holes);
            let diagrams = standard_disk_diagrams(holes, points)?;
            let sub = SubstitutionMap::standard(region, g)?;
            let report = substitution_check(&l, &sub, region, g, points, &diagrams)?;
            let perturbations = [HeisenbergElement::sigma_pow(g, 1), HeisenbergElement::b_pow(g, 0, 1)];
            let mut caught = 0;
            let mut tried = 0;
            for i in 0..sub.images().len() {
                for p in &perturbations {
                    let wrong = sub.with_image(i, sub.images()[i].multiply(p)?);
                    tried += 1;
                    if !substitution_check(&l, &wrong, region, g, points, &diagrams)?.passed() {
                        caught += 1;
                    }
                }
            }
            let pass = report.passed() && caught == tried;
            ok &= pass;
            rows.push(json!({
                "g": g, "region": region.label(), "passed": report.passed(),
                "generators": report.generators_checked, "diagrams": report.diagrams_checked,
                "perturbations": tried, "perturbations_detected": caught,
            }));
        }
    }
    Ok((ok, json!({ "regions": rows })))
}

// ---- 14 -----------------------------------------------------------------

fn random_twist_word(rng: &mut ChaCha8Rng, names: &[String]) -> TwistWord {
    let len = rng.gen_range(1..=6);
    TwistWord(
        (0..len)
            .map(|_| {
                let e = rng.gen_range(1..=2) * sample::sign(rng);
                (names[rng.gen_range(0..names.len())].clone(), e)
            })
            .collect(),
    )
}

fn check_subgroup_action() -> Outcome {
    let mut rng = sample::rng(14);
    let mut failures = Vec::new();
    let mut counts = [0usize; 3];
    for g in 2..=4 {
        let cat = SubgroupCatalog::standard(g);
        let names: Vec<String> = cat.generators.keys().cloned().collect();
        for _ in 0..20 {
            let w1 = random_twist_word(&mut rng, &names);
            let w2 = random_twist_word(&mut rng, &names);
            let joined = TwistWord(w1.0.iter().chain(&w2.0).cloned().collect());
            let r = subgroup_mf(&joined, &cat)?;
            counts[0] += 1;
            if r != subgroup_mf(&w1, &cat)?.compose(&subgroup_mf(&w2, &cat)?)? {
                failures.push(format!("g={g}: not additive on {w1} · {w2}"));
            }
            if (0..g).any(|i| (0..g).any(|j| r.m[i][j] != r.m[j][i])) {
                failures.push(format!("g={g}: M({joined}) not symmetric"));
            }
            let x = sample::heisenberg(&mut rng, g, 4);
            if apply_word(&joined, &cat, &x)? != r.apply(&x)? {
                failures.push(format!("g={g}: action of {joined} differs from its record"));
            }
        }
    }
    for i in 0..50 {
        let g = 2 + i % 3;
        let cat = SubgroupCatalog::standard(g);
        let names: Vec<String> = cat.generators.keys().cloned().collect();
        let w1 = random_twist_word(&mut rng, &names);
        let w2 = random_twist_word(&mut rng, &names);
        let comm = TwistWord(w1.0.iter().chain(&w2.0).chain(&w1.inverse().0).chain(&w2.inverse().0).cloned().collect());
        counts[1] += 1;
        let x = sample::heisenberg(&mut rng, g, 4);
        if !subgroup_mf(&comm, &cat)?.is_trivial() || apply_word(&comm, &cat, &x)? != x {
            failures.push(format!("g={g}: commutator [{w1}, {w2}] acts nontrivially"));
        }
    }
    // the neighborhood-type generator shipped as a fixture
    let cat = SubgroupCatalog::from_json(&fixtures::json("subgroup_g3.json")?)?;
    let v1 = cat.generators.get("v1").ok_or_else(|| HeisError::Missing("v1".into()))?;
    for e in -3..=3i64 {
        let x = sample::heisenberg(&mut rng, 3, 4);
        counts[2] += 1;
        let repeated = TwistWord(vec![("v1".into(), e.signum()); e.unsigned_abs() as usize]);
        if apply_word(&repeated, &cat, &x)? != v1.scaled(e).apply(&x)? {
            failures.push(format!("v1^{e} differs from its scaled record"));
        }
    }
    failures.truncate(10);
    Ok((
        failures.is_empty(),
        json!({"additivity_cases": counts[0], "commutators": counts[1], "neighborhood_cases": counts[2], "failures": failures}),
    ))
}
