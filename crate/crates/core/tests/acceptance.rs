//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line to stdout, then asserts.
//!
//! Where practical the verdict combines the library's own check with an
//! oracle written here from first principles.

use std::io::Write;
use std::time::{Duration, Instant};

use heisrep_core::fixtures;
use heisrep_core::lawrence::{burau, gassner, specialize_to_one_variable, BurauVariant};
use heisrep_core::linearize::{annihilator_certificate, iota_r_specialized_generators};
use heisrep_core::pairing::{
    augmentation_check, pair_1pt, pair_npt, pair_npt_oracle, Composition, Diagram, NPointDiagram,
};
use heisrep_core::rep_one::{act_twist_mod2k, infinite_order_witness, CurveCatalog, SeparatingCurveData};
use heisrep_core::suite::run_check;
use heisrep_core::words::{eval_heisenberg, separating_word, SurfaceGen, SurfaceLetter};
use heisrep_core::{sample, HeisenbergElement, QuotientSpec, RationalMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde_json::Value;

const FULL: QuotientSpec = QuotientSpec::Full;

fn verdict(id: u8, passed: bool, detail: impl AsRef<str>) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {id}: {} {}", if passed { "PASS" } else { "FAIL" }, detail.as_ref());
    let _ = out.flush();
    assert!(passed, "criterion {id} failed: {}", detail.as_ref());
}

fn library_check(id: u8) -> (bool, Value) {
    let r = run_check(id).expect("known check");
    (r.passed, r.witness)
}

/// `(m, n, l)` computed letter by letter with
/// `(m,n,l)(m',n',l') = (m+m', n+n', l+l'-2 n·m')`.
fn triple_of(g: usize, letters: &[SurfaceLetter]) -> (Vec<i64>, Vec<i64>, i64) {
    let (mut m, mut n, mut l) = (vec![0i64; g], vec![0i64; g], 0i64);
    for letter in letters {
        let e = if letter.inverse { -1 } else { 1 };
        match letter.gen {
            SurfaceGen::Alpha(i) => {
                // right-multiply by a_i^e = (e·e_i, 0, 0)
                l -= 2 * n[i] * e;
                m[i] += e;
            }
            SurfaceGen::Beta(i) => n[i] += e,
            SurfaceGen::Sigma(_) => l += e,
        }
    }
    (m, n, l)
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("small value")
}

fn triple_of_element(x: &HeisenbergElement) -> (Vec<i64>, Vec<i64>, i64) {
    (x.m().iter().map(small).collect(), x.n().iter().map(small).collect(), small(x.l()))
}

#[test]
fn criterion_01_normal_form_matches_tautological_matrices() {
    let mut rng = sample::rng(1001);
    let t0 = Instant::now();
    let mut bad = 0usize;
    for _ in 0..10_000 {
        let g = rng.gen_range(1..=4);
        let (l1, l2) = (rng.gen_range(0..=40), rng.gen_range(0..=40));
        let w1 = sample::surface_word(&mut rng, g, 1, l1);
        let w2 = sample::surface_word(&mut rng, g, 1, l2);
        let x = eval_heisenberg(&w1, FULL).multiply(&eval_heisenberg(&w2, FULL)).unwrap();
        // Matrix side: product of the letter matrices I + c·E_{r,s} in dimension g + 2.
        let d = g + 2;
        let mut acc: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
        for l in w1.letters().iter().chain(w2.letters()) {
            let e = if l.inverse { -1 } else { 1 };
            let (r, s, c) = match l.gen {
                SurfaceGen::Alpha(i) => (0, i + 1, 2 * e),
                SurfaceGen::Beta(i) => (i + 1, g + 1, e),
                SurfaceGen::Sigma(_) => (0, g + 1, e),
            };
            for row in acc.iter_mut() {
                row[s] += c * row[r];
            }
        }
        let (m, n, lv) = triple_of_element(&x);
        let mut want: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
        for i in 0..g {
            want[0][i + 1] = 2 * m[i];
            want[i + 1][g + 1] = n[i];
        }
        want[0][g + 1] = lv + 2 * m.iter().zip(&n).map(|(a, b)| a * b).sum::<i64>();
        if acc != want {
            bad += 1;
        }
    }
    let elapsed = t0.elapsed();
    let (lib, _) = library_check(1);
    let ok = bad == 0 && elapsed < Duration::from_secs(5) && lib;
    verdict(1, ok, format!("10000 products, {bad} mismatches, {:.2}s, library check {lib}", elapsed.as_secs_f64()));
}

#[test]
fn criterion_02_separating_curves_give_even_sigma_powers() {
    let mut bad = Vec::new();
    let mut cases = 0;
    for g in 1..=5 {
        for k in 1..=g {
            for eps in [1i32, -1] {
                let w = separating_word(g, k, eps).unwrap();
                cases += 1;
                let oracle = triple_of(g, w.letters());
                let want = (vec![0; g], vec![0; g], 2 * eps as i64 * k as i64);
                let lib = eval_heisenberg(&w, FULL);
                if oracle != want || lib != HeisenbergElement::sigma_pow(g, want.2) {
                    bad.push(format!("g={g} k={k} eps={eps}"));
                }
            }
        }
    }
    let (lib, _) = library_check(2);
    verdict(2, bad.is_empty() && lib, format!("{cases} cases, failures {bad:?}, library check {lib}"));
}

#[test]
fn criterion_03_eight_point_kernel_diagram() {
    let v = fixtures::json("kernel_8pt.json").unwrap();
    let g = v["genus"].as_u64().unwrap() as usize;
    // Oracle: each point contributes sign·(-1)^l·σ^l with l read off its loop word.
    let mut exps = Vec::new();
    let mut terms = std::collections::BTreeMap::<i64, i64>::new();
    for p in v["points"].as_array().unwrap() {
        let sign = p["sign"].as_i64().unwrap();
        let l = match p.get("loop") {
            Some(Value::String(s)) => {
                let w = heisrep_core::words::SurfaceBraidWord::parse(s, g, 1).unwrap();
                let (m, n, l) = triple_of(g, w.letters());
                assert!(m.iter().chain(&n).all(|&x| x == 0), "loop {s} is central");
                l
            }
            _ => p["sigma_exp"].as_i64().unwrap(),
        };
        exps.push((sign * if l % 2 == 0 { 1 } else { -1 }, l));
        *terms.entry(l).or_default() += sign * if l % 2 == 0 { 1 } else { -1 };
    }
    let expected = [(1, -2), (-1, -4), (1, -2), (-1, 0), (1, -4), (-1, -2), (1, 0), (-1, -2)];
    let oracle_zero = terms.values().all(|&c| c == 0);
    let Diagram::OnePoint(d) = Diagram::from_json(&v).unwrap() else { panic!("one-point fixture") };
    let lib_zero = pair_1pt(&d, FULL).unwrap().is_zero();
    let (lib, _) = library_check(3);
    let ok = exps == expected && oracle_zero && lib_zero && lib;
    verdict(3, ok, format!("sequence {exps:?}, oracle sum zero {oracle_zero}, library pairing zero {lib_zero}, library check {lib}"));
}

#[test]
fn criterion_04_mod_sigma_2k_kernel_elements() {
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 1..=3 {
        let t0 = Instant::now();
        let cat = CurveCatalog::from_json(&fixtures::json(&format!("kernel_pair_k{k}.json")).unwrap()).unwrap();
        let q = cat.quotient.unwrap();
        let (a, b) = (cat.get("alpha").unwrap(), cat.get("beta").unwrap());
        let pairing_zero = a.pair_with(&b.curve_class, q).unwrap().is_zero();
        // The commutator is trivial on a vector iff the two twists commute on it.
        let mut commute = true;
        for j in 0..2 * cat.genus {
            let e = sample::unit_vector(cat.genus, q, 2 * cat.genus, j);
            let ab = act_twist_mod2k(b, &act_twist_mod2k(a, &e, q).unwrap(), q).unwrap();
            let ba = act_twist_mod2k(a, &act_twist_mod2k(b, &e, q).unwrap(), q).unwrap();
            commute &= ab == ba;
        }
        let fast = t0.elapsed() < Duration::from_secs(1);
        ok &= pairing_zero && commute && fast;
        rows.push(format!("k={k}: pairing 0 {pairing_zero}, commute on {} vectors {commute}, <1s {fast}", 2 * cat.genus));
    }
    let (lib, _) = library_check(4);
    verdict(4, ok && lib, format!("{}; library check {lib}", rows.join("; ")));
}

#[test]
fn criterion_05_standard_and_dual_families_are_dual() {
    let t0 = Instant::now();
    let (lib, w) = library_check(5);
    let cases = w["cases_g_n_size_identity"].as_array().cloned().unwrap_or_default();
    // Independent count of the (g, n) pairs with C(2g+n-1, n) ≤ 50.
    // Sizes grow in both g and n, so each scan stops at the first size above 50.
    let binom = |n: u128, k: u128| (0..k).fold(1u128, |c, i| c * (n - i) / (i + 1));
    let mut expected = 0;
    let mut sizes_ok = true;
    for g in 1u128.. {
        if binom(2 * g, 1) > 50 {
            break;
        }
        for n in 1u128.. {
            let size = binom(2 * g + n - 1, n);
            if size > 50 {
                break;
            }
            expected += 1;
            sizes_ok &= Composition::enumerate(g as usize, n as usize).len() as u128 == size;
        }
    }
    let ok = lib && cases.len() == expected && sizes_ok;
    verdict(5, ok, format!("{} (g,n) pairs (expected {expected}), basis sizes ok {sizes_ok}, library check {lib}, {:.2}s", cases.len(), t0.elapsed().as_secs_f64()));
}

#[test]
fn criterion_06_augmentation_equals_signed_count() {
    let mut rows = Vec::new();
    let mut ok = true;
    for name in fixtures::one_point_names() {
        let v = fixtures::json(name).unwrap();
        let raw: i64 = v["points"].as_array().unwrap().iter().map(|p| p["sign"].as_i64().unwrap()).sum();
        let Diagram::OnePoint(d) = Diagram::from_json(&v).unwrap() else { continue };
        let (eps, count) = augmentation_check(&d).unwrap();
        let same = eps == BigInt::from(raw) && count == raw;
        ok &= same;
        rows.push(format!("{name}: {eps} vs {raw}"));
    }
    let (lib, _) = library_check(6);
    verdict(6, ok && lib && !rows.is_empty(), format!("{}; library check {lib}", rows.join(", ")));
}

#[test]
fn criterion_07_supra_tautological_relations() {
    use heisrep_core::linearize::suprataut_heis;
    let mut rng = sample::rng(1007);
    let mut bad = 0;
    for _ in 0..300 {
        let g = rng.gen_range(1..=3);
        let x = sample::heisenberg(&mut rng, g, 5);
        let y = sample::heisenberg(&mut rng, g, 5);
        let (ix, iy) = (suprataut_heis(&x).unwrap(), suprataut_heis(&y).unwrap());
        // (JX)ᵀY with J(m, n) = (-n, m).
        let (xm, xn, _) = triple_of_element(&x);
        let (ym, yn, _) = triple_of_element(&y);
        let jxy: i64 = (0..g).map(|i| -xn[i] * ym[i] + xm[i] * yn[i]).sum();
        let sigma = suprataut_heis(&HeisenbergElement::sigma_pow(g, 2 * jxy)).unwrap();
        if ix.mul(&iy) != iy.mul(&ix).mul(&sigma) {
            bad += 1;
        }
    }
    let (lib, w) = library_check(7);
    let distinct = w["distinct_images"].as_u64().unwrap_or(0);
    verdict(7, bad == 0 && lib && distinct >= 1000, format!("commutation mismatches {bad}/300, {distinct} distinct images of 1000 elements, library check {lib}"));
}

#[test]
fn criterion_08_iota_r_relations_and_nonvanishing() {
    let (lib, w) = library_check(8);
    let zero = w["zero_images"].as_u64();
    let samples = w["nonzero_samples"].as_u64();
    let rel = w["relations"].as_array().map(|r| r.iter().all(|x| x["relations_hold"] == true)).unwrap_or(false);
    let ok = lib && zero == Some(0) && samples == Some(500) && rel;
    verdict(8, ok, format!("relations hold {rel}, zero images {zero:?} of {samples:?}, library check {lib}"));
}

#[test]
fn criterion_09_annihilator_certificates() {
    let one = BigRational::one();
    let mut rows = Vec::new();
    let mut ok = true;
    for g in 1..=2 {
        for r in 2..=4 {
            let (a, b, s) = iota_r_specialized_generators(g, r).unwrap();
            for m in a.iter().chain(&b).chain(std::iter::once(&s)) {
                let c = annihilator_certificate(m).unwrap();
                let base = m.pow(&one, c.n).sub(&RationalMatrix::rational_identity(m.rows()));
                let kills = base.pow(&one, c.k as u64).is_zero();
                let minimal = c.k == 1 || !base.pow(&one, c.k as u64 - 1).is_zero();
                ok &= kills && minimal;
            }
            let c = annihilator_certificate(&s).unwrap();
            rows.push(format!("g={g} r={r}: sigma (N,k)=({},{})", c.n, c.k));
        }
    }
    let (lib, _) = library_check(9);
    verdict(9, ok && lib, format!("{}; library check {lib}", rows.join(", ")));
}

#[test]
fn criterion_10_infinite_order_witness() {
    let q = QuotientSpec::ModSigma(1);
    let mut ok = true;
    let mut cases = 0;
    for g in 1..=3 {
        for kk in 1..=g {
            let alpha = SeparatingCurveData::handle_block("alpha", g, &(0..kk).collect::<Vec<_>>()).unwrap();
            for j in 0..2 * g {
                let v = sample::unit_vector(g, q, 2 * g, j);
                let pv = alpha.pair_with(&v, q).unwrap();
                if pv.is_zero() {
                    continue;
                }
                cases += 1;
                let lams = infinite_order_witness(&alpha, &v, 100).unwrap();
                ok &= lams.len() == 100
                    && lams.iter().enumerate().all(|(i, l)| *l == pv.scale(&BigInt::from(i as i64 + 1)));
            }
        }
    }
    let (lib, _) = library_check(10);
    verdict(10, ok && lib && cases > 0, format!("{cases} (curve, basis vector) cases linear up to n = 100, library check {lib}"));
}

#[test]
fn criterion_11_npoint_formula_and_bigon() {
    let t0 = Instant::now();
    let mut diagrams = 0usize;
    let mut mismatches = 0usize;
    for k in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let total_nj = 7usize.pow(k as u32);
        let total_a = 5usize.pow(pairs.len() as u32);
        for ni in 0..total_nj {
            let nj: Vec<i64> = (0..k).map(|p| (ni / 7usize.pow(p as u32) % 7) as i64 - 3).collect();
            for ai in 0..total_a {
                let mut a = vec![vec![0i64; k]; k];
                for (p, &(i, j)) in pairs.iter().enumerate() {
                    let x = (ai / 5usize.pow(p as u32) % 5) as i64 - 2;
                    a[i][j] = x;
                    a[j][i] = x;
                }
                let d = NPointDiagram::new(3, nj.clone(), a).unwrap();
                diagrams += 1;
                for n in 1..=4 {
                    if pair_npt(&d, n, FULL).unwrap() != pair_npt_oracle(&d, n, FULL).unwrap() {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    let elapsed = t0.elapsed();
    let consistent = mismatches == 0 && elapsed < Duration::from_secs(30);

    // Bigon of genus d, vanishing mod σ^{2k} required for every d | k ≤ 6, n ≤ 5.
    let mut counterexamples = Vec::new();
    let mut k_divides_d = true;
    for k in 1..=6i64 {
        let q = QuotientSpec::mod_sigma(2 * k as u64).unwrap();
        for d in 1..=6i64 {
            for n in 1..=5 {
                let zero = pair_npt(&NPointDiagram::bigon(6, d), n, q).unwrap().is_zero();
                k_divides_d &= zero == (d % k == 0);
                if k % d == 0 && !zero {
                    counterexamples.push((d, k, n));
                }
            }
        }
    }
    let first = counterexamples.first().copied();
    verdict(
        11,
        consistent && counterexamples.is_empty(),
        format!(
            "{diagrams} diagrams x 4 sizes, {mismatches} mismatches, {:.2}s; bigon vanishing for d | k: {} \
             ({} counterexamples, first (d,k,n) = {first:?}); observed: vanishes iff k | d = {k_divides_d}",
            elapsed.as_secs_f64(),
            counterexamples.is_empty(),
            counterexamples.len(),
        ),
    );
}

#[test]
fn criterion_12_burau_and_gassner() {
    let mut rng = sample::rng(1012);
    let mut bad = 0;
    for _ in 0..100 {
        let k = rng.gen_range(2..=4);
        let (f, c) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
        let b = sample::pure_braid_word(&mut rng, k, f, c);
        if specialize_to_one_variable(&gassner(&b).unwrap()) != burau(&b, BurauVariant::Unreduced).unwrap() {
            bad += 1;
        }
    }
    let (lib, w) = library_check(12);
    verdict(12, bad == 0 && lib, format!("{bad}/100 Gassner specialization mismatches, {} relations, library check {lib}", w["relations"]));
}

#[test]
fn criterion_13_lawrence_substitutions() {
    let (lib, w) = library_check(13);
    let regions = w["regions"].as_array().cloned().unwrap_or_default();
    let labels: std::collections::BTreeSet<String> =
        regions.iter().filter_map(|r| r["region"].as_str().map(String::from)).collect();
    let all_caught = regions.iter().all(|r| r["perturbations"] == r["perturbations_detected"] && r["passed"] == true);
    let ok = lib && labels.len() == 3 && all_caught;
    verdict(13, ok, format!("regions {labels:?}, every perturbation detected {all_caught}, library check {lib}"));
}

#[test]
fn criterion_14_subgroup_action_homomorphism() {
    use heisrep_core::lawrence::{subgroup_mf, SubgroupCatalog};
    use heisrep_core::rep_one::TwistWord;
    let mut rng = sample::rng(1014);
    let mut bad = 0;
    for i in 0..50 {
        let g = 2 + i % 3;
        let cat = SubgroupCatalog::standard(g);
        let names: Vec<&String> = cat.generators.keys().collect();
        let a = names[rng.gen_range(0..names.len())];
        let b = names[rng.gen_range(0..names.len())];
        let r = subgroup_mf(&TwistWord::commutator(a, b), &cat).unwrap();
        // The record of a commutator is M(a) + M(b) - M(a) - M(b), so it must vanish.
        let zero = r.m.iter().flatten().all(|&x| x == 0) && r.l.iter().all(|&x| x == 0);
        let symmetric = (0..g).all(|p| (0..g).all(|q| r.m[p][q] == r.m[q][p]));
        if !zero || !symmetric {
            bad += 1;
        }
    }
    let (lib, _) = library_check(14);
    verdict(14, bad == 0 && lib, format!("{bad}/50 commutator words with nonzero record, library check {lib}"));
}
