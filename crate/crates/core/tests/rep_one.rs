use heisrep_core::rep_one::{
    act_twist_mod2k, diagrams_for_matrix, infinite_order_witness, kernel_certificate, matrix_from_pairings,
    identity_pairing_rows, transvection_matrix, twist_full_matrix, twist_word_matrix, CurveCatalog,
    SeparatingCurveData, TwistWord,
};
use heisrep_core::{sample, HeisError, HeisRing, Matrix, QuotientSpec};
use num_bigint::BigInt;
use proptest::prelude::*;

fn block_curves(g: usize) -> Vec<SeparatingCurveData> {
    let mut out = Vec::new();
    for start in 0..g {
        for end in start + 1..=g {
            let hs: Vec<usize> = (start..end).collect();
            out.push(SeparatingCurveData::handle_block(&format!("c{start}_{end}"), g, &hs).unwrap());
        }
    }
    out
}

#[test]
fn transvections_are_invertible_on_every_basis_vector() {
    for g in 1..=4 {
        for alpha in block_curves(g) {
            let q = QuotientSpec::mod_sigma(2 * alpha.genus as u64).unwrap();
            let one = HeisRing::one_in(g, q);
            let fwd = transvection_matrix(&alpha, q, 1).unwrap();
            let bwd = transvection_matrix(&alpha, q, -1).unwrap();
            assert!(fwd.mul(&bwd).is_identity(&one), "g={g} {}", alpha.name);
            assert!(bwd.mul(&fwd).is_identity(&one), "g={g} {}", alpha.name);
            for j in 0..2 * g {
                let e = sample::unit_vector(g, q, 2 * g, j);
                let img = act_twist_mod2k(&alpha, &e, q).unwrap();
                assert_eq!(img, fwd.row(j).to_vec(), "g={g} {} row {j}", alpha.name);
            }
        }
    }
}

#[test]
fn full_action_reduces_to_the_transvection() {
    for g in 1..=4 {
        for alpha in block_curves(g) {
            let q = QuotientSpec::mod_sigma(2 * alpha.genus as u64).unwrap();
            let full = twist_full_matrix(&alpha).unwrap().map(|x| x.reduce(q).unwrap());
            assert_eq!(full, transvection_matrix(&alpha, q, 1).unwrap(), "g={g} {}", alpha.name);
        }
    }
}

#[test]
fn boundary_twist_is_a_central_scalar() {
    for g in 1..=5 {
        let m = twist_full_matrix(&SeparatingCurveData::boundary(g)).unwrap();
        let s = HeisRing::sigma_term(g, QuotientSpec::Full, -2 * g as i64, 1);
        let want = Matrix::from_fn(2 * g, 2 * g, |i, j| if i == j { s.clone() } else { HeisRing::zero() });
        assert_eq!(m, want, "g={g}");
    }
}

#[test]
fn zero_pairing_curves_commute() {
    for k in 1..=3 {
        let cat = CurveCatalog::kernel_pair(k).unwrap();
        let q = cat.quotient.unwrap();
        let (a, b) = (cat.get("a").unwrap(), cat.get("b").unwrap());
        assert!(a.pair_with(&b.curve_class, q).unwrap().is_zero());
        let ta = transvection_matrix(a, q, 1).unwrap();
        let tb = transvection_matrix(b, q, 1).unwrap();
        assert_eq!(ta.mul(&tb), tb.mul(&ta), "k={k}");
        assert!(kernel_certificate(&TwistWord::commutator("a", "b"), &cat, q).unwrap().is_identity_on_basis);
        let single = TwistWord::parse("Ta").unwrap();
        assert!(!kernel_certificate(&single, &cat, q).unwrap().is_identity_on_basis);
    }
}

#[test]
fn identity_diagrams_give_the_identity_matrix() {
    for g in 1..=10 {
        let m = matrix_from_pairings(&identity_pairing_rows(g), QuotientSpec::Full).unwrap();
        assert!(m.is_identity(&HeisRing::one(g)), "g={g}");
    }
}

#[test]
fn incomplete_pairing_rows_are_reported() {
    let mut rows = identity_pairing_rows(2);
    rows[1].pop();
    assert!(matches!(matrix_from_pairings(&rows, QuotientSpec::Full), Err(HeisError::Missing(_))));
}

#[test]
fn quotient_must_kill_sigma_two_k() {
    let alpha = SeparatingCurveData::handle_block("x", 3, &[0, 1]).unwrap();
    assert!(transvection_matrix(&alpha, QuotientSpec::Full, 1).is_err());
    assert!(transvection_matrix(&alpha, QuotientSpec::ModSigma(3), 1).is_err());
    assert!(transvection_matrix(&alpha, QuotientSpec::ModSigma(2), 1).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn matrices_are_recovered_from_their_diagrams(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let m = Matrix::from_fn(2 * g, 2 * g, |_, _| sample::ring_element(&mut rng, g, QuotientSpec::Full, 3, 3, 3).unwrap());
        let back = matrix_from_pairings(&diagrams_for_matrix(&m, g).unwrap(), QuotientSpec::Full).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn twist_words_multiply(seed in any::<u64>(), e1 in -2i64..=2, e2 in -2i64..=2) {
        let _ = seed;
        let cat = CurveCatalog::kernel_pair(1).unwrap();
        let q = cat.quotient.unwrap();
        let w = TwistWord(vec![("a".into(), e1), ("b".into(), e2)]);
        let want = transvection_matrix(cat.get("a").unwrap(), q, e1).unwrap()
            .mul(&transvection_matrix(cat.get("b").unwrap(), q, e2).unwrap());
        prop_assert_eq!(twist_word_matrix(&w, &cat, q).unwrap(), want);
        prop_assert_eq!(TwistWord::parse(&w.to_string()).unwrap(), w);
    }
}

#[test]
fn witnesses_grow_linearly() {
    let q = QuotientSpec::ModSigma(1);
    for g in 1..=3 {
        let alpha = SeparatingCurveData::handle_block("alpha", g, &[0]).unwrap();
        let v = sample::unit_vector(g, q, 2 * g, 0);
        let pv = alpha.pair_with(&v, q).unwrap();
        let lams = infinite_order_witness(&alpha, &v, 25).unwrap();
        for (i, lam) in lams.iter().enumerate() {
            assert_eq!(*lam, pv.scale(&BigInt::from(i + 1)));
        }
        let far = sample::unit_vector(g, q, 2 * g, 2 * g - 1);
        if g > 1 {
            assert!(matches!(infinite_order_witness(&alpha, &far, 5), Err(HeisError::Certificate(_))));
        }
    }
}
