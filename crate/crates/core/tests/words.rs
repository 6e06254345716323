use heisrep_core::sample;
use heisrep_core::words::{
    artin_action, eval_heisenberg, fox_derivative, separating_word, BraidWord, FreeGroupRing, FreeWord,
    SurfaceBraidWord, SurfaceGen, SurfaceLetter,
};
use heisrep_core::{HeisError, HeisenbergElement, QuotientSpec, RingElement};
use proptest::prelude::*;

const FULL: QuotientSpec = QuotientSpec::Full;

proptest! {
    #[test]
    fn evaluation_ignores_cancelling_pairs(seed in any::<u64>(), g in 1usize..=3, len in 0usize..30, at in 0usize..31, which in 0usize..6, inv in any::<bool>()) {
        let mut rng = sample::rng(seed);
        let w = sample::surface_word(&mut rng, g, 1, len);
        let gen = match which % 3 {
            0 => SurfaceGen::Alpha(which % g),
            1 => SurfaceGen::Beta(which % g),
            _ => SurfaceGen::Alpha(0),
        };
        let l = SurfaceLetter::new(gen, inv);
        let mut letters = w.letters().to_vec();
        let at = at.min(letters.len());
        letters.insert(at, l.inv());
        letters.insert(at, l);
        let padded = SurfaceBraidWord::new(g, 1, letters).unwrap();
        prop_assert_eq!(eval_heisenberg(&padded, FULL), eval_heisenberg(&w, FULL));
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), g in 1usize..=4, l1 in 0usize..25, l2 in 0usize..25) {
        let mut rng = sample::rng(seed);
        let u = sample::surface_word(&mut rng, g, 1, l1);
        let v = sample::surface_word(&mut rng, g, 1, l2);
        let uv = eval_heisenberg(&u.concat(&v).unwrap(), FULL);
        prop_assert_eq!(uv, eval_heisenberg(&u, FULL).multiply(&eval_heisenberg(&v, FULL)).unwrap());
        prop_assert_eq!(eval_heisenberg(&u.inverse(), FULL), eval_heisenberg(&u, FULL).inverse());
    }

    #[test]
    fn fox_fundamental_identity(seed in any::<u64>(), rank in 1usize..=4, len in 0usize..=20) {
        let mut rng = sample::rng(seed);
        let w = sample::free_word(&mut rng, rank, len);
        let one = FreeGroupRing::one_free(rank);
        let mut rhs = FreeGroupRing::zero();
        for i in 0..rank {
            let xi = RingElement::from_group(FreeWord::generator(rank, i, false)).sub(&one);
            rhs = rhs.add(&fox_derivative(&w, i).unwrap().mul(&xi));
        }
        prop_assert_eq!(RingElement::from_group(w).sub(&one), rhs);
    }

    #[test]
    fn artin_action_fixes_the_boundary_word(seed in any::<u64>(), k in 2usize..=5, len in 0usize..12) {
        let mut rng = sample::rng(seed);
        let b = sample::braid_word(&mut rng, k, len);
        let boundary = FreeWord::from_letters(k, &(1..=k as i32).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(artin_action(&b, &boundary).unwrap(), boundary);
    }

    #[test]
    fn free_words_display_and_parse(seed in any::<u64>(), rank in 1usize..=4, len in 0usize..15) {
        let mut rng = sample::rng(seed);
        let w = sample::free_word(&mut rng, rank, len);
        prop_assert_eq!(FreeWord::parse(&w.to_string(), rank).unwrap(), w);
    }
}

#[test]
fn separating_words_evaluate_to_sigma_powers() {
    for g in 1..=5 {
        for k in 1..=g {
            for eps in [1, -1] {
                let x = eval_heisenberg(&separating_word(g, k, eps).unwrap(), FULL);
                assert_eq!(x, HeisenbergElement::sigma_pow(g, 2 * eps as i64 * k as i64), "g={g} k={k} eps={eps}");
            }
        }
    }
    assert!(separating_word(2, 3, 1).is_err());
    assert!(separating_word(2, 1, 2).is_err());
}

#[test]
fn exchanges_map_to_sigma() {
    let w = SurfaceBraidWord::parse("s1 a1 s2 S1", 1, 3).unwrap();
    assert_eq!(eval_heisenberg(&w, FULL), "a1 s".parse().unwrap());
    assert!(matches!(SurfaceBraidWord::parse("s2", 1, 2), Err(HeisError::Parse { .. })));
}

#[test]
fn braid_words_and_permutations() {
    let b = BraidWord::parse("s1 s2 s1", 3).unwrap();
    assert_eq!(b.permutation(), BraidWord::parse("s2 s1 s2", 3).unwrap().permutation());
    assert!(!b.is_pure());
    assert!(BraidWord::parse("s1^2 S2^2", 3).unwrap().is_pure());
    assert_eq!(BraidWord::parse("s1 S2", 3).unwrap().exponent_sum(), 0);
    assert!(BraidWord::parse("s3", 3).is_err());
}
