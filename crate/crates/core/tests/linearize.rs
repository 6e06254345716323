use std::collections::BTreeSet;

use heisrep_core::linearize::{
    annihilator_certificate, charpoly, cyclotomic, cyclotomic_factorization, iota_r, iota_r_element,
    iota_r_specialized_generators, suprataut, suprataut_decode, tautological, Poly,
};
use heisrep_core::sample;
use heisrep_core::{HeisError, HeisRing, HeisenbergElement, QuotientSpec, RationalMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

proptest! {
    #[test]
    fn tautological_is_a_homomorphism(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let x = sample::heisenberg(&mut rng, g, 8);
        let y = sample::heisenberg(&mut rng, g, 8);
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(tautological(&xy).unwrap(), tautological(&x).unwrap().mul(&tautological(&y).unwrap()));
    }

    #[test]
    fn suprataut_is_a_homomorphism_and_decodes(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let z1 = sample::semidirect(&mut rng, g, 5, 6);
        let z2 = sample::semidirect(&mut rng, g, 5, 6);
        let prod = z1.multiply(&z2).unwrap();
        prop_assert_eq!(suprataut(&prod).unwrap(), suprataut(&z1).unwrap().mul(&suprataut(&z2).unwrap()));
        prop_assert_eq!(suprataut_decode(&suprataut(&prod).unwrap()), Some(prod));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn iota_r_is_an_algebra_map(seed in any::<u64>(), g in 1usize..=2, r in 2usize..=4) {
        let mut rng = sample::rng(seed);
        let q = QuotientSpec::mod_sigma(r as u64).unwrap();
        let x = sample::ring_element(&mut rng, g, q, 3, 3, 3).unwrap();
        let y = sample::ring_element(&mut rng, g, q, 3, 3, 3).unwrap();
        let (ix, iy) = (iota_r(&x, g, r).unwrap(), iota_r(&y, g, r).unwrap());
        prop_assert_eq!(iota_r(&x.mul(&y), g, r).unwrap(), ix.mul(&iy));
        prop_assert_eq!(iota_r(&x.add(&y), g, r).unwrap(), ix.add(&iy));
    }

    #[test]
    fn iota_r_never_kills_nonzero_elements(seed in any::<u64>(), g in 1usize..=2, r in 2usize..=4, terms in 1usize..=8) {
        let mut rng = sample::rng(seed);
        let q = QuotientSpec::mod_sigma(r as u64).unwrap();
        let x = sample::nonzero_ring_element(&mut rng, g, q, terms, 4).unwrap();
        prop_assert!(!iota_r(&x, g, r).unwrap().is_zero());
    }
}

#[test]
fn suprataut_is_injective_on_a_thousand_elements() {
    let mut rng = sample::rng(99);
    let mut elems = BTreeSet::new();
    while elems.len() < 1000 {
        let g = 1 + elems.len() % 3;
        elems.insert(sample::semidirect(&mut rng, g, 3, 4));
    }
    let images: BTreeSet<_> = elems.iter().map(|z| suprataut(z).unwrap()).collect();
    assert_eq!(images.len(), elems.len());
}

#[test]
fn iota_r_rejects_small_r_and_foreign_quotients() {
    assert!(matches!(iota_r_element(&HeisenbergElement::identity(1), 1), Err(HeisError::Invalid(_))));
    let x = HeisRing::one_in(1, QuotientSpec::ModSigma(3));
    assert!(iota_r(&x, 1, 4).is_err());
}

#[test]
fn certificate_g1_r2_is_two_one() {
    let (_, _, s) = iota_r_specialized_generators(1, 2).unwrap();
    let c = annihilator_certificate(&s).unwrap();
    assert_eq!((c.n, c.k), (2, 1));
}

#[test]
fn certificate_of_a_jordan_block_needs_k_two() {
    let one = BigRational::one();
    let m = RationalMatrix::from_rows(vec![vec![one.clone(), one.clone()], vec![BigRational::from(BigInt::from(0)), one]]).unwrap();
    let c = annihilator_certificate(&m).unwrap();
    assert_eq!((c.n, c.k), (1, 2));
}

#[test]
fn non_cyclotomic_matrices_are_refused() {
    let m = RationalMatrix::from_rows(vec![vec![BigRational::from(BigInt::from(2))]]).unwrap();
    assert!(matches!(annihilator_certificate(&m), Err(HeisError::Certificate(_))));
}

#[test]
fn cyclotomic_polynomials_factor_x_to_the_n_minus_one() {
    for n in 1..=12u64 {
        let mut prod = Poly::from_ints(&[1]);
        for d in 1..=n {
            if n % d == 0 {
                prod = prod.mul(&cyclotomic(d));
            }
        }
        assert_eq!(prod, Poly::x_pow_minus_one(n as usize), "n={n}");
    }
    let f = cyclotomic_factorization(&cyclotomic(6).mul(&cyclotomic(6)).mul(&cyclotomic(1))).unwrap();
    assert_eq!(f, vec![(1, 1), (6, 2)]);
}

#[test]
fn charpoly_of_a_permutation() {
    let z = || BigRational::from(BigInt::from(0));
    let o = BigRational::one;
    let m = RationalMatrix::from_rows(vec![vec![z(), z(), o()], vec![o(), z(), z()], vec![z(), o(), z()]]).unwrap();
    assert_eq!(charpoly(&m).unwrap(), Poly::x_pow_minus_one(3));
}
