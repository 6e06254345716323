use heisrep_core::sample;
use heisrep_core::semidirect::{
    is_symplectic, lies_in_heisenberg_ring, symplectic_inverse, twist_matrix, uncross_matrix,
};
use heisrep_core::{AutPlusElement, HeisRing, Matrix, QuotientSpec};
use proptest::prelude::*;

fn ring_matrix(rng: &mut sample::ChaCha8Rng, g: usize, size: usize) -> Matrix<HeisRing> {
    Matrix::from_fn(size, size, |_, _| sample::ring_element(rng, g, QuotientSpec::Full, 2, 3, 2).unwrap())
}

proptest! {
    #[test]
    fn sampled_matrices_are_symplectic(seed in any::<u64>(), g in 1usize..=3, steps in 0usize..10) {
        let mut rng = sample::rng(seed);
        let m = sample::symplectic(&mut rng, g, steps);
        prop_assert!(is_symplectic(&m));
        prop_assert!(m.mul(&symplectic_inverse(&m)).is_identity(&1.into()));
    }

    #[test]
    fn aut_action_is_a_group_action(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let f1 = sample::aut_plus(&mut rng, g, 3, 5);
        let f2 = sample::aut_plus(&mut rng, g, 3, 5);
        let x = sample::heisenberg(&mut rng, g, 5);
        let y = sample::heisenberg(&mut rng, g, 5);
        prop_assert_eq!(f1.compose(&f2).apply(&x).unwrap(), f1.apply(&f2.apply(&x).unwrap()).unwrap());
        prop_assert_eq!(f1.apply(&x.multiply(&y).unwrap()).unwrap(), f1.apply(&x).unwrap().multiply(&f1.apply(&y).unwrap()).unwrap());
        prop_assert_eq!(f1.inverse().apply(&f1.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn semidirect_group_axioms(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let a = sample::semidirect(&mut rng, g, 3, 4);
        let b = sample::semidirect(&mut rng, g, 3, 4);
        let c = sample::semidirect(&mut rng, g, 3, 4);
        prop_assert_eq!(a.multiply(&b).unwrap().multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
        let e = a.multiply(&a.inverse()).unwrap();
        prop_assert!(e.h.is_identity() && e.aut.is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    /// A crossed product `A · B^{f1}` uncrosses to the product of the uncrossed factors.
    #[test]
    fn uncrossing_turns_crossed_products_into_products(seed in any::<u64>(), g in 1usize..=2) {
        let mut rng = sample::rng(seed);
        let a = ring_matrix(&mut rng, g, 2);
        let b = ring_matrix(&mut rng, g, 2);
        let f1 = sample::aut_plus(&mut rng, g, 2, 3);
        let f2 = sample::aut_plus(&mut rng, g, 2, 3);
        let crossed = a.mul(&twist_matrix(&b, &f1).unwrap());
        let lhs = uncross_matrix(&crossed, &f1.compose(&f2)).unwrap();
        let rhs = uncross_matrix(&a, &f1).unwrap().mul(&uncross_matrix(&b, &f2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn identity_aut_stays_in_the_heisenberg_ring() {
    let mut rng = sample::rng(3);
    let a = ring_matrix(&mut rng, 2, 3);
    assert!(lies_in_heisenberg_ring(&uncross_matrix(&a, &AutPlusElement::identity(2)).unwrap()));
    let f = sample::aut_plus(&mut rng, 2, 2, 3);
    if !f.is_identity() && !a.entries().all(|e| e.is_zero()) {
        assert!(!lies_in_heisenberg_ring(&uncross_matrix(&a, &f).unwrap()));
    }
}

#[test]
fn non_symplectic_matrices_are_rejected() {
    let m = heisrep_core::IntMatrix::from_i64(&[vec![2, 0], vec![0, 1]]);
    assert!(AutPlusElement::symplectic(m).is_err());
}
