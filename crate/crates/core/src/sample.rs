//! Seeded random generators for test batteries and the `verify` suite.
//!
//! Everything draws from a caller-supplied [`ChaCha8Rng`], so a fixed seed
//! reproduces the same inputs on every platform.

use num_bigint::BigInt;
use rand::Rng;
pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group_ring::HeisRing;
use crate::heisenberg::{HeisenbergElement, QuotientSpec};
use crate::matrix::IntMatrix;
use crate::semidirect::{AutPlusElement, SemidirectElement};
use crate::words::{BraidWord, FreeWord, SurfaceBraidWord, SurfaceGen, SurfaceLetter};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A word of exactly `len` letters in `α_i^±, β_i^±` and, when `strands > 1`,
/// the exchanges `σ_j^±`.
pub fn surface_word(rng: &mut ChaCha8Rng, g: usize, strands: usize, len: usize) -> SurfaceBraidWord {
    let exchanges = strands.saturating_sub(1);
    let letters = (0..len)
        .map(|_| {
            let pick = rng.gen_range(0..2 * g + exchanges);
            let gen = if pick < g {
                SurfaceGen::Alpha(pick)
            } else if pick < 2 * g {
                SurfaceGen::Beta(pick - g)
            } else {
                SurfaceGen::Sigma(pick - 2 * g)
            };
            SurfaceLetter::new(gen, rng.gen_bool(0.5))
        })
        .collect();
    SurfaceBraidWord::new(g, strands.max(1), letters).expect("letters drawn in range")
}

/// A Heisenberg element with coordinates uniform in `[-bound, bound]`.
pub fn heisenberg(rng: &mut ChaCha8Rng, g: usize, bound: i64) -> HeisenbergElement {
    let mut draw = |k: usize| (0..k).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<i64>>();
    let m = draw(g);
    let n = draw(g);
    let l = draw(1)[0];
    HeisenbergElement::from_i64(&m, &n, l).expect("lengths match")
}

/// A sum of up to `terms` monomials with coefficients in `[-coeff, coeff]`,
/// reduced by `q`. May be zero.
pub fn ring_element(
    rng: &mut ChaCha8Rng,
    g: usize,
    q: QuotientSpec,
    terms: usize,
    bound: i64,
    coeff: i64,
) -> Result<HeisRing> {
    let mut out = HeisRing::zero();
    for _ in 0..terms {
        let c = rng.gen_range(-coeff..=coeff);
        let h = heisenberg(rng, g, bound);
        out = out.add(&HeisRing::monomial(h, c).reduce(q)?);
    }
    Ok(out)
}

/// A nonzero ring element; redraws until one is found.
pub fn nonzero_ring_element(
    rng: &mut ChaCha8Rng,
    g: usize,
    q: QuotientSpec,
    terms: usize,
    bound: i64,
) -> Result<HeisRing> {
    loop {
        let x = ring_element(rng, g, q, terms.max(1), bound, 3)?;
        if !x.is_zero() {
            return Ok(x);
        }
    }
}

/// The elementary symplectic matrix `[[I, S], [0, I]]` (or its transpose
/// block form when `lower`) with `S = ±(E_ij + E_ji)` or `±E_ii`.
pub fn elementary_symplectic(g: usize, i: usize, j: usize, sign: i64, lower: bool) -> IntMatrix {
    let mut m = IntMatrix::int_identity(2 * g);
    let s = BigInt::from(sign);
    let (r0, c0) = if lower { (g, 0) } else { (0, g) };
    m.set(r0 + i, c0 + j, s.clone());
    m.set(r0 + j, c0 + i, s);
    m
}

/// A product of `steps` elementary symplectic matrices.
pub fn symplectic(rng: &mut ChaCha8Rng, g: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::int_identity(2 * g);
    for _ in 0..steps {
        let i = rng.gen_range(0..g);
        let j = rng.gen_range(0..g);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        m = m.mul(&elementary_symplectic(g, i, j, sign, rng.gen_bool(0.5)));
    }
    m
}

pub fn aut_plus(rng: &mut ChaCha8Rng, g: usize, bound: i64, steps: usize) -> AutPlusElement {
    let y = (0..2 * g).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    AutPlusElement::new(y, symplectic(rng, g, steps)).expect("product of symplectic generators")
}

pub fn semidirect(rng: &mut ChaCha8Rng, g: usize, bound: i64, steps: usize) -> SemidirectElement {
    let h = heisenberg(rng, g, bound);
    let f = aut_plus(rng, g, bound, steps);
    SemidirectElement::new(h, f).expect("genera agree")
}

pub fn free_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> FreeWord {
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=rank as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    FreeWord::from_letters(rank, &letters).expect("letters drawn in range")
}

pub fn braid_word(rng: &mut ChaCha8Rng, k: usize, len: usize) -> BraidWord {
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..k as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(k, letters).expect("letters drawn in range")
}

/// A pure braid built as a product of conjugates `w s_i^{±2} w^-1`.
pub fn pure_braid_word(rng: &mut ChaCha8Rng, k: usize, factors: usize, conj_len: usize) -> BraidWord {
    let mut out = BraidWord::new(k, Vec::new()).expect("empty word");
    for _ in 0..factors {
        let w = braid_word(rng, k, conj_len);
        let i = rng.gen_range(1..k as i32);
        let s = if rng.gen_bool(0.5) { i } else { -i };
        let sq = BraidWord::new(k, vec![s, s]).expect("in range");
        out = out.concat(&w).concat(&sq).concat(&w.inverse());
    }
    out
}

/// A unit vector of length `len` in `Z[H]` with `1` in slot `i`.
pub fn unit_vector(g: usize, q: QuotientSpec, len: usize, i: usize) -> Vec<HeisRing> {
    (0..len)
        .map(|j| if j == i { HeisRing::one_in(g, q) } else { HeisRing::zero() })
        .collect()
}

/// `±1` with equal probability.
pub fn sign(rng: &mut ChaCha8Rng) -> i64 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}
