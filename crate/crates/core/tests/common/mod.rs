#![allow(dead_code)]

use arf_core::oracle::random_invertible;
use arf_core::{BitVector, QuadraticForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn v(s: &str) -> BitVector {
    s.parse().unwrap()
}

pub fn std_form(g: &str) -> QuadraticForm {
    QuadraticForm::standard(v(g)).unwrap()
}

/// Every form on the standard Gram of the given genus.
pub fn standard_forms(genus: usize) -> Vec<QuadraticForm> {
    (0..1u64 << (2 * genus))
        .map(|bits| QuadraticForm::standard(BitVector::from_u64(2 * genus, bits)).unwrap())
        .collect()
}

/// Standard form with random basis values, pulled back through a random
/// change of basis.
pub fn random_form(seed: u64, dim: usize) -> QuadraticForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g: Vec<bool> = (0..dim).map(|_| rng.gen()).collect();
    let p = random_invertible(&mut rng, dim);
    QuadraticForm::standard(BitVector::from_bits(&g))
        .unwrap()
        .pullback(&p)
        .unwrap()
}
