//! Shared fixtures for the criterion benchmarks.

use braidform_core::{catalog, BraidWord, CatalogTag, Epsilon, RMatrix, StateVector};
use num_complex::Complex64;

pub use num_complex;

/// Deterministic linear-congruential generator; benchmarks must not depend
/// on ambient RNG state.
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

pub fn catalog_matrix(tag: CatalogTag) -> RMatrix {
    let theta = if tag == CatalogTag::Ex1 {
        0.8
    } else {
        std::f64::consts::PI / 3.0
    };
    catalog(tag, theta, Epsilon::Plus).expect("admissible theta")
}

/// Random freely reduced word of roughly the requested length.
pub fn random_word(strands: usize, length: usize, seed: u64) -> BraidWord {
    let mut rng = Lcg::new(seed);
    let letters: Vec<(usize, i8)> = (0..length)
        .map(|_| {
            let i = 1 + (rng.next_u64() as usize) % (strands - 1);
            let sign = if rng.next_u64().is_multiple_of(2) {
                1
            } else {
                -1
            };
            (i, sign)
        })
        .collect();
    BraidWord::new(strands, letters).expect("valid letters")
}

/// Unit-norm random state.
pub fn random_state(sites: usize, seed: u64) -> StateVector {
    let mut rng = Lcg::new(seed);
    let dim = 1usize << sites;
    let mut amplitudes: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amplitudes {
        *a /= norm;
    }
    StateVector::from_amplitudes(sites, amplitudes).expect("length matches")
}
