//! Seeded randomness helpers. Every random choice in the crate goes through
//! a `ChaCha8Rng` seeded from a `u64`, so runs are reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg::Mat;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vector<F: Field>(f: &F, n: usize, rng: &mut Rng) -> Vec<F::Elem> {
    (0..n).map(|_| f.random_elem(rng)).collect()
}

pub fn nonzero_vector<F: Field>(f: &F, n: usize, rng: &mut Rng) -> Vec<F::Elem> {
    loop {
        let v = vector(f, n, rng);
        if v.iter().any(|x| !f.is_zero(x)) {
            return v;
        }
    }
}

pub fn matrix<F: Field>(f: &F, rows: usize, cols: usize, rng: &mut Rng) -> Mat<F> {
    let data = (0..rows).map(|_| vector(f, cols, rng)).collect();
    Mat::from_rows(f, cols, data).expect("rectangular")
}

/// A random matrix of full row rank.
pub fn full_rank_matrix<F: Field>(f: &F, rows: usize, cols: usize, rng: &mut Rng) -> Mat<F> {
    loop {
        let m = matrix(f, rows, cols, rng);
        if m.rank() == rows.min(cols) {
            return m;
        }
    }
}

pub fn invertible<F: Field>(f: &F, n: usize, rng: &mut Rng) -> Mat<F> {
    full_rank_matrix(f, n, n, rng)
}
