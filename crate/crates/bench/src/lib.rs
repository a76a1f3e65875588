//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relhom::IntMatrix;

/// A seeded `rows × cols` matrix with entries in `[-bound, bound]`.
pub fn random_matrix(seed: u64, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&data).expect("rows have equal length")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_reproducible() {
        let a = random_matrix(5, 4, 6, 9);
        assert_eq!(a, random_matrix(5, 4, 6, 9));
        assert_eq!((a.rows(), a.cols()), (4, 6));
    }
}
