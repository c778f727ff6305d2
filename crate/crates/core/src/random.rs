//! Seeded generators for test inputs: random algebras, 4-nilpotent algebras,
//! random matrices and bilinear maps with small rational entries.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::bilinear::BilinearMap;
use crate::exactnum::{RatMatrix, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational: numerator in `-5..=5`, denominator in `1..=3`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

fn sparse_rational<R: Rng>(rng: &mut R, density: f64) -> Rational {
    if rng.gen_bool(density) {
        small_rational(rng)
    } else {
        Rational::zero()
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| small_rational(rng)).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> RatMatrix {
    let entries = (0..rows * cols).map(|_| sparse_rational(rng, density)).collect();
    RatMatrix::from_vec(rows, cols, entries).expect("sized")
}

pub fn random_bilinear<R: Rng>(rng: &mut R, dim: usize, density: f64) -> BilinearMap {
    let coeffs = (0..dim * dim * dim).map(|_| sparse_rational(rng, density)).collect();
    BilinearMap::from_flat(dim, coeffs).expect("sized")
}

/// Random algebra of dimension `dim`; `density` is the chance a structure
/// constant is nonzero.
pub fn random_algebra<R: Rng>(rng: &mut R, dim: usize, density: f64) -> Algebra {
    Algebra::with_default_labels(format!("random-{dim}"), random_bilinear(rng, dim, density))
}

/// Random algebra in which every product of four elements vanishes.
///
/// Basis elements get degrees 1, 2, 3; `eᵢeⱼ` is a random combination of basis
/// elements of degree `deg i + deg j`, which is zero once it exceeds 3.
pub fn random_nilpotent4<R: Rng>(rng: &mut R, dim: usize) -> Algebra {
    assert!(dim >= 3, "need at least one element per degree");
    let mut degrees: Vec<usize> = vec![1, 2, 3];
    degrees.extend((3..dim).map(|_| rng.gen_range(1..=3)));
    degrees.shuffle(rng);
    let mut s = BilinearMap::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            let target = degrees[i] + degrees[j];
            for (k, &d) in degrees.iter().enumerate() {
                if d == target {
                    s.set(i, j, k, sparse_rational(rng, 0.7));
                }
            }
        }
    }
    Algebra::with_default_labels(format!("nilpotent4-{dim}"), s)
}
