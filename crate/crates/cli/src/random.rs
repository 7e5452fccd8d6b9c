//! Seeded random subcomplexes of the complete simplicial complex.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::document::ComplexDocument;

pub const MAX_VERTICES: usize = 7;
pub const MAX_DIM: usize = 3;
const ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomParams {
    pub vertices: usize,
    pub dim: usize,
    pub facet_prob: f64,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum RandomError {
    #[error("{0}")]
    OutOfRange(String),
    #[error("no {dim}-face was selected in {attempts} attempts; raise the facet probability")]
    Empty { dim: usize, attempts: usize },
}

/// All `k`-subsets of `1..=v`, lexicographic.
fn subsets(v: usize, k: usize) -> Vec<Vec<u64>> {
    cellcut_core::fixtures::all_subsets(v, k).into_iter().map(|s| s.into_iter().map(|x| x as u64).collect()).collect()
}

/// Every `(d−1)`-face on `vertices` vertices is kept, and each `d`-face is
/// kept independently with probability `facet_prob`. `(d−1)`-faces not
/// covered by a kept `d`-face are listed as facets of their own, so the
/// document always has the full codimension-one skeleton.
pub fn random_document(seed: u64, p: RandomParams) -> Result<ComplexDocument, RandomError> {
    if p.dim == 0 || p.dim > MAX_DIM {
        return Err(RandomError::OutOfRange(format!("dimension must be in 1..={}, got {}", MAX_DIM, p.dim)));
    }
    if p.vertices < p.dim + 1 || p.vertices > MAX_VERTICES {
        return Err(RandomError::OutOfRange(format!(
            "vertices must be in {}..={} for dimension {}, got {}",
            p.dim + 1,
            MAX_VERTICES,
            p.dim,
            p.vertices
        )));
    }
    if !(p.facet_prob > 0.0 && p.facet_prob <= 1.0) {
        return Err(RandomError::OutOfRange(format!("facet probability must be in (0, 1], got {}", p.facet_prob)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tops = subsets(p.vertices, p.dim + 1);
    for _ in 0..ATTEMPTS {
        let chosen: Vec<Vec<u64>> = tops.iter().filter(|_| rng.gen_bool(p.facet_prob)).cloned().collect();
        if chosen.is_empty() {
            continue;
        }
        let mut facets = chosen.clone();
        for ridge in subsets(p.vertices, p.dim) {
            let covered = chosen.iter().any(|t| ridge.iter().all(|v| t.contains(v)));
            if !covered {
                facets.push(ridge);
            }
        }
        facets.sort();
        return Ok(ComplexDocument::Simplicial { augmented: true, facets });
    }
    Err(RandomError::Empty { dim: p.dim, attempts: ATTEMPTS })
}
