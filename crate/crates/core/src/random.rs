//! Seeded random maps and cochains for the property suites.
//!
//! Entries are integers in `[-3, 3]`. Half of the maps are drawn with a
//! strong bias towards zero so that a useful share of them are relative
//! Rota-Baxter operators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use serde::Serialize;

use crate::cochain::{ambient_dim, Cochain};
use crate::cohomology::induced_rep;
use crate::error::Result;
use crate::linalg::{LinearMap, Matrix, Vector};
use crate::lts::is_homomorphism;
use crate::rbo::RelativeRbo;
use crate::scalar::Scalar;

pub type TestRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20240611;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform_entry(rng: &mut TestRng) -> Scalar {
    Scalar::from_int(rng.gen_range(-3..=3))
}

fn sparse_entry(rng: &mut TestRng) -> Scalar {
    if rng.gen_bool(0.8) {
        Scalar::zero()
    } else {
        uniform_entry(rng)
    }
}

fn entries(rng: &mut TestRng, n: usize, sparse: bool) -> Vector {
    (0..n)
        .map(|_| {
            if sparse {
                sparse_entry(rng)
            } else {
                uniform_entry(rng)
            }
        })
        .collect()
}

/// A `rows x cols` map with entries uniform in `[-3, 3]`.
pub fn random_map(rng: &mut TestRng, rows: usize, cols: usize) -> LinearMap {
    LinearMap::new(Matrix::new(rows, cols, entries(rng, rows * cols, false)).expect("shape"))
}

/// Like [`random_map`] but each entry is zero with probability 0.8.
pub fn sparse_map(rng: &mut TestRng, rows: usize, cols: usize) -> LinearMap {
    LinearMap::new(Matrix::new(rows, cols, entries(rng, rows * cols, true)).expect("shape"))
}

/// `count` maps alternating between the uniform and sparse generators.
pub fn map_family(rng: &mut TestRng, rows: usize, cols: usize, count: usize) -> Vec<LinearMap> {
    (0..count)
        .map(|k| {
            if k % 2 == 0 {
                random_map(rng, rows, cols)
            } else {
                sparse_map(rng, rows, cols)
            }
        })
        .collect()
}

/// An unconstrained cochain with uniform entries; only meaningful as a
/// constrained cochain in degrees -1 and 1.
pub fn random_cochain(
    rng: &mut TestRng,
    degree: i32,
    source_dim: usize,
    target_dim: usize,
) -> Cochain {
    let n = ambient_dim(degree, source_dim, target_dim).expect("supported degree");
    Cochain::new(degree, source_dim, target_dim, entries(rng, n, false)).expect("shape")
}

/// Tallies from checking random maps against one base operator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Survey {
    pub samples: usize,
    /// Maps that are relative Rota-Baxter operators at the base weight.
    pub operators: usize,
    /// Maps where the operator identity, the graph test and the Nijenhuis
    /// test of the lift do not all agree.
    pub disagreements: usize,
    /// Operators whose descendent system, homomorphism property or induced
    /// representation fails.
    pub descendent_failures: usize,
}

/// Draws `samples` maps from [`map_family`] with the shape of `base.t()`
/// and checks each one.
pub fn survey(base: &RelativeRbo, seed: u64, samples: usize) -> Result<Survey> {
    let mut rng = seeded(seed);
    let mut out = Survey {
        samples,
        ..Survey::default()
    };
    for t in map_family(&mut rng, base.dim(), base.source_dim(), samples) {
        let r = base.with_map(t)?;
        let rbo = r.is_rbo();
        let graph = r.graph_is_subsystem();
        let lift = r.lift_is_nijenhuis();
        if rbo != graph || rbo != lift {
            out.disagreements += 1;
        }
        if !rbo {
            continue;
        }
        out.operators += 1;
        let desc = r.descendent_lts()?;
        let ok = desc.verify().is_empty()
            && is_homomorphism(&desc, r.action().algebra(), r.t())?
            && induced_rep(&r)?.rep().verify().is_empty();
        if !ok {
            out.descendent_failures += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = map_family(&mut seeded(1), 3, 3, 4);
        let b = map_family(&mut seeded(1), 3, 3, 4);
        assert_eq!(a, b);
        assert_ne!(a, map_family(&mut seeded(2), 3, 3, 4));
        for m in &a {
            for x in m.matrix().entries() {
                assert!(x >= &Scalar::from_int(-3) && x <= &Scalar::from_int(3));
            }
        }
    }
}
