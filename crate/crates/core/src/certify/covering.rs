//! Random families of `(n-k+1)`-spaces whose union meets every `k`-space in
//! a spanning set of points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::SubspaceIndex;
use crate::error::{GdlError, Result};
use crate::subspace::{Space, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CoveringOutcome {
    /// Indices of the sampled `(n-k+1)`-spaces in canonical order.
    Success { seed: u64, members: Vec<usize> },
    Failure { seed: u64, members: Vec<usize>, violating: usize },
}

impl CoveringOutcome {
    pub fn succeeded(&self) -> bool {
        matches!(self, CoveringOutcome::Success { .. })
    }
}

/// The least `k`-space `S` with `<S ∩ (union of hs)> != S`, if any.
pub fn verify_covering(space: &Space, k: usize, hs: &[Subspace]) -> Result<Option<usize>> {
    let points = SubspaceIndex::new(space, 1)?;
    let mut covered = vec![false; points.len()];
    for h in hs {
        for v in space.points(h) {
            covered[points.rank(&space.point(&v))] = true;
        }
    }
    let index = SubspaceIndex::new(space, k)?;
    Ok((0..index.len()).into_par_iter().find_first(|&i| {
        let s = index.unrank(i);
        let pts: Vec<_> = space.points(&s).into_iter().filter(|v| covered[points.rank(&space.point(v))]).collect();
        space.canonicalize(&pts).dim() < k
    }))
}

/// Samples `budget` uniform `(n-k+1)`-spaces from a seeded ChaCha stream and
/// verifies the spanning property against every `k`-space.
pub fn covering_family_search(space: &Space, k: usize, budget: usize, seed: u64) -> Result<CoveringOutcome> {
    let n = space.n();
    if k == 0 || n < 2 * k {
        return Err(GdlError::param(format!("covering search needs n >= 2k >= 2, got n={n}, k={k}")));
    }
    let big = SubspaceIndex::new(space, n - k + 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members: Vec<usize> = (0..budget).map(|_| rng.gen_range(0..big.len())).collect();
    members.sort_unstable();
    members.dedup();
    let hs: Vec<Subspace> = members.iter().map(|&i| big.unrank(i)).collect();
    Ok(match verify_covering(space, k, &hs)? {
        None => CoveringOutcome::Success { seed, members },
        Some(violating) => CoveringOutcome::Failure { seed, members, violating },
    })
}

/// Successes over `trials` independent searches with seeds `seed..seed+trials`.
pub fn covering_success_rate(space: &Space, k: usize, budget: usize, seed: u64, trials: u64) -> Result<u64> {
    let mut hits = 0;
    for t in 0..trials {
        hits += covering_family_search(space, k, budget, seed.wrapping_add(t))?.succeeded() as u64;
    }
    Ok(hits)
}

/// Default budget `k^2 (n-k+1)`.
pub fn default_budget(n: usize, k: usize) -> usize {
    k * k * (n - k + 1)
}
