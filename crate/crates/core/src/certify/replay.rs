//! Evaluation of weight certificates over every `k`-space.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GdlError, Result};
use crate::family::{Family, WeightCertificate};
use crate::grassmann::SubspaceLattice;
use crate::linalg::{common_denominator, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ReplayOutcome {
    Replays,
    Mismatch {
        index: usize,
        /// The certificate value at the offending `k`-space, as "p/q".
        value: String,
        member: bool,
    },
}

impl ReplayOutcome {
    pub fn replays(&self) -> bool {
        matches!(self, ReplayOutcome::Replays)
    }
}

/// Weights scaled to integers over a common denominator.
enum Scaled {
    Small(Vec<i128>, i128),
    Big(Vec<BigInt>, BigInt),
}

fn scale(cert: &WeightCertificate, nd: usize) -> Scaled {
    let den = common_denominator(cert.weights.values());
    let mut big = vec![BigInt::zero(); nd];
    for (&i, x) in &cert.weights {
        big[i] = x.numer() * (&den / x.denom());
    }
    // per-cell sums stay far from overflow when every term is below 2^100
    let limit = BigInt::from(1u128 << 100);
    if big.iter().all(|x| x.magnitude() < limit.magnitude()) && den < limit {
        Scaled::Small(big.iter().map(|x| x.to_i128().unwrap()).collect(), den.to_i128().unwrap())
    } else {
        Scaled::Big(big, den)
    }
}

fn check_dims(family: &Family, cert: &WeightCertificate) -> Result<SubspaceLattice> {
    let lattice = SubspaceLattice::new(family.space(), family.k(), cert.d)?;
    if let Some((&last, _)) = cert.weights.iter().next_back() {
        if last >= lattice.d_index().len() {
            return Err(GdlError::param(format!(
                "certificate index {last} out of range for {}-spaces",
                cert.d
            )));
        }
    }
    Ok(lattice)
}

/// Checks `sum_{D <= S} wt(D) = f(S)` for every `k`-space `S`. On failure the
/// least offending index is reported.
pub fn eval_certificate(family: &Family, cert: &WeightCertificate) -> Result<ReplayOutcome> {
    let lattice = check_dims(family, cert)?;
    let index = family.index()?;
    let nd = lattice.d_index().len();
    let scaled = scale(cert, nd);
    let chunk = 1024;
    let chunks = family.total().div_ceil(chunk);
    let first_bad = (0..chunks).into_par_iter().find_map_first(|c| {
        let mut ranks = Vec::with_capacity(lattice.per_cell());
        for i in c * chunk..((c + 1) * chunk).min(family.total()) {
            lattice.ranks_into(&index.unrank(i), &mut ranks);
            let ok = match &scaled {
                Scaled::Small(w, den) => {
                    let s: i128 = ranks.iter().map(|&r| w[r]).sum();
                    s == if family.contains(i) { *den } else { 0 }
                }
                Scaled::Big(w, den) => {
                    let s: BigInt = ranks.iter().map(|&r| &w[r]).sum();
                    if family.contains(i) {
                        &s == den
                    } else {
                        s.is_zero()
                    }
                }
            };
            if !ok {
                return Some(i);
            }
        }
        None
    });
    Ok(match first_bad {
        None => ReplayOutcome::Replays,
        Some(i) => {
            let ranks = lattice.ranks(&index.unrank(i));
            let v: Rational = ranks.iter().map(|&r| cert.get(r)).sum();
            ReplayOutcome::Mismatch { index: i, value: crate::linalg::format_rational(&v), member: family.contains(i) }
        }
    })
}

/// The function `S -> sum_{D <= S} wt(D)` on every `k`-space.
pub fn evaluate_certificate(family_like: &Family, cert: &WeightCertificate) -> Result<Vec<Rational>> {
    let lattice = check_dims(family_like, cert)?;
    let index = family_like.index()?;
    Ok((0..family_like.total())
        .into_par_iter()
        .map(|i| lattice.ranks(&index.unrank(i)).iter().map(|&r| cert.get(r)).sum())
        .collect())
}
