//! Certificates that are constant on classes of `d`-spaces.
//!
//! When a family is invariant under the stabiliser of some configuration,
//! averaging any certificate over that group gives one that only depends on
//! the orbit of a `d`-space. Classes given by incidence with the defining
//! subspaces are usually exactly these orbits, so the certificate reduces to
//! a small exact system: one unknown per class, one equation per distinct
//! class-count profile of a `k`-space.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{GdlError, Result};
use crate::family::{Family, WeightCertificate};
use crate::grassmann::SubspaceLattice;
use crate::linalg::{int, solve, Rational};
use crate::subspace::{Space, Subspace};

/// Meet dimensions of `d` with each defining subspace.
pub fn meet_signature(space: &Space, defining: &[Subspace], d: &Subspace) -> Vec<u8> {
    defining.iter().map(|t| space.meet_dim(d, t) as u8).collect()
}

/// Solves for a certificate of `family` at degree `d` whose weight depends
/// only on `signature(D)`. Fails with `Inconsistent` when no such
/// certificate exists; the family may still have degree `d`.
pub fn class_certificate<F>(family: &Family, d: usize, signature: F) -> Result<WeightCertificate>
where
    F: Fn(&Subspace) -> Vec<u8> + Sync,
{
    let space = family.space();
    let lattice = SubspaceLattice::new(space, family.k(), d)?;
    let dix = lattice.d_index();
    let sigs: Vec<Vec<u8>> = (0..dix.len()).into_par_iter().map(|i| signature(&dix.unrank(i))).collect();
    let mut ids: HashMap<&[u8], usize> = HashMap::new();
    let class: Vec<usize> = sigs
        .iter()
        .map(|s| {
            let next = ids.len();
            *ids.entry(s.as_slice()).or_insert(next)
        })
        .collect();
    let nc = ids.len();
    let index = family.index()?;
    let rows: HashMap<Vec<u32>, bool> = (0..family.total())
        .into_par_iter()
        .fold(
            || (HashMap::new(), Vec::new(), None::<String>),
            |(mut acc, mut buf, err): (HashMap<Vec<u32>, bool>, Vec<usize>, Option<String>), i| {
                if err.is_some() {
                    return (acc, buf, err);
                }
                lattice.ranks_into(&index.unrank(i), &mut buf);
                let mut counts = vec![0u32; nc];
                for &r in &buf {
                    counts[class[r]] += 1;
                }
                let m = family.contains(i);
                let err = match acc.insert(counts, m) {
                    Some(prev) if prev != m => Some(format!("k-space {i} shares its class profile with a space of the other side")),
                    _ => None,
                };
                (acc, buf, err)
            },
        )
        .map(|(acc, _, err)| err.map_or(Ok(acc), Err))
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                if let Some(prev) = a.insert(k, v) {
                    if prev != v {
                        return Err("two k-spaces with equal class profiles differ in membership".to_string());
                    }
                }
            }
            Ok(a)
        })
        .map_err(|e| GdlError::Inconsistent(format!("no class-constant certificate: {e}")))?;
    let (a, b): (Vec<Vec<Rational>>, Vec<Rational>) =
        rows.into_iter().map(|(c, m)| (c.into_iter().map(int).collect(), int(m as u8))).unzip();
    let x = solve(&a, &b).ok_or_else(|| GdlError::Inconsistent("no class-constant certificate".into()))?;
    let mut cert = WeightCertificate::new(d);
    for (i, &c) in class.iter().enumerate() {
        if !x[c].is_zero() {
            cert.weights.insert(i, x[c].clone());
        }
    }
    Ok(cert)
}

/// Class certificate with classes given by the meet dimensions with
/// `defining`.
pub fn indicator_certificate(family: &Family, d: usize, defining: &[Subspace]) -> Result<WeightCertificate> {
    let space = family.space().clone();
    class_certificate(family, d, |s| meet_signature(&space, defining, s))
}

/// Certificate assigning `weights[class(D)]` to every `d`-space.
pub fn line_weight_certificate<F>(space: &Space, d: usize, class: F, weights: &[Rational]) -> Result<WeightCertificate>
where
    F: Fn(&Subspace) -> usize + Sync,
{
    let dix = crate::enumerate::SubspaceIndex::new(space, d)?;
    let w: Vec<Rational> = (0..dix.len()).into_par_iter().map(|i| weights[class(&dix.unrank(i))].clone()).collect();
    Ok(WeightCertificate::from_dense(d, w))
}
