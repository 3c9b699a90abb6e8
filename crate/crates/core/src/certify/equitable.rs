//! Equitable bipartitions of the Grassmann graph.

use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::family::Family;
use crate::gauss::{eigenvalue_grassmann, grassmann_spectrum};
use crate::grassmann::grassmann_neighbors;

/// `((a, val-a), (b, val-b))`: a member has `a` member neighbours, a
/// non-member has `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    pub a: i64,
    pub b: i64,
    pub valency: i64,
}

impl QuotientMatrix {
    pub fn new(a: i64, b: i64, valency: i64) -> Self {
        QuotientMatrix { a, b, valency }
    }
    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.valency - self.a], [self.b, self.valency - self.b]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum EquitableOutcome {
    Equitable { matrix: QuotientMatrix },
    /// Empty or full family; only one row is defined.
    Trivial { a: i64, valency: i64 },
    NotEquitable {
        /// Two vertices on the same side with different counts.
        first: usize,
        second: usize,
        member: bool,
    },
}

impl EquitableOutcome {
    pub fn matrix(&self) -> Option<QuotientMatrix> {
        match self {
            EquitableOutcome::Equitable { matrix } => Some(*matrix),
            _ => None,
        }
    }
}

/// Counts member neighbours of every vertex by streaming the neighbourhoods
/// of the members only.
pub fn equitable_check(family: &Family) -> Result<EquitableOutcome> {
    let (n, k, q) = (family.n() as u32, family.k() as u32, family.q() as u64);
    let valency = if k == 0 || k == n { 0 } else { eigenvalue_grassmann(0, n, k, q) as i64 };
    let index = family.index()?;
    let counts: Vec<AtomicU32> = (0..family.total()).map(|_| AtomicU32::new(0)).collect();
    let members: Vec<usize> = family.members().collect();
    members.par_iter().for_each(|&i| {
        for t in grassmann_neighbors(index.space(), &index.unrank(i)) {
            counts[index.rank(&t)].fetch_add(1, Ordering::Relaxed);
        }
    });
    let counts: Vec<i64> = counts.into_iter().map(|c| c.into_inner() as i64).collect();
    let mut a: Option<(usize, i64)> = None;
    let mut b: Option<(usize, i64)> = None;
    for (i, &c) in counts.iter().enumerate() {
        let member = family.contains(i);
        let slot = if member { &mut a } else { &mut b };
        match slot {
            None => *slot = Some((i, c)),
            Some((j, v)) if *v != c => {
                return Ok(EquitableOutcome::NotEquitable { first: *j, second: i, member });
            }
            _ => {}
        }
    }
    Ok(match (a, b) {
        (Some((_, a)), Some((_, b))) => EquitableOutcome::Equitable { matrix: QuotientMatrix::new(a, b, valency) },
        (Some((_, a)), None) | (None, Some((_, a))) => EquitableOutcome::Trivial { a, valency },
        (None, None) => EquitableOutcome::Trivial { a: 0, valency },
    })
}

/// Eigenvalues of the quotient matrix: the row sum and `a - b`.
pub fn quotient_eigenvalues(m: &QuotientMatrix) -> (i64, i64) {
    (m.valency, m.a - m.b)
}

/// Whether both quotient eigenvalues belong to the spectrum of `J_q(n,k)`.
pub fn quotient_eigen_check(m: &QuotientMatrix, n: usize, k: usize, q: usize) -> bool {
    let spec = grassmann_spectrum(n as u32, k as u32, q as u64);
    let (x, y) = quotient_eigenvalues(m);
    spec.contains(&(x as i128)) && spec.contains(&(y as i128))
}
