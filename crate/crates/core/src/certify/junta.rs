//! Junta structure: dependence on a set of points and hyperplanes, and the
//! covering lower bound on the size of any such set.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::SubspaceIndex;
use crate::error::{GdlError, Result};
use crate::family::Family;
use crate::subspace::{Space, Subspace};

/// A variable `x_P` (the `k`-space contains `P`) or `x_H` (it lies in `H`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum JuntaVar {
    Point(Subspace),
    Hyperplane(Subspace),
}

impl JuntaVar {
    pub fn eval(&self, space: &Space, s: &Subspace) -> bool {
        match self {
            JuntaVar::Point(p) => space.contains(s, p),
            JuntaVar::Hyperplane(h) => space.contains(h, s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum JuntaOutcome {
    Depends { classes: usize },
    /// Two `k`-spaces with equal signatures, one in the family and one not;
    /// the least such pair in canonical order.
    Fails { member: usize, nonmember: usize },
}

impl JuntaOutcome {
    pub fn depends(&self) -> bool {
        matches!(self, JuntaOutcome::Depends { .. })
    }
}

/// Whether membership in `family` is a function of the incidences with `vars`.
pub fn junta_depends(family: &Family, vars: &[JuntaVar]) -> Result<JuntaOutcome> {
    if vars.len() > 128 {
        return Err(GdlError::param("at most 128 junta variables"));
    }
    let space = family.space();
    for v in vars {
        let (JuntaVar::Point(s) | JuntaVar::Hyperplane(s)) = v;
        let want = if matches!(v, JuntaVar::Point(_)) { 1 } else { space.n() - 1 };
        if s.n() != space.n() || s.dim() != want {
            return Err(GdlError::param("junta variables must be points and hyperplanes of the ambient space"));
        }
    }
    let index = family.index()?;
    let sigs: Vec<u128> = (0..family.total())
        .into_par_iter()
        .map(|i| {
            let s = index.unrank(i);
            vars.iter().enumerate().fold(0u128, |acc, (b, v)| acc | (v.eval(space, &s) as u128) << b)
        })
        .collect();
    // signature -> (least member, least non-member)
    let mut classes: HashMap<u128, (Option<usize>, Option<usize>)> = HashMap::new();
    let mut worst: Option<(usize, usize)> = None;
    for (i, &sig) in sigs.iter().enumerate() {
        let e = classes.entry(sig).or_default();
        if family.contains(i) {
            e.0.get_or_insert(i);
        } else {
            e.1.get_or_insert(i);
        }
        if let (Some(m), Some(x)) = *e {
            let pair = (m, x);
            if worst.map_or(true, |w| pair.0.max(pair.1) < w.0.max(w.1)) {
                worst = Some(pair);
            }
        }
    }
    Ok(match worst {
        None => JuntaOutcome::Depends { classes: classes.len() },
        Some((member, nonmember)) => JuntaOutcome::Fails { member, nonmember },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverBound {
    pub trivial: bool,
    /// `alpha*`: the largest number of members incident with one point or
    /// hyperplane.
    pub alpha: u64,
    pub bound: u64,
    #[serde(skip)]
    pub point_loads: Vec<u64>,
    /// Indexed by the point `H^⊥`.
    #[serde(skip)]
    pub hyperplane_loads: Vec<u64>,
}

/// `ceil(|F| / alpha*)`: every member must be incident with some variable of
/// a junta set, and one variable covers at most `alpha*` members.
pub fn junta_cover_bound(family: &Family) -> Result<CoverBound> {
    let space = family.space();
    let points = SubspaceIndex::new(space, 1)?;
    if family.is_empty() || family.is_full() {
        return Ok(CoverBound { trivial: true, alpha: 0, bound: 0, point_loads: vec![], hyperplane_loads: vec![] });
    }
    let index = family.index()?;
    let members: Vec<usize> = family.members().collect();
    let (pl, hl) = members
        .par_chunks(256)
        .map(|chunk| {
            let mut pl = vec![0u64; points.len()];
            let mut hl = vec![0u64; points.len()];
            for &i in chunk {
                let s = index.unrank(i);
                for v in space.points(&s) {
                    pl[points.rank(&space.point(&v))] += 1;
                }
                // H ⊇ S iff H^⊥ ⊆ S^⊥
                for v in space.points(&space.dual(&s)) {
                    hl[points.rank(&space.point(&v))] += 1;
                }
            }
            (pl, hl)
        })
        .reduce(
            || (vec![0; points.len()], vec![0; points.len()]),
            |(mut a, mut b), (c, d)| {
                a.iter_mut().zip(c).for_each(|(x, y)| *x += y);
                b.iter_mut().zip(d).for_each(|(x, y)| *x += y);
                (a, b)
            },
        );
    let alpha = pl.iter().chain(&hl).copied().max().unwrap_or(0);
    let size = family.size() as u64;
    Ok(CoverBound { trivial: false, alpha, bound: size.div_ceil(alpha), point_loads: pl, hyperplane_loads: hl })
}
