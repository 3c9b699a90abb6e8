//! Exact degree test: is `f` in the image of `A^T`, where `A` is the
//! `d`-space-to-`k`-space incidence matrix?
//!
//! The Gram matrix `G = A A^T` has entry `Gauss(n-2d+i, k-2d+i)` at two
//! `d`-spaces meeting in dimension `i`, so it lies in the Bose-Mesner algebra
//! of `J_q(n,d)`. Its inverse is then `sum_i c_i A_i` with `A_i` the
//! "meet in dimension `i`" relation; the `c_i` come from a `(d+1)`-square
//! exact system and are checked by applying `G` to a full column of the
//! claimed inverse. With `w = G^{-1} A f`, `f` has degree `d` iff
//! `A^T w = f`, which is verified over every `k`-space.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::replay::{eval_certificate, ReplayOutcome};
use crate::enumerate::SubspaceIndex;
use crate::error::{GdlError, Result};
use crate::family::{Family, WeightCertificate};
use crate::gauss::{gauss_i, gaussian_binomial};
use crate::grassmann::SubspaceLattice;
use crate::linalg::{int, solve, Rational};
use crate::subspace::Space;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeStatus {
    Certified,
    Refuted,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeVerdict {
    pub d: usize,
    pub status: DegreeStatus,
    #[serde(skip)]
    pub certificate: Option<WeightCertificate>,
    /// Least `k`-space index where `A^T w` differs from `f`.
    pub witness: Option<usize>,
}

impl DegreeVerdict {
    pub fn certified(&self) -> bool {
        self.status == DegreeStatus::Certified
    }
}

/// `G^{-1}` for one `(n, k, d, q)` in the form `sum_i c_i A_i`.
#[derive(Clone, Debug)]
pub struct GramSolver {
    space: Space,
    k: usize,
    d: usize,
    d_index: SubspaceIndex,
    /// `j`-subspaces of a `d`-space, for `j = 0..=d`.
    sub: Vec<SubspaceLattice>,
    gram: Vec<BigInt>,
    inverse: Vec<Rational>,
}

impl GramSolver {
    pub fn new(space: &Space, k: usize, d: usize) -> Result<Self> {
        let n = space.n();
        if d > k || k + d > n {
            return Err(GdlError::Unsupported(format!(
                "Gram solver needs d <= k <= n-d, got (n,k,d) = ({n},{k},{d})"
            )));
        }
        let q = space.q() as u64;
        let d_index = SubspaceIndex::new(space, d)?;
        let sub = (0..=d).map(|j| SubspaceLattice::new(space, d, j)).collect::<Result<Vec<_>>>()?;
        let (ni, ki, di) = (n as i64, k as i64, d as i64);
        let gram = (0..=d as i64).map(|i| BigInt::from(gauss_i(ni - 2 * di + i, ki - 2 * di + i, q))).collect();
        let mut s = GramSolver { space: space.clone(), k, d, d_index, sub, gram, inverse: Vec::new() };
        s.inverse = s.invert()?;
        Ok(s)
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn k(&self) -> usize {
        self.k
    }

    /// Entries `g_i` of `G` by meet dimension.
    pub fn gram_entries(&self) -> &[BigInt] {
        &self.gram
    }
    /// Coefficients `c_i` of `G^{-1} = sum_i c_i A_i`.
    pub fn inverse_coefficients(&self) -> &[Rational] {
        &self.inverse
    }

    /// `N_i(D) = sum over D' with dim(D ∩ D') = i of v(D')`, for all `D`.
    pub fn meet_sums(&self, v: &[BigInt]) -> Vec<Vec<BigInt>> {
        let d = self.d;
        let nd = self.d_index.len();
        let q = self.space.q() as u64;
        let mut ranks = Vec::new();
        let spaces: Vec<_> = self.d_index.iter().collect();
        // S_j(D) = sum_{E <= D, dim j} sum_{D' >= E} v(D')
        let mut s_j = vec![vec![BigInt::zero(); nd]; d + 1];
        for j in 0..=d {
            let lat = &self.sub[j];
            let mut up = vec![BigInt::zero(); lat.d_index().len()];
            for (dp, s) in spaces.iter().enumerate() {
                if v[dp].is_zero() {
                    continue;
                }
                lat.ranks_into(s, &mut ranks);
                for &e in &ranks {
                    up[e] += &v[dp];
                }
            }
            for (di, s) in spaces.iter().enumerate() {
                lat.ranks_into(s, &mut ranks);
                let mut acc = BigInt::zero();
                for &e in &ranks {
                    acc += &up[e];
                }
                s_j[j][di] = acc;
            }
        }
        // S_j = sum_{i >= j} Gauss(i,j) N_i, solved from the top.
        let mut n_i = vec![vec![BigInt::zero(); nd]; d + 1];
        for j in (0..=d).rev() {
            for x in 0..nd {
                let mut val = s_j[j][x].clone();
                for i in j + 1..=d {
                    val -= BigInt::from(gaussian_binomial(i as u32, j as u32, q)) * &n_i[i][x];
                }
                n_i[j][x] = val;
            }
        }
        n_i
    }

    pub fn apply_gram(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n_i = self.meet_sums(v);
        (0..v.len())
            .map(|x| (0..=self.d).map(|i| &self.gram[i] * &n_i[i][x]).sum())
            .collect()
    }

    fn invert(&self) -> Result<Vec<Rational>> {
        let d = self.d;
        let nd = self.d_index.len();
        let d0 = self.d_index.unrank(0);
        let meet: Vec<usize> = self.d_index.iter().map(|s| self.space.meet_dim(&d0, &s)).collect();
        let classes: Vec<usize> = (0..=d).filter(|&i| meet.contains(&i)).collect();
        let reps: Vec<usize> = classes.iter().map(|&l| meet.iter().position(|&m| m == l).unwrap()).collect();
        // column m[i][l]: coefficient of A_l in G A_i
        let mut cols = Vec::new();
        for &i in &classes {
            let v: Vec<BigInt> = meet.iter().map(|&m| BigInt::from((m == i) as u8)).collect();
            let gv = self.apply_gram(&v);
            cols.push(reps.iter().map(|&r| Rational::from_integer(gv[r].clone())).collect::<Vec<_>>());
        }
        let t = classes.len();
        let a: Vec<Vec<Rational>> = (0..t).map(|l| (0..t).map(|i| cols[i][l].clone()).collect()).collect();
        let b: Vec<Rational> = classes.iter().map(|&l| if l == d { int(1) } else { int(0) }).collect();
        let c = solve(&a, &b).ok_or_else(|| GdlError::Inconsistent("Gram matrix is singular".into()))?;
        let mut inverse = vec![Rational::zero(); d + 1];
        for (slot, &i) in classes.iter().enumerate() {
            inverse[i] = c[slot].clone();
        }
        // G (G^{-1} e_{D0}) must be e_{D0}; the algebra is commutative and
        // an element is determined by one column, so this proves G X = I.
        let den = crate::linalg::common_denominator(inverse.iter());
        let col: Vec<BigInt> =
            meet.iter().map(|&m| inverse[m].numer() * (&den / inverse[m].denom())).collect();
        let back = self.apply_gram(&col);
        for (x, val) in back.iter().enumerate() {
            let want = if x == 0 { den.clone() } else { BigInt::zero() };
            if *val != want {
                return Err(GdlError::Inconsistent(format!("Gram inverse check failed at d-space {x} of {nd}")));
            }
        }
        Ok(inverse)
    }

    /// `A f`: for each `d`-space, the number of members containing it.
    pub fn incidence_image(&self, family: &Family) -> Result<Vec<BigInt>> {
        let lattice = SubspaceLattice::new(&self.space, self.k, self.d)?;
        let index = family.index()?;
        let mut af = vec![0u64; self.d_index.len()];
        let mut ranks = Vec::new();
        for i in family.members() {
            lattice.ranks_into(&index.unrank(i), &mut ranks);
            for &r in &ranks {
                af[r] += 1;
            }
        }
        Ok(af.into_iter().map(BigInt::from).collect())
    }

    /// The unique candidate `w = G^{-1} A f`.
    pub fn candidate(&self, family: &Family) -> Result<WeightCertificate> {
        if family.space() != &self.space || family.k() != self.k {
            return Err(GdlError::AmbientMismatch("family does not match the solver parameters".into()));
        }
        let af = self.incidence_image(family)?;
        let n_i = self.meet_sums(&af);
        let w: Vec<Rational> = (0..af.len())
            .map(|x| {
                (0..=self.d)
                    .filter(|&i| !self.inverse[i].is_zero())
                    .map(|i| &self.inverse[i] * Rational::from_integer(n_i[i][x].clone()))
                    .sum()
            })
            .collect();
        Ok(WeightCertificate::from_dense(self.d, w))
    }

    pub fn test(&self, family: &Family) -> Result<DegreeVerdict> {
        let cert = self.candidate(family)?;
        Ok(match eval_certificate(family, &cert)? {
            ReplayOutcome::Replays => {
                DegreeVerdict { d: self.d, status: DegreeStatus::Certified, certificate: Some(cert), witness: None }
            }
            ReplayOutcome::Mismatch { index, .. } => {
                DegreeVerdict { d: self.d, status: DegreeStatus::Refuted, certificate: None, witness: Some(index) }
            }
        })
    }
}

/// Decides whether `family` has degree at most `d`, returning a replayed
/// certificate or the least `k`-space where the unique candidate fails.
pub fn degree_test(family: &Family, d: usize) -> Result<DegreeVerdict> {
    if d > family.k() {
        return Err(GdlError::param(format!("degree {d} exceeds k = {}", family.k())));
    }
    if family.k() + d > family.n() {
        // Outside the full-row-rank regime: fall back to the dense solver.
        return dense_degree_test(family, d, 4096);
    }
    GramSolver::new(family.space(), family.k(), d)?.test(family)
}

/// Direct exact solve of `A^T w = f`. Independent of the Gram route and used
/// to cross-check it on small cases.
pub fn dense_degree_test(family: &Family, d: usize, cap: usize) -> Result<DegreeVerdict> {
    let space = family.space();
    let lattice = SubspaceLattice::new(space, family.k(), d)?;
    let nd = lattice.d_index().len();
    if nd > cap || family.total() > 4 * cap {
        return Err(GdlError::CapExceeded {
            what: format!("dense {}x{} system", family.total(), nd),
            needed: nd as u128,
            cap: cap as u128,
        });
    }
    let index = family.index()?;
    let mut rows = Vec::with_capacity(family.total());
    let mut rhs = Vec::with_capacity(family.total());
    for i in 0..family.total() {
        let mut row = vec![Rational::zero(); nd];
        for r in lattice.ranks(&index.unrank(i)) {
            row[r] = Rational::one();
        }
        rows.push(row);
        rhs.push(int(family.contains(i) as u8));
    }
    let verdict = match solve(&rows, &rhs) {
        Some(w) => {
            let cert = WeightCertificate::from_dense(d, w);
            if !eval_certificate(family, &cert)?.replays() {
                return Err(GdlError::Inconsistent("dense solution does not replay".into()));
            }
            DegreeVerdict { d, status: DegreeStatus::Certified, certificate: Some(cert), witness: None }
        }
        None => DegreeVerdict { d, status: DegreeStatus::Refuted, certificate: None, witness: None },
    };
    Ok(verdict)
}
