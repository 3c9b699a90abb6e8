//! Semilinear groups acting on subspaces. Orbit counts on two levels are
//! compared as in Block's lemma; unions of orbits are searched for low degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::{degree_test, evaluate_certificate, GramSolver};
use crate::enumerate::SubspaceIndex;
use crate::error::{GdlError, Result};
use crate::family::{Family, FORMAT_VERSION};
use crate::field::{Elem, FieldSpec};
use crate::forms::ClassicalForm;
use crate::linalg::{nullspace, Rational};
use crate::subspace::{Space, Subspace};

/// `x -> phi^frob(x) M` on row vectors, `phi` the Frobenius map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemilinearMap {
    pub matrix: Vec<Elem>,
    pub frob: u32,
}

impl SemilinearMap {
    pub fn new(space: &Space, matrix: Vec<Elem>, frob: u32) -> Result<Self> {
        let n = space.n();
        if matrix.len() != n * n {
            return Err(GdlError::param(format!("matrix must be {n}x{n}")));
        }
        if frob >= space.field().e() {
            return Err(GdlError::param(format!("frobenius power {frob} not in [0, {})", space.field().e())));
        }
        if space.canonicalize_flat(matrix.clone()).dim() != n {
            return Err(GdlError::param("matrix is singular"));
        }
        Ok(SemilinearMap { matrix, frob })
    }

    pub fn identity(space: &Space) -> Self {
        let n = space.n();
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        SemilinearMap { matrix: m, frob: 0 }
    }

    pub fn apply(&self, space: &Space, s: &Subspace) -> Subspace {
        space.apply(s, &self.matrix, self.frob)
    }

    pub fn apply_vector(&self, space: &Space, x: &[Elem]) -> Vec<Elem> {
        let f = space.field();
        let n = space.n();
        let mut out = vec![0; n];
        for (i, &xi) in x.iter().enumerate() {
            let xi = f.frobenius_pow(xi, self.frob);
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(xi, self.matrix[i * n + j]));
            }
        }
        out
    }

    /// The map applying `self` first, then `other`.
    pub fn then(&self, space: &Space, other: &SemilinearMap) -> SemilinearMap {
        let f = space.field();
        let n = space.n();
        let lifted: Vec<Elem> = self.matrix.iter().map(|&a| f.frobenius_pow(a, other.frob)).collect();
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = lifted[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] = f.add(m[i * n + j], f.mul(a, other.matrix[k * n + j]));
                }
            }
        }
        SemilinearMap { matrix: m, frob: (self.frob + other.frob) % f.e() }
    }

    pub fn invert(&self, space: &Space) -> SemilinearMap {
        let f = space.field();
        let inv = invert_matrix(space, &self.matrix).expect("maps are invertible by construction");
        let back = (f.e() - self.frob) % f.e();
        SemilinearMap { matrix: inv.iter().map(|&a| f.frobenius_pow(a, back)).collect(), frob: back }
    }

    /// `M J M^T = J` for a linear map and Gram matrix `J`.
    pub fn preserves_gram(&self, space: &Space, gram: &[Elem]) -> bool {
        if self.frob != 0 {
            return false;
        }
        let n = space.n();
        let f = space.field();
        let m = &self.matrix;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut s = 0;
                for a in 0..n {
                    for b in 0..n {
                        s = f.add(s, f.mul(f.mul(m[i * n + a], gram[a * n + b]), m[j * n + b]));
                    }
                }
                s == gram[i * n + j]
            })
        })
    }
}

fn invert_matrix(space: &Space, m: &[Elem]) -> Option<Vec<Elem>> {
    let n = space.n();
    let f = space.field();
    let w = 2 * n;
    let mut a = vec![0; n * w];
    for i in 0..n {
        a[i * w..i * w + n].copy_from_slice(&m[i * n..(i + 1) * n]);
        a[i * w + n + i] = 1;
    }
    for col in 0..n {
        let p = (col..n).find(|&r| a[r * w + col] != 0)?;
        for c in 0..w {
            a.swap(col * w + c, p * w + c);
        }
        let inv = f.inv(a[col * w + col]);
        for c in 0..w {
            a[col * w + c] = f.mul(a[col * w + c], inv);
        }
        for r in 0..n {
            let x = a[r * w + col];
            if r != col && x != 0 {
                for c in 0..w {
                    a[r * w + c] = f.sub(a[r * w + c], f.mul(x, a[col * w + c]));
                }
            }
        }
    }
    Some((0..n).flat_map(|i| a[i * w + n..(i + 1) * w].to_vec()).collect())
}

/// Transvections `x -> x + σ(x,v) v`, one per point `<v>`, for the standard
/// symplectic form. Each is checked to preserve the Gram matrix.
pub fn symplectic_transvection_generators(space: &Space) -> Result<Vec<SemilinearMap>> {
    let n = space.n();
    if n % 2 == 1 {
        return Err(GdlError::param(format!("symplectic groups need even n, got {n}")));
    }
    let form = ClassicalForm::symplectic(space)?;
    let f = space.field();
    let points = SubspaceIndex::new(space, 1)?;
    points
        .iter()
        .map(|p| {
            let v = p.row(0);
            let mut m = vec![0; n * n];
            for i in 0..n {
                let e = space.unit(i);
                let c = form.bilinear(&e, v);
                for j in 0..n {
                    m[i * n + j] = f.add(e[j], f.mul(c, v[j]));
                }
            }
            let t = SemilinearMap::new(space, m, 0)?;
            if !t.preserves_gram(space, form.gram()) {
                return Err(GdlError::Inconsistent("transvection does not preserve the form".into()));
            }
            Ok(t)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitDecomposition {
    pub m: usize,
    /// Sorted index sets, ordered by least element.
    pub orbits: Vec<Vec<usize>>,
    #[serde(skip)]
    pub orbit_of: Vec<usize>,
}

impl OrbitDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
    pub fn len(&self) -> usize {
        self.orbits.len()
    }
    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Orbit sizes in the `a^b` notation, largest first.
    pub fn profile(&self) -> String {
        let mut sizes = self.sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < sizes.len() {
            let j = (i..sizes.len()).find(|&j| sizes[j] != sizes[i]).unwrap_or(sizes.len());
            parts.push(if j - i == 1 { sizes[i].to_string() } else { format!("{}^{}", sizes[i], j - i) });
            i = j;
        }
        parts.join(", ")
    }

    /// Builds a decomposition from any partition given as class labels.
    pub fn from_labels(m: usize, labels: &[usize]) -> Self {
        let mut first: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut orbit_of = vec![0; labels.len()];
        for (i, l) in labels.iter().enumerate() {
            let next = orbits.len();
            let o = *first.entry(*l).or_insert(next);
            if o == orbits.len() {
                orbits.push(Vec::new());
            }
            orbits[o].push(i);
            orbit_of[i] = o;
        }
        OrbitDecomposition { m, orbits, orbit_of }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the group generated by `gens` on `m`-spaces, by union-find
/// over generator images.
pub fn orbit_decomposition(space: &Space, gens: &[SemilinearMap], m: usize) -> Result<OrbitDecomposition> {
    let index = SubspaceIndex::new(space, m)?;
    let total = index.len();
    let mut parent: Vec<usize> = (0..total).collect();
    for g in gens {
        let images: Vec<usize> = (0..total).into_par_iter().map(|i| index.rank(&g.apply(space, &index.unrank(i)))).collect();
        for (i, j) in images.into_iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let roots: Vec<usize> = (0..total).map(|i| find(&mut parent, i)).collect();
    Ok(OrbitDecomposition::from_labels(m, &roots))
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub d: usize,
    pub k: usize,
    pub s: usize,
    pub t: usize,
    pub equal: bool,
    /// On equality, whether every `k`-orbit passed the degree test.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits_certified: Option<bool>,
}

/// Orbit counts on `d`- and `k`-spaces. With `d <= k` and `d <= n-k` the
/// incidence matrix has full row rank, so `s <= t`; on equality every
/// `k`-orbit is degree-tested.
pub fn block_equality_check(space: &Space, gens: &[SemilinearMap], d: usize, k: usize) -> Result<BlockReport> {
    if d > k || d + k > space.n() {
        return Err(GdlError::param(format!("need d <= k and d <= n-k, got d={d}, k={k}, n={}", space.n())));
    }
    let s = orbit_decomposition(space, gens, d)?.len();
    let korb = orbit_decomposition(space, gens, k)?;
    let t = korb.len();
    if s > t {
        return Err(GdlError::Inconsistent(format!("Block inequality violated: s = {s} > t = {t}")));
    }
    let orbits_certified = if s == t {
        let mut ok = true;
        for o in &korb.orbits {
            let f = Family::from_indices(space, k, o.iter().copied())?;
            ok &= degree_test(&f, d)?.certified();
        }
        Some(ok)
    } else {
        None
    };
    Ok(BlockReport { d, k, s, t, equal: s == t, orbits_certified })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitUnion {
    pub size: usize,
    /// Indices of the orbits in the union.
    pub orbits: Vec<usize>,
    /// Sizes of those orbits, in the `a^b` notation.
    pub profile: String,
    #[serde(skip)]
    pub family: Family,
}

pub const DEFAULT_MAX_ORBITS: usize = 24;

/// All nontrivial unions of `k`-orbits that have degree at most `d`.
///
/// Each orbit indicator is split as its projection onto `V_0+...+V_d` plus
/// a residual; a union has degree `d` exactly when its residuals sum to zero.
/// The 0/1 points of that kernel are enumerated over its free coordinates,
/// and every union found is re-certified by the degree test on its own.
pub fn orbit_union_search(
    space: &Space,
    orbits: &OrbitDecomposition,
    d: usize,
    max_orbits: usize,
) -> Result<Vec<OrbitUnion>> {
    let k = orbits.m;
    let t = orbits.len();
    if t > max_orbits {
        return Err(GdlError::CapExceeded {
            what: format!("{t} orbits on {k}-spaces; use a larger group or raise the orbit limit"),
            needed: t as u128,
            cap: max_orbits as u128,
        });
    }
    if d > k || k + d > space.n() {
        return Err(GdlError::param(format!("orbit search needs d <= k and k+d <= n, got d={d}, k={k}")));
    }
    let solver = GramSolver::new(space, k, d)?;
    let projections: Vec<(Family, Vec<Rational>)> = orbits
        .orbits
        .iter()
        .map(|o| -> Result<_> {
            let f = Family::from_indices(space, k, o.iter().copied())?;
            let proj = evaluate_certificate(&f, &solver.candidate(&f)?)?;
            Ok((f, proj))
        })
        .collect::<Result<_>>()?;
    // one common denominator keeps the kernel unchanged
    let den = projections.iter().flat_map(|(_, p)| p).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = Rational::from_integer(den.clone());
    let residuals: Vec<Vec<BigInt>> = projections
        .iter()
        .map(|(f, proj)| {
            proj.iter()
                .enumerate()
                .map(|(i, x)| {
                    let chi = if f.contains(i) { den.clone() } else { BigInt::zero() };
                    chi - (x * &scale).to_integer()
                })
                .collect()
        })
        .collect();
    let gram: Vec<Vec<Rational>> = (0..t)
        .map(|a| {
            (0..t)
                .map(|b| Rational::from_integer(residuals[a].iter().zip(&residuals[b]).map(|(x, y)| x * y).sum()))
                .collect()
        })
        .collect();
    let basis = nullspace(&gram, t);
    let free: Vec<usize> =
        basis.iter().map(|v| v.iter().position(|x| x.is_one()).expect("free column")).collect();
    if free.len() > 30 {
        return Err(GdlError::CapExceeded { what: "kernel dimension".into(), needed: free.len() as u128, cap: 30 });
    }
    let mut found = Vec::new();
    for mask in 0u64..1 << free.len() {
        let mut x = vec![Rational::zero(); t];
        for (b, v) in basis.iter().enumerate() {
            if mask >> b & 1 == 1 {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += vi;
                }
            }
        }
        if !x.iter().all(|v| v.is_zero() || v.is_one()) || x.iter().any(|v| v.is_negative()) {
            continue;
        }
        let chosen: Vec<usize> = (0..t).filter(|&i| x[i].is_one()).collect();
        if chosen.is_empty() || chosen.len() == t {
            continue;
        }
        found.push(chosen);
    }
    let mut out: Vec<OrbitUnion> = found
        .into_par_iter()
        .map(|chosen| -> Result<OrbitUnion> {
            let family = Family::from_indices(space, k, chosen.iter().flat_map(|&o| orbits.orbits[o].iter().copied()))?;
            if !degree_test(&family, d)?.certified() {
                return Err(GdlError::Inconsistent(format!("union {chosen:?} failed its independent degree test")));
            }
            let sub = OrbitDecomposition::from_labels(k, &chosen.iter().flat_map(|&o| vec![o; orbits.orbits[o].len()]).collect::<Vec<_>>());
            Ok(OrbitUnion { size: family.size(), profile: sub.profile(), orbits: chosen, family })
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.orbits.cmp(&b.orbits)));
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub matrix: Vec<Vec<u32>>,
    #[serde(default)]
    pub frob: u32,
}

/// Group file: generators acting on row vectors of `F_q^n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(default = "default_version")]
    pub version: String,
    pub field: FieldSpec,
    pub n: usize,
    pub generators: Vec<GeneratorJson>,
}

fn default_version() -> String {
    FORMAT_VERSION.to_string()
}

impl GroupJson {
    pub fn from_maps(space: &Space, gens: &[SemilinearMap]) -> Self {
        let n = space.n();
        GroupJson {
            version: FORMAT_VERSION.to_string(),
            field: space.field().spec().clone(),
            n,
            generators: gens
                .iter()
                .map(|g| GeneratorJson {
                    matrix: g.matrix.chunks(n).map(|r| r.iter().map(|&x| x as u32).collect()).collect(),
                    frob: g.frob,
                })
                .collect(),
        }
    }

    pub fn to_maps(&self) -> Result<(Space, Vec<SemilinearMap>)> {
        if self.version != FORMAT_VERSION {
            return Err(GdlError::Format(format!("unsupported group file version {:?}", self.version)));
        }
        let field = crate::field::Field::new(self.field.clone())?;
        let space = Space::new(field, self.n)?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.matrix.len() != self.n || g.matrix.iter().any(|r| r.len() != self.n) {
                    return Err(GdlError::Format(format!("generator matrix must be {0}x{0}", self.n)));
                }
                let flat = g
                    .matrix
                    .iter()
                    .flatten()
                    .map(|&x| space.field().check(x))
                    .collect::<Result<Vec<Elem>>>()?;
                SemilinearMap::new(&space, flat, g.frob)
            })
            .collect::<Result<_>>()?;
        Ok((space, gens))
    }
}
