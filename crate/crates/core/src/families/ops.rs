//! Restriction to a hyperplane, quotient by a point, and change of basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::SubspaceIndex;
use crate::error::{GdlError, Result};
use crate::family::Family;
use crate::field::Elem;
use crate::subspace::{Space, Subspace};

/// Members inside the hyperplane `h`, in coordinates of the RREF basis of
/// `h`, as a family of `J_q(n-1,k)`.
pub fn restrict_family(f: &Family, h: &Subspace) -> Result<Family> {
    let v = f.space();
    if h.n() != v.n() || h.dim() + 1 != v.n() {
        return Err(GdlError::param("restriction needs a hyperplane of the ambient space"));
    }
    let sub = v.with_dim(v.n() - 1)?;
    let index = f.index()?;
    let small = SubspaceIndex::new(&sub, f.k())?;
    let g = Family::from_predicate(&small, |t| f.contains(index.rank(&v.embed(t, h))))?;
    Ok(g.with_name("restriction", []))
}

/// `{S/P : P ⊆ S ∈ F}` as a family of `J_q(n-1,k-1)`, with `V/P`
/// identified with `F_q^{n-1}` by dropping the pivot coordinate of `P`.
pub fn quotient_family(f: &Family, p: &Subspace) -> Result<Family> {
    let v = f.space();
    if p.n() != v.n() || p.dim() != 1 {
        return Err(GdlError::param("quotient needs a point of the ambient space"));
    }
    if f.k() == 0 {
        return Err(GdlError::param("quotient needs k >= 1"));
    }
    let c = p.pivots()[0];
    let sub = v.with_dim(v.n() - 1)?;
    let index = f.index()?;
    let small = SubspaceIndex::new(&sub, f.k() - 1)?;
    let g = Family::from_predicate(&small, |t| {
        let mut rows: Vec<Vec<Elem>> = t
            .basis()
            .into_iter()
            .map(|mut r| {
                r.insert(c, 0);
                r
            })
            .collect();
        rows.push(p.row(0).to_vec());
        f.contains(index.rank(&v.canonicalize(&rows)))
    })?;
    Ok(g.with_name("quotient", []))
}

/// A uniformly random invertible matrix from a seeded ChaCha stream.
pub fn random_invertible(space: &Space, seed: u64) -> Vec<Elem> {
    let n = space.n();
    let q = space.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Elem> = (0..n * n).map(|_| rng.gen_range(0..q) as Elem).collect();
        if space.canonicalize_flat(m.clone()).dim() == n {
            return m;
        }
    }
}

/// Image of every member under `v -> v M`.
pub fn transform_family(f: &Family, matrix: &[Elem]) -> Result<Family> {
    let v = f.space();
    if matrix.len() != v.n() * v.n() || v.canonicalize_flat(matrix.to_vec()).dim() != v.n() {
        return Err(GdlError::param("change of basis must be an invertible n x n matrix"));
    }
    let index = f.index()?;
    let mut g = Family::empty(v, f.k())?;
    for i in f.members() {
        g.insert(index.rank(&v.apply(&index.unrank(i), matrix, 0)));
    }
    g.construction = f.construction.clone();
    g.params = f.params.clone();
    Ok(g)
}
