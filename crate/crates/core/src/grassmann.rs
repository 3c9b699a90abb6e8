//! The Grassmann graph `J_q(n,k)`: adjacency and subspace incidence.

use crate::enumerate::{templates, SubspaceIndex};
use crate::error::{GdlError, Result};
use crate::subspace::{Space, Subspace};

/// All `k`-spaces meeting `s` in a `(k-1)`-space.
///
/// For every hyperplane `W` of `s`, the neighbours through `W` are `W + <v>`
/// for the points `v` of the coordinate complement of `W` (the span of the
/// non-pivot unit vectors of `W`), minus `s` itself.
pub fn grassmann_neighbors(space: &Space, s: &Subspace) -> Vec<Subspace> {
    let k = s.dim();
    let n = space.n();
    if k == 0 || k == n {
        return Vec::new();
    }
    let hyperplanes = templates(space, k, k - 1).expect("k-1 <= k");
    let mut out = Vec::new();
    for t in &hyperplanes {
        let w = space.embed(t, s);
        let piv = w.pivots();
        let comp: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        let cspan = space.coordinate_span(comp);
        for v in space.points(&cspan) {
            let nb = space.span_with(&w, &v);
            if nb != *s {
                out.push(nb);
            }
        }
    }
    out
}

/// Sparse `d`-space-to-`k`-space containment matrix in canonical orders.
#[derive(Clone, Debug)]
pub struct IncidenceMatrix {
    pub d: usize,
    pub k: usize,
    pub n: usize,
    /// For every `d`-space, the sorted indices of the `k`-spaces containing it.
    pub rows: Vec<Vec<u32>>,
    pub cols: usize,
}

impl IncidenceMatrix {
    pub fn build(space: &Space, d: usize, k: usize) -> Result<Self> {
        if d > k || k > space.n() {
            return Err(GdlError::param(format!("need d <= k <= n, got d={d}, k={k}")));
        }
        let idx_d = SubspaceIndex::new(space, d)?;
        let idx_k = SubspaceIndex::new(space, k)?;
        let tpl = templates(space, k, d)?;
        let mut rows = vec![Vec::new(); idx_d.len()];
        for j in 0..idx_k.len() {
            let s = idx_k.unrank(j);
            for t in &tpl {
                rows[idx_d.rank(&space.embed(t, &s))].push(j as u32);
            }
        }
        Ok(IncidenceMatrix { d, k, n: space.n(), rows, cols: idx_k.len() })
    }

    pub fn column_support_sizes(&self) -> Vec<usize> {
        let mut c = vec![0; self.cols];
        for r in &self.rows {
            for &j in r {
                c[j as usize] += 1;
            }
        }
        c
    }
}

/// Ranks of the `d`-subspaces of a `k`-space, via the coordinate templates.
#[derive(Clone, Debug)]
pub struct SubspaceLattice {
    space: Space,
    d_index: SubspaceIndex,
    tpl: Vec<Subspace>,
}

impl SubspaceLattice {
    pub fn new(space: &Space, k: usize, d: usize) -> Result<Self> {
        if d > k || k > space.n() {
            return Err(GdlError::param(format!("need d <= k <= n, got d={d}, k={k}")));
        }
        Ok(SubspaceLattice {
            space: space.clone(),
            d_index: SubspaceIndex::new(space, d)?,
            tpl: templates(space, k, d)?,
        })
    }

    pub fn d_index(&self) -> &SubspaceIndex {
        &self.d_index
    }

    /// Number of `d`-subspaces inside one `k`-space.
    pub fn per_cell(&self) -> usize {
        self.tpl.len()
    }

    pub fn ranks_into(&self, s: &Subspace, out: &mut Vec<usize>) {
        out.clear();
        out.extend(self.tpl.iter().map(|t| self.d_index.rank(&self.space.embed(t, s))));
    }

    pub fn ranks(&self, s: &Subspace) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.tpl.len());
        self.ranks_into(s, &mut v);
        v
    }
}
