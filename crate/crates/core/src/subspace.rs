//! Subspaces of `F_q^n` in canonical reduced row echelon form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GdlError, Result};
use crate::field::{Elem, Field, FieldSpec};

/// A subspace of `F_q^n`, identified by its unique RREF basis (pivot columns
/// strictly increasing). Two values are equal iff their bases are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u8,
    dim: u8,
    rows: Vec<Elem>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for r in 0..self.dim() {
            if r > 0 {
                write!(f, ",")?;
            }
            for x in self.row(r) {
                write!(f, "{x}")?;
            }
        }
        write!(f, ">")
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n: n as u8, dim: 0, rows: Vec::new() }
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }
    /// Flattened row-major basis.
    #[inline]
    pub fn rows(&self) -> &[Elem] {
        &self.rows
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.rows[r * self.n()..(r + 1) * self.n()]
    }
    pub fn basis(&self) -> Vec<Vec<Elem>> {
        (0..self.dim()).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| self.row(r).iter().position(|&x| x != 0).expect("RREF row is nonzero"))
            .collect()
    }
    pub fn pivot_mask(&self) -> u32 {
        let n = self.n();
        let mut mask = 0u32;
        for r in 0..self.dim() {
            let row = &self.rows[r * n..(r + 1) * n];
            let c = row.iter().position(|&x| x != 0).expect("RREF row is nonzero");
            mask |= 1 << c;
        }
        mask
    }
}

/// In-place Gauss-Jordan elimination of a `rows x n` row-major matrix.
/// Nonzero rows end up first, in RREF. Returns the rank.
pub fn rref_in_place(field: &Field, m: &mut [Elem], rows: usize, n: usize) -> usize {
    let mut rank = 0;
    for col in 0..n {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        if piv != rank {
            for c in 0..n {
                m.swap(piv * n + c, rank * n + c);
            }
        }
        let inv = field.inv(m[rank * n + col]);
        if inv != 1 {
            for c in col..n {
                m[rank * n + c] = field.mul(m[rank * n + c], inv);
            }
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = m[r * n + col];
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let t = field.mul(factor, m[rank * n + c]);
                m[r * n + c] = field.sub(m[r * n + c], t);
            }
        }
        rank += 1;
    }
    rank
}

/// The vector space `F_q^n` together with its field; all subspace
/// operations go through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    field: Field,
    n: usize,
}

impl Space {
    pub fn new(field: Field, n: usize) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(GdlError::param(format!("ambient dimension {n} outside 1..=16")));
        }
        Ok(Space { field, n })
    }
    pub fn of(q: u32, n: usize) -> Result<Self> {
        Space::new(Field::of_order(q)?, n)
    }
    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn q(&self) -> usize {
        self.field.q()
    }

    /// Same field, different dimension.
    pub fn with_dim(&self, n: usize) -> Result<Space> {
        Space::new(self.field.clone(), n)
    }

    /// RREF span of a flattened `rows x n` matrix.
    pub fn canonicalize_flat(&self, mut m: Vec<Elem>) -> Subspace {
        let n = self.n;
        debug_assert_eq!(m.len() % n, 0);
        let rows = m.len() / n;
        let rank = rref_in_place(&self.field, &mut m, rows, n);
        m.truncate(rank * n);
        Subspace { n: n as u8, dim: rank as u8, rows: m }
    }

    pub fn canonicalize(&self, rows: &[Vec<Elem>]) -> Subspace {
        let mut m = Vec::with_capacity(rows.len() * self.n);
        for r in rows {
            assert_eq!(r.len(), self.n, "row length must equal ambient dimension");
            m.extend_from_slice(r);
        }
        self.canonicalize_flat(m)
    }

    /// Validating constructor from user-supplied entries.
    pub fn subspace(&self, rows: &[Vec<u32>]) -> Result<Subspace> {
        let mut m = Vec::with_capacity(rows.len() * self.n);
        for r in rows {
            if r.len() != self.n {
                return Err(GdlError::AmbientMismatch(format!(
                    "row of length {} in F_q^{}",
                    r.len(),
                    self.n
                )));
            }
            for &x in r {
                m.push(self.field.check(x)?);
            }
        }
        Ok(self.canonicalize_flat(m))
    }

    pub fn whole(&self) -> Subspace {
        self.coordinate_span(0..self.n)
    }

    /// `<e_i : i in idx>`.
    pub fn coordinate_span(&self, idx: impl IntoIterator<Item = usize>) -> Subspace {
        let mut m = Vec::new();
        for i in idx {
            let mut v = vec![0; self.n];
            v[i] = 1;
            m.extend(v);
        }
        self.canonicalize_flat(m)
    }

    pub fn unit(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    fn check_ambient(&self, s: &Subspace) -> Result<()> {
        if s.n() != self.n {
            return Err(GdlError::AmbientMismatch(format!(
                "subspace of F_q^{} used in F_q^{}",
                s.n(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn join(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut m = s.rows.clone();
        m.extend_from_slice(&t.rows);
        self.canonicalize_flat(m)
    }

    pub fn span_with(&self, s: &Subspace, v: &[Elem]) -> Subspace {
        let mut m = s.rows.clone();
        m.extend_from_slice(v);
        self.canonicalize_flat(m)
    }

    /// Intersection via the Zassenhaus construction.
    pub fn meet(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let n = self.n;
        let w = 2 * n;
        let rows = s.dim() + t.dim();
        let mut m = vec![0; rows * w];
        for r in 0..s.dim() {
            m[r * w..r * w + n].copy_from_slice(s.row(r));
            m[r * w + n..r * w + w].copy_from_slice(s.row(r));
        }
        for r in 0..t.dim() {
            let rr = s.dim() + r;
            m[rr * w..rr * w + n].copy_from_slice(t.row(r));
        }
        let rank = rref_in_place(&self.field, &mut m, rows, w);
        let mut out = Vec::new();
        for r in 0..rank {
            let row = &m[r * w..(r + 1) * w];
            if row[..n].iter().all(|&x| x == 0) {
                out.extend_from_slice(&row[n..]);
            }
        }
        self.canonicalize_flat(out)
    }

    pub fn meet_join(&self, s: &Subspace, t: &Subspace) -> Result<(Subspace, Subspace)> {
        self.check_ambient(s)?;
        self.check_ambient(t)?;
        Ok((self.meet(s, t), self.join(s, t)))
    }

    /// `dim(S ∩ T)` computed from the rank of the join.
    #[inline]
    pub fn meet_dim(&self, s: &Subspace, t: &Subspace) -> usize {
        let mut m = s.rows.clone();
        m.extend_from_slice(&t.rows);
        let rows = s.dim() + t.dim();
        let rank = rref_in_place(&self.field, &mut m, rows, self.n);
        rows - rank
    }

    /// Whether `t ⊆ s`.
    pub fn contains(&self, s: &Subspace, t: &Subspace) -> bool {
        t.dim() <= s.dim() && (0..t.dim()).all(|r| self.contains_vector(s, t.row(r)))
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains_vector(&self, s: &Subspace, v: &[Elem]) -> bool {
        let n = self.n;
        let f = &self.field;
        let mut w = v.to_vec();
        for r in 0..s.dim() {
            let row = s.row(r);
            let c = row.iter().position(|&x| x != 0).unwrap();
            let coef = w[c];
            if coef != 0 {
                for j in c..n {
                    w[j] = f.sub(w[j], f.mul(coef, row[j]));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Annihilator with respect to the standard dot product.
    pub fn dual(&self, s: &Subspace) -> Subspace {
        let n = self.n;
        let f = &self.field;
        let pivots = s.pivots();
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut m = Vec::with_capacity((n - s.dim()) * n);
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; n];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(s.row(r)[free]);
            }
            m.extend(v);
        }
        self.canonicalize_flat(m)
    }

    /// Normalized spanning vectors (first nonzero entry 1) of the points of `s`.
    pub fn points(&self, s: &Subspace) -> Vec<Vec<Elem>> {
        let k = s.dim();
        let q = self.q();
        let f = &self.field;
        let mut out = Vec::new();
        for lead in 0..k {
            let tail = k - lead - 1;
            let count = q.pow(tail as u32);
            for code in 0..count {
                let mut v = s.row(lead).to_vec();
                let mut c = code;
                for r in (lead + 1..k).rev() {
                    let coef = (c % q) as Elem;
                    c /= q;
                    if coef != 0 {
                        for (vj, &bj) in v.iter_mut().zip(s.row(r)) {
                            *vj = f.add(*vj, f.mul(coef, bj));
                        }
                    }
                }
                out.push(v);
            }
        }
        out
    }

    /// Point spanned by a nonzero vector.
    pub fn point(&self, v: &[Elem]) -> Subspace {
        self.canonicalize_flat(v.to_vec())
    }

    /// Image of a coefficient subspace `c` of `F_q^{dim s}` under the basis of
    /// `s`, i.e. the subspace of `s` with coordinates `c`.
    pub fn embed(&self, c: &Subspace, s: &Subspace) -> Subspace {
        let n = self.n;
        let k = s.dim();
        debug_assert_eq!(c.n(), k);
        let f = &self.field;
        let mut m = vec![0; c.dim() * n];
        for r in 0..c.dim() {
            let cr = c.row(r);
            let out = &mut m[r * n..(r + 1) * n];
            for (i, &coef) in cr.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                for (o, &b) in out.iter_mut().zip(s.row(i)) {
                    *o = f.add(*o, f.mul(coef, b));
                }
            }
        }
        self.canonicalize_flat(m)
    }

    /// Coordinates of `s ⊆ h` in the RREF basis of `h`, as a subspace of
    /// `F_q^{dim h}`. Since `h` is in RREF the coordinates of a vector are its
    /// entries at the pivot columns of `h`.
    pub fn restrict_to(&self, s: &Subspace, h: &Subspace) -> Result<Subspace> {
        if !self.contains(h, s) {
            return Err(GdlError::param("subspace is not contained in the restriction space"));
        }
        let sub = self.with_dim(h.dim())?;
        let piv = h.pivots();
        let mut m = Vec::with_capacity(s.dim() * h.dim());
        for r in 0..s.dim() {
            let row = s.row(r);
            m.extend(piv.iter().map(|&c| row[c]));
        }
        Ok(sub.canonicalize_flat(m))
    }

    /// Image of `s` in `V/P` for a point `P ⊆ s`. `V/P` is identified with
    /// `F_q^{n-1}` by dropping the pivot coordinate of `P` after subtracting
    /// the matching multiple of `P`.
    pub fn quotient_space(&self, s: &Subspace, p: &Subspace) -> Result<Subspace> {
        if p.dim() != 1 {
            return Err(GdlError::param("quotient needs a 1-space"));
        }
        if !self.contains(s, p) {
            return Err(GdlError::param("point is not contained in the subspace"));
        }
        Ok(self.project_from_point(s, p))
    }

    /// Projection `v -> v - v_c P` with the pivot column `c` of `p` dropped.
    pub fn project_from_point(&self, s: &Subspace, p: &Subspace) -> Subspace {
        let n = self.n;
        let f = &self.field;
        let c = p.pivots()[0];
        let prow = p.row(0);
        let mut m = Vec::with_capacity(s.dim() * (n - 1));
        for r in 0..s.dim() {
            let row = s.row(r);
            let coef = row[c];
            for j in (0..n).filter(|&j| j != c) {
                m.push(f.sub(row[j], f.mul(coef, prow[j])));
            }
        }
        let sub = self.with_dim(n - 1).expect("n >= 2 for a quotient");
        sub.canonicalize_flat(m)
    }

    /// Apply a matrix acting on row vectors (`v -> v M`), after raising every
    /// entry of `v` to the `p^frob` power.
    pub fn apply(&self, s: &Subspace, matrix: &[Elem], frob: u32) -> Subspace {
        let n = self.n;
        let f = &self.field;
        let mut m = vec![0; s.dim() * n];
        for r in 0..s.dim() {
            let row = s.row(r);
            let out = &mut m[r * n..(r + 1) * n];
            for (i, &x) in row.iter().enumerate() {
                let x = f.frobenius_pow(x, frob);
                if x == 0 {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(x, matrix[i * n + j]));
                }
            }
        }
        self.canonicalize_flat(m)
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.field.add(acc, self.field.mul(x, y)))
    }
}

/// JSON form `{"n":…, "field":…, "rows":[[…],…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub n: usize,
    pub field: FieldSpec,
    pub rows: Vec<Vec<u32>>,
}

impl SubspaceJson {
    pub fn from_subspace(space: &Space, s: &Subspace) -> Self {
        SubspaceJson {
            n: s.n(),
            field: space.field().spec().clone(),
            rows: (0..s.dim()).map(|r| s.row(r).iter().map(|&x| x as u32).collect()).collect(),
        }
    }

    pub fn to_subspace(&self) -> Result<(Space, Subspace)> {
        let space = Space::new(Field::new(self.field.clone())?, self.n)?;
        let s = space.subspace(&self.rows)?;
        Ok((space, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_examples() {
        let s2 = Space::of(2, 3).unwrap();
        let id = s2.subspace(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(id.dim(), 3);
        assert_eq!(id.rows(), &[1, 0, 0, 0, 1, 0, 0, 0, 1]);

        let s = s2.subspace(&[vec![1, 1, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.rows(), &[1, 1, 0]);

        let s3 = Space::of(3, 2).unwrap();
        let s = s3.subspace(&[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.rows(), &[1, 2]);

        assert_eq!(s2.subspace(&[]).unwrap(), Subspace::zero(3));
    }

    #[test]
    fn meet_join_examples() {
        let v = Space::of(2, 4).unwrap();
        let a = v.point(&[1, 0, 0, 0]);
        let b = v.point(&[0, 1, 1, 0]);
        let (m, j) = v.meet_join(&a, &b).unwrap();
        assert_eq!((m.dim(), j.dim()), (0, 2));
        let (m, j) = v.meet_join(&a, &a).unwrap();
        assert_eq!((m, j), (a.clone(), a));

        let w = Space::of(2, 6).unwrap();
        let s = w.coordinate_span([0, 1, 2]);
        let t = w.canonicalize(&[w.unit(0), w.unit(1), vec![0, 0, 0, 1, 1, 0]]);
        let (m, j) = w.meet_join(&s, &t).unwrap();
        assert_eq!((m.dim(), j.dim()), (2, 4));
        assert_eq!(m, w.coordinate_span([0, 1]));

        let other = Space::of(2, 5).unwrap().whole();
        assert!(w.meet_join(&s, &other).is_err());
    }

    #[test]
    fn dual_examples() {
        let v = Space::of(2, 4).unwrap();
        assert_eq!(v.dual(&v.whole()).dim(), 0);
        assert_eq!(v.dual(&v.point(&v.unit(0))), v.coordinate_span([1, 2, 3]));
    }

    #[test]
    fn points_of_subspace() {
        let v = Space::of(3, 5).unwrap();
        let s = v.coordinate_span([0, 2, 4]);
        let pts = v.points(&s);
        assert_eq!(pts.len(), 13);
        let mut set: Vec<_> = pts.iter().map(|p| v.point(p)).collect();
        set.sort();
        set.dedup();
        assert_eq!(set.len(), 13);
        assert!(pts.iter().all(|p| v.contains_vector(&s, p)));
    }

    #[test]
    fn quotient_examples() {
        let v = Space::of(2, 6).unwrap();
        let p = v.point(&v.unit(0));
        assert_eq!(v.quotient_space(&p, &p).unwrap().dim(), 0);
        let plane = v.canonicalize(&[v.unit(0), vec![0, 1, 0, 1, 0, 0], vec![0, 0, 1, 0, 0, 1]]);
        let img = v.quotient_space(&plane, &p).unwrap();
        assert_eq!((img.n(), img.dim()), (5, 2));
        let q = v.point(&v.unit(5));
        assert!(v.quotient_space(&plane, &q).is_err());
    }

    #[test]
    fn restrict_coordinates() {
        let v = Space::of(2, 6).unwrap();
        let h = v.coordinate_span(0..5);
        let s = v.coordinate_span([1, 3, 4]);
        let r = v.restrict_to(&s, &h).unwrap();
        assert_eq!((r.n(), r.dim()), (5, 3));
        assert!(v.restrict_to(&v.point(&v.unit(5)), &h).is_err());
    }
}
