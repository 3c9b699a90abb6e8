//! Symplectic and quadratic forms on `F_q^n` and the classification of
//! lines, planes and solids with respect to them.
//!
//! Quadratic forms are stored as upper-triangular coefficient matrices, so
//! `Q(x) = sum_{i<=j} c_ij x_i x_j`. The polar form is always
//! `B(x,y) = Q(x+y) - Q(x) - Q(y)`; nothing divides by 2.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{templates, SubspaceIndex};
use crate::error::{GdlError, Result};
use crate::field::{Elem, FieldSpec};
use crate::gauss::q_int;
use crate::subspace::{rref_in_place, Space, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symplectic,
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormSubtype {
    NondegenerateSymplectic,
    Parabolic,
    Hyperbolic,
    Elliptic,
    Degenerate,
}

impl fmt::Display for FormSubtype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormSubtype::NondegenerateSymplectic => "nondegenerate-symplectic",
            FormSubtype::Parabolic => "parabolic",
            FormSubtype::Hyperbolic => "hyperbolic",
            FormSubtype::Elliptic => "elliptic",
            FormSubtype::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for FormSubtype {
    type Err = GdlError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "nondegenerate-symplectic" | "symplectic" => FormSubtype::NondegenerateSymplectic,
            "parabolic" => FormSubtype::Parabolic,
            "hyperbolic" => FormSubtype::Hyperbolic,
            "elliptic" => FormSubtype::Elliptic,
            "degenerate" => FormSubtype::Degenerate,
            _ => return Err(GdlError::param(format!("unknown form subtype '{s}'"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineType {
    Exterior,
    Tangent,
    Secant,
    TotallySingular,
}

impl LineType {
    pub const ALL: [LineType; 4] =
        [LineType::Exterior, LineType::Tangent, LineType::Secant, LineType::TotallySingular];

    /// Column of the type-count matrices.
    pub fn column(self) -> usize {
        self as usize
    }
}

/// Type of a subspace with respect to a form. Plane types are numbered 1..=5
/// and solid types 1..=6 as in the classical taxonomy (totally singular,
/// double line, one point, line pair, conic; double plane, plane pair,
/// single line, cone, hyperbolic, elliptic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeTag {
    Line(LineType),
    Plane(u8),
    Solid(u8),
    Isotropic,
    NonIsotropic,
    PointRadical,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Line(LineType::Exterior) => f.write_str("L0"),
            TypeTag::Line(LineType::Tangent) => f.write_str("L1"),
            TypeTag::Line(LineType::Secant) => f.write_str("L2"),
            TypeTag::Line(LineType::TotallySingular) => f.write_str("Lq+1"),
            TypeTag::Plane(i) => write!(f, "Pi{i}"),
            TypeTag::Solid(i) => write!(f, "S{i}"),
            TypeTag::Isotropic => f.write_str("isotropic"),
            TypeTag::NonIsotropic => f.write_str("nonisotropic"),
            TypeTag::PointRadical => f.write_str("point-radical"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassicalForm {
    kind: FormKind,
    subtype: FormSubtype,
    space: Space,
    /// Row-major `n x n`: the Gram matrix for symplectic forms, the
    /// upper-triangular coefficients for quadratic ones.
    coeffs: Vec<Elem>,
    /// Gram matrix of the bilinear (or polar) form.
    gram: Vec<Elem>,
}

impl ClassicalForm {
    pub fn symplectic(space: &Space) -> Result<Self> {
        Self::standard(space, FormKind::Symplectic, FormSubtype::NondegenerateSymplectic)
    }

    pub fn quadratic(space: &Space, subtype: FormSubtype) -> Result<Self> {
        Self::standard(space, FormKind::Quadratic, subtype)
    }

    /// The standard nondegenerate forms: `x1y2 - x2y1 + ...`, hyperbolic
    /// `x1x2 + x3x4 + ...`, elliptic `x1^2 + a x1x2 + b x2^2 + x3x4 + ...`
    /// with `t^2 + a t + b` irreducible, parabolic `x1^2 + x2x3 + ...`.
    pub fn standard(space: &Space, kind: FormKind, subtype: FormSubtype) -> Result<Self> {
        let n = space.n();
        let f = space.field();
        let mut c = vec![0 as Elem; n * n];
        let even = n % 2 == 0;
        match (kind, subtype) {
            (FormKind::Symplectic, FormSubtype::NondegenerateSymplectic) if even => {
                for i in (0..n).step_by(2) {
                    c[i * n + i + 1] = 1;
                    c[(i + 1) * n + i] = f.neg(1);
                }
            }
            (FormKind::Quadratic, FormSubtype::Hyperbolic) if even => {
                for i in (0..n).step_by(2) {
                    c[i * n + i + 1] = 1;
                }
            }
            (FormKind::Quadratic, FormSubtype::Elliptic) if even => {
                let (a, b) = f.find_irreducible_quadratic();
                c[0] = 1;
                c[1] = a;
                c[n + 1] = b;
                for i in (2..n).step_by(2) {
                    c[i * n + i + 1] = 1;
                }
            }
            (FormKind::Quadratic, FormSubtype::Parabolic) if !even => {
                c[0] = 1;
                for i in (1..n).step_by(2) {
                    c[i * n + i + 1] = 1;
                }
            }
            _ => {
                return Err(GdlError::param(format!(
                    "no standard {kind:?} form of subtype {subtype} in dimension {n}"
                )))
            }
        }
        Self::from_coeffs(space, kind, subtype, c)
    }

    /// Build from raw coefficients, recomputing the subtype and checking it
    /// against the tag.
    pub fn from_coeffs(space: &Space, kind: FormKind, subtype: FormSubtype, coeffs: Vec<Elem>) -> Result<Self> {
        let n = space.n();
        if coeffs.len() != n * n {
            return Err(GdlError::param(format!("form needs {n}x{n} coefficients")));
        }
        let f = space.field();
        let mut gram = vec![0 as Elem; n * n];
        match kind {
            FormKind::Symplectic => {
                for i in 0..n {
                    if coeffs[i * n + i] != 0 {
                        return Err(GdlError::param("symplectic Gram matrix needs a zero diagonal"));
                    }
                    for j in 0..n {
                        if coeffs[i * n + j] != f.neg(coeffs[j * n + i]) {
                            return Err(GdlError::param("symplectic Gram matrix is not skew"));
                        }
                    }
                }
                gram.clone_from(&coeffs);
            }
            FormKind::Quadratic => {
                for i in 0..n {
                    for j in 0..i {
                        if coeffs[i * n + j] != 0 {
                            return Err(GdlError::param("quadratic coefficients must be upper triangular"));
                        }
                    }
                }
                for i in 0..n {
                    gram[i * n + i] = f.add(coeffs[i * n + i], coeffs[i * n + i]);
                    for j in i + 1..n {
                        gram[i * n + j] = coeffs[i * n + j];
                        gram[j * n + i] = coeffs[i * n + j];
                    }
                }
            }
        }
        let form = ClassicalForm { kind, subtype, space: space.clone(), coeffs, gram };
        let detected = form.detect_subtype();
        if detected != subtype {
            return Err(GdlError::param(format!("form is {detected}, tagged {subtype}")));
        }
        Ok(form)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }
    pub fn subtype(&self) -> FormSubtype {
        self.subtype
    }
    pub fn space(&self) -> &Space {
        &self.space
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }
    pub fn gram(&self) -> &[Elem] {
        &self.gram
    }

    /// `Q(x)`; zero for every vector of a symplectic form.
    pub fn eval(&self, x: &[Elem]) -> Elem {
        if self.kind == FormKind::Symplectic {
            return 0;
        }
        let n = self.space.n();
        let f = self.space.field();
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0;
            for j in i..n {
                let c = self.coeffs[i * n + j];
                if c != 0 && x[j] != 0 {
                    row = f.add(row, f.mul(c, x[j]));
                }
            }
            acc = f.add(acc, f.mul(x[i], row));
        }
        acc
    }

    pub fn bilinear(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let n = self.space.n();
        let f = self.space.field();
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                let g = self.gram[i * n + j];
                if g != 0 && y[j] != 0 {
                    acc = f.add(acc, f.mul(x[i], f.mul(g, y[j])));
                }
            }
        }
        acc
    }

    pub fn is_singular(&self, x: &[Elem]) -> bool {
        self.eval(x) == 0
    }

    /// `S^⊥` with respect to the (polar) bilinear form.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let n = self.space.n();
        let f = self.space.field();
        let mut m = vec![0 as Elem; s.dim() * n];
        for r in 0..s.dim() {
            let row = s.row(r);
            for j in 0..n {
                let mut acc = 0;
                for i in 0..n {
                    acc = f.add(acc, f.mul(row[i], self.gram[i * n + j]));
                }
                m[r * n + j] = acc;
            }
        }
        // v ⊥ s_r iff (s_r G) . v = 0
        self.space.dual(&self.space.canonicalize_flat(m))
    }

    pub fn perp_radical(&self, s: &Subspace) -> Result<(Subspace, Subspace)> {
        if s.n() != self.space.n() {
            return Err(GdlError::AmbientMismatch("form and subspace ambients differ".into()));
        }
        let perp = self.perp(s);
        let radical = self.space.meet(s, &perp);
        Ok((perp, radical))
    }

    /// Rank of the bilinear form restricted to `s`.
    pub fn restricted_rank(&self, s: &Subspace) -> usize {
        let k = s.dim();
        let mut m = vec![0 as Elem; k * k];
        for a in 0..k {
            for b in 0..k {
                m[a * k + b] = self.bilinear(s.row(a), s.row(b));
            }
        }
        rref_in_place(self.space.field(), &mut m, k, k)
    }

    pub fn singular_points(&self, s: &Subspace) -> Vec<Vec<Elem>> {
        self.space.points(s).into_iter().filter(|v| self.is_singular(v)).collect()
    }

    /// Number of singular points of `s` and the dimension of their span.
    pub fn singular_profile(&self, s: &Subspace) -> (usize, usize) {
        let pts = self.singular_points(s);
        let count = pts.len();
        let span = self.space.canonicalize(&pts).dim();
        (count, span)
    }

    pub fn classify(&self, s: &Subspace) -> Result<TypeTag> {
        let q = self.space.q();
        let k = s.dim();
        if self.kind == FormKind::Symplectic {
            let rad = k - self.restricted_rank(s);
            return match (k, rad) {
                (2, 2) | (3, 3) => Ok(TypeTag::Isotropic),
                (2, 0) => Ok(TypeTag::NonIsotropic),
                (3, 1) => Ok(TypeTag::PointRadical),
                _ => Err(GdlError::Unsupported(format!(
                    "symplectic classification of a {k}-space with radical dimension {rad}"
                ))),
            };
        }
        let (c, span) = self.singular_profile(s);
        let tag = match k {
            2 => match c {
                0 => TypeTag::Line(LineType::Exterior),
                1 => TypeTag::Line(LineType::Tangent),
                2 => TypeTag::Line(LineType::Secant),
                _ if c == q + 1 => TypeTag::Line(LineType::TotallySingular),
                _ => return Err(GdlError::Inconsistent(format!("line with {c} singular points"))),
            },
            3 => match (c, span) {
                _ if c == q * q + q + 1 => TypeTag::Plane(1),
                (_, 2) if c == q + 1 => TypeTag::Plane(2),
                (1, 1) => TypeTag::Plane(3),
                (_, 3) if c == 2 * q + 1 => TypeTag::Plane(4),
                (_, 3) if c == q + 1 => TypeTag::Plane(5),
                _ => return Err(GdlError::Inconsistent(format!("plane profile ({c}, {span})"))),
            },
            4 => match (c, span) {
                (_, 3) if c == q * q + q + 1 => TypeTag::Solid(1),
                (_, 4) if c == 2 * q * q + q + 1 => TypeTag::Solid(2),
                (_, 2) if c == q + 1 => TypeTag::Solid(3),
                (_, 4) if c == q * q + q + 1 => TypeTag::Solid(4),
                (_, 4) if c == (q + 1) * (q + 1) => TypeTag::Solid(5),
                (_, 4) if c == q * q + 1 => TypeTag::Solid(6),
                _ => {
                    return Err(GdlError::Unsupported(format!(
                        "solid with singular profile ({c}, {span}) has no listed type"
                    )))
                }
            },
            _ => return Err(GdlError::Unsupported(format!("classification of {k}-spaces"))),
        };
        Ok(tag)
    }

    /// Tag of every `k`-space in canonical order.
    pub fn classify_all(&self, k: usize) -> Result<Vec<TypeTag>> {
        let idx = SubspaceIndex::new(&self.space, k)?;
        (0..idx.len()).into_par_iter().map(|i| self.classify(&idx.unrank(i))).collect()
    }

    /// Subtype from the radical and the number of singular points.
    fn detect_subtype(&self) -> FormSubtype {
        let n = self.space.n();
        let f = self.space.field();
        let mut g = self.gram.clone();
        let rank = rref_in_place(f, &mut g, n, n);
        if self.kind == FormKind::Symplectic {
            return if rank == n { FormSubtype::NondegenerateSymplectic } else { FormSubtype::Degenerate };
        }
        // Q restricted to rad(B) must be anisotropic.
        let rad = self.space.dual(&self.space.canonicalize_flat(self.gram.clone()));
        if self.space.points(&rad).iter().any(|v| self.is_singular(v)) {
            return FormSubtype::Degenerate;
        }
        if rad.dim() > 1 || (rad.dim() == 1 && n % 2 == 0) {
            return FormSubtype::Degenerate;
        }
        let q = self.space.q() as u64;
        let count = self.singular_points(&self.space.whole()).len() as u128;
        if n % 2 == 1 {
            return if count == q_int(n as u32 - 1, q) { FormSubtype::Parabolic } else { FormSubtype::Degenerate };
        }
        let m = (n / 2) as u32;
        let hyp = (q.pow(m) as u128 - 1) * (q.pow(m - 1) as u128 + 1) / (q as u128 - 1);
        let ell = (q.pow(m) as u128 + 1) * (q.pow(m - 1) as u128 - 1) / (q as u128 - 1);
        if count == hyp {
            FormSubtype::Hyperbolic
        } else if count == ell {
            FormSubtype::Elliptic
        } else {
            FormSubtype::Degenerate
        }
    }

    pub fn to_json(&self) -> FormJson {
        let n = self.space.n();
        FormJson {
            kind: self.kind,
            subtype: self.subtype,
            coeffs: (0..n).map(|i| self.coeffs[i * n..(i + 1) * n].iter().map(|&x| x as u32).collect()).collect(),
            field: Some(self.space.field().spec().clone()),
        }
    }
}

/// JSON form `{"kind":…, "subtype":…, "coeffs":[[…]]}`; the field is optional
/// and defaults to the one supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub kind: FormKind,
    pub subtype: FormSubtype,
    pub coeffs: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
}

impl FormJson {
    pub fn to_form(&self, space: &Space) -> Result<ClassicalForm> {
        let n = space.n();
        if self.coeffs.len() != n || self.coeffs.iter().any(|r| r.len() != n) {
            return Err(GdlError::Format(format!("form coefficients must be {n}x{n}")));
        }
        let mut c = Vec::with_capacity(n * n);
        for row in &self.coeffs {
            for &x in row {
                c.push(space.field().check(x)?);
            }
        }
        ClassicalForm::from_coeffs(space, self.kind, self.subtype, c)
    }
}

/// Line-type profile of the cells of one type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCountRow {
    pub tag: TypeTag,
    /// Number of cells of this type.
    pub cells: u64,
    /// Lines of each type inside one cell (constant across the type).
    pub lines: [u64; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCountMatrix {
    pub cell_dim: usize,
    pub rows: Vec<TypeCountRow>,
    /// Number of lines of each type in the ambient space.
    pub line_totals: [u64; 4],
}

impl TypeCountMatrix {
    pub fn row(&self, tag: TypeTag) -> Option<&TypeCountRow> {
        self.rows.iter().find(|r| r.tag == tag)
    }
}

/// Counts lines of each type inside each cell type by exhaustive
/// classification; a count that varies inside a type is reported as an
/// internal inconsistency.
pub fn type_count_matrix(form: &ClassicalForm, cell_dim: usize) -> Result<TypeCountMatrix> {
    if form.kind() != FormKind::Quadratic || !(cell_dim == 3 || cell_dim == 4) {
        return Err(GdlError::param("type counts need a quadratic form and cells of dimension 3 or 4"));
    }
    let space = form.space();
    let line_idx = SubspaceIndex::new(space, 2)?;
    let line_tags = form.classify_all(2)?;
    let mut line_totals = [0u64; 4];
    for t in &line_tags {
        let TypeTag::Line(lt) = t else { unreachable!("lines classify as lines") };
        line_totals[lt.column()] += 1;
    }
    let cells = SubspaceIndex::new(space, cell_dim)?;
    let tpl = templates(space, cell_dim, 2)?;
    let per_cell: Vec<(TypeTag, [u64; 4])> = (0..cells.len())
        .into_par_iter()
        .map(|i| {
            let s = cells.unrank(i);
            let tag = form.classify(&s)?;
            let mut counts = [0u64; 4];
            for t in &tpl {
                let TypeTag::Line(lt) = line_tags[line_idx.rank(&space.embed(t, &s))] else {
                    unreachable!()
                };
                counts[lt.column()] += 1;
            }
            Ok((tag, counts))
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<TypeCountRow> = Vec::new();
    for (tag, counts) in per_cell {
        match rows.iter_mut().find(|r| r.tag == tag) {
            Some(r) => {
                if r.lines != counts {
                    return Err(GdlError::Inconsistent(format!(
                        "{tag} cells have line profiles {:?} and {:?}",
                        r.lines, counts
                    )));
                }
                r.cells += 1;
            }
            None => rows.push(TypeCountRow { tag, cells: 1, lines: counts }),
        }
    }
    rows.sort_by_key(|r| r.tag);
    Ok(TypeCountMatrix { cell_dim, rows, line_totals })
}

/// The 5x4 line-type counts of the five plane types as closed forms in `q`.
pub fn plane_type_matrix(q: u64) -> [[u64; 4]; 5] {
    [
        [0, 0, 0, q * q + q + 1],
        [0, q * q + q, 0, 1],
        [q * q, q + 1, 0, 0],
        [0, q - 1, q * q, 2],
        [q * (q - 1) / 2, q + 1, (q + 1) * q / 2, 0],
    ]
}

/// The 6x4 line-type counts of the six solid types as closed forms in `q`.
pub fn solid_type_matrix(q: u64) -> [[u64; 4]; 6] {
    let q2 = q * q;
    let q3 = q2 * q;
    [
        [0, q2 * (q2 + q + 1), 0, q2 + q + 1],
        [0, q * (q2 - 1), q2 * q2, 2 * q2 + 2 * q + 1],
        [q2 * q2, q * (q + 1) * (q + 1), 0, 1],
        [q3 * (q - 1) / 2, q3 + 2 * q2, q3 * (q + 1) / 2, q + 1],
        [q2 * (q - 1) * (q - 1) / 2, (q + 1) * (q2 - 1), q2 * (q + 1) * (q + 1) / 2, 2 * (q + 1)],
        [q2 * (q2 + 1) / 2, (q + 1) * (q2 + 1), q2 * (q2 + 1) / 2, 0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::gaussian_binomial;

    fn count_all(form: &ClassicalForm) -> usize {
        form.singular_points(&form.space().whole()).len()
    }

    #[test]
    fn singular_point_counts() {
        let v8 = Space::of(2, 8).unwrap();
        assert_eq!(count_all(&ClassicalForm::quadratic(&v8, FormSubtype::Elliptic).unwrap()), 119);
        let v6 = Space::of(2, 6).unwrap();
        assert_eq!(count_all(&ClassicalForm::quadratic(&v6, FormSubtype::Elliptic).unwrap()), 27);
        assert_eq!(count_all(&ClassicalForm::quadratic(&v6, FormSubtype::Hyperbolic).unwrap()), 35);
        let sp = ClassicalForm::symplectic(&v6).unwrap();
        assert_eq!(count_all(&sp), 63);
        let v7 = Space::of(3, 7).unwrap();
        assert_eq!(count_all(&ClassicalForm::quadratic(&v7, FormSubtype::Parabolic).unwrap()), 364);
    }

    #[test]
    fn elliptic_head_is_irreducible_binary() {
        let v = Space::of(2, 8).unwrap();
        let q = ClassicalForm::quadratic(&v, FormSubtype::Elliptic).unwrap();
        let c = q.coeffs();
        assert_eq!((c[0], c[1], c[9]), (1, 1, 1));
        assert_eq!((c[2 * 8 + 3], c[4 * 8 + 5], c[6 * 8 + 7]), (1, 1, 1));
    }

    #[test]
    fn subtype_mismatch_and_parity_are_rejected() {
        let v6 = Space::of(2, 6).unwrap();
        assert!(ClassicalForm::quadratic(&v6, FormSubtype::Parabolic).is_err());
        let v5 = Space::of(2, 5).unwrap();
        assert!(ClassicalForm::symplectic(&v5).is_err());
        let hyp = ClassicalForm::quadratic(&v6, FormSubtype::Hyperbolic).unwrap();
        let err = ClassicalForm::from_coeffs(&v6, FormKind::Quadratic, FormSubtype::Elliptic, hyp.coeffs().to_vec());
        assert!(err.is_err());
        let zero = ClassicalForm::from_coeffs(&v6, FormKind::Quadratic, FormSubtype::Degenerate, vec![0; 36]);
        assert!(zero.is_ok());
    }

    #[test]
    fn perp_and_radical() {
        let v = Space::of(2, 6).unwrap();
        let sp = ClassicalForm::symplectic(&v).unwrap();
        let (perp, rad) = sp.perp_radical(&v.whole()).unwrap();
        assert_eq!((perp.dim(), rad.dim()), (0, 0));
        // <e1, e3> is isotropic: sigma pairs e1 with e2 only
        let l = v.coordinate_span([0, 2]);
        let (perp, rad) = sp.perp_radical(&l).unwrap();
        assert!(v.contains(&perp, &l));
        assert_eq!(rad, l);
        assert_eq!(perp.dim(), 4);
        let pl = v.coordinate_span([0, 1, 2]);
        let (_, rad) = sp.perp_radical(&pl).unwrap();
        assert_eq!(rad, v.coordinate_span([2]));
        assert_eq!(sp.classify(&pl).unwrap(), TypeTag::PointRadical);
    }

    #[test]
    fn symplectic_planes_partition() {
        let v = Space::of(2, 6).unwrap();
        let sp = ClassicalForm::symplectic(&v).unwrap();
        let tags = sp.classify_all(3).unwrap();
        let iso = tags.iter().filter(|&&t| t == TypeTag::Isotropic).count();
        let rad = tags.iter().filter(|&&t| t == TypeTag::PointRadical).count();
        assert_eq!(iso, 135);
        assert_eq!(iso + rad, 1395);
        let lines = sp.classify_all(2).unwrap();
        assert_eq!(lines.iter().filter(|&&t| t == TypeTag::Isotropic).count(), 315);
    }

    fn check_planes(q: u32, subtype: FormSubtype, n: usize) {
        let v = Space::of(q, n).unwrap();
        let form = ClassicalForm::quadratic(&v, subtype).unwrap();
        let m = type_count_matrix(&form, 3).unwrap();
        let expect = plane_type_matrix(q as u64);
        for row in &m.rows {
            let TypeTag::Plane(j) = row.tag else { panic!() };
            assert_eq!(row.lines, expect[j as usize - 1], "q={q} Pi{j}");
            assert_eq!(row.lines.iter().sum::<u64>(), (q * q + q + 1) as u64);
        }
        let through_line = gaussian_binomial(n as u32 - 2, 1, q as u64) as u64;
        for i in 0..4 {
            let lhs: u64 = m.rows.iter().map(|r| r.cells * r.lines[i]).sum();
            assert_eq!(lhs, m.line_totals[i] * through_line);
        }
        let total: u64 = m.rows.iter().map(|r| r.cells).sum();
        assert_eq!(total as u128, gaussian_binomial(n as u32, 3, q as u64));
    }

    #[test]
    fn plane_matrices_q2() {
        check_planes(2, FormSubtype::Hyperbolic, 6);
        check_planes(2, FormSubtype::Elliptic, 6);
        check_planes(2, FormSubtype::Parabolic, 7);
    }

    #[test]
    fn elliptic_six_has_no_totally_singular_plane() {
        let v = Space::of(2, 6).unwrap();
        let form = ClassicalForm::quadratic(&v, FormSubtype::Elliptic).unwrap();
        let m = type_count_matrix(&form, 3).unwrap();
        assert!(m.row(TypeTag::Plane(1)).is_none());
    }

    #[test]
    fn json_round_trip() {
        let v = Space::of(3, 6).unwrap();
        let form = ClassicalForm::quadratic(&v, FormSubtype::Elliptic).unwrap();
        let s = serde_json::to_string(&form.to_json()).unwrap();
        let back: FormJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_form(&v).unwrap().coeffs(), form.coeffs());
        assert!(s.contains("\"elliptic\""));
    }

    #[test]
    fn closed_form_rows_sum_to_line_counts() {
        for q in [2u64, 3, 4, 5, 7] {
            for r in plane_type_matrix(q) {
                assert_eq!(r.iter().sum::<u64>(), q * q + q + 1);
            }
            for r in solid_type_matrix(q) {
                assert_eq!(r.iter().sum::<u64>(), (q * q + 1) * (q * q + q + 1));
            }
        }
    }
}
