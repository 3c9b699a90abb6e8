//! Plane and solid families from symplectic and quadratic forms, with
//! certificates that weight every line by its type.

use serde_json::json;

use super::classes::line_weight_certificate;
use super::Certified;
use crate::enumerate::SubspaceIndex;
use crate::error::{GdlError, Result};
use crate::family::Family;
use crate::forms::{ClassicalForm, FormSubtype, TypeTag};
use crate::gauss::q_int;
use crate::linalg::{rat, Rational};
use crate::subspace::Space;

fn qi(m: u32, q: usize) -> i64 {
    q_int(m, q as u64) as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymplecticWhich {
    Isotropic,
    PointRadical,
}

/// Weights on isotropic and nonisotropic lines: `1/[3]` and
/// `-(q+1)/(q^2 [3])`.
pub fn symplectic_coefficients(q: usize) -> [Rational; 2] {
    let q = q as i64;
    let t = qi(3, q as usize);
    [rat(1, t), rat(-(q + 1), q * q * t)]
}

/// Isotropic planes, or planes whose radical is a point, of the standard
/// nondegenerate symplectic form on `F_q^n`.
pub fn symplectic_planes(space: &Space, which: SymplecticWhich) -> Result<Certified> {
    let n = space.n();
    if n < 6 || n % 2 == 1 {
        return Err(GdlError::Unsupported(format!("symplectic planes need even n >= 6, got {n}")));
    }
    let form = ClassicalForm::symplectic(space)?;
    let index = SubspaceIndex::new(space, 3)?;
    let iso = Family::from_predicate(&index, |s| form.restricted_rank(s) == 0)?;
    let [a, b] = symplectic_coefficients(space.q());
    let cert = line_weight_certificate(space, 2, |l| (form.restricted_rank(l) != 0) as usize, &[a, b])?;
    let (family, certificate, tag) = match which {
        SymplecticWhich::Isotropic => (iso, cert, "isotropic"),
        SymplecticWhich::PointRadical => (iso.complement(), cert.complement(space, 3), "point-radical"),
    };
    let family = family.with_name("symplectic-planes", [("which", json!(tag))]);
    Ok(Certified { family, certificate: Some(certificate) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricWhich {
    /// `Π1 ∪ Π2`.
    F1,
    /// `Π1 ∪ Π3`, `q = 2` only.
    F2,
    /// A single plane type, without a certificate.
    Type(u8),
}

/// `f1` weights on `(L0, L1, L2, Lq+1)`.
pub fn f1_coefficients(q: usize) -> [Rational; 4] {
    let qq = q as i64;
    let a = rat(-(qq + 1), qq.pow(4) + qq.pow(3) + qq * qq);
    let b = rat(1, qi(3, q));
    [a.clone(), b.clone(), a, b]
}

/// `f2` weights on `(L0, L1, L2, Lq+1)` at `q = 2`. The first entry is
/// forced by the one-point planes: `4 a - 3/42 = 1`.
pub fn f2_coefficients() -> [Rational; 4] {
    [rat(15, 56), rat(-1, 42), rat(-11, 168), rat(1, 7)]
}

fn line_column(form: &ClassicalForm, l: &crate::subspace::Subspace) -> usize {
    match form.classify(l) {
        Ok(TypeTag::Line(t)) => t.column(),
        other => unreachable!("line classified as {other:?}"),
    }
}

/// Planes of `Π1 ∪ Π2`, `Π1 ∪ Π3`, or a single type for the standard
/// quadratic form of the given subtype.
pub fn quadric_planes(space: &Space, subtype: FormSubtype, which: QuadricWhich) -> Result<Certified> {
    let q = space.q();
    if space.n() < 6 {
        return Err(GdlError::param("quadric plane families need n >= 6"));
    }
    let form = ClassicalForm::quadratic(space, subtype)?;
    let index = SubspaceIndex::new(space, 3)?;
    let types: Vec<u8> = match which {
        QuadricWhich::F1 => vec![1, 2],
        QuadricWhich::F2 if q == 2 => vec![1, 3],
        QuadricWhich::F2 => return Err(GdlError::param(format!("f2 is only defined for q = 2, got q = {q}"))),
        QuadricWhich::Type(t) if (1..=5).contains(&t) => vec![t],
        QuadricWhich::Type(t) => return Err(GdlError::param(format!("plane type {t} is not in 1..=5"))),
    };
    let tags = form.classify_all(3)?;
    let family = Family::from_predicate(&index, |s| {
        matches!(tags[index.rank(s)], TypeTag::Plane(t) if types.contains(&t))
    })?;
    let weights = match which {
        QuadricWhich::F1 => Some(f1_coefficients(q)),
        QuadricWhich::F2 => Some(f2_coefficients()),
        QuadricWhich::Type(_) => None,
    };
    let certificate = weights.map(|w| line_weight_certificate(space, 2, |l| line_column(&form, l), &w)).transpose()?;
    let label = match which {
        QuadricWhich::F1 => "f1".to_string(),
        QuadricWhich::F2 => "f2".to_string(),
        QuadricWhich::Type(t) => format!("Pi{t}"),
    };
    let family = family.with_name("quadric-planes", [("subtype", json!(subtype.to_string())), ("which", json!(label))]);
    Ok(Certified { family, certificate })
}

/// Weights on `(L0, L1, L2, Lq+1)` for the elliptic solid family.
pub fn solid_coefficients(q: usize) -> [Rational; 4] {
    let qq = q as i64;
    let t = qi(3, q);
    [rat(qq + 1, qq.pow(3) * t), rat(0, 1), rat(-(qq + 1), qq.pow(3) * t), rat(1, t)]
}

/// Solids of types S1, S2, S3 for the elliptic quadric of `F_q^8`.
pub fn elliptic_solids(q: u32) -> Result<Certified> {
    let space = Space::of(q, 8)?;
    let form = ClassicalForm::quadratic(&space, FormSubtype::Elliptic)?;
    let index = SubspaceIndex::new(&space, 4)?;
    let family = Family::from_predicate(&index, |s| {
        matches!(form.classify(s), Ok(TypeTag::Solid(1..=3)))
    })?;
    let certificate =
        line_weight_certificate(&space, 2, |l| line_column(&form, l), &solid_coefficients(q as usize))?;
    let family = family.with_name("elliptic-solids", [("q", json!(q))]);
    Ok(Certified { family, certificate: Some(certificate) })
}
