//! The built-in families of `J_2(6,3)` that carry a degree-2 claim.

use super::*;
use crate::error::Result;
use crate::family::Family;
use crate::forms::FormSubtype;
use crate::setdomains::CubeFunction;
use crate::subspace::Space;

pub fn builtin_632() -> Result<Vec<(String, Family)>> {
    let v = Space::of(2, 6)?;
    let mut out = vec![
        ("symplectic isotropic".to_string(), symplectic_planes(&v, SymplecticWhich::Isotropic)?.family),
        ("symplectic point-radical".to_string(), symplectic_planes(&v, SymplecticWhich::PointRadical)?.family),
    ];
    for st in [FormSubtype::Hyperbolic, FormSubtype::Elliptic] {
        out.push((format!("quadric {st} f1"), quadric_planes(&v, st, QuadricWhich::F1)?.family));
        out.push((format!("quadric {st} f2"), quadric_planes(&v, st, QuadricWhich::F2)?.family));
    }
    let line = TrivialSpec::Pencil(v.coordinate_span([0, 1]));
    out.push(("line pencil".into(), trivial_family(&v, 3, &line)?.family));
    let product = TrivialSpec::Product { p: v.coordinate_span([0]), h: v.coordinate_span(0..5) };
    out.push(("product".into(), trivial_family(&v, 3, &product)?.family));
    out.push(("hyperplane-point union".into(), trivial_family(&v, 3, &TrivialSpec::standard_union(&v))?.family));
    out.push(("line spread".into(), spread_family(&v, 2, 3)?.family));
    let b = vec![v.unit(0), v.unit(1)];
    out.push(("xor lift".into(), hypercube_lift(&v, 3, &CubeFunction::xor(2)?, &b)?));
    out.push(("line-plus-spread".into(), line_plus_spread(2)?.certified.family));
    out.push(("incident pph".into(), incident_pph(2)?.certified.family));
    out.push(("line-solid pi12".into(), sporadic_line_solid(LineSolidVariant::Pi12)?.certified.family));
    out.push(("pplh".into(), sporadic_pplh()?.certified.family));
    Ok(out)
}
