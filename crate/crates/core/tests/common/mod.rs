#![allow(dead_code)]

use gdl_core::families::*;
use gdl_core::setdomains::CubeFunction;
use gdl_core::*;

/// Every family constructed in `J_2(6,3)` that carries a degree-2 claim,
/// with its name and claimed degree.
pub fn catalog_632() -> Vec<(String, Family, usize)> {
    let v = Space::of(2, 6).unwrap();
    let mut out: Vec<(String, Family, usize)> = Vec::new();
    let mut push = |name: &str, f: Family, d: usize| out.push((name.to_string(), f, d));
    push("symplectic isotropic", symplectic_planes(&v, SymplecticWhich::Isotropic).unwrap().family, 2);
    push("symplectic point-radical", symplectic_planes(&v, SymplecticWhich::PointRadical).unwrap().family, 2);
    for st in [FormSubtype::Hyperbolic, FormSubtype::Elliptic] {
        for (w, name) in [(QuadricWhich::F1, "f1"), (QuadricWhich::F2, "f2")] {
            push(&format!("quadric {st} {name}"), quadric_planes(&v, st, w).unwrap().family, 2);
        }
    }
    push("line pencil", trivial_family(&v, 3, &TrivialSpec::Pencil(v.coordinate_span([0, 1]))).unwrap().family, 2);
    push(
        "product",
        trivial_family(&v, 3, &TrivialSpec::Product { p: v.coordinate_span([0]), h: v.coordinate_span(0..5) })
            .unwrap()
            .family,
        2,
    );
    push("hyperplane-point union", trivial_family(&v, 3, &TrivialSpec::standard_union(&v)).unwrap().family, 2);
    push("line spread", spread_family(&v, 2, 3).unwrap().family, 2);
    let b = vec![v.unit(0), v.unit(1)];
    push("xor lift", hypercube_lift(&v, 3, &CubeFunction::xor(2).unwrap(), &b).unwrap(), 2);
    push("line-plus-spread", line_plus_spread(2).unwrap().certified.family, 2);
    push("incident pph", incident_pph(2).unwrap().certified.family, 2);
    push("line-solid pi12", sporadic_line_solid(LineSolidVariant::Pi12).unwrap().certified.family, 2);
    push("pplh", sporadic_pplh().unwrap().certified.family, 2);
    out
}
