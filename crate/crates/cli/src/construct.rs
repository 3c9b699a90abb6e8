use clap::Args;
use gdl_core::families::*;
use gdl_core::setdomains::CubeFunction;
use gdl_core::{Family, FormSubtype, Space, WeightCertificate};
use serde_json::json;

use crate::manifest::{digest_json, Outcome};
use crate::Failure;

/// Registered constructions with their parameters.
pub const CONSTRUCTIONS: &[(&str, &str)] = &[
    ("symplectic-planes", "--n (even, >= 6) --q --which isotropic|point-radical"),
    ("quadric-planes", "--n (>= 6) --q --subtype hyperbolic|elliptic|parabolic --which f1|f2|pi1..pi5 (f2 needs q = 2)"),
    ("elliptic-solids", "--q; solids of types S1-S3 in F_q^8"),
    ("pencil", "--n --k --q --span i,j,..; k-spaces through (or inside) a coordinate span"),
    ("meet-profile", "--n --k --q --span i,j,.. --i; k-spaces meeting the span in codimension i"),
    ("product", "--n --k --q; k-spaces through <e1> inside <e1..e_{n-1}>"),
    ("hyperplane-point-union", "--n --k --q; union over the hyperplanes through <e1..e_{n-2}>"),
    ("spread", "--n --d --k --q; k-spaces containing an element of a d-spread (d | n, d <= k < 2d)"),
    ("hypercube-lift", "--n --k --q --function and2|xor3|table:m:bits; lift along e1..em"),
    ("line-plus-spread", "--q; planes of n = 6 meeting a line in a point inside a coline of its spread"),
    ("incident-pph", "--q; n = 6 point-plane-hyperplane flag family"),
    ("line-solid", "--variant pi12|pi13|completion1..completion6; n = 6, q = 2"),
    ("pplh", "n = 6, q = 2 point-line-plane-hyperplane flag family"),
];

#[derive(Args, Debug, Clone)]
pub struct ConstructArgs {
    /// Construction name; `gdl construct list` prints the registry.
    pub name: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub which: Option<String>,
    #[arg(long)]
    pub subtype: Option<String>,
    #[arg(long)]
    pub variant: Option<String>,
    /// Comma-separated 1-based coordinates spanning the defining subspace.
    #[arg(long)]
    pub span: Option<String>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub function: Option<String>,
    #[arg(short, long)]
    pub output: Option<std::path::PathBuf>,
}

fn usage(name: &str, msg: impl std::fmt::Display) -> Failure {
    let hint = CONSTRUCTIONS.iter().find(|(n, _)| *n == name).map(|(_, h)| *h).unwrap_or("");
    Failure::Usage(format!("{name}: {msg} (parameters: {hint})"))
}

fn lift(name: &str, e: gdl_core::GdlError) -> Failure {
    match e {
        gdl_core::GdlError::InvalidParameter(_) | gdl_core::GdlError::Unsupported(_) | gdl_core::GdlError::InvalidField(_) => {
            usage(name, e)
        }
        other => other.into(),
    }
}

/// Rejects parameters a fixed-size construction does not take.
fn fixed(a: &ConstructArgs, n: usize, k: usize, q: Option<u32>) -> Result<(), Failure> {
    if a.n.is_some_and(|x| x != n) || a.k.is_some_and(|x| x != k) {
        return Err(usage(&a.name, format!("defined for n = {n}, k = {k} only")));
    }
    if let (Some(want), Some(got)) = (q, a.q) {
        if want != got {
            return Err(usage(&a.name, format!("defined for q = {want} only")));
        }
    }
    Ok(())
}

fn parse_span(a: &ConstructArgs, n: usize) -> Result<Vec<usize>, Failure> {
    let s = a.span.as_deref().ok_or_else(|| usage(&a.name, "--span is required"))?;
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
            _ => Err(usage(&a.name, format!("bad coordinate '{t}' in --span (1..={n})"))),
        })
        .collect()
}

pub fn build(a: &ConstructArgs) -> Result<(Family, Option<WeightCertificate>), Failure> {
    let name = a.name.as_str();
    let n = a.n.unwrap_or(6);
    let k = a.k.unwrap_or(3);
    let q = a.q.unwrap_or(2);
    let e = |err| lift(name, err);
    let space = || Space::of(q, n).map_err(e);
    let cert = |c: Certified| (c.family, c.certificate);
    Ok(match name {
        "symplectic-planes" => {
            let which = match a.which.as_deref().unwrap_or("isotropic") {
                "isotropic" => SymplecticWhich::Isotropic,
                "point-radical" => SymplecticWhich::PointRadical,
                w => return Err(usage(name, format!("unknown --which '{w}'"))),
            };
            cert(symplectic_planes(&space()?, which).map_err(e)?)
        }
        "quadric-planes" => {
            let st: FormSubtype = a.subtype.as_deref().unwrap_or("hyperbolic").parse().map_err(e)?;
            let which = match a.which.as_deref().unwrap_or("f1") {
                "f1" => QuadricWhich::F1,
                "f2" => QuadricWhich::F2,
                w => match w.strip_prefix("pi").and_then(|t| t.parse::<u8>().ok()) {
                    Some(t) => QuadricWhich::Type(t),
                    None => return Err(usage(name, format!("unknown --which '{w}'"))),
                },
            };
            cert(quadric_planes(&space()?, st, which).map_err(e)?)
        }
        "elliptic-solids" => {
            fixed(a, 8, 4, None)?;
            cert(elliptic_solids(q).map_err(e)?)
        }
        "pencil" | "meet-profile" => {
            let v = space()?;
            let t = v.coordinate_span(parse_span(a, n)?);
            let spec = if name == "pencil" {
                TrivialSpec::Pencil(t)
            } else {
                TrivialSpec::MeetProfile { t, i: a.i.ok_or_else(|| usage(name, "--i is required"))? }
            };
            cert(trivial_family(&v, k, &spec).map_err(e)?)
        }
        "product" => {
            let v = space()?;
            let spec = TrivialSpec::Product { p: v.coordinate_span([0]), h: v.coordinate_span(0..n - 1) };
            cert(trivial_family(&v, k, &spec).map_err(e)?)
        }
        "hyperplane-point-union" => {
            let v = space()?;
            if n < 3 {
                return Err(usage(name, "needs n >= 3"));
            }
            cert(trivial_family(&v, k, &TrivialSpec::standard_union(&v)).map_err(e)?)
        }
        "spread" => {
            let d = a.d.ok_or_else(|| usage(name, "--d is required"))?;
            cert(spread_family(&space()?, d, k).map_err(e)?)
        }
        "hypercube-lift" => {
            let v = space()?;
            let h = CubeFunction::parse(a.function.as_deref().unwrap_or("xor2")).map_err(e)?;
            if h.arity() > n {
                return Err(usage(name, format!("arity {} exceeds n = {n}", h.arity())));
            }
            let basis: Vec<Vec<u8>> = (0..h.arity()).map(|i| v.unit(i)).collect();
            (hypercube_lift(&v, k, &h, &basis).map_err(e)?, None)
        }
        "line-plus-spread" => {
            fixed(a, 6, 3, None)?;
            cert(line_plus_spread(q).map_err(e)?.certified)
        }
        "incident-pph" => {
            fixed(a, 6, 3, None)?;
            cert(incident_pph(q).map_err(e)?.certified)
        }
        "line-solid" => {
            fixed(a, 6, 3, Some(2))?;
            match a.variant.as_deref().or(a.which.as_deref()).unwrap_or("pi12") {
                "pi12" => cert(sporadic_line_solid(LineSolidVariant::Pi12).map_err(e)?.certified),
                "pi13" => cert(sporadic_line_solid(LineSolidVariant::Pi13).map_err(e)?.certified),
                w => {
                    let j = w
                        .strip_prefix("completion")
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| usage(name, format!("unknown --variant '{w}'")))?;
                    let all = line_solid_completions().map_err(e)?;
                    let f = all
                        .into_iter()
                        .nth(j.wrapping_sub(1))
                        .ok_or_else(|| usage(name, format!("completion index {j} out of range")))?;
                    (f, None)
                }
            }
        }
        "pplh" => {
            fixed(a, 6, 3, Some(2))?;
            cert(sporadic_pplh().map_err(e)?.certified)
        }
        other => {
            let names: Vec<&str> = CONSTRUCTIONS.iter().map(|(n, _)| *n).collect();
            return Err(Failure::Usage(format!("unknown construction '{other}'; known: {}", names.join(", "))));
        }
    })
}

pub fn run(a: &ConstructArgs) -> Result<Outcome, Failure> {
    if a.name == "list" {
        let list: Vec<_> = CONSTRUCTIONS.iter().map(|(n, h)| json!({ "name": n, "parameters": h })).collect();
        return Ok(Outcome::new(list));
    }
    let (family, cert) = build(a)?;
    let file = family.to_json(cert.as_ref());
    let mut out = Outcome::new(&file).field(family.space().field().spec());
    out.digests.insert("bitset".into(), crate::manifest::sha256_hex(&family.bitset_bytes()));
    out.digests.insert("family".into(), digest_json(&file));
    out.flatten = true;
    Ok(out)
}
