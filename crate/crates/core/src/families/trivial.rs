//! Pencils, meet profiles, products of a point and a hyperplane, and the
//! unions built from them; lifts of hypercube functions.

use serde_json::json;

use super::classes::indicator_certificate;
use super::Certified;
use crate::enumerate::SubspaceIndex;
use crate::error::{GdlError, Result};
use crate::family::Family;
use crate::setdomains::{multilinear_degree, CubeFunction};
use crate::subspace::{Space, Subspace};

#[derive(Clone, Debug)]
pub enum TrivialSpec {
    /// `k`-spaces through `T` when `dim T <= k`, otherwise `k`-spaces in `T`.
    Pencil(Subspace),
    /// `k`-spaces `S` with `dim(S ∩ T) = dim T - i`.
    MeetProfile { t: Subspace, i: usize },
    /// `k`-spaces through the point `p` inside the hyperplane `h`.
    Product { p: Subspace, h: Subspace },
    /// `sum_H x_H x_{P_H}` over hyperplanes `H` through the `(n-2)`-space `c`,
    /// each with a point `P_H ⊆ H` outside `c`. Pairs are `(H, P_H)`.
    HyperplanePointUnion { c: Subspace, pairs: Vec<(Subspace, Subspace)> },
}

impl TrivialSpec {
    /// The union over all `q+1` hyperplanes through `C = <e1..e_{n-2}>`,
    /// with `P_H` the point of `H` on `<e_{n-1}, e_n>`.
    pub fn standard_union(space: &Space) -> Self {
        let n = space.n();
        let c = space.coordinate_span(0..n - 2);
        let tail = space.coordinate_span([n - 2, n - 1]);
        let pairs = space
            .points(&tail)
            .into_iter()
            .map(|v| {
                let p = space.point(&v);
                (space.join(&c, &p), p)
            })
            .collect();
        TrivialSpec::HyperplanePointUnion { c, pairs }
    }

    fn name(&self) -> &'static str {
        match self {
            TrivialSpec::Pencil(_) => "pencil",
            TrivialSpec::MeetProfile { .. } => "meet-profile",
            TrivialSpec::Product { .. } => "product",
            TrivialSpec::HyperplanePointUnion { .. } => "hyperplane-point-union",
        }
    }
}

fn check_ambient(space: &Space, s: &Subspace) -> Result<()> {
    if s.n() != space.n() {
        return Err(GdlError::AmbientMismatch(format!("subspace of F^{} in F^{}", s.n(), space.n())));
    }
    Ok(())
}

pub fn trivial_family(space: &Space, k: usize, spec: &TrivialSpec) -> Result<Certified> {
    let n = space.n();
    let index = SubspaceIndex::new(space, k)?;
    let (family, d, defining) = match spec {
        TrivialSpec::Pencil(t) => {
            check_ambient(space, t)?;
            let (f, d) = if t.dim() <= k {
                (Family::from_predicate(&index, |s| space.contains(s, t))?, t.dim())
            } else {
                (Family::from_predicate(&index, |s| space.contains(t, s))?, n - t.dim())
            };
            (f, d, vec![t.clone()])
        }
        TrivialSpec::MeetProfile { t, i } => {
            check_ambient(space, t)?;
            if *i > t.dim() {
                return Err(GdlError::param(format!("i = {i} exceeds dim T = {}", t.dim())));
            }
            let want = t.dim() - i;
            (Family::from_predicate(&index, |s| space.meet_dim(s, t) == want)?, t.dim(), vec![t.clone()])
        }
        TrivialSpec::Product { p, h } => {
            check_ambient(space, p)?;
            check_ambient(space, h)?;
            if p.dim() != 1 || h.dim() != n - 1 {
                return Err(GdlError::param("product needs a point and a hyperplane"));
            }
            if !space.contains(h, p) {
                return Err(GdlError::Inconsistent("inconsistent incidence: P is not contained in H".into()));
            }
            let f = Family::from_predicate(&index, |s| space.contains(s, p) && space.contains(h, s))?;
            (f, 2, vec![p.clone(), h.clone()])
        }
        TrivialSpec::HyperplanePointUnion { c, pairs } => {
            check_ambient(space, c)?;
            if c.dim() + 2 != n {
                return Err(GdlError::param("C must be an (n-2)-space"));
            }
            for (j, (h, p)) in pairs.iter().enumerate() {
                check_ambient(space, h)?;
                check_ambient(space, p)?;
                if h.dim() != n - 1 || !space.contains(h, c) {
                    return Err(GdlError::Inconsistent(format!("pair {j}: H is not a hyperplane through C")));
                }
                if p.dim() != 1 || !space.contains(h, p) || space.contains(c, p) {
                    return Err(GdlError::Inconsistent(format!("pair {j}: P_H must be a point of H outside C")));
                }
                if pairs[..j].iter().any(|(g, _)| g == h) {
                    return Err(GdlError::Inconsistent(format!("pair {j}: repeated hyperplane")));
                }
            }
            let f = Family::from_predicate(&index, |s| {
                pairs.iter().any(|(h, p)| space.contains(s, p) && space.contains(h, s))
            })?;
            let mut defining = vec![c.clone()];
            for (h, p) in pairs {
                defining.push(h.clone());
                defining.push(p.clone());
            }
            (f, 2, defining)
        }
    };
    if d > k {
        return Err(GdlError::param(format!("degree {d} exceeds k = {k}")));
    }
    let certificate = indicator_certificate(&family, d, &defining)?;
    let family = family.with_name(spec.name(), [("degree", json!(d))]);
    Ok(Certified { family, certificate: Some(certificate) })
}

/// `f(S) = h(x_{<b_1>}(S), ..., x_{<b_m>}(S))` for independent `b_i`.
pub fn hypercube_lift(space: &Space, k: usize, h: &CubeFunction, basis: &[Vec<u8>]) -> Result<Family> {
    if basis.len() != h.arity() {
        return Err(GdlError::param(format!("{} vectors for a function of arity {}", basis.len(), h.arity())));
    }
    if basis.iter().any(|b| b.len() != space.n()) {
        return Err(GdlError::AmbientMismatch("basis vector length differs from n".into()));
    }
    if space.canonicalize(basis).dim() != basis.len() {
        return Err(GdlError::param("the vectors of B must be linearly independent"));
    }
    let points: Vec<Subspace> = basis.iter().map(|b| space.point(b)).collect();
    let index = SubspaceIndex::new(space, k)?;
    let f = Family::from_predicate(&index, |s| {
        let x = points.iter().enumerate().fold(0u32, |acc, (i, p)| acc | (space.contains(s, p) as u32) << i);
        h.eval(x)
    })?;
    Ok(f.with_name("hypercube-lift", [("degree", json!(multilinear_degree(h))), ("arity", json!(h.arity()))]))
}
