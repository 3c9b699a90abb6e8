//! Desarguesian spreads by field reduction and the union of their pencils.

use std::collections::BTreeSet;

use num_traits::One;
use serde_json::json;

use super::Certified;
use crate::enumerate::SubspaceIndex;
use crate::error::{GdlError, Result};
use crate::family::{Family, WeightCertificate};
use crate::field::{Elem, Field};
use crate::gauss::q_int;
use crate::linalg::Rational;
use crate::subspace::{Space, Subspace};

/// Remainder of `a` modulo the monic `m`, coefficients lowest degree first.
fn poly_rem(f: &Field, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(lead, c));
        }
        r.pop();
    }
    r
}

fn monic_polys(q: usize, deg: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0..q.pow(deg as u32)).map(move |mut x| {
        let mut p: Vec<Elem> = (0..deg)
            .map(|_| {
                let c = (x % q) as Elem;
                x /= q;
                c
            })
            .collect();
        p.push(1);
        p
    })
}

/// Least monic irreducible polynomial of degree `d` over the field, by
/// trial division.
pub fn irreducible_poly(f: &Field, d: usize) -> Vec<Elem> {
    let q = f.q();
    monic_polys(q, d)
        .find(|p| (1..=d / 2).all(|e| monic_polys(q, e).all(|g| poly_rem(f, p, &g).iter().any(|&c| c != 0))))
        .expect("irreducible polynomials exist in every degree")
}

/// Spread of `d`-spaces: the `F_{q^d}`-points of `F_q^n` viewed as
/// `(F_{q^d})^{n/d}`, with `F_{q^d} = F_q[w]` acting blockwise through the
/// companion matrix of an irreducible polynomial.
pub fn field_reduction_spread(space: &Space, d: usize) -> Result<Vec<Subspace>> {
    let n = space.n();
    if d == 0 || n % d != 0 {
        return Err(GdlError::param(format!("spread does not exist: d = {d} does not divide n = {n}")));
    }
    let f = space.field();
    let m = irreducible_poly(f, d);
    // v -> w v on each block: shift up, feed the top coefficient back
    let times_w = |v: &[Elem]| -> Vec<Elem> {
        let mut out = vec![0; n];
        for b in (0..n).step_by(d) {
            let top = v[b + d - 1];
            for i in 0..d {
                let shifted = if i == 0 { 0 } else { v[b + i - 1] };
                out[b + i] = f.sub(shifted, f.mul(top, m[i]));
            }
        }
        out
    };
    let want = (q_int(n as u32, space.q() as u64) / q_int(d as u32, space.q() as u64)) as usize;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(want);
    let points = SubspaceIndex::new(space, 1)?;
    for p in points.iter() {
        let mut rows = vec![p.row(0).to_vec()];
        for _ in 1..d {
            let next = times_w(rows.last().unwrap());
            rows.push(next);
        }
        let s = space.canonicalize(&rows);
        debug_assert_eq!(s.dim(), d);
        if seen.insert(s.clone()) {
            out.push(s);
        }
        if out.len() == want {
            break;
        }
    }
    Ok(out)
}

/// `k`-spaces containing an element of the spread, `d <= k <= 2d-1`.
pub fn spread_family(space: &Space, d: usize, k: usize) -> Result<Certified> {
    if k < d || k > 2 * d - 1 {
        return Err(GdlError::param(format!("need d <= k <= 2d-1, got d={d}, k={k}")));
    }
    let spread = field_reduction_spread(space, d)?;
    let index = SubspaceIndex::new(space, k)?;
    let family = Family::from_predicate(&index, |s| spread.iter().any(|t| space.contains(s, t)))?;
    let dix = SubspaceIndex::new(space, d)?;
    let mut cert = WeightCertificate::new(d);
    for t in &spread {
        cert.add(dix.rank(t), &Rational::one());
    }
    let family = family.with_name("spread", [("d", json!(d)), ("spread_size", json!(spread.len()))]);
    Ok(Certified { family, certificate: Some(cert) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::eval_certificate;

    #[test]
    fn spreads_partition_points() {
        for (q, n, d) in [(2, 6, 3), (2, 6, 2), (3, 4, 2), (4, 4, 2)] {
            let v = Space::of(q, n).unwrap();
            let s = field_reduction_spread(&v, d).unwrap();
            let pts: usize = s.iter().map(|t| v.points(t).len()).sum();
            assert_eq!(pts as u128, q_int(n as u32, q as u64));
            for (i, a) in s.iter().enumerate() {
                for b in &s[..i] {
                    assert_eq!(v.meet_dim(a, b), 0);
                }
            }
        }
        assert!(field_reduction_spread(&Space::of(2, 5).unwrap(), 2).is_err());
    }

    #[test]
    fn spread_families() {
        let v = Space::of(2, 6).unwrap();
        let c = spread_family(&v, 3, 3).unwrap();
        assert_eq!(c.family.size(), 9);
        let c = spread_family(&v, 3, 4).unwrap();
        assert_eq!(c.family.size(), 63);
        assert!(eval_certificate(&c.family, c.certificate.as_ref().unwrap()).unwrap().replays());
    }
}
