//! Families fixing a partial flag of subspaces of `F_q^6`.
//!
//! The flag is fixed on coordinate spans: `P = <e1>`, `M = L = <e1,e2>`,
//! `Π = <e1,e2,e3>`, `C = <e1..e4>`, `H = <e1..e5>`.

use serde_json::json;

use super::classes::{indicator_certificate, line_weight_certificate};
use super::spread::field_reduction_spread;
use super::Certified;
use crate::certify::{junta_depends, JuntaVar};
use crate::enumerate::SubspaceIndex;
use crate::error::Result;
use crate::family::{Family, WeightCertificate};
use crate::gauss::q_int;
use crate::linalg::{int, rat, Rational};
use crate::orbits::{orbit_union_search, OrbitDecomposition};
use crate::subspace::{Space, Subspace};

#[derive(Clone, Debug)]
pub struct LocalFamily {
    pub certified: Certified,
    /// Points and hyperplanes the family is claimed to depend on.
    pub junta: Vec<JuntaVar>,
    /// Size given by the closed formula for this construction.
    pub formula_size: u128,
}

impl LocalFamily {
    pub fn family(&self) -> &Family {
        &self.certified.family
    }
    pub fn size_matches_formula(&self) -> bool {
        self.family().size() as u128 == self.formula_size
    }
}

fn space6(q: u32) -> Result<Space> {
    Space::of(q, 6)
}

fn hyperplanes_through(space: &Space, c: &Subspace) -> Vec<Subspace> {
    let n = space.n();
    let comp: Vec<usize> = (0..n).filter(|i| !c.pivots().contains(i)).collect();
    let tail = space.coordinate_span(comp);
    space.points(&tail).into_iter().map(|v| space.span_with(c, &v)).collect()
}

/// Planes inside one of `q^2+1` colines through `L` that meet `L` in a
/// point; the colines come from a line spread of `V/L`.
pub fn line_plus_spread(q: u32) -> Result<LocalFamily> {
    let v = space6(q)?;
    let qq = q as u64;
    let l = v.coordinate_span([0, 1]);
    let quotient = Space::of(q, 4)?;
    let colines: Vec<Subspace> = field_reduction_spread(&quotient, 2)?
        .into_iter()
        .map(|s| {
            let mut rows: Vec<Vec<u8>> = l.basis();
            for r in s.basis() {
                rows.push([vec![0, 0], r].concat());
            }
            v.canonicalize(&rows)
        })
        .collect();
    let index = SubspaceIndex::new(&v, 3)?;
    let family = Family::from_predicate(&index, |s| {
        v.meet_dim(s, &l) == 1 && colines.iter().any(|c| v.contains(c, s))
    })?;
    // x_C for a coline: weights 1/[3], -1/((q^2+q)[3]), 1/(q^3[3]) on lines
    // inside C, meeting C in a point, and skew to C
    let t = q_int(3, qq) as i64;
    let qi = q as i64;
    let w = [rat(1, qi.pow(3) * t), rat(-1, (qi * qi + qi) * t), rat(1, t)];
    let mut cert = WeightCertificate::new(2);
    for c in &colines {
        let xc = line_weight_certificate(&v, 2, |d| v.meet_dim(d, c), &w)?;
        cert.add_scaled(&xc, &int(1));
    }
    let lines = SubspaceIndex::new(&v, 2)?;
    cert.add(lines.rank(&l), &int(-1));
    let mut junta: Vec<JuntaVar> = v.points(&l).iter().map(|p| JuntaVar::Point(v.point(p))).collect();
    for c in &colines {
        junta.extend(hyperplanes_through(&v, c).into_iter().map(JuntaVar::Hyperplane));
    }
    let family = family.with_name("line-plus-spread", [("q", json!(q))]);
    Ok(LocalFamily {
        certified: Certified { family, certificate: Some(cert) },
        junta,
        formula_size: ((qq * qq + 1) * qq * qq * (qq + 1)) as u128,
    })
}

/// Class of a line with respect to the flag `P ⊂ Π ⊂ H`, numbered `0..8`.
pub fn pph_line_classes(space: &Space) -> impl Fn(&Subspace) -> usize + Sync + '_ {
    let p = space.coordinate_span([0]);
    let pi = space.coordinate_span(0..3);
    let h = space.coordinate_span(0..5);
    move |l: &Subspace| {
        let through_p = space.contains(l, &p);
        if space.contains(&h, l) {
            match space.meet_dim(l, &pi) {
                2 => if through_p { 0 } else { 1 },
                1 => if through_p { 2 } else { 3 },
                _ => 4,
            }
        } else {
            let x = space.meet(l, &h);
            if x == p {
                5
            } else if space.contains(&pi, &x) {
                6
            } else {
                7
            }
        }
    }
}

/// Planes not in `H` meeting `Π` in a line through `P`, and planes in `H`
/// meeting `Π` in a point other than `P`.
pub fn incident_pph(q: u32) -> Result<LocalFamily> {
    let v = space6(q)?;
    let p = v.coordinate_span([0]);
    let pi = v.coordinate_span(0..3);
    let h = v.coordinate_span(0..5);
    let index = SubspaceIndex::new(&v, 3)?;
    let family = Family::from_predicate(&index, |s| {
        let m = v.meet_dim(s, &pi);
        let through_p = v.contains(s, &p);
        if v.contains(&h, s) {
            m == 1 && !through_p
        } else {
            m == 2 && through_p
        }
    })?;
    let qi = q as i64;
    let (t3, t2) = (q_int(3, q as u64) as i64, q_int(2, q as u64) as i64);
    let w: [Rational; 8] = [
        rat(qi.pow(3), t3 * t2),
        rat(-qi, t3),
        rat(-qi, t3),
        rat(1, t3 * t2),
        rat(qi + 1, qi * t3),
        rat(qi + 1, qi * t3),
        rat(1, t3 * t2),
        rat(-1, qi * qi * t3),
    ];
    let cert = line_weight_certificate(&v, 2, pph_line_classes(&v), &w)?;
    let mut junta: Vec<JuntaVar> = v.points(&pi).iter().map(|x| JuntaVar::Point(v.point(x))).collect();
    junta.push(JuntaVar::Hyperplane(h));
    let qq = q as u128;
    let family = family.with_name("incident-pph", [("q", json!(q))]);
    Ok(LocalFamily {
        certified: Certified { family, certificate: Some(cert) },
        junta,
        formula_size: (qq * qq + 1) * qq.pow(3) * (qq + 1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineSolidVariant {
    /// `Π1 ∪ Π2`.
    Pi12,
    /// `Π1 ∪ Π3`, which also equals `Π1 ∪ Π2 ∪ Π3`.
    Pi13,
}

/// The line-solid flag `M ⊂ C` with points `P` of `M` matched to the
/// hyperplanes `H_P` through `C`, both in canonical order.
fn line_solid_flag(v: &Space) -> (Subspace, Subspace, Vec<(Subspace, Subspace)>) {
    let m = v.coordinate_span([0, 1]);
    let c = v.coordinate_span(0..4);
    let pts: Vec<Subspace> = v.points(&m).iter().map(|x| v.point(x)).collect();
    let hs = hyperplanes_through(v, &c);
    (m, c, pts.into_iter().zip(hs).collect())
}

/// The certificate-free expansion `sum_P (x_P - x_P x_{H_P})`, evaluated on
/// a plane.
pub fn line_solid_expansion(v: &Space, s: &Subspace) -> i64 {
    let (_, _, pairs) = line_solid_flag(v);
    pairs.iter().map(|(p, h)| (v.contains(s, p) as i64) * (1 - v.contains(h, s) as i64)).sum()
}

pub fn sporadic_line_solid(variant: LineSolidVariant) -> Result<LocalFamily> {
    let v = space6(2)?;
    let q = 2u128;
    let (m, c, pairs) = line_solid_flag(&v);
    let index = SubspaceIndex::new(&v, 3)?;
    let family = Family::from_predicate(&index, |s| {
        let pi1 = v.contains(s, &m) && v.contains(&c, s);
        let meets_m_in_point = v.meet_dim(s, &m) == 1;
        let other = match variant {
            LineSolidVariant::Pi12 => {
                !v.contains(&c, s)
                    && meets_m_in_point
                    && pairs.iter().any(|(p, h)| v.contains(s, p) && v.contains(h, s))
            }
            LineSolidVariant::Pi13 => meets_m_in_point && v.meet_dim(s, &c) == 2,
        };
        pi1 || other
    })?;
    let mut defining = vec![m.clone(), c.clone()];
    for (p, h) in &pairs {
        defining.push(p.clone());
        defining.push(h.clone());
    }
    let cert = indicator_certificate(&family, 2, &defining).ok();
    let mut junta: Vec<JuntaVar> = pairs.iter().map(|(p, _)| JuntaVar::Point(p.clone())).collect();
    junta.extend(pairs.iter().map(|(_, h)| JuntaVar::Hyperplane(h.clone())));
    let (name, formula) = match variant {
        LineSolidVariant::Pi12 => ("pi12", (q + 1) + q.pow(3) * (q + 1).pow(2)),
        LineSolidVariant::Pi13 => ("pi13", (q + 1) + q.pow(3) * (q + 1).pow(2) + q.pow(3) * (q * q + 1) * (q + 1)),
    };
    let family = family.with_name("sporadic-line-solid", [("variant", json!(name))]);
    Ok(LocalFamily { certified: Certified { family, certificate: cert }, junta, formula_size: formula })
}

/// Planes labelled by their incidences with the line-solid flag: meets with
/// `M` and `C`, which points of `M` they contain, which `H_P` contain them.
pub fn line_solid_partition(v: &Space) -> Result<OrbitDecomposition> {
    let (m, c, pairs) = line_solid_flag(v);
    let index = SubspaceIndex::new(v, 3)?;
    let labels: Vec<usize> = index
        .iter()
        .map(|s| {
            let base = v.meet_dim(&s, &m) * 5 + v.meet_dim(&s, &c);
            pairs.iter().fold(base, |l, (p, h)| (l * 2 + v.contains(&s, p) as usize) * 2 + v.contains(h, &s) as usize)
        })
        .collect();
    Ok(OrbitDecomposition::from_labels(3, &labels))
}

/// Degree-2 unions of flag classes that contain `Π1 ∪ Π2` and have the size
/// stated for `Π1 ∪ Π3`. Each is certified by the degree test.
pub fn line_solid_completions() -> Result<Vec<Family>> {
    let v = space6(2)?;
    let pi12 = sporadic_line_solid(LineSolidVariant::Pi12)?.certified.family;
    let target = sporadic_line_solid(LineSolidVariant::Pi13)?.formula_size as usize;
    let part = line_solid_partition(&v)?;
    Ok(orbit_union_search(&v, &part, 2, 64)?
        .into_iter()
        .filter(|u| u.size == target && pi12.members().all(|i| u.family.contains(i)))
        .map(|u| u.family.with_name("line-solid-completion", [("classes", json!(u.orbits))]))
        .collect())
}

/// Flag `P ⊂ M ⊂ Π ⊂ H` at `q = 2`: planes in `H` through `M`, planes not
/// in `H` meeting `Π` in a line through `P` other than `M`, and planes in
/// `H` meeting `Π` in a point of `M` other than `P`.
pub fn sporadic_pplh() -> Result<LocalFamily> {
    let v = space6(2)?;
    let p = v.coordinate_span([0]);
    let m = v.coordinate_span([0, 1]);
    let pi = v.coordinate_span(0..3);
    let h = v.coordinate_span(0..5);
    let index = SubspaceIndex::new(&v, 3)?;
    let family = Family::from_predicate(&index, |s| {
        let x = v.meet(s, &pi);
        if v.contains(&h, s) {
            v.contains(s, &m) || (x.dim() == 1 && v.contains(&m, &x) && x != p)
        } else {
            x.dim() == 2 && v.contains(&x, &p) && x != m
        }
    })?;
    let cert = indicator_certificate(&family, 2, &[p, m.clone(), pi, h.clone()]).ok();
    let candidates = pplh_triangle_juntas(&v);
    let mut junta = candidates[0].clone();
    for c in candidates {
        if junta_depends(&family, &c)?.depends() {
            junta = c;
            break;
        }
    }
    let family = family.with_name("sporadic-pplh", []);
    Ok(LocalFamily { certified: Certified { family, certificate: cert }, junta, formula_size: 7 + 16 + 32 })
}

/// Candidate 7-sets: `H` and the points on the three sides of a triangle
/// in `Π` with `M` as a side.
pub fn pplh_triangle_juntas(v: &Space) -> Vec<Vec<JuntaVar>> {
    let m = v.coordinate_span([0, 1]);
    let pi = v.coordinate_span(0..3);
    let h = v.coordinate_span(0..5);
    let on_m = v.points(&m);
    let apexes: Vec<Vec<u8>> = v.points(&pi).into_iter().filter(|x| !v.contains_vector(&m, x)).collect();
    let mut out = Vec::new();
    for i in 0..on_m.len() {
        for j in i + 1..on_m.len() {
            for r in &apexes {
                let sides = [m.clone(), v.canonicalize(&[on_m[i].clone(), r.clone()]), v.canonicalize(&[on_m[j].clone(), r.clone()])];
                let mut pts: Vec<Subspace> = Vec::new();
                for s in &sides {
                    for x in v.points(s) {
                        let pt = v.point(&x);
                        if !pts.contains(&pt) {
                            pts.push(pt);
                        }
                    }
                }
                let mut vars: Vec<JuntaVar> = pts.into_iter().map(JuntaVar::Point).collect();
                vars.push(JuntaVar::Hyperplane(h.clone()));
                out.push(vars);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::eval_certificate;

    fn replays(c: &Certified) -> bool {
        eval_certificate(&c.family, c.certificate.as_ref().unwrap()).unwrap().replays()
    }

    #[test]
    fn line_plus_spread_sizes() {
        let f = line_plus_spread(2).unwrap();
        assert_eq!(f.family().size(), 60);
        assert!(f.size_matches_formula());
        assert!(replays(&f.certified));
        assert_eq!(f.junta.len(), 18);
        assert!(junta_depends(f.family(), &f.junta).unwrap().depends());
    }

    #[test]
    fn pph() {
        let f = incident_pph(2).unwrap();
        assert_eq!(f.family().size(), 120);
        assert!(replays(&f.certified));
        assert_eq!(f.junta.len(), 8);
        assert!(junta_depends(f.family(), &f.junta).unwrap().depends());
        let v = space6(2).unwrap();
        let cls = pph_line_classes(&v);
        let lines = SubspaceIndex::new(&v, 2).unwrap();
        let mut counts = [0usize; 8];
        for l in lines.iter() {
            counts[cls(&l)] += 1;
        }
        assert_eq!(counts.iter().sum::<usize>(), 651);
        assert!(counts.iter().all(|&c| c > 0));
    }

    #[test]
    fn line_solid() {
        let a = sporadic_line_solid(LineSolidVariant::Pi12).unwrap();
        assert_eq!(a.family().size(), 75);
        assert!(replays(&a.certified));
        assert!(junta_depends(a.family(), &a.junta).unwrap().depends());
        // the pencil-sum expansion counts planes through M outside C twice
        let v = space6(2).unwrap();
        let idx = SubspaceIndex::new(&v, 3).unwrap();
        let values: Vec<i64> = idx.iter().map(|s| line_solid_expansion(&v, &s)).collect();
        assert!(values.contains(&2));
    }

    #[test]
    fn pplh() {
        let f = sporadic_pplh().unwrap();
        assert_eq!(f.family().size(), 55);
        assert!(replays(&f.certified));
        assert_eq!(f.junta.len(), 7);
    }

    #[test]
    fn pi13_literal_reading_and_completions() {
        let f = sporadic_line_solid(LineSolidVariant::Pi13).unwrap();
        assert_eq!((f.family().size(), f.formula_size), (219, 195));
        assert!(f.certified.certificate.is_none());
        let found = line_solid_completions().unwrap();
        assert_eq!(found.len(), 6);
        for g in &found {
            assert_eq!(g.size(), 195);
            assert!(crate::certify::degree_test(g, 2).unwrap().certified());
            assert!(junta_depends(g, &f.junta).unwrap().depends());
        }
    }
}
