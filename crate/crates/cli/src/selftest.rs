use clap::ValueEnum;
use gdl_core::certify::*;
use gdl_core::families::*;
use gdl_core::forms::{plane_type_matrix, solid_type_matrix, type_count_matrix};
use gdl_core::orbits::*;
use gdl_core::{ClassicalForm, FormSubtype, Result, Space, SubspaceIndex, TypeTag};
use serde_json::json;

use crate::manifest::Outcome;
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Quick,
    Full,
}

type Check = (&'static str, fn() -> Result<bool>);

fn replays(c: &Certified) -> Result<bool> {
    Ok(match &c.certificate {
        Some(w) => eval_certificate(&c.family, w)?.replays(),
        None => false,
    })
}

fn plane_matrix_matches(q: u32) -> Result<bool> {
    let v = Space::of(q, 6)?;
    let m = type_count_matrix(&ClassicalForm::quadratic(&v, FormSubtype::Hyperbolic)?, 3)?;
    let closed = plane_type_matrix(q as u64);
    Ok(m.rows.len() == 5 && m.rows.iter().all(|r| matches!(r.tag, TypeTag::Plane(t) if closed[t as usize - 1] == r.lines)))
}

fn sizes_divisible(families: &[gdl_core::Family], modulus: u128) -> Result<bool> {
    for f in families {
        if !degree_test(f, 2)?.certified() {
            return Ok(false);
        }
        let r = divisibility_report(f.n() as u32, f.k() as u32, f.q() as u64, f.size() as u128);
        if r.entries.first().map(|e| e.modulus) != Some(modulus) || !r.all_satisfied() {
            return Ok(false);
        }
    }
    Ok(true)
}

const QUICK: &[Check] = &[
    ("symplectic Pi1 has 135 planes and its certificate replays", || {
        let c = symplectic_planes(&Space::of(2, 6)?, SymplecticWhich::Isotropic)?;
        Ok(c.family.size() == 135 && replays(&c)?)
    }),
    ("symplectic Pi1 is equitable with quotient ((14,84),(9,89))", || {
        let c = symplectic_planes(&Space::of(2, 6)?, SymplecticWhich::Isotropic)?;
        Ok(equitable_check(&c.family)?.matrix().map(|m| m.rows()) == Some([[14, 84], [9, 89]]))
    }),
    ("quadric f1 and f2 certificates replay at (6,3,2)", || {
        let v = Space::of(2, 6)?;
        for st in [FormSubtype::Hyperbolic, FormSubtype::Elliptic] {
            for w in [QuadricWhich::F1, QuadricWhich::F2] {
                if !replays(&quadric_planes(&v, st, w)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }),
    ("plane type matrix at q = 2 matches its closed form", || plane_matrix_matches(2)),
    ("built-in families are degree 2 with sizes divisible by 5", || {
        let fams: Vec<_> = builtin_632()?.into_iter().map(|(_, f)| f).collect();
        sizes_divisible(&fams, 5)
    }),
    ("complements of built-in families are degree 2", || {
        for (_, f) in builtin_632()? {
            if !degree_test(&f.complement(), 2)?.certified() {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("restriction and quotient keep built-in families degree 2", || {
        let v = Space::of(2, 6)?;
        let h = v.coordinate_span(0..5);
        for (_, f) in builtin_632()? {
            let first = f.index()?.unrank(f.members().next().expect("nonempty"));
            let p = v.point(first.row(0));
            if !degree_test(&restrict_family(&f, &h)?, 2)?.certified()
                || !degree_test(&quotient_family(&f, &p)?, 2)?.certified()
            {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("local families have sizes 60, 120, 75, 55 and depend on their juntas", || {
        let fams = [line_plus_spread(2)?, incident_pph(2)?, sporadic_line_solid(LineSolidVariant::Pi12)?, sporadic_pplh()?];
        let sizes: Vec<usize> = fams.iter().map(|f| f.family().size()).collect();
        if sizes != [60, 120, 75, 55] {
            return Ok(false);
        }
        for f in &fams {
            if !junta_depends(f.family(), &f.junta)?.depends() || degree_test(f.family(), 1)?.certified() {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("Sp(6,2) has 1/2/2 orbits, s = t = 2, and unions {Pi1, Pi2}", || {
        let v = Space::of(2, 6)?;
        let gens = symplectic_transvection_generators(&v)?;
        let counts: Vec<usize> =
            (1..=3).map(|m| orbit_decomposition(&v, &gens, m).map(|d| d.len())).collect::<Result<_>>()?;
        let b = block_equality_check(&v, &gens, 2, 3)?;
        let unions = orbit_union_search(&v, &orbit_decomposition(&v, &gens, 3)?, 2, DEFAULT_MAX_ORBITS)?;
        let sizes: Vec<usize> = unions.iter().map(|u| u.size).collect();
        Ok(counts == [1, 2, 2] && (b.s, b.t) == (2, 2) && sizes == [135, 1260])
    }),
    ("rank and unrank are inverse on J_2(6,3)", || {
        let idx = SubspaceIndex::new(&Space::of(2, 6)?, 3)?;
        Ok(idx.len() == 1395 && (0..idx.len()).all(|i| idx.rank(&idx.unrank(i)) == i))
    }),
];

const FULL: &[Check] = &[
    ("plane type matrix at q = 3 matches its closed form", || plane_matrix_matches(3)),
    ("degree-2 families at (6,3,3) have sizes divisible by 10", || {
        let v = Space::of(3, 6)?;
        let fams = [
            symplectic_planes(&v, SymplecticWhich::Isotropic)?.family,
            quadric_planes(&v, FormSubtype::Hyperbolic, QuadricWhich::F1)?.family,
            quadric_planes(&v, FormSubtype::Elliptic, QuadricWhich::F1)?.family,
            line_plus_spread(3)?.certified.family,
        ];
        sizes_divisible(&fams, 10)
    }),
    ("elliptic solids: 23715 members, replay over J_2(8,4), divisible by 93", || {
        let c = elliptic_solids(2)?;
        Ok(c.family.size() == 23715 && replays(&c)? && sizes_divisible(&[c.family], 93)?)
    }),
    ("solid type matrix at q = 2 matches its closed form", || {
        let v = Space::of(2, 8)?;
        let m = type_count_matrix(&ClassicalForm::quadratic(&v, FormSubtype::Elliptic)?, 4)?;
        let closed = solid_type_matrix(2);
        Ok(m.rows.len() == 6 && m.rows.iter().all(|r| matches!(r.tag, TypeTag::Solid(t) if closed[t as usize - 1] == r.lines)))
    }),
];

pub fn selftest(scale: Scale) -> std::result::Result<Outcome, Failure> {
    let mut checks: Vec<&Check> = QUICK.iter().collect();
    if scale == Scale::Full {
        checks.extend(FULL.iter());
    }
    let mut done = Vec::new();
    let mut failed = None;
    for (name, run) in checks {
        let ok = run()?;
        done.push(json!({ "check": name, "passed": ok }));
        if !ok {
            failed = Some(*name);
            break;
        }
    }
    let scale = if scale == Scale::Quick { "quick" } else { "full" };
    let passed = failed.is_none();
    let out = Outcome::new(json!({ "scale": scale, "passed": passed, "checks": done }));
    Ok(match failed {
        Some(name) => out.fail_if(true, format!("selftest failed: {name}")),
        None => out,
    })
}
