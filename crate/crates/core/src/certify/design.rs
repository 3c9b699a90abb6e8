//! Design orthogonality and the divisibility conditions it implies.
//!
//! If `D` is a `d`-design and `F` has degree `d`, then
//! `|F ∩ D| = |F| |D| / Gauss(n,k)`, so `Gauss(n,k) / gcd(Gauss(n,k), |D|)`
//! divides `|F|`. Every known design below yields such a modulus; the
//! modulus is derived from the design size and compared with the stated
//! (multiplier, modulus) form.

use num_integer::Integer;
use serde::Serialize;

use super::degree::degree_test;
use crate::error::{GdlError, Result};
use crate::family::Family;
use crate::gauss::{gaussian_binomial, q_int};
use crate::grassmann::SubspaceLattice;
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OrthogonalityOutcome {
    Holds { intersection: usize, lambda: u64 },
    Violated { intersection: usize, expected: String },
    /// The family is not certified at degree `d`, so nothing is asserted.
    Refused { reason: String },
}

/// Number of members containing each `d`-space.
fn design_lambda(design: &Family, d: usize) -> Result<u64> {
    let lattice = SubspaceLattice::new(design.space(), design.k(), d)?;
    let index = design.index()?;
    let mut counts = vec![0u64; lattice.d_index().len()];
    let mut ranks = Vec::new();
    for i in design.members() {
        lattice.ranks_into(&index.unrank(i), &mut ranks);
        for &r in &ranks {
            counts[r] += 1;
        }
    }
    let lambda = counts[0];
    if let Some(bad) = counts.iter().position(|&c| c != lambda) {
        return Err(GdlError::NotADesign { d, index: bad, count: counts[bad], expected: lambda });
    }
    Ok(lambda)
}

/// Checks `|F ∩ D| = |F| |D| / Gauss(n,k)` for a `d`-design `D` and a family
/// certified at degree `d`. Each of `translates` must be a design with the
/// same intersection size.
pub fn design_orthogonality_check(
    family: &Family,
    design: &Family,
    d: usize,
    translates: &[Family],
) -> Result<OrthogonalityOutcome> {
    let lambda = design_lambda(design, d)?;
    let verdict = degree_test(family, d)?;
    if !verdict.certified() {
        return Ok(OrthogonalityOutcome::Refused {
            reason: format!("family is not of degree {d}; the identity is only guaranteed for degree-{d} families"),
        });
    }
    let inter = family.intersection(design)?.size();
    let expected = Rational::new((family.size() * design.size()).into(), family.total().into());
    if Rational::from_integer(inter.into()) != expected {
        return Ok(OrthogonalityOutcome::Violated {
            intersection: inter,
            expected: crate::linalg::format_rational(&expected),
        });
    }
    for t in translates {
        design_lambda(t, d)?;
        let x = family.intersection(t)?.size();
        if x != inter {
            return Ok(OrthogonalityOutcome::Violated {
                intersection: x,
                expected: crate::linalg::format_rational(&expected),
            });
        }
    }
    Ok(OrthogonalityOutcome::Holds { intersection: inter, lambda })
}

/// JSON numbers above `u64::MAX` are written as decimal strings.
fn wide<S: serde::Serializer>(x: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(*x) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

/// One known 2-design and the condition it imposes on degree-2 families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityEntry {
    pub n: u32,
    pub k: u32,
    pub q: u64,
    #[serde(serialize_with = "wide")]
    pub lambda: u128,
    #[serde(serialize_with = "wide")]
    pub design_size: u128,
    /// `|F|` must be divisible by this, derived from the design size.
    #[serde(serialize_with = "wide")]
    pub modulus: u128,
    /// Stated form: `multiplier * |F|` divisible by `stated_modulus`.
    #[serde(serialize_with = "wide")]
    pub multiplier: u128,
    #[serde(serialize_with = "wide")]
    pub stated_modulus: u128,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<bool>,
}

impl DivisibilityEntry {
    fn new(n: u32, k: u32, q: u64, lambda: u128, multiplier: u128, stated: u128, source: String) -> Self {
        let total = gaussian_binomial(n, k, q);
        let pairs = gaussian_binomial(n, 2, q);
        let per = gaussian_binomial(k, 2, q);
        let design_size = lambda * pairs / per;
        debug_assert_eq!(lambda * pairs % per, 0);
        let modulus = total / total.gcd(&design_size);
        DivisibilityEntry { n, k, q, lambda, design_size, modulus, multiplier, stated_modulus: stated, source, satisfied: None }
    }

    /// Whether the stated and the derived conditions agree on `size`.
    pub fn forms_agree(&self, size: u128) -> bool {
        (size % self.modulus == 0) == ((self.multiplier * size) % self.stated_modulus == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub n: u32,
    pub k: u32,
    pub q: u64,
    #[serde(serialize_with = "wide")]
    pub size: u128,
    pub entries: Vec<DivisibilityEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DivisibilityReport {
    pub fn all_satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.satisfied == Some(true))
    }
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Known 2-designs for `(n, k, q)`, with the conditions they give.
fn conditions(n: u32, k: u32, q: u64) -> Vec<DivisibilityEntry> {
    let mut out = Vec::new();
    let qi = |m| q_int(m, q);
    // (q, parameter, stated modulus)
    let small: &[(u32, u32, &[(u64, u128, u128)])] = &[
        (6, 3, &[(2, 1, 5), (3, 3, 10), (4, 2, 17), (5, 13, 2)]),
        (7, 3, &[(2, 3, 31), (3, 5, 121), (4, 21, 341), (5, 31, 781)]),
        (8, 4, &[(2, 7, 93), (3, 455, 121), (4, 5733, 341), (5, 20181, 781)]),
    ];
    for &(nn, kk, rows) in small {
        if (nn, kk) != (n, k) {
            continue;
        }
        for &(qq, c, stated) in rows {
            if qq != q {
                continue;
            }
            let (lambda, what) = match (n, k) {
                (6, 3) => (c * (q as u128 + 1), format!("2-(6,3,{}({}+1))_{q}", c, q)),
                (7, 3) => (c, format!("2-(7,3,{c})_{q}")),
                _ => (c * qi(3), format!("2-(8,4,{c}*[3])_{q}")),
            };
            out.push(DivisibilityEntry::new(n, k, q, lambda, 1, stated, format!("{what} design")));
        }
    }
    if k == 3 && is_prime(q) && n >= 7 && n.gcd(&24) == 1 {
        let lambda = qi(3);
        let m = (q as u128).pow(n - 2) - 1;
        let src = format!("2-({n},3,q^2+q+1)_{q} design (Suzuki)");
        out.push(DivisibilityEntry::new(n, 3, q, lambda, q as u128 * q as u128 * q as u128 - 1, m, src));
    }
    if k == 3 && q == 2 {
        let m = (1u128 << (n - 2)) - 1;
        let binary: &[(u32, &[u128])] = &[(8, &[42, 312]), (9, &[42]), (10, &[210]), (13, &[42])];
        for &(base, lambdas) in binary {
            if n % base == 0 && n / base >= 3 {
                for &c in lambdas {
                    let src = format!("2-({n},3,{c})_2 design ({base}m family)");
                    out.push(DivisibilityEntry::new(n, 3, 2, c, c, m, src));
                }
            }
        }
    }
    out
}

/// Divisibility conditions on the size of a degree-2 family in `J_q(n,k)`.
pub fn divisibility_report(n: u32, k: u32, q: u64, size: u128) -> DivisibilityReport {
    let mut entries = conditions(n, k, q);
    for e in entries.iter_mut() {
        e.satisfied = Some(size % e.modulus == 0);
    }
    let note = entries.is_empty().then(|| "no known condition".to_string());
    DivisibilityReport { n, k, q, size, entries, note }
}

/// Every encoded condition: the small-parameter tables for `q = 2..5`, the
/// Suzuki family at `n = 11`, and the binary families at `m = 3`.
pub fn divisibility_table() -> Vec<DivisibilityEntry> {
    let mut out = Vec::new();
    for (n, k) in [(6, 3), (7, 3), (8, 4)] {
        for q in 2..=5 {
            out.extend(conditions(n, k, q).into_iter().filter(|e| e.multiplier == 1));
        }
    }
    for q in [2, 3, 5, 7] {
        out.extend(conditions(11, 3, q).into_iter().filter(|e| e.source.contains("Suzuki")));
    }
    for n in [24, 27, 30, 39] {
        out.extend(conditions(n, 3, 2).into_iter().filter(|e| !e.source.contains("Suzuki")));
    }
    out
}
