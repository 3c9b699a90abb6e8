use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use gdl_core::certify::*;
use gdl_core::families::builtin_632;
use gdl_core::forms::{plane_type_matrix, solid_type_matrix, type_count_matrix};
use gdl_core::{ClassicalForm, Family, FieldSpec, FormSubtype, Space, TypeTag};
use serde::Serialize;
use serde_json::json;

use crate::analyze::load_family;
use crate::manifest::Outcome;
use crate::Failure;

#[derive(Args, Debug)]
pub struct ReportArgs {
    pub files: Vec<PathBuf>,
    /// Include every built-in family of J_2(6,3).
    #[arg(long)]
    pub builtin: bool,
    /// Emit the plane and solid type matrices and the divisibility table.
    #[arg(long)]
    pub tables: bool,
    /// Render as markdown instead of JSON.
    #[arg(long)]
    pub markdown: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct Entry {
    source: String,
    construction: String,
    n: usize,
    k: usize,
    q: usize,
    size: usize,
    degree1: DegreeStatus,
    degree2: Option<DegreeStatus>,
    divisibility: Vec<(u128, bool)>,
    equitable: Option<[[i64; 2]; 2]>,
    junta_bound: Option<u64>,
}

fn entry(source: String, f: &Family) -> Result<Entry, Failure> {
    let d2 = if f.k() >= 2 { Some(degree_test(f, 2)?.status) } else { None };
    let div = if d2 == Some(DegreeStatus::Certified) {
        let r = divisibility_report(f.n() as u32, f.k() as u32, f.q() as u64, f.size() as u128);
        r.entries.iter().map(|e| (e.modulus, e.satisfied == Some(true))).collect()
    } else {
        Vec::new()
    };
    let bound = junta_cover_bound(f)?;
    Ok(Entry {
        source,
        construction: f.construction.clone(),
        n: f.n(),
        k: f.k(),
        q: f.q(),
        size: f.size(),
        degree1: degree_test(f, 1)?.status,
        degree2: d2,
        divisibility: div,
        equitable: equitable_check(f)?.matrix().map(|m| m.rows()),
        junta_bound: (!bound.trivial).then_some(bound.bound),
    })
}

#[derive(Serialize)]
struct MatrixCheck {
    label: String,
    rows: Vec<(String, [u64; 4], [u64; 4], bool)>,
}

fn plane_matrix(q: u32) -> Result<MatrixCheck, Failure> {
    let v = Space::of(q, 6)?;
    let form = ClassicalForm::quadratic(&v, FormSubtype::Hyperbolic)?;
    let m = type_count_matrix(&form, 3)?;
    let closed = plane_type_matrix(q as u64);
    let rows = m
        .rows
        .iter()
        .map(|r| {
            let TypeTag::Plane(t) = r.tag else { unreachable!("planes classify as planes") };
            let want = closed[t as usize - 1];
            (r.tag.to_string(), r.lines, want, r.lines == want)
        })
        .collect();
    Ok(MatrixCheck { label: format!("plane types, hyperbolic quadric of F_{q}^6"), rows })
}

fn solid_matrix() -> Result<MatrixCheck, Failure> {
    let v = Space::of(2, 8)?;
    let form = ClassicalForm::quadratic(&v, FormSubtype::Elliptic)?;
    let m = type_count_matrix(&form, 4)?;
    let closed = solid_type_matrix(2);
    let rows = m
        .rows
        .iter()
        .map(|r| {
            let TypeTag::Solid(t) = r.tag else { unreachable!("solids classify as solids") };
            let want = closed[t as usize - 1];
            (r.tag.to_string(), r.lines, want, r.lines == want)
        })
        .collect();
    Ok(MatrixCheck { label: "solid types, elliptic quadric of F_2^8".into(), rows })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

fn to_markdown(entries: &[Entry], tables: Option<&(Vec<MatrixCheck>, Vec<DivisibilityEntry>)>) -> String {
    let mut s = String::new();
    if !entries.is_empty() {
        s.push_str("| family | (n,k,q) | size | deg 1 | deg 2 | divisibility | equitable | junta bound |\n");
        s.push_str("|---|---|---|---|---|---|---|---|\n");
        for e in entries {
            let div: Vec<String> = e.divisibility.iter().map(|(m, ok)| format!("{m} {}", mark(*ok))).collect();
            let _ = writeln!(
                s,
                "| {} | ({},{},{}) | {} | {:?} | {} | {} | {} | {} |",
                e.source,
                e.n,
                e.k,
                e.q,
                e.size,
                e.degree1,
                e.degree2.map_or("-".into(), |d| format!("{d:?}")),
                if div.is_empty() { "-".into() } else { div.join(", ") },
                e.equitable.map_or("-".into(), |m| format!("{m:?}")),
                e.junta_bound.map_or("-".into(), |b| b.to_string()),
            );
        }
    }
    if let Some((matrices, table)) = tables {
        for m in matrices {
            let _ = writeln!(s, "\n**{}**\n\n| type | L0 | L1 | L2 | Lq+1 | closed form |\n|---|---|---|---|---|---|", m.label);
            for (tag, got, _, ok) in &m.rows {
                let _ = writeln!(s, "| {tag} | {} | {} | {} | {} | {} |", got[0], got[1], got[2], got[3], mark(*ok));
            }
        }
        s.push_str("\n**divisibility conditions**\n\n| (n,k,q) | design | modulus | stated | agrees |\n|---|---|---|---|---|\n");
        for e in table {
            let stated = if e.multiplier == 1 {
                e.stated_modulus.to_string()
            } else {
                format!("{} |F| ≡ 0 mod {}", e.multiplier, e.stated_modulus)
            };
            let ok = (1..2000).all(|x| e.forms_agree(x));
            let _ = writeln!(s, "| ({},{},{}) | {} | {} | {} | {} |", e.n, e.k, e.q, e.source, e.modulus, stated, mark(ok));
        }
    }
    s
}

pub fn report(a: &ReportArgs) -> Result<Outcome, Failure> {
    let mut entries = Vec::new();
    let mut field: Option<FieldSpec> = None;
    let mut check_field = |f: &Family, src: &str| -> Result<(), Failure> {
        let spec = f.space().field().spec().clone();
        match &field {
            Some(prev) if *prev != spec => {
                Err(Failure::Usage(format!("{src}: field GF({}) differs from GF({}) of earlier inputs", f.q(), prev.order())))
            }
            _ => {
                field = Some(spec);
                Ok(())
            }
        }
    };
    for p in &a.files {
        let (f, _) = load_family(p)?;
        check_field(&f, &p.display().to_string())?;
        entries.push(entry(p.display().to_string(), &f)?);
    }
    if a.builtin {
        for (name, f) in builtin_632()? {
            check_field(&f, &name)?;
            entries.push(entry(name, &f)?);
        }
    }
    let tables = if a.tables {
        Some((vec![plane_matrix(2)?, plane_matrix(3)?, solid_matrix()?], divisibility_table()))
    } else {
        None
    };
    let bad_div = entries.iter().any(|e| e.divisibility.iter().any(|(_, ok)| !ok));
    let bad_table = tables.as_ref().is_some_and(|(m, _)| m.iter().any(|m| m.rows.iter().any(|r| !r.3)));
    let markdown = a.markdown.then(|| to_markdown(&entries, tables.as_ref()));
    let mut out = Outcome::new(json!({
        "families": entries,
        "tables": tables.as_ref().map(|(m, t)| json!({ "type_matrices": m, "divisibility": t })),
    }))
    .fail_if(bad_div, "a certified family violates a divisibility condition")
    .fail_if(bad_table, "a measured type matrix differs from its closed form");
    out.field = field;
    out.markdown = markdown;
    Ok(out)
}
