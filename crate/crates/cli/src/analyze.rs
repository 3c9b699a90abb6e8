use std::path::{Path, PathBuf};

use clap::Args;
use gdl_core::certify::*;
use gdl_core::forms::type_count_matrix;
use gdl_core::{ClassicalForm, Elem, Family, FamilyJson, FormKind, FormSubtype, Space, SubspaceIndex, WeightCertificate};
use serde_json::json;

use crate::manifest::Outcome;
use crate::Failure;

pub fn load_family(path: &Path) -> Result<(Family, Option<WeightCertificate>), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: FamilyJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: not a family file: {e}", path.display())))?;
    file.to_family().map_err(|e| match e {
        gdl_core::GdlError::Format(m) => Failure::Verification(format!("{}: {m}", path.display())),
        other => other.into(),
    })
}

fn shape(f: &Family) -> serde_json::Value {
    json!({ "n": f.n(), "k": f.k(), "q": f.q(), "construction": f.construction, "size": f.size() })
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Include the solved weights in the output.
    #[arg(long)]
    pub emit_certificate: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn certify(a: &CertifyArgs) -> Result<Outcome, Failure> {
    let (f, stored) = load_family(&a.file)?;
    let verdict = degree_test(&f, a.d)?;
    let stored_status = match &stored {
        Some(c) if c.d == a.d => Some(serde_json::to_value(eval_certificate(&f, c)?).expect("serializable")),
        Some(c) => Some(json!({ "status": "other-degree", "d": c.d })),
        None => None,
    };
    let stored_fails = stored_status.as_ref().is_some_and(|s| s["status"] == "mismatch");
    let weights = if a.emit_certificate { verdict.certificate.as_ref().map(|c| c.to_json()) } else { None };
    let out = Outcome::new(json!({
        "family": shape(&f),
        "verdict": verdict,
        "stored_certificate": stored_status,
        "certificate": weights,
    }))
    .field(f.space().field().spec());
    Ok(out
        .fail_if(!verdict.certified(), format!("family is not of degree {}", a.d))
        .fail_if(stored_fails, "stored certificate does not replay"))
}

#[derive(Args, Debug)]
pub struct FileArgs {
    pub file: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn equitable(a: &FileArgs) -> Result<Outcome, Failure> {
    let (f, _) = load_family(&a.file)?;
    let outcome = equitable_check(&f)?;
    let eig = outcome.matrix().map(|m| {
        let (x, y) = quotient_eigenvalues(&m);
        json!({ "rows": m.rows(), "eigenvalues": [x, y], "in_spectrum": quotient_eigen_check(&m, f.n(), f.k(), f.q()) })
    });
    Ok(Outcome::new(json!({ "family": shape(&f), "outcome": outcome, "quotient": eig })).field(f.space().field().spec()))
}

#[derive(Args, Debug)]
pub struct JuntaArgs {
    pub file: PathBuf,
    /// A point, as comma-separated coordinates.
    #[arg(long = "point")]
    pub points: Vec<String>,
    /// A hyperplane, given by its normal vector.
    #[arg(long = "hyperplane")]
    pub hyperplanes: Vec<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn parse_vector(space: &Space, s: &str) -> Result<Vec<Elem>, Failure> {
    let v: Vec<Elem> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| ()).and_then(|x| space.field().check(x).map_err(|_| ())))
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("bad vector '{s}' over GF({})", space.q())))?;
    if v.len() != space.n() || v.iter().all(|&x| x == 0) {
        return Err(Failure::Usage(format!("vector '{s}' must be nonzero of length {}", space.n())));
    }
    Ok(v)
}

pub fn junta(a: &JuntaArgs) -> Result<Outcome, Failure> {
    let (f, _) = load_family(&a.file)?;
    let v = f.space();
    let bound = junta_cover_bound(&f)?;
    let mut vars = Vec::new();
    for p in &a.points {
        vars.push(JuntaVar::Point(v.point(&parse_vector(v, p)?)));
    }
    for h in &a.hyperplanes {
        vars.push(JuntaVar::Hyperplane(v.dual(&v.point(&parse_vector(v, h)?))));
    }
    let depends = if vars.is_empty() { None } else { Some(junta_depends(&f, &vars)?) };
    let failed = depends.as_ref().is_some_and(|d| !d.depends());
    Ok(Outcome::new(json!({ "family": shape(&f), "cover_bound": bound, "variables": vars.len(), "depends": depends }))
        .field(v.field().spec())
        .fail_if(failed, "family does not depend only on the given variables"))
}

#[derive(Args, Debug)]
pub struct DivisibilityArgs {
    /// Family file; otherwise --n --k --q --size.
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub size: Option<u128>,
    /// Print every encoded condition instead.
    #[arg(long)]
    pub table: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn divisibility(a: &DivisibilityArgs) -> Result<Outcome, Failure> {
    if a.table {
        return Ok(Outcome::new(divisibility_table()));
    }
    let (n, k, q, size) = match &a.file {
        Some(p) => {
            let (f, _) = load_family(p)?;
            (f.n() as u32, f.k() as u32, f.q() as u64, f.size() as u128)
        }
        None => match (a.n, a.k, a.q, a.size) {
            (Some(n), Some(k), Some(q), Some(s)) => (n, k, q, s),
            _ => return Err(Failure::Usage("give a family file or all of --n --k --q --size".into())),
        },
    };
    let r = divisibility_report(n, k, q, size);
    let ok = r.entries.iter().all(|e| e.satisfied != Some(false));
    Ok(Outcome::new(&r).fail_if(!ok, "size violates a divisibility condition"))
}

#[derive(Args, Debug)]
pub struct CoveringArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub q: u32,
    /// Defaults to k^2 (n-k+1).
    #[arg(long)]
    pub budget: Option<usize>,
    /// Repeat with seeds seed..seed+trials and report the success rate.
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn covering(a: &CoveringArgs, seed: u64) -> Result<Outcome, Failure> {
    let v = Space::of(a.q, a.n)?;
    if a.k == 0 || a.n < 2 * a.k {
        return Err(Failure::Usage(format!("covering needs n >= 2k >= 2, got n={}, k={}", a.n, a.k)));
    }
    let budget = a.budget.unwrap_or_else(|| default_budget(a.n, a.k));
    if a.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let r = covering_family_search(&v, a.k, budget, seed)?;
    let ok = r.succeeded();
    let rate = (a.trials > 1)
        .then(|| covering_success_rate(&v, a.k, budget, seed, a.trials))
        .transpose()?
        .map(|hits| json!({ "successes": hits, "trials": a.trials }));
    Ok(Outcome::new(json!({ "n": a.n, "k": a.k, "q": a.q, "budget": budget, "outcome": r, "success_rate": rate }))
        .field(v.field().spec())
        .fail_if(a.trials == 1 && !ok, "sampled family does not cover every k-space"))
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u32,
    /// symplectic, hyperbolic, elliptic or parabolic.
    #[arg(long)]
    pub form: String,
    #[arg(long)]
    pub k: usize,
    /// Also count lines of each type inside each cell (quadrics, k = 3 or 4).
    #[arg(long)]
    pub matrix: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn classify(a: &ClassifyArgs) -> Result<Outcome, Failure> {
    let v = Space::of(a.q, a.n)?;
    let form = if a.form == "symplectic" {
        ClassicalForm::symplectic(&v)?
    } else {
        let st: FormSubtype = a.form.parse()?;
        ClassicalForm::standard(&v, FormKind::Quadratic, st)?
    };
    let tags = form.classify_all(a.k)?;
    let mut counts = std::collections::BTreeMap::new();
    for t in &tags {
        *counts.entry(*t).or_insert(0usize) += 1;
    }
    let counts: Vec<_> = counts.into_iter().map(|(t, c)| json!({ "type": t.to_string(), "count": c })).collect();
    let matrix = if a.matrix { Some(type_count_matrix(&form, a.k)?) } else { None };
    let total = SubspaceIndex::new(&v, a.k)?.len();
    Ok(Outcome::new(json!({ "n": a.n, "k": a.k, "q": a.q, "form": a.form, "total": total, "counts": counts, "matrix": matrix }))
        .field(v.field().spec()))
}
