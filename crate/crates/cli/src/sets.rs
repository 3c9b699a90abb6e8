use std::path::PathBuf;

use clap::{Args, Subcommand};
use gdl_core::setdomains::*;
use serde_json::json;

use crate::manifest::Outcome;
use crate::Failure;

#[derive(Args, Debug)]
pub struct CubeArgs {
    /// const0|const1|and<m>|or<m>|xor<m>|table:<m>:<bits>
    pub function: Option<String>,
    /// Classify all degree-2 functions on 4 inputs up to symmetry.
    #[arg(long, conflicts_with = "function")]
    pub classify: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn cube(a: &CubeArgs) -> Result<Outcome, Failure> {
    if a.classify {
        let classes = classify_degree2_small();
        let unnamed = classes.iter().filter(|c| c.name.is_none()).count();
        return Ok(Outcome::new(json!({ "classes": classes.len(), "list": classes }))
            .fail_if(unnamed > 0, format!("{unnamed} classes missing from the known list")));
    }
    let spec = a.function.as_deref().ok_or_else(|| Failure::Usage("give a function or --classify".into()))?;
    let f = CubeFunction::parse(spec)?;
    let coeffs = multilinear_coefficients(&f);
    let terms: Vec<_> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(s, c)| json!({ "monomial": (0..f.arity()).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect::<Vec<_>>(), "coefficient": c }))
        .collect();
    Ok(Outcome::new(json!({
        "function": spec, "arity": f.arity(), "degree": multilinear_degree(&f),
        "size": f.table().iter().filter(|&&b| b).count(), "expansion": terms,
    })))
}

#[derive(Subcommand, Debug)]
pub enum JohnsonCmd {
    /// The size-30 family in J(8,4).
    Example84 {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// k-sets containing one block of {1..n} split into consecutive d-sets.
    Groupwise {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl JohnsonCmd {
    pub fn output(&self) -> Option<&PathBuf> {
        match self {
            JohnsonCmd::Example84 { output } | JohnsonCmd::Groupwise { output, .. } => output.as_ref(),
        }
    }
}

fn analyse(f: &SetFamily) -> Result<serde_json::Value, Failure> {
    let verdicts: Vec<JohnsonVerdict> =
        (1..=2.min(f.k())).map(|d| johnson_degree_test(f, d)).collect::<gdl_core::Result<_>>()?;
    let (relevant, sets) = relevant_coordinates(f);
    let sets: Vec<Vec<usize>> =
        sets.iter().map(|m| (0..f.n()).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()).collect();
    Ok(json!({
        "n": f.n(), "k": f.k(), "size": f.size(), "total": f.total(),
        "degree": verdicts, "equitable": johnson_equitable(f).map(|m| m.rows()),
        "relevant_coordinates": relevant, "relevant_sets": sets,
    }))
}

pub fn johnson(c: &JohnsonCmd) -> Result<Outcome, Failure> {
    match c {
        JohnsonCmd::Example84 { .. } => {
            let ex = johnson_example_84();
            let r = analyse(&ex.family)?;
            let ok = ex.size == 30 && ex.relevant == 5 && r["degree"][1]["certified"] == true;
            Ok(Outcome::new(r).fail_if(!ok, "example does not reproduce"))
        }
        JohnsonCmd::Groupwise { n, d, k, .. } => {
            let f = groupwise_family(*n, *d, *k)?;
            Ok(Outcome::new(analyse(&f)?))
        }
    }
}
