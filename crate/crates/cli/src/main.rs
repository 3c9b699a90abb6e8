mod analyze;
mod construct;
mod groups;
mod manifest;
mod report;
mod selftest;
mod sets;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gdl_core::enumerate::{enumeration_cap, set_enumeration_cap};
use gdl_core::GdlError;

use manifest::{render, write_output, Outcome, RunManifest};

/// Why a run stopped; each maps to one exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verification(_) => 3,
            Failure::Cap(_) => 4,
        }
    }
    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<GdlError> for Failure {
    fn from(e: GdlError) -> Self {
        match e {
            GdlError::CapExceeded { .. } => Failure::Cap(format!("{e}; raise it with --cap or GDL_CAP")),
            GdlError::Inconsistent(_) | GdlError::NotADesign { .. } | GdlError::Format(_) => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gdl", version, about = "Construct and certify Boolean degree-d families on Grassmann graphs")]
struct Cli {
    /// Largest Grassmannian that may be enumerated.
    #[arg(long, env = "GDL_CAP", global = true)]
    cap: Option<u64>,
    /// Seed for randomized searches.
    #[arg(long, env = "GDL_SEED", global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, env = "GDL_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build a registered family and write it with its certificate.
    Construct(construct::ConstructArgs),
    /// Exact degree test of a family file, replaying any stored certificate.
    Certify(analyze::CertifyArgs),
    /// Quotient matrix of the bipartition a family induces.
    Equitable(analyze::FileArgs),
    /// Cover bound, and dependence on given points and hyperplanes.
    Junta(analyze::JuntaArgs),
    /// Design divisibility conditions on the size of a degree-2 family.
    Divisibility(analyze::DivisibilityArgs),
    /// Randomized covering family of (n-k+1)-spaces.
    Covering(analyze::CoveringArgs),
    /// Count k-spaces by type under a symplectic or quadratic form.
    Classify(analyze::ClassifyArgs),
    /// Orbits of a group on m-spaces.
    Orbits(groups::OrbitsArgs),
    /// Orbit counts on d- and k-spaces.
    Block(groups::BlockArgs),
    /// Unions of k-orbits of degree at most d.
    SearchUnions(groups::SearchArgs),
    /// Multilinear expansion of a hypercube function.
    Cube(sets::CubeArgs),
    /// Families on the Johnson scheme.
    Johnson {
        #[command(subcommand)]
        cmd: sets::JohnsonCmd,
    },
    /// Summary of family files and built-in families.
    Report(report::ReportArgs),
    /// Built-in acceptance checks.
    Selftest {
        #[arg(value_enum, default_value = "quick")]
        scale: selftest::Scale,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Cmd {
    fn output(&self) -> Option<&PathBuf> {
        match self {
            Cmd::Construct(a) => a.output.as_ref(),
            Cmd::Certify(a) => a.output.as_ref(),
            Cmd::Equitable(a) => a.output.as_ref(),
            Cmd::Junta(a) => a.output.as_ref(),
            Cmd::Divisibility(a) => a.output.as_ref(),
            Cmd::Covering(a) => a.output.as_ref(),
            Cmd::Classify(a) => a.output.as_ref(),
            Cmd::Orbits(a) => a.output.as_ref(),
            Cmd::Block(a) => a.output.as_ref(),
            Cmd::SearchUnions(a) => a.output.as_ref(),
            Cmd::Cube(a) => a.output.as_ref(),
            Cmd::Johnson { cmd } => cmd.output(),
            Cmd::Report(a) => a.output.as_ref(),
            Cmd::Selftest { output, .. } => output.as_ref(),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.cmd {
        Cmd::Construct(a) => construct::run(a),
        Cmd::Certify(a) => analyze::certify(a),
        Cmd::Equitable(a) => analyze::equitable(a),
        Cmd::Junta(a) => analyze::junta(a),
        Cmd::Divisibility(a) => analyze::divisibility(a),
        Cmd::Covering(a) => analyze::covering(a, cli.seed),
        Cmd::Classify(a) => analyze::classify(a),
        Cmd::Orbits(a) => groups::orbits(a),
        Cmd::Block(a) => groups::block(a),
        Cmd::SearchUnions(a) => groups::search_unions(a),
        Cmd::Cube(a) => sets::cube(a),
        Cmd::Johnson { cmd } => sets::johnson(cmd),
        Cmd::Report(a) => report::report(a),
        Cmd::Selftest { scale, .. } => selftest::selftest(*scale),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.cap {
        set_enumeration_cap(cap);
    }
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("gdl: cannot set thread count: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("gdl: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    let manifest = RunManifest {
        version: gdl_core::FORMAT_VERSION.to_string(),
        tool: format!("gdl {}", env!("CARGO_PKG_VERSION")),
        args: std::env::args().skip(1).collect(),
        seed: cli.seed,
        field: outcome.field.clone(),
        threads: rayon::current_num_threads(),
        cap: enumeration_cap() as u64,
        wall_time_ms: start.elapsed().as_millis() as u64,
        digests: outcome.digests.clone(),
    };
    let bytes = match &outcome.markdown {
        Some(md) => {
            let mut s = md.clone();
            s.push_str(&format!("\n<!-- manifest: {} -->\n", serde_json::to_string(&manifest).expect("serializable")));
            s.into_bytes()
        }
        None => render(&outcome, &manifest),
    };
    if let Err(f) = write_output(cli.cmd.output().map(PathBuf::as_path), &bytes) {
        eprintln!("gdl: {}", f.message());
        return ExitCode::from(f.code());
    }
    match &outcome.failed {
        Some(what) => {
            eprintln!("gdl: verification failed: {what}");
            ExitCode::from(3)
        }
        None => ExitCode::SUCCESS,
    }
}
