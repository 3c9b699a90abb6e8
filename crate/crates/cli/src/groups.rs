use std::path::PathBuf;

use clap::Args;
use gdl_core::orbits::*;
use gdl_core::Space;
use serde_json::json;

use crate::manifest::{digest_json, sha256_hex, Outcome};
use crate::Failure;

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Group file: {"field", "n", "generators": [{"matrix", "frob"}]}.
    #[arg(long, conflicts_with = "symplectic")]
    pub group: Option<PathBuf>,
    /// Use the symplectic transvections of F_q^n instead.
    #[arg(long)]
    pub symplectic: bool,
    #[arg(long, requires = "symplectic")]
    pub n: Option<usize>,
    #[arg(long, requires = "symplectic")]
    pub q: Option<u32>,
}

impl GroupArgs {
    pub fn load(&self) -> Result<(Space, Vec<SemilinearMap>), Failure> {
        if self.symplectic {
            let v = Space::of(self.q.unwrap_or(2), self.n.unwrap_or(6))?;
            let gens = symplectic_transvection_generators(&v)?;
            return Ok((v, gens));
        }
        let path = self.group.as_ref().ok_or_else(|| Failure::Usage("give --group FILE or --symplectic".into()))?;
        let text =
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let g: GroupJson =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: not a group file: {e}", path.display())))?;
        Ok(g.to_maps()?)
    }
}

#[derive(Args, Debug)]
pub struct OrbitsArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Dimension of the subspaces acted on.
    #[arg(long)]
    pub m: usize,
    /// Also write the generators as a group file.
    #[arg(long)]
    pub emit_group: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn orbits(a: &OrbitsArgs) -> Result<Outcome, Failure> {
    let (v, gens) = a.group.load()?;
    if let Some(p) = &a.emit_group {
        let text = serde_json::to_string_pretty(&GroupJson::from_maps(&v, &gens)).expect("serializable");
        std::fs::write(p, text + "\n").map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    let d = orbit_decomposition(&v, &gens, a.m)?;
    let least: Vec<usize> = d.orbits.iter().map(|o| o[0]).collect();
    Ok(Outcome::new(json!({
        "n": v.n(), "q": v.q(), "m": a.m, "generators": gens.len(),
        "orbits": d.len(), "sizes": d.sizes(), "profile": d.profile(), "least_members": least,
    }))
    .field(v.field().spec()))
}

#[derive(Args, Debug)]
pub struct BlockArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn block(a: &BlockArgs) -> Result<Outcome, Failure> {
    let (v, gens) = a.group.load()?;
    let r = block_equality_check(&v, &gens, a.d, a.k)?;
    let bad = r.orbits_certified == Some(false);
    Ok(Outcome::new(&r).field(v.field().spec()).fail_if(bad, "orbit indicator failed the degree test under equality"))
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ORBITS)]
    pub max_orbits: usize,
    /// Write each union as a family file into this directory.
    #[arg(long)]
    pub emit: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn search_unions(a: &SearchArgs) -> Result<Outcome, Failure> {
    let (v, gens) = a.group.load()?;
    let orbits = orbit_decomposition(&v, &gens, a.k)?;
    let unions = orbit_union_search(&v, &orbits, a.d, a.max_orbits)?;
    let mut rows = Vec::new();
    for (j, u) in unions.iter().enumerate() {
        let fam = u.family.clone().with_name("orbit-union", [("orbits", json!(u.orbits)), ("d", json!(a.d))]);
        let file = fam.to_json(None);
        if let Some(dir) = &a.emit {
            std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(e.to_string()))?;
            let p = dir.join(format!("union-{}.json", j + 1));
            let text = serde_json::to_string_pretty(&file).expect("serializable");
            std::fs::write(&p, text + "\n").map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
        }
        rows.push(json!({
            "size": u.size, "orbits": u.orbits, "profile": u.profile,
            "bitset_sha256": sha256_hex(&u.family.bitset_bytes()),
        }));
    }
    let mut out = Outcome::new(json!({
        "n": v.n(), "q": v.q(), "d": a.d, "k": a.k,
        "orbit_profile": orbits.profile(), "unions": rows,
    }))
    .field(v.field().spec());
    out.digests.insert("unions".into(), digest_json(&out.result["unions"]));
    Ok(out)
}
