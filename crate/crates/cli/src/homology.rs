use std::path::PathBuf;

use clap::Args;
use finfix::fposet::order_complex;
use finfix::io::bigint_json;
use finfix::zhomology::{self, enumerate_cycles, CylinderRetraction};
use finfix::{ChainComplex, Homology};
use serde_json::{json, Value};

use crate::input::{InputError, Space};
use crate::report::{to_value, Done, Failure, Outcome};
use crate::Ctx;

#[derive(Args)]
pub struct HomologyArgs {
    /// A complex, or a poset whose order complex is used.
    pub file: PathBuf,
    #[arg(long)]
    pub reduced: bool,
    /// List cycles representing a basis of each free part and the torsion.
    #[arg(long)]
    pub with_generators: bool,
    #[arg(long)]
    pub repair: bool,
}

#[derive(Args)]
pub struct LefschetzArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// A simplicial self-map of the space.
    #[arg(long)]
    pub map: PathBuf,
}

#[derive(Args)]
pub struct CyclesArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub norm_bound: u64,
}

#[derive(Args)]
pub struct RetractionArgs {
    #[arg(long)]
    pub complex: PathBuf,
    /// Check the chain map, retraction and norm properties on every simplex.
    #[arg(long)]
    pub check_lemma3: bool,
}

pub fn homology(ctx: &mut Ctx, a: &HomologyArgs) -> Result<Done, Failure> {
    let k = match ctx.inputs.space(&a.file, a.repair)? {
        Space::Complex(k) => k,
        Space::Poset(x) => order_complex(&x),
    };
    let h = Homology::of(&k);
    let cc = h.chain_complex();
    let mut betti = h.betti();
    if a.reduced && !betti.is_empty() {
        betti[0] -= 1;
    }
    let groups: Vec<Value> = h
        .groups()
        .iter()
        .enumerate()
        .map(|(d, g)| {
            let mut v = json!({
                "dim": d,
                "rank": betti[d],
                "torsion": g.torsion.iter().map(bigint_json).collect::<Vec<_>>(),
            });
            if a.with_generators {
                v["generators"] = to_value(&g.generators.iter().map(|c| cc.describe(c)).collect::<Vec<_>>());
                v["torsion_generators"] = to_value(&g.torsion_generators.iter().map(|c| cc.describe(c)).collect::<Vec<_>>());
            }
            v
        })
        .collect();
    let torsion: Vec<Vec<Value>> = h.torsion().iter().map(|t| t.iter().map(bigint_json).collect()).collect();
    let line = format!("betti {betti:?}, torsion {torsion:?}");
    let result = json!({"reduced": a.reduced, "betti": betti, "torsion": torsion, "groups": groups});
    Ok(Done::new(Outcome::Success, result, line))
}

pub fn lefschetz(ctx: &mut Ctx, a: &LefschetzArgs) -> Result<Done, Failure> {
    let k = ctx.inputs.complex(&a.space)?;
    let phi = ctx.inputs.simplicial_map(&a.map)?;
    if !phi.source().same_as(&k) {
        return Err(InputError::new(&a.map, "the map's source is not the given space").into());
    }
    let l = zhomology::lefschetz(&phi).map_err(|e| InputError::new(&a.map, e))?;
    let result = json!({"lefschetz": bigint_json(&l), "nonzero": l != 0.into()});
    Ok(Done::new(Outcome::Success, result, format!("Lefschetz number {l}")))
}

pub fn cycles(ctx: &mut Ctx, a: &CyclesArgs) -> Result<Done, Failure> {
    let k = ctx.inputs.complex(&a.file)?;
    let cc = ChainComplex::of(&k);
    match enumerate_cycles(&cc, a.dim, a.norm_bound, ctx.budget.max_nodes) {
        Ok(cycles) => {
            let list: Vec<Value> =
                cycles.iter().map(|c| json!({"norm": c.norm(), "chain": cc.describe(c)})).collect();
            let line = format!("{} cycles of dimension {} and norm at most {}", list.len(), a.dim, a.norm_bound);
            Ok(Done::new(Outcome::Success, json!({"count": list.len(), "cycles": list}), line))
        }
        Err(e) => Ok(Done::new(Outcome::Inconclusive, json!({"error": e.to_string()}), e.to_string())),
    }
}

pub fn retraction(ctx: &mut Ctx, a: &RetractionArgs) -> Result<Done, Failure> {
    let k = ctx.inputs.complex(&a.complex)?;
    let r = CylinderRetraction::new(&k);
    let kp = r.psi.source();
    let ordering: Vec<&str> = r.order.iter().map(|&v| kp.vertex_name(v)).collect();
    let mut result = json!({
        "ordering": ordering,
        "psi": r.psi.named_assignment(),
        "cylinder_facets": r.cylinder.complex.facets().len(),
        "norms": r.r.norms(),
    });
    if !a.check_lemma3 {
        return Ok(Done::new(Outcome::Success, result, "retraction built"));
    }
    let report = r.check();
    result["check"] = to_value(&report);
    let line = format!("retraction check {}, max norms {:?}", if report.passes() { "passes" } else { "fails" }, report.max_norms);
    Ok(Done::new(Outcome::check(report.passes()), result, line))
}
