use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Subcommand, ValueEnum};
use finfix::assembly::{
    assemble, assemble_main, build_kun, plan_depths, validate_realizations, verify_kun, DepthMode, DepthPlan, Kun,
    KunPoints, KunReport, Realization, RealizationReport, Target, MATERIALIZATION_LIMIT,
};
use finfix::io::{ComplexFile, PosetFile};
use finfix::{ChainComplex, SimplicialComplex, SimplicialMap, Verdict};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::input::{beside, InputError};
use crate::report::{scrub, to_value, Done, Failure, Outcome};
use crate::spaces::emit;
use crate::Ctx;

#[derive(Subcommand)]
pub enum KunCommand {
    /// Reconstructs the space and writes it with canonical point names.
    Build {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs every check on a poset with canonical point names.
    Verify { file: PathBuf },
}

impl KunCommand {
    pub fn name(&self) -> &'static str {
        match self {
            KunCommand::Build { .. } => "kun build",
            KunCommand::Verify { .. } => "kun verify",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    /// Least depths meeting the mesh bound.
    Bound,
    /// Given depths, each checked exactly.
    Explicit,
    /// Given depths, unchecked.
    Toy,
}

#[derive(Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub complex: PathBuf,
    /// JSON list of `{"k", "M", "map", "class"?}`; paths relative to this
    /// file.
    #[arg(long)]
    pub realizations: PathBuf,
    #[arg(long, value_enum, default_value = "bound")]
    pub mode: ModeArg,
    /// `s_1,…,s_n` for the explicit and toy modes.
    #[arg(long, value_delimiter = ',')]
    pub depths: Vec<u32>,
    /// Connected facet sets examined per exact check.
    #[arg(long, default_value_t = 1_000_000)]
    pub ceiling: u64,
    /// Largest facet count that will be materialized.
    #[arg(long, default_value_t = MATERIALIZATION_LIMIT)]
    pub limit: u64,
}

#[derive(Subcommand)]
pub enum Thm4Command {
    /// Depths, bounds and size forecast.
    Plan(PlanArgs),
    /// Builds the complex, refusing plans above the size limit.
    Build {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Thm4Command {
    pub fn name(&self) -> &'static str {
        match self {
            Thm4Command::Plan(_) => "thm4 plan",
            Thm4Command::Build { .. } => "thm4 build",
        }
    }
}

#[derive(Subcommand)]
pub enum MainCommand {
    /// Builds the finite space, refusing plans above the size limit.
    Build {
        #[command(flatten)]
        plan: PlanArgs,
        /// A Kun space with canonical names; reconstructed if absent.
        #[arg(long)]
        kun: Option<PathBuf>,
        /// Also search for the fixed point property of the result.
        #[arg(long)]
        fpp: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RealizationEntry {
    k: usize,
    #[serde(rename = "M")]
    m: String,
    map: String,
    /// `[[vertex names], coefficient]` terms of a `k`-cycle of `K`.
    #[serde(default)]
    class: Option<Vec<(Vec<String>, i64)>>,
}

fn kun_report_outcome(r: &KunReport) -> Outcome {
    match r.fpp.as_ref().map(|c| c.verdict) {
        Some(Verdict::Inconclusive) => Outcome::Inconclusive,
        _ => Outcome::check(r.passes()),
    }
}

pub fn kun(ctx: &mut Ctx, c: &KunCommand) -> Result<Done, Failure> {
    match c {
        KunCommand::Build { output } => {
            let kun = build_kun(&ctx.budget)
                .map_err(|e| Failure::Refused { result: json!({"error": e.to_string()}), message: e.to_string() })?;
            let result = json!({
                "points": kun.points,
                "origin": kun.origin,
                "f1": kun.f1,
                "f2": kun.f2,
                "candidates_tried": kun.candidates_tried,
                "passes": kun.report.passes(),
                "report": scrub(to_value(&kun.report)),
                "poset": emit(output.as_deref(), &PosetFile::from_poset(&kun.poset))?,
            });
            let line = format!("Kun space with {} points after {} candidates", kun.poset.len(), kun.candidates_tried);
            Ok(Done::new(kun_report_outcome(&kun.report), result, line))
        }
        KunCommand::Verify { file } => {
            let x = ctx.inputs.poset(file, false)?;
            let report = verify_kun(&x, &KunPoints::default(), &ctx.budget);
            let failures = report.failures();
            let line = if failures.is_empty() {
                format!("all {} checks pass", report.checks.len())
            } else {
                format!("failed: {}", failures.join(", "))
            };
            let result = json!({"passes": report.passes(), "report": scrub(to_value(&report))});
            Ok(Done::new(kun_report_outcome(&report), result, line))
        }
    }
}

fn load_realizations(
    ctx: &mut Ctx,
    path: &Path,
    k: &Arc<SimplicialComplex>,
) -> Result<Vec<Realization>, InputError> {
    let entries: Vec<RealizationEntry> = ctx.inputs.json(path)?;
    let cc = ChainComplex::new(k.clone());
    let mut data = Vec::new();
    for (i, e) in entries.into_iter().enumerate() {
        let at = |msg: String| InputError::new(path, format!("realization {i}: {msg}"));
        let m = Arc::new(ctx.inputs.complex(&beside(path, &e.m))?);
        let map_path = beside(path, &e.map);
        let phi = ctx.inputs.simplicial_map(&map_path)?;
        if !phi.source().same_as(&m) {
            return Err(at(format!("the map's source is not {}", e.m)));
        }
        if !phi.target().same_as(k) {
            return Err(at("the map's target is not the given complex".into()));
        }
        // rebind onto the shared complexes so identity checks succeed
        let phi = SimplicialMap::new(m.clone(), k.clone(), phi.assignment().to_vec()).map_err(|e| at(e.to_string()))?;
        let claimed = match e.class {
            None => None,
            Some(terms) => {
                let mut simplices = Vec::new();
                for (names, c) in terms {
                    let s = k.simplex_from_names(&names).map_err(|err| at(err.to_string()))?;
                    simplices.push((s, c));
                }
                Some(cc.chain_of(e.k, simplices).ok_or_else(|| at(format!("class terms must be {}-simplices", e.k)))?)
            }
        };
        let mut r = Realization::new(m, phi);
        r.k = e.k;
        r.claimed = claimed;
        data.push(r);
    }
    Ok(data)
}

fn depth_mode(a: &PlanArgs) -> Result<DepthMode, InputError> {
    match a.mode {
        ModeArg::Bound if a.depths.is_empty() => Ok(DepthMode::Bound),
        ModeArg::Bound => Err(InputError::new("--depths", "depths are chosen by the bound mode itself")),
        ModeArg::Explicit => Ok(DepthMode::Explicit(a.depths.clone())),
        ModeArg::Toy => Ok(DepthMode::Toy(a.depths.clone())),
    }
}

/// Everything a plan needs, with its report.
struct Planned {
    k: Arc<SimplicialComplex>,
    data: Vec<Realization>,
    realizations: RealizationReport,
    plan: DepthPlan,
}

fn plan(ctx: &mut Ctx, a: &PlanArgs, target: Target) -> Result<Planned, Failure> {
    let k = Arc::new(ctx.inputs.complex(&a.complex)?);
    let data = load_realizations(ctx, &a.realizations, &k)?;
    let realizations =
        validate_realizations(&k, &data, &ctx.budget).map_err(|e| InputError::new(&a.realizations, e))?;
    let mode = depth_mode(a)?;
    let plan = plan_depths(&k, &data, &mode, target, a.ceiling).map_err(|e| InputError::new("--depths", e))?;
    Ok(Planned { k, data, realizations, plan })
}

fn plan_json(p: &Planned, limit: u64) -> Value {
    json!({
        "realizations": p.realizations,
        "plan": p.plan,
        "materializable": p.plan.forecast.fits(limit),
        "limit": limit,
    })
}

fn plan_line(p: &DepthPlan) -> String {
    format!(
        "depths {:?}, N = {}, forecast up to {} facets{}",
        p.depths,
        p.big_n,
        p.forecast.total_facets_upper,
        if p.uncertified { " (uncertified)" } else { "" }
    )
}

/// Invalid realizations refute, unfinished checks are inconclusive.
fn plan_outcome(p: &Planned) -> Outcome {
    if !p.realizations.inconclusive.is_empty() || p.plan.inconclusive {
        Outcome::Inconclusive
    } else {
        Outcome::check(p.realizations.valid())
    }
}

fn refuse(result: Value, message: String) -> Failure {
    Failure::Refused { result, message }
}

pub fn thm4(ctx: &mut Ctx, c: &Thm4Command) -> Result<Done, Failure> {
    match c {
        Thm4Command::Plan(a) => {
            let p = plan(ctx, a, Target::FixedSimplex)?;
            Ok(Done::new(plan_outcome(&p), plan_json(&p, a.limit), plan_line(&p.plan)))
        }
        Thm4Command::Build { plan: a, output } => {
            let p = plan(ctx, a, Target::FixedSimplex)?;
            let mut result = plan_json(&p, a.limit);
            if plan_outcome(&p) != Outcome::Success {
                return Err(refuse(result, format!("not building: {}", plan_line(&p.plan))));
            }
            let l = match assemble(&p.k, &p.data, &p.plan, 2, a.limit) {
                Ok(l) => l,
                Err(e) => {
                    result["refused"] = e.to_string().into();
                    return Err(refuse(result, e.to_string()));
                }
            };
            result["build"] = to_value(&l);
            result["complex"] = emit(output.as_deref(), &ComplexFile::from_complex(&l.complex))?;
            let line = format!("L with {} facets, checks {}", l.complex.facets().len(), pass_word(l.passes()));
            Ok(Done::new(Outcome::check(l.passes()), result, line))
        }
    }
}

fn pass_word(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn kun_from(ctx: &mut Ctx, path: Option<&Path>) -> Result<Kun, Failure> {
    let refused = |e: String| refuse(json!({"error": e}), "no usable Kun space".into());
    match path {
        None => build_kun(&ctx.budget).map_err(|e| refused(e.to_string())),
        Some(p) => {
            let x = ctx.inputs.poset(p, false)?;
            let points = KunPoints::default();
            let report = verify_kun(&x, &points, &ctx.budget);
            if !report.passes() {
                return Err(refused(format!("{}: failed {}", p.display(), report.failures().join(", "))));
            }
            let names: BTreeMap<String, String> = x.names().iter().map(|n| (n.clone(), n.clone())).collect();
            Ok(Kun {
                poset: Arc::new(x),
                points,
                origin: names,
                f1: BTreeMap::new(),
                f2: BTreeMap::new(),
                candidates_tried: 0,
                report,
            })
        }
    }
}

pub fn main_thm(ctx: &mut Ctx, c: &MainCommand) -> Result<Done, Failure> {
    let MainCommand::Build { plan: a, kun, fpp, output } = c;
    let p = plan(ctx, a, Target::FixedPoint)?;
    let mut result = plan_json(&p, a.limit);
    if plan_outcome(&p) != Outcome::Success {
        return Err(refuse(result, format!("not building: {}", plan_line(&p.plan))));
    }
    let kun = kun_from(ctx, kun.as_deref())?;
    let budget = ctx.budget;
    let x = match assemble_main(&p.k, &p.data, &p.plan, &kun, a.limit, fpp.then_some(&budget)) {
        Ok(x) => x,
        Err(e) => {
            result["refused"] = e.to_string().into();
            return Err(refuse(result, e.to_string()));
        }
    };
    result["build"] = scrub(to_value(&x));
    result["poset"] = emit(output.as_deref(), &PosetFile::from_poset(&x.poset))?;
    let outcome = match x.fpp.as_ref().map(|c| c.verdict) {
        _ if !x.passes() => Outcome::Refuted,
        Some(v) => Outcome::of(v),
        None => Outcome::Success,
    };
    let line = format!("X with {} points and {} Kun blocks, checks {}", x.points, x.blocks.len(), pass_word(x.passes()));
    Ok(Done::new(outcome, result, line))
}
