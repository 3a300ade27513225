use std::path::{Path, PathBuf};

use clap::Args;
use finfix::fposet;
use finfix::io::{ComplexFile, MapFile, PosetFile};
use finfix::scomplex::{mapping_cylinder_named, CylinderNaming};
use finfix::{FinitePoset, SimplicialComplex};
use serde_json::{json, Value};

use crate::input::{beside, write_json, InputError, Space};
use crate::report::{Done, Failure, Outcome};
use crate::Ctx;

#[derive(Args)]
pub struct FileArgs {
    pub file: PathBuf,
    /// Drop covers implied by transitivity instead of rejecting them.
    #[arg(long)]
    pub repair: bool,
}

#[derive(Args)]
pub struct ConvertArgs {
    pub file: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub repair: bool,
}

#[derive(Args)]
pub struct ValidateArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub repair: bool,
    /// Write the canonical form here.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct SubdivideArgs {
    pub file: PathBuf,
    /// Number of barycentric subdivisions.
    #[arg(long, default_value_t = 1)]
    pub times: u32,
    /// Star one simplex instead, given as comma separated vertex names.
    #[arg(long, conflicts_with = "times")]
    pub stellar: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct CylinderArgs {
    /// Map file `{"source", "target", "assign"}`.
    #[arg(long)]
    pub map: PathBuf,
    /// Source vertex order, comma separated; lexicographic by default.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long, default_value = "s:")]
    pub source_tag: String,
    #[arg(long, default_value = "t:")]
    pub target_tag: String,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct MapArgs {
    #[arg(long)]
    pub map: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Writes `value` to `output` if given; otherwise it goes into the report.
pub fn emit<T: serde::Serialize>(output: Option<&Path>, value: &T) -> Result<Value, InputError> {
    match output {
        Some(p) => Ok(json!({"written": p.display().to_string(), "sha256": write_json(p, value)?})),
        None => Ok(serde_json::to_value(value).expect("files serialize")),
    }
}

pub fn complex_summary(k: &SimplicialComplex) -> Value {
    let pm = k.pseudomanifold_check();
    json!({
        "vertices": k.vertex_count(),
        "facets": k.facets().len(),
        "dim": k.dim(),
        "f_vector": k.f_vector(),
        "euler_characteristic": k.euler_characteristic(),
        "pure": k.is_pure(),
        "closed_pseudomanifold": pm.is_closed_pseudomanifold(),
        "orientable": pm.orientable,
    })
}

pub fn poset_summary(x: &FinitePoset) -> Value {
    json!({"points": x.len(), "covers": x.covers().len(), "height": x.height()})
}

pub fn validate(ctx: &mut Ctx, a: &ValidateArgs) -> Result<Done, Failure> {
    let v: Value = ctx.inputs.json(&a.file)?;
    if v.get("assign").is_some() {
        let f: MapFile = serde_json::from_value(v).map_err(|e| InputError::new(&a.file, e))?;
        let src: Value = ctx.inputs.json(&beside(&a.file, &f.source))?;
        let (kind, assign) = if src.get("points").is_some() {
            ("monotone_map", ctx.inputs.monotone_map(&a.file)?.named_assignment())
        } else {
            ("simplicial_map", ctx.inputs.simplicial_map(&a.file)?.named_assignment())
        };
        let canonical = MapFile { assign, ..f };
        let out = emit(a.output.as_deref(), &canonical)?;
        return Ok(Done::new(Outcome::Success, json!({"kind": kind, "canonical": out}), format!("valid {kind}")));
    }
    let (summary, out, kind) = match ctx.inputs.space(&a.file, a.repair)? {
        Space::Complex(k) => (complex_summary(&k), emit(a.output.as_deref(), &ComplexFile::from_complex(&k))?, "complex"),
        Space::Poset(x) => (poset_summary(&x), emit(a.output.as_deref(), &PosetFile::from_poset(&x))?, "poset"),
    };
    let line = format!("valid {kind}: {summary}");
    Ok(Done::new(Outcome::Success, json!({"kind": kind, "summary": summary, "canonical": out}), line))
}

pub fn subdivide(ctx: &mut Ctx, a: &SubdivideArgs) -> Result<Done, Failure> {
    let k = ctx.inputs.complex(&a.file)?;
    let (sub, extra) = match &a.stellar {
        Some(names) => {
            let names: Vec<&str> = names.split(',').map(str::trim).collect();
            let s = k.simplex_from_names(&names).map_err(|e| InputError::new(&a.file, e))?;
            let st = k.stellar_subdivide(&s).map_err(|e| InputError::new(&a.file, e))?;
            (st.complex, json!({"new_vertex": st.new_vertex, "starred": st.starred}))
        }
        None => (k.barycentric_iterated(a.times), json!({"times": a.times})),
    };
    let summary = complex_summary(&sub);
    let out = emit(a.output.as_deref(), &ComplexFile::from_complex(&sub))?;
    let line = format!("subdivision with {} facets", sub.facets().len());
    Ok(Done::new(Outcome::Success, json!({"subdivision": extra, "summary": summary, "complex": out}), line))
}

pub fn face_poset(ctx: &mut Ctx, a: &ConvertArgs) -> Result<Done, Failure> {
    let k = ctx.inputs.complex(&a.file)?;
    let x = fposet::face_poset(&k);
    let summary = poset_summary(&x);
    let out = emit(a.output.as_deref(), &PosetFile::from_poset(&x))?;
    Ok(Done::new(Outcome::Success, json!({"summary": summary, "poset": out}), format!("face poset with {} points", x.len())))
}

pub fn order_complex(ctx: &mut Ctx, a: &ConvertArgs) -> Result<Done, Failure> {
    let x = ctx.inputs.poset(&a.file, a.repair)?;
    let k = fposet::order_complex(&x);
    let summary = complex_summary(&k);
    let out = emit(a.output.as_deref(), &ComplexFile::from_complex(&k))?;
    let line = format!("order complex with {} facets", k.facets().len());
    Ok(Done::new(Outcome::Success, json!({"summary": summary, "complex": out}), line))
}

pub fn cylinder(ctx: &mut Ctx, a: &CylinderArgs) -> Result<Done, Failure> {
    let phi = ctx.inputs.simplicial_map(&a.map)?;
    let src = phi.source();
    let order = match &a.order {
        Some(list) => list
            .split(',')
            .map(|n| src.vertex_id(n.trim()).ok_or_else(|| InputError::new(&a.map, format!("--order: unknown vertex {n:?}"))))
            .collect::<Result<Vec<_>, _>>()?,
        None => (0..src.vertex_count() as u32).collect(),
    };
    let naming = CylinderNaming { source_tag: a.source_tag.clone(), target_tag: a.target_tag.clone() };
    let z = mapping_cylinder_named(&phi, &order, &naming).map_err(|e| InputError::new(&a.map, e))?;
    let summary = complex_summary(&z.complex);
    let out = emit(a.output.as_deref(), &ComplexFile::from_complex(&z.complex))?;
    let line = format!("mapping cylinder with {} facets", z.complex.facets().len());
    Ok(Done::new(Outcome::Success, json!({"summary": summary, "complex": out}), line))
}

pub fn nh_cylinder(ctx: &mut Ctx, a: &MapArgs) -> Result<Done, Failure> {
    let f = ctx.inputs.monotone_map(&a.map)?;
    let b = fposet::nh_cylinder(&f);
    let summary = poset_summary(&b.poset);
    let out = emit(a.output.as_deref(), &PosetFile::from_poset(&b.poset))?;
    let line = format!("non-Hausdorff cylinder with {} points", b.poset.len());
    Ok(Done::new(Outcome::Success, json!({"summary": summary, "poset": out}), line))
}

pub fn core(ctx: &mut Ctx, a: &ConvertArgs) -> Result<Done, Failure> {
    let x = ctx.inputs.poset(&a.file, a.repair)?;
    let (c, removed) = x.core_with_trace();
    let removed: Vec<&str> = removed.iter().map(|&p| x.name(p)).collect();
    let out = emit(a.output.as_deref(), &PosetFile::from_poset(&c))?;
    let result = json!({
        "points": c.len(),
        "removed": removed,
        "contractible": c.len() == 1,
        "core": out,
    });
    Ok(Done::new(Outcome::Success, result, format!("core with {} of {} points", x.len() - removed.len(), x.len())))
}

pub fn weak_points(ctx: &mut Ctx, a: &FileArgs) -> Result<Done, Failure> {
    let x = ctx.inputs.poset(&a.file, a.repair)?;
    let beat: Vec<&str> = x.beat_points().iter().map(|&p| x.name(p)).collect();
    let weak: Vec<&str> = x.weak_points().iter().map(|&p| x.name(p)).collect();
    let line = format!("{} weak points, {} beat points", weak.len(), beat.len());
    Ok(Done::new(Outcome::Success, json!({"weak_points": weak, "beat_points": beat}), line))
}
