use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, ValueEnum};
use finfix::fixtest::{
    asymmetrize as make_asymmetric, complex_automorphisms, fpp_check, fsp_check, fsp_decomposition, grow_asymmetric,
    poset_automorphisms, AsymmetrizeError, AutomorphismGroup,
};
use finfix::io::{ComplexFile, MapFile};
use finfix::Verdict;
use serde_json::{json, Value};

use crate::input::{InputError, Space};
use crate::report::{scrub, to_value, Done, Failure, Outcome};
use crate::spaces::{complex_summary, emit};
use crate::Ctx;

/// Automorphisms listed in full before the list is cut short.
const LISTED_AUTOMORPHISMS: usize = 100;

#[derive(Args)]
pub struct AsymmetrizeArgs {
    pub file: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Fail (exit 1) unless the certificate is valid.
    #[arg(long)]
    pub certify: bool,
    /// Keep starring until the result has exactly this many facets.
    #[arg(long)]
    pub facets: Option<usize>,
    /// Write the approximation to the identity, onto the input, here.
    #[arg(long, requires = "output")]
    pub map_output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FspMethod {
    /// Search, then the decomposition certificate if the search runs out.
    Auto,
    Search,
    Decomposition,
}

#[derive(Args)]
pub struct FspArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub witness: bool,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: FspMethod,
}

#[derive(Args)]
pub struct FppArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub witness: bool,
    #[arg(long)]
    pub repair: bool,
}

fn group_json(g: &AutomorphismGroup, name: impl Fn(u32) -> String) -> Value {
    let maps: Vec<Value> = g
        .perms
        .iter()
        .take(LISTED_AUTOMORPHISMS)
        .map(|p| to_value(&(0..p.len()).map(|v| (name(v as u32), name(p[v]))).collect::<std::collections::BTreeMap<_, _>>()))
        .collect();
    json!({
        "order": g.order(),
        "fixed": g.fixed_points().into_iter().map(&name).collect::<Vec<_>>(),
        "automorphisms": maps,
        "truncated": g.order() > LISTED_AUTOMORPHISMS,
    })
}

pub fn aut(ctx: &mut Ctx, a: &crate::spaces::FileArgs) -> Result<Done, Failure> {
    let found = match ctx.inputs.space(&a.file, a.repair)? {
        Space::Complex(k) => complex_automorphisms(&k, &ctx.budget).map(|g| group_json(&g, |v| k.vertex_name(v).into())),
        Space::Poset(x) => poset_automorphisms(&x, &ctx.budget).map(|g| group_json(&g, |p| x.name(p).into())),
    };
    Ok(match found {
        Ok(v) => {
            let line = format!("automorphism group of order {}", v["order"]);
            Done::new(Outcome::Success, v, line)
        }
        Err(e) => Done::new(Outcome::Inconclusive, json!({"error": e.to_string()}), e.to_string()),
    })
}

/// `file` as seen from the directory of `from`.
fn relative_path(from: &Path, file: &Path) -> String {
    let dir = |p: &Path| p.parent().map(Path::to_path_buf).unwrap_or_default();
    if dir(from) == dir(file) {
        if let Some(name) = file.file_name() {
            return name.to_string_lossy().into_owned();
        }
    }
    std::fs::canonicalize(file).unwrap_or_else(|_| file.to_path_buf()).display().to_string()
}

pub fn asymmetrize(ctx: &mut Ctx, a: &AsymmetrizeArgs) -> Result<Done, Failure> {
    let m = ctx.inputs.complex(&a.file)?;
    let built = make_asymmetric(&m, &ctx.budget).and_then(|l| match a.facets {
        Some(f) => grow_asymmetric(&l, f, &ctx.budget),
        None => Ok(l),
    });
    let l = match built {
        Ok(l) => l,
        Err(e @ AsymmetrizeError::Budget(_)) => {
            return Ok(Done::new(Outcome::Inconclusive, json!({"error": e.to_string()}), e.to_string()));
        }
        Err(e @ (AsymmetrizeError::Stalled { .. } | AsymmetrizeError::Unreachable { .. })) => {
            return Err(Failure::Refused { result: json!({"error": e.to_string()}), message: e.to_string() });
        }
        Err(e) => return Err(InputError::new(&a.file, e).into()),
    };
    let n = l.complex.dim().max(0) as usize;
    let valid = l.certificate.valid(n);
    let mut result = json!({
        "summary": complex_summary(&l.complex),
        "v0": l.certificate.v0,
        "certificate": scrub(to_value(&l.certificate)),
        "valid": valid,
        "complex": emit(a.output.as_deref(), &ComplexFile::from_complex(&l.complex))?,
    });
    if let (Some(out), Some(map_out)) = (&a.output, &a.map_output) {
        let phi = l.approximation(Arc::new(m)).map_err(|e| InputError::new(&a.file, e))?;
        let file =
            MapFile { source: relative_path(map_out, out), target: relative_path(map_out, &a.file), assign: phi.named_assignment() };
        result["map"] = emit(Some(map_out), &file)?;
    }
    let line = format!(
        "asymmetric subdivision with {} facets, v0 = {}, degree gap {:?}, certificate {}",
        l.complex.facets().len(),
        l.certificate.v0,
        l.certificate.degree_gap,
        if valid { "valid" } else { "invalid" }
    );
    Ok(Done::new(if a.certify { Outcome::check(valid) } else { Outcome::Success }, result, line))
}

pub fn fsp(ctx: &mut Ctx, a: &FspArgs) -> Result<Done, Failure> {
    let k = ctx.inputs.complex(&a.file)?;
    let search = (a.method != FspMethod::Decomposition).then(|| fsp_check(&k, &ctx.budget));
    let fallback = match (&search, a.method) {
        (_, FspMethod::Decomposition) => true,
        (Some(c), FspMethod::Auto) => c.verdict == Verdict::Inconclusive,
        _ => false,
    };
    let decomposition = fallback.then(|| fsp_decomposition(&k, &ctx.budget));
    let verdict = decomposition.as_ref().or(search.as_ref()).expect("one method always runs").verdict;
    let mut done = match (&search, &decomposition) {
        (Some(s), None) => Done::certificate(s, a.witness, "fixed simplex property"),
        (_, Some(d)) => Done::certificate(d, false, "fixed simplex property by decomposition"),
        (None, None) => unreachable!("one method always runs"),
    };
    let mut evidence = json!({});
    if let Some(s) = &search {
        evidence["search"] = scrub(to_value(s));
    }
    if let Some(d) = &decomposition {
        evidence["decomposition"] = scrub(to_value(d));
    }
    done.stats.insert("certificates".into(), evidence);
    done.result = verdict_word(verdict, "FSP").into();
    Ok(done)
}

fn verdict_word(v: Verdict, property: &str) -> String {
    match v {
        Verdict::Holds => property.to_string(),
        Verdict::Refuted => format!("not {property}"),
        Verdict::Inconclusive => "inconclusive".to_string(),
    }
}

pub fn fpp(ctx: &mut Ctx, a: &FppArgs) -> Result<Done, Failure> {
    let x = ctx.inputs.poset(&a.file, a.repair)?;
    let c = fpp_check(&x, &ctx.budget);
    let mut done = Done::certificate(&c, a.witness, "fixed point property");
    done.stats.insert("certificate".into(), done.result.clone());
    done.result = verdict_word(c.verdict, "FPP").into();
    Ok(done)
}
