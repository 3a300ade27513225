use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use super::plan::{index_within, DepthPlan};
use super::realization::Realization;
use crate::scomplex::{mapping_cylinder_named, Barycentric, CylinderNaming, SimplicialComplex, SimplicialMap, VertexId};
use crate::zhomology::{
    solve_in_span, subdivision_operator, Chain, ChainComplex, ChainMap, CylinderRetraction, Homology,
};

/// Default refusal threshold for materializing an assembled complex.
pub const MATERIALIZATION_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("the plan forecasts up to {forecast} facets, above the limit of {limit}; refusing to build")]
    TooLarge { forecast: String, limit: u64 },
    #[error("cylinder multiplier {0} does not fit in memory")]
    Multiplier(String),
    #[error("gluing failed: {0}")]
    Glue(String),
    #[error("assembled complex has the wrong homology: {0}")]
    Homology(String),
}

/// A registered copy of a known complex inside the assembled one: the
/// vertices whose names start with `prefix`, with the prefix removed, must
/// form exactly `expected` as a full subcomplex.
#[derive(Clone, Debug, Serialize)]
pub struct Subobject {
    pub name: String,
    pub prefix: String,
    pub vertices: usize,
    pub facets: usize,
    #[serde(skip)]
    pub expected: Arc<SimplicialComplex>,
}

impl Subobject {
    fn new(name: String, prefix: String, expected: Arc<SimplicialComplex>) -> Self {
        Subobject { name, prefix, vertices: expected.vertex_count(), facets: expected.facets().len(), expected }
    }

    /// Extracts the copy and compares it with the expected complex.
    pub fn extract(&self, l: &SimplicialComplex) -> Option<SimplicialComplex> {
        let names: Vec<&String> = l.vertex_names().iter().filter(|n| n.starts_with(&self.prefix)).collect();
        let sub = l.induced_subcomplex(&names).ok()?;
        sub.renamed(|n| n[self.prefix.len()..].to_string()).ok()
    }

    pub fn round_trips(&self, l: &SimplicialComplex) -> bool {
        self.extract(l).is_some_and(|m| m.same_as(&self.expected))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartLog {
    pub name: String,
    pub vertices: usize,
    pub facets: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AssemblyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Per-realization evidence from the retraction cylinders.
#[derive(Clone, Debug, Serialize)]
pub struct ChainEvidence {
    pub name: String,
    pub k: usize,
    pub stages: u32,
    /// `‖c‖` for the fundamental cycle `c` of the free extreme.
    pub free_norm: u64,
    /// `‖R̃_{s_n} ⋯ R̃_{s_{k−1}+1}(c)‖`.
    pub retracted_norm: u64,
    /// `((k+1)!)^stages · ‖c‖`.
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub bound: BigInt,
    pub stage_reports_pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssembledComplex {
    #[serde(skip)]
    pub complex: Arc<SimplicialComplex>,
    pub subobjects: Vec<Subobject>,
    pub parts: Vec<PartLog>,
    pub vertex_order: String,
    pub evidence: Vec<ChainEvidence>,
    pub checks: Vec<AssemblyCheck>,
    pub uncertified_plan: bool,
}

impl AssembledComplex {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn subobject(&self, name: &str) -> Option<&Subobject> {
        self.subobjects.iter().find(|s| s.name == name)
    }
}

pub(crate) fn base_tag() -> &'static str {
    "K|"
}

fn copy_tag(k: usize, l: usize, level: &str) -> String {
    format!("M{k}.{l}@{level}|")
}

/// Prefix of the free extreme `M_{k,l}^{s_{k−1}}`.
pub(crate) fn free_extreme_tag(plan: &DepthPlan, k: usize, l: usize, multiplier: usize) -> String {
    let s_prev = plan.s_before(k);
    if s_prev == plan.s_n() {
        copy_tag(k, l, &format!("b{multiplier}"))
    } else {
        copy_tag(k, l, &format!("c{s_prev}"))
    }
}

/// Builds `L = K^{s_n} ∪ ⋃ C_{k,l}` for the realizations with `k ≥ min_k`.
///
/// Each `C_{k,l}` is the cylinder of `φ^{s_n}` (part a), `multiplier`
/// identity cylinders on `M^{s_n}` stacked base to base (part b) and the
/// Norm-controlled retraction cylinders of `M^m → M^{m−1}` for `s_{k−1} < m ≤ s_n` (part c).
/// Copies are told apart by vertex prefixes: `K|` for `K^{s_n}`,
/// `M{k}.{l}@b{i}|` for the `i`-th base of part b (`b0` is glued to part a)
/// and `M{k}.{l}@c{m}|` for the level `m` copies in part c.
pub fn assemble(
    k: &SimplicialComplex,
    data: &[Realization],
    plan: &DepthPlan,
    min_k: usize,
    limit: u64,
) -> Result<AssembledComplex, AssemblyError> {
    if !plan.forecast.fits(limit) {
        return Err(AssemblyError::TooLarge { forecast: plan.forecast.total_facets_upper.to_string(), limit });
    }
    let multiplier = plan.multiplier.to_usize().ok_or_else(|| AssemblyError::Multiplier(plan.multiplier.to_string()))?;
    let s_n = plan.s_n();
    let glue = |e: crate::ComplexError| AssemblyError::Glue(e.to_string());

    let base = Arc::new(k.barycentric_iterated(s_n));
    let mut parts: Vec<(String, Arc<SimplicialComplex>)> =
        vec![("K^s".into(), Arc::new(base.renamed(|n| format!("{}{n}", base_tag())).map_err(glue)?))];
    let mut subobjects = vec![Subobject::new("K^s".into(), base_tag().into(), base.clone())];
    let mut evidence = Vec::new();

    for (i, r) in data.iter().enumerate().filter(|(_, r)| r.k >= min_k) {
        let (deg, l) = (r.k, index_within(data, i));
        let name = format!("M{deg}.{l}");
        let s_prev = plan.s_before(deg);

        // M^m for s_prev ≤ m ≤ s_n
        let mut levels: Vec<Arc<SimplicialComplex>> = vec![Arc::new(r.m.barycentric_iterated(s_prev))];
        for _ in s_prev..s_n {
            let next = levels.last().expect("nonempty").barycentric();
            levels.push(Arc::new(next));
        }
        let top = levels.last().expect("nonempty").clone();
        let level_tag = |m: u32| {
            if m == s_n {
                copy_tag(deg, l, &format!("b{multiplier}"))
            } else {
                copy_tag(deg, l, &format!("c{m}"))
            }
        };

        // part a
        let phi_n = r.phi.barycentric_iterated(s_n);
        let lex: Vec<VertexId> = (0..top.vertex_count() as VertexId).collect();
        let a_naming = CylinderNaming { source_tag: copy_tag(deg, l, "b0"), target_tag: base_tag().into() };
        let ca = mapping_cylinder_named(&phi_n, &lex, &a_naming).map_err(glue)?;
        parts.push((format!("{name}/a"), ca.complex.clone()));

        // part b
        let id = SimplicialMap::identity(top.clone());
        for b in 0..multiplier {
            let naming =
                CylinderNaming { source_tag: copy_tag(deg, l, &format!("b{b}")), target_tag: copy_tag(deg, l, &format!("b{}", b + 1)) };
            let cb = mapping_cylinder_named(&id, &lex, &naming).map_err(glue)?;
            parts.push((format!("{name}/b{b}"), cb.complex.clone()));
        }
        for b in 0..=multiplier {
            subobjects.push(Subobject::new(format!("{name}@b{b}"), copy_tag(deg, l, &format!("b{b}")), top.clone()));
        }

        // part c, from the free extreme upwards, pushing the fundamental cycle
        let free = ChainComplex::new(levels[0].clone()).fundamental_cycle().expect("realizations are oriented");
        let mut pushed = free.clone();
        let mut lambda = free.clone();
        let mut stage_reports_pass = true;
        for m in s_prev + 1..=s_n {
            let lower = &levels[(m - 1 - s_prev) as usize];
            let naming = CylinderNaming { source_tag: level_tag(m), target_tag: level_tag(m - 1) };
            let ret = CylinderRetraction::with_naming(lower, &naming);
            stage_reports_pass &= ret.check().passes();
            let into_cyl = ChainMap::induced(&ret.cylinder.j).apply(&pushed);
            pushed = ret.apply(&into_cyl);
            let sub = Barycentric::new(lower);
            lambda = subdivision_operator(lower, &sub).apply(&lambda);
            parts.push((format!("{name}/c{m}"), ret.cylinder.complex.clone()));
            subobjects.push(Subobject::new(format!("{name}@c{}", m - 1), level_tag(m - 1), lower.clone()));
        }
        let stages = s_n - s_prev;
        let fact: u64 = (1..=deg as u64 + 1).product();
        let bound = BigInt::from(fact).pow(stages) * BigInt::from(free.norm());
        evidence.push(ChainEvidence {
            name: name.clone(),
            k: deg,
            stages,
            free_norm: free.norm(),
            retracted_norm: pushed.norm(),
            bound,
            stage_reports_pass: stage_reports_pass && (pushed == lambda || pushed == lambda.neg()),
        });
        subobjects.push(Subobject::new(format!("{name}/free"), free_extreme_tag(plan, deg, l, multiplier), levels[0].clone()));
    }

    let complex = Arc::new(SimplicialComplex::union(parts.iter().map(|p| p.1.as_ref())).map_err(glue)?);
    let parts = parts
        .iter()
        .map(|(n, c)| PartLog { name: n.clone(), vertices: c.vertex_count(), facets: c.facets().len() })
        .collect();
    let mut out = AssembledComplex {
        complex,
        subobjects,
        parts,
        vertex_order: "parts a and b: lexicographic; part c: carrier dimension descending, then name".into(),
        evidence,
        checks: Vec::new(),
        uncertified_plan: plan.uncertified,
    };
    out.checks = verify_assembled(k, data, plan, min_k, &out);
    match out.checks.iter().find(|c| c.name == "homology" && !c.passed) {
        Some(c) => Err(AssemblyError::Homology(c.detail.clone())),
        None => Ok(out),
    }
}

/// Homology, subobject and basis checks for an assembled complex.
fn verify_assembled(
    k: &SimplicialComplex,
    data: &[Realization],
    plan: &DepthPlan,
    min_k: usize,
    l: &AssembledComplex,
) -> Vec<AssemblyCheck> {
    let mut checks = Vec::new();
    let hk = Homology::of(k);
    let hl = Homology::of(&l.complex);
    checks.push(AssemblyCheck {
        name: "homology".into(),
        passed: hl.isomorphic_to(&hk),
        detail: format!("betti {:?} vs {:?}, torsion {:?}", hl.betti(), hk.betti(), hl.torsion()),
    });

    let bad: Vec<&str> = l.subobjects.iter().filter(|s| !s.round_trips(&l.complex)).map(|s| s.name.as_str()).collect();
    checks.push(AssemblyCheck {
        name: "subobjects".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() { format!("{} full subcomplexes", l.subobjects.len()) } else { format!("mismatch: {bad:?}") },
    });

    // free extreme classes: nonzero, equal to i_*(φ^{s_n})_*[M^{s_n}], a basis per degree
    let s_n = plan.s_n();
    let multiplier = plan.multiplier.to_usize().unwrap_or(0);
    let mut per_degree: Vec<Vec<Vec<BigInt>>> = vec![Vec::new(); hl.groups().len().max(1)];
    let mut class_ok = true;
    let mut detail = Vec::new();
    for (i, r) in data.iter().enumerate().filter(|(_, r)| r.k >= min_k) {
        let (deg, idx) = (r.k, index_within(data, i));
        let name = format!("M{deg}.{idx}");
        let s_prev = plan.s_before(deg);
        let free_m = Arc::new(r.m.barycentric_iterated(s_prev));
        let free = ChainComplex::new(free_m.clone()).fundamental_cycle().expect("oriented");
        let tag = free_extreme_tag(plan, deg, idx, multiplier);
        let Some(in_l) = embed(&free, &free_m, &l.complex, &tag) else {
            class_ok = false;
            detail.push(format!("{name}: free extreme missing"));
            continue;
        };
        // λ^{s_n − s_prev} of the free cycle, pushed by φ^{s_n} into K^{s_n}
        let mut lam = free.clone();
        let mut cur = free_m.as_ref().clone();
        for _ in s_prev..s_n {
            let sub = Barycentric::new(&cur);
            lam = subdivision_operator(&cur, &sub).apply(&lam);
            cur = sub.complex;
        }
        let phi_n = r.phi.barycentric_iterated(s_n);
        let image = ChainMap::induced(&phi_n).apply(&lam);
        let via_base = embed(&image, phi_n.target(), &l.complex, base_tag());
        let c_free = hl.class_of(&in_l).expect("cycle");
        let same = via_base.map(|b| hl.class_of(&b).expect("cycle") == c_free).unwrap_or(false);
        if c_free.is_zero() || !same {
            class_ok = false;
            detail.push(format!("{name}: zero {} / equals base image {same}", c_free.is_zero()));
        }
        if deg < per_degree.len() {
            per_degree[deg].push(c_free.free);
        }
    }
    for (deg, cols) in per_degree.iter().enumerate().skip(min_k) {
        let rank = hl.group(deg).rank;
        let independent = cols.is_empty() || solve_in_span(cols, &vec![BigInt::from(0); rank]).is_some();
        if cols.len() != rank || !independent {
            class_ok = false;
            detail.push(format!("H_{deg}: {} classes for rank {rank}, independent {independent}", cols.len()));
        }
    }
    checks.push(AssemblyCheck {
        name: "basis classes".into(),
        passed: class_ok,
        detail: if detail.is_empty() { "free extreme classes form bases".into() } else { detail.join("; ") },
    });

    let norm_ok = l.evidence.iter().all(|e| e.stage_reports_pass && BigInt::from(e.retracted_norm) <= e.bound);
    checks.push(AssemblyCheck {
        name: "retraction norm bound".into(),
        passed: norm_ok,
        detail: l
            .evidence
            .iter()
            .map(|e| format!("{}: {} ≤ {} over {} stages", e.name, e.retracted_norm, e.bound, e.stages))
            .collect::<Vec<_>>()
            .join("; "),
    });
    checks
}

/// Moves a chain of `src` into `dst`, whose copy of `src` has vertex names
/// prefixed by `tag`.
pub(crate) fn embed(c: &Chain, src: &SimplicialComplex, dst: &SimplicialComplex, tag: &str) -> Option<Chain> {
    let mut terms = Vec::with_capacity(c.terms().len());
    for &(i, a) in c.terms() {
        let s = &src.simplices(c.dim)[i as usize];
        let names: Vec<String> = s.iter().map(|&v| format!("{tag}{}", src.vertex_name(v))).collect();
        let t = dst.simplex_from_names(&names).ok()?;
        // prefixing can reorder vertices
        let mut ids: Vec<VertexId> = names.iter().map(|n| dst.vertex_id(n).expect("found above")).collect();
        let sign = crate::scomplex::sort_sign(&mut ids);
        terms.push((dst.position(&t)? as u32, a * sign));
    }
    Some(Chain::new(c.dim, terms))
}
