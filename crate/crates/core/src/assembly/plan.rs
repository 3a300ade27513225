use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::realization::Realization;
use crate::scomplex::{Barycentric, Simplex, SimplicialComplex};

/// How depths are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DepthMode {
    /// Least depths passing the mesh bound.
    Bound,
    /// Given depths `s_1..s_n`; the containment predicate is checked
    /// exhaustively where feasible.
    Explicit(Vec<u32>),
    /// Given depths, no containment requirement. The plan is flagged.
    Toy(Vec<u32>),
}

/// Which construction the cylinders are for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Cylinders for `k ≥ 2`, `N` identity cylinders.
    FixedSimplex,
    /// Cylinders for `k ≥ 1`, `(n+1)!·N` identity cylinders.
    FixedPoint,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PlanError {
    #[error("expected {expected} depths s_1..s_n, got {got}")]
    DepthCount { expected: usize, got: usize },
    #[error("depths must start with s_1 = 0 and never decrease")]
    DepthOrder,
}

fn big<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn big_opt<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => big(v, s),
        None => s.serialize_none(),
    }
}

/// Outcome of the exhaustive containment check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Containment {
    Holds { sets: u64 },
    /// A connected facet set of `P^s` not inside any open vertex star of `P`.
    Fails { facets: Vec<String> },
    Inconclusive { reason: String },
}

/// One requirement on a depth: connected subcomplexes of `P^s` generated by
/// at most `bound` simplices lie in an open vertex star of `P`.
#[derive(Clone, Debug, Serialize)]
pub struct DepthRequirement {
    /// `"K"` or the realization index `"M{k}.{l}"`.
    pub target: String,
    pub dim: usize,
    pub depth: u32,
    #[serde(serialize_with = "big")]
    pub bound: BigUint,
    /// `bound · (d/(d+1))^s < 1/(d+1)`.
    pub mesh_bound_holds: bool,
    pub exact: Option<Containment>,
}

/// Size forecast for one realization's cylinder.
#[derive(Clone, Debug, Serialize)]
pub struct CylinderForecast {
    pub name: String,
    pub k: usize,
    #[serde(serialize_with = "big")]
    pub a_facets_upper: BigUint,
    #[serde(serialize_with = "big")]
    pub b_facets: BigUint,
    #[serde(serialize_with = "big")]
    pub c_facets_upper: BigUint,
    /// Vertices added to `K^{s_n}`.
    #[serde(serialize_with = "big")]
    pub vertices: BigUint,
}

#[derive(Clone, Debug, Serialize)]
pub struct Forecast {
    #[serde(serialize_with = "big")]
    pub base_facets: BigUint,
    #[serde(serialize_with = "big")]
    pub base_vertices: BigUint,
    pub cylinders: Vec<CylinderForecast>,
    #[serde(serialize_with = "big")]
    pub total_facets_upper: BigUint,
    #[serde(serialize_with = "big")]
    pub total_vertices: BigUint,
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthPlan {
    pub n: usize,
    pub target: Target,
    pub mode: String,
    /// `s_1, …, s_n`.
    pub depths: Vec<u32>,
    /// `N_k` for `k = 1..n` (absent where no realization of that dimension
    /// enters the bound).
    #[serde(serialize_with = "big_opts")]
    pub n_k: Vec<Option<BigUint>>,
    #[serde(serialize_with = "big")]
    pub big_n: BigUint,
    #[serde(serialize_with = "big")]
    pub multiplier: BigUint,
    pub requirements: Vec<DepthRequirement>,
    pub forecast: Forecast,
    /// Toy mode, or some requirement neither bounded nor checked.
    pub uncertified: bool,
    /// Some exact check could not finish.
    pub inconclusive: bool,
}

fn big_opts<S: Serializer>(xs: &[Option<BigUint>], s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct W<'a>(#[serde(serialize_with = "big_opt")] &'a Option<BigUint>);
    s.collect_seq(xs.iter().map(W))
}

impl Forecast {
    /// Whether at most `limit` facets are forecast.
    pub fn fits(&self, limit: u64) -> bool {
        self.total_facets_upper <= BigUint::from(limit)
    }
}

impl DepthPlan {
    pub fn s_n(&self) -> u32 {
        self.depths.last().copied().unwrap_or(0)
    }

    /// `s_{k-1}`, with `s_0 = 0`.
    pub fn s_before(&self, k: usize) -> u32 {
        if k <= 1 {
            0
        } else {
            self.depths[k - 2]
        }
    }

    pub fn multiplier_usize(&self) -> Option<usize> {
        self.multiplier.to_usize()
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `N·d^s < (d+1)^{s−1}`, that is `N·(d/(d+1))^s < 1/(d+1)`.
pub fn mesh_criterion(bound: &BigUint, d: usize, s: u32) -> bool {
    if bound.is_zero() {
        return true;
    }
    if s == 0 {
        return false;
    }
    bound * BigUint::from(d).pow(s) < BigUint::from(d + 1).pow(s - 1)
}

/// Least `s ≥ from` passing [`mesh_criterion`] for every dimension in `dims`.
pub fn least_depth(bound: &BigUint, dims: &[usize], from: u32) -> u32 {
    let mut s = from;
    while !dims.iter().all(|&d| mesh_criterion(bound, d, s)) {
        s += 1;
    }
    s
}

/// f-vector of the barycentric subdivision: `f′_j = Σ_i f_i (j+1)! S(i+1, j+1)`.
pub fn subdivided_f_vector(f: &[BigUint]) -> Vec<BigUint> {
    let n = f.len();
    // Stirling numbers of the second kind S(a, b) for a ≤ n
    let mut stirling = vec![vec![BigUint::zero(); n + 1]; n + 1];
    stirling[0][0] = BigUint::one();
    for a in 1..=n {
        for b in 1..=a {
            stirling[a][b] = &stirling[a - 1][b - 1] + &stirling[a - 1][b] * b;
        }
    }
    (0..n)
        .map(|j| (j..n).map(|i| &f[i] * factorial(j + 1) * &stirling[i + 1][j + 1]).sum())
        .collect()
}

fn f_vector_at(k: &SimplicialComplex, s: u32) -> Vec<BigUint> {
    let mut f: Vec<BigUint> = k.f_vector().into_iter().map(BigUint::from).collect();
    for _ in 0..s {
        f = subdivided_f_vector(&f);
    }
    f
}

/// Facets of `K^s`: each facet `F` becomes `((dim F + 1)!)^s` facets.
fn facets_at(k: &SimplicialComplex, s: u32) -> BigUint {
    k.facets().iter().map(|f| factorial(f.len()).pow(s)).sum()
}

/// Plans the depths `s_1..s_n` and forecasts sizes without building anything.
pub fn plan_depths(
    k: &SimplicialComplex,
    data: &[Realization],
    mode: &DepthMode,
    target: Target,
    exact_ceiling: u64,
) -> Result<DepthPlan, PlanError> {
    let n = k.dim().max(0) as usize;
    let min_k = if target == Target::FixedPoint { 1 } else { 2 };
    let dims_above = |m: usize| -> Vec<usize> {
        let mut d: Vec<usize> = data.iter().filter(|r| r.k > m).map(|r| r.k).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    let facets_of = |deg: usize, s: u32| -> Option<BigUint> {
        data.iter().filter(|r| r.k == deg).map(|r| facets_at(&r.m, s)).max()
    };

    let given = match mode {
        DepthMode::Bound => None,
        DepthMode::Explicit(d) | DepthMode::Toy(d) => {
            if d.len() != n.max(1) {
                return Err(PlanError::DepthCount { expected: n.max(1), got: d.len() });
            }
            if d[0] != 0 || d.windows(2).any(|w| w[1] < w[0]) {
                return Err(PlanError::DepthOrder);
            }
            Some(d.clone())
        }
    };

    let mut depths = vec![0u32; n.max(1)];
    let mut n_k: Vec<Option<BigUint>> = vec![None; n.max(1)];
    if target == Target::FixedPoint {
        n_k[0] = Some(BigUint::one());
    }
    let mut pending: Vec<(String, usize, u32, BigUint, Option<&SimplicialComplex>)> = Vec::new();
    // s_m for 2 ≤ m ≤ n−1 protects the realizations of dimension above m
    for m in 2..n {
        n_k[m - 1] = facets_of(m, depths[m - 2]);
        let bound = n_k[m - 1].clone().unwrap_or_default();
        let dims = dims_above(m);
        depths[m - 1] = match &given {
            Some(g) => g[m - 1],
            None => least_depth(&bound, &dims, depths[m - 2]),
        };
        for (i, r) in data.iter().enumerate().filter(|(_, r)| r.k > m) {
            pending.push((format!("M{}.{}", r.k, index_within(data, i)), r.k, depths[m - 1], bound.clone(), Some(&*r.m)));
        }
    }
    // s_n protects K itself with N = max N_k
    if n >= 2 {
        n_k[n - 1] = facets_of(n, depths[n - 2]);
    }
    let big_n = n_k.iter().skip(min_k - 1).flatten().max().cloned().unwrap_or_default();
    if n >= 2 {
        let from = depths[n - 2];
        depths[n - 1] = match &given {
            Some(g) => g[n - 1],
            None => least_depth(&big_n, &[n], from),
        };
        pending.push(("K".into(), n, depths[n - 1], big_n.clone(), Some(k)));
    }

    let mut requirements = Vec::new();
    let mut inconclusive = false;
    let mut unbounded = false;
    for (name, dim, depth, bound, p) in pending {
        let mesh_bound_holds = mesh_criterion(&bound, dim, depth);
        let exact = match (mode, p) {
            (DepthMode::Explicit(_), Some(p)) if !mesh_bound_holds => {
                let e = check_containment(p, depth, &bound, exact_ceiling);
                inconclusive |= matches!(e, Containment::Inconclusive { .. });
                unbounded |= !matches!(e, Containment::Holds { .. });
                Some(e)
            }
            _ => {
                unbounded |= !mesh_bound_holds;
                None
            }
        };
        requirements.push(DepthRequirement { target: name, dim, depth, bound, mesh_bound_holds, exact });
    }

    let multiplier = match target {
        Target::FixedSimplex => big_n.clone(),
        Target::FixedPoint => factorial(n + 1) * &big_n,
    };
    let plan_for_forecast = (depths.clone(), multiplier.clone());
    let forecast = forecast(k, data, &plan_for_forecast.0, &plan_for_forecast.1, min_k);
    let mode_name = match mode {
        DepthMode::Bound => "bound",
        DepthMode::Explicit(_) => "explicit",
        DepthMode::Toy(_) => "toy",
    };
    Ok(DepthPlan {
        n,
        target,
        mode: mode_name.into(),
        depths,
        n_k,
        big_n,
        multiplier,
        requirements,
        forecast,
        uncertified: matches!(mode, DepthMode::Toy(_)) || unbounded,
        inconclusive,
    })
}

/// 1-based position of a realization among those of the same dimension.
pub(crate) fn index_within(data: &[Realization], i: usize) -> usize {
    data[..=i].iter().filter(|r| r.k == data[i].k).count()
}

fn forecast(k: &SimplicialComplex, data: &[Realization], depths: &[u32], multiplier: &BigUint, min_k: usize) -> Forecast {
    let s_n = depths.last().copied().unwrap_or(0);
    let base_facets = facets_at(k, s_n);
    let base_vertices = f_vector_at(k, s_n).first().cloned().unwrap_or_default();
    let mut cylinders = Vec::new();
    for (i, r) in data.iter().enumerate().filter(|(_, r)| r.k >= min_k) {
        let deg = r.k;
        let s_prev = if deg <= 1 { 0 } else { depths[deg - 2] };
        let top = |s: u32| f_vector_at(&r.m, s);
        let at_n = top(s_n);
        let width = BigUint::from(deg + 1);
        let a_facets_upper = &width * &at_n[deg];
        let b_facets = multiplier * &width * &at_n[deg];
        let mut c_facets_upper = BigUint::zero();
        let mut vertices = (multiplier + 1u32) * &at_n[0];
        for m in s_prev + 1..=s_n {
            c_facets_upper += &width * &top(m)[deg];
            vertices += &top(m - 1)[0];
        }
        cylinders.push(CylinderForecast {
            name: format!("M{}.{}", deg, index_within(data, i)),
            k: deg,
            a_facets_upper,
            b_facets,
            c_facets_upper,
            vertices,
        });
    }
    let total_facets_upper = cylinders
        .iter()
        .fold(base_facets.clone(), |acc, c| acc + &c.a_facets_upper + &c.b_facets + &c.c_facets_upper);
    let total_vertices = cylinders.iter().fold(base_vertices.clone(), |acc, c| acc + &c.vertices);
    Forecast { base_facets, base_vertices, cylinders, total_facets_upper, total_vertices }
}

/// Exhaustively checks that every connected set of at most `bound` facets
/// of `P^s` lies in the open star of one vertex of `P`, that is, some vertex
/// of `P` lies in the carrier of every vertex involved.
///
/// Connected sets are enumerated once each (grown from their least facet
/// through neighbours of larger index). Gives up after `ceiling` sets or when
/// `P^s` would exceed `ceiling` facets.
pub fn check_containment(p: &SimplicialComplex, s: u32, bound: &BigUint, ceiling: u64) -> Containment {
    if facets_at(p, s) > BigUint::from(ceiling) {
        return Containment::Inconclusive { reason: format!("P^{s} has more than {ceiling} facets") };
    }
    let Some(bound) = bound.to_usize() else {
        return Containment::Inconclusive { reason: "bound too large to enumerate".into() };
    };
    // carriers in P of the vertices of P^s
    let mut cur = p.clone();
    let mut carriers: Vec<Simplex> = (0..p.vertex_count() as u32).map(Simplex::vertex).collect();
    for _ in 0..s {
        let sub = Barycentric::new(&cur);
        carriers = (0..sub.complex.vertex_count() as u32)
            .map(|v| sub.carrier(v).iter().fold(Simplex::default(), |acc, &u| acc.union(&carriers[u as usize])))
            .collect();
        cur = sub.complex;
    }
    let facets = cur.facets();
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); facets.len()];
    {
        let mut by_vertex: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, f) in facets.iter().enumerate() {
            for &v in f.iter() {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        for list in by_vertex.values() {
            for &a in list {
                for &b in list {
                    if a != b {
                        neighbours[a].push(b);
                    }
                }
            }
        }
        for n in &mut neighbours {
            n.sort_unstable();
            n.dedup();
        }
    }
    let common = |set: &[usize]| -> Simplex {
        let mut acc: Option<Simplex> = None;
        for &f in set {
            for &v in facets[f].iter() {
                let c = &carriers[v as usize];
                acc = Some(match acc {
                    None => c.clone(),
                    Some(a) => Simplex::from_sorted(a.iter().copied().filter(|x| c.contains_vertex(*x)).collect()),
                });
            }
        }
        acc.unwrap_or_default()
    };
    let mut count = 0u64;
    for start in 0..facets.len() {
        let mut set = vec![start];
        let ext: Vec<usize> = neighbours[start].iter().copied().filter(|&x| x > start).collect();
        if let Err(r) = grow(&mut set, ext, start, bound, &neighbours, &common, &mut count, ceiling) {
            return match r {
                Stop::Witness(w) => Containment::Fails { facets: w.iter().map(|&f| cur.format_simplex(&facets[f])).collect() },
                Stop::Ceiling => Containment::Inconclusive { reason: format!("more than {ceiling} connected sets") },
            };
        }
    }
    Containment::Holds { sets: count }
}

enum Stop {
    Witness(Vec<usize>),
    Ceiling,
}

#[allow(clippy::too_many_arguments)]
fn grow(
    set: &mut Vec<usize>,
    ext: Vec<usize>,
    start: usize,
    bound: usize,
    neighbours: &[Vec<usize>],
    common: &dyn Fn(&[usize]) -> Simplex,
    count: &mut u64,
    ceiling: u64,
) -> Result<(), Stop> {
    *count += 1;
    if *count > ceiling {
        return Err(Stop::Ceiling);
    }
    if common(set).is_empty() {
        return Err(Stop::Witness(set.clone()));
    }
    if set.len() == bound {
        return Ok(());
    }
    let mut ext = ext;
    while let Some(w) = ext.pop() {
        // exclusive neighbourhood of w relative to the current set
        let mut next = ext.clone();
        for &u in &neighbours[w] {
            if u > start && !set.contains(&u) && !ext.contains(&u) && !set.iter().any(|&s| neighbours[s].contains(&u)) {
                next.push(u);
            }
        }
        set.push(w);
        grow(set, next, start, bound, neighbours, common, count, ceiling)?;
        set.pop();
    }
    Ok(())
}
