use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::fixtest::{fpp_check, Certificate, SearchBudget, Verdict};
use crate::fposet::{nh_cylinder_named, order_complex, order_map, FinitePoset, MonotoneMap, PointId, Winding};
use crate::scomplex::SimplicialComplex;
use crate::zhomology::{enumerate_cycles, Chain, ChainComplex, ChainMap, Homology};

/// Distinguished points of a Kun space: the doubling crown `x, y, z, w`
/// (`z, w < x, y`) and the retract crown `x′, y′, z′, w′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunPoints {
    pub x: String,
    pub y: String,
    pub z: String,
    pub w: String,
    pub x2: String,
    pub y2: String,
    pub z2: String,
    pub w2: String,
}

impl Default for KunPoints {
    fn default() -> Self {
        let s = |n: &str| n.to_string();
        KunPoints { x: s("x"), y: s("y"), z: s("z"), w: s("w"), x2: s("x'"), y2: s("y'"), z2: s("z'"), w2: s("w'") }
    }
}

impl KunPoints {
    pub fn retract_crown(&self) -> [&str; 4] {
        [&self.x2, &self.y2, &self.z2, &self.w2]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KunReport {
    pub checks: Vec<KunCheck>,
    /// Cover weights whose path sums give a 1-cocycle of `K(Κ)` sending the
    /// generator of `H_1` to 1.
    pub weights: Option<BTreeMap<String, i64>>,
    pub fpp: Option<Certificate>,
}

impl KunReport {
    pub fn passes(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

/// A verified Kun space with canonical names `x, y, z, w, x', y', z', w'`
/// and `p1 … p6`.
#[derive(Clone, Debug)]
pub struct Kun {
    pub poset: Arc<FinitePoset>,
    pub points: KunPoints,
    /// Canonical name → name in the glued construction.
    pub origin: BTreeMap<String, String>,
    /// The degree 1 and degree 2 maps from the 8-point circle.
    pub f1: BTreeMap<String, String>,
    pub f2: BTreeMap<String, String>,
    pub candidates_tried: usize,
    pub report: KunReport,
}

#[derive(Debug, Clone, Error)]
pub enum KunError {
    #[error("no pair of degree 1 and 2 maps gave a space passing every check ({tried} candidates)")]
    NoCandidate { tried: usize },
}

/// The 8-point circle: `m0..m3` below `M0..M3` with `m_i, m_{i+1} < M_i`.
pub fn circle8() -> FinitePoset {
    let mut names = Vec::new();
    let mut covers = Vec::new();
    for i in 0..4 {
        names.push(format!("m{i}"));
        names.push(format!("M{i}"));
        covers.push((format!("m{i}"), format!("M{i}")));
        covers.push((format!("m{}", (i + 1) % 4), format!("M{i}")));
    }
    FinitePoset::from_covers(&names, &covers).expect("a crown")
}

/// The 4-point circle `z, w < x, y`.
pub fn crown4() -> FinitePoset {
    FinitePoset::from_covers(&["x", "y", "z", "w"], &[("z", "x"), ("z", "y"), ("w", "x"), ("w", "y")]).expect("a crown")
}

/// Every monotone map `circle8 → crown4` with `|deg| = d`, in
/// lexicographic order of the assignment vectors.
fn maps_of_degree(d: &Arc<FinitePoset>, c: &Arc<FinitePoset>, degree: u64) -> Vec<MonotoneMap> {
    let kd = Arc::new(order_complex(d));
    let kc = Arc::new(order_complex(c));
    let hd = Homology::of(&kd);
    let hc = Homology::of(&kc);
    let n = d.len();
    let mut out = Vec::new();
    let mut assign = vec![0 as PointId; n];
    loop {
        if let Ok(f) = MonotoneMap::new(d.clone(), c.clone(), assign.clone()) {
            let km = order_map(&f, kd.clone(), kc.clone());
            let m = hd.induced_matrix(&hc, &ChainMap::induced(&km), 1);
            if m.get(0, 0).abs() == BigInt::from(degree) {
                out.push(f);
            }
        }
        // odometer over assignments
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            assign[i] += 1;
            if (assign[i] as usize) < c.len() {
                break;
            }
            assign[i] = 0;
        }
    }
}

/// Builds the Kun space: glues the non-Hausdorff cylinders of a degree 1 and
/// a degree 2 map from the 8-point circle to two crowns along the circle,
/// takes the core, and returns the first candidate passing [`verify_kun`].
///
/// Candidates are tried in lexicographic order of `(f1, f2)`.
pub fn build_kun(budget: &SearchBudget) -> Result<Kun, KunError> {
    let d = Arc::new(circle8());
    let c = Arc::new(crown4());
    let ones = maps_of_degree(&d, &c, 1);
    let twos = maps_of_degree(&d, &c, 2);
    let mut tried = 0;
    for f1 in &ones {
        for f2 in &twos {
            tried += 1;
            let Some((poset, points, origin)) = glue_candidate(f1, f2) else { continue };
            let report = verify_kun(&poset, &points, budget);
            if report.passes() {
                return Ok(Kun {
                    poset: Arc::new(poset),
                    points,
                    origin,
                    f1: f1.named_assignment(),
                    f2: f2.named_assignment(),
                    candidates_tried: tried,
                    report,
                });
            }
        }
    }
    Err(KunError::NoCandidate { tried })
}

/// Core of `B_{f1} ∪ B_{f2}` with canonical names, or `None` when the shape
/// is wrong for a Kun space (size, or no doubling crown).
fn glue_candidate(
    f1: &MonotoneMap,
    f2: &MonotoneMap,
) -> Option<(FinitePoset, KunPoints, BTreeMap<String, String>)> {
    let b1 = nh_cylinder_named(f1, "d:", "c1:").ok()?;
    let b2 = nh_cylinder_named(f2, "d:", "c2:").ok()?;
    let glued = FinitePoset::union([b1.poset.as_ref(), b2.poset.as_ref()]).ok()?;
    let core = glued.core();
    if core.len() != 14 {
        return None;
    }
    let has = |n: &str| core.id(n).is_some();
    if !["c1:x", "c1:y", "c2:x", "c2:y", "c2:z", "c2:w"].iter().all(|n| has(n)) {
        return None;
    }
    let (x, y) = (core.id("c1:x")?, core.id("c1:y")?);
    // doubling crown: least pair of incomparable common lower bounds of x, y
    // whose square is twice a generator
    let lower: Vec<PointId> = core.points().filter(|&p| core.lt(p, x) && core.lt(p, y)).collect();
    let kx = order_complex(&core);
    let h = Homology::of(&kx);
    if h.betti().get(1) != Some(&1) {
        return None;
    }
    let mut pair = None;
    'outer: for (i, &z) in lower.iter().enumerate() {
        for &w in &lower[i + 1..] {
            if core.comparable(z, w) {
                continue;
            }
            let names = [core.name(z), core.name(x), core.name(w), core.name(y)];
            let cycle = square_cycle(h.chain_complex(), &names)?;
            if h.class_of(&cycle).ok()?.free.first().map(|c| c.abs()) == Some(BigInt::from(2)) {
                pair = Some((z, w));
                break 'outer;
            }
        }
    }
    let (z, w) = pair?;
    let mut origin: BTreeMap<String, String> = BTreeMap::new();
    for (canon, p) in [("x", x), ("y", y), ("z", z), ("w", w)] {
        origin.insert(canon.into(), core.name(p).into());
    }
    for t in ["x", "y", "z", "w"] {
        origin.insert(format!("{t}'"), format!("c2:{t}"));
    }
    let used: BTreeSet<String> = origin.values().cloned().collect();
    let rest: Vec<&String> = core.names().iter().filter(|n| !used.contains(*n)).collect();
    for (i, n) in rest.iter().enumerate() {
        origin.insert(format!("p{}", i + 1), (*n).clone());
    }
    let back: BTreeMap<&str, &str> = origin.iter().map(|(c, o)| (o.as_str(), c.as_str())).collect();
    let renamed = core.renamed(|n| back[n].to_string()).ok()?;
    Some((renamed, KunPoints::default(), origin))
}

/// The 1-chain `a→b→c→d→a` of `K(X)` through four comparable pairs.
fn square_cycle(chain: &ChainComplex, names: &[&str; 4]) -> Option<Chain> {
    let kx = chain.complex();
    let mut terms = Vec::new();
    for i in 0..4 {
        let (a, b) = (names[i], names[(i + 1) % 4]);
        let s = kx.simplex_from_names(&[a, b]).ok()?;
        let sign = if a < b { 1 } else { -1 };
        terms.push((s, sign));
    }
    chain.chain_of(1, terms)
}

/// Checks a candidate Kun space:
/// (a) 14 points; (b) `K(X)` has the homology of a circle; (c) `x` and `y`
/// are weak points; (d) exhaustive fixed point property; (e) the only
/// cycles of norm at most 4 representing twice a generator are
/// `±(zx + xw + wy + yz)`; (f) that cycle is twice a generator.
/// Also checks that removing `x, y` leaves the retract crown as core.
pub fn verify_kun(x: &FinitePoset, points: &KunPoints, budget: &SearchBudget) -> KunReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(KunCheck { name: name.into(), passed, detail })
    };
    let named = [&points.x, &points.y, &points.z, &points.w, &points.x2, &points.y2, &points.z2, &points.w2];
    if let Some(missing) = named.iter().find(|n| x.id(n).is_none()) {
        push("named points", false, format!("{missing:?} is not a point"));
        return KunReport { checks, weights: None, fpp: None };
    }
    let id = |n: &str| x.id(n).expect("checked above");
    let (px, py, pz, pw) = (id(&points.x), id(&points.y), id(&points.z), id(&points.w));
    let crown_ok = [pz, pw].iter().all(|&b| x.lt(b, px) && x.lt(b, py)) && !x.comparable(pz, pw);
    push("named points", crown_ok, "z, w < x, y with z, w incomparable".into());

    push("(a) size", x.len() == 14, format!("{} points", x.len()));

    let kx = order_complex(x);
    let h = Homology::of(&kx);
    let betti = h.betti();
    let circle = betti.first() == Some(&1)
        && betti.get(1) == Some(&1)
        && betti.iter().skip(2).all(|&b| b == 0)
        && h.torsion().iter().all(Vec::is_empty);
    push("(b) homology of a circle", circle, format!("betti {betti:?}"));

    let weak = x.is_weak_point(px) && x.is_weak_point(py);
    push("(c) x, y weak points", weak, format!("x weak: {}, y weak: {}", x.is_weak_point(px), x.is_weak_point(py)));

    let cert = fpp_check(x, budget);
    push("(d) fixed point property", cert.verdict == Verdict::Holds, format!("{:?} after {} nodes", cert.verdict, cert.stats.nodes));

    let square = square_cycle(h.chain_complex(), &[&points.z, &points.x, &points.w, &points.y]);
    let two = BigInt::from(2);
    let doubles = |c: &Chain| h.class_of(c).map(|k| k.free.len() == 1 && k.free[0].abs() == two).unwrap_or(false);
    match (&square, circle) {
        (Some(sq), true) => {
            let found = enumerate_cycles(h.chain_complex(), 1, 4, budget.max_nodes);
            let (passed, detail) = match found {
                Ok(cycles) => {
                    let doubling: Vec<&Chain> = cycles.iter().filter(|c| doubles(c)).collect();
                    let unique = doubling.len() == 1 && (*doubling[0] == *sq || *doubling[0] == sq.neg());
                    (unique, format!("{} cycles of norm ≤ 4, {} doubling", cycles.len(), doubling.len()))
                }
                Err(e) => (false, e.to_string()),
            };
            push("(e) unique short doubling cycle", passed, detail);
            let class = h.class_of(sq).map(|k| k.free).unwrap_or_default();
            push("(f) crown doubles the generator", doubles(sq), format!("class {class:?}"));
        }
        _ => {
            push("(e) unique short doubling cycle", false, "no circle homology or crown square".into());
            push("(f) crown doubles the generator", false, "no circle homology or crown square".into());
        }
    }

    let mut keep = FixedBitSet::with_capacity(x.len());
    keep.insert_range(..);
    keep.set(px as usize, false);
    keep.set(py as usize, false);
    let rest = x.induced(&keep).core();
    let mut got: Vec<&str> = rest.names().iter().map(String::as_str).collect();
    got.sort_unstable();
    let mut want: Vec<&str> = points.retract_crown().to_vec();
    want.sort_unstable();
    push("retract crown", got == want, format!("core without x, y: {got:?}"));

    let weights = if circle { standard_weights(x, &kx, &h) } else { None };
    KunReport { checks, weights, fpp: Some(cert) }
}

/// Cover weights `ω(a<b) = ⟨g*, [ab + P(a) − P(b)]⟩` for tree paths `P` from
/// a root of `K(X)`, verified to be path independent and to send the
/// generator to 1. Keys are `"a<b"`.
pub fn standard_weights(x: &FinitePoset, kx: &SimplicialComplex, h: &Homology) -> Option<BTreeMap<String, i64>> {
    if h.group(1).rank != 1 {
        return None;
    }
    let chain = h.chain_complex();
    let n = kx.vertex_count();
    // BFS tree over the 1-skeleton; path[v] = chain from the root to v
    let mut path: Vec<Option<Chain>> = vec![None; n];
    path[0] = Some(Chain::zero(1));
    let mut queue = VecDeque::from([0u32]);
    while let Some(u) = queue.pop_front() {
        for v in kx.neighbors(u) {
            if path[v as usize].is_none() {
                let step = oriented_edge(chain, u, v)?;
                path[v as usize] = Some(path[u as usize].as_ref()?.add(&step));
                queue.push_back(v);
            }
        }
    }
    let mut weights = BTreeMap::new();
    let mut keyed = BTreeMap::new();
    for &(a, b) in x.covers() {
        let (va, vb) = (kx.vertex_id(x.name(a))?, kx.vertex_id(x.name(b))?);
        let loop_ = oriented_edge(chain, va, vb)?.add(path[va as usize].as_ref()?).add_scaled(path[vb as usize].as_ref()?, -1);
        let w: i64 = h.class_of(&loop_).ok()?.free[0].clone().try_into().ok()?;
        weights.insert((x.name(a).to_string(), x.name(b).to_string()), w);
        keyed.insert(format!("{}<{}", x.name(a), x.name(b)), w);
    }
    let winding = Winding::new(x, &weights).ok()?;
    (winding.on_generators(x, h).ok()? == vec![1]).then_some(keyed)
}

fn oriented_edge(chain: &ChainComplex, u: u32, v: u32) -> Option<Chain> {
    let e = crate::scomplex::Simplex::new(vec![u, v]);
    let sign = if u < v { 1 } else { -1 };
    chain.chain_of(1, [(e, sign)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_models() {
        let d = circle8();
        assert_eq!(d.len(), 8);
        assert_eq!(Homology::of(&order_complex(&d)).betti(), vec![1, 1]);
        let d = Arc::new(d);
        let c = Arc::new(crown4());
        assert!(!maps_of_degree(&d, &c, 1).is_empty());
        // a degree 2 map is a double covering, fixed by the images of m0 and M0
        assert_eq!(maps_of_degree(&d, &c, 2).len(), 4);
    }

    #[test]
    fn crown_alone_fails_most_checks() {
        let c = crown4();
        let pts = KunPoints {
            x: "x".into(),
            y: "y".into(),
            z: "z".into(),
            w: "w".into(),
            x2: "x".into(),
            y2: "y".into(),
            z2: "z".into(),
            w2: "w".into(),
        };
        let r = verify_kun(&c, &pts, &SearchBudget::default());
        assert!(!r.passes());
        assert!(r.failures().contains(&"(a) size"));
        assert!(r.failures().contains(&"(d) fixed point property"));
        // the square is a generator, not twice one
        assert!(r.failures().contains(&"(f) crown doubles the generator"));
    }

    #[test]
    fn builds_a_verified_kun_space() {
        let k = build_kun(&SearchBudget::default()).unwrap();
        assert!(k.report.passes(), "{:?}", k.report.failures());
        assert_eq!(k.poset.len(), 14);
        let names: BTreeSet<&str> = k.poset.names().iter().map(String::as_str).collect();
        for n in ["x", "y", "z", "w", "x'", "y'", "z'", "w'", "p1", "p6"] {
            assert!(names.contains(n), "{n}");
        }
        let weights = k.report.weights.as_ref().unwrap();
        assert_eq!(weights.len(), k.poset.covers().len());
    }

    #[test]
    fn standard_weights_on_the_crown() {
        let c = crown4();
        let kx = order_complex(&c);
        let h = Homology::of(&kx);
        let w = standard_weights(&c, &kx, &h).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.values().map(|v| v.abs()).sum::<i64>(), 1);
    }
}
