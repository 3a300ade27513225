use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use super::kun::Kun;
use super::plan::{index_within, DepthPlan};
use super::realization::Realization;
use super::thm4::{assemble, AssembledComplex, AssemblyCheck, AssemblyError};
use crate::fixtest::{fpp_check, Certificate, SearchBudget};
use crate::fposet::{face_poset, nh_cylinder_named, order_complex, order_map, FacePoset, FinitePoset, MonotoneMap};
use crate::scomplex::{SimplicialComplex, VertexId};
use crate::zhomology::{ChainMap, Homology};

#[derive(Debug, Clone, Error)]
pub enum MainError {
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error("realization {0}: a 1-dimensional realization must be a single cycle")]
    NotACycle(String),
    #[error("realization {name}: h has degree {degree}, not ±1")]
    Degree { name: String, degree: String },
    #[error("gluing failed: {0}")]
    Glue(String),
}

/// One attached Kun block `B_h`.
#[derive(Clone, Debug, Serialize)]
pub struct KunBlock {
    pub realization: String,
    /// Prefix of this copy's points.
    pub prefix: String,
    /// `h` on the points of `X(M)`.
    pub h: BTreeMap<String, String>,
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub degree: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssembledSpace {
    #[serde(skip)]
    pub poset: Arc<FinitePoset>,
    pub points: usize,
    pub l: AssembledComplex,
    pub blocks: Vec<KunBlock>,
    pub checks: Vec<AssemblyCheck>,
    pub fpp: Option<Certificate>,
}

impl AssembledSpace {
    pub fn passes(&self) -> bool {
        self.l.passes() && self.checks.iter().all(|c| c.passed)
    }
}

/// Builds `X = X(L) ∪ ⋃ B_{h_l}` where `L` carries cylinders for every
/// realization of dimension at least 1 and each `h_l` wraps the face poset
/// of the free extreme `M_{1,l}` once around the retract crown of a fresh
/// copy of the Kun space.
///
/// The fixed point property of `X` is searched for only when
/// `fpp_budget` is given.
pub fn assemble_main(
    k: &SimplicialComplex,
    data: &[Realization],
    plan: &DepthPlan,
    kun: &Kun,
    limit: u64,
    fpp_budget: Option<&SearchBudget>,
) -> Result<AssembledSpace, MainError> {
    let l = assemble(k, data, plan, 1, limit)?;
    let glue = |e: crate::PosetError| MainError::Glue(e.to_string());
    let xl = face_poset(&l.complex);

    let mut pieces: Vec<FinitePoset> = Vec::new();
    let mut blocks = Vec::new();
    for (i, _) in data.iter().enumerate().filter(|(_, r)| r.k == 1) {
        let idx = index_within(data, i);
        let name = format!("M1.{idx}");
        let free = l.subobject(&format!("{name}/free")).expect("registered by assemble");
        let names: Vec<&String> = l.complex.vertex_names().iter().filter(|n| n.starts_with(&free.prefix)).collect();
        let m = l.complex.induced_subcomplex(&names).map_err(|e| MainError::Glue(e.to_string()))?;
        let cycle = cyclic_order(&m).ok_or_else(|| MainError::NotACycle(name.clone()))?;

        let prefix = format!("Kun{idx}|");
        let copy = Arc::new(kun.poset.renamed(|n| format!("{prefix}{n}")).map_err(glue)?);
        let xm = FacePoset::new(&m);
        let h = wrap_once(&cycle, &xm, &copy, &prefix, &kun.points.retract_crown());
        let degree = map_degree(&h);
        if degree.abs() != BigInt::one() {
            return Err(MainError::Degree { name, degree: degree.to_string() });
        }
        let b = nh_cylinder_named(&h, "", "").map_err(glue)?;
        pieces.push(b.poset.as_ref().clone());
        blocks.push(KunBlock { realization: name, prefix, h: h.named_assignment(), degree });
    }
    let poset = Arc::new(FinitePoset::union(std::iter::once(&xl).chain(pieces.iter())).map_err(glue)?);

    let mut checks = Vec::new();
    let hx = Homology::of(&order_complex(&poset));
    let hk = Homology::of(k);
    checks.push(AssemblyCheck {
        name: "space homology".into(),
        passed: hx.isomorphic_to(&hk),
        detail: format!("betti {:?} vs {:?}", hx.betti(), hk.betti()),
    });
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut disjoint = true;
    let mut embedded = true;
    for b in &blocks {
        let own: Vec<&String> = poset.names().iter().filter(|n| n.starts_with(&b.prefix)).collect();
        disjoint &= own.iter().all(|n| seen.insert(n.as_str())) && own.len() == kun.poset.len();
        let sub = poset.induced_by_names(&own).map_err(glue)?;
        let back = sub.renamed(|n| n[b.prefix.len()..].to_string()).map_err(glue)?;
        embedded &= back.cover_names() == kun.poset.cover_names() && back.names() == kun.poset.names();
    }
    checks.push(AssemblyCheck {
        name: "kun copies".into(),
        passed: disjoint && embedded && blocks.len() == data.iter().filter(|r| r.k == 1).count(),
        detail: format!("{} disjoint copies embedded as subspaces", blocks.len()),
    });
    checks.push(AssemblyCheck {
        name: "h degrees".into(),
        passed: blocks.iter().all(|b| b.degree.abs() == BigInt::one()),
        detail: blocks.iter().map(|b| format!("{}: {}", b.realization, b.degree)).collect::<Vec<_>>().join("; "),
    });
    let fpp = fpp_budget.map(|b| fpp_check(&poset, b));
    Ok(AssembledSpace { points: poset.len(), poset, l, blocks, checks, fpp })
}

/// Vertices of a connected closed 1-pseudomanifold in cyclic order, starting
/// at the least vertex towards its lesser neighbour.
fn cyclic_order(m: &SimplicialComplex) -> Option<Vec<VertexId>> {
    let report = m.pseudomanifold_check();
    if m.dim() != 1 || !report.is_closed_pseudomanifold() {
        return None;
    }
    let mut order = vec![0];
    let mut prev = u32::MAX;
    let mut cur = 0;
    loop {
        let next = m.neighbors(cur).into_iter().find(|&v| v != prev)?;
        if next == 0 {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == m.vertex_count()).then_some(order)
}

/// `v_0 ↦ z′`, `v_j ↦ w′` for `j = ⌊len/2⌋`, the vertices and edges of the
/// arc `v_0 … v_j` in between to `x′` and those of the other arc to `y′`.
fn wrap_once(
    cycle: &[VertexId],
    xm: &FacePoset,
    kun: &Arc<FinitePoset>,
    prefix: &str,
    crown: &[&str; 4],
) -> MonotoneMap {
    let [x2, y2, z2, w2] = crown.map(|n| kun.id(&format!("{prefix}{n}")).expect("retract crown point"));
    let len = cycle.len();
    let j = len / 2;
    let mut assign = vec![0; xm.poset.len()];
    for (pos, &v) in cycle.iter().enumerate() {
        let vertex_image = if pos == 0 {
            z2
        } else if pos == j {
            w2
        } else if pos < j {
            x2
        } else {
            y2
        };
        let p = xm.point(&crate::Simplex::vertex(v)).expect("vertex of M");
        assign[p as usize] = vertex_image;
        let e = crate::Simplex::new(vec![v, cycle[(pos + 1) % len]]);
        let q = xm.point(&e).expect("edge of M");
        assign[q as usize] = if pos < j { x2 } else { y2 };
    }
    MonotoneMap::new(xm.poset.clone(), kun.clone(), assign).expect("wrap-once maps are monotone")
}

/// The integer `h_*: H_1(K(X(M))) → H_1(K(Κ))`.
fn map_degree(h: &MonotoneMap) -> BigInt {
    let ks = Arc::new(order_complex(h.source()));
    let kt = Arc::new(order_complex(h.target()));
    let g = order_map(h, ks.clone(), kt.clone());
    let hs = Homology::of(&ks);
    let ht = Homology::of(&kt);
    let m = hs.induced_matrix(&ht, &ChainMap::induced(&g), 1);
    if m.rows() == 1 && m.cols() == 1 {
        m.get(0, 0).clone()
    } else {
        BigInt::from(0)
    }
}
