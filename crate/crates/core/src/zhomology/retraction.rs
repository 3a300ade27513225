use std::sync::Arc;

use serde::Serialize;

use super::chain::{Chain, ChainComplex, ChainMap};
use super::subdivision_op::relative_orientation;
use super::SparseMatrix;
use crate::scomplex::{
    carrier_hull, mapping_cylinder_named, Barycentric, CylinderNaming, MappingCylinder, Simplex, SimplicialComplex,
    SimplicialMap, VertexId,
};

/// The norm-controlled retraction of the cylinder of an approximation to the
/// identity `ψ: K′ → K` onto `K′`.
///
/// `K′` is ordered with barycenters of higher dimensional simplices first
/// (ties by name), `ψ(σ̂)` is the least vertex of `σ`, and a `k`-simplex `S`
/// of the cylinder goes to the subdivision chain of `S` inside the convex hull
/// of its vertices, or to zero when that hull is degenerate.
#[derive(Clone, Debug)]
pub struct CylinderRetraction {
    pub base: Arc<SimplicialComplex>,
    pub sub: Barycentric,
    pub order: Vec<VertexId>,
    pub psi: SimplicialMap,
    pub cylinder: MappingCylinder,
    /// `r_k: C_k(Z_ψ) → C_k(K′)`.
    pub r: ChainMap,
}

/// Outcome of checking the retraction exhaustively.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RetractionReport {
    pub chain_map: bool,
    pub retraction: bool,
    /// Largest `‖r_k(S)‖` per degree.
    pub max_norms: Vec<u64>,
    pub norm_bound_holds: bool,
    /// Number of simplices attaining `(k+1)!` per degree.
    pub saturating: Vec<usize>,
    /// Every saturating simplex with `k ≥ 1` lies in the base.
    pub saturation_in_base: bool,
    pub violations: Vec<String>,
}

impl RetractionReport {
    pub fn passes(&self) -> bool {
        self.chain_map && self.retraction && self.norm_bound_holds && self.saturation_in_base
    }
}

/// Where a cylinder vertex comes from.
#[derive(Clone, Copy)]
enum End {
    Sub(VertexId),
    Base(VertexId),
}

impl CylinderRetraction {
    pub fn new(k: &SimplicialComplex) -> Self {
        Self::with_naming(k, &CylinderNaming::default())
    }

    pub fn with_naming(k: &SimplicialComplex, naming: &CylinderNaming) -> Self {
        let base = Arc::new(k.clone());
        let sub = Barycentric::new(k);
        let kp = Arc::new(sub.complex.clone());
        let mut order: Vec<VertexId> = (0..kp.vertex_count() as VertexId).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(sub.carrier(v).len()));
        let psi_assign = (0..kp.vertex_count() as VertexId).map(|v| sub.carrier(v)[0]).collect();
        let psi = SimplicialMap::new(kp.clone(), base.clone(), psi_assign).expect("approximations are simplicial");
        let cylinder = mapping_cylinder_named(&psi, &order, naming).expect("order is total");

        let z = &cylinder.complex;
        let mut ends = vec![End::Base(0); z.vertex_count()];
        for (v, &zv) in cylinder.i.assignment().iter().enumerate() {
            ends[zv as usize] = End::Sub(v as VertexId);
        }
        for (w, &zv) in cylinder.j.assignment().iter().enumerate() {
            ends[zv as usize] = End::Base(w as VertexId);
        }
        let top = (z.dim() + 1).max(0) as usize;
        let maps = (0..top)
            .map(|d| {
                let cols = z.simplices(d).iter().map(|s| retract_simplex(k, &sub, &ends, s)).collect();
                SparseMatrix::from_columns(kp.count(d), cols)
            })
            .collect();
        CylinderRetraction { base, sub, order, psi, cylinder, r: ChainMap { maps } }
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        self.r.apply(c)
    }

    /// Checks the chain map, retraction and norm properties on every simplex.
    pub fn check(&self) -> RetractionReport {
        let z = &self.cylinder.complex;
        let cz = ChainComplex::new(z.clone());
        let ckp = ChainComplex::new(self.cylinder.i.source().clone());
        let chain_map = self.r.commutes_with_boundary(&cz, &ckp);
        let incl = ChainMap::induced(&self.cylinder.i);
        let composed = incl.then(&self.r);
        let retraction =
            composed.maps.iter().enumerate().all(|(k, m)| *m == SparseMatrix::identity(ckp.rank(k)));

        let mut max_norms = Vec::new();
        let mut saturating = Vec::new();
        let mut norm_bound_holds = true;
        let mut saturation_in_base = true;
        let mut violations = Vec::new();
        let base_vertex: Vec<bool> = {
            let mut b = vec![false; z.vertex_count()];
            for &zv in self.cylinder.j.assignment() {
                b[zv as usize] = true;
            }
            b
        };
        for (k, m) in self.r.maps.iter().enumerate() {
            let bound: u64 = (1..=k as u64 + 1).product();
            let mut worst = 0;
            let mut count = 0;
            for (idx, col) in m.columns().iter().enumerate() {
                let n: u64 = col.iter().map(|e| e.1.unsigned_abs()).sum();
                worst = worst.max(n);
                let s = &z.simplices(k)[idx];
                if n > bound {
                    norm_bound_holds = false;
                    violations.push(format!("‖r({})‖ = {n} > {bound}", z.format_simplex(s)));
                }
                if n == bound {
                    count += 1;
                    if k >= 1 && !s.iter().all(|&v| base_vertex[v as usize]) {
                        saturation_in_base = false;
                        violations.push(format!("{} saturates the bound outside the base", z.format_simplex(s)));
                    }
                }
            }
            max_norms.push(worst);
            saturating.push(count);
        }
        RetractionReport { chain_map, retraction, max_norms, norm_bound_holds, saturating, saturation_in_base, violations }
    }
}

fn retract_simplex(k: &SimplicialComplex, sub: &Barycentric, ends: &[End], s: &Simplex) -> Vec<(u32, i64)> {
    let parts: Vec<Simplex> = s
        .iter()
        .map(|&v| match ends[v as usize] {
            End::Sub(x) => sub.carrier(x).clone(),
            End::Base(w) => Simplex::vertex(w),
        })
        .collect();
    let mut uniq = parts.clone();
    uniq.sort();
    uniq.dedup();
    if uniq.len() < parts.len() {
        return Vec::new();
    }
    let hull = carrier_hull(k, &parts).expect("cylinder simplices satisfy the hull conditions");
    let dim = s.len() - 1;
    let kp = &sub.complex;
    hull.top_flags(dim)
        .map(|flag| {
            let mut verts: Vec<VertexId> = flag.iter().map(|f| sub.barycenter(f).expect("simplex of K")).collect();
            verts.sort_unstable();
            let t = Simplex::from_sorted(verts);
            let t_parts: Vec<Simplex> = t.iter().map(|&v| sub.carrier(v).clone()).collect();
            let sign = relative_orientation(&t_parts, &parts);
            debug_assert!(sign != 0, "hull simplices are nondegenerate");
            (kp.position(&t).expect("flag is a simplex of K′") as u32, sign)
        })
        .collect()
}
