use std::sync::Arc;

use super::{ComplexError, SimplicialComplex, SimplicialMap, VertexId};

/// Prefixes that keep source and target vertices apart in a cylinder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderNaming {
    pub source_tag: String,
    pub target_tag: String,
}

impl Default for CylinderNaming {
    fn default() -> Self {
        CylinderNaming { source_tag: "s:".into(), target_tag: "t:".into() }
    }
}

impl CylinderNaming {
    pub fn source_name(&self, v: &str) -> String {
        format!("{}{v}", self.source_tag)
    }

    pub fn target_name(&self, v: &str) -> String {
        format!("{}{v}", self.target_tag)
    }
}

/// The simplicial mapping cylinder `Z_φ` with its structure maps.
#[derive(Clone, Debug)]
pub struct MappingCylinder {
    pub complex: Arc<SimplicialComplex>,
    /// Inclusion of the source.
    pub i: SimplicialMap,
    /// Inclusion of the target.
    pub j: SimplicialMap,
    /// Retraction onto the target, with `p∘i = φ` and `p∘j = id`.
    pub p: SimplicialMap,
    pub naming: CylinderNaming,
    /// Source vertices in the order used to build the cylinder.
    pub order: Vec<VertexId>,
}

/// Mapping cylinder with the lexicographic vertex order and default tags.
pub fn mapping_cylinder(phi: &SimplicialMap) -> MappingCylinder {
    let order: Vec<VertexId> = (0..phi.source().vertex_count() as VertexId).collect();
    mapping_cylinder_named(phi, &order, &CylinderNaming::default()).expect("lexicographic order is total")
}

/// Mapping cylinder relative to a total `order` on the source vertices
/// (listed from first to last).
///
/// For each source facet `v_0 < … < v_m` the cylinder contains the sets
/// `{v_0, …, v_l, φ(v_l), …, φ(v_m)}`, together with all target simplices.
pub fn mapping_cylinder_named(
    phi: &SimplicialMap,
    order: &[VertexId],
    naming: &CylinderNaming,
) -> Result<MappingCylinder, ComplexError> {
    let k = phi.source();
    let l = phi.target();
    let nk = k.vertex_count();
    let mut rank = vec![usize::MAX; nk];
    for (r, &v) in order.iter().enumerate() {
        if v as usize >= nk || rank[v as usize] != usize::MAX {
            return Err(ComplexError::InvalidOrder);
        }
        rank[v as usize] = r;
    }
    if order.len() != nk {
        return Err(ComplexError::InvalidOrder);
    }

    // source vertex v is slot v, target vertex w is slot nk + w
    let mut names: Vec<String> = k.vertex_names().iter().map(|n| naming.source_name(n)).collect();
    names.extend(l.vertex_names().iter().map(|n| naming.target_name(n)));
    let mut facets: Vec<Vec<VertexId>> = Vec::new();
    for f in k.facets() {
        let mut seq = f.to_vec();
        seq.sort_by_key(|&v| rank[v as usize]);
        for cut in 0..seq.len() {
            let mut cell: Vec<VertexId> = seq[..=cut].to_vec();
            cell.extend(seq[cut..].iter().map(|&v| nk as VertexId + phi.apply(v)));
            cell.sort_unstable();
            cell.dedup();
            facets.push(cell);
        }
    }
    for f in l.facets() {
        facets.push(f.iter().map(|&w| nk as VertexId + w).collect());
    }
    let z = Arc::new(SimplicialComplex::from_parts(names, facets, None)?);

    let slot = |name: String| z.vertex_id(&name).expect("cylinder contains both ends");
    let i_assign = k.vertex_names().iter().map(|n| slot(naming.source_name(n))).collect();
    let j_assign: Vec<VertexId> = l.vertex_names().iter().map(|n| slot(naming.target_name(n))).collect();
    let mut p_assign = vec![0; z.vertex_count()];
    for (v, n) in k.vertex_names().iter().enumerate() {
        p_assign[slot(naming.source_name(n)) as usize] = phi.apply(v as VertexId);
    }
    for (w, n) in l.vertex_names().iter().enumerate() {
        p_assign[slot(naming.target_name(n)) as usize] = w as VertexId;
    }
    let i = SimplicialMap::new(k.clone(), z.clone(), i_assign)?;
    let j = SimplicialMap::new(l.clone(), z.clone(), j_assign)?;
    let p = SimplicialMap::new(z.clone(), l.clone(), p_assign)?;
    Ok(MappingCylinder { complex: z, i, j, p, naming: naming.clone(), order: order.to_vec() })
}
