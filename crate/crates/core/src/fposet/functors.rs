use std::collections::HashMap;
use std::sync::Arc;

use super::{FinitePoset, MonotoneMap, PointId};
use crate::scomplex::{barycenter_name, Simplex, SimplicialComplex, SimplicialMap};

/// `X(K)`, the poset of simplices of `K` ordered by inclusion.
///
/// A simplex is named like its barycenter, so `K(X(K))` and `K′` have the
/// same vertex names.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub poset: Arc<FinitePoset>,
    /// The simplex of `K` behind each point.
    pub simplex_of: Vec<Simplex>,
    point_of: HashMap<Simplex, PointId>,
}

impl FacePoset {
    pub fn new(k: &SimplicialComplex) -> Self {
        let simplices: Vec<Simplex> = k.all_simplices().cloned().collect();
        let names: Vec<String> = simplices.iter().map(|s| barycenter_name(&k.names_of(s))).collect();
        let mut relations = Vec::new();
        for s in &simplices {
            if s.len() > 1 {
                let top = barycenter_name(&k.names_of(s));
                for (f, _) in s.boundary() {
                    relations.push((barycenter_name(&k.names_of(&f)), top.clone()));
                }
            }
        }
        let poset = FinitePoset::from_relations(&names, &relations).expect("inclusion is a partial order");
        let mut simplex_of = vec![Simplex::default(); poset.len()];
        let mut point_of = HashMap::with_capacity(simplices.len());
        for (s, n) in simplices.into_iter().zip(&names) {
            let p = poset.id(n).expect("named above");
            point_of.insert(s.clone(), p);
            simplex_of[p as usize] = s;
        }
        FacePoset { poset: Arc::new(poset), simplex_of, point_of }
    }

    pub fn point(&self, s: &Simplex) -> Option<PointId> {
        self.point_of.get(s).copied()
    }
}

pub fn face_poset(k: &SimplicialComplex) -> FinitePoset {
    FacePoset::new(k).poset.as_ref().clone()
}

/// `K(X)`: vertices are the points, simplices the nonempty chains.
pub fn order_complex(x: &FinitePoset) -> SimplicialComplex {
    let mut facets: Vec<Vec<&str>> = Vec::new();
    let mut chain: Vec<PointId> = Vec::new();
    for m in x.minimal() {
        chain.push(m);
        maximal_chains(x, &mut chain, &mut facets);
        chain.pop();
    }
    SimplicialComplex::from_facets(&facets).expect("chains are simplices")
}

fn maximal_chains<'a>(x: &'a FinitePoset, chain: &mut Vec<PointId>, out: &mut Vec<Vec<&'a str>>) {
    let top = *chain.last().expect("nonempty chain");
    let up = x.upper_covers(top);
    if up.is_empty() {
        out.push(chain.iter().map(|&p| x.name(p)).collect());
        return;
    }
    for &y in up {
        chain.push(y);
        maximal_chains(x, chain, out);
        chain.pop();
    }
}

/// `X(φ)`: a simplex goes to its image simplex.
pub fn face_map(phi: &SimplicialMap, source: &FacePoset, target: &FacePoset) -> MonotoneMap {
    let assign = source
        .simplex_of
        .iter()
        .map(|s| target.point(&phi.image(s)).expect("images are simplices of the target"))
        .collect();
    MonotoneMap::new(source.poset.clone(), target.poset.clone(), assign).expect("images of faces are faces")
}

/// `K(f)`: the same point map, read on vertices of the order complexes.
pub fn order_map(f: &MonotoneMap, source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>) -> SimplicialMap {
    let (x, y) = (f.source(), f.target());
    let assign = source
        .vertex_names()
        .iter()
        .map(|n| {
            let p = x.id(n).expect("order complex of the source");
            target.vertex_id(y.name(f.apply(p))).expect("order complex of the target")
        })
        .collect();
    SimplicialMap::new(source, target, assign).expect("monotone maps send chains to chains")
}
