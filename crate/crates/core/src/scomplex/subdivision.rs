use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ComplexError, Simplex, SimplicialComplex, SimplicialMap, VertexId};

/// Canonical name of the barycenter of a simplex with the given vertex names.
pub fn barycenter_name<S: AsRef<str>>(names: &[S]) -> String {
    let parts: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
    format!("({})", parts.join(","))
}

/// The barycentric subdivision together with the simplex each new vertex is
/// the barycenter of.
#[derive(Clone, Debug)]
pub struct Barycentric {
    pub complex: SimplicialComplex,
    carriers: Vec<Simplex>,
    vertex_of: HashMap<Simplex, VertexId>,
}

impl Barycentric {
    pub fn new(k: &SimplicialComplex) -> Self {
        let all: Vec<&Simplex> = k.all_simplices().collect();
        let slot: HashMap<&Simplex, VertexId> = all.iter().enumerate().map(|(i, s)| (*s, i as VertexId)).collect();
        let names: Vec<String> = all.iter().map(|s| barycenter_name(&k.names_of(s))).collect();
        let labels: Vec<Vec<String>> = all.iter().map(|s| k.names_of(s)).collect();

        let mut facets = Vec::new();
        for f in k.facets() {
            let mut perm: Vec<VertexId> = f.to_vec();
            for_each_permutation(&mut perm, &mut |p| {
                let mut flag = Vec::with_capacity(p.len());
                for i in 1..=p.len() {
                    let face = Simplex::new(p[..i].to_vec());
                    flag.push(slot[&face]);
                }
                facets.push(flag);
            });
        }
        let complex =
            SimplicialComplex::from_parts(names, facets, Some(labels)).expect("flags of a valid complex are valid");
        let mut carriers = vec![Simplex::default(); complex.vertex_count()];
        let mut vertex_of = HashMap::with_capacity(all.len());
        for s in all {
            let v = complex.vertex_id(&barycenter_name(&k.names_of(s))).expect("every simplex has a barycenter");
            carriers[v as usize] = s.clone();
            vertex_of.insert(s.clone(), v);
        }
        Barycentric { complex, carriers, vertex_of }
    }

    /// The simplex of the original complex a vertex is the barycenter of.
    pub fn carrier(&self, v: VertexId) -> &Simplex {
        &self.carriers[v as usize]
    }

    /// The vertex `b(σ)`.
    pub fn barycenter(&self, s: &Simplex) -> Option<VertexId> {
        self.vertex_of.get(s).copied()
    }

    /// The smallest simplex of the original complex containing a simplex of
    /// the subdivision (the top of its flag).
    pub fn support(&self, s: &Simplex) -> Simplex {
        s.iter().map(|&v| &self.carriers[v as usize]).max_by_key(|c| c.len()).cloned().unwrap_or_default()
    }
}

/// Heap's algorithm, visiting every ordering of `items` in place.
fn for_each_permutation(items: &mut [VertexId], visit: &mut impl FnMut(&[VertexId])) {
    fn go(k: usize, items: &mut [VertexId], visit: &mut impl FnMut(&[VertexId])) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, visit);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, visit);
    }
    go(items.len(), items, visit);
}

impl SimplicialComplex {
    /// The barycentric subdivision K′, vertices labelled by the simplices of K.
    pub fn barycentric(&self) -> SimplicialComplex {
        Barycentric::new(self).complex
    }

    /// The `j`-th iterated barycentric subdivision.
    pub fn barycentric_iterated(&self, j: u32) -> SimplicialComplex {
        let mut k = self.clone();
        for _ in 0..j {
            k = k.barycentric();
        }
        k
    }

    /// Stars the simplex `s` at a fresh vertex.
    pub fn stellar_subdivide(&self, s: &Simplex) -> Result<StellarSubdivision, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::NotASimplex(self.format_simplex(s)));
        }
        let stem = format!("b{}", barycenter_name(&self.names_of(s)));
        let new_name = (0u64..).map(|t| format!("{stem}#{t}")).find(|n| self.vertex_id(n).is_none()).expect("unbounded");

        let mut names = self.vertex_names().to_vec();
        names.push(new_name.clone());
        let b = (names.len() - 1) as VertexId;
        let mut facets = Vec::with_capacity(self.facets().len() + s.len());
        for f in self.facets() {
            if s.is_face_of(f) {
                for &w in s.iter() {
                    let mut piece = f.without(w).into_vertices();
                    piece.push(b);
                    facets.push(piece);
                }
            } else {
                facets.push(f.to_vec());
            }
        }
        let complex = SimplicialComplex::from_parts(names, facets, None)?;
        Ok(StellarSubdivision { complex, new_vertex: new_name, starred: self.names_of(s) })
    }
}

/// Result of starring one simplex.
#[derive(Clone, Debug)]
pub struct StellarSubdivision {
    pub complex: SimplicialComplex,
    pub new_vertex: String,
    /// Vertex names of the starred simplex.
    pub starred: Vec<String>,
}

impl SimplicialMap {
    /// The induced map `b(σ) ↦ b(φ(σ))` between barycentric subdivisions.
    pub fn barycentric(&self) -> SimplicialMap {
        let src = Barycentric::new(self.source());
        let tgt = Barycentric::new(self.target());
        self.barycentric_between(&src, &tgt)
    }

    /// Same as [`Self::barycentric`] with precomputed subdivisions.
    pub fn barycentric_between(&self, src: &Barycentric, tgt: &Barycentric) -> SimplicialMap {
        let assign = (0..src.complex.vertex_count() as VertexId)
            .map(|v| tgt.barycenter(&self.image(src.carrier(v))).expect("images of simplices are simplices"))
            .collect();
        SimplicialMap::new(Arc::new(src.complex.clone()), Arc::new(tgt.complex.clone()), assign)
            .expect("induced maps on subdivisions are simplicial")
    }

    /// The `j`-th iterate `φ^j: K^j → L^j`.
    pub fn barycentric_iterated(&self, j: u32) -> SimplicialMap {
        let mut m = self.clone();
        for _ in 0..j {
            m = m.barycentric();
        }
        m
    }
}

/// Upper bound `(n/(n+1))^s` on the simplex diameter of the `s`-th
/// subdivision of an `n`-complex in the standard L∞ barycentric metric.
pub fn mesh_bound(n: usize, s: u32) -> BigRational {
    let ratio = BigRational::new(BigInt::from(n), BigInt::from(n + 1));
    num_traits::pow(ratio, s as usize)
}
