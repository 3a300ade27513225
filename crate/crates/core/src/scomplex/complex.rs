use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use super::{Simplex, VertexId};

/// Facets larger than this are rejected; enumerating their faces is not desk-scale.
const MAX_FACET_SIZE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("facet {index} is empty")]
    EmptyFacet { index: usize },
    #[error("facet {index} lists vertex {vertex:?} more than once")]
    DuplicateVertex { index: usize, vertex: String },
    #[error("facet {index} has {size} vertices, more than the supported {max}")]
    FacetTooLarge { index: usize, size: usize, max: usize },
    #[error("vertex name {0:?} appears twice in the vertex table")]
    DuplicateName(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("{0} is not a simplex of the complex")]
    NotASimplex(String),
    #[error("label given for vertex {0:?}, which is not in the complex")]
    LabelForUnknownVertex(String),
    #[error("the complex is empty")]
    Empty,
    #[error("vertex order must list every source vertex exactly once")]
    InvalidOrder,
    #[error("{0}")]
    InvalidMap(String),
}

/// A finite abstract simplicial complex, stored by its facets.
///
/// Construction validates and canonicalises: facets are deduplicated, facets
/// contained in other facets are absorbed, vertices are sorted
/// lexicographically and unused vertex names are dropped. All faces are
/// enumerated once so that simplex lookups and chain bases are cheap.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    index: HashMap<String, VertexId>,
    facets: Vec<Simplex>,
    labels: Option<Vec<Vec<String>>>,
    simplices: Vec<Vec<Simplex>>,
    positions: Vec<HashMap<Simplex, usize>>,
    incidence: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Validates a list of raw facets given by vertex names.
    pub fn from_facets<S: AsRef<str>>(raw: &[Vec<S>]) -> Result<Self, ComplexError> {
        let mut names: Vec<String> = Vec::new();
        let mut lookup: HashMap<&str, VertexId> = HashMap::new();
        let mut facets = Vec::with_capacity(raw.len());
        for (index, facet) in raw.iter().enumerate() {
            if facet.is_empty() {
                return Err(ComplexError::EmptyFacet { index });
            }
            let mut ids = Vec::with_capacity(facet.len());
            for name in facet {
                let name = name.as_ref();
                let id = *lookup.entry(name).or_insert_with(|| {
                    names.push(name.to_string());
                    (names.len() - 1) as VertexId
                });
                ids.push(id);
            }
            facets.push(ids);
        }
        Self::from_parts(names, facets, None)
    }

    /// Builds a complex from a vertex table (not necessarily sorted, possibly
    /// containing unused names) and facets given as indices into it.
    pub fn from_parts(
        names: Vec<String>,
        facets: Vec<Vec<VertexId>>,
        labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self, ComplexError> {
        {
            let mut seen = HashSet::with_capacity(names.len());
            for n in &names {
                if !seen.insert(n.as_str()) {
                    return Err(ComplexError::DuplicateName(n.clone()));
                }
            }
        }
        let mut raw = Vec::with_capacity(facets.len());
        for (index, mut f) in facets.into_iter().enumerate() {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet { index });
            }
            if f.len() > MAX_FACET_SIZE {
                return Err(ComplexError::FacetTooLarge { index, size: f.len(), max: MAX_FACET_SIZE });
            }
            f.sort_unstable();
            if let Some(w) = f.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateVertex { index, vertex: names[w[0] as usize].clone() });
            }
            raw.push(f);
        }

        // canonical vertex order: lexicographic over the names actually used
        let mut used = vec![false; names.len()];
        for f in &raw {
            for &v in f {
                used[v as usize] = true;
            }
        }
        let mut order: Vec<usize> = (0..names.len()).filter(|&i| used[i]).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut remap = vec![VertexId::MAX; names.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as VertexId;
        }
        let vertices: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        let labels = labels.map(|l| order.iter().map(|&i| l[i].clone()).collect());

        let mut remapped: Vec<Simplex> =
            raw.into_iter().map(|f| Simplex::new(f.into_iter().map(|v| remap[v as usize]).collect())).collect();
        remapped.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        remapped.dedup();

        // absorb non-maximal sets
        let mut kept: Vec<Simplex> = Vec::new();
        let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for cand in remapped {
            let pivot = cand.iter().copied().min_by_key(|&v| incidence[v as usize].len()).expect("nonempty facet");
            let absorbed = incidence[pivot as usize].iter().any(|&fi| cand.is_face_of(&kept[fi]));
            if !absorbed {
                for &v in cand.iter() {
                    incidence[v as usize].push(kept.len());
                }
                kept.push(cand);
            }
        }
        kept.sort();
        Ok(Self::assemble(vertices, kept, labels))
    }

    fn assemble(vertices: Vec<String>, facets: Vec<Simplex>, labels: Option<Vec<Vec<String>>>) -> Self {
        let index = vertices.iter().enumerate().map(|(i, n)| (n.clone(), i as VertexId)).collect();
        let dim = facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut sets: Vec<HashSet<Simplex>> = vec![HashSet::new(); dim];
        for f in &facets {
            for face in f.faces() {
                sets[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Simplex>> = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<Simplex> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect();
        let positions = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (fi, f) in facets.iter().enumerate() {
            for &v in f.iter() {
                incidence[v as usize].push(fi);
            }
        }
        SimplicialComplex { vertices, index, facets, labels, simplices, positions, incidence }
    }

    /// Attaches provenance labels, keyed by vertex name.
    pub fn with_labels(mut self, labels: &BTreeMap<String, Vec<String>>) -> Result<Self, ComplexError> {
        let mut table = vec![Vec::new(); self.vertices.len()];
        for (name, label) in labels {
            let v = self.vertex_id(name).ok_or_else(|| ComplexError::LabelForUnknownVertex(name.clone()))?;
            table[v as usize] = label.clone();
        }
        self.labels = Some(table);
        Ok(self)
    }

    pub fn empty() -> Self {
        Self::assemble(Vec::new(), Vec::new(), None)
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v as usize]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: VertexId) -> Option<&[String]> {
        self.labels.as_ref().map(|l| l[v as usize].as_slice())
    }

    /// All `k`-simplices in canonical (lexicographic) order.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    /// Position of a simplex within [`Self::simplices`] of its dimension.
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.positions.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.position(s).is_some()
    }

    /// Facet indices containing the vertex.
    pub fn incident_facets(&self, v: VertexId) -> &[usize] {
        &self.incidence[v as usize]
    }

    /// Resolves vertex names into a simplex of this complex.
    pub fn simplex_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Simplex, ComplexError> {
        let mut ids = Vec::with_capacity(names.len());
        for n in names {
            ids.push(self.vertex_id(n.as_ref()).ok_or_else(|| ComplexError::UnknownVertex(n.as_ref().to_string()))?);
        }
        let s = Simplex::new(ids);
        if !self.contains(&s) {
            return Err(ComplexError::NotASimplex(self.format_simplex(&s)));
        }
        Ok(s)
    }

    pub fn names_of(&self, s: &Simplex) -> Vec<String> {
        s.iter().map(|&v| self.vertices[v as usize].clone()).collect()
    }

    pub fn format_simplex(&self, s: &Simplex) -> String {
        let names: Vec<&str> = s.iter().map(|&v| self.vertex_name(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Facets as lists of vertex names.
    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.names_of(f)).collect()
    }

    /// Number of facets containing `s`.
    pub fn degree(&self, s: &Simplex) -> Result<usize, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::NotASimplex(self.format_simplex(s)));
        }
        let pivot = s.iter().copied().min_by_key(|&v| self.incidence[v as usize].len()).expect("nonempty");
        Ok(self.incidence[pivot as usize].iter().filter(|&&fi| s.is_face_of(&self.facets[fi])).count())
    }

    pub fn vertex_degree(&self, v: VertexId) -> usize {
        self.incidence[v as usize].len()
    }

    /// Largest vertex degree and the vertices attaining it.
    pub fn max_degree(&self) -> Result<(usize, Vec<VertexId>), ComplexError> {
        if self.is_empty() {
            return Err(ComplexError::Empty);
        }
        let d = (0..self.vertex_count()).map(|v| self.incidence[v].len()).max().unwrap_or(0);
        let argmax = (0..self.vertex_count() as VertexId).filter(|&v| self.incidence[v as usize].len() == d).collect();
        Ok((d, argmax))
    }

    /// Whether every facet has dimension `dim()`.
    pub fn is_pure(&self) -> bool {
        let n = self.simplices.len();
        self.facets.iter().all(|f| f.len() == n)
    }

    /// Neighbours in the 1-skeleton.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> =
            self.incidence[v as usize].iter().flat_map(|&fi| self.facets[fi].iter().copied()).filter(|&w| w != v).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start as VertexId];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for w in self.neighbors(v) {
                    if comp[w as usize] == usize::MAX {
                        comp[w as usize] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The full subcomplex spanned by the named vertices.
    pub fn induced_subcomplex<S: AsRef<str>>(&self, names: &[S]) -> Result<SimplicialComplex, ComplexError> {
        let mut keep = vec![false; self.vertex_count()];
        for n in names {
            let v = self.vertex_id(n.as_ref()).ok_or_else(|| ComplexError::UnknownVertex(n.as_ref().to_string()))?;
            keep[v as usize] = true;
        }
        let mut faces: Vec<Vec<VertexId>> = Vec::new();
        for f in &self.facets {
            let part: Vec<VertexId> = f.iter().copied().filter(|&v| keep[v as usize]).collect();
            if !part.is_empty() {
                faces.push(part);
            }
        }
        Self::from_parts(self.vertices.clone(), faces, self.labels.clone())
    }

    /// Renames every vertex; the renaming must be injective.
    pub fn renamed(&self, mut rename: impl FnMut(&str) -> String) -> Result<SimplicialComplex, ComplexError> {
        let names: Vec<String> = self.vertices.iter().map(|n| rename(n)).collect();
        let facets = self.facets.iter().map(|f| f.to_vec()).collect();
        Self::from_parts(names, facets, self.labels.clone())
    }

    /// Union of complexes, identifying vertices with equal names.
    pub fn union<'a>(parts: impl IntoIterator<Item = &'a SimplicialComplex>) -> Result<SimplicialComplex, ComplexError> {
        let mut names: Vec<String> = Vec::new();
        let mut lookup: HashMap<String, VertexId> = HashMap::new();
        let mut facets = Vec::new();
        for part in parts {
            let ids: Vec<VertexId> = part
                .vertices
                .iter()
                .map(|n| {
                    *lookup.entry(n.clone()).or_insert_with(|| {
                        names.push(n.clone());
                        (names.len() - 1) as VertexId
                    })
                })
                .collect();
            for f in &part.facets {
                facets.push(f.iter().map(|&v| ids[v as usize]).collect());
            }
        }
        Self::from_parts(names, facets, None)
    }

    /// Facet lists compare equal (vertex names included).
    pub fn same_as(&self, other: &SimplicialComplex) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertices.len())
            .field("facets", &self.facet_names())
            .finish()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other) && self.labels == other.labels
    }
}

impl Eq for SimplicialComplex {}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cx(facets: &[&str]) -> SimplicialComplex {
        let raw: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::from_facets(&raw).unwrap()
    }

    #[test]
    fn absorbs_faces() {
        let k = cx(&["abc", "ab"]);
        assert_eq!(k.facet_names(), vec![vec!["a", "b", "c"]]);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn triangle_boundary() {
        let k = cx(&["ab", "bc", "ca"]);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.vertex_count(), 3);
        assert_eq!(k.facets().len(), 3);
    }

    #[test]
    fn empty_input() {
        let k = SimplicialComplex::from_facets::<String>(&[]).unwrap();
        assert_eq!(k.dim(), -1);
        assert!(k.is_empty());
        assert_eq!(k.max_degree(), Err(ComplexError::Empty));
    }

    #[test]
    fn rejects_bad_facets() {
        let e = SimplicialComplex::from_facets(&[vec!["a", "b"], vec![]]).unwrap_err();
        assert_eq!(e, ComplexError::EmptyFacet { index: 1 });
        let e = SimplicialComplex::from_facets(&[vec!["a", "b", "a"]]).unwrap_err();
        assert_eq!(e, ComplexError::DuplicateVertex { index: 0, vertex: "a".into() });
    }

    #[test]
    fn degrees_on_tetrahedron_boundary() {
        let k = cx(&["abc", "abd", "acd", "bcd"]);
        let a = k.simplex_from_names(&["a"]).unwrap();
        let ab = k.simplex_from_names(&["a", "b"]).unwrap();
        let abc = k.simplex_from_names(&["a", "b", "c"]).unwrap();
        assert_eq!(k.degree(&a).unwrap(), 3);
        assert_eq!(k.degree(&ab).unwrap(), 2);
        assert_eq!(k.degree(&abc).unwrap(), 1);
        assert_eq!(k.max_degree().unwrap(), (3, vec![0, 1, 2, 3]));
        assert!(k.degree(&Simplex::new(vec![0, 1, 2, 3])).is_err());
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(cx(&["abc", "bcd"]).max_degree().unwrap(), (2, vec![1, 2]));
        assert_eq!(cx(&["ab"]).max_degree().unwrap(), (1, vec![0, 1]));
    }

    #[test]
    fn incidence_identity_on_pure_complex() {
        let k = cx(&["abc", "abd", "acd", "bcd"]);
        let total: usize = (0..4).map(|v| k.vertex_degree(v)).sum();
        assert_eq!(total, 3 * k.facets().len());
    }

    #[test]
    fn union_glues_by_name() {
        let a = cx(&["ab", "bc"]);
        let b = cx(&["cd", "da"]);
        let u = SimplicialComplex::union([&a, &b]).unwrap();
        assert_eq!(u.vertex_count(), 4);
        assert_eq!(u.facets().len(), 4);
        assert_eq!(u.components().len(), 1);
    }
}
