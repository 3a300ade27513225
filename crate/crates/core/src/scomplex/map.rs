use std::collections::BTreeMap;
use std::sync::Arc;

use super::{ComplexError, Simplex, SimplicialComplex, VertexId};

/// A vertex map between complexes that sends simplices to simplices.
///
/// Source and target are shared so that chains of maps over the same complexes
/// do not copy them.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    assign: Vec<VertexId>,
}

impl SimplicialMap {
    /// Checks that `assign` is total and simplicial.
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        assign: Vec<VertexId>,
    ) -> Result<Self, ComplexError> {
        if assign.len() != source.vertex_count() {
            return Err(ComplexError::InvalidMap(format!(
                "assignment has {} entries for {} source vertices",
                assign.len(),
                source.vertex_count()
            )));
        }
        if let Some(&bad) = assign.iter().find(|&&w| w as usize >= target.vertex_count()) {
            return Err(ComplexError::InvalidMap(format!("vertex index {bad} is outside the target")));
        }
        let map = SimplicialMap { source, target, assign };
        for f in map.source.facets() {
            let image = map.image(f);
            if !map.target.contains(&image) {
                return Err(ComplexError::InvalidMap(format!(
                    "facet {} maps to {}, which is not a simplex of the target",
                    map.source.format_simplex(f),
                    map.target.format_simplex(&image)
                )));
            }
        }
        Ok(map)
    }

    /// Builds a map from a name-to-name assignment.
    pub fn from_names(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        assign: &BTreeMap<String, String>,
    ) -> Result<Self, ComplexError> {
        let mut ids = Vec::with_capacity(source.vertex_count());
        for name in source.vertex_names() {
            let image = assign
                .get(name)
                .ok_or_else(|| ComplexError::InvalidMap(format!("no image given for vertex {name:?}")))?;
            ids.push(target.vertex_id(image).ok_or_else(|| ComplexError::UnknownVertex(image.clone()))?);
        }
        for name in assign.keys() {
            if source.vertex_id(name).is_none() {
                return Err(ComplexError::UnknownVertex(name.clone()));
            }
        }
        Self::new(source, target, ids)
    }

    pub fn identity(k: Arc<SimplicialComplex>) -> Self {
        let assign = (0..k.vertex_count() as VertexId).collect();
        SimplicialMap { source: k.clone(), target: k, assign }
    }

    /// Every source vertex goes to the named target vertex.
    pub fn constant(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, to: VertexId) -> Self {
        let assign = vec![to; source.vertex_count()];
        SimplicialMap { source, target, assign }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn assignment(&self) -> &[VertexId] {
        &self.assign
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.assign[v as usize]
    }

    /// Image simplex (possibly of lower dimension).
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.iter().map(|&v| self.assign[v as usize]).collect())
    }

    /// The image with the sign of the vertex permutation, or `None` when the
    /// image is degenerate.
    pub fn oriented_image(&self, s: &Simplex) -> Option<(Simplex, i64)> {
        let mut image: Vec<VertexId> = s.iter().map(|&v| self.assign[v as usize]).collect();
        let sign = super::simplex::sort_sign(&mut image);
        if image.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex::from_sorted(image), sign))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap, ComplexError> {
        if !self.target.same_as(&other.source) {
            return Err(ComplexError::InvalidMap("composition of maps with mismatched complexes".into()));
        }
        let assign = self.assign.iter().map(|&v| other.assign[v as usize]).collect();
        Ok(SimplicialMap { source: self.source.clone(), target: other.target.clone(), assign })
    }

    pub fn is_identity(&self) -> bool {
        self.source.same_as(&self.target) && self.assign.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Name-level description of the assignment.
    pub fn named_assignment(&self) -> BTreeMap<String, String> {
        self.source
            .vertex_names()
            .iter()
            .zip(&self.assign)
            .map(|(a, &b)| (a.clone(), self.target.vertex_name(b).to_string()))
            .collect()
    }

    /// Whether the map is a bijection on vertices that is simplicial both ways.
    pub fn is_isomorphism(&self) -> bool {
        let n = self.target.vertex_count();
        if self.source.vertex_count() != n || self.source.facets().len() != self.target.facets().len() {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.assign {
            if std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        let mut images: Vec<Simplex> = self.source.facets().iter().map(|f| self.image(f)).collect();
        images.sort();
        images == self.target.facets()
    }

    /// Restriction to a full subcomplex named by `sub`, landing in the same target.
    pub fn restrict(&self, sub: Arc<SimplicialComplex>) -> Result<SimplicialMap, ComplexError> {
        let mut assign = Vec::with_capacity(sub.vertex_count());
        for name in sub.vertex_names() {
            let v = self.source.vertex_id(name).ok_or_else(|| ComplexError::UnknownVertex(name.clone()))?;
            assign.push(self.assign[v as usize]);
        }
        Self::new(sub, self.target.clone(), assign)
    }
}
