use std::collections::BTreeMap;
use std::sync::Arc;

use super::{FinitePoset, PointId, PosetError};

/// An order-preserving (continuous) map of finite spaces.
#[derive(Clone, Debug)]
pub struct MonotoneMap {
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
    assign: Vec<PointId>,
}

impl MonotoneMap {
    pub fn new(source: Arc<FinitePoset>, target: Arc<FinitePoset>, assign: Vec<PointId>) -> Result<Self, PosetError> {
        if assign.len() != source.len() {
            return Err(PosetError::InvalidMap(format!(
                "assignment has {} entries for {} points",
                assign.len(),
                source.len()
            )));
        }
        if assign.iter().any(|&y| y as usize >= target.len()) {
            return Err(PosetError::InvalidMap("image outside the target".into()));
        }
        for &(a, b) in source.covers() {
            if !target.le(assign[a as usize], assign[b as usize]) {
                return Err(PosetError::NotMonotone(source.name(a).into(), source.name(b).into()));
            }
        }
        Ok(MonotoneMap { source, target, assign })
    }

    pub fn from_names(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        assign: &BTreeMap<String, String>,
    ) -> Result<Self, PosetError> {
        let ids = source
            .names()
            .iter()
            .map(|n| {
                let image = assign.get(n).ok_or_else(|| PosetError::InvalidMap(format!("no image given for {n:?}")))?;
                target.id_or_err(image)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, ids)
    }

    pub fn identity(x: Arc<FinitePoset>) -> Self {
        let assign = x.points().collect();
        MonotoneMap { source: x.clone(), target: x, assign }
    }

    pub fn source(&self) -> &Arc<FinitePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    pub fn assignment(&self) -> &[PointId] {
        &self.assign
    }

    pub fn apply(&self, x: PointId) -> PointId {
        self.assign[x as usize]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap, PosetError> {
        if self.target.as_ref() != other.source.as_ref() {
            return Err(PosetError::InvalidMap("composition of maps that do not match".into()));
        }
        let assign = self.assign.iter().map(|&y| other.assign[y as usize]).collect();
        Ok(MonotoneMap { source: self.source.clone(), target: other.target.clone(), assign })
    }

    pub fn named_assignment(&self) -> BTreeMap<String, String> {
        self.source
            .points()
            .map(|x| (self.source.name(x).to_string(), self.target.name(self.apply(x)).to_string()))
            .collect()
    }

    /// Fixed points of a self-map.
    pub fn fixed_points(&self) -> Vec<PointId> {
        self.source.points().filter(|&x| self.apply(x) == x).collect()
    }

    pub fn is_self_map(&self) -> bool {
        self.source.as_ref() == self.target.as_ref()
    }
}
