use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Index of a point in a [`FinitePoset`]; points are sorted by name.
pub type PointId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("point {0:?} is listed twice")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("cover ({0:?}, {0:?}) relates a point to itself")]
    SelfCover(String),
    #[error("the covers contain a cycle through {0:?}")]
    Cycle(String),
    #[error("cover ({0:?}, {1:?}) is implied by transitivity")]
    RedundantCover(String, String),
    #[error("map is not order preserving: {0:?} ≤ {1:?} but their images are not related")]
    NotMonotone(String, String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("the poset is empty")]
    Empty,
}

/// A finite T₀ space, stored as a partial order on named points.
///
/// `a < b` means `a` lies in every open set containing `b`; open sets are the
/// down-sets.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, PointId>,
    /// Sorted, irredundant.
    covers: Vec<(PointId, PointId)>,
    up: Vec<Vec<PointId>>,
    down: Vec<Vec<PointId>>,
    /// `below[b]` = points strictly less than `b`.
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers == other.covers
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Strict validation: the covers must be acyclic and irredundant.
    pub fn from_covers<S: AsRef<str>>(points: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        let p = Self::from_relations(points, covers)?;
        if p.covers.len() != covers.len() {
            let mut seen = BTreeSet::new();
            for (a, b) in covers {
                let (a, b) = (p.id_or_err(a.as_ref())?, p.id_or_err(b.as_ref())?);
                if !seen.insert((a, b)) || !p.covers.contains(&(a, b)) {
                    return Err(PosetError::RedundantCover(p.name(a).into(), p.name(b).into()));
                }
            }
        }
        Ok(p)
    }

    /// The order generated by arbitrary relations `a < b`; implied covers are
    /// dropped.
    pub fn from_relations<S: AsRef<str>>(points: &[S], relations: &[(S, S)]) -> Result<Self, PosetError> {
        let mut names: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicatePoint(w[0].clone()));
        }
        let index: HashMap<String, PointId> = names.iter().enumerate().map(|(i, s)| (s.clone(), i as PointId)).collect();
        let mut pairs = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            let ia = *index.get(a.as_ref()).ok_or_else(|| PosetError::UnknownPoint(a.as_ref().into()))?;
            let ib = *index.get(b.as_ref()).ok_or_else(|| PosetError::UnknownPoint(b.as_ref().into()))?;
            if ia == ib {
                return Err(PosetError::SelfCover(a.as_ref().into()));
            }
            pairs.push((ia, ib));
        }
        let below = closure(names.len(), &pairs).map_err(|v| PosetError::Cycle(names[v as usize].clone()))?;
        Ok(Self::from_below(names, index, below))
    }

    /// Builds a poset from sorted names and transitive strict down-sets.
    pub(crate) fn from_below(names: Vec<String>, index: HashMap<String, PointId>, below: Vec<FixedBitSet>) -> Self {
        let n = names.len();
        let mut covers = Vec::new();
        for b in 0..n {
            let mut implied = FixedBitSet::with_capacity(n);
            for c in below[b].ones() {
                implied.union_with(&below[c]);
            }
            let mut direct = below[b].clone();
            direct.difference_with(&implied);
            covers.extend(direct.ones().map(|a| (a as PointId, b as PointId)));
        }
        covers.sort_unstable();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (b, set) in below.iter().enumerate() {
            for a in set.ones() {
                above[a].insert(b);
            }
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up[a as usize].push(b);
            down[b as usize].push(a);
        }
        for v in down.iter_mut() {
            v.sort_unstable();
        }
        FinitePoset { names, index, covers, up, down, below, above }
    }

    /// Builds a poset on `names` (any order) from a strict order predicate
    /// given on indices into `names`; the predicate must be transitive.
    pub fn from_order(names: Vec<String>, less: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let sorted: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicatePoint(w[0].clone()));
        }
        let n = names.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (nb, &b) in order.iter().enumerate() {
            for (na, &a) in order.iter().enumerate() {
                if a != b && less(a, b) {
                    below[nb].insert(na);
                }
            }
        }
        for b in 0..n {
            if below[b].contains(b) {
                return Err(PosetError::Cycle(sorted[b].clone()));
            }
            for a in below[b].ones() {
                if below[a].contains(b) {
                    return Err(PosetError::Cycle(sorted[b].clone()));
                }
            }
        }
        let index = sorted.iter().enumerate().map(|(i, s)| (s.clone(), i as PointId)).collect();
        Ok(Self::from_below(sorted, index, below))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: PointId) -> &str {
        &self.names[x as usize]
    }

    pub fn id(&self, name: &str) -> Option<PointId> {
        self.index.get(name).copied()
    }

    pub(crate) fn id_or_err(&self, name: &str) -> Result<PointId, PosetError> {
        self.id(name).ok_or_else(|| PosetError::UnknownPoint(name.into()))
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        0..self.names.len() as PointId
    }

    pub fn covers(&self) -> &[(PointId, PointId)] {
        &self.covers
    }

    pub fn cover_names(&self) -> Vec<(String, String)> {
        self.covers.iter().map(|&(a, b)| (self.name(a).into(), self.name(b).into())).collect()
    }

    /// Points covering `x`.
    pub fn upper_covers(&self, x: PointId) -> &[PointId] {
        &self.up[x as usize]
    }

    /// Points covered by `x`.
    pub fn lower_covers(&self, x: PointId) -> &[PointId] {
        &self.down[x as usize]
    }

    pub fn lt(&self, a: PointId, b: PointId) -> bool {
        self.below[b as usize].contains(a as usize)
    }

    pub fn le(&self, a: PointId, b: PointId) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: PointId, b: PointId) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// Points strictly below `x`, as a bit set over point ids.
    pub fn below(&self, x: PointId) -> &FixedBitSet {
        &self.below[x as usize]
    }

    pub fn above(&self, x: PointId) -> &FixedBitSet {
        &self.above[x as usize]
    }

    pub fn minimal(&self) -> Vec<PointId> {
        self.points().filter(|&x| self.down[x as usize].is_empty()).collect()
    }

    pub fn maximal(&self) -> Vec<PointId> {
        self.points().filter(|&x| self.up[x as usize].is_empty()).collect()
    }

    /// Number of points in a longest chain, minus one.
    pub fn height(&self) -> usize {
        let ext = self.linear_extension();
        let mut h = vec![0usize; self.len()];
        for &x in &ext {
            for &y in &self.up[x as usize] {
                h[y as usize] = h[y as usize].max(h[x as usize] + 1);
            }
        }
        h.into_iter().max().unwrap_or(0)
    }

    /// The lexicographically least linear extension (Kahn's algorithm taking
    /// the least available point each time).
    pub fn linear_extension(&self) -> Vec<PointId> {
        let mut indeg: Vec<usize> = self.down.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<PointId> = self.points().filter(|&x| indeg[x as usize] == 0).collect();
        let mut out = Vec::with_capacity(self.len());
        while let Some(x) = ready.pop_first() {
            out.push(x);
            for &y in &self.up[x as usize] {
                indeg[y as usize] -= 1;
                if indeg[y as usize] == 0 {
                    ready.insert(y);
                }
            }
        }
        out
    }

    /// The subspace on the given points, with the induced order.
    pub fn induced(&self, points: &FixedBitSet) -> FinitePoset {
        let keep: Vec<usize> = points.ones().collect();
        let names: Vec<String> = keep.iter().map(|&i| self.names[i].clone()).collect();
        let index: HashMap<String, PointId> = names.iter().enumerate().map(|(i, s)| (s.clone(), i as PointId)).collect();
        let below = keep
            .iter()
            .map(|&b| {
                let mut s = FixedBitSet::with_capacity(keep.len());
                for (na, &a) in keep.iter().enumerate() {
                    if self.below[b].contains(a) {
                        s.insert(na);
                    }
                }
                s
            })
            .collect();
        Self::from_below(names, index, below)
    }

    pub fn induced_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<FinitePoset, PosetError> {
        let mut set = FixedBitSet::with_capacity(self.len());
        for n in names {
            set.insert(self.id_or_err(n.as_ref())? as usize);
        }
        Ok(self.induced(&set))
    }

    /// `X_{<x}`.
    pub fn strictly_below(&self, x: PointId) -> FinitePoset {
        self.induced(&self.below[x as usize])
    }

    /// `X_{>x}`.
    pub fn strictly_above(&self, x: PointId) -> FinitePoset {
        self.induced(&self.above[x as usize])
    }

    /// The same points with the order reversed.
    pub fn opposite(&self) -> FinitePoset {
        Self::from_below(self.names.clone(), self.index.clone(), self.above.clone())
    }

    /// Every point below a point of the set is in the set (an open set).
    pub fn is_down_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.below[x].is_subset(set))
    }

    pub fn is_up_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.above[x].is_subset(set))
    }

    pub fn set_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet, PosetError> {
        let mut set = FixedBitSet::with_capacity(self.len());
        for n in names {
            set.insert(self.id_or_err(n.as_ref())? as usize);
        }
        Ok(set)
    }

    /// Renames points; the new names must be distinct.
    pub fn renamed(&self, mut rename: impl FnMut(&str) -> String) -> Result<FinitePoset, PosetError> {
        let names: Vec<String> = self.names.iter().map(|s| rename(s)).collect();
        let covers: Vec<(String, String)> =
            self.covers.iter().map(|&(a, b)| (names[a as usize].clone(), names[b as usize].clone())).collect();
        FinitePoset::from_relations(&names, &covers)
    }

    /// Union of posets, identifying points with equal names; the order is
    /// generated by all covers of all parts.
    pub fn union<'a>(parts: impl IntoIterator<Item = &'a FinitePoset>) -> Result<FinitePoset, PosetError> {
        let mut names = BTreeSet::new();
        let mut rel = Vec::new();
        for p in parts {
            names.extend(p.names.iter().cloned());
            rel.extend(p.cover_names());
        }
        let names: Vec<String> = names.into_iter().collect();
        FinitePoset::from_relations(&names, &rel)
    }

    /// Disjoint union, prefixing the points of part `i` with `tags[i]`.
    pub fn disjoint_union(parts: &[(&str, &FinitePoset)]) -> Result<FinitePoset, PosetError> {
        let renamed: Vec<FinitePoset> =
            parts.iter().map(|(tag, p)| p.renamed(|s| format!("{tag}{s}"))).collect::<Result<_, _>>()?;
        let mut names = BTreeSet::new();
        for p in &renamed {
            for n in &p.names {
                if !names.insert(n.clone()) {
                    return Err(PosetError::DuplicatePoint(n.clone()));
                }
            }
        }
        FinitePoset::union(&renamed)
    }
}

/// Transitive closure of `pairs` as strict down-sets; `Err(v)` names a point
/// on a cycle.
fn closure(n: usize, pairs: &[(PointId, PointId)]) -> Result<Vec<FixedBitSet>, PointId> {
    let mut up = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(a, b) in pairs {
        up[a as usize].push(b);
        indeg[b as usize] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &up[x] {
            indeg[y as usize] -= 1;
            if indeg[y as usize] == 0 {
                stack.push(y as usize);
            }
        }
    }
    if order.len() < n {
        let v = (0..n).find(|&x| indeg[x] > 0).expect("some point is on a cycle");
        return Err(v as PointId);
    }
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for &x in &order {
        let bx = below[x].clone();
        for &y in &up[x] {
            let by = &mut below[y as usize];
            by.union_with(&bx);
            by.insert(x);
        }
    }
    Ok(below)
}
