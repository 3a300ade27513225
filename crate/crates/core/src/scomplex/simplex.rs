use std::ops::Deref;

use super::VertexId;

/// A simplex as a strictly increasing list of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts and deduplicates the given vertices.
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    /// Wraps a list that is already strictly increasing.
    pub fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]), "unsorted simplex {vertices:?}");
        Simplex(vertices)
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    /// Dimension, with the empty simplex at -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.0
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Whether every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Simplex::new(v)
    }

    pub fn intersection_len(&self, other: &Simplex) -> usize {
        self.0.iter().filter(|v| other.contains_vertex(**v)).count()
    }

    /// The codimension-one faces with their incidence signs `(-1)^i`.
    pub fn boundary(&self) -> impl Iterator<Item = (Simplex, i64)> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut face = self.0.clone();
            face.remove(i);
            (Simplex(face), if i % 2 == 0 { 1 } else { -1 })
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1usize << n).saturating_sub(1));
        for mask in 1u64..(1u64 << n) {
            let face = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect();
            out.push(Simplex(face));
        }
        out
    }

    /// Removes one vertex.
    pub fn without(&self, v: VertexId) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }
}

impl Deref for Simplex {
    type Target = [VertexId];

    fn deref(&self) -> &[VertexId] {
        &self.0
    }
}

impl From<Vec<VertexId>> for Simplex {
    fn from(v: Vec<VertexId>) -> Self {
        Simplex::new(v)
    }
}

/// Sign of the permutation sorting `values` (which must be distinct).
pub(crate) fn sort_sign(values: &mut [VertexId]) -> i64 {
    // insertion sort, counting transpositions
    let mut sign = 1;
    for i in 1..values.len() {
        let mut j = i;
        while j > 0 && values[j - 1] > values[j] {
            values.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_relation() {
        let abc = Simplex::new(vec![2, 0, 1]);
        assert!(Simplex::new(vec![0, 2]).is_face_of(&abc));
        assert!(!Simplex::new(vec![0, 3]).is_face_of(&abc));
        assert!(Simplex::default().is_face_of(&abc));
        assert_eq!(abc.faces().len(), 7);
    }

    #[test]
    fn boundary_signs_alternate() {
        let s = Simplex::new(vec![0, 1, 2]);
        let b: Vec<_> = s.boundary().map(|(f, e)| (f.into_vertices(), e)).collect();
        assert_eq!(b, vec![(vec![1, 2], 1), (vec![0, 2], -1), (vec![0, 1], 1)]);
    }

    #[test]
    fn permutation_parity() {
        assert_eq!(sort_sign(&mut [0, 1, 2]), 1);
        assert_eq!(sort_sign(&mut [1, 0, 2]), -1);
        assert_eq!(sort_sign(&mut [2, 0, 1]), 1);
    }
}
