use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::matrix::normalize;
use super::SparseMatrix;
use crate::scomplex::{Simplex, SimplicialComplex, SimplicialMap};

/// A `k`-chain as a sparse integer vector over the simplex basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub dim: usize,
    terms: Vec<(u32, i64)>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain { dim, terms: Vec::new() }
    }

    /// Terms may be unsorted and repeated; they are merged.
    pub fn new(dim: usize, terms: Vec<(u32, i64)>) -> Self {
        Chain { dim, terms: normalize(terms) }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        Chain { dim, terms: vec![(index as u32, 1)] }
    }

    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: usize) -> i64 {
        self.terms.binary_search_by_key(&(index as u32), |t| t.0).map(|p| self.terms[p].1).unwrap_or(0)
    }

    /// The ℓ¹ norm.
    pub fn norm(&self) -> u64 {
        self.terms.iter().map(|t| t.1.unsigned_abs()).sum()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        self.add_scaled(other, 1)
    }

    pub fn add_scaled(&self, other: &Chain, c: i64) -> Chain {
        assert_eq!(self.dim, other.dim, "adding chains of different dimension");
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().map(|&(i, a)| (i, a * c)));
        Chain::new(self.dim, t)
    }

    pub fn scale(&self, c: i64) -> Chain {
        Chain::new(self.dim, self.terms.iter().map(|&(i, a)| (i, a * c)).collect())
    }

    pub fn neg(&self) -> Chain {
        self.scale(-1)
    }

    /// Flips the sign so that the first nonzero coefficient is positive.
    pub fn canonical_sign(&self) -> Chain {
        match self.terms.first() {
            Some(&(_, a)) if a < 0 => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|t| t.0 as usize)
    }
}

/// The simplicial chain complex with the oriented simplex bases of a complex.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    complex: Arc<SimplicialComplex>,
    /// `boundaries[k]` maps `C_k → C_{k-1}`; `boundaries[0]` has no rows.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(complex: Arc<SimplicialComplex>) -> Self {
        let top = complex.simplices_by_dim_len();
        let mut boundaries = Vec::with_capacity(top);
        for k in 0..top {
            let cols: Vec<Vec<(u32, i64)>> = if k == 0 {
                vec![Vec::new(); complex.count(0)]
            } else {
                complex
                    .simplices(k)
                    .iter()
                    .map(|s| {
                        s.boundary()
                            .map(|(f, e)| (complex.position(&f).expect("faces are simplices") as u32, e))
                            .collect()
                    })
                    .collect()
            };
            let rows = if k == 0 { 0 } else { complex.count(k - 1) };
            boundaries.push(SparseMatrix::from_columns(rows, cols));
        }
        ChainComplex { complex, boundaries }
    }

    pub fn of(complex: &SimplicialComplex) -> Self {
        Self::new(Arc::new(complex.clone()))
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    /// Number of nonzero chain groups.
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.complex.count(k)
    }

    /// `∂_k`; the zero map for `k` beyond the top dimension.
    pub fn boundary(&self, k: usize) -> SparseMatrix {
        match self.boundaries.get(k) {
            Some(b) => b.clone(),
            None => SparseMatrix::zeros(if k == 0 { 0 } else { self.rank(k - 1) }, 0),
        }
    }

    pub fn boundary_ref(&self, k: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(k)
    }

    /// `∂c`, a chain one dimension lower (the zero 0-chain for `c.dim == 0`).
    /// Chains above the top dimension are zero.
    pub fn apply_boundary(&self, c: &Chain) -> Chain {
        if c.dim == 0 {
            return Chain::zero(0);
        }
        match self.boundaries.get(c.dim) {
            Some(b) => Chain::new(c.dim - 1, b.apply(c.terms())),
            None => Chain::zero(c.dim - 1),
        }
    }

    pub fn is_cycle(&self, c: &Chain) -> bool {
        self.apply_boundary(c).is_zero()
    }

    /// Verifies `∂∂ = 0` in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|k| self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero())
    }

    /// Chain from `(simplex, coefficient)` pairs.
    pub fn chain_of(&self, dim: usize, terms: impl IntoIterator<Item = (Simplex, i64)>) -> Option<Chain> {
        let mut t = Vec::new();
        for (s, c) in terms {
            if s.len() != dim + 1 {
                return None;
            }
            t.push((self.complex.position(&s)? as u32, c));
        }
        Some(Chain::new(dim, t))
    }

    /// The fundamental cycle of a closed oriented pseudomanifold, with the
    /// least facet positive.
    pub fn fundamental_cycle(&self) -> Option<Chain> {
        let k = &self.complex;
        let o = k.pseudomanifold_check().orientation?;
        let n = k.dim() as usize;
        let terms = o.fundamental_chain().map(|(fi, c)| (k.position(&k.facets()[fi]).expect("facet") as u32, c)).collect();
        Some(Chain::new(n, terms))
    }

    /// Human readable form `{simplex: coefficient}` keyed by vertex names.
    pub fn describe(&self, c: &Chain) -> BTreeMap<String, i64> {
        c.terms()
            .iter()
            .map(|&(i, a)| (self.complex.format_simplex(&self.complex.simplices(c.dim)[i as usize]), a))
            .collect()
    }
}

impl SimplicialComplex {
    pub(crate) fn simplices_by_dim_len(&self) -> usize {
        (self.dim() + 1).max(0) as usize
    }
}

/// A degree-preserving family of matrices `C_k → D_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub maps: Vec<SparseMatrix>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChainMapNorms {
    pub per_degree: Vec<u64>,
}

impl ChainMap {
    /// The chain map `φ_#`: oriented simplices go to their oriented images,
    /// degenerate images to zero.
    pub fn induced(phi: &SimplicialMap) -> ChainMap {
        let src = phi.source();
        let tgt = phi.target();
        let top = src.simplices_by_dim_len();
        let maps = (0..top)
            .map(|k| {
                let cols = src
                    .simplices(k)
                    .iter()
                    .map(|s| match phi.oriented_image(s) {
                        Some((img, sign)) => vec![(tgt.position(&img).expect("simplicial image") as u32, sign)],
                        None => Vec::new(),
                    })
                    .collect();
                SparseMatrix::from_columns(tgt.count(k), cols)
            })
            .collect();
        ChainMap { maps }
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        match self.maps.get(c.dim) {
            Some(m) => Chain::new(c.dim, m.apply(c.terms())),
            None => Chain::zero(c.dim),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| b.mul(a)).collect();
        ChainMap { maps }
    }

    pub fn norms(&self) -> ChainMapNorms {
        ChainMapNorms { per_degree: self.maps.iter().map(SparseMatrix::operator_norm).collect() }
    }

    /// Checks `∂ f = f ∂` against the given source and target complexes.
    pub fn commutes_with_boundary(&self, source: &ChainComplex, target: &ChainComplex) -> bool {
        (1..self.maps.len()).all(|k| {
            let lhs = target.boundary(k).mul(&self.maps[k]);
            let rhs = self.maps[k - 1].mul(&source.boundary(k));
            lhs == rhs
        })
    }
}
