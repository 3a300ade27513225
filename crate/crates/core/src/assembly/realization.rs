use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::fixtest::{is_asymmetric, SearchBudget};
use crate::scomplex::{SimplicialComplex, SimplicialMap};
use crate::zhomology::{solve_in_span, Chain, ChainComplex, ChainMap, Homology};

/// A closed oriented `k`-pseudomanifold `M` with a map `φ: M → K` whose
/// pushed fundamental class is `claimed` (by default, whatever it is).
#[derive(Clone, Debug)]
pub struct Realization {
    pub k: usize,
    pub m: Arc<SimplicialComplex>,
    pub phi: SimplicialMap,
    /// A `k`-cycle of `K`.
    pub claimed: Option<Chain>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RealizationError {
    #[error("realization {index}: M has dimension {dim}, expected {k}")]
    Dimension { index: usize, k: usize, dim: isize },
    #[error("realization {index}: the map's source is not M")]
    Source { index: usize },
    #[error("realization {index}: the map's target is not K")]
    Target { index: usize },
    #[error("realization {index}: M is not a closed orientable pseudomanifold")]
    NotOriented { index: usize },
    #[error("realization {index}: claimed class is not a {k}-cycle of K")]
    ClaimNotACycle { index: usize, k: usize },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DatumCheck {
    pub k: usize,
    pub facets: usize,
    /// `None` for `k ≤ 1`, where asymmetry is not required.
    pub asymmetric: Option<bool>,
    /// Free coordinates of `φ_#[M]` in `H_k(K)`.
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub class: Vec<BigInt>,
    pub matches_claim: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BasisCheck {
    pub k: usize,
    /// `dim H_k(K; Q)`.
    pub rank: usize,
    pub count: usize,
    pub independent: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RealizationReport {
    pub data: Vec<DatumCheck>,
    pub bases: Vec<BasisCheck>,
    /// Asymmetry searches that ran out of budget.
    pub inconclusive: Vec<usize>,
}

impl RealizationReport {
    pub fn valid(&self) -> bool {
        self.inconclusive.is_empty()
            && self.data.iter().all(|d| d.matches_claim && d.asymmetric != Some(false))
            && self.bases.iter().all(|b| b.independent && b.rank == b.count)
    }
}

impl Realization {
    pub fn new(m: Arc<SimplicialComplex>, phi: SimplicialMap) -> Self {
        Realization { k: m.dim().max(0) as usize, m, phi, claimed: None }
    }

    /// `φ_#` of the fundamental cycle of `M`.
    pub fn pushed_class(&self) -> Chain {
        let fundamental = ChainComplex::new(self.m.clone()).fundamental_cycle().expect("checked orientable");
        ChainMap::induced(&self.phi).apply(&fundamental)
    }
}

/// Checks every datum against `K` and that, in each degree `k ≥ 1`, the
/// pushed classes form a basis of `H_k(K; Q)`.
pub fn validate_realizations(
    k: &SimplicialComplex,
    data: &[Realization],
    budget: &SearchBudget,
) -> Result<RealizationReport, RealizationError> {
    let h = Homology::of(k);
    let n = k.dim().max(0) as usize;
    let mut checks = Vec::new();
    let mut inconclusive = Vec::new();
    for (index, r) in data.iter().enumerate() {
        if r.m.dim() != r.k as isize {
            return Err(RealizationError::Dimension { index, k: r.k, dim: r.m.dim() });
        }
        if !r.phi.source().same_as(&r.m) {
            return Err(RealizationError::Source { index });
        }
        if !r.phi.target().same_as(k) {
            return Err(RealizationError::Target { index });
        }
        if ChainComplex::new(r.m.clone()).fundamental_cycle().is_none() {
            return Err(RealizationError::NotOriented { index });
        }
        let pushed = r.pushed_class();
        let class = h.class_of(&pushed).expect("chain maps send cycles to cycles").free;
        let matches_claim = match &r.claimed {
            None => true,
            Some(c) => {
                if c.dim != r.k || !h.chain_complex().is_cycle(c) {
                    return Err(RealizationError::ClaimNotACycle { index, k: r.k });
                }
                h.is_boundary(&pushed.add_scaled(c, -1)).unwrap_or(false)
            }
        };
        let asymmetric = if r.k >= 2 {
            match is_asymmetric(&r.m, budget) {
                Ok(a) => Some(a.asymmetric),
                Err(_) => {
                    inconclusive.push(index);
                    None
                }
            }
        } else {
            None
        };
        checks.push(DatumCheck { k: r.k, facets: r.m.facets().len(), asymmetric, class, matches_claim });
    }
    let bases = (1..=n)
        .map(|deg| {
            let cols: Vec<Vec<BigInt>> = checks.iter().filter(|c| c.k == deg).map(|c| c.class.clone()).collect();
            let rank = h.group(deg).rank;
            let zero = vec![BigInt::from(0); rank];
            let independent = cols.is_empty() || solve_in_span(&cols, &zero).is_some();
            BasisCheck { k: deg, rank, count: cols.len(), independent }
        })
        .collect();
    Ok(RealizationReport { data: checks, bases, inconclusive })
}
