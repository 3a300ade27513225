use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::chain::ChainMap;
use super::homology::Homology;
use crate::scomplex::SimplicialMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the Lefschetz number needs a self-map")]
pub struct NotASelfMap;

/// `Λ(f) = Σ (−1)^k tr(f_* on H_k(·; Q))` for a chain self-map of the
/// complex underlying `h`.
///
/// Torsion dies over Q, so the trace of the free-part matrix is the rational
/// trace. The result is always an integer.
pub fn lefschetz_number(h: &Homology, f: &ChainMap) -> BigInt {
    let mut total = BigInt::zero();
    for k in 0..h.groups().len() {
        let t = h.induced_matrix(h, f, k).trace();
        if k % 2 == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    total
}

/// Lefschetz number of a simplicial self-map.
pub fn lefschetz(phi: &SimplicialMap) -> Result<BigInt, NotASelfMap> {
    if !phi.source().same_as(phi.target()) {
        return Err(NotASelfMap);
    }
    let h = Homology::of(phi.source());
    Ok(lefschetz_number(&h, &ChainMap::induced(phi)))
}
