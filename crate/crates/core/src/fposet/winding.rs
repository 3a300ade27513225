use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::{FinitePoset, PointId};
use crate::scomplex::SimplicialComplex;
use crate::zhomology::{Chain, Homology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindingError {
    #[error("weights given for ({0:?}, {1:?}), which is not a cover")]
    NotACover(String, String),
    #[error("increasing paths from {0:?} to {1:?} have different weights {2} and {3}")]
    Inconsistent(String, String, i64, i64),
    #[error("vertex {0:?} of the chain is not a point of the space")]
    UnknownVertex(String),
    #[error("the chain is not a 1-cycle")]
    NotACycle,
}

/// A 1-cocycle on `K(X)` from integer weights on the covers of `X`.
///
/// The weight of an edge `v < w` is the sum along any increasing cover path;
/// path independence is checked once, which makes every triangle of `K(X)`
/// sum to zero.
#[derive(Clone, Debug)]
pub struct Winding {
    /// `omega[(v, w)]` for `v < w`.
    omega: HashMap<(PointId, PointId), i64>,
}

impl Winding {
    pub fn new(x: &FinitePoset, weights: &BTreeMap<(String, String), i64>) -> Result<Self, WindingError> {
        let mut w: HashMap<(PointId, PointId), i64> = HashMap::new();
        for ((a, b), &c) in weights {
            let pair = match (x.id(a), x.id(b)) {
                (Some(i), Some(j)) if x.covers().binary_search(&(i, j)).is_ok() => (i, j),
                _ => return Err(WindingError::NotACover(a.clone(), b.clone())),
            };
            w.insert(pair, c);
        }
        let mut omega = HashMap::new();
        let ext = x.linear_extension();
        for &v in &ext {
            let mut reach: HashMap<PointId, i64> = HashMap::new();
            reach.insert(v, 0);
            for &u in ext.iter().skip_while(|&&u| u != v) {
                let Some(&base) = reach.get(&u) else { continue };
                for &t in x.upper_covers(u) {
                    let val = base + w.get(&(u, t)).copied().unwrap_or(0);
                    match reach.get(&t) {
                        Some(&old) if old != val => {
                            return Err(WindingError::Inconsistent(
                                x.name(v).into(),
                                x.name(t).into(),
                                old,
                                val,
                            ))
                        }
                        _ => {
                            reach.insert(t, val);
                        }
                    }
                }
            }
            for (t, val) in reach {
                if t != v {
                    omega.insert((v, t), val);
                }
            }
        }
        Ok(Winding { omega })
    }

    /// Value on the oriented edge `[a, b]` of `K(X)` (names in sorted order).
    fn edge(&self, x: &FinitePoset, a: &str, b: &str) -> Result<i64, WindingError> {
        let ia = x.id(a).ok_or_else(|| WindingError::UnknownVertex(a.into()))?;
        let ib = x.id(b).ok_or_else(|| WindingError::UnknownVertex(b.into()))?;
        if let Some(&v) = self.omega.get(&(ia, ib)) {
            Ok(v)
        } else {
            Ok(-self.omega.get(&(ib, ia)).copied().unwrap_or(0))
        }
    }

    /// `Σ ω(v_i w_i)` over the terms of a 1-chain of `kx = K(X)`.
    pub fn eval(&self, x: &FinitePoset, kx: &SimplicialComplex, z: &Chain) -> Result<i64, WindingError> {
        let mut total = 0;
        for &(i, c) in z.terms() {
            let e = &kx.simplices(1)[i as usize];
            total += c * self.edge(x, kx.vertex_name(e[0]), kx.vertex_name(e[1]))?;
        }
        Ok(total)
    }

    /// Values on the free generators of `H_1(K(X))`.
    pub fn on_generators(&self, x: &FinitePoset, h: &Homology) -> Result<Vec<i64>, WindingError> {
        let kx = h.chain_complex().complex().clone();
        h.group(1).generators.iter().map(|g| self.eval(x, &kx, g)).collect()
    }

    /// Evaluates a cycle, rejecting chains that are not cycles.
    pub fn eval_cycle(&self, x: &FinitePoset, h: &Homology, z: &Chain) -> Result<i64, WindingError> {
        if z.dim != 1 || !h.chain_complex().is_cycle(z) {
            return Err(WindingError::NotACycle);
        }
        self.eval(x, h.chain_complex().complex(), z)
    }
}
