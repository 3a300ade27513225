use serde::Serialize;
use thiserror::Error;

use super::chain::{Chain, ChainComplex};
use super::homology::Homology;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cycle enumeration exceeded its budget of {budget} search nodes")]
pub struct CycleBudgetExceeded {
    pub budget: u64,
}

/// All nonzero `k`-cycles of norm at most `bound`, each once up to sign
/// (first nonzero coefficient positive), sorted.
///
/// Depth-first over coefficients of the `k`-simplices in basis order. A face
/// whose last incident simplex has been decided must carry a zero boundary
/// coefficient, and the open boundary mass can shrink by at most `k + 1` per
/// unit of remaining norm.
pub fn enumerate_cycles(
    chain: &ChainComplex,
    k: usize,
    bound: u64,
    max_nodes: u64,
) -> Result<Vec<Chain>, CycleBudgetExceeded> {
    let n = chain.rank(k);
    let bd = chain.boundary(k);
    let faces = bd.rows();
    let mut closes_at: Vec<Vec<u32>> = vec![Vec::new(); n];
    {
        let mut last = vec![None; faces];
        for j in 0..n {
            for &(f, _) in bd.col(j) {
                last[f as usize] = Some(j);
            }
        }
        for (f, l) in last.iter().enumerate() {
            if let Some(j) = l {
                closes_at[*j].push(f as u32);
            }
        }
    }
    let mut search = Search {
        cols: bd.columns(),
        closes_at: &closes_at,
        acc: vec![0; faces],
        open_mass: 0,
        coeffs: vec![0; n],
        k,
        nodes: 0,
        max_nodes,
        found: Vec::new(),
    };
    search.go(0, bound as i64, false)?;
    let mut found: Vec<Chain> = search.found;
    found.sort_by(|a, b| a.norm().cmp(&b.norm()).then_with(|| a.cmp(b)));
    Ok(found)
}

struct Search<'a> {
    cols: &'a [Vec<(u32, i64)>],
    closes_at: &'a [Vec<u32>],
    acc: Vec<i64>,
    open_mass: i64,
    coeffs: Vec<i64>,
    k: usize,
    nodes: u64,
    max_nodes: u64,
    found: Vec<Chain>,
}

impl Search<'_> {
    fn go(&mut self, i: usize, rem: i64, started: bool) -> Result<(), CycleBudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(CycleBudgetExceeded { budget: self.max_nodes });
        }
        if self.open_mass > (self.k as i64 + 1) * rem {
            return Ok(());
        }
        if i == self.coeffs.len() {
            if started && self.open_mass == 0 {
                let terms = self.coeffs.iter().enumerate().filter(|e| *e.1 != 0).map(|(j, &c)| (j as u32, c)).collect();
                self.found.push(Chain::new(self.k, terms));
            }
            return Ok(());
        }
        let mut choices = vec![0i64];
        for m in 1..=rem {
            choices.push(m);
            if started {
                choices.push(-m);
            }
        }
        for c in choices {
            self.set(i, c);
            if self.closes_at[i].iter().all(|&f| self.acc[f as usize] == 0) {
                self.go(i + 1, rem - c.abs(), started || c != 0)?;
            }
            self.set(i, -c);
            self.coeffs[i] = 0;
        }
        Ok(())
    }

    /// Adds `c · ∂e_i` to the running boundary.
    fn set(&mut self, i: usize, c: i64) {
        if c == 0 {
            return;
        }
        self.coeffs[i] += c;
        for &(f, a) in &self.cols[i] {
            let slot = &mut self.acc[f as usize];
            self.open_mass -= slot.abs();
            *slot += c * a;
            self.open_mass += slot.abs();
        }
    }
}

/// Result of a class-norm computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClassNorm {
    Exact { norm: u64, representative: Vec<(u32, i64)> },
    /// The search ran out of budget; the true norm lies in `[lower, upper]`.
    Unknown { lower: u64, upper: u64 },
}

/// The least norm of a cycle homologous to `z`.
///
/// Iterative deepening over the norm: every cycle of norm `b` is enumerated
/// and compared by class coordinates, for `b` increasing up to `‖z‖`.
pub fn homology_class_norm(h: &Homology, z: &Chain, max_nodes: u64) -> Result<ClassNorm, super::HomologyError> {
    let target = h.class_of(z)?;
    if target.is_zero() {
        return Ok(ClassNorm::Exact { norm: 0, representative: Vec::new() });
    }
    let chain = h.chain_complex();
    let upper = z.norm();
    let neg_target = h.class_of(&z.neg())?;
    for b in 1..upper {
        let cycles = match enumerate_cycles(chain, z.dim, b, max_nodes) {
            Ok(c) => c,
            Err(_) => return Ok(ClassNorm::Unknown { lower: b, upper }),
        };
        for c in cycles.iter().filter(|c| c.norm() == b) {
            let class = h.class_of(c)?;
            if class == target {
                return Ok(ClassNorm::Exact { norm: b, representative: c.terms().to_vec() });
            }
            if class == neg_target {
                return Ok(ClassNorm::Exact { norm: b, representative: c.neg().terms().to_vec() });
            }
        }
    }
    Ok(ClassNorm::Exact { norm: upper, representative: z.terms().to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SimplicialComplex;
    use std::sync::Arc;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        let raw: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::from_facets(&raw).unwrap()
    }

    #[test]
    fn square_has_one_short_cycle() {
        let c = ChainComplex::of(&cx(&["ab", "bc", "cd", "da"]));
        let cycles = enumerate_cycles(&c, 1, 4, 1_000_000).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].norm(), 4);
        assert!(enumerate_cycles(&c, 1, 3, 1_000_000).unwrap().is_empty());
    }

    #[test]
    fn triangle_skeleton() {
        let c = ChainComplex::of(&cx(&["ab", "bc", "ca"]));
        let cycles = enumerate_cycles(&c, 1, 3, 1_000_000).unwrap();
        assert_eq!(cycles.len(), 1);
        // with bound 6 the doubled cycle appears too
        assert_eq!(enumerate_cycles(&c, 1, 6, 1_000_000).unwrap().len(), 2);
    }

    #[test]
    fn budget_is_reported() {
        let c = ChainComplex::of(&cx(&["ab", "bc", "cd", "da"]));
        assert_eq!(enumerate_cycles(&c, 1, 4, 10), Err(CycleBudgetExceeded { budget: 10 }));
    }

    #[test]
    fn class_norms() {
        let k = cx(&["abc", "abd", "acd", "bcd"]);
        let h = Homology::compute(Arc::new(ChainComplex::of(&k)));
        let fundamental = h.group(2).generators[0].clone();
        assert_eq!(homology_class_norm(&h, &fundamental, 1_000_000).unwrap(), ClassNorm::Exact {
            norm: 4,
            representative: fundamental.terms().to_vec()
        });
        let bd = h.chain_complex().apply_boundary(&Chain::basis(2, 0));
        assert!(matches!(homology_class_norm(&h, &bd, 1000).unwrap(), ClassNorm::Exact { norm: 0, .. }));

        // a long representative of the square's class shrinks to norm 4
        let sq = cx(&["ab", "bc", "cd", "ad", "bx", "cx"]);
        let h = Homology::compute(Arc::new(ChainComplex::of(&sq)));
        let g = h.group(1).generators.clone();
        let long = g.iter().fold(Chain::zero(1), |acc, c| acc.add(c));
        let n = homology_class_norm(&h, &long, 1_000_000).unwrap();
        assert!(matches!(n, ClassNorm::Exact { .. }));
    }
}
