use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::chain::{Chain, ChainComplex, ChainMap};
use super::snf::smith_normal_form;
use super::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("the chain is not a cycle")]
    NotACycle,
    #[error("chain of dimension {0} is outside the complex")]
    BadDimension(usize),
}

/// One homology group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub torsion: Vec<BigInt>,
    /// Cycles whose classes form a basis of the free part.
    #[serde(skip)]
    pub generators: Vec<Chain>,
    #[serde(skip)]
    pub torsion_generators: Vec<Chain>,
}

/// Coordinates of a homology class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCoords {
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub free: Vec<BigInt>,
    /// Residues modulo the corresponding invariant factors.
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl ClassCoords {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

/// One elimination of a unit entry `⟨∂b, a⟩ = ε` of `∂_k`.
#[derive(Clone, Debug)]
struct Step {
    k: usize,
    a: u32,
    b: u32,
    eps: i64,
    /// `∂b` at elimination time, in degree `k - 1`.
    boundary_b: Vec<(u32, i64)>,
    /// Row `a` of `∂_k` at elimination time.
    row_a: Vec<(u32, i64)>,
}

#[derive(Clone, Debug)]
struct DegreeData {
    /// Surviving basis cells, original indices.
    live: Vec<u32>,
    slot: HashMap<u32, usize>,
    /// Rank of the reduced `∂_k`.
    r: usize,
    v: IntMatrix,
    /// Invariant factors of the boundaries inside the cycle lattice.
    e: Vec<BigInt>,
    p_inv: IntMatrix,
}

/// Integral homology of a chain complex with coordinates for arbitrary cycles.
///
/// The complex is first shrunk by eliminating unit entries of the boundary
/// matrices (each elimination is a chain homotopy equivalence whose maps are
/// recorded), and the small remainder is handled by Smith normal forms.
#[derive(Clone, Debug)]
pub struct Homology {
    chain: Arc<ChainComplex>,
    steps: Vec<Step>,
    degrees: Vec<DegreeData>,
    groups: Vec<HomologyGroup>,
}

impl Homology {
    pub fn of(complex: &crate::SimplicialComplex) -> Homology {
        Self::compute(Arc::new(ChainComplex::of(complex)))
    }

    pub fn compute(chain: Arc<ChainComplex>) -> Homology {
        let top = chain.len();
        let mut red = Reduction::new(&chain);
        red.run();
        let Reduction { cols, alive, steps, .. } = red;

        let mut live: Vec<Vec<u32>> = Vec::with_capacity(top);
        for k in 0..top {
            live.push((0..alive[k].len() as u32).filter(|&i| alive[k][i as usize]).collect());
        }
        let slots: Vec<HashMap<u32, usize>> =
            live.iter().map(|l| l.iter().enumerate().map(|(s, &i)| (i, s)).collect()).collect();
        // reduced boundary matrices, dense
        let dense = |k: usize| -> IntMatrix {
            if k == 0 || k >= top {
                let rows = if k == 0 || k > top { 0 } else { live[k - 1].len() };
                let c = if k < top { live[k].len() } else { 0 };
                return IntMatrix::zeros(if k == 0 { 0 } else { rows }, c);
            }
            let mut m = IntMatrix::zeros(live[k - 1].len(), live[k].len());
            for (c, &b) in live[k].iter().enumerate() {
                for &(a, x) in &cols[k][b as usize] {
                    m.set(slots[k - 1][&a], c, BigInt::from(x));
                }
            }
            m
        };

        let mut degrees = Vec::with_capacity(top);
        let mut partial = Vec::with_capacity(top);
        let mut next = (top > 0).then(|| smith_normal_form(&dense(0)));
        for k in 0..top {
            let snf = next.take().expect("computed in the previous round");
            let d_up = dense(k + 1);
            next = Some(smith_normal_form(&d_up));
            let r = snf.rank();
            // boundaries of degree k+1 in kernel coordinates
            let a = snf.v.mul(&d_up).rows_from(r);
            let inner = smith_normal_form(&a);
            let rho = inner.rank();
            let m = a.rows();
            let kernel = snf.v_inv.cols_from(r);
            let mut gens = Vec::new();
            let mut tors = Vec::new();
            let mut torsion = Vec::new();
            for j in 0..m {
                let y = inner.p_col(j);
                let x = kernel.mul_vec(&y);
                if j >= rho {
                    gens.push(x);
                } else if !inner.diagonal[j].is_one() {
                    torsion.push(inner.diagonal[j].clone());
                    tors.push(x);
                }
            }
            partial.push((gens, tors, torsion));
            degrees.push(DegreeData {
                live: live[k].clone(),
                slot: slots[k].clone(),
                r,
                v: snf.v,
                e: inner.diagonal.clone(),
                p_inv: inner.u_inv,
            });
        }

        let mut h = Homology { chain, steps, degrees, groups: Vec::new() };
        let mut groups = Vec::with_capacity(top);
        for (k, (gens, tors, torsion)) in partial.into_iter().enumerate() {
            let generators = gens.iter().map(|x| h.sparsify(&h.lift(k, x))).collect();
            let torsion_generators = tors.iter().map(|x| h.sparsify(&h.lift(k, x))).collect();
            groups.push(HomologyGroup { rank: gens.len(), torsion, generators, torsion_generators });
        }
        h.groups = groups;
        h
    }

    pub fn chain_complex(&self) -> &Arc<ChainComplex> {
        &self.chain
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    /// `H_k`; the zero group above the top dimension.
    pub fn group(&self, k: usize) -> HomologyGroup {
        self.groups.get(k).cloned().unwrap_or(HomologyGroup {
            rank: 0,
            torsion: Vec::new(),
            generators: Vec::new(),
            torsion_generators: Vec::new(),
        })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn torsion(&self) -> Vec<Vec<BigInt>> {
        self.groups.iter().map(|g| g.torsion.clone()).collect()
    }

    /// Same ranks and invariant factors in every degree.
    pub fn isomorphic_to(&self, other: &Homology) -> bool {
        let n = self.groups.len().max(other.groups.len());
        (0..n).all(|k| {
            let (a, b) = (self.group(k), other.group(k));
            a.rank == b.rank && a.torsion == b.torsion
        })
    }

    /// Coordinates of the class of a cycle.
    pub fn class_of(&self, z: &Chain) -> Result<ClassCoords, HomologyError> {
        let k = z.dim;
        if k >= self.degrees.len() {
            return if z.is_zero() {
                Ok(ClassCoords { free: Vec::new(), torsion: Vec::new() })
            } else {
                Err(HomologyError::BadDimension(k))
            };
        }
        if !self.chain.is_cycle(z) {
            return Err(HomologyError::NotACycle);
        }
        let projected = self.project(z);
        let d = &self.degrees[k];
        let mut x = vec![BigInt::zero(); d.live.len()];
        for (i, c) in projected {
            x[d.slot[&i]] = BigInt::from(c);
        }
        let y = d.v.mul_vec(&x);
        let w = d.p_inv.mul_vec(&y[d.r..]);
        let rho = d.e.len();
        let free = w[rho..].to_vec();
        let torsion = d
            .e
            .iter()
            .zip(&w)
            .filter(|(e, _)| !e.is_one())
            .map(|(e, wi)| {
                let m = wi % e;
                if m.is_negative() {
                    m + e
                } else {
                    m
                }
            })
            .collect();
        Ok(ClassCoords { free, torsion })
    }

    /// Whether a cycle bounds.
    pub fn is_boundary(&self, z: &Chain) -> Result<bool, HomologyError> {
        Ok(self.class_of(z)?.is_zero())
    }

    /// Matrix of `f_*` on the free parts, columns indexed by the source
    /// generators and rows by the target free coordinates.
    pub fn induced_matrix(&self, target: &Homology, f: &ChainMap, k: usize) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .group(k)
            .generators
            .iter()
            .map(|g| target.class_of(&f.apply(g)).expect("chain maps send cycles to cycles").free)
            .collect();
        let rows = target.group(k).rank;
        let mut m = IntMatrix::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Pushes a chain of the original complex to the reduced complex.
    fn project(&self, z: &Chain) -> BTreeMap<u32, i64> {
        let d = z.dim;
        let mut c: BTreeMap<u32, i64> = z.terms().iter().copied().collect();
        for s in &self.steps {
            if s.k == d + 1 {
                if let Some(alpha) = c.get(&s.a).copied() {
                    let q = alpha * s.eps;
                    for &(i, x) in &s.boundary_b {
                        let e = c.entry(i).or_insert(0);
                        *e -= q * x;
                        if *e == 0 {
                            c.remove(&i);
                        }
                    }
                }
            } else if s.k == d {
                c.remove(&s.b);
            }
        }
        c
    }

    /// Lifts a chain on the surviving cells (as a dense vector in slot order)
    /// back to the original complex.
    fn lift(&self, k: usize, x: &[BigInt]) -> Chain {
        let d = &self.degrees[k];
        let mut c: HashMap<u32, i64> = HashMap::new();
        for (s, v) in x.iter().enumerate() {
            if !v.is_zero() {
                c.insert(d.live[s], v.to_i64().expect("generator coefficients fit in i64"));
            }
        }
        for s in self.steps.iter().rev() {
            if s.k == k {
                let t: i64 = s.row_a.iter().map(|&(x, a)| c.get(&x).copied().unwrap_or(0) * a).sum();
                if t != 0 {
                    c.insert(s.b, -t * s.eps);
                }
            }
        }
        Chain::new(k, c.into_iter().collect())
    }

    /// Greedily lowers the norm of a cycle by adding boundaries of single simplices.
    /// The class is unchanged, so generators keep unit coordinates.
    fn sparsify(&self, z: &Chain) -> Chain {
        let k = z.dim;
        let Some(up) = self.chain.boundary_ref(k + 1) else { return z.clone() };
        let co = up.transpose();
        let mut z = z.clone();
        for _ in 0..10_000 {
            let mut candidates: Vec<u32> = z.support().flat_map(|i| co.col(i).iter().map(|e| e.0)).collect();
            candidates.sort_unstable();
            candidates.dedup();
            let mut best: Option<(u64, Chain)> = None;
            for t in candidates {
                let bd = Chain::new(k, up.col(t as usize).to_vec());
                for sign in [1, -1] {
                    let cand = z.add_scaled(&bd, sign);
                    let n = cand.norm();
                    if n < z.norm() && best.as_ref().map_or(true, |b| n < b.0) {
                        best = Some((n, cand));
                    }
                }
            }
            match best {
                Some((_, c)) => z = c,
                None => break,
            }
        }
        z
    }
}

impl super::snf::SmithForm {
    /// Column `j` of `U`.
    pub(crate) fn p_col(&self, j: usize) -> Vec<BigInt> {
        self.u.col(j)
    }
}

/// In-place elimination of unit entries across all boundary matrices.
struct Reduction {
    /// `cols[k][b]`: sparse column of `∂_k`.
    cols: Vec<Vec<Vec<(u32, i64)>>>,
    /// `rows[k][a]`: columns of `∂_k` with a nonzero entry in row `a`.
    rows: Vec<Vec<HashSet<u32>>>,
    alive: Vec<Vec<bool>>,
    steps: Vec<Step>,
}

impl Reduction {
    fn new(chain: &ChainComplex) -> Self {
        let top = chain.len();
        let mut cols = Vec::with_capacity(top);
        let mut rows = Vec::with_capacity(top);
        let mut alive = Vec::with_capacity(top);
        for k in 0..top {
            let b = chain.boundary_ref(k).expect("in range");
            cols.push(b.columns().to_vec());
            let nrows = if k == 0 { 0 } else { chain.rank(k - 1) };
            let mut r = vec![HashSet::new(); nrows];
            for (j, col) in b.columns().iter().enumerate() {
                for &(i, _) in col {
                    r[i as usize].insert(j as u32);
                }
            }
            rows.push(r);
            alive.push(vec![true; chain.rank(k)]);
        }
        Reduction { cols, rows, alive, steps: Vec::new() }
    }

    fn run(&mut self) {
        for k in (1..self.cols.len()).rev() {
            loop {
                let mut progress = false;
                for b in 0..self.cols[k].len() as u32 {
                    if !self.alive[k][b as usize] {
                        continue;
                    }
                    let pick = self.cols[k][b as usize]
                        .iter()
                        .filter(|e| e.1.abs() == 1)
                        .min_by_key(|e| (self.rows[k][e.0 as usize].len(), e.0))
                        .copied();
                    if let Some((a, eps)) = pick {
                        if self.eliminate(k, a, b, eps) {
                            progress = true;
                        }
                    }
                }
                if !progress {
                    break;
                }
            }
        }
    }

    fn eliminate(&mut self, k: usize, a: u32, b: u32, eps: i64) -> bool {
        let col_b = self.cols[k][b as usize].clone();
        let mut row_a: Vec<(u32, i64)> = self.rows[k][a as usize]
            .iter()
            .map(|&x| {
                let col = &self.cols[k][x as usize];
                let p = col.binary_search_by_key(&a, |e| e.0).expect("row index is consistent");
                (x, col[p].1)
            })
            .collect();
        row_a.sort_unstable();

        // compute all updated columns first so an overflow leaves nothing half-done
        let mut updates = Vec::with_capacity(row_a.len());
        for &(x, coef) in &row_a {
            if x == b {
                continue;
            }
            let q = coef * eps;
            let mut merged: Vec<(u32, i64)> = self.cols[k][x as usize].clone();
            for &(i, v) in &col_b {
                let Some(delta) = q.checked_mul(v) else { return false };
                merged.push((i, -delta));
            }
            let mut out: Vec<(u32, i64)> = Vec::with_capacity(merged.len());
            merged.sort_unstable_by_key(|e| e.0);
            for (i, v) in merged {
                match out.last_mut() {
                    Some(last) if last.0 == i => {
                        let Some(s) = last.1.checked_add(v) else { return false };
                        last.1 = s;
                    }
                    _ => out.push((i, v)),
                }
            }
            out.retain(|e| e.1 != 0);
            updates.push((x, out));
        }

        for (x, new_col) in updates {
            for &(i, _) in &self.cols[k][x as usize] {
                self.rows[k][i as usize].remove(&x);
            }
            for &(i, _) in &new_col {
                self.rows[k][i as usize].insert(x);
            }
            self.cols[k][x as usize] = new_col;
        }
        for &(i, _) in &col_b {
            self.rows[k][i as usize].remove(&b);
        }
        self.cols[k][b as usize].clear();
        self.alive[k][b as usize] = false;
        debug_assert!(self.rows[k][a as usize].is_empty());

        // a disappears from C_{k-1}: drop its column in ∂_{k-1}
        let col_a = std::mem::take(&mut self.cols[k - 1][a as usize]);
        if k >= 2 {
            for &(i, _) in &col_a {
                self.rows[k - 1][i as usize].remove(&a);
            }
        }
        self.alive[k - 1][a as usize] = false;
        // b disappears from C_k: drop its row in ∂_{k+1}
        if k + 1 < self.cols.len() {
            let users = std::mem::take(&mut self.rows[k + 1][b as usize]);
            for y in users {
                self.cols[k + 1][y as usize].retain(|e| e.0 != b);
            }
        }
        self.steps.push(Step { k, a, b, eps, boundary_b: col_b, row_a });
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SimplicialComplex;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        let raw: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::from_facets(&raw).unwrap()
    }

    #[test]
    fn circle_and_sphere() {
        let h = Homology::of(&cx(&["ab", "bc", "ca"]));
        assert_eq!(h.betti(), vec![1, 1]);
        let g = &h.group(1).generators[0];
        assert_eq!(g.norm(), 3);
        assert_eq!(h.class_of(g).unwrap().free.len(), 1);
        let h = Homology::of(&cx(&["abc", "abd", "acd", "bcd"]));
        assert_eq!(h.betti(), vec![1, 0, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        let h = Homology::of(&cx(&["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"]));
        assert_eq!(h.betti(), vec![1, 0, 0]);
        assert_eq!(h.torsion()[1], vec![BigInt::from(2)]);
        let t = &h.group(1).torsion_generators[0];
        assert!(!h.is_boundary(t).unwrap());
        assert!(h.is_boundary(&t.scale(2)).unwrap());
    }

    #[test]
    fn boundaries_have_zero_class() {
        let k = cx(&["abc", "abd", "acd", "bcd"]);
        let h = Homology::of(&k);
        let c = h.chain_complex().apply_boundary(&Chain::basis(2, 0));
        assert!(h.is_boundary(&c).unwrap());
        assert_eq!(h.class_of(&Chain::basis(1, 0)), Err(HomologyError::NotACycle));
    }

    #[test]
    fn generators_have_unit_coordinates() {
        let torus = cx(&[
            "124", "235", "346", "457", "561", "672", "713", "134", "245", "356", "467", "571", "612", "723",
        ]);
        let h = Homology::of(&torus);
        assert_eq!(h.betti(), vec![1, 2, 1]);
        for k in 0..3 {
            for (j, g) in h.group(k).generators.iter().enumerate() {
                let free = h.class_of(g).unwrap().free;
                let unit: Vec<BigInt> = (0..free.len()).map(|i| BigInt::from((i == j) as i64)).collect();
                assert_eq!(free, unit);
            }
        }
    }
}
