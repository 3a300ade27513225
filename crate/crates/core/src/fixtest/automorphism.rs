use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::budget::{Meter, SearchBudget, SearchStats};
use crate::fposet::FinitePoset;
use crate::scomplex::{Simplex, SimplicialComplex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("automorphism search exceeded its budget after {} nodes", .0.nodes)]
pub struct AutomorphismBudgetExceeded(pub SearchStats);

/// All automorphisms, each as a vertex (or point) permutation, sorted; the
/// identity comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub perms: Vec<Vec<u32>>,
    pub stats: SearchStats,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    /// Points fixed by every automorphism.
    pub fn fixed_points(&self) -> Vec<u32> {
        let n = self.perms.first().map_or(0, Vec::len);
        (0..n as u32).filter(|&v| self.perms.iter().all(|p| p[v as usize] == v)).collect()
    }
}

/// Colour refinement: repeatedly splits classes by the multiset of colours
/// seen through `signature` until stable.
fn refine(initial: Vec<u64>, signature: impl Fn(usize, &[u64]) -> Vec<u64>) -> Vec<u64> {
    let n = initial.len();
    let mut colors = compress(initial.into_iter().map(|c| vec![c]).collect());
    loop {
        let sigs: Vec<Vec<u64>> = (0..n)
            .map(|v| {
                let mut s = vec![colors[v]];
                s.extend(signature(v, &colors));
                s
            })
            .collect();
        let next = compress(sigs);
        let classes = |c: &[u64]| c.iter().collect::<std::collections::BTreeSet<_>>().len();
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn compress(sigs: Vec<Vec<u64>>) -> Vec<u64> {
    let mut distinct: Vec<&Vec<u64>> = sigs.iter().collect();
    distinct.sort();
    distinct.dedup();
    let ids: HashMap<&Vec<u64>, u64> = distinct.into_iter().enumerate().map(|(i, s)| (s, i as u64)).collect();
    sigs.iter().map(|s| ids[s]).collect()
}

/// Simplicial automorphisms of `k`.
pub fn complex_automorphisms(
    k: &SimplicialComplex,
    budget: &SearchBudget,
) -> Result<AutomorphismGroup, AutomorphismBudgetExceeded> {
    let n = k.vertex_count();
    let neighbors: Vec<Vec<VertexId>> = (0..n as VertexId).map(|v| k.neighbors(v)).collect();
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for (v, ns) in neighbors.iter().enumerate() {
        for &w in ns {
            adj[v].insert(w as usize);
        }
    }
    let initial = (0..n as VertexId).map(|v| (k.vertex_degree(v) as u64) << 32 | neighbors[v as usize].len() as u64).collect();
    let colors = refine(initial, |v, c| {
        let mut s: Vec<u64> = neighbors[v].iter().map(|&w| c[w as usize]).collect();
        s.sort_unstable();
        let mut fs: Vec<Vec<u64>> = k
            .incident_facets(v as VertexId)
            .iter()
            .map(|&fi| {
                let mut t: Vec<u64> = k.facets()[fi].iter().map(|&w| c[w as usize]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        fs.sort();
        s.push(u64::MAX);
        for f in fs {
            s.extend(f);
            s.push(u64::MAX - 1);
        }
        s
    });
    // facets completed when their largest vertex is assigned
    let mut completed_at = vec![Vec::new(); n];
    for f in k.facets() {
        completed_at[*f.last().expect("nonempty") as usize].push(f.clone());
    }
    let check = |perm: &[u32], v: usize| -> bool {
        let w = perm[v] as usize;
        for u in 0..v {
            if adj[v].contains(u) != adj[w].contains(perm[u] as usize) {
                return false;
            }
        }
        completed_at[v].iter().all(|f: &Simplex| {
            let mut img: Vec<u32> = f.iter().map(|&u| perm[u as usize]).collect();
            img.sort_unstable();
            k.facets().binary_search(&Simplex::from_sorted(img)).is_ok()
        })
    };
    let meter = Meter::new(budget);
    let mut perms = Vec::new();
    let mut perm = vec![u32::MAX; n];
    let mut used = FixedBitSet::with_capacity(n);
    if !backtrack(0, &colors, &mut perm, &mut used, &check, &meter, &mut perms) {
        return Err(AutomorphismBudgetExceeded(meter.stats()));
    }
    perms.sort();
    Ok(AutomorphismGroup { perms, stats: meter.stats() })
}

/// Order automorphisms of `x`.
pub fn poset_automorphisms(x: &FinitePoset, budget: &SearchBudget) -> Result<AutomorphismGroup, AutomorphismBudgetExceeded> {
    let n = x.len();
    let initial = x
        .points()
        .map(|p| {
            (x.below(p).count_ones(..) as u64) << 48
                | (x.above(p).count_ones(..) as u64) << 32
                | (x.lower_covers(p).len() as u64) << 16
                | x.upper_covers(p).len() as u64
        })
        .collect();
    let colors = refine(initial, |v, c| {
        let mut lo: Vec<u64> = x.lower_covers(v as u32).iter().map(|&w| c[w as usize]).collect();
        let mut hi: Vec<u64> = x.upper_covers(v as u32).iter().map(|&w| c[w as usize]).collect();
        lo.sort_unstable();
        hi.sort_unstable();
        lo.push(u64::MAX);
        lo.extend(hi);
        lo
    });
    let check = |perm: &[u32], v: usize| -> bool {
        (0..v).all(|u| {
            x.lt(u as u32, v as u32) == x.lt(perm[u], perm[v]) && x.lt(v as u32, u as u32) == x.lt(perm[v], perm[u])
        })
    };
    let meter = Meter::new(budget);
    let mut perms = Vec::new();
    let mut perm = vec![u32::MAX; n];
    let mut used = FixedBitSet::with_capacity(n);
    if !backtrack(0, &colors, &mut perm, &mut used, &check, &meter, &mut perms) {
        return Err(AutomorphismBudgetExceeded(meter.stats()));
    }
    perms.sort();
    Ok(AutomorphismGroup { perms, stats: meter.stats() })
}

/// Returns false when the budget runs out.
fn backtrack(
    v: usize,
    colors: &[u64],
    perm: &mut Vec<u32>,
    used: &mut FixedBitSet,
    check: &impl Fn(&[u32], usize) -> bool,
    meter: &Meter,
    out: &mut Vec<Vec<u32>>,
) -> bool {
    if !meter.tick() {
        return false;
    }
    let n = perm.len();
    if v == n {
        out.push(perm.clone());
        return true;
    }
    for w in 0..n {
        if used.contains(w) || colors[w] != colors[v] {
            continue;
        }
        perm[v] = w as u32;
        if check(perm, v) {
            used.insert(w);
            let ok = backtrack(v + 1, colors, perm, used, check, meter, out);
            used.set(w, false);
            if !ok {
                return false;
            }
        }
    }
    perm[v] = u32::MAX;
    true
}

/// A permutation as a name map.
pub fn named_permutation(k: &SimplicialComplex, perm: &[u32]) -> BTreeMap<String, String> {
    perm.iter().enumerate().map(|(v, &w)| (k.vertex_name(v as u32).to_string(), k.vertex_name(w).to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        let raw: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::from_facets(&raw).unwrap()
    }

    #[test]
    fn group_orders() {
        let b = SearchBudget::default();
        assert_eq!(complex_automorphisms(&cx(&["abc", "abd", "acd", "bcd"]), &b).unwrap().order(), 24);
        let path = complex_automorphisms(&cx(&["ab", "bc"]), &b).unwrap();
        assert_eq!(path.order(), 2);
        assert_eq!(path.fixed_points(), vec![1]);
        assert_eq!(path.perms[0], vec![0, 1, 2]);
        // hexagon: dihedral of order 12
        assert_eq!(complex_automorphisms(&cx(&["ab", "bc", "cd", "de", "ef", "fa"]), &b).unwrap().order(), 12);
        // the tetrahedron is self-dual, so its flag complex also swaps vertices with face centres
        let sub = cx(&["abc", "abd", "acd", "bcd"]).barycentric();
        assert_eq!(complex_automorphisms(&sub, &b).unwrap().order(), 48);
    }

    #[test]
    fn crown_symmetries() {
        let c =
            FinitePoset::from_covers(&["x", "y", "z", "w"], &[("z", "x"), ("z", "y"), ("w", "x"), ("w", "y")]).unwrap();
        assert_eq!(poset_automorphisms(&c, &SearchBudget::default()).unwrap().order(), 4);
    }

    #[test]
    fn budget() {
        let k = cx(&["abc", "abd", "acd", "bcd"]);
        assert!(complex_automorphisms(&k, &SearchBudget::nodes(3)).is_err());
    }
}
