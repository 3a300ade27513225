use fixedbitset::FixedBitSet;

use super::budget::{split_search, Certificate, CertificateKind, Meter, Search, SearchBudget, Verdict, Witness};
use crate::scomplex::{Simplex, SimplicialComplex, VertexId};

/// Searches for a simplicial self-map of `k` fixing no simplex.
///
/// Vertices are assigned in index order and images tried in index order, so
/// a refutation carries the lexicographically least such map. A branch dies
/// as soon as some simplex whose vertices are all assigned is mapped onto
/// itself, since every extension then has a fixed simplex.
pub fn fsp_check(k: &SimplicialComplex, budget: &SearchBudget) -> Certificate {
    let meter = Meter::new(budget);
    let n = k.vertex_count();
    if n == 0 {
        return Certificate {
            kind: CertificateKind::Fsp,
            verdict: Verdict::Refuted,
            witness: Some(Witness::Map { assign: Default::default() }),
            stats: meter.stats(),
            notes: vec!["the empty complex has no simplices to fix".into()],
        };
    }
    let ctx = FspContext::new(k);
    let first: Vec<u32> = (0..n as u32).filter(|&w| w != 0).collect();
    let result = split_search(&first, budget.parallel_width, |w| {
        let mut assign = vec![u32::MAX; n];
        if !ctx.accept(&mut assign, 0, w) {
            return Search::Exhausted;
        }
        ctx.dfs(&mut assign, 1, &meter)
    });
    let (verdict, witness) = match result {
        Search::Found(assign) => {
            let names = (0..n).map(|v| (k.vertex_name(v as u32).to_string(), k.vertex_name(assign[v]).to_string()));
            (Verdict::Refuted, Some(Witness::Map { assign: names.collect() }))
        }
        Search::Exhausted => (Verdict::Holds, None),
        Search::OutOfBudget => (Verdict::Inconclusive, None),
    };
    Certificate { kind: CertificateKind::Fsp, verdict, witness, stats: meter.stats(), notes: Vec::new() }
}

struct FspContext<'a> {
    k: &'a SimplicialComplex,
    /// Closed neighbourhoods.
    star: Vec<FixedBitSet>,
    /// Facets containing each vertex.
    facets_at: Vec<Vec<usize>>,
    /// Simplices whose largest vertex is `v`.
    completed_at: Vec<Vec<Simplex>>,
}

impl<'a> FspContext<'a> {
    fn new(k: &'a SimplicialComplex) -> Self {
        let n = k.vertex_count();
        let star = (0..n as VertexId)
            .map(|v| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(v as usize);
                for w in k.neighbors(v) {
                    s.insert(w as usize);
                }
                s
            })
            .collect();
        let facets_at = (0..n as VertexId).map(|v| k.incident_facets(v).to_vec()).collect();
        let mut completed_at = vec![Vec::new(); n];
        for s in k.all_simplices() {
            completed_at[*s.last().expect("nonempty") as usize].push(s.clone());
        }
        FspContext { k, star, facets_at, completed_at }
    }

    /// Sets `v ↦ w` if that keeps the partial map simplicial and fixes no
    /// completed simplex.
    fn accept(&self, assign: &mut [u32], v: usize, w: u32) -> bool {
        if w as usize == v {
            return false;
        }
        assign[v] = w;
        for &fi in &self.facets_at[v] {
            let mut img: Vec<u32> =
                self.k.facets()[fi].iter().map(|&u| assign[u as usize]).filter(|&x| x != u32::MAX).collect();
            img.sort_unstable();
            img.dedup();
            if !self.k.contains(&Simplex::from_sorted(img)) {
                assign[v] = u32::MAX;
                return false;
            }
        }
        for s in &self.completed_at[v] {
            let mut img: Vec<u32> = s.iter().map(|&u| assign[u as usize]).collect();
            img.sort_unstable();
            img.dedup();
            if img.as_slice() == &s[..] {
                assign[v] = u32::MAX;
                return false;
            }
        }
        true
    }

    fn dfs(&self, assign: &mut Vec<u32>, v: usize, meter: &Meter) -> Search<Vec<u32>> {
        if !meter.tick() {
            return Search::OutOfBudget;
        }
        let n = assign.len();
        if v == n {
            return Search::Found(assign.clone());
        }
        let mut cand = FixedBitSet::with_capacity(n);
        cand.insert_range(..);
        for u in self.k.neighbors(v as VertexId) {
            if (u as usize) < v {
                cand.intersect_with(&self.star[assign[u as usize] as usize]);
            }
        }
        for w in cand.ones() {
            if self.accept(assign, v, w as u32) {
                match self.dfs(assign, v + 1, meter) {
                    Search::Exhausted => {}
                    other => return other,
                }
                assign[v] = u32::MAX;
            }
        }
        Search::Exhausted
    }
}

/// Whether a simplicial self-map, given by vertex images, fixes a simplex.
pub fn has_fixed_simplex(k: &SimplicialComplex, assign: &[VertexId]) -> bool {
    k.all_simplices().any(|s| {
        let mut img: Vec<u32> = s.iter().map(|&u| assign[u as usize]).collect();
        img.sort_unstable();
        img.dedup();
        img.as_slice() == &s[..]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        let raw: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::from_facets(&raw).unwrap()
    }

    #[test]
    fn triangle_has_fsp() {
        assert_eq!(fsp_check(&cx(&["abc"]), &SearchBudget::default()).verdict, Verdict::Holds);
    }

    #[test]
    fn circle_rotates() {
        let c = fsp_check(&cx(&["ab", "bc", "ca"]), &SearchBudget::default());
        assert_eq!(c.verdict, Verdict::Refuted);
        let Some(Witness::Map { assign }) = c.witness else { panic!("expected a map") };
        let got: Vec<&str> = assign.values().map(String::as_str).collect();
        assert_eq!(got, vec!["b", "c", "a"]);
    }

    #[test]
    fn parallel_search_agrees() {
        let k = cx(&["ab", "bc", "cd", "de", "ea"]);
        let seq = fsp_check(&k, &SearchBudget::default());
        let par = fsp_check(&k, &SearchBudget::default().with_width(3));
        assert_eq!(seq.witness, par.witness);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let k = cx(&["abc", "abd", "acd", "bcd"]);
        assert_eq!(fsp_check(&k, &SearchBudget::nodes(2)).verdict, Verdict::Inconclusive);
    }
}
