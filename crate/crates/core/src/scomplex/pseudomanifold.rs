use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{Simplex, SimplicialComplex};

/// Facet signs making the sum of facets a cycle.
///
/// A sign is relative to the facet's sorted vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    signs: Vec<i64>,
}

impl Orientation {
    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    /// The fundamental chain as `(facet index, coefficient)` pairs.
    pub fn fundamental_chain(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.signs.iter().copied().enumerate()
    }

    pub fn reversed(&self) -> Orientation {
        Orientation { signs: self.signs.iter().map(|s| -s).collect() }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PseudomanifoldReport {
    pub dim: isize,
    pub pure: bool,
    /// Every ridge lies in exactly two facets.
    pub closed: bool,
    /// No ridge lies in more than two facets.
    pub ridges_ok: bool,
    pub strongly_connected: bool,
    pub orientable: bool,
    #[serde(skip)]
    pub orientation: Option<Orientation>,
}

impl PseudomanifoldReport {
    /// Closed pseudomanifold in the strict sense: pure, closed, strongly connected.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.pure && self.closed && self.strongly_connected
    }
}

impl SimplicialComplex {
    /// Classifies the complex as a pseudomanifold and orients it when possible.
    ///
    /// Signs are propagated breadth-first over the facet adjacency graph,
    /// starting with `+1` on the least facet.
    pub fn pseudomanifold_check(&self) -> PseudomanifoldReport {
        let facets = self.facets();
        let pure = self.is_pure();
        let mut ridges: HashMap<Simplex, Vec<(usize, i64)>> = HashMap::new();
        for (fi, f) in facets.iter().enumerate() {
            for (r, sign) in f.boundary() {
                ridges.entry(r).or_default().push((fi, sign));
            }
        }
        let closed = pure && !facets.is_empty() && ridges.values().all(|v| v.len() == 2);
        let ridges_ok = ridges.values().all(|v| v.len() <= 2);

        let mut adjacency: Vec<Vec<(usize, i64, i64)>> = vec![Vec::new(); facets.len()];
        if ridges_ok {
            for inc in ridges.values() {
                if let [(f, s), (g, t)] = inc[..] {
                    adjacency[f].push((g, s, t));
                    adjacency[g].push((f, t, s));
                }
            }
        }
        let mut signs = vec![0i64; facets.len()];
        let mut orientable = pure && ridges_ok && !facets.is_empty();
        let mut reached = 0;
        if !facets.is_empty() {
            signs[0] = 1;
            reached = 1;
            let mut queue = VecDeque::from([0usize]);
            while let Some(f) = queue.pop_front() {
                for &(g, s_in_f, s_in_g) in &adjacency[f] {
                    // the shared ridge must cancel: sign_f·s_in_f + sign_g·s_in_g = 0
                    let want = -signs[f] * s_in_f * s_in_g;
                    if signs[g] == 0 {
                        signs[g] = want;
                        reached += 1;
                        queue.push_back(g);
                    } else if signs[g] != want {
                        orientable = false;
                    }
                }
            }
        }
        let strongly_connected = ridges_ok && reached == facets.len() && !facets.is_empty();
        let orientation = (closed && strongly_connected && orientable).then(|| Orientation { signs });
        PseudomanifoldReport {
            dim: self.dim(),
            pure,
            closed,
            ridges_ok,
            strongly_connected,
            orientable: orientable && strongly_connected,
            orientation,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        let raw: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::from_facets(&raw).unwrap()
    }

    #[test]
    fn sphere_is_oriented() {
        let k = cx(&["abc", "abd", "acd", "bcd"]);
        let r = k.pseudomanifold_check();
        assert!(r.is_closed_pseudomanifold() && r.orientable);
        let o = r.orientation.unwrap();
        assert_eq!(o.signs().iter().map(|s| s.abs()).sum::<i64>(), 4);
        // the boundary of the fundamental chain vanishes
        let mut acc: HashMap<Simplex, i64> = HashMap::new();
        for (fi, c) in o.fundamental_chain() {
            for (r, s) in k.facets()[fi].boundary() {
                *acc.entry(r).or_default() += c * s;
            }
        }
        assert!(acc.values().all(|&v| v == 0));
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        let k = cx(&["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"]);
        let r = k.pseudomanifold_check();
        assert!(r.is_closed_pseudomanifold());
        assert!(!r.orientable);
        assert!(r.orientation.is_none());
    }

    #[test]
    fn open_strip_is_not_closed() {
        let r = cx(&["abc", "abd"]).pseudomanifold_check();
        assert!(r.pure && !r.closed && r.strongly_connected);
    }

    #[test]
    fn zero_sphere() {
        let r = cx(&["a", "b"]).pseudomanifold_check();
        assert!(r.is_closed_pseudomanifold() && r.orientable);
        let r = cx(&["a", "b", "c"]).pseudomanifold_check();
        assert!(!r.closed);
    }
}
