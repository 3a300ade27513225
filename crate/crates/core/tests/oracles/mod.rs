//! Naive reference implementations. Nothing here calls into the library:
//! complexes are plain facet lists over `0..n`, posets are order matrices.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A complex on the vertices `0..n`, given by its facets.
#[derive(Clone, Debug)]
pub struct Complex {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl Complex {
    pub fn new(n: usize, facets: Vec<Vec<usize>>) -> Self {
        let facets = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        Complex { n, facets }
    }

    /// Vertices numbered by sorted name.
    pub fn from_names(facets: &[Vec<String>]) -> Self {
        let names: BTreeSet<&String> = facets.iter().flatten().collect();
        let index: BTreeMap<&String, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        Complex::new(names.len(), facets.iter().map(|f| f.iter().map(|v| index[v]).collect()).collect())
    }

    pub fn names(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| f.iter().map(|v| format!("v{v}")).collect()).collect()
    }

    /// Every nonempty face, each sorted.
    pub fn simplices(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for mask in 1u32..(1 << f.len()) {
                out.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        out
    }

    pub fn is_simplex(&self, s: &BTreeSet<usize>) -> bool {
        self.facets.iter().any(|f| s.iter().all(|v| f.contains(v)))
    }

    pub fn dim(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// Facets of the barycentric subdivision, as chains of faces.
    pub fn barycentric(&self) -> Complex {
        let faces: Vec<Vec<usize>> = self.simplices().into_iter().collect();
        let id: BTreeMap<&Vec<usize>, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut facets = BTreeSet::new();
        for f in &self.facets {
            for perm in permutations(f.len()) {
                let chain: Vec<usize> = (1..=f.len())
                    .map(|l| {
                        let mut s: Vec<usize> = perm[..l].iter().map(|&i| f[i]).collect();
                        s.sort_unstable();
                        id[&s]
                    })
                    .collect();
                let mut c = chain;
                c.sort_unstable();
                facets.insert(c);
            }
        }
        // drop chains through non-maximal facets that are faces of others
        let all: Vec<Vec<usize>> = facets.into_iter().collect();
        let keep = all
            .iter()
            .filter(|c| !all.iter().any(|d| d.len() > c.len() && c.iter().all(|v| d.contains(v))))
            .cloned()
            .collect();
        Complex::new(faces.len(), keep)
    }
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Calls `f` on every map `0..n → 0..m`; stops early when `f` returns false.
pub fn for_each_map(n: usize, m: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut a = vec![0; n];
    loop {
        if !f(&a) {
            return;
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            a[i] += 1;
            if a[i] < m {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Every simplicial self-map fixes some simplex as a set.
pub fn naive_fsp(k: &Complex) -> bool {
    let simplices: Vec<BTreeSet<usize>> = k.simplices().into_iter().map(|s| s.into_iter().collect()).collect();
    let mut holds = true;
    for_each_map(k.n, k.n, |f| {
        let image = |s: &BTreeSet<usize>| -> BTreeSet<usize> { s.iter().map(|&v| f[v]).collect() };
        let simplicial = k.facets.iter().all(|fa| k.is_simplex(&fa.iter().map(|&v| f[v]).collect()));
        if simplicial && !simplices.iter().any(|s| &image(s) == s) {
            holds = false;
        }
        holds
    });
    holds
}

/// `le[a][b]` iff `a ≤ b`, from arbitrary relations `a < b`.
pub fn order_from_relations(n: usize, rel: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in rel {
        le[a][b] = true;
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if le[a][m] && le[m][b] {
                    le[a][b] = true;
                }
            }
        }
    }
    le
}

/// Every order preserving self-map has a fixed point.
pub fn naive_fpp(le: &[Vec<bool>]) -> bool {
    let n = le.len();
    let mut holds = true;
    for_each_map(n, n, |f| {
        let monotone = (0..n).all(|a| (0..n).all(|b| !le[a][b] || le[f[a]][f[b]]));
        if monotone && (0..n).all(|a| f[a] != a) {
            holds = false;
        }
        holds
    });
    holds
}

/// Betti numbers over `Z/p`.
pub fn betti_mod_p(k: &Complex, p: i64) -> Vec<usize> {
    let simplices: Vec<Vec<usize>> = k.simplices().into_iter().collect();
    let top = k.dim();
    let by_dim: Vec<Vec<&Vec<usize>>> = (0..=top).map(|d| simplices.iter().filter(|s| s.len() == d + 1).collect()).collect();
    let index: Vec<BTreeMap<&Vec<usize>, usize>> =
        by_dim.iter().map(|l| l.iter().enumerate().map(|(i, s)| (*s, i)).collect()).collect();
    // rank of ∂_d : C_d → C_{d-1}, columns as sparse (row, value) lists
    let rank = |d: usize| -> usize {
        if d == 0 || d > top {
            return 0;
        }
        let cols: Vec<BTreeMap<usize, i64>> = by_dim[d]
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut face = (*s).clone();
                        face.remove(i);
                        (index[d - 1][&face], if i % 2 == 0 { 1 } else { p - 1 })
                    })
                    .collect()
            })
            .collect();
        rank_mod_p(cols, p)
    };
    (0..=top).map(|d| by_dim[d].len() - rank(d) - rank(d + 1)).collect()
}

/// Column reduction keyed by the largest row of each column.
fn rank_mod_p(cols: Vec<BTreeMap<usize, i64>>, p: i64) -> usize {
    let inv = |a: i64| -> i64 {
        let (mut r, mut b, mut e) = (1i64, a.rem_euclid(p), p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut pivots: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
    for mut c in cols {
        while let Some((&low, &v)) = c.iter().next_back() {
            let Some(q) = pivots.get(&low) else { break };
            // q is normalised so q[low] = 1
            for (&r, &x) in q {
                let e = c.entry(r).or_insert(0);
                *e = (*e - v * x).rem_euclid(p);
                if *e == 0 {
                    c.remove(&r);
                }
            }
        }
        if let Some((&low, &v)) = c.iter().next_back() {
            let iv = inv(v);
            c.values_mut().for_each(|x| *x = *x * iv % p);
            pivots.insert(low, c);
        }
    }
    pivots.len()
}

/// Maximal flags of facets of top dimension passing through `s`, counted by
/// listing vertex orders of each facet.
pub fn flags_through(k: &Complex, s: &[usize]) -> usize {
    let n = k.dim();
    k.facets
        .iter()
        .filter(|f| f.len() == n + 1 && s.iter().all(|v| f.contains(v)))
        .map(|f| {
            permutations(f.len())
                .into_iter()
                .filter(|p| {
                    let mut head: Vec<usize> = p[..s.len()].iter().map(|&i| f[i]).collect();
                    head.sort_unstable();
                    head == s
                })
                .count()
        })
        .sum()
}

/// Vertex permutations preserving the facet set.
pub fn automorphisms(k: &Complex) -> Vec<Vec<usize>> {
    let facets: BTreeSet<Vec<usize>> = k.facets.iter().cloned().collect();
    permutations(k.n)
        .into_iter()
        .filter(|p| {
            k.facets.iter().all(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| p[v]).collect();
                g.sort_unstable();
                facets.contains(&g)
            })
        })
        .collect()
}

/// Number of facets containing `v`.
pub fn vertex_degree(k: &Complex, v: usize) -> usize {
    k.facets.iter().filter(|f| f.contains(&v)).count()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` relation sets on 1 to `max_points` points, each pair `a < b`
/// (by index) present with a random density.
pub fn cover_corpus(seed: u64, count: usize, max_points: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_points);
            let density: f64 = r.gen_range(0.15..0.6);
            let rel = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| r.gen_bool(density)).collect();
            (n, rel)
        })
        .collect()
}

/// A random complex on at most `max_vertices` vertices, every vertex used.
pub fn random_complex(r: &mut ChaCha8Rng, max_vertices: usize, max_dim: usize) -> Complex {
    let n = r.gen_range(1..=max_vertices);
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let count = r.gen_range(1..=2 * n);
    for _ in 0..count {
        let size = r.gen_range(1..=(max_dim + 1).min(n));
        let mut f: BTreeSet<usize> = BTreeSet::new();
        while f.len() < size {
            f.insert(r.gen_range(0..n));
        }
        facets.push(f.into_iter().collect());
    }
    for v in 0..n {
        if !facets.iter().any(|f| f.contains(&v)) {
            facets.push(vec![v]);
        }
    }
    // keep maximal faces only
    let keep: Vec<Vec<usize>> = facets
        .iter()
        .enumerate()
        .filter(|(i, f)| {
            !facets.iter().enumerate().any(|(j, g)| {
                (g.len() > f.len() || (g.len() == f.len() && j < *i)) && f.iter().all(|v| g.contains(v))
            })
        })
        .map(|(_, f)| f.clone())
        .collect();
    Complex::new(n, keep)
}

/// A random simplicial map `source → target`, found by rejection.
pub fn random_simplicial_map(r: &mut ChaCha8Rng, source: &Complex, target: &Complex) -> Option<Vec<usize>> {
    for _ in 0..2000 {
        let f: Vec<usize> = (0..source.n).map(|_| r.gen_range(0..target.n)).collect();
        if source.facets.iter().all(|fa| target.is_simplex(&fa.iter().map(|&v| f[v]).collect())) {
            return Some(f);
        }
    }
    None
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The order complex: maximal chains of `le`, each listed bottom up.
pub fn maximal_chains(le: &[Vec<bool>]) -> Complex {
    let n = le.len();
    let lt = |a: usize, b: usize| a != b && le[a][b];
    let covers = |a: usize, b: usize| lt(a, b) && !(0..n).any(|m| lt(a, m) && lt(m, b));
    fn go(chain: &mut Vec<usize>, n: usize, covers: &dyn Fn(usize, usize) -> bool, out: &mut Vec<Vec<usize>>) {
        let top = *chain.last().unwrap();
        let ups: Vec<usize> = (0..n).filter(|&b| covers(top, b)).collect();
        if ups.is_empty() {
            out.push(chain.clone());
        }
        for b in ups {
            chain.push(b);
            go(chain, n, covers, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    for a in (0..n).filter(|&a| !(0..n).any(|m| lt(m, a))) {
        go(&mut vec![a], n, &covers, &mut out);
    }
    Complex::new(n, out)
}
