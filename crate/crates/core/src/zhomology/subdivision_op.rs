use std::collections::HashMap;

use super::chain::ChainMap;
use super::SparseMatrix;
use crate::scomplex::{Barycentric, Simplex, SimplicialComplex};

/// The subdivision chain map `λ: C_*(K) → C_*(K′)`.
///
/// Built by the cone recursion `λ(σ) = σ̂ · λ(∂σ)`, which commutes with the
/// boundary by construction; each simplex goes to the signed sum of the
/// `(k+1)!` flags inside it.
pub fn subdivision_operator(k: &SimplicialComplex, sub: &Barycentric) -> ChainMap {
    let kp = &sub.complex;
    let mut memo: HashMap<Simplex, Vec<(Simplex, i64)>> = HashMap::new();
    let top = (k.dim() + 1).max(0) as usize;
    let maps = (0..top)
        .map(|d| {
            let cols = k
                .simplices(d)
                .iter()
                .map(|s| {
                    lambda(s, sub, &mut memo)
                        .iter()
                        .map(|(t, c)| (kp.position(t).expect("flags are simplices of K′") as u32, *c))
                        .collect()
                })
                .collect();
            SparseMatrix::from_columns(kp.count(d), cols)
        })
        .collect();
    ChainMap { maps }
}

fn lambda<'a>(
    s: &Simplex,
    sub: &Barycentric,
    memo: &'a mut HashMap<Simplex, Vec<(Simplex, i64)>>,
) -> &'a Vec<(Simplex, i64)> {
    if !memo.contains_key(s) {
        let apex = sub.barycenter(s).expect("simplex of K");
        let value = if s.len() == 1 {
            vec![(Simplex::vertex(apex), 1)]
        } else {
            let mut acc: HashMap<Simplex, i64> = HashMap::new();
            for (face, e) in s.boundary() {
                let inner = lambda(&face, sub, memo).clone();
                for (t, c) in inner {
                    // cone: [apex, t_0, …, t_j]
                    let mut verts = vec![apex];
                    verts.extend_from_slice(&t);
                    let sign = crate::scomplex::sort_sign(&mut verts);
                    *acc.entry(Simplex::from_sorted(verts)).or_default() += e * c * sign;
                }
            }
            let mut v: Vec<(Simplex, i64)> = acc.into_iter().filter(|e| e.1 != 0).collect();
            v.sort();
            v
        };
        memo.insert(s.clone(), value);
    }
    &memo[s]
}

/// Orientation of a simplex `T` of a subdivision relative to a simplex `S`
/// it subdivides, both given by their vertices as simplices of the
/// underlying complex (each vertex standing for its barycenter) in their
/// canonical orders.
///
/// This is the sign of `det [|t_a ∩ s_b|]`, which equals the sign of the
/// determinant of the affine coordinates of `T`'s vertices in terms of `S`'s.
/// Zero when `T` is degenerate relative to `S`.
pub fn relative_orientation(t: &[Simplex], s: &[Simplex]) -> i64 {
    let n = t.len();
    assert_eq!(n, s.len(), "orientation of simplices of different dimension");
    let mut m: Vec<Vec<i128>> =
        t.iter().map(|ta| s.iter().map(|sb| ta.intersection_len(sb) as i128).collect()).collect();
    determinant_sign(&mut m)
}

/// Sign of an integer determinant by fraction-free (Bareiss) elimination.
pub(crate) fn determinant_sign(m: &mut [Vec<i128>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i64;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1].signum() as i64
}
