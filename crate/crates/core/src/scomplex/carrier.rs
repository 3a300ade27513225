use thiserror::Error;

use super::{Simplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarrierError {
    #[error("parts {0} and {1} overlap without one containing the other")]
    Overlapping(String, String),
    #[error("the union {0} of the parts is not a simplex of the complex")]
    NotInComplex(String),
    #[error("a part is empty")]
    EmptyPart,
}

/// The subcomplex of K′ spanned by the barycenters of some simplices of K.
///
/// Each maximal simplex of the hull is recorded as a flag of simplices of K,
/// ordered by strict inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierHull {
    pub parts: Vec<Simplex>,
    pub flags: Vec<Vec<Simplex>>,
}

impl CarrierHull {
    pub fn dim(&self) -> isize {
        self.flags.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Flags of length `k + 1`, the `k`-simplices of the hull that are maximal.
    pub fn top_flags(&self, k: usize) -> impl Iterator<Item = &Vec<Simplex>> {
        self.flags.iter().filter(move |f| f.len() == k + 1)
    }
}

/// Convex hull of the barycenters of `parts` inside K′.
///
/// The parts must pairwise be nested or disjoint. The hull is found by
/// repeatedly splitting at the disjoint pair with the largest union: the
/// barycenter of the union lies on the segment between the two barycenters,
/// so the hull is the union of the hulls with either one replaced by the union.
pub fn carrier_hull(k: &SimplicialComplex, parts: &[Simplex]) -> Result<CarrierHull, CarrierError> {
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CarrierError::EmptyPart);
    }
    let mut uniq: Vec<Simplex> = parts.to_vec();
    uniq.sort();
    uniq.dedup();
    for (i, a) in uniq.iter().enumerate() {
        for b in &uniq[i + 1..] {
            if !(a.is_face_of(b) || b.is_face_of(a) || a.is_disjoint(b)) {
                return Err(CarrierError::Overlapping(k.format_simplex(a), k.format_simplex(b)));
            }
        }
    }
    let whole = uniq.iter().fold(Simplex::default(), |acc, s| acc.union(s));
    if !uniq.is_empty() && !k.contains(&whole) {
        return Err(CarrierError::NotInComplex(k.format_simplex(&whole)));
    }
    let mut flags = Vec::new();
    split(uniq.clone(), &mut flags);
    flags.sort_by(|a: &Vec<Simplex>, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    flags.dedup();
    let mut maximal: Vec<Vec<Simplex>> = Vec::new();
    for f in flags {
        if !maximal.iter().any(|m| f.iter().all(|s| m.contains(s))) {
            maximal.push(f);
        }
    }
    maximal.sort();
    Ok(CarrierHull { parts: uniq, flags: maximal })
}

fn split(parts: Vec<Simplex>, out: &mut Vec<Vec<Simplex>>) {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i].is_disjoint(&parts[j]) {
                let size = parts[i].len() + parts[j].len();
                if best.map_or(true, |(_, _, s)| size > s) {
                    best = Some((i, j, size));
                }
            }
        }
    }
    match best {
        None => {
            let mut flag = parts;
            flag.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            out.push(flag);
        }
        Some((i, j, _)) => {
            let union = parts[i].union(&parts[j]);
            for drop in [i, j] {
                let mut next: Vec<Simplex> = parts.iter().enumerate().filter(|&(t, _)| t != drop).map(|(_, s)| s.clone()).collect();
                if !next.contains(&union) {
                    next.push(union.clone());
                }
                next.sort();
                split(next, out);
            }
        }
    }
}
