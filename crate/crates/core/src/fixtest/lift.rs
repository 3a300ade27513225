use serde::Serialize;
use thiserror::Error;

use super::budget::{Meter, SearchBudget};
use crate::fposet::{FacePoset, MonotoneMap, PointId};
use crate::scomplex::{Simplex, SimplicialComplex, SimplicialMap, VertexId};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("the simplicial map below f fixes no simplex")]
    NoFixedSimplex { g: Vec<String> },
    #[error("lift check exceeded its budget")]
    Budget,
}

/// How a fixed point of a monotone self-map of `X(K)` comes from a fixed
/// simplex of a simplicial map below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftTrace {
    /// `g(v)`: the least vertex of the simplex `f(v)`.
    pub g: Vec<String>,
    pub fixed_simplex: String,
    /// `σ ≤ f(σ) ≤ f²(σ) ≤ …` up to the first repetition.
    pub orbit: Vec<String>,
    pub fixed_point: String,
}

/// Follows `f` from a simplex fixed by `g ≤ f` up to a fixed point of `f`.
pub fn lift_fixed_point(k: &Arc<SimplicialComplex>, x: &FacePoset, f: &MonotoneMap) -> Result<LiftTrace, LiftError> {
    let xp = &x.poset;
    let assign: Vec<VertexId> = (0..k.vertex_count() as VertexId)
        .map(|v| {
            let p = x.point(&Simplex::vertex(v)).expect("vertex of K");
            x.simplex_of[f.apply(p) as usize][0]
        })
        .collect();
    let g = SimplicialMap::new(k.clone(), k.clone(), assign).expect("g(σ) ⊆ f(σ) is a simplex");
    let names: Vec<String> = g.assignment().iter().map(|&w| k.vertex_name(w).to_string()).collect();
    let sigma = k
        .all_simplices()
        .find(|s| &g.image(s) == *s)
        .cloned()
        .ok_or(LiftError::NoFixedSimplex { g: names.clone() })?;
    let mut p: PointId = x.point(&sigma).expect("simplex of K");
    let mut orbit = vec![xp.name(p).to_string()];
    loop {
        let q = f.apply(p);
        debug_assert!(xp.le(p, q), "the orbit increases");
        if q == p {
            break;
        }
        p = q;
        orbit.push(xp.name(p).to_string());
    }
    Ok(LiftTrace { g: names, fixed_simplex: k.format_simplex(&sigma), orbit, fixed_point: xp.name(p).to_string() })
}

/// Outcome of lifting every monotone self-map of `X(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub maps: u64,
    pub lifted: u64,
    pub failure: Option<Vec<String>>,
}

/// Runs the lift on every monotone self-map of `X(K)`.
pub fn check_lift_exhaustive(k: &SimplicialComplex, budget: &SearchBudget) -> Result<LiftReport, LiftError> {
    let k = Arc::new(k.clone());
    let x = FacePoset::new(&k);
    let poset = x.poset.clone();
    let order = poset.linear_extension();
    let meter = Meter::new(budget);
    let mut report = LiftReport { maps: 0, lifted: 0, failure: None };
    let mut assign = vec![u32::MAX; poset.len()];
    let ok = enumerate(&poset, &order, 0, &mut assign, &meter, &mut |a| {
        report.maps += 1;
        let f = MonotoneMap::new(poset.clone(), poset.clone(), a.to_vec()).expect("monotone by construction");
        match lift_fixed_point(&k, &x, &f) {
            Ok(t) if f.apply(poset.id(&t.fixed_point).expect("point")) == poset.id(&t.fixed_point).expect("point") => {
                report.lifted += 1
            }
            Ok(_) | Err(_) => {
                if report.failure.is_none() {
                    report.failure = Some(a.iter().map(|&q| poset.name(q).to_string()).collect());
                }
            }
        }
    });
    if !ok {
        return Err(LiftError::Budget);
    }
    Ok(report)
}

/// Visits every monotone self-map; false when the budget runs out.
fn enumerate(
    x: &crate::fposet::FinitePoset,
    order: &[PointId],
    i: usize,
    assign: &mut Vec<u32>,
    meter: &Meter,
    visit: &mut impl FnMut(&[u32]),
) -> bool {
    if !meter.tick() {
        return false;
    }
    if i == order.len() {
        visit(assign);
        return true;
    }
    let p = order[i];
    for w in x.points() {
        if x.lower_covers(p).iter().all(|&y| x.le(assign[y as usize], w)) {
            assign[p as usize] = w;
            if !enumerate(x, order, i + 1, assign, meter, visit) {
                return false;
            }
        }
    }
    assign[p as usize] = u32::MAX;
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        let raw: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::from_facets(&raw).unwrap()
    }

    #[test]
    fn every_map_of_the_triangle_lifts() {
        let r = check_lift_exhaustive(&cx(&["abc"]), &SearchBudget::default()).unwrap();
        assert!(r.maps > 0);
        assert_eq!(r.maps, r.lifted);
        assert!(r.failure.is_none());
    }

    #[test]
    fn circle_has_no_lift() {
        let k = Arc::new(cx(&["ab", "bc", "ca"]));
        let x = FacePoset::new(&k);
        let rot = SimplicialMap::new(k.clone(), k.clone(), vec![1, 2, 0]).unwrap();
        let f = crate::fposet::face_map(&rot, &x, &x);
        assert!(matches!(lift_fixed_point(&k, &x, &f), Err(LiftError::NoFixedSimplex { .. })));
    }
}
