use std::sync::Arc;

use finfix::assembly::{
    assemble, plan_depths, validate_realizations, DepthMode, Realization, Target, MATERIALIZATION_LIMIT,
};
use finfix::fixtest::{asymmetrize, grow_asymmetric};
use finfix::{SearchBudget, SimplicialComplex};
use num_bigint::BigUint;

fn cx(facets: &[&str]) -> Arc<SimplicialComplex> {
    let raw: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
    Arc::new(SimplicialComplex::from_facets(&raw).unwrap())
}

fn sphere() -> Arc<SimplicialComplex> {
    cx(&["abc", "abd", "acd", "bcd"])
}

fn realization(k: &Arc<SimplicialComplex>, facets: Option<usize>) -> Realization {
    let budget = SearchBudget::default();
    let mut a = asymmetrize(k, &budget).unwrap();
    if let Some(f) = facets {
        a = grow_asymmetric(&a, f, &budget).unwrap();
    }
    let phi = a.approximation(k.clone()).unwrap();
    Realization::new(Arc::new(a.complex), phi)
}

#[test]
fn sphere_toy_build() {
    let k = sphere();
    let r = realization(&k, None);
    let report = validate_realizations(&k, &[r.clone()], &SearchBudget::default()).unwrap();
    assert!(report.valid(), "{report:?}");
    let plan = plan_depths(&k, &[r.clone()], &DepthMode::Toy(vec![0, 1]), Target::FixedSimplex, 1000).unwrap();
    assert_eq!(plan.big_n, BigUint::from(10u32));
    assert!(plan.uncertified);
    let l = assemble(&k, &[r], &plan, 2, MATERIALIZATION_LIMIT).unwrap();
    assert!(l.passes(), "{:?}", l.checks);
    let e = &l.evidence[0];
    assert_eq!((e.stages, e.free_norm, e.retracted_norm), (1, 10, 60));
    for name in ["K^s", "M2.1@b0", "M2.1@b10", "M2.1@c0", "M2.1/free"] {
        assert!(l.subobject(name).is_some_and(|s| s.round_trips(&l.complex)), "{name}");
    }
}

#[test]
fn sphere_bound_plan() {
    let k = sphere();
    let r = realization(&k, Some(24));
    let plan = plan_depths(&k, &[r.clone()], &DepthMode::Bound, Target::FixedSimplex, 1000).unwrap();
    assert_eq!(plan.depths, vec![0, 11]);
    assert_eq!(plan.big_n, BigUint::from(24u32));
    assert!(!plan.uncertified);
    assert!(plan.forecast.total_facets_upper > BigUint::from(1_000_000_000u64));
    assert!(assemble(&k, &[r], &plan, 2, MATERIALIZATION_LIMIT).is_err());
}
