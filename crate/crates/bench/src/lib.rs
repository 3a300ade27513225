//! Shared fixtures for the benchmarks.

use finfix::SimplicialComplex;

/// The 7-vertex torus.
pub fn torus() -> SimplicialComplex {
    let facets: Vec<Vec<String>> = (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .map(|f| f.iter().map(|v| v.to_string()).collect())
        .collect();
    SimplicialComplex::from_facets(&facets).expect("valid torus")
}

/// The boundary of the tetrahedron.
pub fn sphere() -> SimplicialComplex {
    let facets: Vec<Vec<String>> = (0..4)
        .map(|skip| (0..4).filter(|&v| v != skip).map(|v: i32| v.to_string()).collect())
        .collect();
    SimplicialComplex::from_facets(&facets).expect("valid sphere")
}
