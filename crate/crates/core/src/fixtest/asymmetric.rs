use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use super::automorphism::{complex_automorphisms, AutomorphismBudgetExceeded};
use super::budget::SearchBudget;
use crate::scomplex::{Barycentric, ComplexError, PseudomanifoldReport, Simplex, SimplicialComplex, SimplicialMap, VertexId};

/// Whether some vertex is fixed by every automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymmetryReport {
    pub asymmetric: bool,
    /// Least vertex fixed by all automorphisms.
    pub fixed_vertex: Option<String>,
    pub group_order: usize,
}

pub fn is_asymmetric(k: &SimplicialComplex, budget: &SearchBudget) -> Result<AsymmetryReport, AutomorphismBudgetExceeded> {
    let g = complex_automorphisms(k, budget)?;
    let fixed = g.fixed_points();
    Ok(AsymmetryReport {
        asymmetric: !fixed.is_empty(),
        fixed_vertex: fixed.first().map(|&v| k.vertex_name(v).to_string()),
        group_order: g.order(),
    })
}

/// `deg_{K′}(b(σ)) = (k+1)!(n−k)!·deg_K(σ)` for every simplex of a pure
/// `n`-complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeFormulaReport {
    pub checked: usize,
    pub holds: bool,
    /// `(simplex, expected, actual)` for each failure.
    pub failures: Vec<(String, usize, usize)>,
}

pub fn check_degree_formula(k: &SimplicialComplex) -> DegreeFormulaReport {
    let sub = Barycentric::new(k);
    let n = k.dim().max(0) as usize;
    let fact = |m: usize| (1..=m).product::<usize>();
    let mut failures = Vec::new();
    let mut checked = 0;
    for s in k.all_simplices() {
        let d = s.dim() as usize;
        let expected = fact(d + 1) * fact(n - d) * k.degree(s).expect("simplex of K");
        let actual = sub.complex.vertex_degree(sub.barycenter(s).expect("simplex of K"));
        checked += 1;
        if expected != actual {
            failures.push((k.format_simplex(s), expected, actual));
        }
    }
    DegreeFormulaReport { checked, holds: failures.is_empty() && k.is_pure(), failures }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymmetrizeError {
    #[error("input is not a closed pseudomanifold")]
    NotAPseudomanifold(PseudomanifoldReport),
    #[error("no 1-dimensional pseudomanifold is asymmetric")]
    OneDimensional,
    #[error("input has dimension {0}; asymmetric subdivisions need dimension at least 2")]
    TooSmall(isize),
    #[error("degrees did not separate within {passes} passes (top degrees {top:?})")]
    Stalled { passes: u32, top: Vec<(String, usize)> },
    #[error("cannot reach {target} facets from {facets} by starring {dim}-simplices")]
    Unreachable { facets: usize, target: usize, dim: usize },
    #[error(transparent)]
    Budget(#[from] AutomorphismBudgetExceeded),
}

/// Evidence that a subdivision `L` and all its barycentric subdivisions are
/// asymmetric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymmetryCertificate {
    pub v0: String,
    pub passes: u32,
    /// `deg(v0)` and the largest degree of any other vertex.
    pub degree_gap: (usize, usize),
    pub automorphism_count: usize,
    /// Every automorphism of `L` fixes `v0`.
    pub all_fix_v0: bool,
    pub degree_formula: DegreeFormulaReport,
    /// `d(L′)`, which must be `n!·d(L)`, and whether `b(v0)` alone attains it.
    pub subdivided_max_degree: usize,
    pub subdivided_unique: bool,
}

impl AsymmetryCertificate {
    pub fn valid(&self, n: usize) -> bool {
        let fact: usize = (1..=n).product();
        self.degree_gap.0 > self.degree_gap.1
            && self.all_fix_v0
            && self.degree_formula.holds
            && self.subdivided_max_degree == fact * self.degree_gap.0
            && self.subdivided_unique
    }
}

#[derive(Clone, Debug)]
pub struct Asymmetrized {
    pub complex: SimplicialComplex,
    pub v0: VertexId,
    pub certificate: AsymmetryCertificate,
    /// A simplicial approximation to the identity, onto the input's
    /// vertices: each new vertex goes where the least vertex of the simplex
    /// it subdivided goes.
    pub to_input: BTreeMap<String, String>,
}

impl Asymmetrized {
    /// The approximation to the identity as a map to the input complex.
    pub fn approximation(&self, input: Arc<SimplicialComplex>) -> Result<SimplicialMap, ComplexError> {
        SimplicialMap::from_names(Arc::new(self.complex.clone()), input, &self.to_input)
    }
}

/// Stars a simplex given by names and extends the approximation map.
fn star(l: &mut SimplicialComplex, to_input: &mut BTreeMap<String, String>, names: &[String]) {
    let s = l.simplex_from_names(names).expect("simplex survives earlier starrings");
    let st = l.stellar_subdivide(&s).expect("simplex of L");
    let image = to_input[&st.starred[0]].clone();
    to_input.insert(st.new_vertex, image);
    *l = st.complex;
}

/// Subdivides a closed `n`-pseudomanifold (`n ≥ 2`) until one vertex has
/// strictly the largest degree, by starring every facet at the current
/// top-degree vertex (least name first), at most 10 times.
///
/// Nothing is assumed: the result is certified by the degree gap, an
/// exhaustive automorphism search and the subdivision degree formula.
pub fn asymmetrize(m: &SimplicialComplex, budget: &SearchBudget) -> Result<Asymmetrized, AsymmetrizeError> {
    let report = m.pseudomanifold_check();
    if m.dim() == 1 && report.is_closed_pseudomanifold() {
        return Err(AsymmetrizeError::OneDimensional);
    }
    if !report.is_closed_pseudomanifold() {
        return Err(AsymmetrizeError::NotAPseudomanifold(report));
    }
    if m.dim() < 2 {
        return Err(AsymmetrizeError::TooSmall(m.dim()));
    }
    let mut l = m.clone();
    let mut to_input: BTreeMap<String, String> = m.vertex_names().iter().map(|n| (n.clone(), n.clone())).collect();
    let (_, top) = l.max_degree().expect("nonempty");
    let v0_name = l.vertex_name(top[0]).to_string();
    let mut passes = 0;
    loop {
        let v0 = l.vertex_id(&v0_name).expect("original vertices survive");
        let gap = degree_gap(&l, v0);
        if gap.0 > gap.1 {
            break;
        }
        if passes == 10 {
            let (d, argmax) = l.max_degree().expect("nonempty");
            return Err(AsymmetrizeError::Stalled {
                passes,
                top: argmax.iter().map(|&v| (l.vertex_name(v).to_string(), d)).collect(),
            });
        }
        // ids shift as vertices are added, so the star is kept by name
        let star: Vec<Vec<String>> = l.incident_facets(v0).iter().map(|&fi| l.names_of(&l.facets()[fi])).collect();
        for names in star {
            self::star(&mut l, &mut to_input, &names);
        }
        passes += 1;
    }
    let v0 = l.vertex_id(&v0_name).expect("original vertices survive");
    let certificate = certify(&l, v0, passes, budget)?;
    Ok(Asymmetrized { complex: l, v0, certificate, to_input })
}

/// Enlarges an asymmetric subdivision to exactly `facets` facets, keeping
/// `v0` the unique vertex of largest degree: whole stars of `v0` are starred
/// while they fit, then the least facets away from `v0`, one at a time.
/// The result is certified again.
pub fn grow_asymmetric(
    a: &Asymmetrized,
    facets: usize,
    budget: &SearchBudget,
) -> Result<Asymmetrized, AsymmetrizeError> {
    let n = a.complex.dim().max(1) as usize;
    let have = a.complex.facets().len();
    if facets < have || (facets - have) % n != 0 {
        return Err(AsymmetrizeError::Unreachable { facets: have, target: facets, dim: n });
    }
    let mut l = a.complex.clone();
    let mut to_input = a.to_input.clone();
    let v0_name = a.certificate.v0.clone();
    let mut passes = a.certificate.passes;
    loop {
        let v0 = l.vertex_id(&v0_name).expect("original vertices survive");
        if l.facets().len() + n * l.vertex_degree(v0) > facets {
            break;
        }
        let star: Vec<Vec<String>> = l.incident_facets(v0).iter().map(|&fi| l.names_of(&l.facets()[fi])).collect();
        for names in star {
            self::star(&mut l, &mut to_input, &names);
        }
        passes += 1;
    }
    while l.facets().len() < facets {
        let v0 = l.vertex_id(&v0_name).expect("original vertices survive");
        let away = l.facets().iter().find(|f| !f.contains_vertex(v0)).map(|f| l.names_of(f));
        let Some(names) = away else {
            return Err(AsymmetrizeError::Unreachable { facets: l.facets().len(), target: facets, dim: n });
        };
        self::star(&mut l, &mut to_input, &names);
        let v0 = l.vertex_id(&v0_name).expect("original vertices survive");
        let gap = degree_gap(&l, v0);
        if gap.0 <= gap.1 {
            return Err(AsymmetrizeError::Stalled { passes, top: vec![(v0_name, gap.0)] });
        }
    }
    let v0 = l.vertex_id(&v0_name).expect("original vertices survive");
    let certificate = certify(&l, v0, passes, budget)?;
    Ok(Asymmetrized { complex: l, v0, certificate, to_input })
}

fn degree_gap(l: &SimplicialComplex, v0: VertexId) -> (usize, usize) {
    let others = (0..l.vertex_count() as VertexId).filter(|&v| v != v0).map(|v| l.vertex_degree(v)).max().unwrap_or(0);
    (l.vertex_degree(v0), others)
}

/// Certifies a given complex with a chosen vertex.
pub fn certify(
    l: &SimplicialComplex,
    v0: VertexId,
    passes: u32,
    budget: &SearchBudget,
) -> Result<AsymmetryCertificate, AutomorphismBudgetExceeded> {
    let g = complex_automorphisms(l, budget)?;
    let sub = Barycentric::new(l);
    let (d, argmax) = sub.complex.max_degree().expect("nonempty");
    let b0 = sub.barycenter(&Simplex::vertex(v0)).expect("vertex of L");
    Ok(AsymmetryCertificate {
        v0: l.vertex_name(v0).to_string(),
        passes,
        degree_gap: degree_gap(l, v0),
        automorphism_count: g.order(),
        all_fix_v0: g.perms.iter().all(|p| p[v0 as usize] == v0),
        degree_formula: check_degree_formula(l),
        subdivided_max_degree: d,
        subdivided_unique: argmax == vec![b0],
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
    fn tetrahedron_boundary() {
        let k = cx(&["abc", "abd", "acd", "bcd"]);
        assert!(!is_asymmetric(&k, &SearchBudget::default()).unwrap().asymmetric);
        let a = asymmetrize(&k, &SearchBudget::default()).unwrap();
        assert_eq!(a.certificate.passes, 1);
        assert_eq!(a.certificate.degree_gap, (6, 5));
        assert_eq!(a.complex.facets().len(), 10);
        assert_eq!(a.certificate.subdivided_max_degree, 12);
        assert!(a.certificate.valid(2));
        assert_eq!(is_asymmetric(&a.complex, &SearchBudget::default()).unwrap().fixed_vertex.as_deref(), Some("a"));
    }

    #[test]
    fn grown_to_24_facets() {
        let k = Arc::new(cx(&["abc", "abd", "acd", "bcd"]));
        let a = asymmetrize(&k, &SearchBudget::default()).unwrap();
        assert!(a.approximation(k.clone()).is_ok());
        let g = grow_asymmetric(&a, 24, &SearchBudget::default()).unwrap();
        assert_eq!(g.complex.facets().len(), 24);
        assert!(g.certificate.valid(2), "{:?}", g.certificate);
        assert!(g.approximation(k).is_ok());
        assert!(grow_asymmetric(&a, 25, &SearchBudget::default()).is_err());
    }

    #[test]
    fn circles_are_rejected() {
        let c = cx(&["ab", "bc", "ca"]);
        assert_eq!(asymmetrize(&c, &SearchBudget::default()).unwrap_err(), AsymmetrizeError::OneDimensional);
        assert!(matches!(
            asymmetrize(&cx(&["abc"]), &SearchBudget::default()),
            Err(AsymmetrizeError::NotAPseudomanifold(_))
        ));
    }

    #[test]
    fn degree_formula_on_a_triangle() {
        let r = check_degree_formula(&cx(&["abc"]));
        assert!(r.holds);
        assert_eq!(r.checked, 7);
    }

    #[test]
    fn path_is_asymmetric() {
        let r = is_asymmetric(&cx(&["ab", "bc"]), &SearchBudget::default()).unwrap();
        assert_eq!(r.fixed_vertex.as_deref(), Some("b"));
    }
}
