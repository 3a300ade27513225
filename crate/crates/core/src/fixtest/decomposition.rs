use serde::Serialize;

use super::asymmetric::is_asymmetric;
use super::budget::{Certificate, CertificateKind, SearchBudget, SearchStats, Verdict, Witness};
use crate::scomplex::SimplicialMap;
use crate::zhomology::{lefschetz, Homology};
use crate::SimplicialComplex;

/// Certifies the fixed simplex property of an asymmetric homology sphere
/// without enumerating maps.
///
/// For a simplicial self-map `f` of a closed oriented homology `n`-sphere,
/// `Λ(f) = 1 + (−1)^n deg f`. If `Λ(f) ≠ 0` then `f` fixes a point of the
/// realization, and a fixed point inside an open simplex `σ` forces
/// `f(σ) = σ`. Otherwise `|deg f| = 1`, so `f_#` sends the fundamental
/// cycle, whose norm is the number of facets, to a cycle of the same norm;
/// since `‖f_#‖ ≤ 1` this means `f` is onto the facets, hence an
/// automorphism, hence fixes the vertex fixed by all automorphisms.
pub fn fsp_decomposition(m: &SimplicialComplex, budget: &SearchBudget) -> Certificate {
    let start = std::time::Instant::now();
    let mut notes = Vec::new();
    let pm = m.pseudomanifold_check();
    let n = m.dim().max(0) as usize;
    let sphere = pm.is_closed_pseudomanifold() && pm.orientable;
    notes.push(format!("closed orientable {n}-pseudomanifold: {sphere}"));
    let h = Homology::of(m);
    let mut expected = vec![0; n + 1];
    expected[0] = 1;
    expected[n] = 1;
    let homology_sphere = h.betti() == expected && h.torsion().iter().all(Vec::is_empty);
    notes.push(format!("homology of a {n}-sphere: {homology_sphere}"));
    let (asym, nodes) = match is_asymmetric(m, budget) {
        Ok(r) => {
            notes.push(format!("automorphism group of order {}; fixed vertex {:?}", r.group_order, r.fixed_vertex));
            (r.fixed_vertex, r.group_order as u64)
        }
        Err(e) => {
            notes.push(e.to_string());
            (None, e.0.nodes)
        }
    };
    let verdict = if sphere && homology_sphere && n >= 1 && asym.is_some() { Verdict::Holds } else { Verdict::Inconclusive };
    Certificate {
        kind: CertificateKind::FspDecomposition,
        verdict,
        witness: asym.map(|vertex| Witness::FixedVertex { vertex }),
        stats: SearchStats { nodes, elapsed_ms: start.elapsed().as_millis() as u64 },
        notes,
    }
}

/// Which half of the decomposition argument covers a given self-map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SelfMapCase {
    /// `Λ(f) ≠ 0`.
    Lefschetz { lefschetz: i64 },
    /// `Λ(f) = 0` and `f` permutes the facets.
    Automorphism,
    /// Neither; impossible when the certificate holds.
    Uncovered { lefschetz: i64 },
}

pub fn classify_self_map(f: &SimplicialMap) -> SelfMapCase {
    let l: i64 = lefschetz(f).expect("self-map").try_into().expect("small Lefschetz number");
    if l != 0 {
        SelfMapCase::Lefschetz { lefschetz: l }
    } else if f.is_isomorphism() {
        SelfMapCase::Automorphism
    } else {
        SelfMapCase::Uncovered { lefschetz: l }
    }
}
