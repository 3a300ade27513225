use std::sync::Arc;

use super::{FinitePoset, MonotoneMap, PointId, PosetError};

/// The non-Hausdorff mapping cylinder `B_f` of `f: X → Y`: the disjoint
/// union with `x < y` whenever `f(x) ≤ y`. `Y` is an up-set and `X` a
/// down-set, and `B_f` deformation retracts onto `Y`.
#[derive(Clone, Debug)]
pub struct NhCylinder {
    pub poset: Arc<FinitePoset>,
    /// Point of `B_f` for each point of `X`.
    pub x_points: Vec<PointId>,
    pub y_points: Vec<PointId>,
}

pub fn nh_cylinder(f: &MonotoneMap) -> NhCylinder {
    nh_cylinder_named(f, "x:", "y:").expect("distinct tags keep names apart")
}

/// As [`nh_cylinder`] with given name prefixes for the two ends. Equal
/// prefixes are allowed as long as no names collide.
pub fn nh_cylinder_named(f: &MonotoneMap, x_tag: &str, y_tag: &str) -> Result<NhCylinder, PosetError> {
    let (x, y) = (f.source(), f.target());
    let mut names: Vec<String> = x.names().iter().map(|n| format!("{x_tag}{n}")).collect();
    names.extend(y.names().iter().map(|n| format!("{y_tag}{n}")));
    let mut rel: Vec<(String, String)> = Vec::new();
    for (a, b) in x.cover_names() {
        rel.push((format!("{x_tag}{a}"), format!("{x_tag}{b}")));
    }
    for (a, b) in y.cover_names() {
        rel.push((format!("{y_tag}{a}"), format!("{y_tag}{b}")));
    }
    for p in x.points() {
        rel.push((format!("{x_tag}{}", x.name(p)), format!("{y_tag}{}", y.name(f.apply(p)))));
    }
    let b = FinitePoset::from_relations(&names, &rel)?;
    let x_points = x.points().map(|p| b.id(&format!("{x_tag}{}", x.name(p))).expect("named above")).collect();
    let y_points = y.points().map(|p| b.id(&format!("{y_tag}{}", y.name(p))).expect("named above")).collect();
    Ok(NhCylinder { poset: Arc::new(b), x_points, y_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fposet::order_complex;
    use crate::zhomology::Homology;
    use fixedbitset::FixedBitSet;

    fn crown() -> Arc<FinitePoset> {
        Arc::new(
            FinitePoset::from_covers(&["x", "y", "z", "w"], &[("z", "x"), ("z", "y"), ("w", "x"), ("w", "y")]).unwrap(),
        )
    }

    #[test]
    fn cylinder_of_a_constant_map_is_a_cone() {
        let c = crown();
        let pt = Arc::new(FinitePoset::from_covers::<&str>(&["p"], &[]).unwrap());
        let f = MonotoneMap::new(c, pt, vec![0; 4]).unwrap();
        let b = nh_cylinder(&f);
        assert_eq!(b.poset.len(), 5);
        assert_eq!(b.poset.maximal().len(), 1);
        assert!(b.poset.is_contractible());
    }

    #[test]
    fn cylinder_of_the_identity() {
        let c = crown();
        let b = nh_cylinder(&MonotoneMap::identity(c));
        assert_eq!(b.poset.len(), 8);
        let h = Homology::of(&order_complex(&b.poset));
        assert_eq!(h.betti(), vec![1, 1, 0]);
        let mut ys = FixedBitSet::with_capacity(8);
        for &p in &b.y_points {
            ys.insert(p as usize);
        }
        assert!(b.poset.is_up_set(&ys));
    }
}
