use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{FinitePoset, PointId};

/// Kind of a beat point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BeatKind {
    /// `X_{<x}` has a maximum.
    Down,
    /// `X_{>x}` has a minimum.
    Up,
}

/// How contractibility was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contractibility {
    /// The core is a single point.
    Contractible,
    /// The core has more than one point; such a space may still be weakly
    /// contractible, but it is not contractible.
    NotContractibleByDismantling,
    Empty,
}

impl FinitePoset {
    pub fn beat_kind(&self, x: PointId) -> Option<BeatKind> {
        if self.lower_covers(x).len() == 1 {
            Some(BeatKind::Down)
        } else if self.upper_covers(x).len() == 1 {
            Some(BeatKind::Up)
        } else {
            None
        }
    }

    pub fn beat_points(&self) -> Vec<PointId> {
        self.points().filter(|&x| self.beat_kind(x).is_some()).collect()
    }

    /// Removes beat points one at a time, always the least by name among
    /// those currently removable, until none remain. Returns the core and the
    /// removed points in removal order.
    pub fn core_with_trace(&self) -> (FinitePoset, Vec<PointId>) {
        let n = self.len();
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        let mut up: Vec<BTreeSet<PointId>> = self.points().map(|x| self.upper_covers(x).iter().copied().collect()).collect();
        let mut down: Vec<BTreeSet<PointId>> =
            self.points().map(|x| self.lower_covers(x).iter().copied().collect()).collect();
        let is_beat = |up: &[BTreeSet<PointId>], down: &[BTreeSet<PointId>], x: PointId| {
            up[x as usize].len() == 1 || down[x as usize].len() == 1
        };
        let mut ready: BTreeSet<PointId> = self.points().filter(|&x| is_beat(&up, &down, x)).collect();
        let mut removed = Vec::new();
        // a single point has an empty link and is never a beat point
        while let Some(x) = ready.pop_first() {
            if alive.count_ones(..) == 1 {
                break;
            }
            alive.set(x as usize, false);
            removed.push(x);
            let lo: Vec<PointId> = std::mem::take(&mut down[x as usize]).into_iter().collect();
            let hi: Vec<PointId> = std::mem::take(&mut up[x as usize]).into_iter().collect();
            for &a in &lo {
                up[a as usize].remove(&x);
            }
            for &b in &hi {
                down[b as usize].remove(&x);
            }
            for &a in &lo {
                for &b in &hi {
                    // a < b stays a cover iff nothing alive lies strictly between
                    let mut between = self.above(a).clone();
                    between.intersect_with(self.below(b));
                    between.intersect_with(&alive);
                    if between.is_clear() {
                        up[a as usize].insert(b);
                        down[b as usize].insert(a);
                    }
                }
            }
            for &y in lo.iter().chain(&hi) {
                if is_beat(&up, &down, y) {
                    ready.insert(y);
                } else {
                    ready.remove(&y);
                }
            }
        }
        (self.induced(&alive), removed)
    }

    pub fn core(&self) -> FinitePoset {
        self.core_with_trace().0
    }

    pub fn contractibility(&self) -> Contractibility {
        if self.is_empty() {
            Contractibility::Empty
        } else if self.core().len() == 1 {
            Contractibility::Contractible
        } else {
            Contractibility::NotContractibleByDismantling
        }
    }

    /// Contractible, decided by dismantling to a point.
    pub fn is_contractible(&self) -> bool {
        self.contractibility() == Contractibility::Contractible
    }

    /// `X_{<x}` or `X_{>x}` is contractible.
    pub fn is_weak_point(&self, x: PointId) -> bool {
        self.strictly_below(x).is_contractible() || self.strictly_above(x).is_contractible()
    }

    pub fn weak_points(&self) -> Vec<PointId> {
        self.points().filter(|&x| self.is_weak_point(x)).collect()
    }
}
