use fixedbitset::FixedBitSet;

use super::budget::{split_search, Certificate, CertificateKind, Meter, Search, SearchBudget, Verdict, Witness};
use crate::fposet::{FinitePoset, PointId};

/// Searches for a fixed-point-free monotone self-map of `x`.
///
/// Points are assigned along the least linear extension, so every lower
/// cover of a point is assigned before it and the admissible images of the
/// point are the common upper bounds of their images. Images are tried in
/// name order; a refutation is the least witness in that sense.
pub fn fpp_check(x: &FinitePoset, budget: &SearchBudget) -> Certificate {
    let meter = Meter::new(budget);
    let n = x.len();
    let order = x.linear_extension();
    let up_closed: Vec<FixedBitSet> = x
        .points()
        .map(|p| {
            let mut s = x.above(p).clone();
            s.insert(p as usize);
            s
        })
        .collect();
    let ctx = FppContext { x, order: &order, up_closed: &up_closed };
    let result = if n == 0 {
        Search::Found(Vec::new())
    } else {
        let first = order[0];
        let choices: Vec<u32> = (0..n as u32).filter(|&w| w != first).collect();
        split_search(&choices, budget.parallel_width, |w| {
            let mut assign = vec![u32::MAX; n];
            assign[first as usize] = w;
            ctx.dfs(&mut assign, 1, &meter)
        })
    };
    let (verdict, witness) = match result {
        Search::Found(assign) => {
            let names = x.points().map(|p| (x.name(p).to_string(), x.name(assign[p as usize]).to_string()));
            (Verdict::Refuted, Some(Witness::Map { assign: names.collect() }))
        }
        Search::Exhausted => (Verdict::Holds, None),
        Search::OutOfBudget => (Verdict::Inconclusive, None),
    };
    Certificate { kind: CertificateKind::Fpp, verdict, witness, stats: meter.stats(), notes: Vec::new() }
}

struct FppContext<'a> {
    x: &'a FinitePoset,
    order: &'a [PointId],
    up_closed: &'a [FixedBitSet],
}

impl FppContext<'_> {
    fn dfs(&self, assign: &mut Vec<u32>, i: usize, meter: &Meter) -> Search<Vec<u32>> {
        if !meter.tick() {
            return Search::OutOfBudget;
        }
        if i == self.order.len() {
            return Search::Found(assign.clone());
        }
        let p = self.order[i];
        let mut cand = FixedBitSet::with_capacity(assign.len());
        cand.insert_range(..);
        for &y in self.x.lower_covers(p) {
            cand.intersect_with(&self.up_closed[assign[y as usize] as usize]);
        }
        cand.set(p as usize, false);
        for w in cand.ones() {
            assign[p as usize] = w as u32;
            match self.dfs(assign, i + 1, meter) {
                Search::Exhausted => {}
                other => return other,
            }
        }
        assign[p as usize] = u32::MAX;
        Search::Exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_have_fpp() {
        let c = FinitePoset::from_covers(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(fpp_check(&c, &SearchBudget::default()).verdict, Verdict::Holds);
    }

    #[test]
    fn crown_swaps() {
        let c =
            FinitePoset::from_covers(&["x", "y", "z", "w"], &[("z", "x"), ("z", "y"), ("w", "x"), ("w", "y")]).unwrap();
        let cert = fpp_check(&c, &SearchBudget::default());
        assert_eq!(cert.verdict, Verdict::Refuted);
        let Some(Witness::Map { assign }) = cert.witness else { panic!("expected a map") };
        assert_eq!(assign["x"], "y");
        assert_eq!(assign["z"], "w");
        assert_eq!(assign["w"], "z");
    }

    #[test]
    fn antichain_of_two() {
        let a = FinitePoset::from_covers::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(fpp_check(&a, &SearchBudget::default().with_width(2)).verdict, Verdict::Refuted);
        let one = FinitePoset::from_covers::<&str>(&["a"], &[]).unwrap();
        assert_eq!(fpp_check(&one, &SearchBudget::default()).verdict, Verdict::Holds);
    }
}
