use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

/// Limits for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    #[serde(serialize_with = "serialize_secs")]
    pub time_limit: Option<Duration>,
    /// Number of subtrees searched concurrently; 1 searches sequentially.
    pub parallel_width: usize,
}

fn serialize_secs<S: serde::Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_f64(d.as_secs_f64()),
        None => s.serialize_none(),
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 50_000_000, time_limit: Some(Duration::from_secs(600)), parallel_width: 1 }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..Default::default() }
    }

    pub fn with_width(mut self, width: usize) -> Self {
        self.parallel_width = width.max(1);
        self
    }
}

/// Outcome of a certification attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Refuted,
    /// The budget ran out first; nothing is claimed.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Asymmetric,
    /// Exhaustive search over simplicial self-maps.
    Fsp,
    /// Homological argument instead of search; see `fsp_decomposition`.
    FspDecomposition,
    Fpp,
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A self-map without a fixed simplex or point.
    Map { assign: BTreeMap<String, String> },
    /// A vertex fixed by every automorphism.
    FixedVertex { vertex: String },
    /// A symmetry moving every candidate vertex.
    Automorphism { assign: BTreeMap<String, String> },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
    /// Extra facts backing the verdict.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Shared node counter and clock for one search.
pub(crate) struct Meter {
    nodes: AtomicU64,
    max_nodes: u64,
    start: Instant,
    deadline: Option<Instant>,
    exhausted: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        let start = Instant::now();
        Meter {
            nodes: AtomicU64::new(0),
            max_nodes: budget.max_nodes,
            start,
            deadline: budget.time_limit.map(|t| start + t),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once the budget is spent.
    pub(crate) fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        if n % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.exhausted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed).min(self.max_nodes),
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Result of one depth-first search.
pub(crate) enum Search<T> {
    Found(T),
    Exhausted,
    OutOfBudget,
}

/// Runs `branch` for each first-level choice, concurrently when the budget
/// allows, and returns the outcome of the first choice (in order) that found
/// something. An earlier choice that ran out of budget makes the whole search
/// inconclusive, so the answer never depends on scheduling.
pub(crate) fn split_search<T: Send>(
    choices: &[u32],
    width: usize,
    branch: impl Fn(u32) -> Search<T> + Sync,
) -> Search<T> {
    let results: Vec<Search<T>> = if width <= 1 {
        let mut out = Vec::new();
        for &c in choices {
            let r = branch(c);
            let stop = !matches!(r, Search::Exhausted);
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(width).build().expect("thread pool");
        pool.install(|| choices.par_iter().map(|&c| branch(c)).collect())
    };
    for r in results {
        match r {
            Search::Exhausted => continue,
            other => return other,
        }
    }
    Search::Exhausted
}
