use std::collections::BTreeMap;

use finfix::{Certificate, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::InputError;

/// What a command concluded, which fixes the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Refuted,
    Inconclusive,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Refuted => 1,
            Outcome::Inconclusive => 3,
        }
    }

    pub fn of(v: Verdict) -> Self {
        match v {
            Verdict::Holds => Outcome::Success,
            Verdict::Refuted => Outcome::Refuted,
            Verdict::Inconclusive => Outcome::Inconclusive,
        }
    }

    pub fn check(passed: bool) -> Self {
        if passed {
            Outcome::Success
        } else {
            Outcome::Refuted
        }
    }
}

/// The body a command hands back before inputs and version are attached.
pub struct Done {
    pub outcome: Outcome,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub stats: BTreeMap<String, Value>,
    /// One line for stderr.
    pub summary: String,
}

impl Done {
    pub fn new(outcome: Outcome, result: Value, summary: impl Into<String>) -> Self {
        Done { outcome, result, witnesses: Vec::new(), stats: BTreeMap::new(), summary: summary.into() }
    }

    pub fn witness(mut self, w: Option<Value>) -> Self {
        self.witnesses.extend(w);
        self
    }

    pub fn stat(mut self, key: &str, v: impl Serialize) -> Self {
        self.stats.insert(key.into(), json!(v));
        self
    }

    /// A search verdict. Node counts are kept only for exhaustive passes,
    /// where they do not depend on the number of workers.
    pub fn certificate(c: &Certificate, witness: bool, what: &str) -> Self {
        let done = Done::new(Outcome::of(c.verdict), scrub(to_value(c)), format!("{what}: {:?}", c.verdict))
            .witness(if witness { c.witness.as_ref().map(to_value) } else { None });
        if c.verdict == Verdict::Holds {
            done.stat("nodes", c.stats.nodes)
        } else {
            done
        }
    }
}

/// The JSON report printed on stdout.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub stats: BTreeMap<String, Value>,
    pub version: &'static str,
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

/// Drops timing and node counts, which vary between runs.
pub fn scrub(mut v: Value) -> Value {
    fn walk(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("elapsed_ms");
                m.remove("nodes");
                m.values_mut().for_each(walk);
                if m.get("stats").is_some_and(|s| s.as_object().is_some_and(|o| o.is_empty())) {
                    m.remove("stats");
                }
            }
            Value::Array(a) => a.iter_mut().for_each(walk),
            _ => {}
        }
    }
    walk(&mut v);
    v
}

/// Errors that end a command.
#[derive(Debug)]
pub enum Failure {
    Input(InputError),
    /// The command ran but refused or could not complete; exit 1 with a
    /// report.
    Refused { result: Value, message: String },
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}
