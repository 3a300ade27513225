//! JSON file formats and serialization helpers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::fposet::{FinitePoset, PosetError};
use crate::scomplex::{ComplexError, SimplicialComplex};

/// Integers that fit in `i64` serialize as JSON numbers, larger ones as
/// decimal strings.
pub fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(x) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

pub fn serialize_bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(bigint_json))
}

pub fn bigint_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => v.into(),
        Err(_) => x.to_string().into(),
    }
}

/// `{"facets": [["a","b","c"], ...], "labels": {...}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexFile {
    pub facets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, Vec<String>>>,
}

impl ComplexFile {
    pub fn to_complex(&self) -> Result<SimplicialComplex, ComplexError> {
        let k = SimplicialComplex::from_facets(&self.facets)?;
        match &self.labels {
            Some(l) => k.with_labels(l),
            None => Ok(k),
        }
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        let labels = k.labels().map(|table| {
            table
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_empty())
                .map(|(v, l)| (k.vertex_name(v as u32).to_string(), l.clone()))
                .collect()
        });
        ComplexFile { facets: k.facet_names(), labels }
    }
}

/// `{"source": path, "target": path, "assign": {"a": "x", ...}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapFile {
    pub source: String,
    pub target: String,
    pub assign: BTreeMap<String, String>,
}

/// `{"points": [...], "covers": [["a","b"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetFile {
    pub points: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetFile {
    /// With `repair`, covers implied by transitivity are dropped instead of
    /// rejected.
    pub fn to_poset(&self, repair: bool) -> Result<FinitePoset, PosetError> {
        if repair {
            FinitePoset::from_relations(&self.points, &self.covers)
        } else {
            FinitePoset::from_covers(&self.points, &self.covers)
        }
    }

    pub fn from_poset(x: &FinitePoset) -> Self {
        PosetFile { points: x.names().to_vec(), covers: x.cover_names() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let text = r#"{"facets": [["a","b"],["b","c"]], "labels": {"a": ["x"]}}"#;
        let f: ComplexFile = serde_json::from_str(text).unwrap();
        let k = f.to_complex().unwrap();
        assert_eq!(k.vertex_count(), 3);
        let back = ComplexFile::from_complex(&k);
        assert_eq!(back.to_complex().unwrap(), k);
    }

    #[test]
    fn poset_repair() {
        let text = r#"{"points": ["a","b","c"], "covers": [["a","b"],["b","c"],["a","c"]]}"#;
        let f: PosetFile = serde_json::from_str(text).unwrap();
        assert!(f.to_poset(false).is_err());
        let p = f.to_poset(true).unwrap();
        assert_eq!(PosetFile::from_poset(&p).covers.len(), 2);
    }

    #[test]
    fn big_integers_become_strings() {
        let big = BigInt::from(u64::MAX) * 4;
        assert_eq!(bigint_json(&big), serde_json::Value::String(big.to_string()));
        assert_eq!(bigint_json(&BigInt::from(-3)), serde_json::json!(-3));
    }
}
