use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use finfix::io::{ComplexFile, MapFile, PosetFile};
use finfix::{FinitePoset, MonotoneMap, SimplicialComplex, SimplicialMap};
use serde::de::DeserializeOwned;
use sha2::{Digest, Sha256};

/// Malformed input, annotated with where it was found.
#[derive(Debug)]
pub struct InputError {
    pub path: String,
    /// `(line, column)` for syntax errors.
    pub at: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some((l, c)) => write!(f, "{}:{l}:{c}: {}", self.path, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

impl InputError {
    pub fn new(path: impl AsRef<Path>, message: impl ToString) -> Self {
        InputError { path: path.as_ref().display().to_string(), at: None, message: message.to_string() }
    }
}

/// Either kind of space a file may hold.
pub enum Space {
    Complex(SimplicialComplex),
    Poset(FinitePoset),
}

/// Reads input files and remembers the hash of each one.
#[derive(Default)]
pub struct Inputs {
    pub hashes: BTreeMap<String, String>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String, InputError> {
        let bytes = std::fs::read(path).map_err(|e| InputError::new(path, e))?;
        self.hashes.insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).map_err(|e| InputError::new(path, format!("not UTF-8: {e}")))
    }

    pub fn json<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, InputError> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| InputError {
            path: path.display().to_string(),
            at: Some((e.line(), e.column())),
            message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
        })
    }

    pub fn complex(&mut self, path: &Path) -> Result<SimplicialComplex, InputError> {
        let f: ComplexFile = self.json(path)?;
        f.to_complex().map_err(|e| InputError::new(path, e))
    }

    pub fn poset(&mut self, path: &Path, repair: bool) -> Result<FinitePoset, InputError> {
        let f: PosetFile = self.json(path)?;
        f.to_poset(repair).map_err(|e| InputError::new(path, e))
    }

    /// Dispatches on the top-level key: `facets` or `points`.
    pub fn space(&mut self, path: &Path, repair: bool) -> Result<Space, InputError> {
        let v: serde_json::Value = self.json(path)?;
        if v.get("facets").is_some() {
            let f: ComplexFile = serde_json::from_value(v).map_err(|e| InputError::new(path, e))?;
            f.to_complex().map(Space::Complex).map_err(|e| InputError::new(path, e))
        } else if v.get("points").is_some() {
            let f: PosetFile = serde_json::from_value(v).map_err(|e| InputError::new(path, e))?;
            f.to_poset(repair).map(Space::Poset).map_err(|e| InputError::new(path, e))
        } else {
            Err(InputError::new(path, "expected a complex (\"facets\") or a poset (\"points\")"))
        }
    }

    /// A simplicial map; its source and target paths are relative to the map
    /// file.
    pub fn simplicial_map(&mut self, path: &Path) -> Result<SimplicialMap, InputError> {
        let f: MapFile = self.json(path)?;
        let src = Arc::new(self.complex(&beside(path, &f.source))?);
        let tgt = Arc::new(self.complex(&beside(path, &f.target))?);
        SimplicialMap::from_names(src, tgt, &f.assign).map_err(|e| InputError::new(path, e))
    }

    pub fn monotone_map(&mut self, path: &Path) -> Result<MonotoneMap, InputError> {
        let f: MapFile = self.json(path)?;
        let src = Arc::new(self.poset(&beside(path, &f.source), false)?);
        let tgt = Arc::new(self.poset(&beside(path, &f.target), false)?);
        MonotoneMap::from_names(src, tgt, &f.assign).map_err(|e| InputError::new(path, e))
    }
}

/// `rel` resolved against the directory of `file`.
pub fn beside(file: &Path, rel: &str) -> PathBuf {
    let rel = Path::new(rel);
    if rel.is_absolute() {
        rel.to_path_buf()
    } else {
        file.parent().unwrap_or(Path::new("")).join(rel)
    }
}

/// Writes newline-terminated pretty JSON and returns its hash.
pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<String, InputError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| InputError::new(path, e))?;
    text.push('\n');
    std::fs::write(path, &text).map_err(|e| InputError::new(path, e))?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}
