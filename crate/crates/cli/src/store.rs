//! Versioned `.alg.json` dumps of a [`GradedAlgebra`].
//!
//! Rationals are written as strings. The checksum is the SHA-256 of the
//! compact JSON encoding of the payload (every field except `checksum`).

use std::path::Path;

use lefschetz_core::algebra::AlgebraError;
use lefschetz_core::scalar::{format_scalar, parse_scalar, ParseScalarError};
use lefschetz_core::{GradedAlgebra, Scalar};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const FORMAT: &str = "lefschetz-algebra";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed algebra file at line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },
    #[error("not an algebra file (format `{0}`)")]
    Format(String),
    #[error("unsupported format version {found}, expected {VERSION}")]
    Version { found: u32 },
    #[error("checksum mismatch: file says {stored}, content hashes to {computed}")]
    Checksum { stored: String, computed: String },
    #[error("bad rational `{text}`: {source}")]
    Rational { text: String, source: ParseScalarError },
    #[error("inconsistent algebra data: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("top_degree {declared} disagrees with {found} basis degrees")]
    TopDegree { declared: usize, found: usize },
}

/// The serialized payload, also accepted inline by `{"free": …}` build nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraData {
    pub name: String,
    pub top_degree: usize,
    pub bases: Vec<Vec<String>>,
    /// `[k1, i, k2, j, [coefficients]]`, nonzero products only.
    pub products: Vec<(usize, usize, usize, usize, Vec<String>)>,
    pub integration: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    format: String,
    version: u32,
    name: String,
    top_degree: usize,
    bases: Vec<Vec<String>>,
    products: Vec<(usize, usize, usize, usize, Vec<String>)>,
    integration: Vec<String>,
    checksum: String,
}

impl AlgebraFile {
    fn new(data: AlgebraData) -> Self {
        let checksum = data.checksum();
        AlgebraFile {
            format: FORMAT.to_string(),
            version: VERSION,
            name: data.name,
            top_degree: data.top_degree,
            bases: data.bases,
            products: data.products,
            integration: data.integration,
            checksum,
        }
    }

    fn into_parts(self) -> (AlgebraData, String) {
        let data = AlgebraData {
            name: self.name,
            top_degree: self.top_degree,
            bases: self.bases,
            products: self.products,
            integration: self.integration,
        };
        (data, self.checksum)
    }
}

impl AlgebraData {
    pub fn from_algebra(a: &GradedAlgebra) -> Self {
        let strings = |v: &[Scalar]| v.iter().map(format_scalar).collect::<Vec<_>>();
        AlgebraData {
            name: a.name().to_string(),
            top_degree: a.top_degree(),
            bases: a.bases().to_vec(),
            products: a
                .nonzero_products()
                .map(|(k1, i, k2, j, v)| (k1, i, k2, j, strings(v)))
                .collect(),
            integration: strings(a.integration()),
        }
    }

    pub fn to_algebra(&self) -> Result<GradedAlgebra, StoreError> {
        if self.bases.len() != self.top_degree + 1 {
            return Err(StoreError::TopDegree {
                declared: self.top_degree,
                found: self.bases.len(),
            });
        }
        let integration = parse_all(&self.integration)?;
        let entries = self
            .products
            .iter()
            .map(|(k1, i, k2, j, v)| Ok((*k1, *i, *k2, *j, parse_all(v)?)))
            .collect::<Result<Vec<_>, StoreError>>()?;
        Ok(GradedAlgebra::from_parts(
            self.name.clone(),
            self.bases.clone(),
            integration,
            entries,
        )?)
    }

    fn checksum(&self) -> String {
        let payload = serde_json::to_vec(self).expect("payload is serializable");
        hex::encode(Sha256::digest(payload))
    }
}

fn parse_all(values: &[String]) -> Result<Vec<Scalar>, StoreError> {
    values
        .iter()
        .map(|t| {
            parse_scalar(t).map_err(|source| StoreError::Rational {
                text: t.clone(),
                source,
            })
        })
        .collect()
}

/// Pretty JSON text of an algebra file.
pub fn encode_algebra(a: &GradedAlgebra) -> String {
    let file = AlgebraFile::new(AlgebraData::from_algebra(a));
    let mut text = serde_json::to_string_pretty(&file).expect("serializable");
    text.push('\n');
    text
}

pub fn decode_algebra(text: &str) -> Result<GradedAlgebra, StoreError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(malformed)?;
    // check the header first so version errors beat schema errors
    if let Some(format) = value.get("format") {
        let format = format.as_str().unwrap_or_default();
        if format != FORMAT {
            return Err(StoreError::Format(format.to_string()));
        }
    }
    if let Some(version) = value.get("version").and_then(serde_json::Value::as_u64) {
        if version != u64::from(VERSION) {
            return Err(StoreError::Version { found: version as u32 });
        }
    }
    let file: AlgebraFile = serde_json::from_str(text).map_err(malformed)?;
    let (data, stored) = file.into_parts();
    let computed = data.checksum();
    if computed != stored {
        return Err(StoreError::Checksum { stored, computed });
    }
    data.to_algebra()
}

fn malformed(e: serde_json::Error) -> StoreError {
    StoreError::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn write_algebra(path: &Path, a: &GradedAlgebra) -> Result<(), StoreError> {
    std::fs::write(path, encode_algebra(a)).map_err(|source| StoreError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_algebra(path: &Path) -> Result<GradedAlgebra, StoreError> {
    let text = std::fs::read_to_string(path).map_err(|source| StoreError::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode_algebra(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lefschetz_core::catalog::lookup;
    use lefschetz_core::constructors::projective_space;

    #[test]
    fn round_trip_projective_space() {
        let p3 = projective_space(3);
        assert_eq!(decode_algebra(&encode_algebra(&p3)).unwrap(), p3);
    }

    #[test]
    fn round_trip_blowup_through_disk() {
        let x = lookup("example1").unwrap().algebra;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.alg.json");
        write_algebra(&path, &x).unwrap();
        let back = read_algebra(&path).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.bases(), x.bases());
    }

    #[test]
    fn truncated_file_is_malformed() {
        let text = encode_algebra(&projective_space(2));
        let cut = &text[..text.len() / 2];
        assert!(matches!(decode_algebra(cut), Err(StoreError::Malformed { .. })));
    }

    #[test]
    fn tampering_is_detected() {
        let text = encode_algebra(&projective_space(2));
        let bad = text.replacen("\"P^2\"", "\"P^3\"", 1);
        assert!(matches!(decode_algebra(&bad), Err(StoreError::Checksum { .. })));
    }

    #[test]
    fn version_and_rationals() {
        let text = encode_algebra(&projective_space(1));
        let v2 = text.replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(matches!(decode_algebra(&v2), Err(StoreError::Version { found: 2 })));

        let mut data = AlgebraData::from_algebra(&projective_space(1));
        data.integration = vec!["1/0".into()];
        assert!(matches!(data.to_algebra(), Err(StoreError::Rational { .. })));
    }

    #[test]
    fn fractions_survive() {
        let mut data = AlgebraData::from_algebra(&projective_space(1));
        data.integration = vec!["-3/7".into()];
        let a = data.to_algebra().unwrap();
        let back = decode_algebra(&encode_algebra(&a)).unwrap();
        assert_eq!(back.integration(), a.integration());
    }
}
