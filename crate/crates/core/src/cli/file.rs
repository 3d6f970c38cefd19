use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianAutomorphism, CyclicDecomposition, Element};
use crate::brace::{Brace, BraceError};
use crate::constructions::ConstructionSpec;

pub const FORMAT_NAME: &str = "brace";
pub const FORMAT_VERSION: u32 = 1;
pub const RANK_ENCODING: &str =
    "little-endian mixed radix: rank = c0 + d0*(c1 + d1*(c2 + ...)) for coordinates (c0, c1, ...) and moduli (d0, d1, ...)";

/// On-disk form of a brace.
///
/// `lambda_table[a][j]` holds the coordinates of `λ_a(e_j)`; `mul_table[a][b]`
/// is the rank of `a∘b`. Exactly one of the two is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraceFile {
    pub format: String,
    pub version: u32,
    pub rank_encoding: String,
    pub moduli: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_table: Option<Vec<Vec<Vec<u64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul_table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub metadata: Metadata,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionSpec>,
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad file: {0}")]
    Shape(String),
    #[error("not a brace: {0}")]
    Invalid(#[from] BraceError),
}

impl BraceFile {
    /// λ-table form.
    pub fn from_brace(b: &Brace, metadata: Metadata) -> Self {
        let g = b.group();
        let coords = |x: usize| g.unrank(x).expect("rank in range").0;
        let table = b
            .lambdas()
            .iter()
            .map(|l| l.columns().iter().map(|&c| coords(c)).collect())
            .collect();
        Self {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            rank_encoding: RANK_ENCODING.into(),
            moduli: g.moduli().to_vec(),
            lambda_table: Some(table),
            mul_table: None,
            metadata,
        }
    }

    /// Multiplication-table form.
    pub fn from_brace_mul(b: &Brace, metadata: Metadata) -> Self {
        let n = b.order();
        let circ = b.circ_table();
        let table = (0..n)
            .map(|a| {
                circ[a * n..(a + 1) * n]
                    .iter()
                    .map(|&x| x as usize)
                    .collect()
            })
            .collect();
        Self {
            lambda_table: None,
            mul_table: Some(table),
            ..Self::from_brace(b, metadata)
        }
    }

    /// Checks the header and table shapes, then validates the brace axioms.
    pub fn to_brace(&self) -> Result<Brace, FileError> {
        if self.format != FORMAT_NAME || self.version != FORMAT_VERSION {
            return Err(FileError::Shape(format!(
                "expected format {FORMAT_NAME} version {FORMAT_VERSION}, got {} {}",
                self.format, self.version
            )));
        }
        let group = CyclicDecomposition::new(self.moduli.clone())
            .map_err(|e| FileError::Shape(e.to_string()))?;
        let n = group.order();
        match (&self.lambda_table, &self.mul_table) {
            (Some(table), None) => {
                if table.len() != n {
                    return Err(FileError::Shape(format!(
                        "lambda_table has {} rows, order is {n}",
                        table.len()
                    )));
                }
                let k = group.rank_count();
                let mut lambdas = Vec::with_capacity(n);
                for (a, rows) in table.iter().enumerate() {
                    if rows.len() != k {
                        return Err(FileError::Shape(format!(
                            "lambda_table[{a}] has {} rows, expected {k}",
                            rows.len()
                        )));
                    }
                    let cols = rows
                        .iter()
                        .map(|c| group.rank(&Element(c.clone())))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| FileError::Shape(format!("lambda_table[{a}]: {e}")))?;
                    lambdas.push(AbelianAutomorphism::from_columns_unchecked(cols));
                }
                Ok(Brace::new(group, lambdas)?)
            }
            (None, Some(table)) => {
                if table.len() != n || table.iter().any(|r| r.len() != n) {
                    return Err(FileError::Shape(format!("mul_table must be {n} x {n}")));
                }
                let flat: Vec<usize> = table.iter().flatten().copied().collect();
                Ok(Brace::from_circ_table(group, &flat)?)
            }
            _ => Err(FileError::Shape(
                "exactly one of lambda_table and mul_table is required".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self, FileError> {
        let text = fs::read_to_string(path).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), FileError> {
        fs::write(path, self.to_json()).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Reads and validates a brace file.
pub fn load_brace(path: &Path) -> Result<(Brace, BraceFile), FileError> {
    let file = BraceFile::load(path)?;
    Ok((file.to_brace()?, file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::{diag327, diag44};

    #[test]
    fn round_trips() {
        for b in [diag44(), diag327()] {
            let meta = Metadata {
                name: Some("x".into()),
                construction: None,
            };
            for f in [
                BraceFile::from_brace(&b, meta.clone()),
                BraceFile::from_brace_mul(&b, meta.clone()),
            ] {
                let back: BraceFile = serde_json::from_str(&f.to_json()).unwrap();
                assert_eq!(back, f);
                assert_eq!(back.to_brace().unwrap(), b);
            }
        }
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.json");
        let b = diag44();
        BraceFile::from_brace(&b, Metadata::default())
            .save(&path)
            .unwrap();
        assert_eq!(load_brace(&path).unwrap().0, b);
    }

    #[test]
    fn rejects_bad_files() {
        let b = diag44();
        let mut f = BraceFile::from_brace(&b, Metadata::default());
        f.mul_table = BraceFile::from_brace_mul(&b, Metadata::default()).mul_table;
        assert!(matches!(f.to_brace(), Err(FileError::Shape(_))));

        let mut f = BraceFile::from_brace(&b, Metadata::default());
        // λ_(0,1) := id breaks λ_{a∘b} = λ_a λ_b
        f.lambda_table.as_mut().unwrap()[4] = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            f.to_brace(),
            Err(FileError::Invalid(BraceError::CocycleViolation { .. }))
        ));

        let mut f = BraceFile::from_brace(&b, Metadata::default());
        f.version = 7;
        assert!(matches!(f.to_brace(), Err(FileError::Shape(_))));
        assert!(serde_json::from_str::<BraceFile>("{\"format\": 1}").is_err());
    }
}
