//! Category documents in JSON, catalog lookup and atomic report writes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tcat_core::{catalog, CategoryData, CategoryParts, Scalar, ToleranceCfg};
use thiserror::Error;

/// Environment variable naming a directory of extra `<name>.json` documents.
pub const CATALOG_DIR_ENV: &str = "TCAT_CATALOG_DIR";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write `{path}`: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed category document{}: {source}", origin.as_ref().map(|p| format!(" `{}`", p.display())).unwrap_or_default())]
    Parse {
        origin: Option<PathBuf>,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Category(#[from] tcat_core::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FRecord {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RRecord {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PivotalRecord {
    pub i: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceRecord {
    pub eps_structural: f64,
    pub eps_identity: f64,
}

/// On-disk form of a category.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub name: String,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    pub fusion: Vec<[usize; 3]>,
    #[serde(rename = "F")]
    pub f: Vec<FRecord>,
    #[serde(rename = "R")]
    pub r: Vec<RRecord>,
    pub pivotal: Vec<PivotalRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceRecord>,
}

impl CategoryDoc {
    pub fn from_category(cat: &CategoryData) -> Self {
        let p = cat.to_parts();
        let tol = p.tolerances;
        CategoryDoc {
            name: p.name,
            labels: p.labels,
            dual: p.dual,
            fusion: p.fusion,
            f: p.f
                .iter()
                .map(|([a, b, c, d, e, f], z)| FRecord {
                    a: *a,
                    b: *b,
                    c: *c,
                    d: *d,
                    e: *e,
                    f: *f,
                    re: z.re,
                    im: z.im,
                })
                .collect(),
            r: p.r
                .iter()
                .map(|([a, b, c], z)| RRecord {
                    a: *a,
                    b: *b,
                    c: *c,
                    re: z.re,
                    im: z.im,
                })
                .collect(),
            pivotal: p
                .pivotal
                .iter()
                .map(|(i, z)| PivotalRecord {
                    i: *i,
                    re: z.re,
                    im: z.im,
                })
                .collect(),
            tolerances: (tol != ToleranceCfg::default()).then_some(ToleranceRecord {
                eps_structural: tol.eps_structural,
                eps_identity: tol.eps_identity,
            }),
        }
    }

    pub fn into_category(self) -> Result<CategoryData, IoError> {
        let tolerances = self
            .tolerances
            .map(|t| ToleranceCfg {
                eps_structural: t.eps_structural,
                eps_identity: t.eps_identity,
            })
            .unwrap_or_default();
        let parts = CategoryParts {
            name: self.name,
            labels: self.labels,
            dual: self.dual,
            fusion: self.fusion,
            f: self
                .f
                .into_iter()
                .map(|r| ([r.a, r.b, r.c, r.d, r.e, r.f], Scalar::new(r.re, r.im)))
                .collect(),
            r: self
                .r
                .into_iter()
                .map(|r| ([r.a, r.b, r.c], Scalar::new(r.re, r.im)))
                .collect(),
            pivotal: self
                .pivotal
                .into_iter()
                .map(|r| (r.i, Scalar::new(r.re, r.im)))
                .collect(),
            tolerances,
        };
        Ok(CategoryData::from_parts(parts)?)
    }
}

/// Parses a category document. Axioms are not checked.
pub fn parse_category(text: &str) -> Result<CategoryData, IoError> {
    let doc: CategoryDoc = serde_json::from_str(text).map_err(|source| IoError::Parse {
        origin: None,
        source,
    })?;
    doc.into_category()
}

pub fn serialize_category(cat: &CategoryData) -> String {
    let mut s = serde_json::to_string_pretty(&CategoryDoc::from_category(cat))
        .expect("category documents always serialize");
    s.push('\n');
    s
}

pub fn load_category_file(path: &Path) -> Result<CategoryData, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let doc: CategoryDoc = serde_json::from_str(&text).map_err(|source| IoError::Parse {
        origin: Some(path.to_path_buf()),
        source,
    })?;
    doc.into_category()
}

fn catalog_dir() -> Option<PathBuf> {
    std::env::var_os(CATALOG_DIR_ENV).map(PathBuf::from)
}

/// Names of the `*.json` documents in the user catalog directory.
fn user_names(dir: &Path) -> Vec<String> {
    let mut out: Vec<String> = fs::read_dir(dir)
        .into_iter()
        .flatten()
        .flatten()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .filter_map(|p| p.file_stem().and_then(|s| s.to_str()).map(String::from))
        .collect();
    out.sort();
    out
}

/// Built-in names followed by user catalog names.
pub fn available_names() -> Vec<String> {
    let mut names = catalog::available();
    if let Some(dir) = catalog_dir() {
        for n in user_names(&dir) {
            if !names.contains(&n) {
                names.push(n);
            }
        }
    }
    names
}

/// Resolves a category reference: an existing file path, then a built-in
/// name, then `<name>.json` in the user catalog directory.
pub fn resolve_category(reference: &str) -> Result<CategoryData, IoError> {
    let path = Path::new(reference);
    if path.is_file() {
        return load_category_file(path);
    }
    if catalog::NAMES.contains(&reference) {
        return Ok(catalog::catalog(reference)?);
    }
    if let Some(dir) = catalog_dir() {
        let candidate = dir.join(format!("{reference}.json"));
        if candidate.is_file() {
            return load_category_file(&candidate);
        }
    }
    Err(tcat_core::Error::UnknownCategory {
        name: reference.into(),
        available: available_names(),
    }
    .into())
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), IoError> {
    let err = |source| IoError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents.as_bytes()).map_err(err)?;
    tmp.flush().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_key_is_named() {
        let err = parse_category(r#"{"name": "x", "labels": ["1"]}"#).unwrap_err();
        assert!(err.to_string().contains("`dual`"), "{err}");
    }

    #[test]
    fn unit_must_be_self_dual() {
        let doc = r#"{"name": "x", "labels": ["1", "g"], "dual": [1, 0],
            "fusion": [], "F": [], "R": [], "pivotal": []}"#;
        let err = parse_category(doc).unwrap_err();
        assert!(err.to_string().contains("unit must be self-dual"), "{err}");
    }
}
