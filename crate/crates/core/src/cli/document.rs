//! The JSON family document `{"n": .., "r": .., "sets": [[..], ..], "meta": {..}}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kneser::{KneserParams, Vertex, VertexFamily};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub n: u32,
    pub r: u32,
    pub sets: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed document at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid parameters n = {n}, r = {r}: {message}")]
    Parameters { n: u32, r: u32, message: String },
    #[error("set {set}: element {element} is outside [1..{n}]")]
    ElementOutOfRange { set: usize, element: u32, n: u32 },
    #[error("set {set} has {len} elements, expected r = {r}")]
    WrongSize { set: usize, len: usize, r: u32 },
    #[error("set {set} repeats element {element}")]
    RepeatedElement { set: usize, element: u32 },
    #[error("sets {first} and {second} are the same vertex")]
    DuplicateSet { first: usize, second: usize },
}

impl FamilyDocument {
    pub fn from_family(family: &VertexFamily) -> Self {
        let p = family.params();
        FamilyDocument {
            n: p.n(),
            r: p.r(),
            sets: family.to_sets(),
            meta: None,
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_string(), value.to_string());
        self
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn read(path: &Path) -> Result<Self, DocumentError> {
        let text = std::fs::read_to_string(path).map_err(|e| DocumentError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Validates the document. Sets are numbered from 1 in messages.
    pub fn to_family(&self) -> Result<VertexFamily, DocumentError> {
        let params = KneserParams::new(self.n, self.r).map_err(|e| DocumentError::Parameters {
            n: self.n,
            r: self.r,
            message: e.to_string(),
        })?;
        let mut seen: HashMap<Vertex, usize> = HashMap::new();
        let mut members = Vec::with_capacity(self.sets.len());
        for (i, set) in self.sets.iter().enumerate() {
            let set_no = i + 1;
            let mut v = Vertex::default();
            for &x in set {
                if x == 0 || x > self.n {
                    return Err(DocumentError::ElementOutOfRange {
                        set: set_no,
                        element: x,
                        n: self.n,
                    });
                }
                if v.contains(x) {
                    return Err(DocumentError::RepeatedElement {
                        set: set_no,
                        element: x,
                    });
                }
                v = v.with(x);
            }
            if set.len() != self.r as usize {
                return Err(DocumentError::WrongSize {
                    set: set_no,
                    len: set.len(),
                    r: self.r,
                });
            }
            if let Some(&first) = seen.get(&v) {
                return Err(DocumentError::DuplicateSet { first, second: set_no });
            }
            seen.insert(v, set_no);
            members.push(v);
        }
        VertexFamily::new(params, members).map_err(|e| DocumentError::Parameters {
            n: self.n,
            r: self.r,
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    /// One set per line, elements separated by spaces.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for set in &self.sets {
            let row: Vec<String> = set.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("K({},{}): {} sets\n", self.n, self.r, self.sets.len());
        for set in &self.sets {
            let row: Vec<String> = set.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "({})", row.join(", "));
        }
        if let Some(meta) = &self.meta {
            for (k, v) in meta {
                let _ = writeln!(out, "# {k}: {v}");
            }
        }
        out
    }
}
