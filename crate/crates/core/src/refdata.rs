//! Stored socle labels for exceptional groups and the two printed
//! decomposition matrices of `²F₄(q²)`, with the selection rules for `μ₀`
//! and `λ₀`.
//!
//! The data files are embedded at compile time and checked against fixed
//! SHA-256 digests before use.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const TABLE1: &str = include_str!("../data/table1.json");
const F4_2_E2: &str = include_str!("../data/f4_2_e2.json");
const F4_2_E4: &str = include_str!("../data/f4_2_e4.json");

/// `(file name, contents, expected SHA-256)`.
const FILES: [(&str, &str, &str); 3] = [
    ("table1.json", TABLE1, "a2072d3ad283d53c70d1fbfdf14d85fcdb20281df562097b5515dc08f5178a45"),
    ("f4_2_e2.json", F4_2_E2, "2b0bc5b41fa0fd55abc4eae68f0166497e85dc63ef757b4049e9d4cdc54ea0e9"),
    ("f4_2_e4.json", F4_2_E4, "6aa66e1a30eba7f2dfba7629511997a8aecf38759b6a520d8bc437805fdaa3ec"),
];

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RefError {
    #[error("checksum mismatch for {0}")]
    Checksum(&'static str),
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error("unknown group type {0}")]
    UnknownType(String),
    #[error("no row has a nonzero entry in the ε column")]
    NoEpsilonHit,
    #[error("maximal a-invariant {0} is attained by more than one row")]
    NonUniqueMaximum(u32),
    #[error("no stored decomposition matrix for e = {0}")]
    NoTable(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub a: u32,
    #[serde(default)]
    pub bullet: bool,
}

/// Decomposition numbers `d_{λ,M}` with rows sorted by `a`-invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTable {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub e: u64,
    pub rows: Vec<TableRow>,
    pub eps_col: usize,
    pub entries: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mu0 {
    pub label: String,
    /// Another row with the same `a`-invariant also meets the ε column.
    pub tie: bool,
}

impl DecompositionTable {
    pub fn columns(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn validate(&self) -> Result<(), RefError> {
        let bad = |m: &str| Err(RefError::Malformed(format!("{}: {m}", self.name)));
        if self.rows.len() != self.entries.len() || self.rows.is_empty() {
            return bad("row count");
        }
        let cols = self.columns();
        if self.entries.iter().any(|r| r.len() != cols) || self.eps_col >= cols {
            return bad("column count");
        }
        if self.rows.windows(2).any(|w| w[0].a > w[1].a) {
            return bad("rows not sorted by a-invariant");
        }
        if (0..cols).any(|c| self.entries.iter().all(|r| r[c] == 0)) {
            return bad("empty column");
        }
        Ok(())
    }

    /// First row in stored order with a nonzero entry in column `col`.
    pub fn first_hit(&self, col: usize) -> Option<usize> {
        self.entries.iter().position(|r| r[col] != 0)
    }
}

pub fn select_mu0(t: &DecompositionTable) -> Result<Mu0, RefError> {
    let i = t.first_hit(t.eps_col).ok_or(RefError::NoEpsilonHit)?;
    let a = t.rows[i].a;
    let tie = (i + 1..t.rows.len()).any(|j| t.rows[j].a == a && t.entries[j][t.eps_col] != 0);
    Ok(Mu0 { label: t.rows[i].label.clone(), tie })
}

/// The row with the largest `a`-invariant, which must be unique.
pub fn select_lambda0(t: &DecompositionTable) -> Result<TableRow, RefError> {
    let max = t.rows.iter().map(|r| r.a).max().ok_or(RefError::Malformed("empty table".into()))?;
    let mut hits = t.rows.iter().filter(|r| r.a == max);
    let first = hits.next().unwrap().clone();
    if hits.next().is_some() {
        return Err(RefError::NonUniqueMaximum(max));
    }
    Ok(first)
}

#[derive(Debug, Clone, Deserialize)]
struct Table1Row {
    #[serde(rename = "type")]
    type_tag: String,
    cells: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
struct Table1File {
    e_columns: Vec<u64>,
    rows: Vec<Table1Row>,
}

/// Socle labels keyed by `(group type, e)`.
#[derive(Debug, Clone)]
pub struct SocleLabelTable {
    pub e_columns: Vec<u64>,
    pub types: Vec<String>,
    cells: BTreeMap<(String, u64), String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SocleLabel {
    Label(String),
    #[serde(serialize_with = "irreducible")]
    Irreducible,
}

fn irreducible<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("irreducible")
}

impl SocleLabel {
    pub fn as_str(&self) -> &str {
        match self {
            SocleLabel::Label(s) => s,
            SocleLabel::Irreducible => "irreducible",
        }
    }
}

impl SocleLabelTable {
    pub fn lookup(&self, type_tag: &str, e: u64) -> Result<SocleLabel, RefError> {
        if !self.types.iter().any(|t| t == type_tag) {
            return Err(RefError::UnknownType(type_tag.to_string()));
        }
        Ok(match self.cells.get(&(type_tag.to_string(), e)) {
            Some(l) => SocleLabel::Label(l.clone()),
            None => SocleLabel::Irreducible,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn row(&self, type_tag: &str) -> Vec<(u64, String)> {
        self.cells.iter().filter(|((t, _), _)| t == type_tag).map(|((_, e), l)| (*e, l.clone())).collect()
    }
}

/// Hex SHA-256 digest of an embedded file.
pub fn digest(contents: &str) -> String {
    Sha256::digest(contents.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn verify_checksums() -> Result<(), RefError> {
    for (name, contents, expected) in FILES {
        if digest(contents) != expected {
            return Err(RefError::Checksum(name));
        }
    }
    Ok(())
}

struct Store {
    socle: SocleLabelTable,
    f4: Vec<DecompositionTable>,
}

fn load() -> Result<Store, RefError> {
    verify_checksums()?;
    let parsed: Table1File = serde_json::from_str(TABLE1).map_err(|e| RefError::Malformed(e.to_string()))?;
    let mut cells = BTreeMap::new();
    for row in &parsed.rows {
        for (e, label) in &row.cells {
            let e: u64 = e.parse().map_err(|_| RefError::Malformed(format!("column {e}")))?;
            if !parsed.e_columns.contains(&e) {
                return Err(RefError::Malformed(format!("column {e} not in header")));
            }
            cells.insert((row.type_tag.clone(), e), label.clone());
        }
    }
    let socle = SocleLabelTable {
        e_columns: parsed.e_columns,
        types: parsed.rows.iter().map(|r| r.type_tag.clone()).collect(),
        cells,
    };
    let mut f4 = Vec::new();
    for text in [F4_2_E2, F4_2_E4] {
        let t: DecompositionTable = serde_json::from_str(text).map_err(|e| RefError::Malformed(e.to_string()))?;
        t.validate()?;
        f4.push(t);
    }
    Ok(Store { socle, f4 })
}

fn store() -> Result<&'static Store, RefError> {
    static STORE: OnceLock<Result<Store, RefError>> = OnceLock::new();
    STORE.get_or_init(load).as_ref().map_err(Clone::clone)
}

pub fn socle_table() -> Result<&'static SocleLabelTable, RefError> {
    Ok(&store()?.socle)
}

pub fn lookup_socle_label(type_tag: &str, e: u64) -> Result<SocleLabel, RefError> {
    socle_table()?.lookup(type_tag, e)
}

/// The printed decomposition matrix of `²F₄(q²)` for `e ∈ {2, 4}`.
pub fn table_2f4(e: u64) -> Result<&'static DecompositionTable, RefError> {
    store()?.f4.iter().find(|t| t.e == e).ok_or(RefError::NoTable(e))
}
