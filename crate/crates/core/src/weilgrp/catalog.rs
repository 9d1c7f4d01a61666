//! Embedded generator catalog.
//!
//! The catalog is a JSON array of entries
//! `{"name", "kind": "sp"|"gu"|"su", "n", "q", "p", "f", "generators"}`, where
//! each generator is a list of rows and each entry is the coefficient vector
//! (constant term first) of an element of `make_field(p, f)`. For `sp` the
//! matrices are `2n × 2n` in a Witt basis; for `gu`/`su` they are `n × n` over
//! GF(q²) and unitary for the identity hermitian form. Setting
//! `WEILSUM_CATALOG` to a path replaces the embedded file.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{make_field, FieldSpec};

use super::group::MatGroup;
use super::matrix::{FFMat, Form};
use super::order_formula;

const EMBEDDED: &str = include_str!("../../data/catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Sp,
    Gu,
    Su,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: GroupKind,
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub generators: Vec<Vec<Vec<Vec<u64>>>>,
}

/// Loads the catalog from `WEILSUM_CATALOG` if set, else the embedded copy.
pub fn load_catalog() -> Result<Vec<CatalogEntry>> {
    let text = match std::env::var("WEILSUM_CATALOG") {
        Ok(path) => std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{path}: {e}")))?,
        Err(_) => EMBEDDED.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::Catalog(e.to_string()))
}

pub fn find_entry(kind: GroupKind, n: u32, q: u64) -> Result<CatalogEntry> {
    load_catalog()?
        .into_iter()
        .find(|e| e.kind == kind && e.n == n && e.q == q)
        .ok_or_else(|| Error::Catalog(format!("no {kind:?} entry with n={n}, q={q}")))
}

impl CatalogEntry {
    pub fn field(&self) -> Result<FieldSpec> {
        make_field(self.p, self.f)
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            GroupKind::Sp => 2 * self.n as usize,
            _ => self.n as usize,
        }
    }

    pub fn form(&self) -> Form {
        match self.kind {
            GroupKind::Sp => Form::Symplectic,
            _ => Form::Hermitian,
        }
    }

    pub fn expected_order(&self) -> u128 {
        order_formula(self.kind, self.n, self.q)
    }

    pub fn generators(&self) -> Result<Vec<FFMat>> {
        let field = self.field()?;
        let d = self.dim();
        self.generators
            .iter()
            .map(|rows| {
                if rows.len() != d {
                    return Err(Error::Catalog(format!("{}: generator with {} rows", self.name, rows.len())));
                }
                let elems = rows
                    .iter()
                    .map(|r| r.iter().map(|c| field.from_coeffs(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                FFMat::from_rows(&elems)
            })
            .collect()
    }

    /// Checks every generator against the form (and det = 1 for SU), closes the
    /// group, and compares its order with the order formula.
    pub fn build(&self) -> Result<MatGroup> {
        let gens = self.generators()?;
        for (i, g) in gens.iter().enumerate() {
            if !g.form_check(self.form())? {
                return Err(Error::Catalog(format!("{}: generator {i} does not preserve the form", self.name)));
            }
            if self.kind == GroupKind::Su && g.det().code() != 1 {
                return Err(Error::Catalog(format!("{}: generator {i} has determinant ≠ 1", self.name)));
            }
        }
        let want = self.expected_order();
        let group = MatGroup::closure(&gens, want as usize)?;
        if group.order() as u128 != want {
            return Err(Error::Catalog(format!("{}: closure order {} ≠ {want}", self.name, group.order())));
        }
        Ok(group)
    }
}
