//! File-backed inputs: root-datum configs and multiplicity tables.

use std::path::Path;

use serde::Deserialize;

use dlhecke_core::dlchar::NMatrix;
use dlhecke_core::{Error, RootDatum, WeylGroup};

use crate::words::parse_word;

#[derive(Deserialize)]
struct DatumFile {
    label: String,
    rank: usize,
    /// r×n matrix: column j is the j-th simple coroot.
    coroots: Vec<Vec<i64>>,
    /// n×r matrix: row i is the i-th simple root as a functional on X_*.
    roots: Vec<Vec<i64>>,
    /// Optional; cross-checked against the pairing roots·coroots.
    #[serde(default)]
    cartan: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    tau_perm: Option<Vec<usize>>,
    #[serde(default)]
    tau_matrix: Option<Vec<Vec<i64>>>,
}

pub fn load_datum(path: &Path) -> Result<RootDatum, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidDatum(format!("cannot read {}: {e}", path.display())))?;
    let file: DatumFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidDatum(format!("bad datum file: {e}")))?;
    let n = file.roots.len();
    let tau_perm = file.tau_perm.unwrap_or_else(|| (0..n).collect());
    let tau_matrix = file.tau_matrix.unwrap_or_else(|| {
        (0..file.rank)
            .map(|i| (0..file.rank).map(|j| i64::from(i == j)).collect())
            .collect()
    });
    let datum = RootDatum::new(
        file.label,
        file.rank,
        file.coroots,
        file.roots,
        tau_perm,
        tau_matrix,
    )?;
    if let Some(cartan) = file.cartan {
        if cartan != datum.cartan_matrix() {
            return Err(Error::InvalidDatum(
                "declared Cartan matrix disagrees with the pairing of roots and coroots".into(),
            ));
        }
    }
    Ok(datum)
}

#[derive(Deserialize)]
struct NMatrixFile {
    #[serde(default)]
    entries: Vec<NEntry>,
    #[serde(default)]
    chi_overrides: Vec<NOverride>,
}

#[derive(Deserialize)]
struct NEntry {
    v: String,
    w: String,
    n: u64,
}

#[derive(Deserialize)]
struct NOverride {
    v: String,
    w: String,
    chi: Vec<u64>,
    n: u64,
}

/// Parse and validate a multiplicity table; missing entries default to 0.
pub fn load_n_matrix(group: &WeylGroup, path: &Path) -> Result<NMatrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidNMatrix(format!("cannot read {}: {e}", path.display())))?;
    if text.trim().is_empty() {
        return Ok(NMatrix::empty());
    }
    let file: NMatrixFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidNMatrix(format!("bad multiplicity file: {e}")))?;
    let mut base = Vec::new();
    for e in file.entries {
        base.push((parse_word(group, &e.v)?, parse_word(group, &e.w)?, e.n));
    }
    let mut overrides = Vec::new();
    for e in file.chi_overrides {
        overrides.push((
            parse_word(group, &e.v)?,
            parse_word(group, &e.w)?,
            e.chi,
            e.n,
        ));
    }
    NMatrix::from_entries(group, base, overrides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn datum_round_trip() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(
            f,
            r#"{{"label":"GL2-file","rank":2,"coroots":[[1],[-1]],"roots":[[1,-1]]}}"#
        )
        .unwrap();
        let d = load_datum(f.path()).unwrap();
        assert_eq!(d.label(), "GL2-file");
        let g = dlhecke_core::WeylGroup::build(d, 100).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn n_matrix_examples() {
        let g = WeylGroup::build_preset("A2").unwrap();
        // empty file is the all-zero table
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "").unwrap();
        assert!(load_n_matrix(&g, f.path()).unwrap().is_empty());
        // a valid entry
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, r#"{{"entries":[{{"v":"1","w":"1-2-1","n":1}}]}}"#).unwrap();
        let n = load_n_matrix(&g, f.path()).unwrap();
        assert!(!n.is_empty());
        // Bruhat violation rejected: w0 ≮ s
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, r#"{{"entries":[{{"v":"1-2-1","w":"1","n":1}}]}}"#).unwrap();
        assert!(load_n_matrix(&g, f.path()).is_err());
        // negative entries are rejected by the schema
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, r#"{{"entries":[{{"v":"1","w":"1-2-1","n":-1}}]}}"#).unwrap();
        assert!(load_n_matrix(&g, f.path()).is_err());
    }
}
