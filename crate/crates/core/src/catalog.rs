//! Machine-readable transcription of the superalgebra/hyperbolic pairing
//! tables, plus the verifier and statistics engine that replays every
//! tabulated claim.
//!
//! Two catalogs ship with the crate: the symmetrizable pairs and the
//! non-symmetrizable ones. Each entry is rechecked from scratch: the
//! permutation witness, the almost affine classification of both sides,
//! the symmetrizability of the section, and wall-geometry identity for
//! symmetrizable pairs. Failures are recorded results, never aborts, so a
//! single transcription slip cannot mask another.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::{self, VerdictKind};
use crate::equivalence::{self, Permutation};
use crate::error::{Error, Result};
use crate::geometry;
use crate::matrix::{CartanMatrix, MatrixJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Sym,
    Nonsym,
}

/// One row of a pairing table.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub s_name: String,
    pub s: CartanMatrix,
    pub h_name: String,
    pub h: CartanMatrix,
    /// Witness permutation; absent means identity, matching the tables'
    /// empty cells.
    pub perm: Option<Permutation>,
    pub section: Section,
    /// The table's marker for hyperbolic matrices with several
    /// superizations.
    pub multi_flag: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CatalogJson {
    section: Section,
    entries: Vec<CatalogEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CatalogEntryJson {
    s_name: String,
    s: MatrixJson,
    h_name: String,
    h: MatrixJson,
    perm: Option<Vec<usize>>,
    multi: bool,
}

/// Parses and validates a catalog document: every matrix passes
/// validation and every permutation is a bijection of the right size.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let doc: CatalogJson =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    let mut out = Vec::with_capacity(doc.entries.len());
    for raw in doc.entries {
        let s = raw.s.to_matrix().map_err(|e| Error::ValidationError {
            entry: raw.s_name.clone(),
            reason: format!("S matrix: {e}"),
        })?;
        let h = raw.h.to_matrix().map_err(|e| Error::ValidationError {
            entry: raw.s_name.clone(),
            reason: format!("H matrix: {e}"),
        })?;
        let perm = match &raw.perm {
            None => None,
            Some(image) => {
                let p = Permutation::from_one_based(image).map_err(|e| Error::ValidationError {
                    entry: raw.s_name.clone(),
                    reason: format!("permutation: {e}"),
                })?;
                if p.len() != s.rank() {
                    return Err(Error::ValidationError {
                        entry: raw.s_name.clone(),
                        reason: format!(
                            "permutation has length {}, matrix rank is {}",
                            p.len(),
                            s.rank()
                        ),
                    });
                }
                Some(p)
            }
        };
        out.push(CatalogEntry {
            s_name: raw.s_name,
            s,
            h_name: raw.h_name,
            h,
            perm,
            section: doc.section,
            multi_flag: raw.multi,
        });
    }
    Ok(out)
}

pub fn parse_catalog_file(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

const BUNDLED_SYM: &str = include_str!("../data/catalog_sym.json");
const BUNDLED_NONSYM: &str = include_str!("../data/catalog_nonsym.json");

/// Loads a bundled catalog. The environment variable `CARTAN_CATALOG_DIR`
/// overrides the location; the directory must contain `catalog_sym.json`
/// and `catalog_nonsym.json`.
pub fn load_bundled(section: Section) -> Result<Vec<CatalogEntry>> {
    if let Ok(dir) = std::env::var("CARTAN_CATALOG_DIR") {
        let name = match section {
            Section::Sym => "catalog_sym.json",
            Section::Nonsym => "catalog_nonsym.json",
        };
        return parse_catalog_file(&Path::new(&dir).join(name));
    }
    parse_catalog(match section {
        Section::Sym => BUNDLED_SYM,
        Section::Nonsym => BUNDLED_NONSYM,
    })
}

/// Per-check verification record of one entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryReport {
    pub s_name: String,
    pub h_name: String,
    /// `H` permuted by the listed witness equals the desuperization of `S`.
    pub pair_ok: bool,
    /// The pair fails as listed but verifies under the inverse witness;
    /// flags a row where only the opposite direction convention works.
    pub reversed_convention: bool,
    pub s_almost_affine: bool,
    pub h_almost_affine: bool,
    /// Both matrices are symmetrizable in the sym section, neither in the
    /// nonsym section.
    pub symmetrizability_ok: bool,
    /// Wall-geometry identity; checked for symmetrizable entries only.
    pub billiard_ok: Option<bool>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.pair_ok
            && self.s_almost_affine
            && self.h_almost_affine
            && self.symmetrizability_ok
            && self.billiard_ok.unwrap_or(true)
    }
}

/// Runs every check on one entry and records the outcomes.
pub fn verify_entry(e: &CatalogEntry) -> EntryReport {
    let pair_ok = crate::supermap::verify_pair(&e.s, &e.h, e.perm.as_ref()).unwrap_or(false);
    let reversed_convention = if pair_ok {
        false
    } else {
        match &e.perm {
            Some(p) => {
                crate::supermap::verify_pair(&e.s, &e.h, Some(&p.inverse())).unwrap_or(false)
            }
            None => false,
        }
    };
    let s_almost_affine = classify::classify_super(&e.s)
        .map(|v| v.kind == VerdictKind::AlmostAffine)
        .unwrap_or(false);
    let h_almost_affine = classify::type_of(&e.h)
        .map(|v| v.kind == VerdictKind::AlmostAffine)
        .unwrap_or(false);
    let s_sym = e.s.is_symmetrizable();
    let h_sym = e.h.is_symmetrizable();
    let symmetrizability_ok = match e.section {
        Section::Sym => s_sym && h_sym,
        Section::Nonsym => !s_sym && !h_sym,
    };
    let billiard_ok = if e.section == Section::Sym && s_sym && h_sym {
        let identity;
        let sigma = match &e.perm {
            Some(p) => p,
            None => {
                identity = Permutation::identity(e.s.rank());
                &identity
            }
        };
        Some(geometry::billiard_compare(&e.s, &e.h, sigma).unwrap_or(false))
    } else {
        None
    };
    EntryReport {
        s_name: e.s_name.clone(),
        h_name: e.h_name.clone(),
        pair_ok,
        reversed_convention,
        s_almost_affine,
        h_almost_affine,
        symmetrizability_ok,
        billiard_ok,
    }
}

/// Catalog-level statistics over the pairing map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogStats {
    pub entry_count: usize,
    pub distinct_h_count: usize,
    pub multi_h_count: usize,
    /// Superization count per hyperbolic class, keyed by the class's
    /// tabulated name.
    pub multiplicity_map: BTreeMap<String, usize>,
    /// Entries whose multi marker disagrees with the computed
    /// multiplicity of their class.
    pub multi_flag_mismatches: Vec<String>,
}

/// Groups entries by the canonical form of the hyperbolic side and counts
/// multiplicities, cross-checking the multi markers.
pub fn stats(entries: &[CatalogEntry]) -> CatalogStats {
    let mut groups: BTreeMap<equivalence::CanonicalKey, (String, Vec<usize>)> = BTreeMap::new();
    for (idx, e) in entries.iter().enumerate() {
        let (canon, _) = equivalence::canonical_form(&e.h);
        let key = equivalence::canonical_sort_key(&canon);
        groups
            .entry(key)
            .or_insert_with(|| (e.h_name.clone(), Vec::new()))
            .1
            .push(idx);
    }
    let mut multiplicity_map = BTreeMap::new();
    let mut multi_h_count = 0;
    let mut multi_flag_mismatches = Vec::new();
    for (name, members) in groups.values() {
        multiplicity_map.insert(name.clone(), members.len());
        if members.len() >= 2 {
            multi_h_count += 1;
        }
        for &idx in members {
            let e = &entries[idx];
            if e.multi_flag != (members.len() >= 2) {
                multi_flag_mismatches.push(e.s_name.clone());
            }
        }
    }
    CatalogStats {
        entry_count: entries.len(),
        distinct_h_count: groups.len(),
        multi_h_count,
        multiplicity_map,
        multi_flag_mismatches,
    }
}
