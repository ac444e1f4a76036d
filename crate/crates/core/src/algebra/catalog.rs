//! Dimension-5 local algebras, one representative per Hilbert–Samuel type.
//!
//! Classes 9, 16 and 17 are the algebras with explicit presentations.
//! Entries 10, 11 and 14 are stand-ins for their Hilbert–Samuel types
//! (1,2,1,1), (1,2,2) and (1,3,1); they are checked by type only and are
//! not claimed to be the specific isomorphism class with that number.

use std::collections::BTreeMap;

use super::{AlgebraData, Presentation};
use crate::error::AlgebraError;
use crate::field::Field;

pub const CATALOG_IDS: [u32; 6] = [9, 10, 11, 14, 16, 17];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub class_id: u32,
    pub presentation: Presentation,
    pub algebra: AlgebraData,
    pub hilbert_samuel: Vec<usize>,
    /// Whether the entry is the named class itself or only a representative
    /// of its Hilbert–Samuel type.
    pub type_representative: bool,
}

/// Generators, basis, rules, type, and whether the entry is a stand-in.
type Raw = (
    &'static [&'static str],
    &'static [&'static str],
    Vec<(&'static str, &'static str)>,
    Vec<usize>,
    bool,
);

fn raw(class_id: u32) -> Option<Raw> {
    Some(match class_id {
        9 => (
            &["x"],
            &["1", "x", "x^2", "x^3", "x^4"],
            vec![("x^5", "0")],
            vec![1, 1, 1, 1, 1],
            false,
        ),
        10 => (
            &["x", "y"],
            &["1", "x", "y", "x^2", "x^3"],
            vec![("x*y", "0"), ("y^2", "0"), ("x^4", "0")],
            vec![1, 2, 1, 1],
            true,
        ),
        11 => (
            &["x", "y"],
            &["1", "x", "y", "x^2", "y^2"],
            vec![("x*y", "0"), ("x^3", "0"), ("y^3", "0")],
            vec![1, 2, 2],
            true,
        ),
        14 => (
            &["x", "y", "z"],
            &["1", "x", "y", "z", "x^2"],
            vec![
                ("x*y", "0"),
                ("x*z", "0"),
                ("y*z", "x^2"),
                ("y^2", "0"),
                ("z^2", "0"),
                ("x^3", "0"),
            ],
            vec![1, 3, 1],
            true,
        ),
        16 => (
            &["x", "y", "z"],
            &["1", "x", "y", "z", "x^2"],
            vec![
                ("x^3", "0"),
                ("y^2", "0"),
                ("z^2", "0"),
                ("x*y", "0"),
                ("x*z", "0"),
                ("y*z", "0"),
            ],
            vec![1, 3, 1],
            false,
        ),
        17 => (
            &["x", "y", "z", "w"],
            &["1", "x", "y", "z", "w"],
            vec![
                ("x^2", "0"),
                ("y^2", "0"),
                ("z^2", "0"),
                ("w^2", "0"),
                ("x*y", "0"),
                ("x*z", "0"),
                ("x*w", "0"),
                ("y*z", "0"),
                ("y*w", "0"),
                ("z*w", "0"),
            ],
            vec![1, 4],
            false,
        ),
        _ => return None,
    })
}

/// One catalog entry, validated: local, dimension 5 and of the expected
/// Hilbert–Samuel type.
pub fn catalog_entry(class_id: u32, field: Field) -> Result<CatalogEntry, AlgebraError> {
    let (gens, basis, rules, hs, stand_in) =
        raw(class_id).ok_or_else(|| AlgebraError::MalformedPresentation(format!("no catalog class {class_id}")))?;
    let presentation = Presentation::new(gens, basis, &rules)?;
    let algebra = presentation.to_algebra(field)?;
    let computed = algebra.hilbert_samuel()?;
    if algebra.dim() != 5 || computed != hs {
        return Err(AlgebraError::InconsistentPresentation(format!(
            "class {class_id}: expected type {hs:?}, computed {computed:?}"
        )));
    }
    Ok(CatalogEntry {
        class_id,
        presentation,
        algebra,
        hilbert_samuel: computed,
        type_representative: stand_in,
    })
}

pub fn catalog(field: Field) -> BTreeMap<u32, CatalogEntry> {
    CATALOG_IDS
        .iter()
        .map(|&id| (id, catalog_entry(id, field).expect("catalog presentations are valid")))
        .collect()
}
