//! JSON representation files.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "n": 3,
//!   "dim": 2,
//!   "matrices": [[1.0, 0.0, 0.0, 1.0], ...],
//!   "characters": [{"label": "trivial", "degree": 1, "values": [1, 1, 1]}]
//! }
//! ```
//!
//! Either `n` (the full symmetric group, matrices in canonical element
//! order) or `elements` (0-based one-line images, matrices in the listed
//! order) identifies the group. Matrices are row-major. Character values
//! are given per conjugacy class in canonical class order; exports list the
//! class representatives in `classes` for reference.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CharacterTable, CharacterTableEntry, Representation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::perm_group::{GroupTable, Permutation};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterEntryFile {
    pub label: String,
    pub degree: usize,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationFile {
    #[serde(default = "schema_v1")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<usize>>>,
    pub dim: usize,
    pub matrices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<CharacterEntryFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<String>>,
    /// Row-major `n × dim` orthonormal basis of the carrier subspace, when the
    /// representation comes from a permutation action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_basis: Option<Vec<Vec<f64>>>,
}

fn schema_v1() -> u32 {
    1
}

impl<T: Real> Representation<T> {
    pub fn load(path: impl AsRef<Path>, tolerance: T) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, tolerance)
    }

    pub fn from_json(text: &str, tolerance: T) -> Result<Self> {
        let file: RepresentationFile = serde_json::from_str(text)?;
        Self::from_file_data(&file, tolerance)
    }

    pub fn from_file_data(file: &RepresentationFile, tolerance: T) -> Result<Self> {
        let (group, order_in_file) = match (&file.n, &file.elements) {
            (Some(n), None) => {
                let g = GroupTable::symmetric(*n)?;
                let order: Vec<usize> = (0..g.order()).collect();
                (g, order)
            }
            (_, Some(elements)) => {
                let perms = elements
                    .iter()
                    .map(|e| Permutation::new(e.clone()))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(n) = file.n {
                    if perms.iter().any(|p| p.degree() != n) {
                        return Err(Error::Dimension(format!(
                            "elements do not act on {n} points"
                        )));
                    }
                }
                let g = GroupTable::from_elements(perms.clone())?;
                if g.order() != perms.len() {
                    return Err(Error::NotGroup(
                        "duplicate elements in the element list".into(),
                    ));
                }
                let order = perms
                    .iter()
                    .map(|p| g.index_of(p))
                    .collect::<Result<Vec<_>>>()?;
                (g, order)
            }
            (None, None) => {
                return Err(Error::Config(
                    "representation file needs `n` or `elements`".into(),
                ))
            }
        };
        if file.matrices.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} matrices for a group of order {}",
                file.matrices.len(),
                group.order()
            )));
        }
        let mut matrices = vec![Matrix::zeros(0, 0); group.order()];
        for (slot, flat) in order_in_file.iter().zip(&file.matrices) {
            let data = flat.iter().map(|&x| T::lit(x)).collect();
            matrices[*slot] = Matrix::from_row_major(file.dim, file.dim, data)?;
        }
        let group = Arc::new(group);
        let mut rep = Representation::new(Arc::clone(&group), matrices, tolerance)?;
        if let Some(chars) = &file.characters {
            let entries = chars
                .iter()
                .map(|c| CharacterTableEntry {
                    label: c.label.clone(),
                    degree: c.degree,
                    values: c.values.clone(),
                })
                .collect();
            rep = rep.with_character_table(CharacterTable::new(&group, entries)?);
        } else {
            rep.attach_builtin_characters()?;
        }
        if let Some(basis) = &file.ambient_basis {
            let rows = basis.len();
            let data: Vec<T> = basis.iter().flatten().map(|&x| T::lit(x)).collect();
            rep = rep.with_ambient_basis(Matrix::from_row_major(rows, file.dim, data)?)?;
        }
        Ok(rep)
    }

    /// Full-precision export in canonical element order.
    pub fn to_file_data(&self) -> RepresentationFile {
        let group = self.group();
        let (n, elements) = if group.is_symmetric() {
            (Some(group.degree()), None)
        } else {
            (
                None,
                Some(
                    group
                        .elements()
                        .iter()
                        .map(|p| p.images().to_vec())
                        .collect(),
                ),
            )
        };
        let table = self.character_table();
        RepresentationFile {
            schema_version: 1,
            n,
            elements,
            dim: self.dim(),
            matrices: self
                .matrices()
                .iter()
                .map(|m| m.as_slice().iter().map(|x| x.as_f64()).collect())
                .collect(),
            characters: table.map(|t| {
                t.entries()
                    .iter()
                    .map(|e| CharacterEntryFile {
                        label: e.label.clone(),
                        degree: e.degree,
                        values: e.values.clone(),
                    })
                    .collect()
            }),
            classes: table.map(|t| {
                t.classes()
                    .iter()
                    .map(|c| group.element(c[0]).to_string())
                    .collect()
            }),
            ambient_basis: self.ambient_basis().map(Matrix::to_f64_rows),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file_data())?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_round_trip_is_identical() {
        let d = Representation::<f64>::standard(3).unwrap();
        let back = Representation::<f64>::from_json(&d.to_json().unwrap(), 1e-9).unwrap();
        assert_eq!(back.matrices(), d.matrices());
        assert_eq!(back.character_table(), d.character_table());
        assert_eq!(back.ambient_basis(), d.ambient_basis());
    }

    #[test]
    fn sign_representation_from_file() {
        let json = r#"{"n": 3, "dim": 1, "matrices": [[1], [-1], [-1], [1], [1], [-1]]}"#;
        let s = Representation::<f64>::from_json(json, 1e-9).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.character_table().is_some());
    }

    #[test]
    fn identity_must_map_to_identity() {
        let json = r#"{"n": 2, "dim": 1, "matrices": [[-1], [-1]]}"#;
        assert!(matches!(
            Representation::<f64>::from_json(json, 1e-9),
            Err(Error::NotHomomorphism { .. })
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let json = r#"{"n": 2, "dim": 2, "matrices": [[1, 0, 0, 1], [1]]}"#;
        assert!(matches!(
            Representation::<f64>::from_json(json, 1e-9),
            Err(Error::Dimension(_))
        ));
        let json = r#"{"n": 3, "dim": 1, "matrices": [[1], [1]]}"#;
        assert!(matches!(
            Representation::<f64>::from_json(json, 1e-9),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn explicit_elements_in_any_order() {
        // cyclic group of order 3 acting on 3 points, listed out of canonical order
        let c = (2.0 * std::f64::consts::PI / 3.0).cos();
        let s = (2.0 * std::f64::consts::PI / 3.0).sin();
        let json = format!(
            r#"{{"elements": [[1, 2, 0], [0, 1, 2], [2, 0, 1]], "dim": 2,
                "matrices": [[{c}, {ms}, {s}, {c}], [1, 0, 0, 1], [{c}, {s}, {ms}, {c}]]}}"#,
            ms = -s
        );
        let d = Representation::<f64>::from_json(&json, 1e-9).unwrap();
        assert_eq!(d.group().order(), 3);
        assert!(d.matrix(0).max_abs_diff(&Matrix::identity(2)) < 1e-12);
        assert!(d.character_table().is_none());
    }
}
