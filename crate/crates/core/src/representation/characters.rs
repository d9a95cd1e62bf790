//! Character tables of small symmetric groups and validation of
//! user-supplied character data.

use crate::error::{Error, Result};
use crate::perm_group::GroupTable;

/// One irreducible character: label, degree `d_s`, and values per conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTableEntry {
    pub label: String,
    pub degree: usize,
    pub values: Vec<f64>,
}

/// Real character data for a group, with classes in the canonical order of
/// [`GroupTable::conjugacy_classes`].
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    entries: Vec<CharacterTableEntry>,
}

// Cycle type (descending, with fixed points) → character values.
type Row = (&'static str, &'static [(&'static [usize], f64)]);

const S2: &[Row] = &[
    ("trivial", &[(&[1, 1], 1.0), (&[2], 1.0)]),
    ("sign", &[(&[1, 1], 1.0), (&[2], -1.0)]),
];

const S3: &[Row] = &[
    ("trivial", &[(&[1, 1, 1], 1.0), (&[2, 1], 1.0), (&[3], 1.0)]),
    ("sign", &[(&[1, 1, 1], 1.0), (&[2, 1], -1.0), (&[3], 1.0)]),
    (
        "standard",
        &[(&[1, 1, 1], 2.0), (&[2, 1], 0.0), (&[3], -1.0)],
    ),
];

const S4: &[Row] = &[
    (
        "trivial",
        &[
            (&[1, 1, 1, 1], 1.0),
            (&[2, 1, 1], 1.0),
            (&[2, 2], 1.0),
            (&[3, 1], 1.0),
            (&[4], 1.0),
        ],
    ),
    (
        "sign",
        &[
            (&[1, 1, 1, 1], 1.0),
            (&[2, 1, 1], -1.0),
            (&[2, 2], 1.0),
            (&[3, 1], 1.0),
            (&[4], -1.0),
        ],
    ),
    (
        "two-dimensional",
        &[
            (&[1, 1, 1, 1], 2.0),
            (&[2, 1, 1], 0.0),
            (&[2, 2], 2.0),
            (&[3, 1], -1.0),
            (&[4], 0.0),
        ],
    ),
    (
        "standard",
        &[
            (&[1, 1, 1, 1], 3.0),
            (&[2, 1, 1], 1.0),
            (&[2, 2], -1.0),
            (&[3, 1], 0.0),
            (&[4], -1.0),
        ],
    ),
    (
        "standard⊗sign",
        &[
            (&[1, 1, 1, 1], 3.0),
            (&[2, 1, 1], -1.0),
            (&[2, 2], -1.0),
            (&[3, 1], 0.0),
            (&[4], 1.0),
        ],
    ),
];

impl CharacterTable {
    /// Built-in table for `S_2`, `S_3` or `S_4`; `None` for other groups.
    pub fn builtin(group: &GroupTable) -> Option<Result<Self>> {
        if !group.is_symmetric() {
            return None;
        }
        let rows = match group.degree() {
            2 => S2,
            3 => S3,
            4 => S4,
            _ => return None,
        };
        let classes = group.conjugacy_classes();
        let entries = rows
            .iter()
            .map(|(label, values)| {
                let by_class = classes
                    .iter()
                    .map(|class| {
                        let cycle_type = group.element(class[0]).cycle_type();
                        values
                            .iter()
                            .find(|(t, _)| *t == cycle_type.as_slice())
                            .map(|(_, v)| *v)
                            .unwrap_or(f64::NAN)
                    })
                    .collect::<Vec<_>>();
                CharacterTableEntry {
                    label: (*label).to_string(),
                    degree: by_class[0] as usize,
                    values: by_class,
                }
            })
            .collect();
        Some(Self::new(group, entries))
    }

    /// Validates degrees and row orthogonality against `group`.
    pub fn new(group: &GroupTable, entries: Vec<CharacterTableEntry>) -> Result<Self> {
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0; group.order()];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                class_of[x] = c;
            }
        }
        let table = Self {
            classes,
            class_of,
            entries,
        };
        table.validate(group.order())?;
        Ok(table)
    }

    fn validate(&self, order: usize) -> Result<()> {
        const TOL: f64 = 1e-9;
        for e in &self.entries {
            if e.values.len() != self.classes.len() {
                return Err(Error::Character(format!(
                    "{} has {} values for {} classes",
                    e.label,
                    e.values.len(),
                    self.classes.len()
                )));
            }
            if e.values.iter().any(|v| !v.is_finite()) {
                return Err(Error::Character(format!(
                    "{} has non-finite values",
                    e.label
                )));
            }
            if (e.values[0] - e.degree as f64).abs() > TOL {
                return Err(Error::Character(format!(
                    "{}: degree {} but value at identity {}",
                    e.label, e.degree, e.values[0]
                )));
            }
        }
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in self.entries.iter().enumerate().skip(i) {
                let ip = self.inner_product(&a.values, &b.values, order);
                let expected = if i == j { 1.0 } else { 0.0 };
                if (ip - expected).abs() > TOL {
                    return Err(Error::Character(format!(
                        "⟨{}, {}⟩ = {ip}, expected {expected}",
                        a.label, b.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Class-weighted inner product `(1/|G|) Σ_c |c| a(c) b(c)`.
    pub fn inner_product(&self, a: &[f64], b: &[f64], order: usize) -> f64 {
        self.classes
            .iter()
            .zip(a.iter().zip(b))
            .map(|(c, (x, y))| c.len() as f64 * x * y)
            .sum::<f64>()
            / order as f64
    }

    /// `Σ_s d_s² = |G|`: every irreducible character is present.
    pub fn is_complete(&self, order: usize) -> bool {
        self.entries
            .iter()
            .map(|e| e.degree * e.degree)
            .sum::<usize>()
            == order
    }

    pub fn entries(&self) -> &[CharacterTableEntry] {
        &self.entries
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Character value of `entry` at a group element.
    pub fn value(&self, entry: &CharacterTableEntry, element: usize) -> f64 {
        entry.values[self.class_of[element]]
    }

    /// Class function from per-element values (e.g. the character of a representation).
    pub fn class_values(&self, per_element: &[f64]) -> Vec<f64> {
        self.classes.iter().map(|c| per_element[c[0]]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_are_complete_and_orthonormal() {
        for n in 2..=4 {
            let g = GroupTable::symmetric(n).unwrap();
            let t = CharacterTable::builtin(&g).unwrap().unwrap();
            assert!(t.is_complete(g.order()), "S_{n}");
        }
        assert!(CharacterTable::builtin(&GroupTable::symmetric(5).unwrap()).is_none());
    }

    #[test]
    fn rejects_non_orthogonal_rows() {
        let g = GroupTable::symmetric(3).unwrap();
        let bogus = vec![
            CharacterTableEntry {
                label: "trivial".into(),
                degree: 1,
                values: vec![1.0, 1.0, 1.0],
            },
            CharacterTableEntry {
                label: "fake".into(),
                degree: 1,
                values: vec![1.0, 1.0, -1.0],
            },
        ];
        assert!(matches!(
            CharacterTable::new(&g, bogus),
            Err(Error::Character(_))
        ));
    }

    #[test]
    fn rejects_wrong_degree() {
        let g = GroupTable::symmetric(3).unwrap();
        let bogus = vec![CharacterTableEntry {
            label: "t".into(),
            degree: 2,
            values: vec![1.0, 1.0, 1.0],
        }];
        assert!(CharacterTable::new(&g, bogus).is_err());
    }
}
