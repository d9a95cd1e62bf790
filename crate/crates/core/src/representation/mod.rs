//! Real orthogonal representations of permutation groups.

mod characters;
mod io;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use characters::{CharacterTable, CharacterTableEntry};
pub use io::{CharacterEntryFile, RepresentationFile};

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::perm_group::GroupTable;
use crate::scalar::Real;

/// Groups up to this order get exhaustive homomorphism checks; larger ones are sampled.
const EXHAUSTIVE_PAIR_LIMIT: usize = 1000;
const SAMPLED_PAIRS: usize = 20_000;

/// A representation `g ↦ D(g)` of a permutation group by real orthogonal matrices.
#[derive(Clone, Debug)]
pub struct Representation<T> {
    group: Arc<GroupTable>,
    dim: usize,
    matrices: Vec<Matrix<T>>,
    character: Vec<T>,
    character_table: Option<CharacterTable>,
    ambient_basis: Option<Matrix<T>>,
}

impl<T: Real> Representation<T> {
    /// Validates orthogonality and the homomorphism property at `tolerance`.
    pub fn new(group: Arc<GroupTable>, matrices: Vec<Matrix<T>>, tolerance: T) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} matrices supplied for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].rows();
        if let Some((i, m)) = matrices
            .iter()
            .enumerate()
            .find(|(_, m)| m.rows() != dim || m.cols() != dim)
        {
            return Err(Error::Dimension(format!(
                "matrix for {} is {}x{}, expected {dim}x{dim}",
                group.element(i),
                m.rows(),
                m.cols()
            )));
        }
        let character = matrices.iter().map(Matrix::trace).collect();
        let rep = Self {
            group,
            dim,
            matrices,
            character,
            character_table: None,
            ambient_basis: None,
        };
        rep.validate(tolerance)?;
        Ok(rep)
    }

    /// The `(n-1)`-dimensional standard representation of `S_n` on the sum-zero subspace.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::GroupSize {
                n,
                min: 3,
                max: crate::perm_group::MAX_DEGREE,
            });
        }
        let group = Arc::new(GroupTable::symmetric(n)?);
        let basis = sum_zero_basis::<T>(n);
        let basis_t = basis.transpose();
        let matrices = group
            .elements()
            .iter()
            .map(|p| {
                let perm =
                    Matrix::from_fn(
                        n,
                        n,
                        |i, j| if p.apply(j) == i { T::one() } else { T::zero() },
                    );
                &(&basis_t * &perm) * &basis
            })
            .collect();
        let mut rep = Self::new(group, matrices, T::identity_tolerance())?;
        rep.ambient_basis = Some(basis);
        rep.attach_builtin_characters()?;
        Ok(rep)
    }

    /// The parity representation `g ↦ sign(g)` as 1×1 matrices.
    pub fn sign(group: Arc<GroupTable>) -> Result<Self> {
        let matrices = group
            .elements()
            .iter()
            .map(|p| Matrix::from_fn(1, 1, |_, _| T::lit(p.sign() as f64)))
            .collect();
        let mut rep = Self::new(group, matrices, T::identity_tolerance())?;
        rep.attach_builtin_characters()?;
        Ok(rep)
    }

    fn attach_builtin_characters(&mut self) -> Result<()> {
        if let Some(table) = CharacterTable::builtin(&self.group) {
            self.character_table = Some(table?);
        }
        Ok(())
    }

    pub fn with_character_table(mut self, table: CharacterTable) -> Self {
        self.character_table = Some(table);
        self
    }

    pub fn with_ambient_basis(mut self, basis: Matrix<T>) -> Result<Self> {
        if basis.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "ambient basis has {} columns for a {}-dimensional representation",
                basis.cols(),
                self.dim
            )));
        }
        self.ambient_basis = Some(basis);
        Ok(self)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, element: usize) -> &Matrix<T> {
        &self.matrices[element]
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.matrices
    }

    pub fn character(&self) -> &[T] {
        &self.character
    }

    pub fn character_table(&self) -> Option<&CharacterTable> {
        self.character_table.as_ref()
    }

    /// Orthonormal basis (as columns) of the subspace the representation acts on, if it
    /// was built from a permutation action.
    pub fn ambient_basis(&self) -> Option<&Matrix<T>> {
        self.ambient_basis.as_ref()
    }

    pub fn act(&self, element: usize, v: &[T]) -> Vec<T> {
        self.matrices[element].mul_vec(v)
    }

    pub fn validate(&self, tolerance: T) -> Result<()> {
        let identity = Matrix::identity(self.dim);
        let dev = self.matrices[0].max_abs_diff(&identity);
        if dev > tolerance {
            return Err(Error::NotHomomorphism {
                a: "()".into(),
                b: "()".into(),
                deviation: dev.as_f64(),
            });
        }
        let (worst, dev) = self.orthogonality_deviation();
        if dev > tolerance {
            return Err(Error::NotOrthogonal {
                element: self.group.element(worst).to_string(),
                deviation: dev.as_f64(),
            });
        }
        let (pair, dev) = self.homomorphism_deviation();
        if dev > tolerance {
            return Err(Error::NotHomomorphism {
                a: self.group.element(pair.0).to_string(),
                b: self.group.element(pair.1).to_string(),
                deviation: dev.as_f64(),
            });
        }
        Ok(())
    }

    /// Worst `‖D(g)ᵀD(g) − I‖_max` and the element attaining it.
    pub fn orthogonality_deviation(&self) -> (usize, T) {
        let identity = Matrix::identity(self.dim);
        self.matrices
            .iter()
            .enumerate()
            .map(|(i, d)| (i, (&d.transpose() * d).max_abs_diff(&identity)))
            .fold((0, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    /// Worst `‖D(a)D(b) − D(a∘b)‖_max`: exhaustive for small groups, over a fixed
    /// pseudorandom sample of pairs otherwise.
    pub fn homomorphism_deviation(&self) -> ((usize, usize), T) {
        let order = self.group.order();
        let check = |a: usize, b: usize| {
            let prod = &self.matrices[a] * &self.matrices[b];
            prod.max_abs_diff(&self.matrices[self.group.compose(a, b)])
        };
        let mut worst = ((0, 0), T::zero());
        let mut record = |a: usize, b: usize| {
            let d = check(a, b);
            if d > worst.1 {
                worst = ((a, b), d);
            }
        };
        if order <= EXHAUSTIVE_PAIR_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    record(a, b);
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_PAIRS {
                record(rng.random_range(0..order), rng.random_range(0..order));
            }
        }
        worst
    }

    /// `(1/|G|) Σ_g χ(g)²`, equal to 1 exactly for irreducible representations.
    pub fn character_norm(&self) -> T {
        self.character.iter().map(|&c| c * c).sum::<T>() / T::lit(self.group.order() as f64)
    }

    /// `D ⊗ D`, acting on `v ⊗ w` by `(D(g)v) ⊗ (D(g)w)`.
    pub fn tensor_square(&self) -> Self {
        let matrices = self.matrices.iter().map(|d| d.kron(d)).collect::<Vec<_>>();
        let character = self.character.iter().map(|&c| c * c).collect();
        Self {
            group: Arc::clone(&self.group),
            dim: self.dim * self.dim,
            matrices,
            character,
            character_table: self.character_table.clone(),
            ambient_basis: None,
        }
    }

    fn require_table(&self) -> Result<&CharacterTable> {
        self.character_table.as_ref().ok_or_else(|| {
            Error::Character("no character table attached to the representation".into())
        })
    }

    /// Multiplicity `⟨χ_D, χ_s⟩` of an irreducible constituent.
    pub fn multiplicity(&self, entry: &CharacterTableEntry) -> Result<usize> {
        let table = self.require_table()?;
        let order = self.group.order() as f64;
        let ip: f64 = self
            .character
            .iter()
            .enumerate()
            .map(|(g, c)| c.as_f64() * table.value(entry, g))
            .sum::<f64>()
            / order;
        let rounded = ip.round();
        if (ip - rounded).abs() > 1e-6 || rounded < 0.0 {
            return Err(Error::Character(format!(
                "non-integral multiplicity {ip} for {}",
                entry.label
            )));
        }
        Ok(rounded as usize)
    }

    /// Multiplicities of every entry of the attached character table.
    pub fn decomposition(&self) -> Result<Vec<(CharacterTableEntry, usize)>> {
        let table = self.require_table()?;
        table
            .entries()
            .iter()
            .map(|e| Ok((e.clone(), self.multiplicity(e)?)))
            .collect()
    }

    /// `P_s = (d_s/|G|) Σ_g χ_s(g) D(g)`, the projector onto the isotypic component of `entry`.
    pub fn isotypic_projector(&self, entry: &CharacterTableEntry) -> Result<Matrix<T>> {
        let table = self.require_table()?;
        if !table.entries().contains(entry) {
            return Err(Error::Character(format!(
                "{} does not belong to the attached character table",
                entry.label
            )));
        }
        let mut p = Matrix::zeros(self.dim, self.dim);
        for (g, d) in self.matrices.iter().enumerate() {
            let weight = T::lit(table.value(entry, g));
            if weight != T::zero() {
                p = &p + &d.scale(weight);
            }
        }
        Ok(p.scale(T::lit(entry.degree as f64 / self.group.order() as f64)))
    }
}

/// Orthonormalized `e_1 − e_2, e_2 − e_3, …, e_{n−1} − e_n` as the columns of an `n × (n−1)` matrix.
pub fn sum_zero_basis<T: Real>(n: usize) -> Matrix<T> {
    let mut columns: Vec<Vec<T>> = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        v[i + 1] = -T::one();
        for q in &columns {
            let c = dot(&v, q);
            v.iter_mut().zip(q).for_each(|(x, &qi)| *x -= c * qi);
        }
        let len = dot(&v, &v).sqrt();
        v.iter_mut().for_each(|x| *x /= len);
        columns.push(v);
    }
    Matrix::from_columns(&columns)
}

/// The maximally entangled unit vector `χ = (1/√m) Σ_i e_i ⊗ e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntangledUnit<T> {
    dim: usize,
    vector: Vec<T>,
}

impl<T: Real> EntangledUnit<T> {
    pub fn new(dim: usize) -> Self {
        let scale = T::one() / T::lit(dim as f64).sqrt();
        let mut vector = vec![T::zero(); dim * dim];
        for i in 0..dim {
            vector[i * dim + i] = scale;
        }
        Self { dim, vector }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self) -> &[T] {
        &self.vector
    }

    /// `(Tr_B ρ, Tr_A ρ)` for `ρ = |χ⟩⟨χ|`.
    pub fn reduced_states(&self) -> (Matrix<T>, Matrix<T>) {
        let coeffs =
            Matrix::from_row_major(self.dim, self.dim, self.vector.clone()).expect("m² entries");
        let ct = coeffs.transpose();
        (&coeffs * &ct, &ct * &coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff_vec, norm};

    #[test]
    fn standard_dimensions() {
        assert_eq!(Representation::<f64>::standard(3).unwrap().dim(), 2);
        assert_eq!(Representation::<f64>::standard(4).unwrap().dim(), 3);
        assert!(Representation::<f64>::standard(2).is_err());
    }

    #[test]
    fn standard_is_irreducible() {
        for n in 3..=6 {
            let d = Representation::<f64>::standard(n).unwrap();
            assert!((d.character_norm() - 1.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn standard_character_is_fixed_points_minus_one() {
        let d = Representation::<f64>::standard(4).unwrap();
        for (g, p) in d.group().elements().iter().enumerate() {
            let fixed = (0..4).filter(|&i| p.apply(i) == i).count() as f64;
            assert!((d.character()[g] - (fixed - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn sign_representation() {
        let g = Arc::new(GroupTable::symmetric(3).unwrap());
        let s = Representation::<f64>::sign(g).unwrap();
        assert_eq!(s.dim(), 1);
        assert!((s.character_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_identity_at_e() {
        let g = Arc::new(GroupTable::symmetric(2).unwrap());
        let bad = vec![
            Matrix::from_fn(1, 1, |_, _| -1.0),
            Matrix::from_fn(1, 1, |_, _| -1.0),
        ];
        assert!(matches!(
            Representation::new(g, bad, 1e-9),
            Err(Error::NotHomomorphism { .. })
        ));
    }

    #[test]
    fn rejects_non_orthogonal() {
        let g = Arc::new(GroupTable::symmetric(2).unwrap());
        let bad = vec![
            Matrix::from_fn(1, 1, |_, _| 1.0),
            Matrix::from_fn(1, 1, |_, _| 2.0),
        ];
        assert!(matches!(
            Representation::new(g, bad, 1e-9),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn tensor_square_character_is_square() {
        let d = Representation::<f64>::standard(3).unwrap();
        let dd = d.tensor_square();
        assert_eq!(dd.dim(), 4);
        for g in 0..6 {
            assert!((dd.character()[g] - d.character()[g].powi(2)).abs() < 1e-12);
            assert!((dd.matrix(g).trace() - dd.character()[g]).abs() < 1e-12);
        }
        let mults: Vec<usize> = dd
            .decomposition()
            .unwrap()
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        assert_eq!(mults, vec![1, 1, 1]);
    }

    #[test]
    fn isotypic_projectors_partition_identity() {
        let dd = Representation::<f64>::standard(3).unwrap().tensor_square();
        let table = dd.character_table().unwrap().clone();
        let projectors: Vec<_> = table
            .entries()
            .iter()
            .map(|e| dd.isotypic_projector(e).unwrap())
            .collect();
        let mut sum = Matrix::zeros(4, 4);
        for (i, p) in projectors.iter().enumerate() {
            assert!(p.asymmetry() < 1e-12);
            assert!((p * p).max_abs_diff(p) < 1e-12);
            for g in 0..6 {
                assert!(p.commutator(dd.matrix(g)).max_abs() < 1e-12);
            }
            for q in &projectors[i + 1..] {
                assert!((p * q).max_abs() < 1e-12);
            }
            sum = &sum + p;
        }
        assert!(sum.max_abs_diff(&Matrix::identity(4)) < 1e-12);
        let ranks: Vec<f64> = projectors.iter().map(Matrix::trace).collect();
        assert!(max_abs_diff_vec(&ranks, &[1.0, 1.0, 2.0]) < 1e-12);
    }

    #[test]
    fn chi_is_normalized_invariant_and_maximally_entangled() {
        for m in 2..=4 {
            let chi = EntangledUnit::<f64>::new(m);
            assert!((norm(chi.vector()) - 1.0).abs() < 1e-14);
            let (ra, rb) = chi.reduced_states();
            let mixed = Matrix::identity(m).scale(1.0 / m as f64);
            assert!(ra.max_abs_diff(&mixed) < 1e-14 && rb.max_abs_diff(&mixed) < 1e-14);
        }
        let s = 0.5f64.sqrt();
        assert!(max_abs_diff_vec(EntangledUnit::<f64>::new(2).vector(), &[s, 0.0, 0.0, s]) < 1e-15);

        let dd = Representation::<f64>::standard(3).unwrap().tensor_square();
        let chi = EntangledUnit::<f64>::new(2);
        for g in 0..6 {
            assert!(max_abs_diff_vec(&dd.act(g, chi.vector()), chi.vector()) < 1e-12);
        }
    }

    #[test]
    fn builds_in_single_precision() {
        let d = Representation::<f32>::standard(4).unwrap();
        assert!((d.character_norm() - 1.0).abs() < 1e-4);
    }
}
