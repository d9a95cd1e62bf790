//! The Bell operator `X = Σ_terms |t⟩⟨t|` and its spectrum.

use crate::error::{Error, Result};
use crate::linalg::{dot, kron_vec, norm, Matrix, SymmetricEigen};
use crate::orbit::ProductOrbit;
use crate::representation::{EntangledUnit, Representation};
use crate::scalar::Real;

/// `X(v_A, v_B)` summed over a set of product orbits, with its eigen-decomposition.
#[derive(Clone, Debug)]
pub struct BellOperator<T> {
    matrix: Matrix<T>,
    num_orbits: usize,
    terms_per_orbit: usize,
    eigen: SymmetricEigen<T>,
}

impl<T: Real> BellOperator<T> {
    pub fn assemble(orbits: &[ProductOrbit<T>]) -> Result<Self> {
        let first = orbits
            .first()
            .ok_or_else(|| Error::Config("at least one orbit is required".into()))?;
        let dim = first.dim();
        let mut matrix = Matrix::zeros(dim, dim);
        for orbit in orbits {
            if orbit.dim() != dim || orbit.terms().len() != first.terms().len() {
                return Err(Error::Dimension(format!(
                    "orbit for shift {} lives in dimension {}, expected {dim}",
                    orbit.shift(),
                    orbit.dim()
                )));
            }
            for t in orbit.terms() {
                matrix.add_outer(t, T::one());
            }
        }
        let eigen = SymmetricEigen::new(&matrix)?;
        Ok(Self {
            matrix,
            num_orbits: orbits.len(),
            terms_per_orbit: first.terms().len(),
            eigen,
        })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_orbits(&self) -> usize {
        self.num_orbits
    }

    /// `|G| × #orbits`, the exact trace.
    pub fn expected_trace(&self) -> T {
        T::lit((self.terms_per_orbit * self.num_orbits) as f64)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigen.values
    }

    pub fn eigen(&self) -> &SymmetricEigen<T> {
        &self.eigen
    }

    /// Top eigenvalue and a unit eigenvector attaining it.
    pub fn quantum_bound(&self) -> (T, Vec<T>) {
        (self.eigen.max_value(), self.eigen.vector(0))
    }

    /// `(w, X w)`.
    pub fn expectation(&self, w: &[T]) -> T {
        dot(w, &self.matrix.mul_vec(w))
    }

    /// `max_g ‖[X, D(g)⊗D(g)]‖_max`.
    pub fn symmetry_commutator(&self, rep: &Representation<T>) -> T {
        (0..rep.group().order())
            .map(|g| {
                let d = rep.matrix(g);
                self.matrix.commutator(&d.kron(d)).max_abs()
            })
            .fold(T::zero(), T::max)
    }

    /// `‖Xχ − λχ‖` and `λ = (|G|/m) Σ_orbits ⟨v_A, v_B⟩²` for the maximally entangled `χ`.
    pub fn chi_residual(&self, orbits: &[ProductOrbit<T>]) -> (T, T) {
        let m = orbits[0].block_size();
        let chi = EntangledUnit::<T>::new(m);
        let lambda = chi_eigenvalue(orbits);
        let image = self.matrix.mul_vec(chi.vector());
        let residual: Vec<T> = image
            .iter()
            .zip(chi.vector())
            .map(|(&a, &c)| a - lambda * c)
            .collect();
        (norm(&residual), lambda)
    }
}

/// `(|G|/m) Σ_orbits ⟨v_A, v_B⟩²`, the eigenvalue of `X` on `χ`.
pub fn chi_eigenvalue<T: Real>(orbits: &[ProductOrbit<T>]) -> T {
    orbits
        .iter()
        .map(|o| {
            let overlap = dot(o.alice_seed(), o.bob_seed());
            T::lit(o.terms().len() as f64 / o.block_size() as f64) * overlap * overlap
        })
        .sum()
}

/// `S(w) = Σ_terms ⟨t, w⟩²` computed term by term.
pub fn evaluate_quantum_s<T: Real>(orbits: &[ProductOrbit<T>], w: &[T]) -> Result<T> {
    let len = norm(w);
    if (len - T::one()).abs() > T::identity_tolerance() {
        return Err(Error::InvalidState(format!(
            "state has norm {len}, expected 1"
        )));
    }
    let mut s = T::zero();
    for orbit in orbits {
        if orbit.dim() != w.len() {
            return Err(Error::Dimension(format!(
                "state has dimension {}, orbit needs {}",
                w.len(),
                orbit.dim()
            )));
        }
        for t in orbit.terms() {
            let c = dot(t, w);
            s += c * c;
        }
    }
    Ok(s)
}

/// Closed-form eigenvalue `x_s` of one irreducible constituent of `D ⊗ D`.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepEigenvalue<T> {
    pub label: String,
    pub degree: usize,
    pub value: T,
}

/// `x_s = Σ_orbits (|G|/d_s) ‖(v_A ⊗ v_B)_s‖²` for every constituent of `D ⊗ D`.
///
/// Refuses when some constituent appears more than once, since `X` is then
/// only block diagonal.
pub fn eigenvalues_by_irrep<T: Real>(
    orbits: &[ProductOrbit<T>],
    rep: &Representation<T>,
) -> Result<Vec<IrrepEigenvalue<T>>> {
    let square = rep.tensor_square();
    let order = T::lit(rep.group().order() as f64);
    let mut out = Vec::new();
    for (entry, multiplicity) in square.decomposition()? {
        if multiplicity > 1 {
            return Err(Error::Multiplicity {
                label: entry.label.clone(),
                multiplicity,
            });
        }
        if multiplicity == 0 {
            continue;
        }
        let projector = square.isotypic_projector(&entry)?;
        let value = orbits
            .iter()
            .map(|o| {
                let product = kron_vec(o.alice_seed(), o.bob_seed());
                let p = projector.mul_vec(&product);
                order / T::lit(entry.degree as f64) * dot(&p, &p)
            })
            .sum();
        out.push(IrrepEigenvalue {
            label: entry.label.clone(),
            degree: entry.degree,
            value,
        });
    }
    Ok(out)
}

/// Spectrum implied by closed-form eigenvalues: each `x_s` repeated `d_s` times, descending.
pub fn irrep_spectrum<T: Real>(values: &[IrrepEigenvalue<T>]) -> Vec<T> {
    let mut spectrum: Vec<T> = values
        .iter()
        .flat_map(|x| std::iter::repeat_n(x.value, x.degree))
        .collect();
    spectrum.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    spectrum
}
