//! Small dense real matrices and a cyclic Jacobi eigensolver.
//!
//! Dimensions here stay tiny (at most 49×49 for the tensor square of the
//! standard representation of S_8), so everything is stored row-major in
//! a flat `Vec` and no blocking is attempted.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row-major data.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<T>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        Self::from_fn(rows, cols, |i, j| columns[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (other.rows, other.cols);
        Self::from_fn(self.rows * r, self.cols * c, |i, j| {
            self[(i / r, j / c)] * other[(i % r, j % c)]
        })
    }

    /// `self += weight * u uᵀ`.
    pub fn add_outer(&mut self, u: &[T], weight: T) {
        assert!(self.is_square() && u.len() == self.rows);
        let n = self.rows;
        for (row, &ui) in self.data.chunks_exact_mut(n).zip(u) {
            let ui = ui * weight;
            for (x, &uj) in row.iter_mut().zip(u) {
                *x += ui * uj;
            }
        }
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest asymmetry `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.as_f64()).collect())
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len(), "dot product dimension mismatch");
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Kronecker product of two vectors, `(a ⊗ b)[i·len(b) + j] = a[i]·b[j]`.
pub fn kron_vec<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

pub fn max_abs_diff_vec<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs()))
}

/// Eigen-decomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted in descending order; column `i` of `vectors` is
/// the unit eigenvector for `values[i]`, with its largest-magnitude entry
/// made positive.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
    pub sweeps: usize,
}

impl<T: Real> SymmetricEigen<T> {
    /// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
    /// below `T::eigen_tolerance()`.
    pub fn new(matrix: &Matrix<T>) -> Result<Self> {
        Self::with_tolerance(matrix, T::eigen_tolerance())
    }

    pub fn with_tolerance(matrix: &Matrix<T>, tolerance: T) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "eigensolver needs a square matrix, got {}x{}",
                matrix.rows, matrix.cols
            )));
        }
        let n = matrix.rows;
        let mut a = matrix.clone();
        // Symmetrize so that round-off asymmetry cannot stall the sweep.
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = (a[(i, j)] + a[(j, i)]) / T::lit(2.0);
                a[(i, j)] = avg;
                a[(j, i)] = avg;
            }
        }
        let mut v = Matrix::identity(n);
        let mut sweeps = 0;
        loop {
            let off = off_diagonal_norm(&a);
            if off < tolerance {
                break;
            }
            if sweeps >= MAX_SWEEPS {
                return Err(Error::EigenNonConvergence {
                    sweeps,
                    residual: off.as_f64(),
                });
            }
            sweeps += 1;
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a[(j, j)]
                .partial_cmp(&a[(i, i)])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let values = order.iter().map(|&i| a[(i, i)]).collect();
        let columns: Vec<Vec<T>> = order
            .iter()
            .map(|&i| {
                let mut col = v.column(i);
                let mut lead = 0;
                for (k, x) in col.iter().enumerate() {
                    if x.abs() > col[lead].abs() + T::lit(1e-12) {
                        lead = k;
                    }
                }
                if col[lead] < T::zero() {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
                col
            })
            .collect();
        Ok(Self {
            values,
            vectors: Matrix::from_columns(&columns),
            sweeps,
        })
    }

    pub fn max_value(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn vector(&self, i: usize) -> Vec<T> {
        self.vectors.column(i)
    }
}

fn off_diagonal_norm<T: Real>(a: &Matrix<T>) -> T {
    let mut sum = T::zero();
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`; accumulates into `v`.
fn rotate<T: Real>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == T::zero() {
        return;
    }
    let n = a.rows;
    let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = T::zero();
    a[(q, p)] = T::zero();
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Numerical rank: count of singular values above `relative_threshold · σ_max`,
/// via the eigenvalues of `AᵀA`.
pub fn numerical_rank<T: Real>(a: &Matrix<T>, relative_threshold: T) -> Result<usize> {
    let gram = &a.transpose() * a;
    let eig = SymmetricEigen::new(&gram)?;
    let sigma: Vec<T> = eig
        .values
        .iter()
        .map(|&l| l.max(T::zero()).sqrt())
        .collect();
    let cutoff = sigma.first().copied().unwrap_or_else(T::zero) * relative_threshold;
    Ok(sigma
        .iter()
        .filter(|&&s| s > cutoff && s > T::zero())
        .count())
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve_linear<T: Real>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    let n = a.rows;
    if !a.is_square() || b.len() != n {
        return Err(Error::Dimension(format!(
            "cannot solve a {}x{} system with {} right-hand entries",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let mut m = a.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                m[(i, col)]
                    .abs()
                    .partial_cmp(&m[(j, col)].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if m[(pivot, col)].abs() <= T::epsilon() {
            return Err(Error::Dimension("singular linear system".into()));
        }
        if pivot != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            x.swap(col, pivot);
        }
        for i in (col + 1)..n {
            let f = m[(i, col)] / m[(col, col)];
            if f == T::zero() {
                continue;
            }
            for j in col..n {
                let v = m[(col, j)];
                m[(i, j)] -= f * v;
            }
            let xc = x[col];
            x[i] -= f * xc;
        }
    }
    for i in (0..n).rev() {
        let mut acc = x[i];
        for j in (i + 1)..n {
            acc -= m[(i, j)] * x[j];
        }
        x[i] = acc / m[(i, i)];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_two_by_two() {
        let m = Matrix::from_row_major(2, 2, vec![2.0f64, 1.0, 1.0, 2.0]).unwrap();
        let eig = SymmetricEigen::new(&m).unwrap();
        assert!((eig.values[0] - 3.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
        let w = eig.vector(0);
        let s = 1.0 / 2f64.sqrt();
        assert!((w[0] - s).abs() < 1e-14 && (w[1] - s).abs() < 1e-14);
    }

    #[test]
    fn jacobi_diagonal_input_needs_no_sweep() {
        let m = Matrix::from_row_major(3, 3, vec![1.0, 0.0, 0.0, 0.0, 5.0, 0.0, 0.0, 0.0, -2.0])
            .unwrap();
        let eig = SymmetricEigen::new(&m).unwrap();
        assert_eq!(eig.sweeps, 0);
        assert_eq!(eig.values, vec![5.0, 1.0, -2.0]);
    }

    #[test]
    fn rejects_rectangular() {
        let m = Matrix::<f64>::zeros(2, 3);
        assert!(matches!(SymmetricEigen::new(&m), Err(Error::Dimension(_))));
    }

    #[test]
    fn kron_matches_vector_kron() {
        let a = Matrix::from_row_major(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = Matrix::from_row_major(2, 2, vec![0.0, 1.0, -1.0, 0.5]).unwrap();
        let x = [1.0, -2.0];
        let y = [0.5, 3.0];
        let lhs = a.kron(&b).mul_vec(&kron_vec(&x, &y));
        let rhs = kron_vec(&a.mul_vec(&x), &b.mul_vec(&y));
        assert!(max_abs_diff_vec(&lhs, &rhs) < 1e-14);
    }

    #[test]
    fn rank_of_rank_one() {
        let mut m = Matrix::<f64>::zeros(3, 3);
        m.add_outer(&[1.0, 2.0, 3.0], 1.0);
        assert_eq!(numerical_rank(&m, 1e-6).unwrap(), 1);
        assert_eq!(
            numerical_rank(&Matrix::<f64>::identity(4), 1e-6).unwrap(),
            4
        );
    }

    #[test]
    fn gaussian_elimination() {
        let a = Matrix::from_row_major(3, 3, vec![0.0, 2.0, 1.0, 1.0, 1.0, 0.0, 3.0, 0.0, 1.0])
            .unwrap();
        let x = solve_linear(&a, &[5.0, 3.0, 4.0]).unwrap();
        assert!(max_abs_diff_vec(&x, &[1.0, 2.0, 1.0]) < 1e-14);
        assert!(solve_linear(&Matrix::<f64>::zeros(2, 2), &[1.0, 1.0]).is_err());
    }

    #[test]
    fn jacobi_works_in_single_precision() {
        let m = Matrix::from_row_major(2, 2, vec![2.0f32, 1.0, 1.0, 2.0]).unwrap();
        let eig = SymmetricEigen::new(&m).unwrap();
        assert!((eig.values[0] - 3.0).abs() < 1e-5);
    }
}
