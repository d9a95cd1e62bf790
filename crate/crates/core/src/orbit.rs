//! Seed vectors, labeled orbits `v_{αl} = D(g_α g^l) v`, and product orbits
//! `O_v(g̃) = { v_{αl} ⊗ v_{(α,l)·g̃} }`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{dot, kron_vec, norm, numerical_rank, solve_linear, Matrix};
use crate::perm_group::{CosetDecomposition, GroupTable, PairPermutation};
use crate::representation::{sum_zero_basis, Representation};
use crate::scalar::Real;

const NEWTON_ITERATIONS: usize = 200;
const SEED_ATTEMPTS: u64 = 64;

/// A unit vector generating an orbit.
///
/// `coordinates` live in the representation space; `ambient` is the same
/// vector in `R^n` when the representation is carried by the sum-zero
/// subspace of a permutation action.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedVector<T> {
    pub ambient: Option<Vec<T>>,
    pub coordinates: Vec<T>,
}

impl<T: Real> SeedVector<T> {
    /// Normalizes `v` given in representation coordinates.
    pub fn from_coordinates(rep: &Representation<T>, v: Vec<T>) -> Result<Self> {
        if v.len() != rep.dim() {
            return Err(Error::Dimension(format!(
                "seed has {} coordinates, representation has dimension {}",
                v.len(),
                rep.dim()
            )));
        }
        let len = norm(&v);
        if len <= T::epsilon() {
            return Err(Error::InvalidState("seed vector is zero".into()));
        }
        let coordinates: Vec<T> = v.into_iter().map(|x| x / len).collect();
        let ambient = rep.ambient_basis().map(|b| b.mul_vec(&coordinates));
        Ok(Self {
            ambient,
            coordinates,
        })
    }

    /// Normalizes an ambient vector `x ∈ R^n` with `Σ x_i = 0`.
    pub fn from_ambient(rep: &Representation<T>, x: Vec<T>) -> Result<Self> {
        let basis = rep.ambient_basis().ok_or_else(|| {
            Error::Config(
                "representation has no ambient basis; give seed coordinates instead".into(),
            )
        })?;
        if x.len() != basis.rows() {
            return Err(Error::Dimension(format!(
                "ambient seed has {} entries, expected {}",
                x.len(),
                basis.rows()
            )));
        }
        let sum: T = x.iter().copied().sum();
        let len = norm(&x);
        if len <= T::epsilon() {
            return Err(Error::InvalidState("seed vector is zero".into()));
        }
        if (sum / len).abs() > T::identity_tolerance() {
            return Err(Error::InvalidState(format!(
                "ambient seed components sum to {sum}, not 0"
            )));
        }
        let ambient: Vec<T> = x.into_iter().map(|c| c / len).collect();
        let coordinates = basis.transpose().mul_vec(&ambient);
        Ok(Self {
            ambient: Some(ambient),
            coordinates,
        })
    }
}

/// Residuals `Σ_{i<n} x_i x_{i⊕k} + x_n²` for `k = 1, …, n−2`, with `⊕` cyclic on the first `n−1` points.
pub fn seed_constraints<T: Real>(x: &[T]) -> Vec<T> {
    let n = x.len();
    let c = n - 1;
    (1..c)
        .map(|k| (0..c).map(|i| x[i] * x[(i + k) % c]).sum::<T>() + x[n - 1] * x[n - 1])
        .collect()
}

/// Jacobian of [`seed_constraints`], `(n−2) × n`.
pub fn seed_constraint_jacobian<T: Real>(x: &[T]) -> Matrix<T> {
    let n = x.len();
    let c = n - 1;
    Matrix::from_fn(c - 1, n, |row, j| {
        let k = row + 1;
        if j == n - 1 {
            T::lit(2.0) * x[n - 1]
        } else {
            x[(j + k) % c] + x[(j + c - k) % c]
        }
    })
}

/// Number of independent seed constraints at `x`.
pub fn seed_constraint_rank<T: Real>(x: &[T]) -> Result<usize> {
    numerical_rank(&seed_constraint_jacobian(x), T::lit(1e-6))
}

/// Finds a seed for the standard representation of `S_n` whose orbit under
/// `H = ⟨(1 2 … n−1)⟩` yields orthonormal bases and is regular.
///
/// `n = 3` uses the closed form; larger `n` run damped minimum-norm Newton
/// from seeded pseudorandom starts. The result is canonicalized over the
/// symmetries of the constraint system (sign, cyclic rotation and reversal
/// of the first `n−1` coordinates): `x_n > 0`, lexicographically largest.
pub fn solve_seed<T: Real>(n: usize) -> Result<SeedVector<T>> {
    if !(3..=crate::perm_group::MAX_DEGREE).contains(&n) {
        return Err(Error::GroupSize {
            n,
            min: 3,
            max: crate::perm_group::MAX_DEGREE,
        });
    }
    // solved in f64 whatever `T` is, so every precision gets the same seed
    let x: Vec<T> = if n == 3 {
        let r3 = 3f64.sqrt();
        vec![(r3 - 1.0) * 0.5 / r3, -(r3 + 1.0) * 0.5 / r3, 1.0 / r3]
    } else {
        newton_seed(n)?
    }
    .into_iter()
    .map(T::lit)
    .collect();
    let basis = sum_zero_basis::<T>(n);
    let coordinates = basis.transpose().mul_vec(&x);
    Ok(SeedVector {
        ambient: Some(x),
        coordinates,
    })
}

fn newton_seed(n: usize) -> Result<Vec<f64>> {
    let independent = (n - 1) / 2;
    let mut best_residual = f64::INFINITY;
    for attempt in 0..SEED_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0b17_5eed ^ ((n as u64) << 16) ^ attempt);
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let residual = |x: &[f64]| -> Vec<f64> {
            let mut f = vec![x.iter().sum::<f64>()];
            f.extend(seed_constraints(x).into_iter().take(independent));
            f.push(dot(x, x) - 1.0);
            f
        };
        let jacobian = |x: &[f64]| -> Matrix<f64> {
            let cj = seed_constraint_jacobian(x);
            Matrix::from_fn(independent + 2, n, |r, j| {
                if r == 0 {
                    1.0
                } else if r <= independent {
                    cj[(r - 1, j)]
                } else {
                    2.0 * x[j]
                }
            })
        };
        let mut f = residual(&x);
        let mut fnorm = norm(&f);
        for _ in 0..NEWTON_ITERATIONS {
            if fnorm < 1e-15 {
                break;
            }
            let j = jacobian(&x);
            let jjt = &j * &j.transpose();
            let Ok(y) = solve_linear(&jjt, &f) else { break };
            let step = j.transpose().mul_vec(&y);
            let mut t = 1.0;
            let mut improved = false;
            while t > 1e-6 {
                let trial: Vec<f64> = x.iter().zip(&step).map(|(&xi, &si)| xi - t * si).collect();
                let ft = residual(&trial);
                let nt = norm(&ft);
                if nt < fnorm {
                    x = trial;
                    f = ft;
                    fnorm = nt;
                    improved = true;
                    break;
                }
                t *= 0.5;
            }
            if !improved {
                break;
            }
        }
        let all_residual = seed_constraints(&x)
            .iter()
            .fold(fnorm, |acc, r| acc.max(r.abs()));
        best_residual = best_residual.min(all_residual);
        if all_residual > 1e-12 || !components_distinct(&x) {
            continue;
        }
        return Ok(canonicalize(x));
    }
    Err(Error::SeedNonConvergence {
        n,
        residual: best_residual,
    })
}

fn components_distinct<T: Real>(x: &[T]) -> bool {
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    sorted
        .windows(2)
        .all(|w| w[1] - w[0] > T::orbit_separation())
}

fn canonicalize<T: Real>(x: Vec<T>) -> Vec<T> {
    let n = x.len();
    let c = n - 1;
    let sign = if x[n - 1] < T::zero() {
        -T::one()
    } else {
        T::one()
    };
    let mut best: Option<Vec<T>> = None;
    for reverse in [false, true] {
        for shift in 0..c {
            let mut y: Vec<T> = (0..c)
                .map(|i| {
                    let idx = if reverse {
                        (c + shift - i) % c
                    } else {
                        (i + shift) % c
                    };
                    x[idx] * sign
                })
                .collect();
            y.push(x[n - 1] * sign);
            let better = match &best {
                None => true,
                Some(b) => y.partial_cmp(b) == Some(std::cmp::Ordering::Greater),
            };
            if better {
                best = Some(y);
            }
        }
    }
    best.expect("at least one candidate")
}

/// Outcome of a regularity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Regularity {
    pub regular: bool,
    /// First colliding pair of elements, with their image distance.
    pub collision: Option<(usize, usize, f64)>,
    /// Smallest pairwise image distance, when computed exhaustively.
    pub min_distance: Option<f64>,
    /// For permutation-carried representations: whether all ambient components differ.
    pub ambient_components_distinct: Option<bool>,
}

const EXHAUSTIVE_DISTANCE_LIMIT: usize = 720;

/// Whether the `|G|` images `D(g)v` are pairwise distinct at separation `T::orbit_separation()`.
pub fn check_regular<T: Real>(rep: &Representation<T>, seed: &SeedVector<T>) -> Regularity {
    let tol = T::orbit_separation();
    let images: Vec<Vec<T>> = (0..rep.group().order())
        .map(|g| rep.act(g, &seed.coordinates))
        .collect();
    let distance = |a: &[T], b: &[T]| {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x - y) * (x - y))
            .sum::<T>()
            .sqrt()
    };

    let mut collision = None;
    let mut min_distance = None;
    if images.len() <= EXHAUSTIVE_DISTANCE_LIMIT {
        let mut min = T::infinity();
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                let d = distance(&images[i], &images[j]);
                if d < min {
                    min = d;
                }
                if d <= tol && collision.is_none() {
                    collision = Some((i, j, d.as_f64()));
                }
            }
        }
        min_distance = Some(min.as_f64());
    } else {
        // sweep in order of the first coordinate; only near neighbours can collide
        let mut order: Vec<usize> = (0..images.len()).collect();
        order.sort_by(|&a, &b| {
            images[a][0]
                .partial_cmp(&images[b][0])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        'outer: for (pos, &i) in order.iter().enumerate() {
            for &j in &order[pos + 1..] {
                if images[j][0] - images[i][0] > tol {
                    break;
                }
                let d = distance(&images[i], &images[j]);
                if d <= tol {
                    collision = Some((i.min(j), i.max(j), d.as_f64()));
                    break 'outer;
                }
            }
        }
    }
    let ambient_components_distinct = match (
        &seed.ambient,
        rep.group().is_symmetric() && rep.ambient_basis().is_some(),
    ) {
        (Some(x), true) => Some(components_distinct(x)),
        _ => None,
    };
    Regularity {
        regular: collision.is_none(),
        collision,
        min_distance,
        ambient_components_distinct,
    }
}

/// The orbit of a seed split into `k` orthonormal bases, one per left coset.
#[derive(Clone, Debug)]
pub struct LabeledOrbit<T> {
    group: Arc<GroupTable>,
    decomposition: Arc<CosetDecomposition>,
    seed: SeedVector<T>,
    vectors: Vec<Vec<T>>,
}

impl<T: Real> LabeledOrbit<T> {
    /// Rejects non-regular seeds and seeds violating `⟨v, D(g^l)v⟩ = 0`.
    pub fn build(
        rep: &Representation<T>,
        seed: SeedVector<T>,
        decomposition: Arc<CosetDecomposition>,
    ) -> Result<Self> {
        let m = decomposition.coset_size();
        if m != rep.dim() {
            return Err(Error::Dimension(format!(
                "cyclic subgroup has order {m} but the representation has dimension {}",
                rep.dim()
            )));
        }
        let regularity = check_regular(rep, &seed);
        if let Some((a, b, d)) = regularity.collision {
            let g = rep.group();
            return Err(Error::NotRegular {
                a: g.element(a).to_string(),
                b: g.element(b).to_string(),
                distance: d,
            });
        }
        let vectors: Vec<Vec<T>> = (0..decomposition.num_pairs())
            .map(|p| rep.act(decomposition.element_at(p / m, p % m), &seed.coordinates))
            .collect();
        let orbit = Self {
            group: Arc::clone(rep.group()),
            decomposition,
            seed,
            vectors,
        };
        if let Some((block, i, j, value)) = orbit.worst_gram_entry() {
            if value > T::identity_tolerance().as_f64() {
                let gram = orbit.block_gram(block);
                return Err(Error::BasisCondition {
                    block,
                    i,
                    j,
                    value: gram[(i, j)].as_f64(),
                });
            }
        }
        Ok(orbit)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn decomposition(&self) -> &Arc<CosetDecomposition> {
        &self.decomposition
    }

    pub fn seed(&self) -> &SeedVector<T> {
        &self.seed
    }

    pub fn num_blocks(&self) -> usize {
        self.decomposition.num_cosets()
    }

    pub fn block_size(&self) -> usize {
        self.decomposition.coset_size()
    }

    /// `v_{αl}`.
    pub fn vector(&self, alpha: usize, l: usize) -> &[T] {
        &self.vectors[alpha * self.block_size() + l]
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    /// Gram matrix `⟨v_{αl}, v_{αl'}⟩` of block `α`.
    pub fn block_gram(&self, alpha: usize) -> Matrix<T> {
        let m = self.block_size();
        Matrix::from_fn(m, m, |i, j| {
            dot(self.vector(alpha, i), self.vector(alpha, j))
        })
    }

    /// Block and entry with the largest deviation of the block Gram matrix from the identity.
    pub fn worst_gram_entry(&self) -> Option<(usize, usize, usize, f64)> {
        let m = self.block_size();
        let mut worst: Option<(usize, usize, usize, f64)> = None;
        for alpha in 0..self.num_blocks() {
            let gram = self.block_gram(alpha);
            for i in 0..m {
                for j in 0..m {
                    let target = if i == j { T::one() } else { T::zero() };
                    let dev = (gram[(i, j)] - target).abs().as_f64();
                    if worst.is_none_or(|w| dev > w.3) {
                        worst = Some((alpha, i, j, dev));
                    }
                }
            }
        }
        worst
    }

    /// `O_v(g̃)` for the group element with index `shift`.
    pub fn product_orbit(&self, shift: usize) -> ProductOrbit<T> {
        let pairs = self.decomposition.pair_permutation(&self.group, shift);
        let terms = pairs
            .iter()
            .map(|((a, l), (b, lb))| kron_vec(self.vector(a, l), self.vector(b, lb)))
            .collect();
        let alice = self.seed.coordinates.clone();
        let bob = self
            .vector(pairs.apply(0, 0).0, pairs.apply(0, 0).1)
            .to_vec();
        ProductOrbit {
            shift,
            num_blocks: self.num_blocks(),
            block_size: self.block_size(),
            pairs,
            terms,
            alice,
            bob,
        }
    }
}

/// `O_v(g̃)`: term `(α, l)` pairs Alice's `v_{αl}` with Bob's `v_{α_g̃ l_g̃}`.
#[derive(Clone, Debug)]
pub struct ProductOrbit<T> {
    shift: usize,
    num_blocks: usize,
    block_size: usize,
    pairs: PairPermutation,
    terms: Vec<Vec<T>>,
    alice: Vec<T>,
    bob: Vec<T>,
}

impl<T: Real> ProductOrbit<T> {
    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Dimension of the tensor-product space.
    pub fn dim(&self) -> usize {
        self.block_size * self.block_size
    }

    pub fn pairs(&self) -> &PairPermutation {
        &self.pairs
    }

    pub fn terms(&self) -> &[Vec<T>] {
        &self.terms
    }

    pub fn term(&self, alpha: usize, l: usize) -> &[T] {
        &self.terms[alpha * self.block_size + l]
    }

    /// Bob's label `(β, l')` for Alice's `(α, l)`.
    pub fn bob_label(&self, alpha: usize, l: usize) -> (usize, usize) {
        self.pairs.apply(alpha, l)
    }

    /// `v_A = v`.
    pub fn alice_seed(&self) -> &[T] {
        &self.alice
    }

    /// `v_B = D(g̃) v`.
    pub fn bob_seed(&self) -> &[T] {
        &self.bob
    }
}
