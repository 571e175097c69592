//! Dense matrices over exact rationals: arithmetic, rank, rank-1
//! factorization, and small Gaussian-elimination utilities used by the
//! polyhedral code.

use crate::rational::{dot, zeros, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>, // row-major
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("matrix rows have unequal lengths")]
    RaggedRows,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
    #[error("matrix must be nonempty")]
    Empty,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        RatMatrix { rows, cols, entries: zeros(rows * cols) }
    }

    pub fn from_rows(data: Vec<Vec<Rational>>) -> Result<Self, ShapeError> {
        if data.is_empty() || data[0].is_empty() {
            return Err(ShapeError::Empty);
        }
        let cols = data[0].len();
        if data.iter().any(|r| r.len() != cols) {
            return Err(ShapeError::RaggedRows);
        }
        let rows = data.len();
        Ok(RatMatrix { rows, cols, entries: data.into_iter().flatten().collect() })
    }

    /// Build from an integer literal table; handy in tests and generators.
    pub fn from_ints(data: &[&[i64]]) -> Self {
        let rows = data
            .iter()
            .map(|r| r.iter().map(|&n| crate::rational::int(n)).collect())
            .collect();
        Self::from_rows(rows).expect("nonempty rectangular table")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = RatMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    /// Outer product `u * v^T`.
    pub fn outer(u: &[Rational], v: &[Rational]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// `A y` for a column vector `y`.
    pub fn mul_vec(&self, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.cols, "mul_vec dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), y)).collect()
    }

    /// `A^T x` for a column vector `x` (i.e. `x^T A` as a column).
    pub fn tr_mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.rows, "tr_mul_vec dimension mismatch");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.at(i, j) * &x[i]).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, ShapeError> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ShapeError> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j)))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| c * self.at(i, j))
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), ShapeError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ShapeError::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                got: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    /// Matrix rank by fraction-free (Bareiss) elimination. Rows are first
    /// scaled to integers; the elimination then stays in `BigInt` with exact
    /// divisions, which keeps intermediate entries to determinant size.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                row.iter()
                    .map(|r| r.numer() * (&lcm / r.denom()))
                    .collect()
            })
            .collect();
        let (nr, nc) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..nc {
            if rank == nr {
                break;
            }
            let Some(p) = (rank..nr).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..nr {
                for j in c + 1..nc {
                    let num = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[rank][c].clone();
            rank += 1;
        }
        rank
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("matrix has rank {rank}, expected rank 1")]
pub struct RankError {
    pub rank: usize,
}

/// The outer-product factors of a rank-1 matrix: `M = a * b^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneFactorization {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl RankOneFactorization {
    pub fn reconstruct(&self) -> RatMatrix {
        RatMatrix::outer(&self.a, &self.b)
    }
}

/// Factor a rank-1 matrix as `a * b^T`.
///
/// The factorization is unique only up to reciprocal scaling of the two
/// vectors, so a fixed canonical choice is made: with `(i0, j0)` the first
/// nonzero entry in row-major order, `a` is column `j0` and `b` is row `i0`
/// divided by `M[i0][j0]` (hence `b[j0] = 1`).
pub fn factor_rank_one(m: &RatMatrix) -> Result<RankOneFactorization, RankError> {
    let pivot = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.at(i, j).is_zero());
    let Some((i0, j0)) = pivot else {
        return Err(RankError { rank: 0 });
    };
    let a = m.col(j0);
    let b: Vec<Rational> = m.row(i0).iter().map(|e| e / m.at(i0, j0)).collect();
    let f = RankOneFactorization { a, b };
    if &f.reconstruct() != m {
        return Err(RankError { rank: m.rank() });
    }
    Ok(f)
}

/// `A - 1 b^T`: subtract `b[j]` from every entry of column `j`. Strategically
/// neutral for the row player's incentives.
pub fn shift_columns(a: &RatMatrix, b: &[Rational]) -> Result<RatMatrix, ShapeError> {
    if b.len() != a.cols() {
        return Err(ShapeError::DimensionMismatch {
            expected: format!("vector of length {}", a.cols()),
            got: format!("length {}", b.len()),
        });
    }
    Ok(RatMatrix::from_fn(a.rows(), a.cols(), |i, j| a.at(i, j) - &b[j]))
}

/// Result of solving a rational linear system `E z = f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<Rational>),
    Underdetermined,
    Inconsistent,
}

/// Exact Gauss-Jordan solve of `E z = f` over the rationals, where `E` is
/// given as a list of rows. Classifies the system rather than picking an
/// arbitrary solution when it is underdetermined.
pub fn solve_linear(rows: &[Vec<Rational>], rhs: &[Rational]) -> SolveOutcome {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), ncols, "ragged system");
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let piv = aug[r][c].clone();
        for e in aug[r].iter_mut() {
            *e = &*e / &piv;
        }
        for i in 0..aug.len() {
            if i != r && !aug[i][c].is_zero() {
                let factor = aug[i][c].clone();
                for j in 0..=ncols {
                    let delta = &factor * &aug[r][j];
                    aug[i][j] = &aug[i][j] - &delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == aug.len() {
            break;
        }
    }
    if aug[r.min(aug.len())..].iter().any(|row| !row[ncols].is_zero()) {
        return SolveOutcome::Inconsistent;
    }
    if pivot_cols.len() < ncols {
        return SolveOutcome::Underdetermined;
    }
    let mut z = zeros(ncols);
    for (k, &c) in pivot_cols.iter().enumerate() {
        z[c] = aug[k][ncols].clone();
    }
    SolveOutcome::Unique(z)
}

/// Rank of a system of rows (rational Gauss), used where rows rather than a
/// matrix are at hand.
pub fn row_rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(rows.to_vec()).map_or(0, |m| m.rank())
}
