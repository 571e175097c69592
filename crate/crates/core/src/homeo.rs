//! Homeomorphisms between spaces of games and their equilibrium
//! correspondences.
//!
//! Two constructions are provided. The classical one (`km_*`) pairs every
//! bimatrix game with a game-plus-equilibrium tuple by re-encoding the row
//! and column payoff averages; it moves freely through the whole space of
//! games. The sum-preserving one (`psi_*`) does the same while keeping the
//! payoff sum A + B pinned to a fixed matrix M, so it restricts to a
//! homeomorphism on every slice of constant payoff sum — in particular it
//! never changes the rank of A + B. Both directions of both maps are exact
//! over the rationals, and both rest on the same water-level recovery step.

use crate::game::{Game, MixedProfile};
use crate::matrix::RatMatrix;
use crate::rational::{ones, vec_add, vec_sub, vec_sum, Rational};
use crate::verify::is_nash;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomeoError {
    #[error("the supplied profile is not an equilibrium of the game")]
    NotAnEquilibrium,
    #[error("payoff matrices do not sum to the prescribed matrix")]
    SumMismatch,
}

/// Result of the water-level recovery: given a vector `c`, the unique
/// simplex point `x`, residual `p = c − x`, and level `u` such that every
/// coordinate with `x_i > 0` has `p_i = u = max_k p_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaterLevelResult {
    pub x: Vec<Rational>,
    pub p: Vec<Rational>,
    pub level: Rational,
}

/// Split `c` into a simplex point and a residual: the level is the lowest
/// `w` with Σ(c_i − w)⁺ ≤ 1, and `x_i = (c_i − w)⁺`. Computed exactly by
/// sorting descending and scanning prefix sums. Panics on an empty input.
pub fn water_level(c: &[Rational]) -> WaterLevelResult {
    assert!(!c.is_empty(), "water level needs at least one coordinate");
    let mut sorted = c.to_vec();
    sorted.sort();
    sorted.reverse();
    let mut prefix = Rational::zero();
    let mut level = Rational::zero();
    let mut found = false;
    for (k, top) in sorted.iter().enumerate() {
        prefix += top;
        let candidate = (&prefix - Rational::one()) / crate::rational::int(k as i64 + 1);
        // the k+1 highest poles stand above this level; the scan keeps the
        // last (lowest) level that is still below its own pole group
        if *top > candidate {
            level = candidate;
            found = true;
        }
    }
    debug_assert!(found, "the first pole always exceeds (c_max - 1)/1");
    let x: Vec<Rational> = c
        .iter()
        .map(|ci| {
            let excess = ci - &level;
            if excess.is_negative() {
                Rational::zero()
            } else {
                excess
            }
        })
        .collect();
    let p = vec_sub(c, &x);
    debug_assert!(vec_sum(&x).is_one());
    debug_assert!(p.iter().all(|pi| pi <= &level));
    debug_assert!(x
        .iter()
        .zip(&p)
        .all(|(xi, pi)| xi.is_zero() || pi == &level));
    WaterLevelResult { x, p, level }
}

fn row_averages(m: &RatMatrix) -> Vec<Rational> {
    let n = crate::rational::int(m.cols() as i64);
    (0..m.rows())
        .map(|i| vec_sum(m.row(i)) / &n)
        .collect()
}

fn col_averages(m: &RatMatrix) -> Vec<Rational> {
    let rows = crate::rational::int(m.rows() as i64);
    (0..m.cols())
        .map(|j| vec_sum(&m.col(j)) / &rows)
        .collect()
}

/// Project onto the hyperplane of zero coordinate sum: subtract the mean.
fn center(v: &[Rational]) -> Vec<Rational> {
    let mean = vec_sum(v) / crate::rational::int(v.len() as i64);
    v.iter().map(|vi| vi - &mean).collect()
}

/// A game split into base payoffs with vanishing averages plus the average
/// vectors that restore them: `A = row_base + row_avg·1ᵀ` where the rows of
/// `row_base` sum to zero, and `B = col_base + 1·col_avgᵀ` where the
/// columns of `col_base` sum to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmDecomposition {
    pub row_base: RatMatrix,
    pub row_avg: Vec<Rational>,
    pub col_base: RatMatrix,
    pub col_avg: Vec<Rational>,
}

impl KmDecomposition {
    pub fn reconstruct(&self) -> (RatMatrix, RatMatrix) {
        let n = self.row_base.cols();
        let m = self.row_base.rows();
        let a = self
            .row_base
            .add(&RatMatrix::outer(&self.row_avg, &ones(n)))
            .expect("shapes agree");
        let b = self
            .col_base
            .add(&RatMatrix::outer(&ones(m), &self.col_avg))
            .expect("shapes agree");
        (a, b)
    }
}

pub fn km_decompose(a: &RatMatrix, b: &RatMatrix) -> KmDecomposition {
    let row_avg = row_averages(a);
    let col_avg = col_averages(b);
    let row_base = a
        .sub(&RatMatrix::outer(&row_avg, &ones(a.cols())))
        .expect("shapes agree");
    let col_base = b
        .sub(&RatMatrix::outer(&ones(b.rows()), &col_avg))
        .expect("shapes agree");
    debug_assert!(row_averages(&row_base).iter().all(Rational::is_zero));
    debug_assert!(col_averages(&col_base).iter().all(Rational::is_zero));
    KmDecomposition {
        row_base,
        row_avg,
        col_base,
        col_avg,
    }
}

/// Map a game plus one of its equilibria to the plain game that encodes
/// them: keep both base matrices and swap the average vectors for
/// `Ay + x` and `Bᵀx + y`.
pub fn km_inverse(game: &Game, profile: &MixedProfile) -> Result<Game, HomeoError> {
    if !is_nash(game, profile) {
        return Err(HomeoError::NotAnEquilibrium);
    }
    let dec = km_decompose(&game.a, &game.b);
    let c_avg = vec_add(&game.a.mul_vec(profile.y()), profile.x());
    let d_avg = vec_add(&game.b.tr_mul_vec(profile.x()), profile.y());
    let c = dec
        .row_base
        .add(&RatMatrix::outer(&c_avg, &ones(game.cols())))
        .expect("shapes agree");
    let d = dec
        .col_base
        .add(&RatMatrix::outer(&ones(game.rows()), &d_avg))
        .expect("shapes agree");
    Game::new(c, d).map_err(|_| HomeoError::SumMismatch)
}

/// Decode a plain game into a game plus one of its equilibria: read the
/// average vectors, recover the profile by the water-level split, and
/// rebuild average vectors that make the profile an equilibrium.
pub fn km_forward(encoded: &Game) -> (Game, MixedProfile) {
    let c_avg = row_averages(&encoded.a);
    let d_avg = col_averages(&encoded.b);
    let row_base = encoded
        .a
        .sub(&RatMatrix::outer(&c_avg, &ones(encoded.cols())))
        .expect("shapes agree");
    let col_base = encoded
        .b
        .sub(&RatMatrix::outer(&ones(encoded.rows()), &d_avg))
        .expect("shapes agree");
    let row_split = water_level(&c_avg);
    let col_split = water_level(&d_avg);
    let x = row_split.x;
    let y = col_split.x;
    let row_avg = vec_sub(&vec_sub(&c_avg, &x), &row_base.mul_vec(&y));
    let col_avg = vec_sub(&vec_sub(&d_avg, &y), &col_base.tr_mul_vec(&x));
    let (a, b) = KmDecomposition {
        row_base,
        row_avg,
        col_base,
        col_avg,
    }
    .reconstruct();
    let game = Game::new(a, b).expect("shapes agree");
    let profile = MixedProfile::for_game(x, y, &game).expect("water level yields simplex points");
    debug_assert!(is_nash(&game, &profile));
    (game, profile)
}

/// A matrix split as `A = Â + 1γ1ᵀ + a1ᵀ + 1bᵀ` where `Â` has vanishing
/// row and column sums, `γ` is the grand mean, and `a`, `b` are centered
/// row/column offsets (each summing to zero). The four parts are unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiDecomposition {
    pub hat: RatMatrix,
    pub gamma: Rational,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl PsiDecomposition {
    pub fn reconstruct(&self) -> RatMatrix {
        let m = self.hat.rows();
        let n = self.hat.cols();
        let mut out = self.hat.clone();
        for i in 0..m {
            for j in 0..n {
                *out.at_mut(i, j) += &self.gamma + &self.a[i] + &self.b[j];
            }
        }
        out
    }
}

pub fn psi_decompose(matrix: &RatMatrix) -> PsiDecomposition {
    let m = matrix.rows();
    let n = matrix.cols();
    let row_avg = row_averages(matrix);
    let gamma = vec_sum(&row_avg) / crate::rational::int(m as i64);
    let a: Vec<Rational> = row_avg.iter().map(|r| r - &gamma).collect();
    let b: Vec<Rational> = col_averages(matrix).iter().map(|c| c - &gamma).collect();
    let mut hat = matrix.clone();
    for i in 0..m {
        for j in 0..n {
            *hat.at_mut(i, j) -= &gamma + &a[i] + &b[j];
        }
    }
    debug_assert!(vec_sum(&a).is_zero());
    debug_assert!(vec_sum(&b).is_zero());
    debug_assert!(row_averages(&hat).iter().all(Rational::is_zero));
    debug_assert!(col_averages(&hat).iter().all(Rational::is_zero));
    PsiDecomposition { hat, gamma, a, b }
}

/// Map a game with payoff sum `M` plus one of its equilibria to the plain
/// game in the same sum-`M` slice that encodes them: keep `Â` and `γ` from
/// the row player's matrix, replace the offset vectors by the centered
/// best-response payoffs `ρ(Ay + x)` and `σ(Bᵀx + y)`.
pub fn psi_inverse(
    game: &Game,
    profile: &MixedProfile,
    sum: &RatMatrix,
) -> Result<Game, HomeoError> {
    if &game.payoff_sum() != sum {
        return Err(HomeoError::SumMismatch);
    }
    if !is_nash(game, profile) {
        return Err(HomeoError::NotAnEquilibrium);
    }
    let dec = psi_decompose(&game.a);
    let c = center(&vec_add(&game.a.mul_vec(profile.y()), profile.x()));
    let d = center(&vec_add(&game.b.tr_mul_vec(profile.x()), profile.y()));
    let encoded_a = PsiDecomposition {
        hat: dec.hat,
        gamma: dec.gamma,
        a: c,
        b: d,
    }
    .reconstruct();
    let encoded_b = sum.sub(&encoded_a).expect("shapes agree");
    Ok(Game::new(encoded_a, encoded_b).expect("shapes agree"))
}

/// Decode a plain game in the sum-`M` slice into a game in the same slice
/// plus one of its equilibria: recover the profile from the offset vectors
/// by the water-level split, then rebuild offsets that make it an
/// equilibrium while leaving the payoff sum untouched.
pub fn psi_forward(encoded: &Game, sum: &RatMatrix) -> Result<(Game, MixedProfile), HomeoError> {
    if &encoded.payoff_sum() != sum {
        return Err(HomeoError::SumMismatch);
    }
    let dec = psi_decompose(&encoded.a);
    let row_split = water_level(&dec.a);
    let col_split = water_level(&dec.b);
    let x = row_split.x;
    let y = col_split.x;
    let a_vec = vec_sub(&dec.a, &center(&vec_add(&dec.hat.mul_vec(&y), &x)));
    let col_payoff_base = sum.sub(&dec.hat).expect("shapes agree");
    let b_vec = vec_sub(
        &center(&vec_add(&col_payoff_base.tr_mul_vec(&x), &y)),
        &dec.b,
    );
    let a = PsiDecomposition {
        hat: dec.hat,
        gamma: dec.gamma,
        a: a_vec,
        b: b_vec,
    }
    .reconstruct();
    let b = sum.sub(&a).expect("shapes agree");
    let game = Game::new(a, b).expect("shapes agree");
    let profile = MixedProfile::for_game(x, y, &game).expect("water level yields simplex points");
    debug_assert!(is_nash(&game, &profile));
    debug_assert_eq!(&game.payoff_sum(), sum);
    Ok((game, profile))
}
