//! Bimatrix games, mixed strategy profiles, and the rank-1 specialization
//! in which the payoff sum `A + B` factors as an outer product `a * b^T`.

use crate::matrix::{factor_rank_one, RankError, RankOneFactorization, RatMatrix, ShapeError};
use crate::rational::{is_stochastic, Rational};

/// A finite two-player game in strategic form. `a` is the row player's
/// payoff matrix, `b` the column player's; both are `m x n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub a: RatMatrix,
    pub b: RatMatrix,
}

impl Game {
    pub fn new(a: RatMatrix, b: RatMatrix) -> Result<Self, ShapeError> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(ShapeError::DimensionMismatch {
                expected: format!("{}x{}", a.rows(), a.cols()),
                got: format!("{}x{}", b.rows(), b.cols()),
            });
        }
        Ok(Game { a, b })
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// `A + B`, whose matrix rank is the rank of the game.
    pub fn payoff_sum(&self) -> RatMatrix {
        self.a.add(&self.b).expect("shapes checked at construction")
    }

    pub fn rank(&self) -> usize {
        self.payoff_sum().rank()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("{side} strategy is not a point of the simplex")]
    NotStochastic { side: &'static str },
    #[error("profile has shape {x_len}/{y_len}, game is {rows}x{cols}")]
    WrongShape { x_len: usize, y_len: usize, rows: usize, cols: usize },
}

/// A mixed strategy pair: `x` over the rows, `y` over the columns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MixedProfile {
    x: Vec<Rational>,
    y: Vec<Rational>,
}

impl MixedProfile {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>) -> Result<Self, ProfileError> {
        if !is_stochastic(&x) {
            return Err(ProfileError::NotStochastic { side: "row" });
        }
        if !is_stochastic(&y) {
            return Err(ProfileError::NotStochastic { side: "column" });
        }
        Ok(MixedProfile { x, y })
    }

    pub fn for_game(x: Vec<Rational>, y: Vec<Rational>, g: &Game) -> Result<Self, ProfileError> {
        if x.len() != g.rows() || y.len() != g.cols() {
            return Err(ProfileError::WrongShape {
                x_len: x.len(),
                y_len: y.len(),
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        Self::new(x, y)
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }
}

/// A bimatrix game whose payoff sum has rank at most one, carried together
/// with an exact factorization `A + B = a * b^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneGame {
    game: Game,
    factor: RankOneFactorization,
}

impl RankOneGame {
    /// Accept a game after checking `rank(A + B) <= 1` and factoring the sum.
    /// The zero sum matrix (rank 0) factors as `0 * 0^T`.
    pub fn from_game(game: Game) -> Result<Self, RankError> {
        let sum = game.payoff_sum();
        let factor = match factor_rank_one(&sum) {
            Ok(f) => f,
            Err(RankError { rank: 0 }) => RankOneFactorization {
                a: crate::rational::zeros(game.rows()),
                b: crate::rational::zeros(game.cols()),
            },
            Err(e) => return Err(e),
        };
        Ok(RankOneGame { game, factor })
    }

    /// Build directly from `A` and factors, with `B = -A + a * b^T`.
    pub fn from_parts(a: RatMatrix, left: Vec<Rational>, right: Vec<Rational>) -> Result<Self, ShapeError> {
        if left.len() != a.rows() || right.len() != a.cols() {
            return Err(ShapeError::DimensionMismatch {
                expected: format!("factors of length {}/{}", a.rows(), a.cols()),
                got: format!("{}/{}", left.len(), right.len()),
            });
        }
        let b = RatMatrix::outer(&left, &right).sub(&a)?;
        let game = Game::new(a, b)?;
        Ok(RankOneGame { game, factor: RankOneFactorization { a: left, b: right } })
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn factor(&self) -> &RankOneFactorization {
        &self.factor
    }
}
