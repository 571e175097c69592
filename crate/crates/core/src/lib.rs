//! Exact solvers, enumeration, and verification for rank-1 bimatrix games.

pub mod bisect;
pub mod enumerate;
pub mod generate;
pub mod homeo;
pub mod game;
pub mod lp;
pub mod paramlp;
pub mod polytope;
pub mod matrix;
pub mod rational;
pub mod verify;

pub use game::{Game, MixedProfile, RankOneGame};
pub use matrix::{RankOneFactorization, RatMatrix};
pub use rational::Rational;
