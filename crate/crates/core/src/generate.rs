//! Constructors for fixture games and game families.
//!
//! Provides the small named fixtures used throughout the test suite and the
//! CLI, the exponential-equilibria family (a symmetric rank-1 family whose
//! equilibrium count doubles with each added strategy), a seller/buyer trade
//! game that reduces to rank 1, and seeded random rank-1 games.

use crate::game::{Game, RankOneGame};
use crate::matrix::RatMatrix;
use crate::rational::{int, parse_rational, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// Parameters of the exponential-equilibria family: an n×n game with growth
/// base p. Entries reach p^(2n), so keep p small for large n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpoParams {
    n: usize,
    p: Rational,
}

impl ExpoParams {
    /// Requires n ≥ 1 and p > 2; the growth arguments behind the family's
    /// equilibrium count need the base strictly above 2.
    pub fn new(n: usize, p: Rational) -> Result<Self, GenError> {
        if n == 0 {
            return Err(GenError::BadParams("n must be at least 1".into()));
        }
        if p <= int(2) {
            return Err(GenError::BadParams(format!("base must exceed 2, got {p}")));
        }
        Ok(ExpoParams { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }
}

/// The n×n symmetric game with 2ⁿ − 1 equilibria: the row payoff is
/// 2p^(i+j) above the diagonal, p^(2i) on it, and 0 below (1-based), the
/// column payoff is its transpose, and the payoff sum factors through
/// p^i · 2p^j.
pub fn gen_expo(params: &ExpoParams) -> RankOneGame {
    let n = params.n;
    let p = &params.p;
    // powers[k] = p^k for k = 0..=2n
    let mut powers = Vec::with_capacity(2 * n + 1);
    powers.push(Rational::one());
    for k in 1..=2 * n {
        powers.push(&powers[k - 1] * p);
    }
    let two = int(2);
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(if j > i {
                &two * &powers[i + j]
            } else if j == i {
                powers[2 * i].clone()
            } else {
                Rational::zero()
            });
        }
        rows.push(row);
    }
    let a = RatMatrix::from_rows(rows).expect("square by construction");
    let left: Vec<Rational> = (1..=n).map(|i| powers[i].clone()).collect();
    let right: Vec<Rational> = (1..=n).map(|j| &two * &powers[j]).collect();
    RankOneGame::from_parts(a, left, right).expect("the family factors exactly")
}

/// Parameters of the seller/buyer trade game: player 1 picks a quality
/// level, player 2 a quantity level, a price is attached to each pair, and
/// the per-unit cost/benefit rates satisfy benefit > cost > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeParams {
    pub quality: Vec<Rational>,
    pub quantity: Vec<Rational>,
    pub price: RatMatrix,
    pub cost_rate: Rational,
    pub benefit_rate: Rational,
    pub quantity_bonus: Vec<Rational>,
    pub quality_bonus: Vec<Rational>,
}

impl TradeParams {
    pub fn validate(&self) -> Result<(), GenError> {
        let m = self.quality.len();
        let n = self.quantity.len();
        if m == 0 || n == 0 {
            return Err(GenError::BadParams("need at least one level per side".into()));
        }
        if self.price.rows() != m || self.price.cols() != n {
            return Err(GenError::BadParams(format!(
                "price matrix is {}x{}, expected {}x{}",
                self.price.rows(),
                self.price.cols(),
                m,
                n
            )));
        }
        if self.quantity_bonus.len() != n || self.quality_bonus.len() != m {
            return Err(GenError::BadParams("bonus vector lengths must match".into()));
        }
        if !(self.benefit_rate > self.cost_rate && self.cost_rate > Rational::zero()) {
            return Err(GenError::BadParams(
                "need benefit rate > cost rate > 0".into(),
            ));
        }
        Ok(())
    }
}

/// Build the trade game. The full game pays the seller
/// price − cost_rate·quality·quantity + quantity_bonus and the buyer
/// −price + benefit_rate·quality·quantity + quality_bonus; the reduced game
/// drops both bonus terms (they never affect best responses), leaving a
/// payoff sum (benefit − cost)·quality·quantity of rank 1.
pub fn gen_trade(params: &TradeParams) -> Result<(Game, RankOneGame), GenError> {
    params.validate()?;
    let m = params.quality.len();
    let n = params.quantity.len();
    let mut full_a = Vec::with_capacity(m);
    let mut full_b = Vec::with_capacity(m);
    let mut red_a = Vec::with_capacity(m);
    for i in 0..m {
        let mut fa = Vec::with_capacity(n);
        let mut fb = Vec::with_capacity(n);
        let mut ra = Vec::with_capacity(n);
        for j in 0..n {
            let volume = &params.quality[i] * &params.quantity[j];
            let seller = params.price.at(i, j) - &params.cost_rate * &volume;
            let buyer = -params.price.at(i, j) + &params.benefit_rate * &volume;
            fa.push(&seller + &params.quantity_bonus[j]);
            fb.push(&buyer + &params.quality_bonus[i]);
            ra.push(seller);
        }
        full_a.push(fa);
        full_b.push(fb);
        red_a.push(ra);
    }
    let full = Game::new(
        RatMatrix::from_rows(full_a).expect("rectangular by construction"),
        RatMatrix::from_rows(full_b).expect("rectangular by construction"),
    )
    .expect("shapes match");
    let margin = &params.benefit_rate - &params.cost_rate;
    let right: Vec<Rational> = params.quantity.iter().map(|q| &margin * q).collect();
    let reduced = RankOneGame::from_parts(
        RatMatrix::from_rows(red_a).expect("rectangular by construction"),
        params.quality.clone(),
        right,
    )
    .expect("the reduced payoff sum factors exactly");
    Ok((full, reduced))
}

fn fixture_ex1() -> Game {
    Game::new(
        RatMatrix::from_ints(&[&[1, 0], &[0, 1]]),
        RatMatrix::from_ints(&[&[1, -2], &[-1, 0]]),
    )
    .unwrap()
}

fn fixture_ex3() -> Game {
    Game::new(
        RatMatrix::from_ints(&[&[1, -1], &[0, 0]]),
        RatMatrix::from_ints(&[&[1, 0], &[2, 0]]),
    )
    .unwrap()
}

/// The parameterized 2×2 family used to trace how equilibria of the rank-2
/// fixture move: the row matrix is fixed and the column matrix's first
/// column reads (4+λ, λ).
fn fixture_param_n2(lambda: &Rational) -> Game {
    let a = RatMatrix::from_ints(&[&[1, -1], &[0, 0]]);
    let b = RatMatrix::from_rows(vec![
        vec![int(4) + lambda, Rational::zero()],
        vec![lambda.clone(), Rational::zero()],
    ])
    .unwrap();
    Game::new(a, b).unwrap()
}

/// Look up a named fixture. Valid names: `ex1` (2×2 rank-1 game with three
/// equilibria), `ex3` (2×2 rank-2 game with a single pure equilibrium), and
/// `param-N2(λ)` with a literal rational λ, e.g. `param-N2(-4)`.
pub fn fixture(name: &str) -> Result<Game, GenError> {
    match name {
        "ex1" => return Ok(fixture_ex1()),
        "ex3" => return Ok(fixture_ex3()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("param-N2(") {
        if let Some(arg) = rest.strip_suffix(')') {
            let lambda = parse_rational(arg)
                .map_err(|e| GenError::BadParams(format!("bad parameter in `{name}`: {e}")))?;
            return Ok(fixture_param_n2(&lambda));
        }
    }
    Err(GenError::UnknownFixture(name.to_string()))
}

/// A seeded random rank-1 game: the row matrix and both factor vectors are
/// drawn uniformly from integers in [−bound, bound], and the column matrix
/// is the one forced by the factorization. Identical seeds give identical
/// games.
pub fn gen_random_rank1(
    rows: usize,
    cols: usize,
    bound: i64,
    seed: u64,
) -> Result<RankOneGame, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::BadParams("need at least one strategy per side".into()));
    }
    if bound <= 0 {
        return Err(GenError::BadParams("coefficient bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| int(rng.gen_range(-bound..=bound));
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        data.push((0..cols).map(|_| draw(&mut rng)).collect::<Vec<_>>());
    }
    let a = RatMatrix::from_rows(data).expect("rectangular by construction");
    let left: Vec<Rational> = (0..rows).map(|_| draw(&mut rng)).collect();
    let right: Vec<Rational> = (0..cols).map(|_| draw(&mut rng)).collect();
    Ok(RankOneGame::from_parts(a, left, right).expect("construction forces the factorization"))
}
