//! One equilibrium of a rank-1 game in polynomially many exact LP solves.
//!
//! An equilibrium corresponds to a parameter where an optimal strategy `x`
//! of the parameterized program satisfies the crossing condition
//! `a . x = lambda`. The search brackets such a crossing: it keeps a window
//! `[lo, hi]` whose low end holds an optimal witness with `a . x >= lo` and
//! whose high end holds one with `a . x <= hi` (true at the factor's extreme
//! entries, so the initial window needs no solves). Each round solves the
//! program at the midpoint, asks the anchored crossing program whether the
//! current linear piece meets the crossing set on the branch side, and
//! either returns the meeting point or jumps the bracket to the piece's far
//! end — at least halving the window while preserving both witnesses. The
//! bracket ends sit on kinks after the first jump, and there are finitely
//! many kinks, so the search terminates.

use crate::game::{MixedProfile, RankOneGame};
use crate::lp::Sense;
use crate::paramlp::{
    breakpoint_lp, face_system, solve_primal, true_inequalities, ParamContext, Reach, TrueSets,
};
use crate::rational::{dot, zeros, Rational};
use crate::verify::is_nash;
use num_traits::{One, Signed, Zero};

/// Which side of the anchor the crossing program searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Result of the anchored crossing program on a labeled face: the largest
/// value of `lambda - a . x` (searching up; the mirror searching down) over
/// the face points on the anchor's far side. The gap is never positive; it
/// is zero exactly when the face meets the crossing set there, and then
/// `(x, lambda, value)` is such a meeting point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub gap: Rational,
    pub x: Vec<Rational>,
    pub lambda: Rational,
    pub value: Rational,
}

pub fn crossing_lp(
    ctx: &ParamContext,
    sets: &TrueSets,
    anchor: &Rational,
    direction: Direction,
) -> Crossing {
    let m = ctx.rows();
    let mut sys = face_system(ctx, sets); // vars: x, v, lambda
    let mut cross_row: Vec<Rational> = ctx.row_factor().to_vec();
    cross_row.push(Rational::zero());
    cross_row.push(-Rational::one());
    let mut anchor_row = zeros(m + 2);
    anchor_row[m + 1] = Rational::one();
    let mut obj = zeros(m + 2);
    match direction {
        Direction::Up => {
            // region: a . x >= lambda >= anchor; maximize lambda - a . x
            sys.add_ge(cross_row, Rational::zero());
            sys.add_ge(anchor_row, anchor.clone());
            for (o, f) in obj.iter_mut().zip(ctx.row_factor()) {
                *o = -f;
            }
            obj[m + 1] = Rational::one();
        }
        Direction::Down => {
            // region: a . x <= lambda <= anchor; maximize a . x - lambda
            sys.add_le(cross_row, Rational::zero());
            sys.add_le(anchor_row, anchor.clone());
            for (o, f) in obj.iter_mut().zip(ctx.row_factor()) {
                *o = f.clone();
            }
            obj[m + 1] = -Rational::one();
        }
    }
    let sol = sys
        .optimize(&obj, Sense::Maximize)
        .expect_optimal("the anchor's own optimum lies in the crossing region");
    let gap = sol.objective_value;
    assert!(!gap.is_positive(), "the crossing region caps the objective at zero");
    Crossing {
        gap,
        x: sol.primal[..m].to_vec(),
        lambda: sol.primal[m + 1].clone(),
        value: sol.primal[m].clone(),
    }
}

/// An equilibrium with its parameter and both players' exact payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumRecord {
    pub profile: MixedProfile,
    pub lambda: Rational,
    pub payoff_row: Rational,
    pub payoff_col: Rational,
}

/// Diagnostics from a search: rounds used and the bracket after each round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTrace {
    pub iterations: u32,
    pub brackets: Vec<(Rational, Rational)>,
}

pub fn find_equilibrium(game: &RankOneGame) -> EquilibriumRecord {
    find_equilibrium_traced(game).0
}

pub fn find_equilibrium_traced(game: &RankOneGame) -> (EquilibriumRecord, SearchTrace) {
    let ctx = ParamContext::new(game);
    let (mut lo, mut hi) = ctx.lambda_window();
    let mut trace = SearchTrace { iterations: 0, brackets: Vec::new() };

    loop {
        trace.iterations += 1;
        assert!(trace.iterations <= 10_000, "bracket search must terminate");
        assert!(lo <= hi, "the bracket stays ordered");
        let two = Rational::one() + Rational::one();
        let mid = (&lo + &hi) / two;
        let p = solve_primal(&ctx, &mid);
        let ax = ctx.lambda_of(&p.x);
        if ax == mid {
            let record = make_record(game, &ctx, p.x, p.y, mid, p.value);
            return (record, trace);
        }
        let sets = true_inequalities(&ctx, &mid, &p.value);
        if mid < ax {
            let c = crossing_lp(&ctx, &sets, &mid, Direction::Up);
            if c.gap.is_zero() {
                let record = make_record(game, &ctx, c.x, p.y, c.lambda, c.value);
                return (record, trace);
            }
            match breakpoint_lp(&ctx, &sets, Sense::Maximize) {
                Reach::At { lambda, x, .. } => {
                    // instrumented bracket invariants: the jump keeps the
                    // window ordered, at least halves it, and lands on an
                    // optimal witness still pointing inward
                    assert!(lambda >= mid, "the piece's far end is past the midpoint");
                    assert!(lambda <= hi, "no crossing is ever jumped over");
                    assert!(ctx.lambda_of(&x) >= lambda, "the new low witness points up");
                    lo = lambda;
                }
                Reach::Unbounded => {
                    unreachable!("a negative crossing gap bounds the piece above")
                }
            }
        } else {
            let c = crossing_lp(&ctx, &sets, &mid, Direction::Down);
            if c.gap.is_zero() {
                let record = make_record(game, &ctx, c.x, p.y, c.lambda, c.value);
                return (record, trace);
            }
            match breakpoint_lp(&ctx, &sets, Sense::Minimize) {
                Reach::At { lambda, x, .. } => {
                    assert!(lambda <= mid, "the piece's far end is before the midpoint");
                    assert!(lambda >= lo, "no crossing is ever jumped over");
                    assert!(ctx.lambda_of(&x) <= lambda, "the new high witness points down");
                    hi = lambda;
                }
                Reach::Unbounded => {
                    unreachable!("a negative crossing gap bounds the piece below")
                }
            }
        }
        trace.brackets.push((lo.clone(), hi.clone()));
    }
}

fn make_record(
    game: &RankOneGame,
    ctx: &ParamContext,
    x: Vec<Rational>,
    y: Vec<Rational>,
    lambda: Rational,
    value: Rational,
) -> EquilibriumRecord {
    let payoff_row = &lambda * &dot(ctx.col_factor(), &y) - &value;
    let payoff_col = value;
    let profile =
        MixedProfile::for_game(x, y, game.game()).expect("search output fits the game");
    assert_eq!(ctx.lambda_of(profile.x()), lambda, "the crossing condition holds exactly");
    debug_assert!(is_nash(game.game(), &profile));
    debug_assert_eq!(dot(profile.x(), &game.game().a.mul_vec(profile.y())), payoff_row);
    debug_assert_eq!(dot(profile.x(), &game.game().b.mul_vec(profile.y())), payoff_col);
    EquilibriumRecord { profile, lambda, payoff_row, payoff_col }
}
