//! The parameterized linear program at the heart of rank-1 equilibrium
//! computation.
//!
//! Fix a game with row-player payoff matrix `A` (m x n) and a rank-1
//! adjustment `a b^T` so that the column player's payoffs are `-A + 1 a^T x
//! ... b^T`-shaped; the relevant family of programs, indexed by a scalar
//! `lambda`, is
//!
//! ```text
//!   value(lambda) = min v   subject to   A^T x + 1 v >= lambda b,
//!                                        x in the unit simplex,
//! ```
//!
//! whose dual maximizes `lambda b^T y + t` over `{A y + 1 t <= 0, y in the
//! unit simplex}`. `value` is a piecewise-linear convex function of `lambda`.
//! This module solves the program exactly, classifies which dual constraints
//! can be slack and which columns can carry weight on the optimal dual face,
//! measures the left and right slopes of `value`, finds where the linear
//! piece through a point ends, and walks a whole window `[lo, hi]`,
//! returning every linear piece and every kink in between.
//!
//! A mixed profile `(x, y)` of the original game is an equilibrium exactly
//! when `x` is optimal here for `lambda = a . x`, `y` lies on the matching
//! optimal dual face, and the crossing condition `a . x = lambda` holds; the
//! face descriptions built here (`x_breakpoint_system`, `x_interval_system`,
//! `face_system`) restrict to that crossing set in plain strategy space.

use crate::game::RankOneGame;
use crate::lp::{LpOutcome, LpProblem, Relation, Sense};
use crate::matrix::RatMatrix;
use crate::polytope::LinearSystem;
use crate::rational::{dot, ones, zeros, Rational};
use num_traits::{One, Signed, Zero};

/// Everything the parameterized program needs: the row player's payoff
/// matrix and the two rank-1 factors of the payoff sum.
#[derive(Debug, Clone)]
pub struct ParamContext {
    payoff: RatMatrix,
    row_factor: Vec<Rational>,
    col_factor: Vec<Rational>,
}

impl ParamContext {
    pub fn new(game: &RankOneGame) -> Self {
        let f = game.factor();
        ParamContext {
            payoff: game.game().a.clone(),
            row_factor: f.a.clone(),
            col_factor: f.b.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        self.payoff.rows()
    }

    pub fn cols(&self) -> usize {
        self.payoff.cols()
    }

    pub fn payoff(&self) -> &RatMatrix {
        &self.payoff
    }

    pub fn row_factor(&self) -> &[Rational] {
        &self.row_factor
    }

    pub fn col_factor(&self) -> &[Rational] {
        &self.col_factor
    }

    /// The parameter an equilibrium through `x` must sit at: `a . x`.
    pub fn lambda_of(&self, x: &[Rational]) -> Rational {
        dot(&self.row_factor, x)
    }

    /// Every equilibrium parameter lies between the smallest and largest
    /// entry of the row factor, because `a . x` averages them.
    pub fn lambda_window(&self) -> (Rational, Rational) {
        let lo = self.row_factor.iter().min().expect("games have rows").clone();
        let hi = self.row_factor.iter().max().expect("games have rows").clone();
        (lo, hi)
    }
}

/// One exact solve of the parameterized program: optimal strategy, value,
/// column surpluses, and the dual certificate `(y, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    pub lambda: Rational,
    pub x: Vec<Rational>,
    /// The optimum `value(lambda)` — also the column player's equilibrium
    /// payoff when the crossing condition holds at this point.
    pub value: Rational,
    /// `s_j = (A^T x)_j + value - lambda b_j >= 0`, zero on tight columns.
    pub surplus: Vec<Rational>,
    pub y: Vec<Rational>,
    /// Free dual variable of the simplex row; `-dual_offset` is the row
    /// player's equilibrium payoff when the crossing condition holds.
    pub dual_offset: Rational,
}

pub fn solve_primal(ctx: &ParamContext, lambda: &Rational) -> ParamPoint {
    let (m, n) = (ctx.rows(), ctx.cols());
    let mut obj = zeros(m + 1);
    obj[m] = Rational::one();
    let mut lp = LpProblem::minimize(obj);
    lp.make_free(m);
    for j in 0..n {
        let mut row = zeros(m + 1);
        for i in 0..m {
            row[i] = ctx.payoff.at(i, j).clone();
        }
        row[m] = Rational::one();
        lp.constrain(row, Relation::Ge, lambda * &ctx.col_factor[j]);
    }
    let mut simplex_row = ones(m);
    simplex_row.push(Rational::zero());
    lp.constrain(simplex_row, Relation::Eq, Rational::one());

    let sol = lp.solve().expect_optimal("the program is feasible with compact strategy set");
    let x = sol.primal[..m].to_vec();
    let value = sol.primal[m].clone();
    let y = sol.dual[..n].to_vec();
    let dual_offset = sol.dual[n].clone();
    let surplus: Vec<Rational> = (0..n)
        .map(|j| {
            let col: Rational = (0..m).map(|i| ctx.payoff.at(i, j) * &x[i]).sum();
            col + &value - lambda * &ctx.col_factor[j]
        })
        .collect();
    debug_assert!(surplus.iter().all(|s| !s.is_negative()));
    debug_assert_eq!(lambda * &dot(&ctx.col_factor, &y) + &dual_offset, value);
    ParamPoint { lambda: lambda.clone(), x, value, surplus, y, dual_offset }
}

/// The optimal dual face at `lambda`, in strategy space: eliminating the
/// free dual offset via `t = value - lambda b^T y` turns optimality into
/// `(A_i - lambda b^T) y <= -value` per row, alongside the simplex. With
/// `slope_cut = Some(sigma)` the face is further sliced by `b^T y = sigma`,
/// which picks out the piece of the optimal face shared with the adjacent
/// linear piece of that slope.
///
/// Inequality indices: `0..m` are the payoff rows, `m..m+n` are `y_j >= 0`.
pub fn y_face_system(
    ctx: &ParamContext,
    lambda: &Rational,
    value: &Rational,
    slope_cut: Option<&Rational>,
) -> LinearSystem {
    let (m, n) = (ctx.rows(), ctx.cols());
    let mut sys = LinearSystem::new(n);
    for i in 0..m {
        let row: Vec<Rational> = (0..n)
            .map(|j| ctx.payoff.at(i, j) - lambda * &ctx.col_factor[j])
            .collect();
        sys.add_le(row, -value);
    }
    for j in 0..n {
        sys.add_nonneg(j);
    }
    sys.add_eq(ones(n), Rational::one());
    if let Some(sigma) = slope_cut {
        sys.add_eq(ctx.col_factor.to_vec(), sigma.clone());
    }
    sys
}

/// Face labels read off the optimal dual face: `slack_rows[i]` says row i's
/// dual constraint is strict somewhere on the face (so `x_i = 0` at every
/// optimum), `support_cols[j]` says column j carries weight somewhere (so
/// its primal surplus vanishes at every optimum). The witness is a point in
/// the face's relative interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrueSets {
    pub slack_rows: Vec<bool>,
    pub support_cols: Vec<bool>,
    pub y_witness: Vec<Rational>,
}

fn split_report(m: usize, n: usize, rel: crate::polytope::InteriorReport) -> TrueSets {
    debug_assert_eq!(rel.strict.len(), m + n);
    TrueSets {
        slack_rows: rel.strict[..m].to_vec(),
        support_cols: rel.strict[m..m + n].to_vec(),
        y_witness: rel.point,
    }
}

/// Labels of the full optimal dual face at `lambda` (with `value =
/// value(lambda)` supplied by a solve).
pub fn true_inequalities(ctx: &ParamContext, lambda: &Rational, value: &Rational) -> TrueSets {
    let sys = y_face_system(ctx, lambda, value, None);
    let rel = sys.relative_interior().expect("the optimal dual face is never empty");
    split_report(ctx.rows(), ctx.cols(), rel)
}

/// Labels of the slope-sliced face: the part of the optimal dual face at
/// `lambda` with `b^T y = slope`, which describes the linear piece of that
/// slope adjacent to `lambda`.
pub fn interval_true_inequalities(
    ctx: &ParamContext,
    lambda: &Rational,
    value: &Rational,
    slope: &Rational,
) -> TrueSets {
    let sys = y_face_system(ctx, lambda, value, Some(slope));
    let rel = sys.relative_interior().expect("a measured slope is attained on the face");
    split_report(ctx.rows(), ctx.cols(), rel)
}

/// Minimize or maximize `b^T y` over the optimal dual face at `lambda`:
/// the two one-sided slopes of `value` there. Returns the slope and a dual
/// point attaining it.
pub fn slope_lp(
    ctx: &ParamContext,
    lambda: &Rational,
    value: &Rational,
    sense: Sense,
) -> (Rational, Vec<Rational>) {
    let sys = y_face_system(ctx, lambda, value, None);
    let sol = sys
        .optimize(ctx.col_factor(), sense)
        .expect_optimal("the optimal dual face is compact and nonempty");
    (sol.objective_value, sol.primal)
}

/// The labeled primal face in variables `(x, v, lambda)`: columns flagged in
/// `support_cols` bind, rows flagged in `slack_rows` force `x_i = 0`, and
/// both `v` and `lambda` float. Every point of this face is optimal for its
/// own `lambda`, and `lambda` ranges exactly over the closed linear piece
/// the labels describe.
///
/// Variable layout: `x` in `0..m`, `v` at `m`, `lambda` at `m + 1`.
pub fn face_system(ctx: &ParamContext, sets: &TrueSets) -> LinearSystem {
    let (m, n) = (ctx.rows(), ctx.cols());
    let mut sys = LinearSystem::new(m + 2);
    for j in 0..n {
        let mut row = zeros(m + 2);
        for i in 0..m {
            row[i] = ctx.payoff.at(i, j).clone();
        }
        row[m] = Rational::one();
        row[m + 1] = -&ctx.col_factor[j];
        if sets.support_cols[j] {
            sys.add_eq(row, Rational::zero());
        } else {
            sys.add_ge(row, Rational::zero());
        }
    }
    let mut simplex_row = ones(m);
    simplex_row.extend([Rational::zero(), Rational::zero()]);
    sys.add_eq(simplex_row, Rational::one());
    for i in 0..m {
        if sets.slack_rows[i] {
            let mut row = zeros(m + 2);
            row[i] = Rational::one();
            sys.add_eq(row, Rational::zero());
        } else {
            sys.add_nonneg(i);
        }
    }
    sys
}

/// Where the linear piece with the given labels ends in the chosen
/// direction, together with an optimal point there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reach {
    At { lambda: Rational, x: Vec<Rational>, value: Rational },
    Unbounded,
}

pub fn breakpoint_lp(ctx: &ParamContext, sets: &TrueSets, sense: Sense) -> Reach {
    let m = ctx.rows();
    let sys = face_system(ctx, sets);
    let mut obj = zeros(m + 2);
    obj[m + 1] = Rational::one();
    match sys.optimize(&obj, sense) {
        LpOutcome::Optimal(s) => Reach::At {
            lambda: s.primal[m + 1].clone(),
            x: s.primal[..m].to_vec(),
            value: s.primal[m].clone(),
        },
        LpOutcome::Unbounded => Reach::Unbounded,
        LpOutcome::Infeasible => unreachable!("labeled faces contain the optimum they came from"),
    }
}

/// The crossing set of a kink's face in strategy space: optimal strategies
/// at the pinned `lambda` that also satisfy `a . x = lambda`. Vertices of
/// this system are the extreme equilibrium strategies of the kink's maximal
/// Nash subset.
pub fn x_breakpoint_system(
    ctx: &ParamContext,
    sets: &TrueSets,
    lambda: &Rational,
    value: &Rational,
) -> LinearSystem {
    let (m, n) = (ctx.rows(), ctx.cols());
    let mut sys = LinearSystem::new(m);
    for j in 0..n {
        let row: Vec<Rational> = (0..m).map(|i| ctx.payoff.at(i, j).clone()).collect();
        let rhs = lambda * &ctx.col_factor[j] - value;
        if sets.support_cols[j] {
            sys.add_eq(row, rhs);
        } else {
            sys.add_ge(row, rhs);
        }
    }
    sys.add_eq(ctx.row_factor.to_vec(), lambda.clone());
    sys.add_eq(ones(m), Rational::one());
    for i in 0..m {
        if sets.slack_rows[i] {
            let mut row = zeros(m);
            row[i] = Rational::one();
            sys.add_eq(row, Rational::zero());
        } else {
            sys.add_nonneg(i);
        }
    }
    sys
}

/// The crossing set of a linear piece's face in strategy space. On the
/// piece, `value = slope * lambda + intercept`, and the crossing condition
/// substitutes `lambda = a . x`, leaving a system purely in `x`; its
/// vertices are the extreme equilibrium strategies of the piece's maximal
/// Nash subset, and `a . x` ranges over the subset's parameter interval.
pub fn x_interval_system(
    ctx: &ParamContext,
    sets: &TrueSets,
    slope: &Rational,
    intercept: &Rational,
) -> LinearSystem {
    let (m, n) = (ctx.rows(), ctx.cols());
    let mut sys = LinearSystem::new(m);
    for j in 0..n {
        let weight = slope - &ctx.col_factor[j];
        let row: Vec<Rational> = (0..m)
            .map(|i| ctx.payoff.at(i, j) + &weight * &ctx.row_factor[i])
            .collect();
        let rhs = -intercept;
        if sets.support_cols[j] {
            sys.add_eq(row, rhs);
        } else {
            sys.add_ge(row, rhs);
        }
    }
    sys.add_eq(ones(m), Rational::one());
    for i in 0..m {
        if sets.slack_rows[i] {
            let mut row = zeros(m);
            row[i] = Rational::one();
            sys.add_eq(row, Rational::zero());
        } else {
            sys.add_nonneg(i);
        }
    }
    sys
}

/// A maximal interval on which `value` is linear, clamped to the walked
/// window, with the labels of the face it lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub lo: Rational,
    pub hi: Rational,
    pub slope: Rational,
    pub intercept: Rational,
    pub sets: TrueSets,
}

/// A kink of `value`: the one-sided slopes differ. Carries the labels of
/// the full optimal dual face at the kink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakpoint {
    pub lambda: Rational,
    pub value: Rational,
    pub slope_before: Rational,
    pub slope_after: Rational,
    pub sets: TrueSets,
}

/// The value function over a window: contiguous linear segments in
/// ascending order and the kinks between them (kinks at the window's ends
/// included when they are genuine).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueCurve {
    pub lo: Rational,
    pub hi: Rational,
    pub breakpoints: Vec<Breakpoint>,
    pub segments: Vec<Segment>,
}

impl ValueCurve {
    /// Evaluate the value function inside the window.
    pub fn value_at(&self, lambda: &Rational) -> Option<Rational> {
        for seg in &self.segments {
            if seg.lo <= *lambda && *lambda <= seg.hi {
                return Some(&seg.slope * lambda + &seg.intercept);
            }
        }
        self.breakpoints
            .iter()
            .find(|bp| bp.lambda == *lambda)
            .map(|bp| bp.value.clone())
    }

    pub fn breakpoint_lambdas(&self) -> Vec<Rational> {
        self.breakpoints.iter().map(|bp| bp.lambda.clone()).collect()
    }

    fn check_shape(&self) {
        for pair in self.segments.windows(2) {
            assert!(pair[0].hi == pair[1].lo, "segments must be contiguous");
            assert!(pair[0].slope < pair[1].slope, "slopes must strictly increase");
            let left = &pair[0].slope * &pair[0].hi + &pair[0].intercept;
            let right = &pair[1].slope * &pair[1].lo + &pair[1].intercept;
            assert!(left == right, "the value function is continuous");
        }
        for pair in self.breakpoints.windows(2) {
            assert!(pair[0].lambda < pair[1].lambda, "kinks must strictly increase");
        }
        for bp in &self.breakpoints {
            assert!(bp.slope_before < bp.slope_after, "a kink changes slope");
        }
    }
}

/// Walk the value function across `[lo, hi]`: repeatedly take the face of
/// the piece to the right, ride it to its end, record the kink there, and
/// continue, clamping at the window's edges.
pub fn walk(ctx: &ParamContext, lo: &Rational, hi: &Rational) -> ValueCurve {
    assert!(lo <= hi, "walk needs an ordered window");
    let mut breakpoints = Vec::new();
    let mut segments = Vec::new();

    let start = solve_primal(ctx, lo);
    let mut lambda = lo.clone();
    let mut value = start.value.clone();
    let (sl_min, _) = slope_lp(ctx, &lambda, &value, Sense::Minimize);
    let (mut slope, _) = slope_lp(ctx, &lambda, &value, Sense::Maximize);
    if sl_min < slope {
        breakpoints.push(Breakpoint {
            lambda: lambda.clone(),
            value: value.clone(),
            slope_before: sl_min.clone(),
            slope_after: slope.clone(),
            sets: true_inequalities(ctx, &lambda, &value),
        });
    }
    if lo == hi {
        if sl_min == slope {
            let sets = interval_true_inequalities(ctx, lo, &value, &slope);
            let intercept = &value - &slope * lo;
            segments.push(Segment { lo: lo.clone(), hi: hi.clone(), slope, intercept, sets });
        }
        let curve =
            ValueCurve { lo: lo.clone(), hi: hi.clone(), breakpoints, segments };
        curve.check_shape();
        return curve;
    }

    let mut guard = 0u32;
    loop {
        guard += 1;
        assert!(guard <= 10_000, "value functions have finitely many pieces");
        let sets = interval_true_inequalities(ctx, &lambda, &value, &slope);
        let intercept = &value - &slope * &lambda;
        let reach = breakpoint_lp(ctx, &sets, Sense::Maximize);
        let next = match reach {
            Reach::Unbounded => None,
            Reach::At { lambda: l, .. } => Some(l),
        };
        match next {
            Some(next) if next < *hi => {
                debug_assert!(next > lambda, "pieces have positive length");
                segments.push(Segment {
                    lo: lambda.clone(),
                    hi: next.clone(),
                    slope: slope.clone(),
                    intercept: intercept.clone(),
                    sets,
                });
                let next_value = &slope * &next + &intercept;
                let (before, _) = slope_lp(ctx, &next, &next_value, Sense::Minimize);
                let (after, _) = slope_lp(ctx, &next, &next_value, Sense::Maximize);
                debug_assert!(before == slope, "the left slope matches the piece just walked");
                debug_assert!(after > slope, "the face's end is a kink");
                breakpoints.push(Breakpoint {
                    lambda: next.clone(),
                    value: next_value.clone(),
                    slope_before: before,
                    slope_after: after.clone(),
                    sets: true_inequalities(ctx, &next, &next_value),
                });
                lambda = next;
                value = next_value;
                slope = after;
            }
            reached => {
                // the piece covers the rest of the window
                segments.push(Segment {
                    lo: lambda.clone(),
                    hi: hi.clone(),
                    slope: slope.clone(),
                    intercept: intercept.clone(),
                    sets,
                });
                if reached == Some(hi.clone()) {
                    // the face ends exactly at the window's edge; the edge
                    // may be a kink of the unclamped value function
                    let hi_value = &slope * hi + &intercept;
                    let (before, _) = slope_lp(ctx, hi, &hi_value, Sense::Minimize);
                    let (after, _) = slope_lp(ctx, hi, &hi_value, Sense::Maximize);
                    if before < after {
                        breakpoints.push(Breakpoint {
                            lambda: hi.clone(),
                            value: hi_value,
                            slope_before: before,
                            slope_after: after,
                            sets: true_inequalities(ctx, hi, &(&slope * hi + &intercept)),
                        });
                    }
                }
                break;
            }
        }
    }

    let curve = ValueCurve { lo: lo.clone(), hi: hi.clone(), breakpoints, segments };
    curve.check_shape();
    curve
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Game, RankOneGame};
    use crate::matrix::RatMatrix;
    use crate::rational::{int, rat, vec_sum};
    use proptest::prelude::*;

    /// The 2x2 coordination-vs-matching game used throughout: A = I,
    /// factors a = (2, -1), b = (1, -1). Its value function is
    /// -lambda - 1, then -1/2, then lambda - 1, with kinks at -1/2 and 1/2.
    fn running_example() -> ParamContext {
        let a = RatMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        let b = RatMatrix::from_ints(&[&[1, -2], &[-1, 0]]);
        let g = RankOneGame::from_game(Game::new(a, b).unwrap()).unwrap();
        ParamContext::new(&g)
    }

    #[test]
    fn context_reads_factors() {
        let ctx = running_example();
        assert_eq!(ctx.row_factor(), &[int(2), int(-1)]);
        assert_eq!(ctx.col_factor(), &[int(1), int(-1)]);
        assert_eq!(ctx.lambda_window(), (int(-1), int(2)));
        assert_eq!(ctx.lambda_of(&[rat(1, 4), rat(3, 4)]), rat(-1, 4));
    }

    #[test]
    fn primal_solve_at_quarter() {
        let ctx = running_example();
        let p = solve_primal(&ctx, &rat(-1, 4));
        assert_eq!(p.value, rat(-1, 2));
        assert_eq!(p.x, vec![rat(1, 4), rat(3, 4)]);
        assert_eq!(p.y, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(p.dual_offset, rat(-1, 2));
        assert_eq!(p.surplus, vec![int(0), int(0)]);
    }

    #[test]
    fn value_samples_match_the_three_pieces() {
        let ctx = running_example();
        for (lambda, expect) in [
            (int(-1), int(0)),
            (rat(-1, 2), rat(-1, 2)),
            (int(0), rat(-1, 2)),
            (rat(1, 2), rat(-1, 2)),
            (int(1), int(0)),
            (int(2), int(1)),
        ] {
            assert_eq!(solve_primal(&ctx, &lambda).value, expect, "at {lambda}");
        }
    }

    #[test]
    fn true_sets_on_the_flat_piece() {
        let ctx = running_example();
        let sets = true_inequalities(&ctx, &rat(-1, 4), &rat(-1, 2));
        assert_eq!(sets.slack_rows, vec![false, false]);
        assert_eq!(sets.support_cols, vec![true, true]);
        assert_eq!(sets.y_witness, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn true_sets_on_the_rising_piece() {
        let ctx = running_example();
        // value(2) = 1; the optimal dual face is the single point y = (1, 0)
        let sets = true_inequalities(&ctx, &int(2), &int(1));
        assert_eq!(sets.slack_rows, vec![false, true]);
        assert_eq!(sets.support_cols, vec![true, false]);
        assert_eq!(sets.y_witness, vec![int(1), int(0)]);
    }

    #[test]
    fn slopes_split_at_a_kink() {
        let ctx = running_example();
        let (lo, y_lo) = slope_lp(&ctx, &rat(1, 2), &rat(-1, 2), Sense::Minimize);
        let (hi, y_hi) = slope_lp(&ctx, &rat(1, 2), &rat(-1, 2), Sense::Maximize);
        assert_eq!(lo, int(0));
        assert_eq!(hi, int(1));
        assert_eq!(y_lo, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(y_hi, vec![int(1), int(0)]);
    }

    #[test]
    fn reach_finds_both_ends_of_the_flat_piece() {
        let ctx = running_example();
        let sets = interval_true_inequalities(&ctx, &int(0), &rat(-1, 2), &int(0));
        match breakpoint_lp(&ctx, &sets, Sense::Maximize) {
            Reach::At { lambda, value, .. } => {
                assert_eq!(lambda, rat(1, 2));
                assert_eq!(value, rat(-1, 2));
            }
            Reach::Unbounded => panic!("the flat piece ends"),
        }
        match breakpoint_lp(&ctx, &sets, Sense::Minimize) {
            Reach::At { lambda, .. } => assert_eq!(lambda, rat(-1, 2)),
            Reach::Unbounded => panic!("the flat piece starts"),
        }
    }

    #[test]
    fn walk_collects_pieces_and_kinks() {
        let ctx = running_example();
        let (lo, hi) = ctx.lambda_window();
        let curve = walk(&ctx, &lo, &hi);
        assert_eq!(curve.breakpoint_lambdas(), vec![rat(-1, 2), rat(1, 2)]);
        assert_eq!(curve.segments.len(), 3);
        let slopes: Vec<_> = curve.segments.iter().map(|s| s.slope.clone()).collect();
        assert_eq!(slopes, vec![int(-1), int(0), int(1)]);
        assert_eq!(curve.value_at(&int(-1)), Some(int(0)));
        assert_eq!(curve.value_at(&int(0)), Some(rat(-1, 2)));
        assert_eq!(curve.value_at(&int(1)), Some(int(0)));
        assert_eq!(curve.value_at(&int(2)), Some(int(1)));
        assert_eq!(curve.value_at(&int(3)), None);
    }

    #[test]
    fn walk_on_a_single_point_window() {
        // the all-zero game: every profile is an equilibrium; the window
        // collapses to one flat point
        let a = RatMatrix::zero(2, 2);
        let g = RankOneGame::from_game(Game::new(a.clone(), a).unwrap()).unwrap();
        let ctx = ParamContext::new(&g);
        let (lo, hi) = ctx.lambda_window();
        assert_eq!((lo.clone(), hi.clone()), (int(0), int(0)));
        let curve = walk(&ctx, &lo, &hi);
        assert!(curve.breakpoints.is_empty());
        assert_eq!(curve.segments.len(), 1);
        let seg = &curve.segments[0];
        assert_eq!((seg.lo.clone(), seg.hi.clone()), (int(0), int(0)));
        assert_eq!(seg.sets.slack_rows, vec![false, false]);
        assert_eq!(seg.sets.support_cols, vec![true, true]);
    }

    #[test]
    fn crossing_systems_recover_known_equilibria() {
        let ctx = running_example();
        // flat piece: slope 0, intercept -1/2, both columns supported
        let sets = interval_true_inequalities(&ctx, &int(0), &rat(-1, 2), &int(0));
        let sys = x_interval_system(&ctx, &sets, &int(0), &rat(-1, 2));
        assert_eq!(sys.vertices(), vec![vec![rat(1, 4), rat(3, 4)]]);
        // rising piece: slope 1, intercept -1; crossing pins x = (1, 0)
        let sets = interval_true_inequalities(&ctx, &int(1), &int(0), &int(1));
        let sys = x_interval_system(&ctx, &sets, &int(1), &int(-1));
        assert_eq!(sys.vertices(), vec![vec![int(1), int(0)]]);
        // the kink at -1/2 has no crossing: a . x = -1/2 is unreachable on
        // its face, which forces x = (0, 1) with a . x = -1
        let sets = true_inequalities(&ctx, &rat(-1, 2), &rat(-1, 2));
        let sys = x_breakpoint_system(&ctx, &sets, &rat(-1, 2), &rat(-1, 2));
        assert!(sys.vertices().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Random small rank-1 sums: the value function is convex, the walk
        /// agrees with fresh solves everywhere, and surpluses certify
        /// feasibility.
        #[test]
        fn walk_matches_pointwise_solves(
            entries in prop::collection::vec(-3i64..=3, 4),
            left in prop::collection::vec(-2i64..=2, 2),
            right in prop::collection::vec(-2i64..=2, 2),
            picks in prop::collection::vec(0u8..=8, 3),
        ) {
            let payoff = RatMatrix::from_rows(vec![
                vec![int(entries[0]), int(entries[1])],
                vec![int(entries[2]), int(entries[3])],
            ]).unwrap();
            let a: Vec<_> = left.iter().map(|&v| int(v)).collect();
            let b: Vec<_> = right.iter().map(|&v| int(v)).collect();
            let g = RankOneGame::from_parts(payoff, a, b).unwrap();
            let ctx = ParamContext::new(&g);
            let (lo, hi) = ctx.lambda_window();
            let curve = walk(&ctx, &lo, &hi);
            let width = &hi - &lo;
            for &p in &picks {
                let lambda = &lo + &width * rat(p as i64, 8);
                let direct = solve_primal(&ctx, &lambda);
                prop_assert_eq!(curve.value_at(&lambda).unwrap(), direct.value.clone());
                prop_assert!(vec_sum(&direct.surplus) >= int(0));
            }
            // convexity at the window's midpoint
            let mid = (&lo + &hi) / int(2);
            let ends = solve_primal(&ctx, &lo).value + solve_primal(&ctx, &hi).value;
            prop_assert!(solve_primal(&ctx, &mid).value * int(2) <= ends);
        }
    }
}
