//! Exact equilibrium verification and brute-force reference enumeration.
//!
//! `best_response_cert` compares each player's realized payoff with the best
//! pure deviation; equality on both sides is the equilibrium condition.
//! `support_enumeration` walks every support pair and collects all extreme
//! equilibria of a small game — the slow, independent reference against
//! which the structured solvers are checked. `is_degenerate` inspects the
//! vertices of both best-response polyhedra for excess labels.

use crate::game::{Game, MixedProfile};
use crate::matrix::{solve_linear, RatMatrix, SolveOutcome};
use crate::polytope::LinearSystem;
use crate::rational::{dot, ones, zeros, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

/// Realized payoffs of a profile next to the best replies against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponseCert {
    pub row_payoff: Rational,
    pub col_payoff: Rational,
    pub row_best: Rational,
    pub col_best: Rational,
}

impl BestResponseCert {
    pub fn is_equilibrium(&self) -> bool {
        self.row_payoff == self.row_best && self.col_payoff == self.col_best
    }

    /// Total incentive to deviate; nonnegative, zero exactly at equilibria.
    pub fn gap(&self) -> Rational {
        &self.row_best - &self.row_payoff + &self.col_best - &self.col_payoff
    }
}

pub fn best_response_cert(game: &Game, profile: &MixedProfile) -> BestResponseCert {
    let (x, y) = (profile.x(), profile.y());
    let ay = game.a.mul_vec(y);
    let btx = game.b.tr_mul_vec(x);
    let row_payoff = dot(x, &ay);
    let col_payoff = dot(y, &btx);
    let row_best = ay.iter().max().expect("games have rows").clone();
    let col_best = btx.iter().max().expect("games have columns").clone();
    debug_assert!(row_payoff <= row_best && col_payoff <= col_best);
    BestResponseCert { row_payoff, col_payoff, row_best, col_best }
}

pub fn is_nash(game: &Game, profile: &MixedProfile) -> bool {
    best_response_cert(game, profile).is_equilibrium()
}

/// Both players' total incentive to deviate from the profile.
pub fn equilibrium_gap(game: &Game, profile: &MixedProfile) -> Rational {
    best_response_cert(game, profile).gap()
}

/// The bilinear optimality gap xᵀ(A+B)y − u − v, where u and v are the best
/// reply payoffs against y and x. Always ≤ 0, and zero exactly at
/// equilibria — the objective view of equilibrium as a quadratic program.
pub fn bilinear_gap(game: &Game, profile: &MixedProfile) -> Rational {
    let cert = best_response_cert(game, profile);
    let gap = &cert.row_payoff + &cert.col_payoff - &cert.row_best - &cert.col_best;
    debug_assert!(!gap.is_positive());
    gap
}

/// Three equivalent views of the same equilibrium question for a game
/// assembled as (A, C + left·rightᵀ), evaluated at the parameter
/// λ = leftᵀx pinned by the profile:
/// (a) is the profile an equilibrium of (A, C + left·rightᵀ)?
/// (b) of (A, C + 1λ·rightᵀ), where the rank-one part is flattened to a
///     constant row multiple?
/// (c) of (A − 1λ·rightᵀ, C + 1λ·rightᵀ), the payoff-sum-reduced pair?
/// The three answers always agree; disagreement would falsify the
/// reduction the solvers are built on, so the triple is exposed for
/// property tests rather than collapsed to one boolean.
pub fn shift_equivalence(
    a: &RatMatrix,
    c: &RatMatrix,
    left: &[Rational],
    right: &[Rational],
    profile: &MixedProfile,
) -> (bool, bool, bool) {
    let lambda = dot(profile.x(), left);
    let full = c
        .add(&RatMatrix::outer(left, right))
        .expect("factor lengths match the matrix");
    let flat_shift = RatMatrix::outer(&ones(a.rows()), &crate::rational::vec_scale(&lambda, right));
    let flattened = c.add(&flat_shift).expect("shapes agree");
    let reduced_a = a.sub(&flat_shift).expect("shapes agree");
    let direct = is_nash(&Game::new(a.clone(), full).unwrap(), profile);
    let flat = is_nash(&Game::new(a.clone(), flattened.clone()).unwrap(), profile);
    let reduced = is_nash(&Game::new(reduced_a, flattened).unwrap(), profile);
    (direct, flat, reduced)
}

pub const DEFAULT_SUPPORT_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("game is {rows}x{cols}; support enumeration is capped at {limit}x{limit}")]
    LimitExceeded { rows: usize, cols: usize, limit: usize },
}

/// All extreme equilibria of a small game, by exhaustive support pairs.
///
/// For each pair `(S, T)` of candidate supports, the strategies making every
/// column of `T` a best reply while playing inside `S` form a polytope, as
/// do the mirror strategies for the other player; every vertex pair of the
/// two polytopes is an equilibrium, and over all support pairs these vertex
/// pairs are exactly the extreme equilibria. Square support pairs go through
/// a direct linear solve when it pins the strategy uniquely.
pub fn support_enumeration(game: &Game) -> Result<Vec<MixedProfile>, EnumError> {
    support_enumeration_with_limit(game, DEFAULT_SUPPORT_LIMIT)
}

pub fn support_enumeration_with_limit(
    game: &Game,
    limit: usize,
) -> Result<Vec<MixedProfile>, EnumError> {
    let (m, n) = (game.rows(), game.cols());
    if m > limit || n > limit {
        return Err(EnumError::LimitExceeded { rows: m, cols: n, limit });
    }
    let mut found: BTreeSet<MixedProfile> = BTreeSet::new();
    for s_mask in 1u32..(1 << m) {
        let s: Vec<usize> = (0..m).filter(|i| s_mask & (1 << i) != 0).collect();
        for t_mask in 1u32..(1 << n) {
            let t: Vec<usize> = (0..n).filter(|j| t_mask & (1 << j) != 0).collect();
            let xs = tight_strategies(&game.b.transpose(), m, &s, &t);
            if xs.is_empty() {
                continue;
            }
            let ys = tight_strategies(&game.a, n, &t, &s);
            for x in &xs {
                for y in &ys {
                    let profile = MixedProfile::new(x.clone(), y.clone())
                        .expect("enumerated strategies are stochastic");
                    debug_assert!(is_nash(game, &profile));
                    found.insert(profile);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Vertices of `{z in the simplex : supp(z) inside own, every index in
/// tight is a best reply under payoff^T z, nothing beats them}`. `payoff`
/// maps z-space to reply-space (so pass `B^T` for the row player's side and
/// `A` for the column player's side).
fn tight_strategies(
    payoff: &RatMatrix,
    dim: usize,
    own: &[usize],
    tight: &[usize],
) -> Vec<Vec<Rational>> {
    debug_assert_eq!(payoff.cols(), dim);
    if own.len() == tight.len() {
        // square case: tightness plus the simplex often pin z outright
        match square_solve(payoff, dim, own, tight) {
            SquareOutcome::Point(z) => return vec![z],
            SquareOutcome::Empty => return Vec::new(),
            SquareOutcome::Underdetermined => {}
        }
    }
    let replies = payoff.rows();
    // variables: z, then the common reply payoff
    let mut sys = LinearSystem::new(dim + 1);
    for r in 0..replies {
        let mut row: Vec<Rational> = payoff.row(r).to_vec();
        row.push(-Rational::one());
        if tight.contains(&r) {
            sys.add_eq(row, Rational::zero());
        } else {
            sys.add_le(row, Rational::zero());
        }
    }
    let mut simplex_row = ones(dim);
    simplex_row.push(Rational::zero());
    sys.add_eq(simplex_row, Rational::one());
    for i in 0..dim {
        if own.contains(&i) {
            sys.add_nonneg(i);
        } else {
            let mut row = zeros(dim + 1);
            row[i] = Rational::one();
            sys.add_eq(row, Rational::zero());
        }
    }
    sys.vertices().into_iter().map(|v| v[..dim].to_vec()).collect()
}

enum SquareOutcome {
    Point(Vec<Rational>),
    Empty,
    Underdetermined,
}

fn square_solve(
    payoff: &RatMatrix,
    dim: usize,
    own: &[usize],
    tight: &[usize],
) -> SquareOutcome {
    // unknowns: z_i for i in own, then the common reply payoff
    let k = own.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(k + 1);
    let mut rhs: Vec<Rational> = Vec::with_capacity(k + 1);
    for &r in tight {
        let mut row: Vec<Rational> = own.iter().map(|&i| payoff.at(r, i).clone()).collect();
        row.push(-Rational::one());
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut simplex_row = ones(k);
    simplex_row.push(Rational::zero());
    rows.push(simplex_row);
    rhs.push(Rational::one());
    match solve_linear(&rows, &rhs) {
        SolveOutcome::Unique(sol) => {
            let mut z = zeros(dim);
            for (pos, &i) in own.iter().enumerate() {
                if sol[pos].is_negative() {
                    return SquareOutcome::Empty;
                }
                z[i] = sol[pos].clone();
            }
            let u = &sol[k];
            let replies = payoff.mul_vec(&z);
            for (r, p) in replies.iter().enumerate() {
                let ok = if tight.contains(&r) { p == u } else { p <= u };
                if !ok {
                    return SquareOutcome::Empty;
                }
            }
            SquareOutcome::Point(z)
        }
        SolveOutcome::Inconsistent => SquareOutcome::Empty,
        SolveOutcome::Underdetermined => SquareOutcome::Underdetermined,
    }
}

/// Best-reply polyhedron of the player choosing `z` against `payoff^T z`:
/// `{(z, u) : (payoff^T z)_r <= u, z in the simplex}`.
fn reply_polyhedron(payoff: &RatMatrix, dim: usize) -> LinearSystem {
    debug_assert_eq!(payoff.cols(), dim);
    let mut sys = LinearSystem::new(dim + 1);
    for r in 0..payoff.rows() {
        let mut row: Vec<Rational> = payoff.row(r).to_vec();
        row.push(-Rational::one());
        sys.add_le(row, Rational::zero());
    }
    let mut simplex_row = ones(dim);
    simplex_row.push(Rational::zero());
    sys.add_eq(simplex_row, Rational::one());
    for i in 0..dim {
        sys.add_nonneg(i);
    }
    sys
}

/// A game is degenerate when some mixed strategy has more pure best replies
/// than its support size; if any strategy does, a vertex of the
/// corresponding best-reply polyhedron does.
pub fn is_degenerate(game: &Game) -> bool {
    let (m, n) = (game.rows(), game.cols());
    let sides: [(RatMatrix, usize, usize); 2] =
        [(game.b.transpose(), m, m), (game.a.clone(), n, n)];
    for (payoff, dim, budget) in &sides {
        let sys = reply_polyhedron(payoff, *dim);
        for vertex in sys.vertices() {
            let z = &vertex[..*dim];
            let u = &vertex[*dim];
            let zero_count = z.iter().filter(|c| c.is_zero()).count();
            let tight_count =
                payoff.mul_vec(z).iter().filter(|p| *p == u).count();
            if zero_count + tight_count > *budget {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn running_example() -> Game {
        Game::new(
            RatMatrix::from_ints(&[&[1, 0], &[0, 1]]),
            RatMatrix::from_ints(&[&[1, -2], &[-1, 0]]),
        )
        .unwrap()
    }

    fn profile(x: Vec<Rational>, y: Vec<Rational>) -> MixedProfile {
        MixedProfile::new(x, y).unwrap()
    }

    #[test]
    fn certificates_on_the_running_example() {
        let g = running_example();
        for (x, y) in [
            (vec![int(1), int(0)], vec![int(1), int(0)]),
            (vec![int(0), int(1)], vec![int(0), int(1)]),
            (vec![rat(1, 4), rat(3, 4)], vec![rat(1, 2), rat(1, 2)]),
        ] {
            let p = profile(x, y);
            assert!(is_nash(&g, &p));
            assert_eq!(equilibrium_gap(&g, &p), int(0));
        }
        let off = profile(vec![int(1), int(0)], vec![int(0), int(1)]);
        assert!(!is_nash(&g, &off));
        assert!(equilibrium_gap(&g, &off).is_positive());
        let cert = best_response_cert(&g, &off);
        assert_eq!(cert.row_payoff, int(0));
        assert_eq!(cert.row_best, int(1));
    }

    #[test]
    fn pure_equilibrium_survives_outside_rank_one() {
        // a game whose payoff sum has rank 2: verification is rank-agnostic
        let g = Game::new(
            RatMatrix::from_ints(&[&[1, -1], &[0, 0]]),
            RatMatrix::from_ints(&[&[1, 0], &[2, 0]]),
        )
        .unwrap();
        assert!(is_nash(&g, &profile(vec![int(1), int(0)], vec![int(1), int(0)])));
        assert!(!is_nash(&g, &profile(vec![int(0), int(1)], vec![int(0), int(1)])));
    }

    #[test]
    fn support_enumeration_finds_exactly_three() {
        let g = running_example();
        let eqs = support_enumeration(&g).unwrap();
        let expect = vec![
            profile(vec![int(0), int(1)], vec![int(0), int(1)]),
            profile(vec![rat(1, 4), rat(3, 4)], vec![rat(1, 2), rat(1, 2)]),
            profile(vec![int(1), int(0)], vec![int(1), int(0)]),
        ];
        assert_eq!(eqs, expect);
    }

    #[test]
    fn support_enumeration_on_matching_pennies() {
        let a = RatMatrix::from_ints(&[&[1, -1], &[-1, 1]]);
        let g = Game::new(a.clone(), a.neg()).unwrap();
        let eqs = support_enumeration(&g).unwrap();
        assert_eq!(
            eqs,
            vec![profile(vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)])]
        );
    }

    #[test]
    fn zero_game_has_pure_extremes() {
        let z = RatMatrix::zero(2, 2);
        let g = Game::new(z.clone(), z).unwrap();
        let eqs = support_enumeration(&g).unwrap();
        assert_eq!(eqs.len(), 4);
        assert!(eqs.iter().all(|p| {
            p.x().iter().all(|c| c.is_zero() || c.is_one())
                && p.y().iter().all(|c| c.is_zero() || c.is_one())
        }));
    }

    #[test]
    fn limit_is_enforced() {
        let z = RatMatrix::zero(6, 2);
        let g = Game::new(z.clone(), RatMatrix::zero(6, 2)).unwrap();
        assert_eq!(
            support_enumeration(&g),
            Err(EnumError::LimitExceeded { rows: 6, cols: 2, limit: 5 })
        );
        assert!(support_enumeration_with_limit(&g, 6).is_ok());
    }

    #[test]
    fn degeneracy_detection() {
        assert!(!is_degenerate(&running_example()));
        let z = RatMatrix::zero(2, 2);
        assert!(is_degenerate(&Game::new(z.clone(), z).unwrap()));
        // duplicated best column: x = (1,0) has two best replies, support 1
        let g = Game::new(
            RatMatrix::from_ints(&[&[1, 0], &[0, 1]]),
            RatMatrix::from_ints(&[&[1, 1], &[0, 0]]),
        )
        .unwrap();
        assert!(is_degenerate(&g));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Every profile reported by exhaustive support enumeration passes
        /// the independent best-response check, and the gap statistic is
        /// nonnegative everywhere, vanishing exactly on equilibria.
        #[test]
        fn enumerated_profiles_are_equilibria(
            a in prop::collection::vec(-3i64..=3, 4),
            b in prop::collection::vec(-3i64..=3, 4),
            xw in 0u8..=4,
            yw in 0u8..=4,
        ) {
            let g = Game::new(
                RatMatrix::from_rows(vec![
                    vec![int(a[0]), int(a[1])],
                    vec![int(a[2]), int(a[3])],
                ]).unwrap(),
                RatMatrix::from_rows(vec![
                    vec![int(b[0]), int(b[1])],
                    vec![int(b[2]), int(b[3])],
                ]).unwrap(),
            ).unwrap();
            let eqs = support_enumeration(&g).unwrap();
            prop_assert!(!eqs.is_empty(), "finite games have equilibria");
            for p in &eqs {
                prop_assert!(is_nash(&g, p));
                prop_assert_eq!(equilibrium_gap(&g, p), int(0));
            }
            let x = vec![rat(xw as i64, 4), rat(4 - xw as i64, 4)];
            let y = vec![rat(yw as i64, 4), rat(4 - yw as i64, 4)];
            let p = profile(x, y);
            let gap = equilibrium_gap(&g, &p);
            prop_assert!(!gap.is_negative());
            prop_assert_eq!(gap.is_zero(), is_nash(&g, &p));
        }
    }

    #[test]
    fn bilinear_gap_vanishes_exactly_at_equilibria() {
        let g = running_example();
        for p in support_enumeration(&g).unwrap() {
            assert!(bilinear_gap(&g, &p).is_zero());
        }
        // off-equilibrium the gap is strictly negative: with x = e1, y = e2
        // the row player forgoes 1 and the column player forgoes 3
        let p = profile(vec![int(1), int(0)], vec![int(0), int(1)]);
        assert_eq!(bilinear_gap(&g, &p), int(-4));
        assert_eq!(bilinear_gap(&g, &p), -equilibrium_gap(&g, &p));

        // zero-sum pair at a non-equilibrium
        let a = RatMatrix::from_ints(&[&[1, -1], &[-1, 1]]);
        let z = Game::new(a.clone(), a.neg()).unwrap();
        let p = profile(vec![int(1), int(0)], vec![int(1), int(0)]);
        assert!(bilinear_gap(&z, &p).is_negative());
    }

    #[test]
    fn shift_equivalence_triple_on_the_running_example() {
        let g = running_example();
        let c = g.a.neg();
        let left = vec![int(2), int(-1)];
        let right = vec![int(1), int(-1)];
        let mixed = profile(
            vec![rat(1, 4), rat(3, 4)],
            vec![rat(1, 2), rat(1, 2)],
        );
        assert_eq!(
            shift_equivalence(&g.a, &c, &left, &right, &mixed),
            (true, true, true)
        );
        let wrong = profile(vec![int(1), int(0)], vec![int(0), int(1)]);
        assert_eq!(
            shift_equivalence(&g.a, &c, &left, &right, &wrong),
            (false, false, false)
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// The three equilibrium views agree on arbitrary profiles, found
        /// equilibria report (true, true, true), and shifting the row
        /// matrix by column constants never changes the equilibrium
        /// property.
        #[test]
        fn equivalence_and_shift_invariance(
            c_entries in prop::collection::vec(-3i64..=3, 4),
            left in prop::collection::vec(-2i64..=2, 2),
            right in prop::collection::vec(-2i64..=2, 2),
            shift in prop::collection::vec(-3i64..=3, 2),
            xw in 0u8..=4,
            yw in 0u8..=4,
        ) {
            let a = RatMatrix::from_ints(&[&[1, 0], &[0, 1]]);
            let c = RatMatrix::from_rows(vec![
                vec![int(c_entries[0]), int(c_entries[1])],
                vec![int(c_entries[2]), int(c_entries[3])],
            ]).unwrap();
            let left: Vec<Rational> = left.iter().map(|&v| int(v)).collect();
            let right: Vec<Rational> = right.iter().map(|&v| int(v)).collect();
            let full = Game::new(a.clone(), c.add(&RatMatrix::outer(&left, &right)).unwrap()).unwrap();

            let p = profile(
                vec![rat(xw as i64, 4), rat(4 - xw as i64, 4)],
                vec![rat(yw as i64, 4), rat(4 - yw as i64, 4)],
            );
            let (direct, flat, reduced) = shift_equivalence(&a, &c, &left, &right, &p);
            prop_assert_eq!(direct, flat);
            prop_assert_eq!(flat, reduced);
            prop_assert_eq!(direct, is_nash(&full, &p));
            prop_assert_eq!(bilinear_gap(&full, &p).is_zero(), direct);

            for q in support_enumeration(&full).unwrap() {
                prop_assert_eq!(
                    shift_equivalence(&a, &c, &left, &right, &q),
                    (true, true, true)
                );
            }

            // column shifts of the row matrix are strategically neutral
            let shift: Vec<Rational> = shift.iter().map(|&v| int(v)).collect();
            let shifted = Game::new(
                crate::matrix::shift_columns(&full.a, &shift).unwrap(),
                full.b.clone(),
            ).unwrap();
            prop_assert_eq!(is_nash(&shifted, &p), is_nash(&full, &p));
        }
    }
}
