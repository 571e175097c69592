//! Complete enumeration of the maximal Nash subsets of a rank-1 game.
//!
//! The equilibrium set decomposes along the value function's structure over
//! the parameter window: each kink contributes the crossing set of its full
//! optimal face at one pinned parameter, and each linear piece contributes
//! the crossing set of its face with the parameter ranging over an interval.
//! Every such product of an `x`-polytope and a `y`-polytope that is nonempty
//! — and not already covered by the kink at its end — is a maximal Nash
//! subset, and together they cover the equilibrium set exactly. Subsets are
//! reported in ascending parameter order, kinks before the piece that
//! starts at them.

use crate::game::{MixedProfile, RankOneGame};
use crate::paramlp::{walk, x_breakpoint_system, x_interval_system, y_face_system, ParamContext, TrueSets};
use crate::polytope::LinearSystem;
use crate::rational::Rational;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetKind {
    /// Crossing set of a kink's face; the parameter is pinned.
    Breakpoint,
    /// Crossing set of a linear piece's face; the parameter spans an
    /// interval (possibly a single point strictly inside the piece).
    Interval,
}

/// A maximal Nash subset: the product of an `x`-polytope and a
/// `y`-polytope, every pair from which is an equilibrium. Vertices are
/// sorted; the extreme equilibria of the subset are exactly the vertex
/// pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashSubset {
    pub kind: SubsetKind,
    pub lambda_lo: Rational,
    pub lambda_hi: Rational,
    pub x_vertices: Vec<Vec<Rational>>,
    pub y_vertices: Vec<Vec<Rational>>,
    /// Face labels the subset was carved from.
    pub sets: TrueSets,
    pub x_system: LinearSystem,
    pub y_system: LinearSystem,
}

impl NashSubset {
    pub fn is_singleton(&self) -> bool {
        self.x_vertices.len() == 1 && self.y_vertices.len() == 1
    }

    /// Exact membership test for the whole product set, not just vertices.
    pub fn contains(&self, profile: &MixedProfile) -> bool {
        self.x_system.contains(profile.x()) && self.y_system.contains(profile.y())
    }

    /// All vertex pairs of the product, as profiles.
    pub fn extreme_profiles(&self) -> Vec<MixedProfile> {
        let mut out = Vec::with_capacity(self.x_vertices.len() * self.y_vertices.len());
        for x in &self.x_vertices {
            for y in &self.y_vertices {
                out.push(
                    MixedProfile::new(x.clone(), y.clone())
                        .expect("subset vertices are stochastic"),
                );
            }
        }
        out
    }
}

/// All maximal Nash subsets, in ascending parameter order (kinks before the
/// piece starting at them).
pub fn enumerate_all(game: &RankOneGame) -> Vec<NashSubset> {
    let ctx = ParamContext::new(game);
    let (lo, hi) = ctx.lambda_window();
    let curve = walk(&ctx, &lo, &hi);
    let kink_lambdas: BTreeSet<Rational> =
        curve.breakpoints.iter().map(|bp| bp.lambda.clone()).collect();

    // merge kinks and pieces into one ascending schedule; a kink precedes
    // the piece that starts at the same parameter
    let mut schedule: Vec<(Rational, u8, usize)> = Vec::new();
    for (i, bp) in curve.breakpoints.iter().enumerate() {
        schedule.push((bp.lambda.clone(), 0, i));
    }
    for (k, seg) in curve.segments.iter().enumerate() {
        schedule.push((seg.lo.clone(), 1, k));
    }
    schedule.sort();

    let mut out = Vec::new();
    for (_, which, idx) in schedule {
        if which == 0 {
            let bp = &curve.breakpoints[idx];
            let x_system = x_breakpoint_system(&ctx, &bp.sets, &bp.lambda, &bp.value);
            let x_vertices = x_system.vertices();
            if x_vertices.is_empty() {
                continue;
            }
            let y_system = y_face_system(&ctx, &bp.lambda, &bp.value, None);
            let y_vertices = y_system.vertices();
            out.push(NashSubset {
                kind: SubsetKind::Breakpoint,
                lambda_lo: bp.lambda.clone(),
                lambda_hi: bp.lambda.clone(),
                x_vertices,
                y_vertices,
                sets: bp.sets.clone(),
                x_system,
                y_system,
            });
        } else {
            let seg = &curve.segments[idx];
            let x_system = x_interval_system(&ctx, &seg.sets, &seg.slope, &seg.intercept);
            let x_vertices = x_system.vertices();
            if x_vertices.is_empty() {
                continue;
            }
            let lambdas: Vec<Rational> =
                x_vertices.iter().map(|x| ctx.lambda_of(x)).collect();
            let lambda_lo = lambdas.iter().min().unwrap().clone();
            let lambda_hi = lambdas.iter().max().unwrap().clone();
            debug_assert!(seg.lo <= lambda_lo && lambda_hi <= seg.hi);
            // a piece whose crossing collapses onto a kink at its end is
            // covered by that kink's larger subset
            if lambda_lo == lambda_hi && kink_lambdas.contains(&lambda_lo) {
                continue;
            }
            let value_lo = &seg.slope * &seg.lo + &seg.intercept;
            let y_system = y_face_system(&ctx, &seg.lo, &value_lo, Some(&seg.slope));
            let y_vertices = y_system.vertices();
            out.push(NashSubset {
                kind: SubsetKind::Interval,
                lambda_lo,
                lambda_hi,
                x_vertices,
                y_vertices,
                sets: seg.sets.clone(),
                x_system,
                y_system,
            });
        }
    }
    out
}

/// Every extreme equilibrium of the game: the union of all subsets' vertex
/// pairs, deduplicated and sorted.
pub fn extreme_equilibria(game: &RankOneGame) -> Vec<MixedProfile> {
    let mut found: BTreeSet<MixedProfile> = BTreeSet::new();
    for subset in enumerate_all(game) {
        found.extend(subset.extreme_profiles());
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;
    use crate::matrix::RatMatrix;
    use crate::rational::{int, rat};
    use crate::verify::{is_nash, support_enumeration};
    use proptest::prelude::*;

    fn running_example() -> RankOneGame {
        RankOneGame::from_game(
            Game::new(
                RatMatrix::from_ints(&[&[1, 0], &[0, 1]]),
                RatMatrix::from_ints(&[&[1, -2], &[-1, 0]]),
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn running_example_has_three_singletons() {
        let g = running_example();
        let subsets = enumerate_all(&g);
        assert_eq!(subsets.len(), 3);
        assert!(subsets.iter().all(|s| s.is_singleton()));
        let lambdas: Vec<_> = subsets.iter().map(|s| s.lambda_lo.clone()).collect();
        assert_eq!(lambdas, vec![int(-1), rat(-1, 4), int(2)]);
        assert_eq!(subsets[0].x_vertices, vec![vec![int(0), int(1)]]);
        assert_eq!(subsets[0].y_vertices, vec![vec![int(0), int(1)]]);
        assert_eq!(subsets[1].x_vertices, vec![vec![rat(1, 4), rat(3, 4)]]);
        assert_eq!(subsets[1].y_vertices, vec![vec![rat(1, 2), rat(1, 2)]]);
        assert_eq!(subsets[2].x_vertices, vec![vec![int(1), int(0)]]);
        assert_eq!(subsets[2].y_vertices, vec![vec![int(1), int(0)]]);
        for s in &subsets {
            assert_eq!(s.lambda_lo, s.lambda_hi);
            for p in s.extreme_profiles() {
                assert!(is_nash(g.game(), &p));
                assert!(s.contains(&p));
            }
        }
    }

    #[test]
    fn zero_game_is_one_big_subset() {
        let z = RatMatrix::zero(2, 2);
        let g = RankOneGame::from_game(Game::new(z.clone(), z).unwrap()).unwrap();
        let subsets = enumerate_all(&g);
        assert_eq!(subsets.len(), 1);
        let s = &subsets[0];
        assert_eq!(s.kind, SubsetKind::Interval);
        assert_eq!(s.x_vertices.len(), 2);
        assert_eq!(s.y_vertices.len(), 2);
        assert_eq!((s.lambda_lo.clone(), s.lambda_hi.clone()), (int(0), int(0)));
        assert_eq!(extreme_equilibria(&g).len(), 4);
    }

    #[test]
    fn growth_game_has_three_symmetric_equilibria() {
        let a = RatMatrix::from_ints(&[&[9, 54], &[0, 81]]);
        let g = RankOneGame::from_parts(a, vec![int(3), int(9)], vec![int(6), int(18)])
            .unwrap();
        let subsets = enumerate_all(&g);
        assert_eq!(subsets.len(), 3);
        assert!(subsets.iter().all(|s| s.is_singleton()));
        let lambdas: Vec<_> = subsets.iter().map(|s| s.lambda_lo.clone()).collect();
        assert_eq!(lambdas, vec![int(3), rat(9, 2), int(9)]);
        for s in &subsets {
            let p = &s.extreme_profiles()[0];
            assert!(is_nash(g.game(), p));
            assert_eq!(p.x(), p.y(), "the game is symmetric");
        }
    }

    #[test]
    fn enumeration_matches_the_exhaustive_reference() {
        let g = running_example();
        let ours = extreme_equilibria(&g);
        let reference = support_enumeration(g.game()).unwrap();
        assert_eq!(ours, reference);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        /// Dual-route check on random rank-1 games: the structured walk and
        /// brute-force support enumeration must produce identical extreme
        /// equilibria, and no reported subset may swallow another.
        #[test]
        fn matches_support_enumeration_on_random_games(
            entries in prop::collection::vec(-3i64..=3, 6),
            left in prop::collection::vec(-2i64..=2, 3),
            right in prop::collection::vec(-2i64..=2, 2),
        ) {
            let payoff = RatMatrix::from_rows(vec![
                vec![int(entries[0]), int(entries[1])],
                vec![int(entries[2]), int(entries[3])],
                vec![int(entries[4]), int(entries[5])],
            ]).unwrap();
            let a: Vec<_> = left.iter().map(|&v| int(v)).collect();
            let b: Vec<_> = right.iter().map(|&v| int(v)).collect();
            let g = RankOneGame::from_parts(payoff, a, b).unwrap();
            let ours = extreme_equilibria(&g);
            let reference = support_enumeration(g.game()).unwrap();
            prop_assert_eq!(&ours, &reference);
            let subsets = enumerate_all(&g);
            for s in &subsets {
                for p in s.extreme_profiles() {
                    prop_assert!(is_nash(g.game(), &p));
                }
            }
            for (i, si) in subsets.iter().enumerate() {
                for (j, sj) in subsets.iter().enumerate() {
                    if i == j { continue; }
                    let nested = si.x_vertices.iter().all(|x| sj.x_system.contains(x))
                        && si.y_vertices.iter().all(|y| sj.y_system.contains(y));
                    prop_assert!(!nested, "subset {} nests inside {}", i, j);
                }
            }
        }
    }
}
