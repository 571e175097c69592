//! Polyhedra given by exact linear constraints.
//!
//! `LinearSystem` collects `<=` rows and equality rows over a fixed variable
//! count. One auxiliary LP (`relative_interior`) settles feasibility and, for
//! every inequality row simultaneously, whether that row can be strict on the
//! feasible set; its solution doubles as a relative-interior point. From the
//! rows that can never be strict we get the affine hull, hence the set's
//! dimension, and `vertices` enumerates every vertex of a pointed system by
//! completing the hull with tight inequality rows.

use crate::lp::{LpOutcome, LpProblem, Relation, Sense};
use crate::matrix::{row_rank, solve_linear, SolveOutcome};
use crate::rational::{dot, zeros, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    nvars: usize,
    ineqs: Vec<(Vec<Rational>, Rational)>, // row . z <= rhs
    eqs: Vec<(Vec<Rational>, Rational)>,   // row . z == rhs
}

/// Output of the combined interiority solve: a relative-interior point, and
/// one flag per inequality row (in insertion order) telling whether that row
/// is strict somewhere on the feasible set. A row whose flag is false holds
/// with equality everywhere and so belongs to the affine hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorReport {
    pub point: Vec<Rational>,
    pub strict: Vec<bool>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        assert!(nvars > 0, "a linear system needs at least one variable");
        LinearSystem { nvars, ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_ineqs(&self) -> usize {
        self.ineqs.len()
    }

    pub fn num_eqs(&self) -> usize {
        self.eqs.len()
    }

    /// Add `row . z <= rhs`; returns the inequality's index.
    pub fn add_le(&mut self, row: Vec<Rational>, rhs: Rational) -> usize {
        assert_eq!(row.len(), self.nvars);
        self.ineqs.push((row, rhs));
        self.ineqs.len() - 1
    }

    /// Add `row . z >= rhs` (stored negated); returns the inequality's index.
    pub fn add_ge(&mut self, row: Vec<Rational>, rhs: Rational) -> usize {
        let neg: Vec<Rational> = row.iter().map(|e| -e).collect();
        self.add_le(neg, -rhs)
    }

    /// Add `z_j >= 0`; returns the inequality's index.
    pub fn add_nonneg(&mut self, j: usize) -> usize {
        assert!(j < self.nvars);
        let mut row = zeros(self.nvars);
        row[j] = -Rational::one();
        self.add_le(row, Rational::zero())
    }

    pub fn add_eq(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.nvars);
        self.eqs.push((row, rhs));
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        z.len() == self.nvars
            && self.ineqs.iter().all(|(row, rhs)| dot(row, z) <= *rhs)
            && self.eqs.iter().all(|(row, rhs)| dot(row, z) == *rhs)
    }

    /// Optimize a linear objective over the feasible set. Variables carry no
    /// implicit bounds here: only the stored rows constrain them.
    pub fn optimize(&self, objective: &[Rational], sense: Sense) -> LpOutcome {
        assert_eq!(objective.len(), self.nvars);
        let mut lp = match sense {
            Sense::Minimize => LpProblem::minimize(objective.to_vec()),
            Sense::Maximize => LpProblem::maximize(objective.to_vec()),
        };
        for j in 0..self.nvars {
            lp.make_free(j);
        }
        for (row, rhs) in &self.ineqs {
            lp.constrain(row.clone(), Relation::Le, rhs.clone());
        }
        for (row, rhs) in &self.eqs {
            lp.constrain(row.clone(), Relation::Eq, rhs.clone());
        }
        lp.solve()
    }

    /// Feasibility, a relative-interior point, and per-row strictness from a
    /// single LP. Homogenizing the system with a scale variable and giving
    /// every inequality a capped slack reward makes the optimal slack profile
    /// exactly the indicator of the rows that can be strict, and the rescaled
    /// solution a point where all of them are strict at once. Returns `None`
    /// iff the system is infeasible.
    pub fn relative_interior(&self) -> Option<InteriorReport> {
        let k = self.ineqs.len();
        let nv = self.nvars + k + 1; // z, one slack reward per row, scale
        let scale = nv - 1;
        let mut obj = zeros(nv);
        for o in obj.iter_mut().skip(self.nvars).take(k) {
            *o = Rational::one();
        }
        let mut lp = LpProblem::maximize(obj);
        for j in 0..self.nvars {
            lp.make_free(j);
        }
        for (i, (row, rhs)) in self.ineqs.iter().enumerate() {
            let mut r = zeros(nv);
            r[..self.nvars].clone_from_slice(row);
            r[self.nvars + i] = Rational::one();
            r[scale] = -rhs;
            lp.constrain(r, Relation::Le, Rational::zero());
        }
        for (row, rhs) in &self.eqs {
            let mut r = zeros(nv);
            r[..self.nvars].clone_from_slice(row);
            r[scale] = -rhs;
            lp.constrain(r, Relation::Eq, Rational::zero());
        }
        for i in 0..k {
            let mut r = zeros(nv);
            r[self.nvars + i] = Rational::one();
            lp.constrain(r, Relation::Le, Rational::one());
        }
        let mut r = zeros(nv);
        r[scale] = Rational::one();
        lp.constrain(r, Relation::Ge, Rational::one());

        let sol = match lp.solve() {
            LpOutcome::Optimal(s) => s,
            LpOutcome::Infeasible => return None,
            LpOutcome::Unbounded => unreachable!("slack rewards are capped at one"),
        };
        let alpha = &sol.primal[scale];
        let point: Vec<Rational> =
            sol.primal[..self.nvars].iter().map(|z| z / alpha).collect();
        let strict: Vec<bool> = (0..k)
            .map(|i| {
                let u = &sol.primal[self.nvars + i];
                debug_assert!(u.is_zero() || u.is_one(), "slack rewards resolve to 0 or 1");
                u.is_one()
            })
            .collect();
        debug_assert!(self.contains(&point));
        debug_assert!(self
            .ineqs
            .iter()
            .zip(&strict)
            .all(|((row, rhs), s)| (dot(row, &point) < *rhs) == *s));
        Some(InteriorReport { point, strict })
    }

    /// Coefficient rows of the affine hull: all equality rows plus the
    /// inequality rows that can never be strict.
    fn hull_rows(&self, strict: &[bool]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        for (row, r) in &self.eqs {
            rows.push(row.clone());
            rhs.push(r.clone());
        }
        for (i, (row, r)) in self.ineqs.iter().enumerate() {
            if !strict[i] {
                rows.push(row.clone());
                rhs.push(r.clone());
            }
        }
        (rows, rhs)
    }

    /// Dimension of the feasible set, or `None` if it is empty.
    pub fn affine_dimension(&self) -> Option<usize> {
        let rel = self.relative_interior()?;
        let (rows, _) = self.hull_rows(&rel.strict);
        Some(self.nvars - row_rank(&rows))
    }

    /// All vertices of the feasible set, in sorted order; empty iff the set
    /// is. The caller must pass a pointed system (no line fits inside it),
    /// which holds for anything carved out of a product of simplices.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let Some(rel) = self.relative_interior() else {
            return Vec::new();
        };
        #[cfg(debug_assertions)]
        {
            let all: Vec<Vec<Rational>> = self
                .eqs
                .iter()
                .map(|(r, _)| r.clone())
                .chain(self.ineqs.iter().map(|(r, _)| r.clone()))
                .collect();
            debug_assert_eq!(row_rank(&all), self.nvars, "vertex enumeration needs a pointed system");
        }
        let (hull, hull_rhs) = self.hull_rows(&rel.strict);
        let r = row_rank(&hull);
        let dim = self.nvars - r;
        if dim == 0 {
            return vec![rel.point];
        }
        let strict_rows: Vec<&(Vec<Rational>, Rational)> = self
            .ineqs
            .iter()
            .zip(&rel.strict)
            .filter(|(_, s)| **s)
            .map(|(row, _)| row)
            .collect();
        let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for combo in Combinations::new(strict_rows.len(), dim) {
            let mut rows = hull.clone();
            let mut rhs = hull_rhs.clone();
            for &c in &combo {
                rows.push(strict_rows[c].0.clone());
                rhs.push(strict_rows[c].1.clone());
            }
            if let SolveOutcome::Unique(z) = solve_linear(&rows, &rhs) {
                if self.contains(&z) {
                    found.insert(z);
                }
            }
        }
        debug_assert!(!found.is_empty(), "a nonempty pointed polyhedron has a vertex");
        found.into_iter().collect()
    }
}

/// Lexicographic k-subsets of 0..n.
struct Combinations {
    n: usize,
    k: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, k, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + self.n - self.k {
                self.idx[i] += 1;
                for j in i + 1..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn unit_square() -> LinearSystem {
        let mut s = LinearSystem::new(2);
        s.add_nonneg(0);
        s.add_nonneg(1);
        s.add_le(vec![int(1), int(0)], int(1));
        s.add_le(vec![int(0), int(1)], int(1));
        s
    }

    #[test]
    fn square_vertices_and_interior() {
        let s = unit_square();
        let rel = s.relative_interior().unwrap();
        assert_eq!(rel.strict, vec![true; 4]);
        assert!(rel.point.iter().all(|c| c > &int(0) && c < &int(1)));
        assert_eq!(s.affine_dimension(), Some(2));
        let v = s.vertices();
        let expect: Vec<Vec<_>> = vec![
            vec![int(0), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(0)],
            vec![int(1), int(1)],
        ];
        assert_eq!(v, expect);
    }

    #[test]
    fn simplex_is_two_dimensional() {
        let mut s = LinearSystem::new(3);
        for j in 0..3 {
            s.add_nonneg(j);
        }
        s.add_eq(vec![int(1), int(1), int(1)], int(1));
        assert_eq!(s.affine_dimension(), Some(2));
        assert_eq!(s.vertices().len(), 3);
    }

    #[test]
    fn implicit_equalities_pin_a_point() {
        // the square cut by x + y = 2 leaves only (1,1); both upper bounds
        // become implicit equalities
        let mut s = unit_square();
        s.add_eq(vec![int(1), int(1)], int(2));
        let rel = s.relative_interior().unwrap();
        assert_eq!(rel.strict, vec![true, true, false, false]);
        assert_eq!(rel.point, vec![int(1), int(1)]);
        assert_eq!(s.affine_dimension(), Some(0));
        assert_eq!(s.vertices(), vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn infeasible_system_has_no_interior_and_no_vertices() {
        let mut s = LinearSystem::new(1);
        s.add_ge(vec![int(1)], int(1));
        s.add_le(vec![int(1)], int(0));
        assert!(s.relative_interior().is_none());
        assert_eq!(s.affine_dimension(), None);
        assert!(s.vertices().is_empty());
    }

    #[test]
    fn unbounded_pointed_ray_has_one_vertex() {
        let mut s = LinearSystem::new(1);
        s.add_ge(vec![int(1)], int(1));
        assert_eq!(s.vertices(), vec![vec![int(1)]]);
    }

    #[test]
    fn flat_segment_reports_its_hull() {
        // {(x, 0) : 0 <= x <= 1} with the y = 0 face written as two rows
        let mut s = LinearSystem::new(2);
        s.add_le(vec![int(0), int(1)], int(0));
        s.add_nonneg(1);
        s.add_le(vec![int(1), int(0)], int(1));
        s.add_nonneg(0);
        let rel = s.relative_interior().unwrap();
        assert_eq!(rel.strict, vec![false, false, true, true]);
        assert_eq!(rel.point[1], int(0));
        assert_eq!(s.affine_dimension(), Some(1));
        assert_eq!(s.vertices(), vec![vec![int(0), int(0)], vec![int(1), int(0)]]);
    }

    #[test]
    fn redundant_rows_do_not_duplicate_vertices() {
        let mut s = LinearSystem::new(2);
        s.add_eq(vec![int(1), int(1)], int(1));
        s.add_eq(vec![int(2), int(2)], int(2));
        s.add_nonneg(0);
        s.add_nonneg(1);
        assert_eq!(s.vertices(), vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn rational_cut_vertex() {
        let mut s = unit_square();
        s.add_le(vec![int(2), int(1)], rat(3, 2));
        let v = s.vertices();
        assert!(v.contains(&vec![rat(3, 4), int(0)]));
        assert!(v.contains(&vec![rat(1, 4), int(1)]));
        assert!(!v.contains(&vec![int(1), int(0)]));
    }

    #[test]
    fn optimize_over_square() {
        let s = unit_square();
        let sol = s
            .optimize(&[int(1), int(1)], Sense::Maximize)
            .expect_optimal("square is compact");
        assert_eq!(sol.objective_value, int(2));
        assert_eq!(sol.primal, vec![int(1), int(1)]);
        // no implicit bounds: without rows the objective runs away
        let free = LinearSystem::new(2);
        assert_eq!(free.optimize(&[int(1), int(0)], Sense::Maximize).status(), "unbounded");
    }

    #[test]
    fn combinations_cover_and_terminate() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert!(all.contains(&vec![0, 3]));
        assert_eq!(Combinations::new(3, 5).count(), 0);
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Random cuts of a box: every reported vertex is feasible and has a
        /// full-rank tight set, and the interior point's strictness flags are
        /// honest at the point itself.
        #[test]
        fn vertices_are_feasible_and_tight(
            cuts in prop::collection::vec(
                (prop::collection::vec(-3i64..=3, 2), -4i64..=4),
                0..4,
            )
        ) {
            let mut s = LinearSystem::new(2);
            for j in 0..2 {
                s.add_nonneg(j);
                let mut row = zeros(2);
                row[j] = int(1);
                s.add_le(row, int(3));
            }
            for (coefs, rhs) in &cuts {
                let row: Vec<_> = coefs.iter().map(|&c| int(c)).collect();
                s.add_le(row, int(*rhs));
            }
            let verts = s.vertices();
            match s.relative_interior() {
                None => prop_assert!(verts.is_empty()),
                Some(rel) => {
                    prop_assert!(s.contains(&rel.point));
                    prop_assert!(!verts.is_empty());
                    for v in &verts {
                        prop_assert!(s.contains(v));
                        let mut tight: Vec<Vec<Rational>> =
                            s.eqs.iter().map(|(r, _)| r.clone()).collect();
                        for (row, rhs) in &s.ineqs {
                            if dot(row, v) == *rhs {
                                tight.push(row.clone());
                            }
                        }
                        prop_assert_eq!(row_rank(&tight), 2);
                    }
                }
            }
        }
    }
}
