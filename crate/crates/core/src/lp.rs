//! An exact linear-programming engine over big rationals.
//!
//! Two-phase primal simplex on a dense tableau with Bland's least-index
//! anti-cycling rule, so every solve terminates and every `Optimal` answer is
//! exact. Free variables are split into nonnegative parts; inequality rows
//! get slack columns; artificial columns double as an explicit basis-inverse
//! record from which the dual multipliers are read off. With exact
//! arithmetic, strong duality and complementary slackness are identities, and
//! debug builds assert both on every optimal solve.
//!
//! Dual sign convention, per constraint row: for a maximization problem a
//! `<=` row has multiplier `>= 0` and a `>=` row `<= 0`; for minimization the
//! signs swap; equality rows are free in both senses. In all cases the dual
//! objective `sum_i dual[i] * rhs[i]` equals the primal optimum.

use crate::matrix::RatMatrix;
use crate::rational::{dot, is_stochastic, zeros, Rational};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct LpProblem {
    sense: Sense,
    objective: Vec<Rational>,
    rows: Vec<(Vec<Rational>, Relation, Rational)>,
    free: Vec<bool>,
}

/// Exact primal/dual certificate for an optimal solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub primal: Vec<Rational>,
    /// One multiplier per constraint row, in insertion order.
    pub dual: Vec<Rational>,
    pub objective_value: Rational,
    /// Original-variable indices that are basic in the final tableau.
    pub basis: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            LpOutcome::Optimal(_) => "optimal",
            LpOutcome::Infeasible => "infeasible",
            LpOutcome::Unbounded => "unbounded",
        }
    }

    /// Unwrap an outcome the caller has proven must be optimal.
    pub fn expect_optimal(self, what: &str) -> LpSolution {
        match self {
            LpOutcome::Optimal(s) => s,
            other => panic!("{what}: expected an optimal LP, got {}", other.status()),
        }
    }
}

impl LpProblem {
    pub fn minimize(objective: Vec<Rational>) -> Self {
        Self::with_sense(Sense::Minimize, objective)
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self::with_sense(Sense::Maximize, objective)
    }

    fn with_sense(sense: Sense, objective: Vec<Rational>) -> Self {
        assert!(!objective.is_empty(), "an LP needs at least one variable");
        let n = objective.len();
        LpProblem { sense, objective, rows: Vec::new(), free: vec![false; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Lift variable `j`'s lower bound from zero to minus infinity.
    pub fn make_free(&mut self, j: usize) {
        self.free[j] = true;
    }

    pub fn constrain(&mut self, row: Vec<Rational>, rel: Relation, rhs: Rational) {
        assert_eq!(row.len(), self.num_vars(), "constraint arity mismatch");
        self.rows.push((row, rel, rhs));
    }

    pub fn solve(&self) -> LpOutcome {
        let out = simplex(self);
        if let LpOutcome::Optimal(s) = &out {
            debug_assert!(verify_certificates(self, s), "simplex certificate check failed");
        }
        out
    }
}

struct Tableau {
    tab: Vec<Vec<Rational>>, // nrows x (art_start + nrows + 1); rhs last
    basis: Vec<usize>,
    art_start: usize,
}

impl Tableau {
    fn nrows(&self) -> usize {
        self.tab.len()
    }

    fn rhs_col(&self) -> usize {
        self.art_start + self.nrows()
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.tab[r][j].clone();
        for e in self.tab[r].iter_mut() {
            *e = &*e / &piv;
        }
        let prow = self.tab[r].clone();
        for i in 0..self.tab.len() {
            if i != r && !self.tab[i][j].is_zero() {
                let f = self.tab[i][j].clone();
                for (c, p) in prow.iter().enumerate() {
                    if !p.is_zero() {
                        let d = &f * p;
                        self.tab[i][c] = &self.tab[i][c] - &d;
                    }
                }
            }
        }
        self.basis[r] = j;
    }

    /// Bland's rule: enter the least-index structural column with a negative
    /// reduced cost; leave at the least-index basic variable among the
    /// minimum-ratio rows. Returns false if the phase hit an unbounded ray.
    fn run_phase(&mut self, costs: &[Rational]) -> bool {
        loop {
            let cb: Vec<Rational> = self.basis.iter().map(|&b| costs[b].clone()).collect();
            let mut entering = None;
            for j in 0..self.art_start {
                let mut rc = costs[j].clone();
                for (r, c) in cb.iter().enumerate() {
                    if !c.is_zero() && !self.tab[r][j].is_zero() {
                        rc -= c * &self.tab[r][j];
                    }
                }
                if rc.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return true };
            let rhs = self.rhs_col();
            let mut leave: Option<(Rational, usize, usize)> = None; // (ratio, basis var, row)
            for r in 0..self.nrows() {
                if self.tab[r][j].is_positive() {
                    let ratio = &self.tab[r][rhs] / &self.tab[r][j];
                    let better = match &leave {
                        None => true,
                        Some((best, var, _)) => {
                            ratio < *best || (ratio == *best && self.basis[r] < *var)
                        }
                    };
                    if better {
                        leave = Some((ratio, self.basis[r], r));
                    }
                }
            }
            match leave {
                Some((_, _, r)) => self.pivot(r, j),
                None => return false,
            }
        }
    }
}

fn simplex(p: &LpProblem) -> LpOutcome {
    let nvars = p.num_vars();
    let m = p.rows.len();

    // internal columns: split free variables, then one slack per inequality
    let mut col_map: Vec<(usize, bool)> = Vec::new();
    for j in 0..nvars {
        col_map.push((j, false));
        if p.free[j] {
            col_map.push((j, true));
        }
    }
    let nvar_cols = col_map.len();
    let mut slack_col: Vec<Option<usize>> = vec![None; m];
    let mut art_start = nvar_cols;
    for (i, (_, rel, _)) in p.rows.iter().enumerate() {
        if !matches!(rel, Relation::Eq) {
            slack_col[i] = Some(art_start);
            art_start += 1;
        }
    }
    let width = art_start + m + 1;

    let mut flip = vec![false; m];
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, rel, rhs)) in p.rows.iter().enumerate() {
        let mut t = zeros(width);
        for (c, &(j, negated)) in col_map.iter().enumerate() {
            t[c] = if negated { -&row[j] } else { row[j].clone() };
        }
        if let Some(sc) = slack_col[i] {
            t[sc] = match rel {
                Relation::Le => Rational::one(),
                Relation::Ge => -Rational::one(),
                Relation::Eq => unreachable!(),
            };
        }
        t[width - 1] = rhs.clone();
        if rhs.is_negative() {
            flip[i] = true;
            for e in t.iter_mut() {
                *e = -&*e;
            }
        }
        t[art_start + i] = Rational::one(); // after the flip: artificials stay +1
        tab.push(t);
    }

    let mut t = Tableau { tab, basis: (art_start..art_start + m).collect(), art_start };

    // phase 1: minimize the sum of artificials
    let mut costs1 = zeros(art_start + m);
    for c in costs1.iter_mut().skip(art_start) {
        *c = Rational::one();
    }
    let bounded = t.run_phase(&costs1);
    assert!(bounded, "phase 1 is bounded below by zero");
    let rhs = t.rhs_col();
    let infeasibility: Rational = (0..m)
        .filter(|&r| t.basis[r] >= art_start)
        .map(|r| t.tab[r][rhs].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive leftover artificials out of the basis where a structural pivot
    // exists; rows without one are redundant and stay inert (all structural
    // entries zero) for the rest of the solve
    for r in 0..m {
        if t.basis[r] >= art_start {
            debug_assert!(t.tab[r][rhs].is_zero());
            if let Some(j) = (0..art_start).find(|&j| !t.tab[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    // phase 2: the real objective, internally always minimized
    let mut costs2 = zeros(art_start + m);
    for (c, &(j, negated)) in col_map.iter().enumerate() {
        let base = match p.sense {
            Sense::Minimize => p.objective[j].clone(),
            Sense::Maximize => -&p.objective[j],
        };
        costs2[c] = if negated { -base } else { base };
    }
    if !t.run_phase(&costs2) {
        return LpOutcome::Unbounded;
    }

    // primal values
    let mut primal = zeros(nvars);
    for (r, &b) in t.basis.iter().enumerate() {
        if b < nvar_cols {
            let (j, negated) = col_map[b];
            let v = t.tab[r][rhs].clone();
            if negated {
                primal[j] -= v;
            } else {
                primal[j] += v;
            }
        }
    }
    let objective_value = dot(&p.objective, &primal);

    // duals: c_B^T B^{-1}, read through the artificial columns, then mapped
    // back through row flips and the max->min conversion
    let max_flip = match p.sense {
        Sense::Minimize => Rational::one(),
        Sense::Maximize => -Rational::one(),
    };
    let mut dual = zeros(m);
    for i in 0..m {
        let mut y = Rational::zero();
        for (r, &b) in t.basis.iter().enumerate() {
            if !costs2[b].is_zero() && !t.tab[r][t.art_start + i].is_zero() {
                y += &costs2[b] * &t.tab[r][t.art_start + i];
            }
        }
        if flip[i] {
            y = -y;
        }
        dual[i] = y * &max_flip;
    }

    let mut basis: Vec<usize> = t
        .basis
        .iter()
        .filter(|&&b| b < nvar_cols)
        .map(|&b| col_map[b].0)
        .collect();
    basis.sort_unstable();
    basis.dedup();

    LpOutcome::Optimal(LpSolution { primal, dual, objective_value, basis })
}

/// Exact optimality certificate check: primal feasibility, dual feasibility
/// (with the documented sign conventions), complementary slackness, and
/// strong duality. Returns false on the first violation.
pub fn verify_certificates(p: &LpProblem, s: &LpSolution) -> bool {
    if s.primal.len() != p.num_vars() || s.dual.len() != p.rows.len() {
        return false;
    }
    for (j, v) in s.primal.iter().enumerate() {
        if !p.free[j] && v.is_negative() {
            return false;
        }
    }
    if dot(&p.objective, &s.primal) != s.objective_value {
        return false;
    }
    let mut dual_value = Rational::zero();
    for ((row, rel, rhs), mu) in p.rows.iter().zip(&s.dual) {
        let lhs = dot(row, &s.primal);
        let slack = rhs - &lhs;
        let feasible = match rel {
            Relation::Le => !slack.is_negative(),
            Relation::Ge => !slack.is_positive(),
            Relation::Eq => slack.is_zero(),
        };
        let sign_ok = match (p.sense, rel) {
            (_, Relation::Eq) => true,
            (Sense::Maximize, Relation::Le) | (Sense::Minimize, Relation::Ge) => {
                !mu.is_negative()
            }
            (Sense::Maximize, Relation::Ge) | (Sense::Minimize, Relation::Le) => {
                !mu.is_positive()
            }
        };
        if !feasible || !sign_ok || !(mu * &slack).is_zero() {
            return false;
        }
        dual_value += mu * rhs;
    }
    if dual_value != s.objective_value {
        return false;
    }
    // reduced costs: free variables bind exactly; bounded ones obey the sense
    for j in 0..p.num_vars() {
        let mut rc = p.objective[j].clone();
        for ((row, _, _), mu) in p.rows.iter().zip(&s.dual) {
            rc -= mu * &row[j];
        }
        let rc_ok = if p.free[j] {
            rc.is_zero()
        } else {
            match p.sense {
                Sense::Maximize => !rc.is_positive(),
                Sense::Minimize => !rc.is_negative(),
            }
        };
        if !rc_ok || !(&rc * &s.primal[j]).is_zero() {
            return false;
        }
    }
    true
}

/// Mixed strategies and value of the zero-sum game with row-player payoff
/// matrix `M`, obtained from one LP solve: the column player's program
/// `max u : My + 1u <= 0, y in the simplex`, whose row duals are the row
/// player's optimal strategy. Returns `(x, y, value)` with `value` the row
/// player's minimax payoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumSolution {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub value: Rational,
}

pub fn solve_zero_sum(m: &RatMatrix) -> ZeroSumSolution {
    let (rows, cols) = (m.rows(), m.cols());
    let mut obj = zeros(cols + 1);
    obj[cols] = Rational::one();
    let mut lp = LpProblem::maximize(obj);
    lp.make_free(cols);
    for i in 0..rows {
        let mut row = m.row(i).to_vec();
        row.push(Rational::one());
        lp.constrain(row, Relation::Le, Rational::zero());
    }
    let mut simplex_row = vec![Rational::one(); cols];
    simplex_row.push(Rational::zero());
    lp.constrain(simplex_row, Relation::Eq, Rational::one());

    let sol = lp.solve().expect_optimal("zero-sum LP is always feasible and bounded");
    let y = sol.primal[..cols].to_vec();
    let value = -&sol.primal[cols];
    let x = sol.dual[..rows].to_vec();
    debug_assert!(is_stochastic(&x) && is_stochastic(&y));
    debug_assert!(m.mul_vec(&y).iter().all(|p| p <= &value));
    debug_assert!(m.tr_mul_vec(&x).iter().all(|p| p >= &value));
    ZeroSumSolution { x, y, value }
}
