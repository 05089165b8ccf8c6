//! Exact rational linear feasibility with strict inequalities.
//!
//! Strictness is decided by margin maximization: a variable t is added with
//! `x_i >= t` for every variable required positive and `row + t <= 0` for
//! every inequality row required strictly negative, t is clamped by `t <= 1`
//! (so an unbounded margin still yields a finite witness), and the system is
//! feasible in the strict sense iff the maximal t is positive. The maximum is
//! found by a two-phase primal simplex over exact rationals with Bland's
//! rule, so the answer carries no tolerance and the run is deterministic.

use crate::error::{Error, Result};
use crate::linalg::RMatrix;
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarSign {
    Free,
    NonNeg,
    Positive,
}

/// `a_eq x = b_eq`, `a_ub x <= 0` with the rows listed in `strict_rows`
/// required `< 0`, and per-variable sign constraints.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub a_eq: RMatrix,
    pub b_eq: Vec<Rat>,
    pub a_ub: RMatrix,
    pub strict_rows: Vec<usize>,
    pub signs: Vec<VarSign>,
}

impl LpProblem {
    pub fn equality(a_eq: RMatrix, b_eq: Vec<Rat>, signs: Vec<VarSign>) -> Self {
        let n = signs.len();
        LpProblem {
            a_eq,
            b_eq,
            a_ub: RMatrix::zeros(0, n),
            strict_rows: Vec::new(),
            signs,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Feasibility {
    Feasible {
        witness: Vec<Rat>,
        margin: Rat,
    },
    /// `forced_zero` lists the positive-constrained coordinates that are
    /// constant <= 0 on the equality solution set — the certificate style of
    /// "the general solution has a vanishing coordinate".
    Infeasible {
        forced_zero: Vec<usize>,
    },
}

pub fn lp_feasible(p: &LpProblem) -> Result<Feasibility> {
    let n = p.signs.len();
    if p.a_eq.rows() > 0 && p.a_eq.cols() != n {
        return Err(Error::DimMismatch("lp equality columns".into()));
    }
    if p.a_eq.rows() != p.b_eq.len() {
        return Err(Error::DimMismatch("lp equality rhs".into()));
    }
    if p.a_ub.rows() > 0 && p.a_ub.cols() != n {
        return Err(Error::DimMismatch("lp inequality columns".into()));
    }
    if p.strict_rows.iter().any(|&r| r >= p.a_ub.rows()) {
        return Err(Error::DimMismatch("strict row index".into()));
    }

    let std = StandardForm::build(p);
    match simplex_max(&std.a, &std.b, &std.c)? {
        None => Ok(infeasible(p)),
        Some((opt, y)) => {
            if opt > Rat::zero() {
                Ok(Feasibility::Feasible {
                    witness: std.extract(&y),
                    margin: opt,
                })
            } else {
                Ok(infeasible(p))
            }
        }
    }
}

fn infeasible(p: &LpProblem) -> Feasibility {
    let mut forced_zero = Vec::new();
    if let Ok(sol) = p.a_eq.solve_affine(&p.b_eq) {
        for (i, s) in p.signs.iter().enumerate() {
            if *s == VarSign::Positive {
                if let Some(v) = sol.constant_coordinate(i) {
                    if !v.is_positive() {
                        forced_zero.push(i);
                    }
                }
            }
        }
    }
    Feasibility::Infeasible { forced_zero }
}

struct StandardForm {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    c: Vec<Rat>,
    /// Column of each original variable, with the negative-part column for
    /// free variables.
    var_cols: Vec<(usize, Option<usize>)>,
}

impl StandardForm {
    fn build(p: &LpProblem) -> StandardForm {
        let n = p.signs.len();
        let mut var_cols = Vec::with_capacity(n);
        let mut ncols = 0;
        for s in &p.signs {
            match s {
                VarSign::Free => {
                    var_cols.push((ncols, Some(ncols + 1)));
                    ncols += 2;
                }
                VarSign::NonNeg | VarSign::Positive => {
                    var_cols.push((ncols, None));
                    ncols += 1;
                }
            }
        }
        let t_pos = ncols;
        let t_neg = ncols + 1;
        ncols += 2;
        let positives: Vec<usize> = (0..n)
            .filter(|&i| p.signs[i] == VarSign::Positive)
            .collect();
        let nrows = p.a_eq.rows() + p.a_ub.rows() + positives.len() + 1;
        let slack0 = ncols;
        ncols += p.a_ub.rows() + positives.len() + 1;

        let mut a = vec![vec![Rat::zero(); ncols]; nrows];
        let mut b = vec![Rat::zero(); nrows];
        let mut row = 0;
        let put_var = |arow: &mut Vec<Rat>, var_cols: &[(usize, Option<usize>)], i: usize, v: &Rat| {
            let (pc, nc) = var_cols[i];
            arow[pc] += v;
            if let Some(nc) = nc {
                arow[nc] -= v;
            }
        };
        for r in 0..p.a_eq.rows() {
            for i in 0..n {
                let v = p.a_eq[[r, i]].clone();
                if !v.is_zero() {
                    put_var(&mut a[row], &var_cols, i, &v);
                }
            }
            b[row] = p.b_eq[r].clone();
            row += 1;
        }
        let mut slack = slack0;
        for r in 0..p.a_ub.rows() {
            for i in 0..n {
                let v = p.a_ub[[r, i]].clone();
                if !v.is_zero() {
                    put_var(&mut a[row], &var_cols, i, &v);
                }
            }
            if p.strict_rows.contains(&r) {
                a[row][t_pos] = Rat::one();
                a[row][t_neg] = -Rat::one();
            }
            a[row][slack] = Rat::one();
            slack += 1;
            row += 1;
        }
        for &i in &positives {
            // x_i - t >= 0  as  -x_i + t + s = 0
            let (pc, _) = var_cols[i];
            a[row][pc] = -Rat::one();
            a[row][t_pos] = Rat::one();
            a[row][t_neg] = -Rat::one();
            a[row][slack] = Rat::one();
            slack += 1;
            row += 1;
        }
        // t <= 1 clamp
        a[row][t_pos] = Rat::one();
        a[row][t_neg] = -Rat::one();
        a[row][slack] = Rat::one();
        b[row] = Rat::one();

        let mut c = vec![Rat::zero(); ncols];
        c[t_pos] = Rat::one();
        c[t_neg] = -Rat::one();
        StandardForm { a, b, c, var_cols }
    }

    fn extract(&self, y: &[Rat]) -> Vec<Rat> {
        self.var_cols
            .iter()
            .map(|&(pc, nc)| match nc {
                Some(nc) => &y[pc] - &y[nc],
                None => y[pc].clone(),
            })
            .collect()
    }
}

/// Maximizes `c^T y` over `{a y = b, y >= 0}` exactly. Returns `None` when
/// the constraints are infeasible, otherwise the optimum and an optimal `y`.
/// The objective must be bounded on the feasible set (callers arrange this);
/// an unbounded direction is reported as an internal error.
pub fn simplex_max(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Result<Option<(Rat, Vec<Rat>)>> {
    let m = a.len();
    let ncols = c.len();
    let mut t = Tableau::new(a, b, ncols);

    // Phase 1: maximize minus the sum of artificials.
    let mut c1 = vec![Rat::zero(); ncols + m];
    for j in ncols..ncols + m {
        c1[j] = -Rat::one();
    }
    t.optimize(&c1, ncols + m)?;
    if t.objective(&c1).is_negative() {
        return Ok(None);
    }
    t.drive_out_artificials(ncols);

    // Phase 2 over the original columns only.
    let mut c2 = c.to_vec();
    c2.resize(ncols + m, Rat::zero());
    t.optimize(&c2, ncols)?;
    let y = t.solution(ncols);
    Ok(Some((t.objective(&c2), y)))
}

struct Tableau {
    /// `rows x (ncols + artificials + 1)`, rhs last.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    live: Vec<bool>,
}

impl Tableau {
    fn new(a: &[Vec<Rat>], b: &[Rat], ncols: usize) -> Tableau {
        let m = a.len();
        let width = ncols + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        for r in 0..m {
            let mut row = vec![Rat::zero(); width];
            let flip = b[r].is_negative();
            for j in 0..ncols {
                row[j] = if flip { -a[r][j].clone() } else { a[r][j].clone() };
            }
            row[ncols + r] = Rat::one();
            row[width - 1] = if flip { -b[r].clone() } else { b[r].clone() };
            rows.push(row);
            basis.push(ncols + r);
        }
        Tableau {
            rows,
            basis,
            live: vec![true; m],
        }
    }

    fn width(&self) -> usize {
        self.rows.first().map_or(1, |r| r.len())
    }

    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.width() - 1]
    }

    fn objective(&self, c: &[Rat]) -> Rat {
        self.basis
            .iter()
            .zip(&self.rows)
            .zip(&self.live)
            .filter(|(_, &live)| live)
            .map(|((&bv, row), _)| &c[bv] * &row[self.width() - 1])
            .sum()
    }

    fn solution(&self, ncols: usize) -> Vec<Rat> {
        let mut y = vec![Rat::zero(); ncols];
        for (r, &bv) in self.basis.iter().enumerate() {
            if self.live[r] && bv < ncols {
                y[bv] = self.rhs(r).clone();
            }
        }
        y
    }

    /// Bland-rule simplex iterations maximizing `c`, allowing only columns
    /// `< allowed` to enter.
    fn optimize(&mut self, c: &[Rat], allowed: usize) -> Result<()> {
        loop {
            let entering = self.entering(c, allowed);
            let Some(j) = entering else { return Ok(()) };
            let Some(r) = self.leaving(j) else {
                return Err(Error::Invalid(
                    "simplex objective unbounded; the margin clamp should prevent this".into(),
                ));
            };
            self.pivot(r, j);
        }
    }

    /// Smallest-index column with positive reduced cost.
    fn entering(&self, c: &[Rat], allowed: usize) -> Option<usize> {
        let width = self.width();
        for j in 0..allowed.min(width - 1) {
            if self.basis.iter().zip(&self.live).any(|(&b, &l)| l && b == j) {
                continue;
            }
            let mut reduced = c[j].clone();
            for (r, row) in self.rows.iter().enumerate() {
                if self.live[r] && !row[j].is_zero() {
                    reduced -= &c[self.basis[r]] * &row[j];
                }
            }
            if reduced.is_positive() {
                return Some(j);
            }
        }
        None
    }

    /// Minimum-ratio row; ties broken by smallest basis variable index.
    fn leaving(&self, j: usize) -> Option<usize> {
        let mut best: Option<(Rat, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if !self.live[r] || !row[j].is_positive() {
                continue;
            }
            let ratio = self.rhs(r) / &row[j];
            let key = (ratio, self.basis[r], r);
            match &best {
                None => best = Some(key),
                Some((br, bb, _)) => {
                    if key.0 < *br || (key.0 == *br && key.1 < *bb) {
                        best = Some(key);
                    }
                }
            }
        }
        best.map(|(_, _, r)| r)
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = self.rows[r][j].clone().recip();
        for v in self.rows[r].iter_mut() {
            let old = std::mem::replace(v, Rat::zero());
            *v = old * &inv;
        }
        for i in 0..self.rows.len() {
            if i == r || !self.live[i] || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for k in 0..self.width() {
                let v = &self.rows[r][k] * &f;
                let old = std::mem::replace(&mut self.rows[i][k], Rat::zero());
                self.rows[i][k] = old - v;
            }
        }
        self.basis[r] = j;
    }

    /// After a successful phase 1, pivots artificial variables out of the
    /// basis; rows where that is impossible are redundant and get dropped.
    fn drive_out_artificials(&mut self, ncols: usize) {
        for r in 0..self.rows.len() {
            if !self.live[r] || self.basis[r] < ncols {
                continue;
            }
            debug_assert!(self.rhs(r).is_zero());
            let col = (0..ncols).find(|&j| !self.rows[r][j].is_zero());
            match col {
                Some(j) => self.pivot(r, j),
                None => self.live[r] = false,
            }
        }
    }
}
