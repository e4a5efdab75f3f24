//! LP relaxations of the formulations, a dense bounded-variable primal
//! simplex, and a root-node cutting-plane loop using Type I/II separation.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{invalid_param, Error, Result};
use crate::graph::Instance;
use crate::model::{build_formulation, Formulation, Layout, Model, Point, Sense};
use crate::polytope::Inequality;
use crate::separation::{separate_type1, separate_type2, Cut, SeparationState};

/// Primal feasibility tolerance.
pub const FEAS_TOL: f64 = 1e-7;
const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// `max c·x` subject to rows and `0 <= x <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    layout: Layout,
    objective: Vec<f64>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Meaningful only when optimal.
    pub objective: f64,
    pub primal: Option<Point>,
    pub iterations: usize,
}

/// The model's rows with integrality dropped.
pub fn relax(model: &Model) -> LinearProgram {
    let layout = model.layout();
    let block = layout.n * layout.m;
    let objective = (0..layout.len())
        .map(|j| if j >= block { 1.0 } else { 0.0 })
        .collect();
    let rows = model
        .constraints()
        .iter()
        .map(|c| Row {
            terms: c.terms.iter().map(|&(j, a)| (j, a as f64)).collect(),
            sense: c.sense,
            rhs: c.rhs as f64,
        })
        .collect();
    LinearProgram {
        layout,
        objective,
        rows,
    }
}

impl LinearProgram {
    pub fn new(layout: Layout, objective: Vec<f64>) -> Result<Self> {
        if objective.len() != layout.len() {
            return Err(Error::DimensionMismatch {
                expected: layout.len().to_string(),
                got: objective.len().to_string(),
            });
        }
        Ok(LinearProgram {
            layout,
            objective,
            rows: Vec::new(),
        })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn num_cols(&self) -> usize {
        self.layout.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn add_row(&mut self, row: Row) -> Result<()> {
        if let Some(&(j, _)) = row.terms.iter().find(|&&(j, _)| j >= self.num_cols()) {
            return Err(invalid_param(format!("column {j} out of range")));
        }
        if !row.rhs.is_finite() || row.terms.iter().any(|(_, a)| !a.is_finite()) {
            return Err(invalid_param("row data must be finite"));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn add_inequality(&mut self, ineq: &Inequality) -> Result<()> {
        if ineq.layout() != self.layout {
            return Err(Error::DimensionMismatch {
                expected: format!("n={}, m={}", self.layout.n, self.layout.m),
                got: format!("n={}, m={}", ineq.layout().n, ineq.layout().m),
            });
        }
        let f = |r: num_rational::Rational64| r.to_f64().unwrap_or(f64::NAN);
        self.add_row(Row {
            terms: ineq
                .terms()
                .iter()
                .map(|&(v, c)| (self.layout.index(v), f(c)))
                .collect(),
            sense: Sense::Le,
            rhs: f(ineq.rhs()),
        })
    }

    pub fn solve(&self) -> LpSolution {
        solve_lp(self)
    }
}

/// Dense tableau over structural, slack and artificial columns.
struct Tableau {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
    beta: Vec<f64>,
    basis: Vec<usize>,
    upper: Vec<f64>,
    at_upper: Vec<bool>,
    is_basic: Vec<bool>,
    d: Vec<f64>,
    iterations: usize,
    limit: usize,
}

enum Phase {
    Done,
    Unbounded,
    Limit,
}

impl Tableau {
    fn at(&self, r: usize, j: usize) -> f64 {
        self.a[r * self.cols + j]
    }

    fn value(&self, j: usize) -> f64 {
        if self.at_upper[j] {
            self.upper[j]
        } else {
            0.0
        }
    }

    fn set_costs(&mut self, cost: &[f64]) {
        for j in 0..self.cols {
            let mut d = cost[j];
            for r in 0..self.rows {
                d -= cost[self.basis[r]] * self.at(r, j);
            }
            self.d[j] = if self.is_basic[j] { 0.0 } else { d };
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let cols = self.cols;
        let p = self.at(r, j);
        for x in &mut self.a[r * cols..(r + 1) * cols] {
            *x /= p;
        }
        let (before, rest) = self.a.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        for row in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
            let f = row[j];
            if f != 0.0 {
                for (x, y) in row.iter_mut().zip(prow.iter()) {
                    *x -= f * y;
                }
            }
        }
        let f = self.d[j];
        if f != 0.0 {
            for (x, y) in self.d.iter_mut().zip(prow.iter()) {
                *x -= f * y;
            }
        }
        let leaving = self.basis[r];
        self.is_basic[leaving] = false;
        self.is_basic[j] = true;
        self.basis[r] = j;
        self.d[j] = 0.0;
    }

    /// Minimizes the cost row currently loaded in `d`.
    fn run(&mut self) -> Phase {
        let mut degenerate = 0usize;
        let mut bland = false;
        loop {
            if self.iterations >= self.limit {
                return Phase::Limit;
            }
            let mut enter: Option<(usize, f64)> = None;
            for j in 0..self.cols {
                if self.is_basic[j] || self.upper[j] <= FEAS_TOL {
                    continue;
                }
                let score = if self.at_upper[j] { self.d[j] } else { -self.d[j] };
                if score > COST_TOL && enter.is_none_or(|(_, s)| !bland && score > s) {
                    enter = Some((j, score));
                    if bland {
                        break;
                    }
                }
            }
            let Some((j, _)) = enter else {
                return Phase::Done;
            };
            let dir = if self.at_upper[j] { -1.0 } else { 1.0 };
            let mut step = self.upper[j];
            let mut leave: Option<usize> = None;
            for r in 0..self.rows {
                let alpha = dir * self.at(r, j);
                let b = self.basis[r];
                let limit = if alpha > PIVOT_TOL {
                    self.beta[r] / alpha
                } else if alpha < -PIVOT_TOL && self.upper[b].is_finite() {
                    (self.upper[b] - self.beta[r]) / -alpha
                } else {
                    continue;
                };
                let limit = limit.max(0.0);
                let better = match leave {
                    None => limit < step,
                    Some(l) => {
                        limit < step - PIVOT_TOL
                            || (limit <= step + PIVOT_TOL && bland && b < self.basis[l])
                    }
                };
                if better {
                    step = limit;
                    leave = Some(r);
                }
            }
            if step.is_infinite() {
                return Phase::Unbounded;
            }
            self.iterations += 1;
            if step <= PIVOT_TOL {
                degenerate += 1;
                if degenerate > 5 * self.rows {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            for r in 0..self.rows {
                self.beta[r] -= dir * step * self.at(r, j);
            }
            match leave {
                None => self.at_upper[j] = !self.at_upper[j],
                Some(r) => {
                    let b = self.basis[r];
                    let alpha = dir * self.at(r, j);
                    self.at_upper[b] = alpha < 0.0;
                    let entering = self.value(j) + dir * step;
                    self.at_upper[j] = false;
                    self.pivot(r, j);
                    self.beta[r] = entering;
                }
            }
        }
    }
}

/// Two-phase bounded-variable primal simplex. Switches to Bland's rule after
/// `5 * rows` consecutive degenerate pivots.
pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    let n = lp.num_cols();
    let rows = lp.num_rows();
    // Columns: structural, one slack per row (fixed at 0 for equalities),
    // one artificial per row.
    let cols = n + 2 * rows;
    let mut t = Tableau {
        rows,
        cols,
        a: vec![0.0; rows * cols],
        beta: vec![0.0; rows],
        basis: vec![0; rows],
        upper: vec![1.0; cols],
        at_upper: vec![false; cols],
        is_basic: vec![false; cols],
        d: vec![0.0; cols],
        iterations: 0,
        limit: 50 * (rows + cols) + 1000,
    };
    let mut cost1 = vec![0.0; cols];
    for (r, row) in lp.rows.iter().enumerate() {
        let slack = n + r;
        let art = n + rows + r;
        t.upper[slack] = match row.sense {
            Sense::Le => f64::INFINITY,
            Sense::Eq => 0.0,
        };
        let mut resid = row.rhs;
        for &(j, c) in &row.terms {
            t.a[r * cols + j] += c;
        }
        for j in 0..n {
            resid -= t.a[r * cols + j] * t.value(j);
        }
        t.a[r * cols + slack] = 1.0;
        if row.sense == Sense::Le && resid >= 0.0 {
            t.basis[r] = slack;
            t.beta[r] = resid;
            t.upper[art] = 0.0;
        } else {
            let sign = if resid >= 0.0 { 1.0 } else { -1.0 };
            // Normalize so the artificial enters with coefficient +1.
            for x in &mut t.a[r * cols..(r + 1) * cols] {
                *x *= sign;
            }
            t.a[r * cols + art] = 1.0;
            t.basis[r] = art;
            t.beta[r] = resid.abs();
            t.upper[art] = f64::INFINITY;
            cost1[art] = 1.0;
        }
    }
    for &b in &t.basis {
        t.is_basic[b] = true;
    }

    let fail = |status, t: &Tableau| LpSolution {
        status,
        objective: f64::NAN,
        primal: None,
        iterations: t.iterations,
    };

    t.set_costs(&cost1);
    match t.run() {
        Phase::Done => {}
        Phase::Limit => return fail(LpStatus::IterationLimit, &t),
        Phase::Unbounded => unreachable!("phase one is bounded below by zero"),
    }
    let infeas: f64 = (0..rows)
        .filter(|&r| cost1[t.basis[r]] > 0.0)
        .map(|r| t.beta[r])
        .sum();
    if infeas > FEAS_TOL * (1 + rows) as f64 {
        return fail(LpStatus::Infeasible, &t);
    }
    for r in 0..rows {
        t.upper[n + rows + r] = 0.0;
    }
    for r in 0..rows {
        let b = t.basis[r];
        if b >= n + rows {
            t.beta[r] = 0.0;
        }
    }

    let mut cost2 = vec![0.0; cols];
    for (c, o) in cost2.iter_mut().zip(&lp.objective) {
        *c = -o;
    }
    t.set_costs(&cost2);
    match t.run() {
        Phase::Done => {}
        Phase::Limit => return fail(LpStatus::IterationLimit, &t),
        Phase::Unbounded => return fail(LpStatus::Unbounded, &t),
    }
    let mut values: Vec<f64> = (0..n).map(|j| t.value(j)).collect();
    for r in 0..rows {
        let b = t.basis[r];
        if b < n {
            values[b] = t.beta[r];
        }
    }
    for v in &mut values {
        // Clean round-off so integral optima print as integers.
        if v.abs() < FEAS_TOL {
            *v = 0.0;
        } else if (*v - 1.0).abs() < FEAS_TOL {
            *v = 1.0;
        }
    }
    let objective = values.iter().zip(&lp.objective).map(|(x, c)| x * c).sum();
    LpSolution {
        status: LpStatus::Optimal,
        objective,
        primal: Some(Point::from_values(lp.layout, values).expect("length matches layout")),
        iterations: t.iterations,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootBound {
    /// LP bound after each round; the first entry is the plain relaxation.
    pub bound_history: Vec<f64>,
    pub cuts: Vec<Cut>,
    pub status: LpStatus,
}

/// Which separation routines the root loop runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutFamilies {
    pub type1: bool,
    pub type2: bool,
}

impl Default for CutFamilies {
    fn default() -> Self {
        CutFamilies {
            type1: true,
            type2: true,
        }
    }
}

/// Solves the relaxation, then alternates Type I/II separation and re-solving
/// for at most `rounds` rounds or until no cut is found.
pub fn root_cut_loop(
    inst: &Instance,
    which: Formulation,
    lb: usize,
    rounds: usize,
    families: CutFamilies,
) -> Result<RootBound> {
    let model = build_formulation(inst, which, lb)?;
    let mut lp = relax(&model);
    let mut state = SeparationState::precompute(inst);
    let mut bound_history = Vec::new();
    let mut cuts = Vec::new();
    let mut sol = lp.solve();
    for round in 0..=rounds {
        if sol.status != LpStatus::Optimal {
            return Ok(RootBound {
                bound_history,
                cuts,
                status: sol.status,
            });
        }
        bound_history.push(sol.objective);
        if round == rounds {
            break;
        }
        let point = sol.primal.as_ref().expect("optimal solutions carry a point");
        let mut found = Vec::new();
        if families.type1 {
            found.extend(separate_type1(inst, &mut state, point)?);
        } else {
            state.reset_active();
        }
        if families.type2 {
            found.extend(separate_type2(inst, &mut state, point)?);
        }
        if found.is_empty() {
            break;
        }
        for cut in &found {
            lp.add_inequality(&cut.inequality)?;
        }
        cuts.extend(found);
        sol = lp.solve();
    }
    Ok(RootBound {
        bound_history,
        cuts,
        status: LpStatus::Optimal,
    })
}
