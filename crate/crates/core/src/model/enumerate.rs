//! Depth-first enumeration of the binary feasible points of a model.
//!
//! Variables are fixed step by step (`y_{.,1}`, `x_{.,1}`, `y_{.,2}`, ...). Each
//! row tracks its fixed activity and the least and greatest contribution its
//! free variables can still make, so a branch is cut as soon as one row can no
//! longer be satisfied.

use super::{Model, Sense, Var};
use crate::error::{Error, Result};

/// Points are packed into a `u64`, one bit per variable.
pub const MAX_ENUM_VARS: usize = 64;

struct Search<'a> {
    order: Vec<usize>,
    rows_of: Vec<Vec<(usize, i64)>>,
    sense: Vec<Sense>,
    rhs: Vec<i64>,
    fixed: Vec<i64>,
    lo_free: Vec<i64>,
    hi_free: Vec<i64>,
    model: &'a Model,
}

impl<'a> Search<'a> {
    fn new(model: &'a Model) -> Result<Self> {
        let layout = model.layout();
        if layout.len() > MAX_ENUM_VARS {
            return Err(Error::SizeGuard(format!(
                "{} variables, enumeration handles at most {MAX_ENUM_VARS}",
                layout.len()
            )));
        }
        let mut order = Vec::with_capacity(layout.len());
        for i in 1..=layout.m {
            order.extend((0..layout.n).map(|v| layout.index(Var::Y(v, i))));
            order.extend((0..layout.n).map(|u| layout.index(Var::X(u, i))));
        }
        let rows = model.constraints();
        let mut rows_of = vec![Vec::new(); layout.len()];
        let mut lo_free = vec![0; rows.len()];
        let mut hi_free = vec![0; rows.len()];
        for (r, row) in rows.iter().enumerate() {
            for &(j, c) in &row.terms {
                rows_of[j].push((r, c));
                if c < 0 {
                    lo_free[r] += c;
                } else {
                    hi_free[r] += c;
                }
            }
        }
        Ok(Search {
            order,
            rows_of,
            sense: rows.iter().map(|r| r.sense).collect(),
            rhs: rows.iter().map(|r| r.rhs).collect(),
            fixed: vec![0; rows.len()],
            lo_free,
            hi_free,
            model,
        })
    }

    fn ok(&self, r: usize) -> bool {
        let lo = self.fixed[r] + self.lo_free[r];
        match self.sense[r] {
            Sense::Le => lo <= self.rhs[r],
            Sense::Eq => lo <= self.rhs[r] && self.rhs[r] <= self.fixed[r] + self.hi_free[r],
        }
    }

    fn set(&mut self, j: usize, val: i64, undo: bool) {
        let sign = if undo { -1 } else { 1 };
        for k in 0..self.rows_of[j].len() {
            let (r, c) = self.rows_of[j][k];
            self.fixed[r] += sign * c * val;
            if c < 0 {
                self.lo_free[r] -= sign * c;
            } else {
                self.hi_free[r] -= sign * c;
            }
        }
    }

    fn run(&mut self, depth: usize, mask: u64, visit: &mut dyn FnMut(u64)) {
        if depth == self.order.len() {
            debug_assert!(self.model.is_feasible_mask(mask));
            visit(mask);
            return;
        }
        let j = self.order[depth];
        for val in [0i64, 1] {
            self.set(j, val, false);
            if self.rows_of[j].iter().all(|&(r, _)| self.ok(r)) {
                self.run(depth + 1, mask | (val as u64) << j, visit);
            }
            self.set(j, val, true);
        }
    }
}

/// Number of binary points satisfying every row of `model`.
pub fn count_solutions(model: &Model) -> Result<u64> {
    let mut s = Search::new(model)?;
    let mut count = 0u64;
    s.run(0, 0, &mut |_| count += 1);
    Ok(count)
}

/// All binary feasible points, bit `j` holding the variable with layout index `j`.
pub fn collect_solutions(model: &Model) -> Result<Vec<u64>> {
    let mut s = Search::new(model)?;
    let mut out = Vec::new();
    s.run(0, 0, &mut |mask| out.push(mask));
    Ok(out)
}
