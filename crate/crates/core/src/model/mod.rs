//! The eight integer programming formulations over `x_{ui}` ("u is not yet
//! footprinted after step i") and `y_{vi}` ("v is chosen at step i").

mod enumerate;
mod export;
mod point;

pub use enumerate::{collect_solutions, count_solutions, MAX_ENUM_VARS};
pub use export::export_lp;
pub use point::{parse_point, point_from_sequence, sequence_from_point, write_point, Point};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::graph::Instance;

/// A variable with a 0-based vertex and a 1-based step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X(usize, usize),
    Y(usize, usize),
}

impl Var {
    pub fn vertex(self) -> usize {
        match self {
            Var::X(v, _) | Var::Y(v, _) => v,
        }
    }

    pub fn step(self) -> usize {
        match self {
            Var::X(_, i) | Var::Y(_, i) => i,
        }
    }
}

/// LP name, e.g. `x_3_2`, with a 1-based vertex id.
impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::X(u, i) => write!(f, "x_{}_{}", u + 1, i),
            Var::Y(v, i) => write!(f, "y_{}_{}", v + 1, i),
        }
    }
}

/// Dense indexing of the `2nm` variables: all `x` (vertex-major) then all `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub n: usize,
    pub m: usize,
}

impl Layout {
    pub fn new(n: usize, m: usize) -> Self {
        Layout { n, m }
    }

    pub fn len(&self) -> usize {
        2 * self.n * self.m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, var: Var) -> usize {
        match var {
            Var::X(u, i) => u * self.m + i - 1,
            Var::Y(v, i) => (self.n + v) * self.m + i - 1,
        }
    }

    pub fn var(&self, idx: usize) -> Var {
        let block = self.n * self.m;
        if idx < block {
            Var::X(idx / self.m, idx % self.m + 1)
        } else {
            let j = idx - block;
            Var::Y(j / self.m, j % self.m + 1)
        }
    }

    pub fn check(&self, var: Var) -> Result<()> {
        if var.vertex() >= self.n || var.step() == 0 || var.step() > self.m {
            return Err(invalid_param(format!(
                "variable {var} outside n={}, m={}",
                self.n, self.m
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formulation {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
}

impl Formulation {
    pub const ALL: [Formulation; 8] = [
        Formulation::F1,
        Formulation::F2,
        Formulation::F3,
        Formulation::F4,
        Formulation::F5,
        Formulation::F6,
        Formulation::F7,
        Formulation::F8,
    ];

    fn number(self) -> usize {
        self as usize + 1
    }

    /// At most one vertex per step.
    pub fn has_one_per_step(self) -> bool {
        matches!(self, Formulation::F1 | Formulation::F2 | Formulation::F5 | Formulation::F6)
    }

    /// `x` is forced to 1 unless footprinted.
    pub fn has_exact_footprints(self) -> bool {
        self.number().is_multiple_of(2)
    }

    /// Steps `1..=LB` are used and no gaps follow.
    pub fn has_length_rows(self) -> bool {
        matches!(self, Formulation::F3 | Formulation::F4 | Formulation::F7 | Formulation::F8)
    }

    pub fn has_domination(self) -> bool {
        self.number() >= 5
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.number())
    }
}

impl FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digit = s
            .strip_prefix('F')
            .or_else(|| s.strip_prefix('f'))
            .unwrap_or(s);
        match digit.parse::<usize>() {
            Ok(k @ 1..=8) => Ok(Formulation::ALL[k - 1]),
            _ => Err(invalid_param(format!("unknown formulation {s:?}, expected F1..F8"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
}

/// A row `sum coef * var (<= | =) rhs` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    /// Which of the ten constraint families the row belongs to (1..=10).
    pub family: u8,
    pub name: String,
    /// Terms sorted by layout index, no zero coefficients.
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    pub fn activity(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(j, c)| c as f64 * values[j]).sum()
    }

    pub fn activity_mask(&self, mask: u64) -> i64 {
        self.terms
            .iter()
            .filter(|&&(j, _)| mask >> j & 1 == 1)
            .map(|&(_, c)| c)
            .sum()
    }

    pub fn is_satisfied(&self, values: &[f64], tol: f64) -> bool {
        let a = self.activity(values);
        let r = self.rhs as f64;
        match self.sense {
            Sense::Le => a <= r + tol,
            Sense::Eq => (a - r).abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Model {
    inst: Instance,
    formulation: Formulation,
    layout: Layout,
    lb: usize,
    constraints: Vec<Constraint>,
}

struct RowBuilder<'a> {
    layout: &'a Layout,
    out: Vec<Constraint>,
}

impl RowBuilder<'_> {
    fn push(&mut self, family: u8, name: String, terms: &[(Var, i64)], sense: Sense, rhs: i64) {
        let mut dense: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
        let mut sorted: Vec<(usize, i64)> = terms
            .iter()
            .map(|&(v, c)| (self.layout.index(v), c))
            .collect();
        sorted.sort_unstable_by_key(|&(j, _)| j);
        for (j, c) in sorted {
            match dense.last_mut() {
                Some((k, acc)) if *k == j => *acc += c,
                _ => dense.push((j, c)),
            }
        }
        dense.retain(|&(_, c)| c != 0);
        self.out.push(Constraint {
            family,
            name,
            terms: dense,
            sense,
            rhs,
        });
    }
}

/// Builds `which` with horizon `m = upper_bound_m(inst)`.
pub fn build_formulation(inst: &Instance, which: Formulation, lb: usize) -> Result<Model> {
    build_formulation_with_horizon(inst, which, lb, inst.upper_bound_m())
}

/// Same as [`build_formulation`] with an explicit number of steps.
pub fn build_formulation_with_horizon(
    inst: &Instance,
    which: Formulation,
    lb: usize,
    m: usize,
) -> Result<Model> {
    if m == 0 {
        return Err(invalid_param("the horizon must be at least 1"));
    }
    if lb == 0 || lb > m {
        return Err(invalid_param(format!("lb={lb} outside 1..={m}")));
    }
    let n = inst.n();
    let layout = Layout::new(n, m);
    let mut rb = RowBuilder {
        layout: &layout,
        out: Vec::new(),
    };
    let nb = |v: usize| inst.neighborhood(v).iter();
    let id = |v: usize| v + 1;

    if which.has_one_per_step() {
        for i in 1..=m {
            let t: Vec<_> = (0..n).map(|v| (Var::Y(v, i), 1)).collect();
            rb.push(1, format!("r1_{i}"), &t, Sense::Le, 1);
        }
    }
    for v in 0..n {
        let t: Vec<_> = (1..=m).map(|i| (Var::Y(v, i), 1)).collect();
        rb.push(2, format!("r2_{}", id(v)), &t, Sense::Le, 1);
    }
    for v in 0..n {
        for i in 1..m {
            let mut t = vec![(Var::Y(v, i + 1), 1)];
            for u in nb(v) {
                t.push((Var::X(u, i), -1));
                t.push((Var::X(u, i + 1), 1));
            }
            rb.push(3, format!("r3_{}_{i}", id(v)), &t, Sense::Le, 0);
        }
    }
    for u in 0..n {
        for i in 1..=m {
            let mut t = vec![(Var::X(u, i), 1)];
            t.extend(nb(u).map(|v| (Var::Y(v, i), 1)));
            rb.push(4, format!("r4_{}_{i}", id(u)), &t, Sense::Le, 1);
        }
    }
    for u in 0..n {
        for i in 1..m {
            let t = [(Var::X(u, i + 1), 1), (Var::X(u, i), -1)];
            rb.push(5, format!("r5_{}_{i}", id(u)), &t, Sense::Le, 0);
        }
    }
    if which.has_exact_footprints() {
        for u in 0..n {
            let mut t = vec![(Var::X(u, 1), -1)];
            t.extend(nb(u).map(|v| (Var::Y(v, 1), -1)));
            rb.push(6, format!("r6_{}", id(u)), &t, Sense::Le, -1);
        }
        for u in 0..n {
            for i in 1..m {
                let mut t = vec![(Var::X(u, i), 1), (Var::X(u, i + 1), -1)];
                t.extend(nb(u).map(|v| (Var::Y(v, i + 1), -1)));
                rb.push(7, format!("r7_{}_{i}", id(u)), &t, Sense::Le, 0);
            }
        }
    }
    if which.has_length_rows() {
        for i in 1..=lb {
            let t: Vec<_> = (0..n).map(|v| (Var::Y(v, i), 1)).collect();
            rb.push(8, format!("r8_{i}"), &t, Sense::Eq, 1);
        }
        for i in lb..m {
            let mut t: Vec<_> = (0..n).map(|v| (Var::Y(v, i + 1), 1)).collect();
            t.extend((0..n).map(|v| (Var::Y(v, i), -1)));
            rb.push(9, format!("r9_{i}"), &t, Sense::Le, 0);
        }
    }
    if which.has_domination() {
        for u in 0..n {
            let t: Vec<_> = nb(u)
                .flat_map(|v| (1..=m).map(move |i| (Var::Y(v, i), -1)))
                .collect();
            rb.push(10, format!("r10_{}", id(u)), &t, Sense::Le, -1);
        }
    }
    let constraints = rb.out;
    Ok(Model {
        inst: inst.clone(),
        formulation: which,
        layout,
        lb,
        constraints,
    })
}

impl Model {
    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn m(&self) -> usize {
        self.layout.m
    }

    pub fn lb(&self) -> usize {
        self.lb
    }

    pub fn num_vars(&self) -> usize {
        self.layout.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Objective `sum y` of a dense assignment.
    pub fn objective(&self, values: &[f64]) -> f64 {
        values[self.layout.n * self.layout.m..].iter().sum()
    }

    pub fn objective_mask(&self, mask: u64) -> u32 {
        let block = self.layout.n * self.layout.m;
        (mask >> block).count_ones()
    }

    /// Rows violated by more than `tol`.
    pub fn violated(&self, point: &Point, tol: f64) -> Result<Vec<&Constraint>> {
        point.check_layout(self.layout)?;
        Ok(self
            .constraints
            .iter()
            .filter(|c| !c.is_satisfied(point.values(), tol))
            .collect())
    }

    pub fn is_feasible(&self, point: &Point, tol: f64) -> Result<bool> {
        Ok(self.violated(point, tol)?.is_empty()
            && point.values().iter().all(|&v| (-tol..=1.0 + tol).contains(&v)))
    }

    pub fn is_feasible_mask(&self, mask: u64) -> bool {
        self.constraints.iter().all(|c| {
            let a = c.activity_mask(mask);
            match c.sense {
                Sense::Le => a <= c.rhs,
                Sense::Eq => a == c.rhs,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bull, path};
    use crate::vertex_set::VertexSet;

    #[test]
    fn layout_roundtrip() {
        let l = Layout::new(5, 4);
        for j in 0..l.len() {
            assert_eq!(l.index(l.var(j)), j);
        }
        assert_eq!(l.index(Var::Y(0, 1)), 20);
        assert_eq!(Var::X(2, 3).to_string(), "x_3_3");
    }

    #[test]
    fn bull_f1_size() {
        let model = build_formulation(&bull(), Formulation::F1, 1).unwrap();
        assert_eq!(model.num_vars(), 40);
        assert_eq!(model.constraints().len(), 59);
    }

    #[test]
    fn family_membership() {
        let b = bull();
        for f in Formulation::ALL {
            let model = build_formulation(&b, f, 1).unwrap();
            let has = |fam: u8| model.constraints().iter().any(|c| c.family == fam);
            for fam in 2..=5 {
                assert!(has(fam));
            }
            assert_eq!(has(1), f.has_one_per_step(), "{f}");
            assert_eq!(has(6) && has(7), f.has_exact_footprints(), "{f}");
            assert_eq!(has(8) && has(9), f.has_length_rows(), "{f}");
            assert_eq!(has(10), f.has_domination(), "{f}");
        }
        let f8 = build_formulation(&b, Formulation::F8, 1).unwrap();
        let count = |fam: u8| f8.constraints().iter().filter(|c| c.family == fam).count();
        assert_eq!(count(8), 1);
        assert_eq!(count(9), 3);
    }

    #[test]
    fn lb_range() {
        let p = path(3, VertexSet::EMPTY).unwrap();
        assert!(build_formulation(&p, Formulation::F3, 0).is_err());
        assert!(build_formulation(&p, Formulation::F3, 4).is_err());
        assert!(build_formulation(&p, Formulation::F3, 3).is_ok());
    }

    #[test]
    fn formulation_names() {
        for f in Formulation::ALL {
            assert_eq!(f.to_string().parse::<Formulation>().unwrap(), f);
        }
        assert!("F9".parse::<Formulation>().is_err());
    }
}
