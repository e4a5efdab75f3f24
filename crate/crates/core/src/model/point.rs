use std::fmt::Write;

use serde::Serialize;

use super::{Layout, Var};
use crate::error::{invalid_param, Error, Result};
use crate::graph::Instance;
use crate::sequence::LegalSequence;

/// A (possibly fractional) assignment to all `2nm` variables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point {
    layout: Layout,
    values: Vec<f64>,
}

impl Point {
    pub fn zeros(layout: Layout) -> Self {
        Point {
            layout,
            values: vec![0.0; layout.len()],
        }
    }

    /// `(1, 0)`: nothing chosen, nothing footprinted.
    pub fn start(layout: Layout) -> Self {
        let mut p = Point::zeros(layout);
        p.values[..layout.n * layout.m].fill(1.0);
        p
    }

    pub fn from_values(layout: Layout, values: Vec<f64>) -> Result<Self> {
        if values.len() != layout.len() {
            return Err(Error::DimensionMismatch {
                expected: layout.len().to_string(),
                got: values.len().to_string(),
            });
        }
        Ok(Point { layout, values })
    }

    pub fn from_mask(layout: Layout, mask: u64) -> Self {
        let values = (0..layout.len())
            .map(|j| (mask >> j & 1) as f64)
            .collect();
        Point { layout, values }
    }

    /// Packed form if every value is 0 or 1 and the layout fits in 64 bits.
    pub fn to_mask(&self) -> Option<u64> {
        if self.values.len() > 64 {
            return None;
        }
        let mut mask = 0u64;
        for (j, &v) in self.values.iter().enumerate() {
            if v == 1.0 {
                mask |= 1 << j;
            } else if v != 0.0 {
                return None;
            }
        }
        Some(mask)
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, var: Var) -> f64 {
        self.values[self.layout.index(var)]
    }

    pub fn set(&mut self, var: Var, value: f64) {
        let j = self.layout.index(var);
        self.values[j] = value;
    }

    pub fn x(&self, u: usize, i: usize) -> f64 {
        self.get(Var::X(u, i))
    }

    pub fn y(&self, v: usize, i: usize) -> f64 {
        self.get(Var::Y(v, i))
    }

    pub fn is_integral(&self, tol: f64) -> bool {
        self.values
            .iter()
            .all(|&v| v.abs() <= tol || (v - 1.0).abs() <= tol)
    }

    pub(crate) fn check_layout(&self, layout: Layout) -> Result<()> {
        if self.layout != layout {
            return Err(Error::DimensionMismatch {
                expected: format!("n={}, m={}", layout.n, layout.m),
                got: format!("n={}, m={}", self.layout.n, self.layout.m),
            });
        }
        Ok(())
    }
}

/// Reads lines `x <u> <i> <value>` / `y <v> <i> <value>` (1-based vertices);
/// missing entries are 0 and `#` starts a comment.
pub fn parse_point(text: &str, layout: Layout) -> Result<Point> {
    let mut p = Point::zeros(layout);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(err("expected `x|y <vertex> <step> <value>`".into()));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad integer {s:?}")));
        let v = num(toks[1])?;
        let i = num(toks[2])?;
        let val: f64 = toks[3]
            .parse()
            .map_err(|_| err(format!("bad value {:?}", toks[3])))?;
        if v == 0 || v > layout.n || i == 0 || i > layout.m {
            return Err(err(format!("entry ({v}, {i}) outside n={}, m={}", layout.n, layout.m)));
        }
        if !val.is_finite() {
            return Err(err(format!("value {val} is not finite")));
        }
        let var = match toks[0] {
            "x" => Var::X(v - 1, i),
            "y" => Var::Y(v - 1, i),
            other => return Err(err(format!("unknown variable kind {other:?}"))),
        };
        p.set(var, val);
    }
    Ok(p)
}

/// Writes the nonzero entries in layout order.
pub fn write_point(point: &Point) -> String {
    let mut out = String::new();
    for (j, &val) in point.values.iter().enumerate() {
        if val != 0.0 {
            let (kind, v, i) = match point.layout.var(j) {
                Var::X(u, i) => ('x', u, i),
                Var::Y(v, i) => ('y', v, i),
            };
            writeln!(out, "{kind} {} {i} {val}", v + 1).unwrap();
        }
    }
    out
}

/// Starts at `(1, 0)` and, for each step `i`, chooses `v_i`: `y_{v_i,i} = 1` and
/// `x_{u,j} = 0` for `u` in `N<v_i>` and `j >= i`.
pub fn point_from_sequence(inst: &Instance, seq: &LegalSequence, m: usize) -> Result<Point> {
    if seq.len() > m {
        return Err(invalid_param(format!(
            "sequence of length {} exceeds the horizon {m}",
            seq.len()
        )));
    }
    let layout = Layout::new(inst.n(), m);
    let mut p = Point::start(layout);
    for (k, &v) in seq.vertices().iter().enumerate() {
        let i = k + 1;
        inst.check_vertex(v)?;
        p.set(Var::Y(v, i), 1.0);
        for u in inst.neighborhood(v) {
            for j in i..=m {
                p.set(Var::X(u, j), 0.0);
            }
        }
    }
    Ok(p)
}

/// Reads the chosen vertex of each step, skipping steps with none.
pub fn sequence_from_point(inst: &Instance, point: &Point) -> Result<LegalSequence> {
    let layout = point.layout;
    if layout.n != inst.n() {
        return Err(Error::DimensionMismatch {
            expected: inst.n().to_string(),
            got: layout.n.to_string(),
        });
    }
    if !point.is_integral(0.0) {
        return Err(Error::InfeasiblePoint("point is not integral".into()));
    }
    let mut order = Vec::new();
    for i in 1..=layout.m {
        let chosen: Vec<usize> = (0..layout.n).filter(|&v| point.y(v, i) == 1.0).collect();
        match chosen.as_slice() {
            [] => {}
            [v] => order.push(*v),
            _ => {
                return Err(Error::InfeasiblePoint(format!(
                    "{} vertices chosen at step {i}",
                    chosen.len()
                )))
            }
        }
    }
    LegalSequence::new(inst, order)
}
