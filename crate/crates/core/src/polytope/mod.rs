//! Valid inequalities for the polytope `P = conv(F1 binary points)` and exact
//! checks of validity, dimension and facetness against enumerated points.

mod audit;
mod families;
mod lift;
pub mod rank;

pub use audit::{all_specs, audit, AuditReport, AuditRow, Disagreement};
pub use families::{
    make_nova0, make_restr1_strong, make_supernova, make_type1, make_type2, predict_facet,
    restr1_sets, IneqSpec,
};
pub use lift::lift_twin;

use std::sync::OnceLock;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Instance;
use crate::model::{
    build_formulation, build_formulation_with_horizon, collect_solutions, Formulation, Layout,
    Model, Point, Var,
};
use crate::sequence::max_step_indices;
use crate::vertex_set::VertexSet;
use rank::RankTracker;

/// `sum pi_var * var <= rhs` with rational data, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    layout: Layout,
    terms: Vec<(Var, Rational64)>,
    rhs: Rational64,
}

impl Inequality {
    /// Merges repeated variables and drops zero coefficients.
    pub fn new<I>(layout: Layout, terms: I, rhs: Rational64) -> Result<Self>
    where
        I: IntoIterator<Item = (Var, Rational64)>,
    {
        let mut dense: Vec<(usize, Rational64)> = Vec::new();
        for (var, c) in terms {
            layout.check(var)?;
            dense.push((layout.index(var), c));
        }
        dense.sort_by_key(|&(j, _)| j);
        let mut merged: Vec<(Var, Rational64)> = Vec::with_capacity(dense.len());
        let mut last = usize::MAX;
        for (j, c) in dense {
            if j == last {
                merged.last_mut().unwrap().1 += c;
            } else {
                merged.push((layout.var(j), c));
                last = j;
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Ok(Inequality {
            layout,
            terms: merged,
            rhs,
        })
    }

    /// Integer-coefficient shorthand.
    pub fn from_ints<I>(layout: Layout, terms: I, rhs: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (Var, i64)>,
    {
        Inequality::new(
            layout,
            terms.into_iter().map(|(v, c)| (v, Rational64::from_integer(c))),
            Rational64::from_integer(rhs),
        )
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn terms(&self) -> &[(Var, Rational64)] {
        &self.terms
    }

    pub fn rhs(&self) -> Rational64 {
        self.rhs
    }

    pub fn coef(&self, var: Var) -> Rational64 {
        self.terms
            .iter()
            .find(|(v, _)| *v == var)
            .map(|&(_, c)| c)
            .unwrap_or_else(Rational64::zero)
    }

    /// `(pi^x_{v,1..m}, pi^y_{v,1..m})`.
    pub fn vertex_slices(&self, v: usize) -> (Vec<Rational64>, Vec<Rational64>) {
        let m = self.layout.m;
        let xs = (1..=m).map(|i| self.coef(Var::X(v, i))).collect();
        let ys = (1..=m).map(|i| self.coef(Var::Y(v, i))).collect();
        (xs, ys)
    }

    /// Exact left-hand side at a rational-free 0/1 point.
    pub fn lhs_mask(&self, mask: u64) -> Rational64 {
        self.terms
            .iter()
            .filter(|(v, _)| mask >> self.layout.index(*v) & 1 == 1)
            .map(|&(_, c)| c)
            .sum()
    }

    pub fn lhs(&self, point: &Point) -> f64 {
        self.terms
            .iter()
            .map(|&(v, c)| c.to_f64().unwrap_or(f64::NAN) * point.get(v))
            .sum()
    }

    /// `lhs - rhs` at a fractional point; positive means violated.
    pub fn violation(&self, point: &Point) -> f64 {
        self.lhs(point) - self.rhs.to_f64().unwrap_or(f64::NAN)
    }

    /// The same inequality with all data scaled to integers.
    pub(crate) fn scaled(&self) -> (Vec<(usize, i128)>, i128) {
        let lcm = self
            .terms
            .iter()
            .map(|(_, c)| *c.denom())
            .fold(*self.rhs.denom(), |a, b| a.lcm(&b)) as i128;
        let scale = |r: Rational64| *r.numer() as i128 * (lcm / *r.denom() as i128);
        let terms = self
            .terms
            .iter()
            .map(|&(v, c)| (self.layout.index(v), scale(c)))
            .collect();
        (terms, scale(self.rhs))
    }

    /// True for `-y_{vj} <= 0`.
    pub fn is_nonneg_y(&self) -> bool {
        self.rhs.is_zero()
            && matches!(self.terms.as_slice(), [(Var::Y(..), c)] if c.is_negative())
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (k, (var, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("- ")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{var}")?;
        }
        write!(f, " <= {}", self.rhs)
    }
}

/// Every binary feasible point of one model, packed as bit masks.
#[derive(Debug, Clone)]
pub struct VertexCloud {
    layout: Layout,
    masks: Vec<u64>,
    dim: OnceLock<usize>,
}

impl VertexCloud {
    pub fn new(layout: Layout, mut masks: Vec<u64>) -> Self {
        masks.sort_unstable();
        masks.dedup();
        VertexCloud {
            layout,
            masks,
            dim: OnceLock::new(),
        }
    }

    pub fn from_model(model: &Model) -> Result<Self> {
        Ok(VertexCloud::new(model.layout(), collect_solutions(model)?))
    }

    /// Points of `P = P1` with horizon `upper_bound_m`.
    pub fn f1(inst: &Instance) -> Result<Self> {
        VertexCloud::from_model(&build_formulation(inst, Formulation::F1, 1)?)
    }

    pub fn f1_with_horizon(inst: &Instance, m: usize) -> Result<Self> {
        VertexCloud::from_model(&build_formulation_with_horizon(inst, Formulation::F1, 1, m)?)
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn point(&self, k: usize) -> Point {
        Point::from_mask(self.layout, self.masks[k])
    }

    /// Affine dimension of the points, cached.
    pub fn dimension(&self) -> Result<usize> {
        if let Some(&d) = self.dim.get() {
            return Ok(d);
        }
        let d = affine_dimension_of(self.layout.len(), &self.masks, self.layout.len())?;
        Ok(*self.dim.get_or_init(|| d))
    }
}

/// Affine dimension of `masks`, stopping once it reaches `cap`.
fn affine_dimension_of(len: usize, masks: &[u64], cap: usize) -> Result<usize> {
    let (&first, rest) = masks.split_first().ok_or(Error::EmptyCloud)?;
    let mut tracker = RankTracker::new(len);
    let mut diff = vec![0i64; len];
    for &m in rest {
        if tracker.rank() >= cap {
            break;
        }
        let changed = m ^ first;
        if changed == 0 {
            continue;
        }
        for (j, d) in diff.iter_mut().enumerate() {
            *d = (m >> j & 1) as i64 - (first >> j & 1) as i64;
        }
        tracker.add(&diff);
    }
    Ok(tracker.rank())
}

pub fn affine_dimension(cloud: &VertexCloud) -> Result<usize> {
    cloud.dimension()
}

fn check_layout(ineq: &Inequality, cloud: &VertexCloud) -> Result<()> {
    if ineq.layout != cloud.layout {
        return Err(Error::DimensionMismatch {
            expected: format!("n={}, m={}", cloud.layout.n, cloud.layout.m),
            got: format!("n={}, m={}", ineq.layout.n, ineq.layout.m),
        });
    }
    Ok(())
}

fn slack(terms: &[(usize, i128)], rhs: i128, mask: u64) -> i128 {
    let lhs: i128 = terms
        .iter()
        .filter(|&&(j, _)| mask >> j & 1 == 1)
        .map(|&(_, c)| c)
        .sum();
    rhs - lhs
}

/// No point of the cloud violates the inequality.
pub fn check_valid(ineq: &Inequality, cloud: &VertexCloud) -> Result<bool> {
    Ok(first_violation(ineq, cloud)?.is_none())
}

/// Index of the first violating point, if any.
pub fn first_violation(ineq: &Inequality, cloud: &VertexCloud) -> Result<Option<usize>> {
    check_layout(ineq, cloud)?;
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let (terms, rhs) = ineq.scaled();
    Ok(cloud.masks.iter().position(|&m| slack(&terms, rhs, m) < 0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetReport {
    pub valid: bool,
    pub is_facet: bool,
    /// Affine dimension of the tight points; `None` when none is tight.
    pub tight_dim: Option<usize>,
    pub tight_points: usize,
    pub cloud_dim: usize,
    /// `pi0 >= 0`.
    pub rhs_nonnegative: bool,
    /// `pi^y >= 0`, or the inequality is `-y_{vj} <= 0`.
    pub y_coefs_nonnegative: bool,
}

impl FacetReport {
    /// The necessary conditions every facet must meet.
    pub fn sanity_ok(&self) -> bool {
        !self.is_facet || (self.rhs_nonnegative && self.y_coefs_nonnegative)
    }
}

/// Validity plus the rank test: a facet is a valid inequality whose tight
/// points span an affine space of dimension one less than the cloud's.
pub fn check_facet(ineq: &Inequality, cloud: &VertexCloud) -> Result<FacetReport> {
    check_layout(ineq, cloud)?;
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let cloud_dim = cloud.dimension()?;
    let (terms, rhs) = ineq.scaled();
    let mut valid = true;
    let mut tight = Vec::new();
    let mut loose = false;
    for &m in &cloud.masks {
        match slack(&terms, rhs, m) {
            s if s < 0 => {
                valid = false;
                break;
            }
            0 => tight.push(m),
            _ => loose = true,
        }
    }
    let rhs_nonnegative = !ineq.rhs.is_negative();
    let y_coefs_nonnegative = ineq.is_nonneg_y()
        || ineq
            .terms
            .iter()
            .all(|(v, c)| matches!(v, Var::X(..)) || !c.is_negative());
    if !valid {
        return Ok(FacetReport {
            valid,
            is_facet: false,
            tight_dim: None,
            tight_points: 0,
            cloud_dim,
            rhs_nonnegative,
            y_coefs_nonnegative,
        });
    }
    let tight_dim = if tight.is_empty() {
        None
    } else {
        // With a loose point present the tight set cannot reach the full
        // dimension, so the elimination may stop one short of it.
        let cap = if loose { cloud_dim.saturating_sub(1) } else { cloud_dim };
        Some(affine_dimension_of(cloud.layout.len(), &tight, cap)?)
    };
    let is_facet = loose && cloud_dim > 0 && tight_dim == Some(cloud_dim - 1);
    Ok(FacetReport {
        valid,
        is_facet,
        tight_dim,
        tight_points: tight.len(),
        cloud_dim,
        rhs_nonnegative,
        y_coefs_nonnegative,
    })
}

/// `m(n - |V_1|) + sum_v i(G;C,v) - 1` with `V_1 = {v : N<v> = V}` and LB = 1.
pub fn p3_dimension_formula(inst: &Instance) -> Result<usize> {
    let m = inst.upper_bound_m();
    let v1 = (0..inst.n())
        .filter(|&v| inst.neighborhood(v) == inst.vertices())
        .count();
    let idx: usize = max_step_indices(inst)?.iter().sum();
    Ok(m * (inst.n() - v1) + idx - 1)
}

/// `N^r<U> = {v : |N<v> ∩ U| = r}`.
pub fn n_r_set(inst: &Instance, u: VertexSet, r: usize) -> Result<VertexSet> {
    if u.is_empty() || !u.is_subset(inst.vertices()) {
        return Err(Error::InvalidParameter("U must be a nonempty vertex set".into()));
    }
    if r == 0 || r > u.len() {
        return Err(Error::InvalidParameter(format!("r={r} outside 1..={}", u.len())));
    }
    Ok((0..inst.n())
        .filter(|&v| (inst.neighborhood(v) & u).len() == r)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bull, complete, path};

    fn c(ids: &[usize]) -> VertexSet {
        ids.iter().map(|&v| v - 1).collect()
    }

    #[test]
    fn bull_full_dimension() {
        let cloud = VertexCloud::f1(&bull()).unwrap();
        assert_eq!(cloud.len(), 16253);
        assert_eq!(affine_dimension(&cloud).unwrap(), 40);
    }

    #[test]
    fn single_point_and_empty() {
        let l = Layout::new(2, 1);
        assert_eq!(affine_dimension(&VertexCloud::new(l, vec![5])).unwrap(), 0);
        assert_eq!(
            affine_dimension(&VertexCloud::new(l, vec![])).unwrap_err(),
            Error::EmptyCloud
        );
    }

    #[test]
    fn p2_cloud_is_full() {
        let p2 = path(2, VertexSet::full(2)).unwrap();
        let cloud = VertexCloud::f1(&p2).unwrap();
        assert_eq!(affine_dimension(&cloud).unwrap(), 4);
    }

    #[test]
    fn p3_formula_examples() {
        let p2 = path(2, c(&[1])).unwrap();
        assert_eq!(p3_dimension_formula(&p2).unwrap(), 4);
        let k3 = complete(3, VertexSet::full(3)).unwrap();
        assert_eq!(p3_dimension_formula(&k3).unwrap(), 2);
        for inst in [p2, k3, path(3, VertexSet::full(3)).unwrap()] {
            let model = build_formulation(&inst, Formulation::F3, 1).unwrap();
            let cloud = VertexCloud::from_model(&model).unwrap();
            assert_eq!(
                affine_dimension(&cloud).unwrap(),
                p3_dimension_formula(&inst).unwrap()
            );
        }
    }

    #[test]
    fn n_r_on_bull() {
        let b = bull();
        assert_eq!(n_r_set(&b, c(&[4, 5]), 2).unwrap(), VertexSet::EMPTY);
        assert_eq!(n_r_set(&b, c(&[4, 5]), 1).unwrap(), c(&[2, 3, 4, 5]));
        assert!(n_r_set(&b, c(&[4, 5]), 3).is_err());
        let k3 = complete(3, VertexSet::full(3)).unwrap();
        assert_eq!(n_r_set(&k3, k3.vertices(), 3).unwrap(), k3.vertices());
    }

    #[test]
    fn nonnegativity_facets() {
        let b = bull();
        let cloud = VertexCloud::f1(&b).unwrap();
        let l = cloud.layout();
        let y = Inequality::from_ints(l, [(Var::Y(0, 2), -1)], 0).unwrap();
        let rep = check_facet(&y, &cloud).unwrap();
        assert!(rep.is_facet && rep.sanity_ok());
        assert!(y.is_nonneg_y());
        let x_early = Inequality::from_ints(l, [(Var::X(0, 2), -1)], 0).unwrap();
        assert!(!check_facet(&x_early, &cloud).unwrap().is_facet);
        let x_last = Inequality::from_ints(l, [(Var::X(0, 4), -1)], 0).unwrap();
        assert!(check_facet(&x_last, &cloud).unwrap().is_facet);
        let wrong = Inequality::from_ints(l, [(Var::Y(0, 1), 1)], 0).unwrap();
        assert!(!check_valid(&wrong, &cloud).unwrap());
    }

    #[test]
    fn display_and_scaling() {
        let l = Layout::new(2, 2);
        let ineq = Inequality::new(
            l,
            [
                (Var::X(0, 1), Rational64::new(1, 2)),
                (Var::Y(1, 2), Rational64::from_integer(-2)),
                (Var::X(0, 1), Rational64::new(1, 2)),
            ],
            Rational64::new(3, 4),
        )
        .unwrap();
        assert_eq!(ineq.to_string(), "x_1_1 - 2 y_2_2 <= 3/4");
        let (terms, rhs) = ineq.scaled();
        assert_eq!(terms, vec![(0, 4), (7, -8)]);
        assert_eq!(rhs, 3);
    }
}
