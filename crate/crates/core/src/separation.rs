//! Heuristic separation of Type I and Type II inequalities at a fractional
//! point, with candidate sets computed once per instance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Instance;
use crate::model::{Layout, Point};
use crate::polytope::{IneqSpec, Inequality};
use crate::vertex_set::VertexSet;

/// Type I cuts need `x_ui + sum_{j<=i} y_wj` above this.
pub const TYPE1_THRESHOLD: f64 = 1.1;
/// Type II cuts need the left-hand side above this.
pub const TYPE2_THRESHOLD: f64 = 2.2;
/// A value is fractional when it is farther than this from both 0 and 1.
pub const FRACTIONAL_EPS: f64 = 1e-6;
const RANGE_TOL: f64 = 1e-9;
/// Sums within this of a threshold count as equal to it.
const THRESHOLD_TOL: f64 = 1e-9;

/// Candidate sets `W_u`, `W_{u1 u2}` and the active vertex set `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationState {
    w_sets: Vec<VertexSet>,
    /// `(u1, u2, W_{u1 u2})` with `u1 < u2`, nonempty sets only.
    w_pair_sets: Vec<(usize, usize, VertexSet)>,
    active: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cut {
    #[serde(serialize_with = "as_text")]
    pub spec: IneqSpec,
    #[serde(serialize_with = "as_text")]
    pub inequality: Inequality,
    /// Left-hand side minus right-hand side at the separated point.
    pub violation: f64,
}

fn as_text<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl SeparationState {
    pub fn precompute(inst: &Instance) -> Self {
        let n = inst.n();
        let nb = |v: usize| inst.neighborhood(v);
        let w_sets: Vec<VertexSet> = (0..n)
            .map(|u| {
                nb(u)
                    .iter()
                    .filter(|&w| {
                        nb(w).len() >= 2
                            && (nb(u) - VertexSet::singleton(w))
                                .iter()
                                .all(|v| inst.prec(w, v) && inst.prec(v, w))
                    })
                    .collect()
            })
            .collect();
        let escapes = |w: usize, other: usize, z: usize| {
            !(nb(w) - VertexSet::singleton(other) - nb(z)).is_empty()
        };
        let mut w_pair_sets = Vec::new();
        for u1 in 0..n {
            for u2 in u1 + 1..n {
                let set: VertexSet = (w_sets[u1] & w_sets[u2])
                    .iter()
                    .filter(|&w| {
                        (nb(u1) - nb(u2)).iter().any(|z1| escapes(w, u2, z1))
                            && (nb(u2) - nb(u1)).iter().any(|z2| escapes(w, u1, z2))
                    })
                    .collect();
                if !set.is_empty() {
                    w_pair_sets.push((u1, u2, set));
                }
            }
        }
        SeparationState {
            w_sets,
            w_pair_sets,
            active: inst.vertices(),
        }
    }

    pub fn w_set(&self, u: usize) -> VertexSet {
        self.w_sets[u]
    }

    /// `W_{u1 u2}` for either order of the pair.
    pub fn w_pair_set(&self, u1: usize, u2: usize) -> VertexSet {
        let (a, b) = (u1.min(u2), u1.max(u2));
        self.w_pair_sets
            .iter()
            .find(|&&(x, y, _)| (x, y) == (a, b))
            .map_or(VertexSet::EMPTY, |&(_, _, s)| s)
    }

    pub fn active(&self) -> VertexSet {
        self.active
    }

    pub fn reset_active(&mut self) {
        self.active = VertexSet::full(self.w_sets.len());
    }
}

fn is_fractional(v: f64) -> bool {
    v.fract().abs().min(1.0 - v.fract().abs()) > FRACTIONAL_EPS
}

fn check_point(inst: &Instance, point: &Point) -> Result<Layout> {
    let layout = point.layout();
    if layout.n != inst.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("n={}", inst.n()),
            got: format!("n={}", layout.n),
        });
    }
    if let Some(v) = point
        .values()
        .iter()
        .find(|v| !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(*v))
    {
        return Err(Error::InfeasiblePoint(format!("value {v} outside [0, 1]")));
    }
    Ok(layout)
}

/// Resets `A` to `V`, then scans `u` and `w ∈ W_u ∩ A` in increasing order.
pub fn separate_type1(inst: &Instance, state: &mut SeparationState, point: &Point) -> Result<Vec<Cut>> {
    let layout = check_point(inst, point)?;
    state.reset_active();
    let mut cuts = Vec::new();
    for u in 0..inst.n() {
        for w in state.w_sets[u] {
            if !state.active.contains(w) {
                continue;
            }
            let mut sum = point.y(w, 1);
            for i in 2..=layout.m {
                sum += point.y(w, i);
                let lhs = point.x(u, i) + sum;
                if lhs > TYPE1_THRESHOLD + THRESHOLD_TOL {
                    let spec = IneqSpec::Type1 { u, w, i };
                    let inequality = spec.build(inst, layout.m)?;
                    cuts.push(Cut {
                        spec,
                        inequality,
                        violation: lhs - 1.0,
                    });
                    state.active.remove(w);
                    break;
                }
            }
        }
    }
    Ok(cuts)
}

/// Scans pairs `u1 < u2` and `w ∈ W_{u1 u2} ∩ A`, using `A` as left by the
/// previous call.
pub fn separate_type2(inst: &Instance, state: &mut SeparationState, point: &Point) -> Result<Vec<Cut>> {
    let layout = check_point(inst, point)?;
    let mut cuts = Vec::new();
    for &(u1, u2, set) in &state.w_pair_sets {
        let cup = inst.neighborhood(u1) | inst.neighborhood(u2);
        for w in set {
            if !state.active.contains(w) {
                continue;
            }
            let mut sum = point.y(w, 1);
            'steps: for i in 2..=layout.m {
                sum += point.y(w, i);
                let (x1, x2) = (point.x(u1, i), point.x(u2, i));
                if !is_fractional(x1) || !is_fractional(x2) {
                    continue;
                }
                for k in 1..=i {
                    if !is_fractional(point.y(w, k)) {
                        continue;
                    }
                    let lhs = x1 + x2 + sum + cup.iter().map(|v| point.y(v, k)).sum::<f64>();
                    if lhs > TYPE2_THRESHOLD + THRESHOLD_TOL {
                        let spec = IneqSpec::Type2 { u1, u2, w, i, k };
                        let inequality = spec.build(inst, layout.m)?;
                        cuts.push(Cut {
                            spec,
                            inequality,
                            violation: lhs - 2.0,
                        });
                        state.active.remove(w);
                        break 'steps;
                    }
                }
            }
        }
    }
    Ok(cuts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bull, cycle, path};
    use crate::model::Var;
    use crate::polytope::VertexCloud;

    #[test]
    fn c5_candidate_sets() {
        let c5 = cycle(5, VertexSet::full(5)).unwrap();
        let st = SeparationState::precompute(&c5);
        for u in 0..5 {
            assert_eq!(st.w_set(u), c5.neighborhood(u));
        }
        assert_eq!(st.active(), c5.vertices());
        for u1 in 0..5 {
            for u2 in 0..5 {
                if u1 != u2 {
                    let s = st.w_pair_set(u1, u2);
                    assert!(s.is_subset(st.w_set(u1) & st.w_set(u2)));
                }
            }
        }
    }

    #[test]
    fn leaf_outside_c_is_never_a_candidate() {
        let p4 = path(4, VertexSet::EMPTY).unwrap();
        let st = SeparationState::precompute(&p4);
        for u in 0..4 {
            assert!(!st.w_set(u).contains(0) && !st.w_set(u).contains(3));
        }
    }

    #[test]
    fn integral_points_give_no_cuts() {
        let b = bull();
        let cloud = VertexCloud::f1(&b).unwrap();
        let mut st = SeparationState::precompute(&b);
        for k in 0..cloud.len() {
            let p = cloud.point(k);
            assert!(separate_type1(&b, &mut st, &p).unwrap().is_empty());
            assert!(separate_type2(&b, &mut st, &p).unwrap().is_empty());
        }
    }

    #[test]
    fn type1_threshold_is_strict() {
        let c5 = cycle(5, VertexSet::full(5)).unwrap();
        let layout = Layout::new(5, 3);
        let mut st = SeparationState::precompute(&c5);
        let mut p = Point::zeros(layout);
        p.set(Var::X(0, 2), 0.5);
        p.set(Var::Y(1, 1), 0.4);
        p.set(Var::Y(1, 2), 0.3);
        let cuts = separate_type1(&c5, &mut st, &p).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].spec, IneqSpec::Type1 { u: 0, w: 1, i: 2 });
        assert!(!st.active().contains(1));

        let mut q = Point::zeros(layout);
        q.set(Var::X(0, 2), 0.6);
        q.set(Var::Y(1, 1), 0.5);
        assert!(separate_type1(&c5, &mut st, &q).unwrap().is_empty());
        assert!(separate_type1(&c5, &mut st, &Point::from_mask(layout, 0)).unwrap().is_empty());
    }
}
