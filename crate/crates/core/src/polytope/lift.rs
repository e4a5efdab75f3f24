use num_traits::Signed;

use super::Inequality;
use crate::error::{invalid_param, Error, Result};
use crate::graph::Instance;
use crate::model::{Layout, Var};

/// Extends `ineq` to the instance where `u_new` is a twin copy of `u`.
///
/// `lift1` keeps `pi^x_u` on `u`, `lift2` moves it to `u_new`; both copy
/// `pi^y_u` onto `u_new`. The horizon is kept.
pub fn lift_twin(
    ineq: &Inequality,
    inst: &Instance,
    u: usize,
    u_new: usize,
) -> Result<(Inequality, Inequality)> {
    inst.check_vertex(u)?;
    let layout = ineq.layout();
    if layout.n != inst.n() {
        return Err(Error::DimensionMismatch {
            expected: inst.n().to_string(),
            got: layout.n.to_string(),
        });
    }
    if u_new != inst.n() {
        return Err(invalid_param(format!(
            "the twin must receive the next free id {}, got {}",
            inst.n() + 1,
            u_new + 1
        )));
    }
    let (xs, ys) = ineq.vertex_slices(u);
    if let Some(i) = xs.iter().position(|c| c.is_negative()) {
        return Err(invalid_param(format!(
            "coefficient of x_{}_{} is negative",
            u + 1,
            i + 1
        )));
    }
    let m = layout.m;
    let wide = Layout::new(inst.n() + 1, m);
    let twin_y = (1..=m).map(|i| (Var::Y(u_new, i), ys[i - 1]));
    let lift1 = Inequality::new(
        wide,
        ineq.terms().iter().copied().chain(twin_y.clone()),
        ineq.rhs(),
    )?;
    let moved = ineq.terms().iter().map(|&(v, c)| match v {
        Var::X(x, i) if x == u => (Var::X(u_new, i), c),
        other => (other, c),
    });
    let lift2 = Inequality::new(wide, moved.chain(twin_y), ineq.rhs())?;
    Ok((lift1, lift2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;
    use crate::polytope::{check_facet, check_valid, make_type1, VertexCloud};
    use crate::vertex_set::VertexSet;

    #[test]
    fn type1_on_c5_lifts_to_facets() {
        let c5 = cycle(5, VertexSet::full(5)).unwrap();
        let m = c5.upper_bound_m();
        let ineq = make_type1(&c5, 0, 1, 3).unwrap();
        let big = c5.with_twin(1).unwrap();
        let cloud = VertexCloud::f1_with_horizon(&big, m).unwrap();
        for u in [0, 1, 2] {
            let big = c5.with_twin(u).unwrap();
            let cloud = VertexCloud::f1_with_horizon(&big, m).unwrap();
            let (a, b) = lift_twin(&ineq, &c5, u, 5).unwrap();
            assert!(check_facet(&a, &cloud).unwrap().is_facet, "lift1 u={u}");
            assert!(check_facet(&b, &cloud).unwrap().is_facet, "lift2 u={u}");
        }
        let neg = Inequality::from_ints(ineq.layout(), [(Var::X(1, 2), -1)], 0).unwrap();
        assert!(lift_twin(&neg, &c5, 1, 5).is_err());
        let y = Inequality::from_ints(ineq.layout(), [(Var::Y(1, 2), -1)], 0).unwrap();
        let (a, b) = lift_twin(&y, &c5, 1, 5).unwrap();
        assert!(check_valid(&a, &cloud).unwrap() && check_valid(&b, &cloud).unwrap());
        assert!(lift_twin(&ineq, &c5, 0, 3).is_err());
    }
}
