//! Closed forms for paths and webs.

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Result};
use crate::graph;
use crate::vertex_set::VertexSet;

/// The subpath on indices `lo..=hi` together with the closed set restricted to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSpec {
    pub lo: usize,
    pub hi: usize,
    pub c_members: VertexSet,
}

impl PathSpec {
    /// The whole path `0..n-1`.
    pub fn whole(n: usize, closed: VertexSet) -> Self {
        PathSpec {
            lo: 0,
            hi: n.saturating_sub(1),
            c_members: closed,
        }
    }
}

/// Good configuration test:
/// one vertex in `C`; two vertices not both in `C`; otherwise an endpoint
/// outside `C` whose removal (with its neighbor) leaves a good configuration.
pub fn is_good_configuration(spec: PathSpec) -> Result<bool> {
    if spec.hi < spec.lo || spec.hi >= 64 {
        return Err(invalid_param("good configuration needs a nonempty interval"));
    }
    let len = spec.hi - spec.lo + 1;
    let mut memo = vec![None; len * len];
    Ok(good(spec.lo, spec.hi, spec, &mut memo))
}

fn good(lo: usize, hi: usize, spec: PathSpec, memo: &mut [Option<bool>]) -> bool {
    let len = spec.hi - spec.lo + 1;
    let key = (lo - spec.lo) * len + (hi - spec.lo);
    if let Some(b) = memo[key] {
        return b;
    }
    let c = spec.c_members;
    let res = match hi - lo {
        0 => c.contains(lo),
        1 => !(c.contains(lo) && c.contains(hi)),
        _ => {
            (!c.contains(lo) && good(lo + 2, hi, spec, memo))
                || (!c.contains(hi) && good(lo, hi - 2, spec, memo))
        }
    };
    memo[key] = Some(res);
    res
}

/// Grundy number of `P_n`: `n` when `C` is a good configuration, else `n - 1`.
pub fn path_grundy(n: usize, closed: VertexSet) -> Result<usize> {
    // Validates n >= 1, C inside the path and n = 1 => C = {1}.
    graph::path(n, closed)?;
    Ok(if is_good_configuration(PathSpec::whole(n, closed))? {
        n
    } else {
        n - 1
    })
}

/// Grundy number of the web `W_n^k` (labels `0..n-1`).
///
/// Equals `m` when `C = V` or when some `i` outside `C` leaves `V \ N[i]`
/// inducing a path on which `C` is a good configuration; `m - 1` otherwise.
pub fn web_grundy(n: usize, k: usize, closed: VertexSet) -> Result<usize> {
    let inst = graph::web(n, k, closed)?;
    let all = VertexSet::full(n);
    if closed == all {
        return Ok(n - 2 * k);
    }
    let m = n - 2 * k + 1;
    debug_assert_eq!(inst.upper_bound_m(), m);
    let t = n - 2 * k - 1;
    for i in (all - closed).iter() {
        // V \ N[i] in circular order.
        let arc: Vec<usize> = (k + 1..n - k).map(|d| (i + d) % n).collect();
        debug_assert_eq!(arc.len(), t);
        if !induces_path_in_order(&inst, &arc) {
            continue;
        }
        let c_on_path = arc
            .iter()
            .enumerate()
            .filter(|(_, &v)| closed.contains(v))
            .map(|(pos, _)| pos)
            .collect();
        if is_good_configuration(PathSpec::whole(t, c_on_path))? {
            return Ok(m);
        }
    }
    Ok(m - 1)
}

fn induces_path_in_order(inst: &graph::Instance, order: &[usize]) -> bool {
    order.iter().enumerate().all(|(a, &u)| {
        order.iter().enumerate().skip(a + 1).all(|(b, &v)| {
            inst.adjacency(u).contains(v) == (b == a + 1)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(ids: &[usize]) -> VertexSet {
        ids.iter().map(|&v| v - 1).collect()
    }

    #[test]
    fn good_configuration_cases() {
        let spec = |n, set| PathSpec::whole(n, set);
        assert!(is_good_configuration(spec(1, c(&[1]))).unwrap());
        assert!(!is_good_configuration(spec(1, VertexSet::EMPTY)).unwrap());
        assert!(!is_good_configuration(spec(2, c(&[1, 2]))).unwrap());
        assert!(is_good_configuration(spec(2, c(&[1]))).unwrap());
        assert!(is_good_configuration(spec(4, VertexSet::EMPTY)).unwrap());
        assert!(is_good_configuration(PathSpec { lo: 3, hi: 2, c_members: VertexSet::EMPTY }).is_err());
    }

    #[test]
    fn path_values() {
        assert_eq!(path_grundy(5, VertexSet::full(5)).unwrap(), 4);
        assert_eq!(path_grundy(4, VertexSet::EMPTY).unwrap(), 4);
        assert_eq!(path_grundy(2, c(&[1])).unwrap(), 2);
        assert!(path_grundy(1, VertexSet::EMPTY).is_err());
        assert_eq!(path_grundy(1, c(&[1])).unwrap(), 1);
    }

    #[test]
    fn web_values() {
        let cc: VertexSet = [1, 2, 3, 4, 5, 7].into_iter().collect();
        assert_eq!(web_grundy(8, 3, cc).unwrap(), 3);
        assert_eq!(web_grundy(8, 1, cc).unwrap(), 6);
        assert_eq!(web_grundy(8, 3, VertexSet::full(8)).unwrap(), 2);
        assert!(web_grundy(7, 3, cc).is_err());
    }
}
