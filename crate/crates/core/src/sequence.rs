//! Legal sequences, the greedy heuristic and the exact Grundy number.
//!
//! A sequence only ever depends on the set `W` of vertices footprinted so far:
//! `v` can be appended iff `N<v>` is not contained in `W`, and a chosen vertex
//! can never be chosen again because its neighborhood is then inside `W`. The
//! exact solver memoizes the best remaining length per `W`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Instance;
use crate::vertex_set::VertexSet;

/// Default cap on the number of distinct footprint states the exact solver may expand.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceCheck {
    pub legal: bool,
    pub dominating: bool,
    /// `W_1, W_2, ...` up to and including the first violation.
    pub footprints: Vec<VertexSet>,
}

/// Checks legality and domination of `vertices` (0-based).
pub fn check_sequence(inst: &Instance, vertices: &[usize]) -> Result<SequenceCheck> {
    for &v in vertices {
        inst.check_vertex(v)?;
    }
    let mut covered = VertexSet::EMPTY;
    let mut footprints = Vec::with_capacity(vertices.len());
    let mut legal = true;
    for &v in vertices {
        let w = inst.neighborhood(v) - covered;
        footprints.push(w);
        if w.is_empty() {
            legal = false;
            break;
        }
        covered = covered | w;
    }
    Ok(SequenceCheck {
        legal,
        dominating: legal && covered == inst.vertices(),
        footprints,
    })
}

/// A sequence known to be legal for the instance it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegalSequence {
    vertices: Vec<usize>,
    footprints: Vec<VertexSet>,
    dominating: bool,
}

impl LegalSequence {
    pub fn new(inst: &Instance, vertices: Vec<usize>) -> Result<Self> {
        let check = check_sequence(inst, &vertices)?;
        if !check.legal {
            let at = check.footprints.len();
            return Err(Error::IllegalSequence(format!(
                "vertex {} at step {at} footprints nothing",
                vertices[at - 1] + 1
            )));
        }
        Ok(LegalSequence {
            vertices,
            footprints: check.footprints,
            dominating: check.dominating,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn footprints(&self) -> &[VertexSet] {
        &self.footprints
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_dominating(&self) -> bool {
        self.dominating
    }

    /// 1-based ids separated by spaces.
    pub fn display_ids(&self) -> String {
        self.vertices
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Repeatedly picks the vertex with the fewest (but at least one) new
/// footprints, smallest index on ties.
pub fn greedy_sequence(inst: &Instance) -> LegalSequence {
    let mut covered = VertexSet::EMPTY;
    let mut order = Vec::new();
    while covered != inst.vertices() {
        let pick = (0..inst.n())
            .filter_map(|v| {
                let fresh = (inst.neighborhood(v) - covered).len();
                (fresh > 0).then_some((fresh, v))
            })
            .min()
            .map(|(_, v)| v)
            .expect("an uncovered vertex always has a neighbor that can footprint it");
        covered = covered | inst.neighborhood(pick);
        order.push(pick);
    }
    LegalSequence::new(inst, order).expect("greedy only picks legal vertices")
}

struct Memo<'a> {
    inst: &'a Instance,
    full: VertexSet,
    table: HashMap<u64, u32>,
    budget: u64,
}

impl Memo<'_> {
    fn best(&mut self, covered: VertexSet) -> Result<u32> {
        if let Some(&b) = self.table.get(&covered.bits()) {
            return Ok(b);
        }
        if self.table.len() as u64 >= self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        let movable: Vec<usize> = (0..self.inst.n())
            .filter(|&v| !self.inst.neighborhood(v).is_subset(covered))
            .collect();
        // Every step footprints a new vertex and uses a new movable vertex.
        let cap = (self.full - covered).len().min(movable.len()) as u32;
        let mut best = 0;
        for v in movable {
            if best == cap {
                break;
            }
            let sub = 1 + self.best(covered | self.inst.neighborhood(v))?;
            best = best.max(sub);
        }
        self.table.insert(covered.bits(), best);
        Ok(best)
    }
}

/// Exact value and witness with the default budget.
pub fn grundy_exact(inst: &Instance) -> Result<(usize, LegalSequence)> {
    grundy_exact_with_budget(inst, DEFAULT_BUDGET)
}

pub fn grundy_exact_with_budget(inst: &Instance, budget: u64) -> Result<(usize, LegalSequence)> {
    let mut memo = Memo {
        inst,
        full: inst.vertices(),
        table: HashMap::new(),
        budget,
    };
    let value = memo.best(VertexSet::EMPTY)?;
    let mut covered = VertexSet::EMPTY;
    let mut order = Vec::new();
    let mut left = value;
    while left > 0 {
        let mut next = None;
        for v in 0..inst.n() {
            let nv = inst.neighborhood(v);
            if !nv.is_subset(covered) && memo.best(covered | nv)? + 1 == left {
                next = Some(v);
                break;
            }
        }
        let v = next.expect("memo values are consistent");
        covered = covered | inst.neighborhood(v);
        order.push(v);
        left -= 1;
    }
    let witness = LegalSequence::new(inst, order)?;
    debug_assert!(witness.is_dominating());
    Ok((value as usize, witness))
}

/// `i(G;C,v)` for every vertex: the latest step at which `v` occurs in some legal sequence.
pub fn max_step_indices(inst: &Instance) -> Result<Vec<usize>> {
    max_step_indices_with_budget(inst, DEFAULT_BUDGET)
}

pub fn max_step_indices_with_budget(inst: &Instance, budget: u64) -> Result<Vec<usize>> {
    // Longest sequence ending in each reachable footprint set.
    let mut depth: HashMap<u64, u32> = HashMap::new();
    let mut stack = vec![VertexSet::EMPTY];
    depth.insert(0, 0);
    while let Some(w) = stack.pop() {
        for v in 0..inst.n() {
            let nv = inst.neighborhood(v);
            if nv.is_subset(w) {
                continue;
            }
            let next = (w | nv).bits();
            if !depth.contains_key(&next) {
                if depth.len() as u64 >= budget {
                    return Err(Error::BudgetExhausted(budget));
                }
                depth.insert(next, 0);
                stack.push(VertexSet::from_bits(next));
            }
        }
    }
    let mut states: Vec<u64> = depth.keys().copied().collect();
    states.sort_by_key(|s| (s.count_ones(), *s));
    for &s in &states {
        let d = depth[&s];
        let w = VertexSet::from_bits(s);
        for v in 0..inst.n() {
            let nv = inst.neighborhood(v);
            if !nv.is_subset(w) {
                let e = depth.get_mut(&(w | nv).bits()).expect("state was reached");
                *e = (*e).max(d + 1);
            }
        }
    }
    let mut out = vec![0usize; inst.n()];
    for &s in &states {
        let d = depth[&s] as usize;
        let w = VertexSet::from_bits(s);
        for (v, slot) in out.iter_mut().enumerate() {
            if !inst.neighborhood(v).is_subset(w) {
                *slot = (*slot).max(d + 1);
            }
        }
    }
    Ok(out)
}

pub fn max_step_index(inst: &Instance, v: usize) -> Result<usize> {
    inst.check_vertex(v)?;
    Ok(max_step_indices(inst)?[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bull, complete, path, web};

    fn c(ids: &[usize]) -> VertexSet {
        ids.iter().map(|&v| v - 1).collect()
    }

    fn web_c() -> VertexSet {
        [1, 2, 3, 4, 5, 7].into_iter().collect()
    }

    #[test]
    fn check_examples() {
        let w = web(8, 3, web_c()).unwrap();
        assert!(check_sequence(&w, &[0, 4, 1]).unwrap().legal);
        let empty = check_sequence(&w, &[]).unwrap();
        assert!(empty.legal && !empty.dominating);
        let p2 = path(2, c(&[1])).unwrap();
        let bad = check_sequence(&p2, &[0, 1]).unwrap();
        assert!(!bad.legal);
        assert_eq!(bad.footprints.len(), 2);
        assert!(bad.footprints[1].is_empty());
        assert!(check_sequence(&p2, &[2]).is_err());
        assert!(check_sequence(&p2, &[0, 0]).map(|c| !c.legal).unwrap());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_sequence(&complete(3, VertexSet::full(3)).unwrap()).len(), 1);
        let p4 = path(4, VertexSet::full(4)).unwrap();
        let g = greedy_sequence(&p4);
        assert_eq!(g.len(), 3);
        assert!(g.is_dominating());
    }

    #[test]
    fn exact_examples() {
        let (v, wit) = grundy_exact(&web(8, 3, web_c()).unwrap()).unwrap();
        assert_eq!(v, 3);
        assert_eq!(wit.len(), 3);
        assert_eq!(grundy_exact(&web(8, 1, web_c()).unwrap()).unwrap().0, 6);
        assert_eq!(grundy_exact(&path(5, VertexSet::full(5)).unwrap()).unwrap().0, 4);
        assert_eq!(grundy_exact(&bull()).unwrap().0, 3);
    }

    #[test]
    fn budget_is_reported() {
        let w = web(10, 1, VertexSet::EMPTY).unwrap();
        assert_eq!(
            grundy_exact_with_budget(&w, 3).unwrap_err(),
            Error::BudgetExhausted(3)
        );
    }

    #[test]
    fn step_indices() {
        let p2 = path(2, c(&[1])).unwrap();
        assert_eq!(max_step_indices(&p2).unwrap(), vec![2, 1]);
        let k3 = complete(3, VertexSet::full(3)).unwrap();
        assert_eq!(max_step_indices(&k3).unwrap(), vec![1, 1, 1]);
        let b = bull();
        let idx = max_step_indices(&b).unwrap();
        assert_eq!(*idx.iter().max().unwrap(), 3);
        assert_eq!(max_step_index(&b, 0).unwrap(), idx[0]);
    }
}
