//! Instances `G;C`: a simple graph plus the set `C` of vertices whose
//! neighborhood is closed.
//!
//! Vertices are 0-based indices inside the crate. Files, LP variable names and
//! the CLI show them 1-based.

mod generate;
mod io;

pub use generate::{bull, complete, cycle, path, random, star, web, CMode, RandomInstance};
pub use io::{parse_instance, write_instance};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A GGDP instance. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    n: usize,
    edges: Vec<(usize, usize)>,
    closed: VertexSet,
    adj: Vec<VertexSet>,
    nbhd: Vec<VertexSet>,
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect();
        f.debug_struct("Instance")
            .field("n", &self.n)
            .field("edges", &edges)
            .field("closed", &self.closed)
            .finish()
    }
}

impl Instance {
    /// Builds and validates an instance from 0-based edges.
    ///
    /// Rejects self-loops, duplicate edges, out-of-range endpoints and any
    /// isolated vertex outside `closed`.
    pub fn new<I>(n: usize, edges: I, closed: VertexSet) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidInstance("an instance needs at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidInstance(format!(
                "{n} vertices exceeds the limit of {MAX_VERTICES}"
            )));
        }
        if !closed.is_subset(VertexSet::full(n)) {
            let bad = (closed - VertexSet::full(n)).first().unwrap_or(n);
            return Err(Error::VertexOutOfRange(bad + 1));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange(v + 1));
                }
            }
            if a == b {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {}", a + 1)));
            }
            if adj[a].contains(b) {
                return Err(Error::InvalidInstance(format!(
                    "duplicate edge ({}, {})",
                    a + 1,
                    b + 1
                )));
            }
            adj[a].insert(b);
            adj[b].insert(a);
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        let nbhd: Vec<VertexSet> = (0..n)
            .map(|v| {
                if closed.contains(v) {
                    adj[v] | VertexSet::singleton(v)
                } else {
                    adj[v]
                }
            })
            .collect();
        if let Some(v) = nbhd.iter().position(|s| s.is_empty()) {
            return Err(Error::IsolatedOutsideC(v + 1));
        }
        Ok(Instance {
            n,
            edges: list,
            closed,
            adj,
            nbhd,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn closed_set(&self) -> VertexSet {
        self.closed
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Open neighborhood `N(v)`.
    #[inline]
    pub fn adjacency(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `N<v>`: `N[v]` if `v` is in `C`, else `N(v)`. Panics if `v >= n`.
    #[inline]
    pub fn neighborhood(&self, v: usize) -> VertexSet {
        self.nbhd[v]
    }

    pub fn try_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.nbhd[v])
    }

    pub fn neighborhoods(&self) -> &[VertexSet] {
        &self.nbhd
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v + 1))
        }
    }

    /// `delta(G;C)`, the smallest neighborhood size.
    pub fn min_neighborhood(&self) -> usize {
        self.nbhd.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    /// The step horizon `m = n - delta(G;C) + 1`, an upper bound on the Grundy number.
    pub fn upper_bound_m(&self) -> usize {
        self.n - self.min_neighborhood() + 1
    }

    /// The relation `a ⊲ b`: `N<b> \ N<a>` is nonempty, i.e. `(a, b)` is legal.
    /// No check that `a != b`.
    #[inline]
    pub fn prec(&self, a: usize, b: usize) -> bool {
        !self.nbhd[b].is_subset(self.nbhd[a])
    }

    /// Checked form of [`Instance::prec`].
    pub fn precedes(&self, a: usize, b: usize) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::InvalidParameter(format!(
                "precedence needs distinct vertices, got {} twice",
                a + 1
            )));
        }
        Ok(self.prec(a, b))
    }

    pub fn is_clutter(&self) -> bool {
        self.all_pairs(|a, b| self.prec(a, b))
    }

    /// Every ordered difference `N<a> \ N<b>` has at least two vertices.
    pub fn is_strong_clutter(&self) -> bool {
        self.all_pairs(|a, b| (self.nbhd[a] - self.nbhd[b]).len() >= 2)
    }

    fn all_pairs(&self, f: impl Fn(usize, usize) -> bool) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| a == b || f(a, b)))
    }

    /// Unordered pairs `(u, v)`, `u < v`, with `N<u> = N<v>`.
    pub fn find_twins(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.nbhd[u] == self.nbhd[v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_twin_free(&self) -> bool {
        self.find_twins().is_empty()
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertices()
    }

    fn component_of(&self, start: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next | self.adj[v];
            }
            frontier = next - seen;
            seen = seen | next;
        }
        seen
    }

    /// Subgraph induced by `keep`, with vertices relabeled in increasing order.
    /// Returns the instance and the map from new index to old index.
    pub fn induced(&self, keep: VertexSet) -> Result<(Instance, Vec<usize>)> {
        let map: Vec<usize> = keep.iter().filter(|&v| v < self.n).collect();
        let mut inv = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inv[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| keep.contains(a) && keep.contains(b))
            .map(|&(a, b)| (inv[a], inv[b]));
        let closed = map
            .iter()
            .enumerate()
            .filter(|(_, &old)| self.closed.contains(old))
            .map(|(new, _)| new)
            .collect();
        Ok((Instance::new(map.len(), edges, closed)?, map))
    }

    /// Deletes vertex `v`; higher indices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Result<Instance> {
        self.check_vertex(v)?;
        Ok(self.induced(self.vertices() - VertexSet::singleton(v))?.0)
    }

    /// Repeatedly deletes the higher-indexed vertex of the first twin pair
    /// until the instance is twin free. `removed` holds original indices.
    pub fn reduce_twins(&self) -> (Instance, Vec<usize>) {
        let mut current = self.clone();
        let mut labels: Vec<usize> = (0..self.n).collect();
        let mut removed = Vec::new();
        while let Some(&(_, v)) = current.find_twins().first() {
            removed.push(labels.remove(v));
            current = current
                .remove_vertex(v)
                .expect("deleting a twin keeps every neighborhood nonempty");
        }
        (current, removed)
    }

    /// Connected components as standalone instances, each with its map back
    /// to the original indices.
    pub fn split_components(&self) -> Vec<(Instance, Vec<usize>)> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let comp = self.component_of(start);
            left = left - comp;
            out.push(
                self.induced(comp)
                    .expect("a component of a valid instance is valid"),
            );
        }
        out
    }

    /// Adds a twin of `u` as the new vertex `n`. The copy is adjacent to `N(u)`,
    /// plus `u` itself when `u` is in `C`, and joins `C` exactly when `u` does.
    pub fn with_twin(&self, u: usize) -> Result<Instance> {
        self.check_vertex(u)?;
        let t = self.n;
        let mut edges = self.edges.clone();
        edges.extend(self.adj[u].iter().map(|w| (w, t)));
        let mut closed = self.closed;
        if closed.contains(u) {
            edges.push((u, t));
            closed.insert(t);
        }
        Instance::new(self.n + 1, edges, closed)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Instance) -> Result<Instance> {
        let off = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        let closed = self
            .closed
            .iter()
            .chain(other.closed.iter().map(|v| v + off))
            .collect();
        Instance::new(self.n + other.n, edges, closed)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Instance> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length differs from n".into()));
        }
        let edges = self.edges.iter().map(|&(a, b)| (perm[a], perm[b]));
        let closed = self.closed.iter().map(|v| perm[v]).collect();
        Instance::new(self.n, edges, closed)
    }

    /// Same graph with a different closed set.
    pub fn with_closed(&self, closed: VertexSet) -> Result<Instance> {
        Instance::new(self.n, self.edges.iter().copied(), closed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().map(|&v| v - 1).collect()
    }

    fn p2_closed_first() -> Instance {
        Instance::new(2, [(0, 1)], set(&[1])).unwrap()
    }

    #[test]
    fn bull_neighborhoods() {
        let b = bull();
        assert_eq!(b.n(), 5);
        assert_eq!(b.edges().len(), 5);
        assert_eq!(b.neighborhood(3), set(&[2, 4]));
        assert_eq!(b.upper_bound_m(), 4);
    }

    #[test]
    fn p2_neighborhoods() {
        let p = p2_closed_first();
        assert_eq!(p.neighborhood(1), set(&[1]));
        assert_eq!(p.neighborhood(0), set(&[1, 2]));
        assert!(p.precedes(1, 0).unwrap());
        assert!(!p.precedes(0, 1).unwrap());
        assert!(p.precedes(0, 0).is_err());
        assert!(p.try_neighborhood(2).is_err());
    }

    #[test]
    fn smallest_and_invalid_instances() {
        let one = Instance::new(1, [], set(&[1])).unwrap();
        assert_eq!(one.neighborhood(0), set(&[1]));
        assert_eq!(
            Instance::new(2, [], set(&[1])).unwrap_err(),
            Error::IsolatedOutsideC(2)
        );
        assert!(Instance::new(2, [(0, 0)], set(&[1, 2])).is_err());
        assert!(Instance::new(2, [(0, 1), (1, 0)], set(&[1, 2])).is_err());
        assert_eq!(
            Instance::new(2, [(0, 2)], set(&[1, 2])).unwrap_err(),
            Error::VertexOutOfRange(3)
        );
    }

    #[test]
    fn bounds_m() {
        let k2 = Instance::new(2, [(0, 1)], VertexSet::EMPTY).unwrap();
        assert_eq!(k2.upper_bound_m(), 2);
        let w = web(8, 3, [1, 2, 3, 4, 5, 7].into_iter().collect()).unwrap();
        assert_eq!(w.upper_bound_m(), 3);
    }

    #[test]
    fn web_precedence_and_clutter() {
        let w = web(8, 3, [1, 2, 3, 4, 5, 7].into_iter().collect()).unwrap();
        assert!(!w.precedes(4, 0).unwrap());
        assert!(!w.is_clutter());
        let wv = web(8, 3, VertexSet::full(8)).unwrap();
        assert!(wv.is_clutter());
        assert!(wv.find_twins().is_empty());
        for c in [VertexSet::EMPTY, VertexSet::full(9), set(&[1, 5])] {
            assert!(web(9, 1, c).unwrap().is_clutter());
        }
    }

    #[test]
    fn c5_is_clutter() {
        let c5 = cycle(5, VertexSet::full(5)).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert!(c5.precedes(u, v).unwrap());
                }
            }
        }
        assert!(c5.is_clutter());
    }

    #[test]
    fn twin_reduction() {
        let b = bull();
        let (same, removed) = b.reduce_twins();
        assert_eq!(same, b);
        assert!(removed.is_empty());

        let k3 = complete(3, VertexSet::full(3)).unwrap();
        let (single, removed) = k3.reduce_twins();
        assert_eq!(single.n(), 1);
        assert_eq!(single.closed_set(), set(&[1]));
        assert_eq!(removed.len(), 2);

        // P_4 with vertex 5 attached to 3, so that N<5> = N<4> = {3}.
        let p4 = path(4, VertexSet::EMPTY).unwrap();
        let ext = Instance::new(5, [(0, 1), (1, 2), (2, 3), (2, 4)], VertexSet::EMPTY).unwrap();
        assert_eq!(ext.find_twins(), vec![(3, 4)]);
        let (back, removed) = ext.reduce_twins();
        assert_eq!(back, p4);
        assert_eq!(removed, vec![4]);
    }

    #[test]
    fn components() {
        let c = path(3, VertexSet::EMPTY).unwrap();
        assert_eq!(c.split_components().len(), 1);
        let p2 = path(2, VertexSet::full(2)).unwrap();
        let two = p2.disjoint_union(&p2).unwrap();
        let parts = two.split_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, p2);
        assert_eq!(parts[1].0, p2);
        assert_eq!(parts[1].1, vec![2, 3]);
    }

    #[test]
    fn twin_insertion() {
        let c5 = cycle(5, VertexSet::full(5)).unwrap();
        let ext = c5.with_twin(0).unwrap();
        assert_eq!(ext.n(), 6);
        assert_eq!(ext.find_twins(), vec![(0, 5)]);
        let open = path(4, VertexSet::EMPTY).unwrap().with_twin(1).unwrap();
        assert_eq!(open.find_twins(), vec![(1, 4)]);
        assert!(!open.adjacency(1).contains(4));
    }

    #[test]
    fn strong_clutter_implications() {
        for inst in [
            bull(),
            cycle(5, VertexSet::full(5)).unwrap(),
            cycle(7, VertexSet::EMPTY).unwrap(),
            web(10, 2, VertexSet::EMPTY).unwrap(),
        ] {
            if inst.is_strong_clutter() {
                assert!(inst.is_clutter());
            }
            if inst.is_clutter() {
                assert!(inst.find_twins().is_empty());
            }
        }
    }
}
