use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Instance;
use crate::error::{invalid_param, Error, Result};
use crate::vertex_set::VertexSet;

/// Path `1 - 2 - ... - n`.
pub fn path(n: usize, closed: VertexSet) -> Result<Instance> {
    if n == 0 {
        return Err(invalid_param("a path needs n >= 1"));
    }
    Instance::new(n, (1..n).map(|i| (i - 1, i)), closed)
}

pub fn cycle(n: usize, closed: VertexSet) -> Result<Instance> {
    if n < 3 {
        return Err(invalid_param("a cycle needs n >= 3"));
    }
    Instance::new(n, (0..n).map(|i| (i, (i + 1) % n)), closed)
}

pub fn complete(n: usize, closed: VertexSet) -> Result<Instance> {
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Instance::new(n, edges, closed)
}

/// `K_{1,leaves}` with the center at index 0.
pub fn star(leaves: usize, closed: VertexSet) -> Result<Instance> {
    Instance::new(leaves + 1, (1..=leaves).map(|v| (0, v)), closed)
}

/// The bull with `C = V`: a triangle `1,2,3` with pendant vertices 4 on 2 and 5 on 3.
pub fn bull() -> Instance {
    Instance::new(
        5,
        [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)],
        VertexSet::full(5),
    )
    .expect("bull is a valid instance")
}

/// Web `W_n^k` on labels `0..n-1`: `i ~ j` iff `0 < |i-j| <= k` or `|i-j| >= n-k`.
pub fn web(n: usize, k: usize, closed: VertexSet) -> Result<Instance> {
    if n < 2 * (k + 1) {
        return Err(invalid_param(format!("web needs n >= 2(k+1), got n={n}, k={k}")));
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let d = b - a;
            if d <= k || d >= n - k {
                edges.push((a, b));
            }
        }
    }
    Instance::new(n, edges, closed)
}

/// How [`random`] chooses `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CMode {
    Empty,
    All,
    /// `floor(n/2)` vertices drawn uniformly.
    Half,
}

#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub instance: Instance,
    /// Number of samples drawn, including the accepted one.
    pub attempts: usize,
}

/// Samples `G(n, p)` plus `C` until the result is connected and twin free.
pub fn random(
    n: usize,
    p: f64,
    mode: CMode,
    seed: u64,
    max_retries: usize,
) -> Result<RandomInstance> {
    if n < 3 {
        return Err(invalid_param("random instances need n >= 3"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid_param(format!("edge probability {p} outside [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_retries {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        let closed = match mode {
            CMode::Empty => VertexSet::EMPTY,
            CMode::All => VertexSet::full(n),
            CMode::Half => sample(&mut rng, n, n / 2).into_iter().collect(),
        };
        // A disconnected draw may also have isolated vertices outside C.
        let Ok(inst) = Instance::new(n, edges, closed) else {
            continue;
        };
        if inst.is_connected() && inst.is_twin_free() {
            return Ok(RandomInstance {
                instance: inst,
                attempts: attempt,
            });
        }
    }
    Err(Error::GeneratorExhausted(max_retries))
}
