//! Brute-force reference implementations used by the integration tests.
//! Nothing here calls into the library's algorithms; instances are only read
//! for their edge list and closed set.
#![allow(dead_code)]

use ggdp_core::Instance;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `N<v>` as sorted vectors, rebuilt from the raw edge list.
pub fn neighborhoods(inst: &Instance) -> Vec<Vec<usize>> {
    let n = inst.n();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in inst.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let closed = inst.closed_set();
    (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| adj[v][u] || (u == v && closed.contains(v)))
                .collect()
        })
        .collect()
}

/// Every legal sequence, including the empty one.
pub fn legal_sequences(inst: &Instance) -> Vec<Vec<usize>> {
    let nb = neighborhoods(inst);
    let mut out = Vec::new();
    let mut seq = Vec::new();
    let mut covered = vec![0u32; inst.n()];
    fn go(
        nb: &[Vec<usize>],
        seq: &mut Vec<usize>,
        covered: &mut Vec<u32>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(seq.clone());
        for v in 0..nb.len() {
            if seq.contains(&v) || nb[v].iter().all(|&u| covered[u] > 0) {
                continue;
            }
            for &u in &nb[v] {
                covered[u] += 1;
            }
            seq.push(v);
            go(nb, seq, covered, out);
            seq.pop();
            for &u in &nb[v] {
                covered[u] -= 1;
            }
        }
    }
    go(&nb, &mut seq, &mut covered, &mut out);
    out
}

pub fn is_dominating(inst: &Instance, seq: &[usize]) -> bool {
    let nb = neighborhoods(inst);
    (0..inst.n()).all(|u| seq.iter().any(|&v| nb[v].contains(&u)))
}

pub fn grundy(inst: &Instance) -> usize {
    legal_sequences(inst).iter().map(Vec::len).max().unwrap_or(0)
}

/// Largest 1-based position of each vertex over all legal sequences; 0 if it
/// never appears.
pub fn max_positions(inst: &Instance) -> Vec<usize> {
    let mut best = vec![0; inst.n()];
    for s in legal_sequences(inst) {
        for (k, &v) in s.iter().enumerate() {
            best[v] = best[v].max(k + 1);
        }
    }
    best
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for r in rows {
        let mut v: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = BigRational::one() / v[p].clone();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            basis.push((p, v));
            if basis.len() == width {
                break;
            }
        }
    }
    basis.len()
}

/// Affine dimension of 0/1 points given as bit masks over `width` coordinates.
pub fn affine_dim(masks: &[u64], width: usize) -> usize {
    let Some(&first) = masks.first() else {
        return 0;
    };
    let rows: Vec<Vec<i64>> = masks[1..]
        .iter()
        .map(|&m| {
            (0..width)
                .map(|j| (m >> j & 1) as i64 - (first >> j & 1) as i64)
                .collect()
        })
        .collect();
    rational_rank(&rows)
}

use ggdp_core::polytope::n_r_set;
use ggdp_core::VertexSet;
use rand::seq::SliceRandom;
use rand::Rng;

/// `(i, k, U, N, W, j)` drawn at random so that every stated hypothesis holds.
pub type SupernovaParams = (usize, usize, Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

pub fn random_supernova<R: Rng>(inst: &Instance, m: usize, rng: &mut R) -> Option<SupernovaParams> {
    let n = inst.n();
    let p = rng.random_range(1..=3.min(n));
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    let u: Vec<usize> = all[..p].to_vec();
    let np = n_r_set(inst, u.iter().collect(), p).ok()?;
    let mut cand = np.to_vec();
    if cand.is_empty() {
        return None;
    }
    cand.shuffle(rng);
    let want = rng.random_range(1..=cand.len().min(4));
    let mut w = vec![cand[0]];
    for &v in &cand[1..] {
        if w.len() == want {
            break;
        }
        if !inst.prec(*w.last().unwrap(), v) {
            w.push(v);
        }
    }
    let wt = *w.last().unwrap();
    let used: VertexSet = w.iter().collect();
    let nn: Vec<usize> = (np - used)
        .iter()
        .filter(|&v| !inst.prec(wt, v) && rng.random_bool(0.5))
        .collect();
    let i = rng.random_range(2..=m);
    let k = rng.random_range(1..=i);
    let mut j = vec![1];
    let mut inner: Vec<usize> = (0..w.len() - 1).map(|_| rng.random_range(1..=i)).collect();
    inner.sort_unstable();
    j.extend(inner);
    j.push(i);
    Some((i, k, u, nn, w, j))
}
