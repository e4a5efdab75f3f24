//! Exact rank of integer vectors by fraction-free Gauss-Jordan elimination.
//!
//! Rows are kept fully reduced (zero in every other row's pivot column) and
//! divided by the gcd of their entries after each update, which keeps entries
//! small for the 0/±1 difference vectors this crate feeds in. Arithmetic runs
//! in checked `i128` and restarts in `BigInt` if anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

trait Entry: Clone + Integer + Signed + CheckedMul + CheckedSub {}
impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub> Entry for T {}

struct Basis<T> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Entry> Basis<T> {
    fn new() -> Self {
        Basis { rows: Vec::new() }
    }

    fn normalize(v: &mut [T]) {
        let mut g = T::zero();
        for x in v.iter() {
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if !g.is_zero() && !g.is_one() {
            for x in v.iter_mut() {
                *x = x.div_floor(&g);
            }
        }
    }

    /// `a * v - b * r`, entry by entry. `None` on overflow.
    fn combine(v: &mut [T], a: &T, r: &[T], b: &T) -> Option<()> {
        for (x, y) in v.iter_mut().zip(r) {
            let lhs = x.checked_mul(a)?;
            let rhs = y.checked_mul(b)?;
            *x = lhs.checked_sub(&rhs)?;
        }
        Some(())
    }

    /// Adds `v` and reports whether it raised the rank; `None` on overflow.
    fn add(&mut self, mut v: Vec<T>) -> Option<bool> {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let a = r[*p].clone();
                let b = v[*p].clone();
                Self::combine(&mut v, &a, r, &b)?;
                Self::normalize(&mut v);
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Some(false);
        };
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let a = v[p].clone();
                let b = r[p].clone();
                Self::combine(r, &a, &v, &b)?;
                Self::normalize(r);
            }
        }
        self.rows.push((p, v));
        Some(true)
    }
}

/// Incremental rank computation over integer vectors of a fixed length.
pub struct RankTracker {
    len: usize,
    small: Option<Basis<i128>>,
    big: Option<Basis<BigInt>>,
    seen: Vec<Vec<i64>>,
}

impl RankTracker {
    pub fn new(len: usize) -> Self {
        RankTracker {
            len,
            small: Some(Basis::new()),
            big: None,
            seen: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        match (&self.small, &self.big) {
            (Some(b), _) => b.rows.len(),
            (None, Some(b)) => b.rows.len(),
            _ => unreachable!(),
        }
    }

    /// Adds a vector; returns true if it was independent of the previous ones.
    pub fn add(&mut self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.len);
        if let Some(small) = self.small.as_mut() {
            match small.add(v.iter().map(|&x| x as i128).collect()) {
                Some(raised) => {
                    if raised {
                        self.seen.push(v.to_vec());
                    }
                    return raised;
                }
                None => {
                    // Replay the independent rows so far in big integers.
                    let mut big = Basis::new();
                    for row in &self.seen {
                        big.add(row.iter().map(|&x| BigInt::from(x)).collect());
                    }
                    self.small = None;
                    self.big = Some(big);
                }
            }
        }
        let big = self.big.as_mut().expect("big basis is set after overflow");
        let raised = big
            .add(v.iter().map(|&x| BigInt::from(x)).collect())
            .expect("BigInt arithmetic does not overflow");
        if raised {
            self.seen.push(v.to_vec());
        }
        raised
    }
}

/// Rank of the given rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut t = RankTracker::new(first.len());
    for r in rows {
        t.add(r);
        if t.rank() == first.len() {
            break;
        }
    }
    t.rank()
}
