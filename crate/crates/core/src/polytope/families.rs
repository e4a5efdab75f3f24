//! Constructors for every inequality family, their textual spec format and
//! the facet conditions stated for each of them.
//!
//! Spec strings use 1-based vertex ids and 1-based steps, e.g.
//! `type2 u1=1 u2=3 w=2 i=3 k=1` or `supernova i=3 k=3 U=1 N= W=2,4 j=1,2,3`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Inequality;
use crate::error::{hypothesis, invalid_param, Error, Result};
use crate::graph::Instance;
use crate::model::{Layout, Var};
use crate::vertex_set::VertexSet;

/// One member of a family, with 0-based vertices and 1-based steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IneqSpec {
    /// `-x_{ui} <= 0`
    NonnegX { u: usize, i: usize },
    /// `-y_{vi} <= 0`
    NonnegY { v: usize, i: usize },
    /// At most one vertex at step `i`.
    Restr1 { i: usize },
    /// The strengthened form of `Restr1` chosen from `V^⊂` and `V^⊃`.
    Restr1Strong { i: usize },
    /// `v` is chosen at most once.
    Restr2 { v: usize },
    /// `v` can be chosen at step `i+1` only if it footprints something.
    Restr3 { v: usize, i: usize },
    Restr4 { u: usize, i: usize },
    /// `x_{u,i+1} <= x_{ui}`
    Restr5 { u: usize, i: usize },
    /// `sum_W y_{w,i+1} <= sum_{N<w_1>} (x_{ui} - x_{u,i+1})`; `w[0]` is `w_1`.
    Nova0 { w: Vec<usize>, i: usize },
    Supernova {
        i: usize,
        k: usize,
        u: Vec<usize>,
        n: Vec<usize>,
        w: Vec<usize>,
        j: Vec<usize>,
    },
    /// `x_{ui} + sum_{j<=i} y_{wj} <= 1`
    Type1 { u: usize, w: usize, i: usize },
    /// `x_{u1 i} + x_{u2 i} + sum_{j<=i} y_{wj} + sum_{N^∪} y_{vk} <= 2`
    Type2 {
        u1: usize,
        u2: usize,
        w: usize,
        i: usize,
        k: usize,
    },
}

impl IneqSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            IneqSpec::NonnegX { .. } => "nonneg-x",
            IneqSpec::NonnegY { .. } => "nonneg-y",
            IneqSpec::Restr1 { .. } => "restr1",
            IneqSpec::Restr1Strong { .. } => "restr1s",
            IneqSpec::Restr2 { .. } => "restr2",
            IneqSpec::Restr3 { .. } => "restr3",
            IneqSpec::Restr4 { .. } => "restr4",
            IneqSpec::Restr5 { .. } => "restr5",
            IneqSpec::Nova0 { .. } => "nova0",
            IneqSpec::Supernova { .. } => "supernova",
            IneqSpec::Type1 { .. } => "type1",
            IneqSpec::Type2 { .. } => "type2",
        }
    }

    /// Builds the inequality over `n` vertices and `m` steps.
    pub fn build(&self, inst: &Instance, m: usize) -> Result<Inequality> {
        let layout = Layout::new(inst.n(), m);
        let nb = |v: usize| inst.neighborhood(v);
        match self {
            &IneqSpec::NonnegX { u, i } => {
                vertex(inst, u)?;
                step(i, 1, m)?;
                Inequality::from_ints(layout, [(Var::X(u, i), -1)], 0)
            }
            &IneqSpec::NonnegY { v, i } => {
                vertex(inst, v)?;
                step(i, 1, m)?;
                Inequality::from_ints(layout, [(Var::Y(v, i), -1)], 0)
            }
            &IneqSpec::Restr1 { i } => {
                step(i, 1, m)?;
                Inequality::from_ints(layout, (0..inst.n()).map(|v| (Var::Y(v, i), 1)), 1)
            }
            &IneqSpec::Restr1Strong { i } => restr1_strong(inst, layout, i),
            &IneqSpec::Restr2 { v } => {
                vertex(inst, v)?;
                Inequality::from_ints(layout, (1..=m).map(|i| (Var::Y(v, i), 1)), 1)
            }
            &IneqSpec::Restr3 { v, i } => nova0(inst, layout, &[v], i),
            &IneqSpec::Restr4 { u, i } => {
                vertex(inst, u)?;
                step(i, 1, m)?;
                let mut t = vec![(Var::X(u, i), 1)];
                t.extend(nb(u).iter().map(|v| (Var::Y(v, i), 1)));
                Inequality::from_ints(layout, t, 1)
            }
            &IneqSpec::Restr5 { u, i } => {
                vertex(inst, u)?;
                step(i, 1, m.saturating_sub(1))?;
                Inequality::from_ints(layout, [(Var::X(u, i + 1), 1), (Var::X(u, i), -1)], 0)
            }
            IneqSpec::Nova0 { w, i } => nova0(inst, layout, w, *i),
            IneqSpec::Supernova { i, k, u, n, w, j } => supernova(inst, layout, *i, *k, u, n, w, j),
            &IneqSpec::Type1 { u, w, i } => {
                vertex(inst, u)?;
                vertex(inst, w)?;
                if !nb(u).contains(w) {
                    return Err(hypothesis("w in N<u>", format!("{} not in N<{}>", w + 1, u + 1)));
                }
                supernova(inst, layout, i, i, &[u], &[], &[w], &[1, i])
            }
            &IneqSpec::Type2 { u1, u2, w, i, k } => {
                vertex(inst, u1)?;
                vertex(inst, u2)?;
                vertex(inst, w)?;
                if u1 == u2 {
                    return Err(hypothesis("u1 != u2", format!("both are {}", u1 + 1)));
                }
                if !(nb(u1) & nb(u2)).contains(w) {
                    return Err(hypothesis(
                        "w in N^∩",
                        format!("{} not in N<{}> ∩ N<{}>", w + 1, u1 + 1, u2 + 1),
                    ));
                }
                supernova(inst, layout, i, k, &[u1, u2], &[], &[w], &[1, i])
            }
        }
    }
}

fn vertex(inst: &Instance, v: usize) -> Result<()> {
    inst.check_vertex(v)
}

fn step(i: usize, lo: usize, hi: usize) -> Result<()> {
    if i < lo || i > hi {
        return Err(invalid_param(format!("step {i} outside {lo}..={hi}")));
    }
    Ok(())
}

fn distinct(inst: &Instance, list: &[usize], what: &str) -> Result<VertexSet> {
    let mut set = VertexSet::EMPTY;
    for &v in list {
        inst.check_vertex(v)?;
        if set.contains(v) {
            return Err(invalid_param(format!("{what} repeats vertex {}", v + 1)));
        }
        set.insert(v);
    }
    Ok(set)
}

/// `(V^⊂, V^⊃)`: vertices whose neighborhood lies inside every other one, and
/// vertices with `N<w> = V`.
pub fn restr1_sets(inst: &Instance) -> (VertexSet, VertexSet) {
    let all = inst.vertices();
    let sub = (0..inst.n())
        .filter(|&u| (0..inst.n()).all(|v| inst.neighborhood(u).is_subset(inst.neighborhood(v))))
        .collect();
    let sup = (0..inst.n())
        .filter(|&w| inst.neighborhood(w) == all)
        .collect();
    (sub, sup)
}

fn restr1_strong(inst: &Instance, layout: Layout, i: usize) -> Result<Inequality> {
    let m = layout.m;
    step(i, 1, m)?;
    let (sub, sup) = restr1_sets(inst);
    if sub.len() > 1 || sup.len() > 1 {
        return Err(hypothesis("twin free", "V^⊂ or V^⊃ has more than one vertex"));
    }
    let mut t: Vec<(Var, i64)> = (0..inst.n()).map(|v| (Var::Y(v, i), 1)).collect();
    let u = sub.first().filter(|_| i < m);
    if let Some(u) = u {
        t.extend((i + 1..=m).map(|j| (Var::Y(u, j), 1)));
    }
    if let Some(w) = sup.first() {
        let at = if u.is_some() { m } else { i };
        t.push((Var::X(w, at), 1));
        t.extend((1..i).map(|j| (Var::Y(w, j), 1)));
    }
    Inequality::from_ints(layout, t, 1)
}

fn check_nova0(inst: &Instance, w: &[usize]) -> Result<()> {
    distinct(inst, w, "W")?;
    let Some(&w1) = w.first() else {
        return Err(invalid_param("W must be nonempty"));
    };
    for &wj in &w[1..] {
        if inst.prec(w1, wj) {
            return Err(hypothesis(
                "w_1 ⋪ w_j",
                format!("{} ⊲ {}", w1 + 1, wj + 1),
            ));
        }
    }
    Ok(())
}

fn nova0(inst: &Instance, layout: Layout, w: &[usize], i: usize) -> Result<Inequality> {
    check_nova0(inst, w)?;
    step(i, 1, layout.m.saturating_sub(1))?;
    let mut t: Vec<(Var, i64)> = w.iter().map(|&v| (Var::Y(v, i + 1), 1)).collect();
    for u in inst.neighborhood(w[0]) {
        t.push((Var::X(u, i), -1));
        t.push((Var::X(u, i + 1), 1));
    }
    Inequality::from_ints(layout, t, 0)
}

#[allow(clippy::too_many_arguments)]
fn supernova(
    inst: &Instance,
    layout: Layout,
    i: usize,
    k: usize,
    u: &[usize],
    n: &[usize],
    w: &[usize],
    j: &[usize],
) -> Result<Inequality> {
    let m = layout.m;
    step(i, 2, m)?;
    step(k, 1, i)?;
    let u_set = distinct(inst, u, "U")?;
    let p = u.len();
    if p == 0 {
        return Err(invalid_param("U must be nonempty"));
    }
    let n_set = distinct(inst, n, "N")?;
    let w_set = distinct(inst, w, "W")?;
    let t = w.len();
    if t == 0 {
        return Err(invalid_param("W must be nonempty"));
    }
    let hits = |v: usize| (inst.neighborhood(v) & u_set).len();
    if let Some(v) = n.iter().find(|&&v| hits(v) != p) {
        return Err(hypothesis("N ⊆ N^p<U>", format!("{} is outside N^p<U>", v + 1)));
    }
    if let Some(v) = w.iter().find(|&&v| hits(v) != p) {
        return Err(hypothesis("W ⊆ N^p<U>", format!("{} is outside N^p<U>", v + 1)));
    }
    if !(w_set & n_set).is_empty() {
        return Err(hypothesis("W ∩ N = ∅", format!("shared {}", w_set & n_set)));
    }
    for r in 0..t.saturating_sub(1) {
        if inst.prec(w[r], w[r + 1]) {
            return Err(hypothesis(
                "H1",
                format!("{} ⊲ {}", w[r] + 1, w[r + 1] + 1),
            ));
        }
    }
    if let Some(&v) = n.iter().find(|&&v| inst.prec(w[t - 1], v)) {
        return Err(hypothesis("H2", format!("{} ⊲ {}", w[t - 1] + 1, v + 1)));
    }
    if j.len() != t + 1 {
        return Err(invalid_param(format!("j needs {} entries, got {}", t + 1, j.len())));
    }
    if j[0] != 1 || j[t] != i || j.windows(2).any(|s| s[0] > s[1]) {
        return Err(invalid_param(format!(
            "j must be nondecreasing from 1 to {i}, got {j:?}"
        )));
    }
    let mut terms: Vec<(Var, i64)> = Vec::new();
    terms.extend(u.iter().map(|&x| (Var::X(x, i), 1)));
    terms.extend(n.iter().map(|&v| (Var::Y(v, i), 1)));
    for r in 0..t {
        terms.extend((j[r]..=j[r + 1]).map(|s| (Var::Y(w[r], s), 1)));
    }
    for v in 0..inst.n() {
        let q = hits(v);
        let coef = if q == p { p - 1 } else { q };
        if coef > 0 {
            terms.push((Var::Y(v, k), coef as i64));
        }
    }
    Inequality::from_ints(layout, terms, p as i64)
}

/// The strengthened form of constraint (1) at step `i` with the default horizon.
pub fn make_restr1_strong(inst: &Instance, i: usize) -> Result<Inequality> {
    IneqSpec::Restr1Strong { i }.build(inst, inst.upper_bound_m())
}

/// The inequality and whether `W` is maximal, which is exactly when it is a facet.
pub fn make_nova0(inst: &Instance, w: &[usize], i: usize) -> Result<(Inequality, bool)> {
    let ineq = IneqSpec::Nova0 { w: w.to_vec(), i }.build(inst, inst.upper_bound_m())?;
    Ok((ineq, nova0_maximal(inst, w)))
}

pub fn make_supernova(
    inst: &Instance,
    i: usize,
    k: usize,
    u: &[usize],
    n: &[usize],
    w: &[usize],
    j: &[usize],
) -> Result<Inequality> {
    IneqSpec::Supernova {
        i,
        k,
        u: u.to_vec(),
        n: n.to_vec(),
        w: w.to_vec(),
        j: j.to_vec(),
    }
    .build(inst, inst.upper_bound_m())
}

pub fn make_type1(inst: &Instance, u: usize, w: usize, i: usize) -> Result<Inequality> {
    IneqSpec::Type1 { u, w, i }.build(inst, inst.upper_bound_m())
}

pub fn make_type2(
    inst: &Instance,
    u1: usize,
    u2: usize,
    w: usize,
    i: usize,
    k: usize,
) -> Result<Inequality> {
    IneqSpec::Type2 { u1, u2, w, i, k }.build(inst, inst.upper_bound_m())
}

fn nova0_maximal(inst: &Instance, w: &[usize]) -> bool {
    let w_set: VertexSet = w.iter().collect();
    (0..inst.n())
        .filter(|&v| !w_set.contains(v))
        .all(|v| inst.prec(w[0], v))
}

/// Whether the member of the family is facet-defining for `P` with horizon
/// `m`, decided from the structural conditions alone (no enumeration).
///
/// The conditions are stated for connected, twin-free instances with at least
/// three vertices; other instances are rejected.
pub fn predict_facet(spec: &IneqSpec, inst: &Instance, m: usize) -> Result<bool> {
    if inst.n() < 3 || !inst.is_connected() || !inst.is_twin_free() {
        return Err(hypothesis(
            "connected, twin free, n >= 3",
            "facet conditions do not apply to this instance",
        ));
    }
    // Rejects malformed parameters the same way the constructor does.
    spec.build(inst, m)?;
    let nb = |v: usize| inst.neighborhood(v);
    Ok(match spec {
        IneqSpec::NonnegY { .. } => true,
        &IneqSpec::NonnegX { i, .. } => i == m,
        &IneqSpec::Restr1 { i } => {
            let (sub, sup) = restr1_sets(inst);
            (sub.is_empty() || i == m) && sup.is_empty()
        }
        IneqSpec::Restr1Strong { .. } => true,
        IneqSpec::Restr2 { .. } => false,
        &IneqSpec::Restr3 { v, .. } => nova0_maximal(inst, &[v]),
        IneqSpec::Nova0 { w, .. } => nova0_maximal(inst, w),
        &IneqSpec::Restr4 { u, i } => {
            i == 1
                || nb(u)
                    .iter()
                    .all(|v| nb(u).iter().any(|w| w != v && inst.prec(v, w)))
        }
        &IneqSpec::Restr5 { u, .. } => (0..inst.n()).all(|v| nb(v) != VertexSet::singleton(u)),
        IneqSpec::Supernova { i, k, u, n, w, j } => {
            if u.len() != 1 || k != i {
                return Err(Error::Unsupported(
                    "facet conditions are known for p = 1 and k = i only".into(),
                ));
            }
            nova1_facet(inst, u[0], n, w, j)
        }
        &IneqSpec::Type1 { u, w, i } => nova1_facet(inst, u, &[], &[w], &[1, i]),
        &IneqSpec::Type2 { u1, u2, w, i, k } => type2_facet(inst, u1, u2, w, i, k),
    })
}

/// Conditions H3 and H4 for `(i, i, {u}, N, W, j)`, after moving trailing
/// `w_r` that only occur at step `i` into `N` so that `j_t < j_{t+1}`.
fn nova1_facet(inst: &Instance, u: usize, n: &[usize], w: &[usize], j: &[usize]) -> bool {
    let t = w.len();
    let last = (0..t)
        .rev()
        .find(|&r| j[r] < j[r + 1])
        .expect("j rises from 1 to i >= 2");
    let w2 = &w[..=last];
    let j2 = &j[..=last + 1];
    let mut n2: VertexSet = n.iter().collect();
    n2 = n2 | w[last + 1..].iter().collect();
    let w_set: VertexSet = w2.iter().collect();

    let nb = |v: usize| inst.neighborhood(v);
    let wt = w2[w2.len() - 1];
    let h3 = !n2.is_empty() || nb(wt) != VertexSet::singleton(u);
    let h4 = (nb(u) - n2 - w_set).iter().all(|v| {
        (0..w2.len()).any(|r| {
            inst.prec(w2[r], v) && inst.prec(v, w2[r]) && j2[r] < j2[r + 1]
        })
    });
    h3 && h4
}

fn type2_facet(inst: &Instance, u1: usize, u2: usize, w: usize, i: usize, k: usize) -> bool {
    let nb = |v: usize| inst.neighborhood(v);
    let us = [u1, u2];
    let cap = nb(u1) & nb(u2);
    let cup = nb(u1) | nb(u2);
    let only = |r: usize| nb(us[r]) - nb(us[1 - r]);
    let pair = VertexSet::singleton(u1) | VertexSet::singleton(u2);
    let escapes = |z: usize, r: usize| {
        !(nb(w) - VertexSet::singleton(us[1 - r]) - nb(z)).is_empty()
    };

    let h1 = (cap - VertexSet::singleton(w))
        .iter()
        .all(|v| inst.prec(v, w) && inst.prec(w, v));
    if !h1 {
        return false;
    }
    if k == i {
        return (0..2).all(|r| only(r).iter().any(|v| inst.prec(w, v)));
    }
    let sym = cup - cap;
    let h3 = sym.iter().filter(|&v| !inst.prec(w, v)).all(|v| {
        (sym - VertexSet::singleton(v))
            .iter()
            .any(|x| (nb(v) & nb(x) & pair).len() == 1 && inst.prec(x, v))
    });
    if !h3 {
        return false;
    }
    if k == 1 {
        return (0..2).all(|r| only(r).iter().any(|z| escapes(z, r)));
    }
    let h5 = (cup - VertexSet::singleton(w))
        .iter()
        .any(|v| inst.prec(w, v) && !(nb(w) - pair - nb(v)).is_empty());
    let h6 = (0..2).all(|r| {
        let first = only(r).iter().any(|v| inst.prec(w, v))
            && (nb(us[1 - r]) - VertexSet::singleton(w))
                .iter()
                .any(|v| inst.prec(w, v));
        first || only(r).iter().any(|z| escapes(z, r))
    });
    h5 && h6
}

fn ids(list: &[usize]) -> String {
    list.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn steps(list: &[usize]) -> String {
    list.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for IneqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.kind();
        match self {
            IneqSpec::NonnegX { u, i } => write!(f, "{k} u={} i={i}", u + 1),
            IneqSpec::NonnegY { v, i } => write!(f, "{k} v={} i={i}", v + 1),
            IneqSpec::Restr1 { i } | IneqSpec::Restr1Strong { i } => write!(f, "{k} i={i}"),
            IneqSpec::Restr2 { v } => write!(f, "{k} v={}", v + 1),
            IneqSpec::Restr3 { v, i } => write!(f, "{k} v={} i={i}", v + 1),
            IneqSpec::Restr4 { u, i } | IneqSpec::Restr5 { u, i } => {
                write!(f, "{k} u={} i={i}", u + 1)
            }
            IneqSpec::Nova0 { w, i } => write!(f, "{k} W={} i={i}", ids(w)),
            IneqSpec::Supernova { i, k: kk, u, n, w, j } => write!(
                f,
                "{k} i={i} k={kk} U={} N={} W={} j={}",
                ids(u),
                ids(n),
                ids(w),
                steps(j)
            ),
            IneqSpec::Type1 { u, w, i } => write!(f, "{k} u={} w={} i={i}", u + 1, w + 1),
            IneqSpec::Type2 { u1, u2, w, i, k: kk } => write!(
                f,
                "{k} u1={} u2={} w={} i={i} k={kk}",
                u1 + 1,
                u2 + 1,
                w + 1
            ),
        }
    }
}

impl FromStr for IneqSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidParameter(format!("inequality spec {s:?}: {msg}"));
        let mut toks = s.split_whitespace();
        let kind = toks.next().ok_or_else(|| bad("empty".into()))?;
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for tok in toks {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, found {tok:?}")))?;
            if fields.insert(key, val).is_some() {
                return Err(bad(format!("repeated key {key}")));
            }
        }
        let mut take = |key: &str| -> Result<&str> {
            fields
                .remove(key)
                .ok_or_else(|| bad(format!("missing {key}=")))
        };
        let num = |v: &str| -> Result<usize> {
            v.parse()
                .map_err(|_| bad(format!("{v:?} is not a nonnegative integer")))
        };
        let id = |v: &str| -> Result<usize> {
            match num(v)? {
                0 => Err(bad("vertex ids start at 1".into())),
                x => Ok(x - 1),
            }
        };
        let list = |v: &str, conv: &dyn Fn(&str) -> Result<usize>| -> Result<Vec<usize>> {
            v.split(',').filter(|x| !x.is_empty()).map(conv).collect()
        };
        let spec = match kind {
            "nonneg-x" => IneqSpec::NonnegX { u: id(take("u")?)?, i: num(take("i")?)? },
            "nonneg-y" => IneqSpec::NonnegY { v: id(take("v")?)?, i: num(take("i")?)? },
            "restr1" => IneqSpec::Restr1 { i: num(take("i")?)? },
            "restr1s" => IneqSpec::Restr1Strong { i: num(take("i")?)? },
            "restr2" => IneqSpec::Restr2 { v: id(take("v")?)? },
            "restr3" => IneqSpec::Restr3 { v: id(take("v")?)?, i: num(take("i")?)? },
            "restr4" => IneqSpec::Restr4 { u: id(take("u")?)?, i: num(take("i")?)? },
            "restr5" => IneqSpec::Restr5 { u: id(take("u")?)?, i: num(take("i")?)? },
            "nova0" => IneqSpec::Nova0 {
                w: list(take("W")?, &id)?,
                i: num(take("i")?)?,
            },
            "supernova" => IneqSpec::Supernova {
                i: num(take("i")?)?,
                k: num(take("k")?)?,
                u: list(take("U")?, &id)?,
                n: list(take("N")?, &id)?,
                w: list(take("W")?, &id)?,
                j: list(take("j")?, &num)?,
            },
            "type1" => IneqSpec::Type1 {
                u: id(take("u")?)?,
                w: id(take("w")?)?,
                i: num(take("i")?)?,
            },
            "type2" => IneqSpec::Type2 {
                u1: id(take("u1")?)?,
                u2: id(take("u2")?)?,
                w: id(take("w")?)?,
                i: num(take("i")?)?,
                k: num(take("k")?)?,
            },
            other => return Err(bad(format!("unknown kind {other:?}"))),
        };
        if let Some(key) = fields.keys().next() {
            return Err(bad(format!("unexpected key {key}")));
        }
        Ok(spec)
    }
}
