use serde::Serialize;

use super::{check_facet, predict_facet, IneqSpec, VertexCloud};
use crate::error::{invalid_param, Result};
use crate::graph::Instance;
use crate::vertex_set::VertexSet;

/// Longest `W` tried for `(i,i,{u},N,W,j)` inequalities.
const NOVA1_MAX_T: usize = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub family: &'static str,
    pub count: usize,
    pub facets: usize,
    pub predicted: usize,
    pub invalid: usize,
    pub sanity_failures: usize,
    pub disagreements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub spec: String,
    pub predicted: bool,
    pub actual: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub cloud_dim: usize,
    pub rows: Vec<AuditRow>,
    pub disagreements: Vec<Disagreement>,
}

impl AuditReport {
    pub fn total_disagreements(&self) -> usize {
        self.disagreements.len()
    }

    pub fn all_valid(&self) -> bool {
        self.rows.iter().all(|r| r.invalid == 0 && r.sanity_failures == 0)
    }
}

/// Every member of every family with a known facet condition, grouped by family.
pub fn all_specs(inst: &Instance, m: usize) -> Vec<(&'static str, Vec<IneqSpec>)> {
    let n = inst.n();
    let mut out = vec![(
        "nonneg-x",
        (0..n)
            .flat_map(|u| (1..=m).map(move |i| IneqSpec::NonnegX { u, i }))
            .collect(),
    )];
    out.push((
        "nonneg-y",
        (0..n)
            .flat_map(|v| (1..=m).map(move |i| IneqSpec::NonnegY { v, i }))
            .collect(),
    ));
    out.push(("restr1", (1..=m).map(|i| IneqSpec::Restr1 { i }).collect()));
    out.push(("restr1s", (1..=m).map(|i| IneqSpec::Restr1Strong { i }).collect()));
    out.push(("restr2", (0..n).map(|v| IneqSpec::Restr2 { v }).collect()));
    let before_last = || (1..m).collect::<Vec<_>>();
    out.push((
        "restr3",
        (0..n)
            .flat_map(|v| before_last().into_iter().map(move |i| IneqSpec::Restr3 { v, i }))
            .collect(),
    ));
    out.push((
        "restr4",
        (0..n)
            .flat_map(|u| (1..=m).map(move |i| IneqSpec::Restr4 { u, i }))
            .collect(),
    ));
    out.push((
        "restr5",
        (0..n)
            .flat_map(|u| before_last().into_iter().map(move |i| IneqSpec::Restr5 { u, i }))
            .collect(),
    ));

    let mut nova0 = Vec::new();
    for w1 in 0..n {
        let others: Vec<usize> = (0..n).filter(|&v| v != w1 && !inst.prec(w1, v)).collect();
        for bits in 0u64..1 << others.len() {
            let mut w = vec![w1];
            w.extend((0..others.len()).filter(|b| bits >> b & 1 == 1).map(|b| others[b]));
            if w.len() == 1 {
                // Same inequality as restr3.
                continue;
            }
            for i in 1..m {
                nova0.push(IneqSpec::Nova0 { w: w.clone(), i });
            }
        }
    }
    out.push(("nova0", nova0));

    let mut type1 = Vec::new();
    for u in 0..n {
        for w in inst.neighborhood(u) {
            for i in 2..=m {
                type1.push(IneqSpec::Type1 { u, w, i });
            }
        }
    }
    out.push(("type1", type1));

    let mut type2 = Vec::new();
    for u1 in 0..n {
        for u2 in u1 + 1..n {
            for w in inst.neighborhood(u1) & inst.neighborhood(u2) {
                for i in 2..=m {
                    for k in 1..=i {
                        type2.push(IneqSpec::Type2 { u1, u2, w, i, k });
                    }
                }
            }
        }
    }
    out.push(("type2", type2));
    out.push(("nova1", nova1_specs(inst, m)));
    out
}

fn nova1_specs(inst: &Instance, m: usize) -> Vec<IneqSpec> {
    let mut out = Vec::new();
    for u in 0..inst.n() {
        let cand = inst.neighborhood(u);
        let mut chains: Vec<Vec<usize>> = cand.iter().map(|w| vec![w]).collect();
        let mut k = 0;
        while k < chains.len() {
            let c = chains[k].clone();
            if c.len() < NOVA1_MAX_T {
                let last = *c.last().unwrap();
                for w in cand.iter().filter(|&w| !c.contains(&w) && !inst.prec(last, w)) {
                    let mut next = c.clone();
                    next.push(w);
                    chains.push(next);
                }
            }
            k += 1;
        }
        for w in chains {
            let wt = *w.last().unwrap();
            let rest: Vec<usize> = (cand - w.iter().collect::<VertexSet>())
                .iter()
                .filter(|&v| !inst.prec(wt, v))
                .collect();
            for bits in 0u64..1 << rest.len() {
                let nn: Vec<usize> = (0..rest.len())
                    .filter(|b| bits >> b & 1 == 1)
                    .map(|b| rest[b])
                    .collect();
                for i in 2..=m {
                    for j in step_lists(w.len(), i) {
                        out.push(IneqSpec::Supernova {
                            i,
                            k: i,
                            u: vec![u],
                            n: nn.clone(),
                            w: w.clone(),
                            j,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Nondecreasing `j_1 = 1 <= ... <= j_{t+1} = i`.
fn step_lists(t: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![1];
    fn rec(cur: &mut Vec<usize>, left: usize, i: usize, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let mut done = cur.clone();
            done.push(i);
            out.push(done);
            return;
        }
        let lo = *cur.last().unwrap();
        for s in lo..=i {
            cur.push(s);
            rec(cur, left - 1, i, out);
            cur.pop();
        }
    }
    rec(&mut cur, t - 1, i, &mut out);
    out
}

/// Compares the stated facet conditions with the rank test for every member
/// of every family.
pub fn audit(inst: &Instance, cloud: &VertexCloud) -> Result<AuditReport> {
    let layout = cloud.layout();
    if layout.n != inst.n() {
        return Err(invalid_param("cloud and instance differ in vertex count"));
    }
    let m = layout.m;
    let cloud_dim = cloud.dimension()?;
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for (family, specs) in all_specs(inst, m) {
        let mut row = AuditRow {
            family,
            ..AuditRow::default()
        };
        for spec in specs {
            let Ok(ineq) = spec.build(inst, m) else { continue };
            let predicted = predict_facet(&spec, inst, m)?;
            let rep = check_facet(&ineq, cloud)?;
            row.count += 1;
            row.facets += rep.is_facet as usize;
            row.predicted += predicted as usize;
            row.invalid += !rep.valid as usize;
            row.sanity_failures += !rep.sanity_ok() as usize;
            if predicted != rep.is_facet {
                row.disagreements += 1;
                disagreements.push(Disagreement {
                    spec: spec.to_string(),
                    predicted,
                    actual: rep.is_facet,
                });
            }
        }
        rows.push(row);
    }
    Ok(AuditReport {
        cloud_dim,
        rows,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    #[test]
    fn step_lists_small() {
        assert_eq!(step_lists(1, 3), vec![vec![1, 3]]);
        assert_eq!(step_lists(2, 2), vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert_eq!(step_lists(3, 3).len(), 6);
    }

    #[test]
    fn audits_agree() {
        let cases = [
            path(4, VertexSet::EMPTY).unwrap(),
            path(4, [1, 2].into_iter().collect()).unwrap(),
            cycle(5, VertexSet::full(5)).unwrap(),
        ];
        for inst in cases {
            let cloud = VertexCloud::f1(&inst).unwrap();
            let rep = audit(&inst, &cloud).unwrap();
            assert!(rep.all_valid(), "{inst:?} {:?}", rep.rows);
            assert_eq!(rep.disagreements, vec![], "{inst:?}");
        }
    }
}
