mod common;

use ggdp_core::graph::{bull, cycle, path, random, CMode};
use ggdp_core::model::{
    build_formulation, collect_solutions, count_solutions, point_from_sequence,
    sequence_from_point, Formulation, Point,
};
use ggdp_core::sequence::LegalSequence;
use ggdp_core::{Instance, VertexSet};

fn instances() -> Vec<Instance> {
    let mut out = vec![
        bull(),
        path(3, VertexSet::EMPTY).unwrap(),
        path(4, VertexSet::EMPTY).unwrap(),
        path(4, VertexSet::full(4)).unwrap(),
        cycle(4, VertexSet::singleton(0)).unwrap(),
    ];
    for seed in 0..6 {
        out.push(random(4, 0.5, CMode::Half, seed, 1000).unwrap().instance);
    }
    out
}

/// Counts of legal (and dominating) sequences by length.
fn by_length(inst: &Instance) -> (Vec<u64>, Vec<u64>) {
    let mut all = vec![0u64; inst.n() + 1];
    let mut dom = vec![0u64; inst.n() + 1];
    for s in common::legal_sequences(inst) {
        all[s.len()] += 1;
        if common::is_dominating(inst, &s) {
            dom[s.len()] += 1;
        }
    }
    (all, dom)
}

#[test]
fn length_rows_give_sequences() {
    for inst in instances() {
        let (all, dom) = by_length(&inst);
        for lb in 1..=inst.upper_bound_m() {
            let want: u64 = all[lb..].iter().sum();
            let want_dom: u64 = dom[lb..].iter().sum();
            let f4 = build_formulation(&inst, Formulation::F4, lb).unwrap();
            let f8 = build_formulation(&inst, Formulation::F8, lb).unwrap();
            assert_eq!(count_solutions(&f4).unwrap(), want, "{inst:?} lb={lb}");
            assert_eq!(count_solutions(&f8).unwrap(), want_dom, "{inst:?} lb={lb}");
        }
    }
}

#[test]
fn gaps_allowed_without_length_rows() {
    // Without the length rows a sequence may be spread over any increasing
    // choice of steps among the m available.
    for inst in instances() {
        let m = inst.upper_bound_m();
        let (all, dom) = by_length(&inst);
        let spread = |counts: &[u64]| -> u64 {
            counts.iter().enumerate().map(|(l, &c)| c * common::binomial(m, l)).sum()
        };
        let f2 = build_formulation(&inst, Formulation::F2, 1).unwrap();
        let f6 = build_formulation(&inst, Formulation::F6, 1).unwrap();
        assert_eq!(count_solutions(&f2).unwrap(), spread(&all), "{inst:?}");
        assert_eq!(count_solutions(&f6).unwrap(), spread(&dom), "{inst:?}");
    }
}

#[test]
fn sequences_map_to_feasible_points_and_back() {
    for inst in instances() {
        let m = inst.upper_bound_m();
        let f1 = build_formulation(&inst, Formulation::F1, 1).unwrap();
        let f4 = build_formulation(&inst, Formulation::F4, 1).unwrap();
        let mut f4_points = collect_solutions(&f4).unwrap();
        f4_points.sort_unstable();
        let mut seen = Vec::new();
        for s in common::legal_sequences(&inst) {
            let seq = LegalSequence::new(&inst, s.clone()).unwrap();
            let p = point_from_sequence(&inst, &seq, m).unwrap();
            assert!(f1.is_feasible(&p, 0.0).unwrap());
            assert_eq!(sequence_from_point(&inst, &p).unwrap(), seq);
            if !s.is_empty() {
                let mask = p.to_mask().unwrap();
                assert!(f4_points.contains(&mask), "{inst:?} {s:?}");
                seen.push(mask);
            }
        }
        seen.sort_unstable();
        assert_eq!(seen, f4_points);
    }
}

#[test]
fn formulations_nest() {
    // Adding families can only remove points.
    let b = bull();
    let get = |f| {
        let model = build_formulation(&b, f, 1).unwrap();
        let mut pts = collect_solutions(&model).unwrap();
        pts.sort_unstable();
        pts
    };
    let pts: Vec<Vec<u64>> = Formulation::ALL.iter().map(|&f| get(f)).collect();
    let subset = |a: &Vec<u64>, b: &Vec<u64>| a.iter().all(|x| b.binary_search(x).is_ok());
    // F2 ⊆ F1, F3 ⊆ F1, F4 ⊆ F2 ∩ F3, F5 ⊆ F1, F8 ⊆ F4.
    assert!(subset(&pts[1], &pts[0]));
    assert!(subset(&pts[2], &pts[0]));
    assert!(subset(&pts[3], &pts[1]) && subset(&pts[3], &pts[2]));
    assert!(subset(&pts[4], &pts[0]));
    assert!(subset(&pts[7], &pts[3]));
    let start = Point::start(build_formulation(&b, Formulation::F1, 1).unwrap().layout());
    assert!(pts[0].contains(&start.to_mask().unwrap()));
}
