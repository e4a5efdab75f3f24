mod common;

use ggdp_core::closedform::{path_grundy, web_grundy};
use ggdp_core::graph::{bull, path, random, web, CMode};
use ggdp_core::sequence::{check_sequence, grundy_exact, max_step_indices, LegalSequence};
use ggdp_core::{Instance, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All valid instances on `n` labelled vertices, every edge set and closed set.
fn all_instances(n: usize) -> Vec<Instance> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for eb in 0u64..1 << pairs.len() {
        let edges: Vec<_> = (0..pairs.len()).filter(|k| eb >> k & 1 == 1).map(|k| pairs[k]).collect();
        for cb in 0u64..1 << n {
            if let Ok(inst) = Instance::new(n, edges.clone(), VertexSet::from_bits(cb)) {
                out.push(inst);
            }
        }
    }
    out
}

#[test]
fn exact_solver_matches_brute_force_up_to_four_vertices() {
    for n in 1..=4 {
        for inst in all_instances(n) {
            let (g, witness) = grundy_exact(&inst).unwrap();
            assert_eq!(g, common::grundy(&inst), "{inst:?}");
            assert_eq!(witness.len(), g);
            assert!(check_sequence(&inst, witness.vertices()).unwrap().legal);
            assert_eq!(max_step_indices(&inst).unwrap(), common::max_positions(&inst), "{inst:?}");
        }
    }
}

#[test]
fn exact_solver_matches_brute_force_on_random_instances() {
    for seed in 0..60 {
        let n = 5 + (seed % 4) as usize;
        let mode = [CMode::Empty, CMode::All, CMode::Half][(seed % 3) as usize];
        let inst = random(n, 0.45, mode, seed, 1000).unwrap().instance;
        assert_eq!(grundy_exact(&inst).unwrap().0, common::grundy(&inst), "{inst:?}");
        assert_eq!(max_step_indices(&inst).unwrap(), common::max_positions(&inst), "{inst:?}");
    }
}

#[test]
fn legality_agrees_with_enumeration() {
    let b = bull();
    let legal = common::legal_sequences(&b);
    for s in &legal {
        let check = check_sequence(&b, s).unwrap();
        assert!(check.legal);
        assert_eq!(check.dominating, common::is_dominating(&b, s));
    }
    // Every ordered pair of distinct vertices not in the list is illegal.
    for a in 0..5 {
        for c in 0..5 {
            if a != c && !legal.contains(&vec![a, c]) {
                assert!(LegalSequence::new(&b, vec![a, c]).is_err());
            }
        }
    }
}

#[test]
fn permutation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..20 {
        let inst = random(7, 0.4, CMode::Half, seed, 1000).unwrap().instance;
        let mut perm: Vec<usize> = (0..7).collect();
        perm.shuffle(&mut rng);
        let moved = inst.permute(&perm).unwrap();
        assert_eq!(grundy_exact(&inst).unwrap().0, grundy_exact(&moved).unwrap().0);
        let a = max_step_indices(&inst).unwrap();
        let b = max_step_indices(&moved).unwrap();
        for v in 0..7 {
            assert_eq!(a[v], b[perm[v]]);
        }
    }
}

#[test]
fn disjoint_union_adds_and_twins_do_not_matter() {
    for seed in 0..15 {
        let g = random(4, 0.5, CMode::Half, seed, 1000).unwrap().instance;
        let h = random(5, 0.5, CMode::All, seed + 100, 1000).unwrap().instance;
        let u = g.disjoint_union(&h).unwrap();
        assert_eq!(common::grundy(&u), common::grundy(&g) + common::grundy(&h));
        assert_eq!(grundy_exact(&u).unwrap().0, common::grundy(&u));
        let parts = u.split_components();
        let total: usize = parts.iter().map(|(p, _)| grundy_exact(p).unwrap().0).sum();
        assert_eq!(total, common::grundy(&u));

        for v in 0..g.n() {
            let t = g.with_twin(v).unwrap();
            assert_eq!(common::grundy(&t), common::grundy(&g));
            let (reduced, removed) = t.reduce_twins();
            assert_eq!(removed.len(), 1);
            assert_eq!(grundy_exact(&reduced).unwrap().0, common::grundy(&g));
        }
    }
}

#[test]
fn path_formula_matches_brute_force() {
    for n in 1..=8usize {
        for cb in 0u64..1 << n {
            let c = VertexSet::from_bits(cb);
            let Ok(p) = path(n, c) else { continue };
            assert_eq!(path_grundy(n, c).unwrap(), common::grundy(&p), "n={n} C={c}");
        }
    }
}

#[test]
fn web_formula_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 4..=9usize {
        for k in 1..=(n - 2) / 2 {
            let mut sets = vec![VertexSet::EMPTY, VertexSet::full(n)];
            for _ in 0..8 {
                let bits = rand::Rng::random_range(&mut rng, 0..1u64 << n);
                sets.push(VertexSet::from_bits(bits));
            }
            for c in sets {
                let w = web(n, k, c).unwrap();
                assert_eq!(web_grundy(n, k, c).unwrap(), common::grundy(&w), "W_{n}^{k} C={c}");
            }
        }
    }
}
