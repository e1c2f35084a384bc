mod common;

use causal_subset::brute::{nu1_bruteforce, nuk_bruteforce, OracleBudget};
use causal_subset::generate::generate_synthetic;
use causal_subset::orientation::{essential_graph, meek_closure, recover_interventions};
use causal_subset::search::{induced_edges, random_search_baseline, subset_search, HonestOracle};
use causal_subset::stabbing::{solve, solve_bruteforce, PreparedInstance};
use causal_subset::verification::{atomic_verifying_set, bounded_verifying_set, verify_is_verifying};
use causal_subset::vertex_cover::min_vertex_cover;
use causal_subset::TargetEdges;
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verifier_is_optimal(seed: u64, n in 2usize..=7, p in prop::sample::select(vec![0.1, 0.3, 0.6])) {
        let mut r = rng(seed);
        let g = generate_synthetic(n, p, r.gen()).unwrap();
        let t = random_targets(&mut r, &g);
        let set = atomic_verifying_set(&g, &t).unwrap();
        prop_assert!(verify_is_verifying(&g, &t, &set));
        prop_assert_eq!(set.len(), nu1_bruteforce(&g, &t, &OracleBudget::atomic()).unwrap().0);
    }

    #[test]
    fn more_targets_never_cost_less(seed: u64, n in 2usize..=12) {
        let mut r = rng(seed);
        let g = generate_synthetic(n, 0.3, r.gen()).unwrap();
        let a = random_targets(&mut r, &g);
        let b = random_targets(&mut r, &g);
        let both: TargetEdges = a.iter().chain(b.iter()).collect();
        let size = |t: &TargetEdges| atomic_verifying_set(&g, t).unwrap().len();
        prop_assert!(size(&a) <= size(&both));
        prop_assert!(size(&both) <= size(&g.all_edges()));
    }

    #[test]
    fn bounded_size_within_one_of_the_lower_bound(seed: u64, n in 2usize..=6, k in 2usize..=3) {
        let mut r = rng(seed);
        let g = generate_synthetic(n, 0.4, r.gen()).unwrap();
        let t = random_targets(&mut r, &g);
        let nu1 = atomic_verifying_set(&g, &t).unwrap().len();
        let (nuk, _) = nuk_bruteforce(&g, &t, k, &OracleBudget::bounded()).unwrap();
        let lower = nu1.div_ceil(k);
        prop_assert!(lower <= nuk && nuk <= lower + 1);
        let set = bounded_verifying_set(&g, &t, k).unwrap();
        prop_assert!(set.iter().all(|s| s.len() <= k));
        prop_assert!(verify_is_verifying(&g, &t, &set));
        prop_assert!(set.len() <= 2 * nuk);
    }

    #[test]
    fn essential_graph_properties(seed: u64) {
        let mut r = rng(seed);
        let g = random_instance(&mut r, 9);
        let a = random_interventions(&mut r, g.n());
        let b = random_interventions(&mut r, g.n());
        let bad = property_violations(&g, &a, &b);
        prop_assert!(bad.is_empty(), "{}", bad.join("; "));
    }

    #[test]
    fn closure_is_idempotent_and_sound(seed: u64, n in 1usize..=10) {
        let mut r = rng(seed);
        let g = random_dag(&mut r, n, 0.4);
        let a = random_interventions(&mut r, n);
        let res = recover_interventions(&g, &a);
        prop_assert_eq!(meek_closure(&res.closure), res.closure.clone());
        prop_assert_eq!(res.closure.skeleton(), g.skeleton());
        prop_assert!(res.recovered.iter().all(|&(u, v)| g.has_arc(u, v)));
        prop_assert!(essential_graph(&g).recovered.is_subset(&res.recovered));
    }

    #[test]
    fn stabbing_dp_matches_enumeration(seed: u64, n in 1usize..=11, count in 0usize..=12, weighted: bool) {
        let mut r = rng(seed);
        let tree = random_tree(&mut r, n);
        let ivs = random_intervals(&mut r, &tree, count);
        let costs: Option<Vec<f64>> = weighted.then(|| (0..n).map(|_| r.gen_range(0..=4) as f64).collect());
        let dp = solve(&PreparedInstance::new(tree.clone(), &ivs, costs.clone()).unwrap());
        let bf = solve_bruteforce(&tree, &ivs, costs.as_deref()).unwrap();
        prop_assert_eq!(dp.cost, bf.cost);
        for iv in &ivs {
            prop_assert!(dp.stab.iter().any(|&v| tree.is_ancestor(iv.start, v) && tree.is_ancestor(v, iv.end)));
        }
    }

    #[test]
    fn vertex_cover_of_targets_orients_them(seed: u64, n in 2usize..=14) {
        let mut r = rng(seed);
        let g = generate_synthetic(n, 0.3, r.gen()).unwrap();
        let t = random_targets(&mut r, &g);
        let cover = min_vertex_cover(&t).unwrap();
        let singles: Vec<Vec<usize>> = cover.iter().map(|&v| vec![v]).collect();
        prop_assert!(recover_interventions(&g, &singles).orients_all(&t));
        prop_assert!(atomic_verifying_set(&g, &t).unwrap().len() <= cover.len());
    }

    #[test]
    fn searches_recover_the_induced_subgraph(seed: u64, n in 2usize..=16, k in 1usize..=3) {
        let mut r = rng(seed);
        let g = generate_synthetic(n, 0.25, r.gen()).unwrap();
        let h: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        prop_assume!(!h.is_empty());
        let t = induced_edges(&g, &h);
        let nu1 = atomic_verifying_set(&g, &t).unwrap().len();

        let mut oracle = HonestOracle::new(g.clone());
        let tr = subset_search(&mut oracle, &h, k).unwrap();
        prop_assert!(t.iter().all(|(a, b)| !tr.final_graph.is_undirected(a, b)));
        prop_assert!(tr.final_graph.directed_arcs().iter().all(|&(u, v)| g.has_arc(u, v)));
        prop_assert!(tr.steps.iter().all(|s| !s.intervention.is_empty() && s.intervention.len() <= k));
        if k == 1 {
            prop_assert!(tr.total_interventions() >= nu1);
        }

        let mut oracle = HonestOracle::new(g.clone());
        let tr = random_search_baseline(&mut oracle, &t, r.gen()).unwrap();
        prop_assert!(recover_interventions(&g, oracle.history()).orients_all(&t));
        prop_assert!(tr.total_interventions() >= nu1);
    }
}
