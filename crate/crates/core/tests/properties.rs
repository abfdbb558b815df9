mod common;

use gedgm::assignment::enumerate_assignments;
use gedgm::similarity::{substitution_from_similarity, transformed_similarity};
use gedgm::solvers::{solve_gm_oracle, solve_lsap, solve_oracle};
use gedgm::{
    build_similarity, compute_gamma, edit_path_cost, gm_score, induce_edit_path, AttributedGraph, SolverConfig,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn falling(n: usize, k: usize) -> usize {
    (0..k).map(|i| n - i).product()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edit_cost_plus_score_is_gamma(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g1, g2) = common::random_pair(&mut rng, 0, 4);
        let m = common::random_cost(&mut rng);
        let sim = build_similarity(&m, &g1, &g2).unwrap();
        let gamma = compute_gamma(&m, &g1, &g2);
        prop_assert_eq!(sim.gamma(), gamma);
        for a in enumerate_assignments(&g1, &g2, 8).unwrap() {
            let mut path = induce_edit_path(&a, &g1, &g2).unwrap();
            path.validate(&g1, &g2).unwrap();
            let cost = edit_path_cost(&m, &mut path, &g1, &g2).unwrap();
            let score = gm_score(&sim, &a, &g1, &g2).unwrap();
            prop_assert!((cost - (gamma - score)).abs() <= 1e-9, "{} vs {}", cost, gamma - score);
        }
    }

    #[test]
    fn min_cost_and_max_score_pick_the_same_value(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g1, g2) = common::random_pair(&mut rng, 0, 5);
        let m = common::random_cost(&mut rng);
        let cfg = SolverConfig::default();
        let edit = solve_oracle(&m, &g1, &g2, &cfg).unwrap();
        let matching = solve_gm_oracle(&m, &g1, &g2, &cfg).unwrap();
        prop_assert!((edit.ged_value - matching.ged_value).abs() <= 1e-9);
        // The maximizer is also a minimizer of the edit cost.
        prop_assert!((matching.edit_path.total_cost - edit.ged_value).abs() <= 1e-9);
    }

    #[test]
    fn transform_is_an_involution(sub in 0.0..100.0f64, del in 0.0..100.0f64, ins in 0.0..100.0f64) {
        let s = transformed_similarity(sub, del, ins);
        prop_assert!((substitution_from_similarity(s, del, ins) - sub).abs() <= 1e-12 * (1.0 + sub + del + ins));
    }

    #[test]
    fn assignment_count_has_closed_form(n1 in 0usize..=5, n2 in 0usize..=5) {
        let g1 = common::graph(&vec![0.0; n1], &[], false);
        let g2 = common::graph(&vec![0.0; n2], &[], false);
        let expected: usize = (0..=n1.min(n2)).map(|k| binomial(n1, k) * falling(n2, k)).sum();
        prop_assert_eq!(enumerate_assignments(&g1, &g2, 8).unwrap().count(), expected);
    }

    #[test]
    fn graph_json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = common::random_pair(&mut rng, 0, 7);
        let back = AttributedGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(&back, &g);
        for (a, b) in back.vertices().iter().zip(g.vertices()) {
            prop_assert!(a.attrs.iter().zip(&b.attrs).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }

    #[test]
    fn lsap_matches_brute_force(n in 0usize..=5, cells in prop::collection::vec(-50.0..50.0f64, 25)) {
        let matrix: Vec<Vec<f64>> = (0..n).map(|i| cells[i * 5..i * 5 + n].to_vec()).collect();
        let (perm, cost) = solve_lsap(&matrix).unwrap();
        let brute = permutations(n)
            .into_iter()
            .map(|p| p.iter().enumerate().map(|(i, &j)| matrix[i][j]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        let reported: f64 = perm.iter().enumerate().map(|(i, &j)| matrix[i][j]).sum();
        let mut seen = perm.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        if n > 0 {
            prop_assert!((cost - brute).abs() <= 1e-9);
            prop_assert!((reported - cost).abs() <= 1e-9);
        }
    }
}
