use num_bigint::BigInt;
use proptest::prelude::*;
use spairs_core::formulas::{omega, ClassTable, LabelWeighting};
use spairs_core::graphs::enumerate_class_reps;
use spairs_core::matrices::{
    compose_sudoku, decompose_sudoku, enumerate_pi, pi_to_sperm, sample_disjoint_family, sperm_to_pi,
    validate_sudoku, SamplerConfig,
};
use spairs_core::{BipartiteGraph, Limits};

fn graph_strategy() -> impl Strategy<Value = BipartiteGraph> {
    (2usize..=4).prop_flat_map(|n| {
        (0u32..1 << (n * n)).prop_map(move |m| BipartiteGraph::new(n, m).unwrap())
    })
}

fn relabeled() -> impl Strategy<Value = (BipartiteGraph, Vec<u8>, Vec<u8>)> {
    graph_strategy().prop_flat_map(|g| {
        let ids: Vec<u8> = (0..g.n() as u8).collect();
        (Just(g), Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent_and_relabel_invariant((g, rho, sigma) in relabeled()) {
        let c = g.canonical_form();
        prop_assert_eq!(c.canonical_form(), c);
        prop_assert_eq!(g.relabel(&rho, &sigma).canonical_form(), c);
        prop_assert_eq!(omega(&g.relabel(&rho, &sigma)), omega(&g));
        prop_assert_eq!(c.edge_count(), g.edge_count());
    }

    #[test]
    fn complement_commutes_with_canonicalization((g, rho, sigma) in relabeled()) {
        let h = g.relabel(&rho, &sigma);
        prop_assert_eq!(g.complement().canonical_form(), h.complement().canonical_form());
    }

    #[test]
    fn orbit_size_counts_distinct_relabelings(g in graph_strategy().prop_filter("small", |g| g.n() <= 3)) {
        let perms = spairs_core::perm::permutations(g.n());
        let mut seen = std::collections::HashSet::new();
        for rho in &perms {
            for sigma in &perms {
                seen.insert(g.relabel(rho, sigma));
            }
        }
        prop_assert_eq!(seen.len() as u64, g.orbit_size());
    }

    #[test]
    fn sampled_families_compose(n in 2usize..=3, seed in any::<u64>()) {
        let family = sample_disjoint_family(n, seed, &SamplerConfig::default()).unwrap();
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                prop_assert!(family[i].is_disjoint(&family[j]).unwrap());
            }
        }
        let identity: Vec<usize> = (1..=n * n).collect();
        let p = compose_sudoku(&family, &identity).unwrap();
        prop_assert!(validate_sudoku(&p.rows()));
        prop_assert_eq!(decompose_sudoku(&p), family);
    }
}

#[test]
fn statistics_invariants_for_every_class() {
    for n in 2..=4 {
        for k in 0..=n * n {
            for g in enumerate_class_reps(n, k, &Limits::default()).unwrap() {
                let psi = g.degree_profile().psi;
                let deltas = g.neighborhood_classes().deltas;
                assert_eq!(psi.iter().sum::<u32>() as usize, 2 * n);
                let weighted: usize = psi.iter().enumerate().map(|(i, &c)| i * c as usize).sum();
                assert_eq!(weighted, 2 * k);
                assert_eq!(deltas.iter().sum::<u32>() as usize, 2 * n);
                assert!((2..=2 * n).contains(&deltas.len()));
                assert!(deltas.iter().all(|&d| (1..=n as u32).contains(&d)));
                // classes refine the degree partition: every degree count is a sum of class sizes
                let mut per_degree = vec![0u32; n + 1];
                for side in [
                    (0..n).map(|r| g.row(r)).collect::<Vec<_>>(),
                    (0..n).map(|c| g.column(c)).collect::<Vec<_>>(),
                ] {
                    for (i, a) in side.iter().enumerate() {
                        for b in &side[i + 1..] {
                            if a == b {
                                assert_eq!(a.count_ones(), b.count_ones());
                            }
                        }
                        per_degree[a.count_ones() as usize] += 1;
                    }
                }
                assert_eq!(per_degree, psi);
            }
        }
    }
}

#[test]
fn ordered_counts_are_even_for_every_supported_side() {
    for n in 2..=4 {
        let table = ClassTable::build(n, &Limits::default()).unwrap();
        for w in [LabelWeighting::NeighborhoodClasses, LabelWeighting::Orbit] {
            let d = table.disjoint_ordered(w).unwrap();
            assert_eq!(&d % BigInt::from(2), BigInt::from(0));
            assert_eq!(table.disjoint_unordered(w).unwrap() * 2, d);
        }
    }
}

#[test]
fn n5_graph_table_is_symmetric_and_complete() {
    let table = ClassTable::build(5, &Limits::permissive()).unwrap();
    let counts: Vec<usize> = (0..=25).map(|k| table.classes(k).unwrap().len()).collect();
    assert_eq!(counts.iter().sum::<usize>(), 5624);
    let reversed: Vec<usize> = counts.iter().rev().copied().collect();
    assert_eq!(counts, reversed);
    assert!(table.binomial_identity_holds(LabelWeighting::Orbit).unwrap());
}

#[test]
fn n3_sampled_pairs_match_cellwise_comparison() {
    let pis = enumerate_pi(3).unwrap();
    let sp: Vec<_> = pis.iter().map(|p| pi_to_sperm(p).unwrap()).collect();
    // 200 × 200 pairs spread over the whole space
    let picks: Vec<usize> = (0..200).map(|i| (i * 7_919 + 13) % pis.len()).collect();
    for &i in &picks {
        assert_eq!(sperm_to_pi(&sp[i]).unwrap(), pis[i]);
        for &j in &picks {
            let shared = sp[i].shared_ones(&sp[j]).unwrap();
            assert_eq!(shared, pis[i].agreements(&pis[j]));
            assert_eq!(sp[i].is_disjoint(&sp[j]).unwrap(), sp[j].is_disjoint(&sp[i]).unwrap());
        }
    }
}
