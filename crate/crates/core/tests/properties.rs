use proptest::prelude::*;

use regcert_core::generators::{gen_gd, gen_random_regular, GdParts};
use regcert_core::graph::{edge_connectivity, Graph, Partition, VertexSet};
use regcert_core::matching::{
    guarantee_main, has_perfect_matching, is_factor_critical, maximum_matching, peel_disjoint_pms,
    tutte_berge_deficiency, tutte_witness, PeelConfig,
};
use regcert_core::spectral::{check_interlacing, quotient_matrix, spectrum, QuotientMatrix};
use regcert_core::toughness::{exact_toughness, is_gd, threshold_main2};
use regcert_core::{encode_graph6, parse_graph6};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Connected regular graphs of even order with `3 ≤ d ≤ n − 1`.
fn regular_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n / 2, any::<u64>())
        .prop_flat_map(|(half, seed)| (Just(2 * half), 3..2 * half, Just(seed)))
        .prop_map(|(n, d, seed)| gen_random_regular(n, d, seed).unwrap())
}

fn partition_strategy(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..n, n).prop_map(move |raw| {
        // relabel to dense part ids so no part is empty
        let mut map = vec![usize::MAX; n];
        let mut next = 0;
        let labels: Vec<usize> = raw
            .iter()
            .map(|&r| {
                if map[r] == usize::MAX {
                    map[r] = next;
                    next += 1;
                }
                map[r]
            })
            .collect();
        Partition::from_labels(&labels).unwrap()
    })
}

/// Quotient from the extremal case of the toughness proof: parts of sizes
/// `p`, `s`, `s − 1` with the stated edge counts.
fn proof_quotient(d: usize, p: usize, s: usize) -> QuotientMatrix {
    let e = vec![
        vec![p * d - d, d, 0],
        vec![d, 0, s * d - d],
        vec![0, s * d - d, 0],
    ];
    let sizes = vec![p, s, s - 1];
    let b = (0..3)
        .map(|i| (0..3).map(|j| e[i][j] as f64 / sizes[i] as f64).collect())
        .collect();
    QuotientMatrix {
        b,
        part_sizes: sizes,
        edge_counts: e,
        equitable: true,
    }
}

fn proof_lambda2(d: usize, p: usize, s: usize) -> f64 {
    let (d, p, s) = (d as f64, p as f64, s as f64);
    let r = d / p;
    (-r + (r * r + 4.0 * d * d * (1.0 - 1.0 / s) * (1.0 - 1.0 / p)).sqrt()) / 2.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(40)) {
        let text = encode_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn trace_identities(g in graph_strategy(14)) {
        let s = spectrum(&g).unwrap();
        let sum: f64 = s.values().iter().sum();
        let squares: f64 = s.values().iter().map(|x| x * x).sum();
        prop_assert!(sum.abs() <= 1e-8);
        prop_assert!((squares - 2.0 * g.size() as f64).abs() <= 1e-8);
    }

    #[test]
    fn interlacing_and_quotient_consistency(
        (g, p) in graph_strategy(14).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), partition_strategy(n))
        })
    ) {
        let q = quotient_matrix(&g, &p).unwrap();
        for (i, vi) in p.parts().iter().enumerate() {
            for (j, vj) in p.parts().iter().enumerate() {
                if i != j {
                    prop_assert_eq!(q.edge_counts[i][j], g.cut_size(vi, vj).unwrap());
                    let lhs = vi.len() as f64 * q.b[i][j];
                    prop_assert!((lhs - q.edge_counts[i][j] as f64).abs() < 1e-9);
                }
            }
        }
        let report = check_interlacing(&spectrum(&g).unwrap(), &q).unwrap();
        prop_assert!(report.holds);
    }

    #[test]
    fn odd_components_parity(
        (g, s) in graph_strategy(16).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), prop::collection::vec(any::<bool>(), n))
        })
    ) {
        let s = VertexSet::new((0..g.order()).filter(|&v| s[v]));
        let odd = g.odd_component_count(&s).unwrap();
        prop_assert_eq!(odd % 2, (g.order() - s.len()) % 2);
    }

    #[test]
    fn tutte_and_blossom_agree(g in graph_strategy(12)) {
        let pm = has_perfect_matching(&g);
        prop_assert_eq!(pm, tutte_witness(&g, 16).is_none());
        prop_assert_eq!(pm, tutte_witness(&g, 0).is_none());
        if let Some(w) = tutte_witness(&g, 0) {
            prop_assert!(g.odd_component_count(&w.s).unwrap() > w.s.len());
        }
        let nu = maximum_matching(&g).len();
        prop_assert_eq!(2 * nu, g.order() - tutte_berge_deficiency(&g));
    }

    #[test]
    fn factor_critical_shape(g in graph_strategy(11)) {
        if is_factor_critical(&g) {
            prop_assert!(g.is_connected());
            prop_assert_eq!(g.order() % 2, 1);
            prop_assert!((0..g.order()).all(|v| g.order() == 1 || g.degree(v) > 0));
        }
    }

    #[test]
    fn guarantee_is_monotone(d in 3usize..40, a in -40.0f64..40.0, b in -40.0f64..40.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(guarantee_main(d, lo).unwrap().value >= guarantee_main(d, hi).unwrap().value);
    }

    #[test]
    fn toughness_witness_and_gu_bound(g in regular_strategy(14)) {
        let d = g.regular_degree().unwrap() as f64;
        let t = exact_toughness(&g, 20).unwrap();
        prop_assert!(t.verify(&g));
        let lambda = spectrum(&g).unwrap().lambda_abs().unwrap();
        prop_assert!(t.value.as_f64() >= d / lambda - 1.0 - 1e-9);
    }

    #[test]
    fn small_lambda2_implies_full_edge_connectivity(g in regular_strategy(16)) {
        let d = g.regular_degree().unwrap();
        let l2 = spectrum(&g).unwrap().lambda(2).unwrap();
        if l2 <= d as f64 - 3.0 {
            prop_assert_eq!(edge_connectivity(&g).value, d);
        }
    }

    #[test]
    fn peeling_meets_guarantee(g in regular_strategy(14), seed in any::<u64>()) {
        let d = g.regular_degree().unwrap();
        let target = guarantee_main(d, spectrum(&g).unwrap().lambda(2).unwrap()).unwrap().value;
        let out = peel_disjoint_pms(&g, PeelConfig::new(target, seed));
        prop_assert!(out.family.validate(&g).is_ok());
        prop_assert!(out.family.len() >= target);
    }

    #[test]
    fn above_threshold_toughness(g in regular_strategy(14)) {
        let d = g.regular_degree().unwrap();
        let l2 = spectrum(&g).unwrap().lambda(2).unwrap();
        if !g.is_bipartite() && l2 <= threshold_main2(d).unwrap() + 1e-9 && !is_gd(&g) {
            prop_assert!(exact_toughness(&g, 20).unwrap().value.exceeds_one());
        }
    }

    #[test]
    fn proof_quotient_increases_in_p_and_s(d in 3usize..30, dp in 0usize..20, ds in 0usize..20) {
        let (p, s) = (d + dp, d + ds);
        let l2 = proof_quotient(d, p, s).eigenvalues().unwrap().lambda(2).unwrap();
        prop_assert!((l2 - proof_lambda2(d, p, s)).abs() < 1e-9);
        prop_assert!(proof_lambda2(d, p + 1, s) > l2);
        prop_assert!(proof_lambda2(d, p, s + 1) > l2);
    }
}

#[test]
fn proof_quotient_at_gd() {
    for d in 3..=10 {
        let g = gen_gd(d).unwrap();
        let parts = GdParts::new(d);
        let p = Partition::new(g.order(), vec![parts.clique, parts.hub, parts.satellites]).unwrap();
        let q = quotient_matrix(&g, &p).unwrap();
        assert!(q.equitable);
        let expected = proof_quotient(d, d, d);
        assert_eq!(q.edge_counts, expected.edge_counts);
        let l2 = q.eigenvalues().unwrap().lambda(2).unwrap();
        assert!((l2 - proof_lambda2(d, d, d)).abs() < 1e-9);
        assert!((l2 - threshold_main2(d).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn gd_generator_invariants() {
    for d in 3..=10 {
        let g = gen_gd(d).unwrap();
        assert_eq!(g.regular_degree(), Some(d));
        assert_eq!(g.order(), 3 * d - 1);
        assert!(!g.is_bipartite());
        assert_eq!(g.components().len(), 1);
        assert!(is_gd(&g));
    }
}
