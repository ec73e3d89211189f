//! Cross-checks against independent oracles and structural invariants.
//!
//! The distance oracle here is Floyd-Warshall, deliberately different from
//! the library's per-vertex BFS; the coloring oracle is the exhaustive
//! brute-force search. Randomized structure comes from proptest.

use pathpack_core::caterpillar::{classify_chi_p, ChiClassValue, ClassifyOptions};
use pathpack_core::constructions::{
    caterpillar, complete_overlap_transform, corona, cycle_overlap_transform,
    path_aligned_product, tree_to_caterpillar_spec, BaseKind, CaterpillarSpec, ProductSpec,
};
use pathpack_core::graph::{all_pairs_distances, build_cycle, build_path, Graph};
use pathpack_core::io::{graph_from_str, graph_to_string};
use pathpack_core::packing::{
    brute_force_chi_p, exact_chi_p, find_coloring_with_k, is_valid, lower_bound, max_clique_size,
    Feasibility, SolveOptions,
};
use pathpack_core::patterns::path_packing_coloring;
use proptest::prelude::*;

/// Floyd-Warshall, as an independent all-pairs oracle.
fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    const INF: u32 = u32::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for u in 0..n {
            for v in 0..n {
                let via = d[u][m].saturating_add(d[m][v]);
                if via < d[u][v] {
                    d[u][v] = via;
                }
            }
        }
    }
    d
}

/// Proper chromatic number by backtracking; used only for the regression
/// that separates chi from chi_p.
fn chromatic_number(g: &Graph) -> u32 {
    fn feasible(g: &Graph, k: u32, colors: &mut Vec<u32>, v: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        'colors: for c in 1..=k {
            for &u in g.neighbors(v) {
                if u < v && colors[u] == c {
                    continue 'colors;
                }
            }
            colors[v] = c;
            if feasible(g, k, colors, v + 1) {
                return true;
            }
            colors[v] = 0;
        }
        false
    }
    for k in 1.. {
        let mut colors = vec![0u32; g.vertex_count()];
        if feasible(g, k, &mut colors, 0) {
            return k;
        }
    }
    unreachable!()
}

fn chi(g: &Graph) -> u32 {
    let dm = all_pairs_distances(g).unwrap();
    exact_chi_p(g, &dm, SolveOptions::default())
        .chi_p()
        .expect("instance within budget")
}

/// Connected graph on 2..=12 vertices: a random spanning tree plus a few
/// extra edges.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=12)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0usize..1_000_000, n - 1),
                proptest::collection::vec((0usize..1_000_000, 0usize..1_000_000), 0..4),
            )
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
            for (a, b) in extra {
                let u = a % n;
                let v = b % n;
                if u != v && !edges.contains(&(u.min(v), u.max(v))) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            Graph::new(n, &edges).unwrap()
        })
}

fn random_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (1usize..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0usize..1_000_000, n.saturating_sub(1)),
            )
        })
        .prop_map(|(n, parents)| {
            let edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
            Graph::new(n, &edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_distances_agree_with_floyd_warshall(g in connected_graph()) {
        let dm = all_pairs_distances(&g).unwrap();
        let fw = floyd_warshall(&g);
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                prop_assert_eq!(dm.dist(u, v), fw[u][v]);
            }
        }
        let fw_diam = fw.iter().flatten().copied().max().unwrap();
        prop_assert_eq!(dm.diameter(), fw_diam);
    }

    #[test]
    fn graph_files_round_trip(g in connected_graph()) {
        let text = graph_to_string(&g);
        let back = graph_from_str(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph_to_string(&back), text);
    }

    #[test]
    fn solver_matches_brute_force_on_random_trees(g in random_tree(9)) {
        let dm = all_pairs_distances(&g).unwrap();
        let fast = exact_chi_p(&g, &dm, SolveOptions::default()).chi_p().unwrap();
        let slow = brute_force_chi_p(&g, &dm, 9).unwrap().chi_p;
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn caterpillar_classification_is_reversal_invariant(
        m in proptest::collection::vec(0usize..=3, 1..=8)
    ) {
        let mut m = m;
        if m.len() >= 2 {
            if m[0] == 0 { m[0] = 1; }
            let last = m.len() - 1;
            if m[last] == 0 { m[last] = 1; }
        }
        let spec = CaterpillarSpec::new(m.clone()).unwrap();
        let opts = ClassifyOptions { solver_vertex_budget: 0, node_limit: 0 };
        let a = classify_chi_p(&spec, opts).unwrap();
        let b = classify_chi_p(&spec.reversed(), opts).unwrap();
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn caterpillar_specs_round_trip_through_graphs(
        m in proptest::collection::vec(0usize..=3, 1..=8)
    ) {
        let mut m = m;
        if m.len() >= 2 {
            if m[0] == 0 { m[0] = 1; }
            let last = m.len() - 1;
            if m[last] == 0 { m[last] = 1; }
        }
        let spec = CaterpillarSpec::new(m).unwrap();
        let recovered = tree_to_caterpillar_spec(&caterpillar(&spec)).unwrap();
        prop_assert_eq!(recovered, spec.canonicalized());
    }
}

#[test]
fn distance_oracle_on_corpus_graphs() {
    let mut corpus: Vec<Graph> = Vec::new();
    for n in 1..=10 {
        corpus.push(build_path(n).unwrap());
    }
    for n in 3..=10 {
        corpus.push(build_cycle(n).unwrap());
    }
    for (kind, n, l, t) in [
        (BaseKind::Cycle, 4, 2, 5),
        (BaseKind::Cycle, 8, 3, 5),
        (BaseKind::Complete, 4, 2, 3),
        (BaseKind::Complete, 5, 5, 2),
    ] {
        corpus.push(path_aligned_product(
            &ProductSpec::new(kind, n, l, t).unwrap(),
        ));
    }
    corpus.push(corona(&build_path(5).unwrap(), 2).unwrap());
    for g in &corpus {
        assert!(g.vertex_count() <= 40);
        let dm = all_pairs_distances(g).unwrap();
        let fw = floyd_warshall(g);
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                assert_eq!(dm.dist(u, v), fw[u][v]);
            }
        }
    }
}

#[test]
fn product_prefix_embeds_isometrically() {
    for (kind, n, l, t) in [
        (BaseKind::Cycle, 4, 2, 5),
        (BaseKind::Cycle, 5, 2, 4),
        (BaseKind::Cycle, 8, 3, 2),
        (BaseKind::Cycle, 6, 6, 3),
        (BaseKind::Complete, 4, 2, 5),
        (BaseKind::Complete, 5, 3, 2),
    ] {
        let full_spec = ProductSpec::new(kind, n, l, t).unwrap();
        assert!(full_spec.path_len() <= 40);
        let full = path_aligned_product(&full_spec);
        let dm_full = all_pairs_distances(&full).unwrap();
        for t_prefix in 1..t {
            let prefix_spec = ProductSpec::new(kind, n, l, t_prefix).unwrap();
            let prefix = path_aligned_product(&prefix_spec);
            let dm_prefix = all_pairs_distances(&prefix).unwrap();
            let map = |v: usize| -> usize {
                if v < prefix_spec.path_len() {
                    v
                } else {
                    let off = v - prefix_spec.path_len();
                    full_spec.path_len() + off
                }
            };
            for u in 0..prefix.vertex_count() {
                for v in 0..prefix.vertex_count() {
                    assert_eq!(
                        dm_prefix.dist(u, v),
                        dm_full.dist(map(u), map(v)),
                        "{} prefix t={t_prefix}",
                        full_spec.describe()
                    );
                }
            }
        }
    }
}

#[test]
fn chi_p_is_monotone_in_copies() {
    for (kind, n, l, t) in [
        (BaseKind::Cycle, 4, 2, 5),
        (BaseKind::Cycle, 5, 2, 4),
        (BaseKind::Complete, 4, 2, 4),
        (BaseKind::Cycle, 3, 3, 5),
    ] {
        let mut prev = 0;
        for ti in 1..=t {
            let spec = ProductSpec::new(kind, n, l, ti).unwrap();
            let value = chi(&path_aligned_product(&spec));
            assert!(value >= prev, "{} dropped from {prev}", spec.describe());
            prev = value;
        }
    }
}

#[test]
fn solver_matches_brute_force_on_the_small_corpus() {
    let mut corpus: Vec<Graph> = Vec::new();
    for n in 1..=9 {
        corpus.push(build_path(n).unwrap());
    }
    for n in 3..=9 {
        corpus.push(build_cycle(n).unwrap());
    }
    for leaves in 1..=8 {
        corpus.push(caterpillar(&CaterpillarSpec::new(vec![leaves]).unwrap()));
    }
    // canonical caterpillars with backbone up to 4 and at most 2 leaves each
    for l in 2..=4usize {
        let mut m = vec![0usize; l];
        loop {
            if m[0] >= 1 && m[l - 1] >= 1 {
                let spec = CaterpillarSpec::new(m.clone()).unwrap();
                if spec.vertex_count() <= 9 {
                    corpus.push(caterpillar(&spec));
                }
            }
            let mut i = 0;
            loop {
                if i == l {
                    break;
                }
                m[i] += 1;
                if m[i] <= 2 {
                    break;
                }
                m[i] = 0;
                i += 1;
            }
            if i == l {
                break;
            }
        }
    }
    // every product with at most 9 vertices, single-anchor overlaps included
    for kind in [BaseKind::Cycle, BaseKind::Complete] {
        for n in 3..=9 {
            for l in 1..=n {
                for t in 1..=3 {
                    if n * t > 9 {
                        continue;
                    }
                    let g = path_aligned_product(&ProductSpec::new(kind, n, l, t).unwrap());
                    corpus.push(g);
                }
            }
        }
    }
    assert!(corpus.len() > 60);
    for g in &corpus {
        let dm = all_pairs_distances(g).unwrap();
        let fast = exact_chi_p(g, &dm, SolveOptions::default()).chi_p().unwrap();
        let slow = brute_force_chi_p(g, &dm, 9).unwrap().chi_p;
        assert_eq!(fast, slow);
    }
}

#[test]
fn lower_bound_never_exceeds_chi_p() {
    let mut checks = 0;
    for (kind, n, l, t) in [
        (BaseKind::Cycle, 4, 2, 3),
        (BaseKind::Cycle, 5, 2, 2),
        (BaseKind::Cycle, 6, 3, 2),
        (BaseKind::Complete, 4, 2, 2),
        (BaseKind::Complete, 5, 2, 2),
        (BaseKind::Complete, 3, 2, 4),
    ] {
        let g = path_aligned_product(&ProductSpec::new(kind, n, l, t).unwrap());
        let dm = all_pairs_distances(&g).unwrap();
        let lb = lower_bound(&g, &dm);
        let value = chi(&g);
        assert!(lb <= value);
        if dm.diameter() == 2 {
            assert_eq!(lb, value);
        }
        checks += 1;
    }
    // stars are the diameter-2 family where the formula is exact
    for leaves in 2..=6 {
        let g = caterpillar(&CaterpillarSpec::new(vec![leaves]).unwrap());
        let dm = all_pairs_distances(&g).unwrap();
        assert_eq!(dm.diameter(), 2);
        assert_eq!(lower_bound(&g, &dm), chi(&g));
        checks += 1;
    }
    assert!(checks >= 10);
}

#[test]
fn clique_equals_chromatic_but_not_packing_chromatic() {
    // two complete copies over a 4-vertex path: omega = chi = 4, chi_p = 6
    let spec = ProductSpec::new(BaseKind::Complete, 4, 2, 2).unwrap();
    let g = path_aligned_product(&spec);
    assert_eq!(max_clique_size(&g), 4);
    assert_eq!(chromatic_number(&g), 4);
    assert_eq!(chi(&g), 6);
}

#[test]
fn transform_witnesses_attest_on_a_grid() {
    for n in 3..=8 {
        for l in 2..=n {
            for t in 1..=3 {
                let spec = ProductSpec::new(BaseKind::Cycle, n, l, t).unwrap();
                let (target, witness) = cycle_overlap_transform(&spec).unwrap();
                assert!(witness.attested, "{}", spec.describe());
                assert_eq!(target.overlap, n - l + 2);
            }
        }
    }
    for n in 3..=5 {
        for l in 2..=n {
            for l2 in 2..=n {
                let spec = ProductSpec::new(BaseKind::Complete, n, l, 3).unwrap();
                let (target, witness) = complete_overlap_transform(&spec, l2).unwrap();
                assert!(witness.attested, "{} -> l'={l2}", spec.describe());
                assert_eq!(target.overlap, l2);
            }
        }
    }
}

#[test]
fn fixed_path_pattern_cannot_extend_over_triangles_with_five_colors() {
    // path colored 1 2 1 3 repeating forces a sixth color on the triangle
    // product once there are four copies
    let spec = ProductSpec::new(BaseKind::Cycle, 3, 2, 4).unwrap();
    let g = path_aligned_product(&spec);
    let dm = all_pairs_distances(&g).unwrap();
    let fixed: Vec<(usize, u32)> = path_packing_coloring(8)
        .into_iter()
        .enumerate()
        .collect();
    let mut nodes = 0;
    match find_coloring_with_k(&g, &dm, 5, &fixed, 10_000_000, &mut nodes) {
        Feasibility::Infeasible => {}
        Feasibility::Feasible(c) => panic!("unexpected extension: {:?}", c.colors()),
        Feasibility::LimitHit => panic!("node limit hit"),
    }
    // with a sixth color the same fixed path extends
    let mut nodes = 0;
    match find_coloring_with_k(&g, &dm, 6, &fixed, 10_000_000, &mut nodes) {
        Feasibility::Feasible(c) => assert!(is_valid(&dm, &c)),
        _ => panic!("expected an extension with six colors"),
    }
}

#[test]
fn product_round_trip_preserves_labels() {
    let spec = ProductSpec::new(BaseKind::Complete, 4, 2, 3).unwrap();
    let g = path_aligned_product(&spec);
    assert_eq!(g.label(0), Some("path:1"));
    assert_eq!(g.label(6), Some("complete:1:1"));
    let back = graph_from_str(&graph_to_string(&g)).unwrap();
    assert_eq!(back, g);
    for v in 0..g.vertex_count() {
        assert_eq!(back.label(v), g.label(v));
    }
}

#[test]
fn regression_four_copies_of_c4_need_only_four_colors() {
    // the t >= 4 bound row says 5; the true value at t = 4 is smaller
    let g = product_graph(BaseKind::Cycle, 4, 2, 4);
    assert_eq!(chi(&g), 4);
}

#[test]
fn complete_product_diameter_depends_only_on_copies() {
    // every overlap is isomorphic to the overlap-2 form, whose diameter is
    // its path length minus one; base size never enters
    for n in 3..=6 {
        for l in 2..=n {
            for t in 1..=4 {
                let g = product_graph(BaseKind::Complete, n, l, t);
                let dm = all_pairs_distances(&g).unwrap();
                assert_eq!(dm.diameter() as usize, 2 * t - 1, "K_{n} l={l} t={t}");
                if l == 2 {
                    let spec = ProductSpec::new(BaseKind::Complete, n, l, t).unwrap();
                    assert_eq!(dm.diameter() as usize, spec.path_len() - 1);
                }
            }
        }
    }
}

#[test]
fn complete_colorings_use_the_same_count_for_every_overlap() {
    use pathpack_core::patterns::color_by_theorem;
    for (n, t) in [(4usize, 5usize), (4, 8), (5, 7), (5, 13), (3, 6)] {
        let counts: Vec<u32> = (2..=n)
            .map(|l| {
                let spec = ProductSpec::new(BaseKind::Complete, n, l, t).unwrap();
                color_by_theorem(&spec).unwrap().coloring.k_used()
            })
            .collect();
        assert!(
            counts.windows(2).all(|w| w[0] == w[1]),
            "K_{n} t={t}: {counts:?}"
        );
    }
}

#[test]
fn probe_favors_patterns_reachable_through_transforms() {
    use pathpack_core::patterns::{conjecture_probe, ProbeBudget, ProbeMethod};
    // overlap-4 products of C_5 re-route to the overlap-3 entry
    let report = conjecture_probe(
        BaseKind::Cycle,
        (5, 5),
        (4, 4),
        (2, 2),
        ProbeBudget::default(),
    );
    assert_eq!(report.rows.len(), 1);
    assert_eq!(report.rows[0].method, ProbeMethod::Pattern);
    assert_eq!(report.rows[0].upper, Some(5));
    assert!(report.rows[0].proven_optimal);
}

fn product_graph(kind: BaseKind, n: usize, l: usize, t: usize) -> Graph {
    path_aligned_product(&ProductSpec::new(kind, n, l, t).unwrap())
}

#[test]
fn classification_examples_from_known_values() {
    // K_{1,7}
    let c = classify_chi_p(
        &CaterpillarSpec::new(vec![7]).unwrap(),
        ClassifyOptions::default(),
    )
    .unwrap();
    assert_eq!(c.value, ChiClassValue::Two);

    let c = classify_chi_p(
        &CaterpillarSpec::new(vec![1, 1, 1, 1]).unwrap(),
        ClassifyOptions::default(),
    )
    .unwrap();
    assert_eq!(c.value, ChiClassValue::More);
    assert_eq!(c.exact, Some(4));

    let c = classify_chi_p(
        &CaterpillarSpec::new(vec![3, 2, 0, 1]).unwrap(),
        ClassifyOptions::default(),
    )
    .unwrap();
    assert_eq!(c.value, ChiClassValue::Three);
}
