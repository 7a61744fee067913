//! Random graphs of groups: killing the vertex groups leaves the free group
//! of the underlying graph.

use std::collections::BTreeMap;

use ghostloop::gog::{gog_presentation, kill_inertia, kill_inertia_with_tree, TreeChoice};
use ghostloop::group::default_panel;
use ghostloop::presentation::{abelianization, fingerprint, AbelianInvariants, Fingerprint, HomCaps, Presentation, Word};
use ghostloop::GraphOfGroups;
use proptest::prelude::*;

fn vertex_group(kind: u8) -> Presentation {
    match kind {
        0 => Presentation::trivial(),
        1 => Presentation::cyclic(2),
        2 => Presentation::cyclic(3),
        3 => Presentation::with_generators(
            2,
            vec![Word::power(0, 2), Word::power(1, 2), Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)])],
        )
        .unwrap(),
        _ => Presentation::free(1),
    }
}

/// Connected graph: a random tree on `n` vertices plus extra edges, with
/// random vertex groups and, where both ends allow it, an edge generator
/// identifying first generators.
fn graph(trivial_groups: bool) -> impl Strategy<Value = GraphOfGroups> {
    (1usize..=6)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec(any::<prop::sample::Index>(), n - 1),
                prop::collection::vec((0..n, 0..n), 0..=(9 - (n - 1)).min(4)),
                prop::collection::vec(0u8..5, n),
                prop::collection::vec(any::<bool>(), 9),
            )
        })
        .prop_map(move |(n, parents, extra, kinds, glue)| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1].index(v), v)).collect();
            edges.extend(extra);
            let groups: BTreeMap<usize, Presentation> = if trivial_groups {
                BTreeMap::new()
            } else {
                (0..n).map(|v| (v, vertex_group(kinds[v]))).collect()
            };
            let gens = |v: usize| groups.get(&v).map_or(0, Presentation::generator_count);
            let pairs: BTreeMap<usize, Vec<(Word, Word)>> = edges
                .iter()
                .enumerate()
                .filter(|&(e, &(u, v))| glue[e] && gens(u) > 0 && gens(v) > 0)
                .map(|(e, _)| (e, vec![(Word::gen(0), Word::gen(0))]))
                .collect();
            GraphOfGroups::new((0..n).collect(), edges, groups, pairs).unwrap()
        })
}

fn fp(p: &Presentation) -> Fingerprint {
    fingerprint(p, &default_panel(), &HomCaps::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn killing_vertex_groups_leaves_a_free_group(g in graph(false), seed in any::<u64>()) {
        let rank = g.edge_count() + 1 - g.vertex_count();
        prop_assert_eq!(abelianization(&kill_inertia(&g)), AbelianInvariants::free(rank));
        prop_assert_eq!(fp(&kill_inertia(&g)), Fingerprint::of_free_group(rank, &default_panel()));
        let random = kill_inertia_with_tree(&g, TreeChoice::Random(seed));
        prop_assert_eq!(abelianization(&random), AbelianInvariants::free(rank));
    }

    #[test]
    fn trivial_groups_change_nothing(g in graph(true)) {
        prop_assert_eq!(fp(&gog_presentation(&g)), fp(&kill_inertia(&g)));
    }
}
