//! Randomised properties checked against exhaustive oracles.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bigenic::catalog;
use bigenic::classifier::{classify, equivalent_pairs, small_graphs, ClassPair};
use bigenic::codec;
use bigenic::ops::{bipartite_complement, split_labels, subgraph_complement};
use bigenic::oracle;
use bigenic::order::{induced_embed, is_free, labelled_embed, LabelledGraph, QuasiOrder};
use bigenic::structure::{check_certificate, decompose, gen};
use bigenic::uniform::{transport_bipartite, transport_complement, witness_verifies, UniformTemplate, UniformWitness};
use bigenic::Graph;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn subset(n: usize, bits: u64) -> Vec<usize> {
    (0..n).filter(|v| bits >> v & 1 == 1).collect()
}

fn template_strategy() -> impl Strategy<Value = UniformTemplate> {
    (1usize..=3).prop_flat_map(|k| {
        (graph_strategy(k).prop_filter("order k", move |f| f.n() == k), proptest::collection::vec(any::<bool>(), k * (k + 1) / 2))
            .prop_map(move |(f, bits)| {
                let mut m = vec![vec![false; k]; k];
                let mut it = bits.into_iter();
                for i in 0..k {
                    for j in i..k {
                        let b = it.next().unwrap();
                        m[i][j] = b;
                        m[j][i] = b;
                    }
                }
                UniformTemplate::new(f, m).unwrap()
            })
    })
}

fn expansion(t: &UniformTemplate, copies: usize) -> (Graph, UniformWitness) {
    let k = t.order();
    let w = UniformWitness { template: t.clone(), assign: (0..copies * k).map(|v| (v / k, v % k)).collect() };
    (t.expand(copies).unwrap(), w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_matches_brute_force(h in graph_strategy(4), g in graph_strategy(7)) {
        let e = induced_embed(&h, &g);
        prop_assert_eq!(e.is_some(), oracle::embeds(&h, &g));
        if let Some(e) = e {
            prop_assert!(e.verify(&h, &g));
        }
    }

    #[test]
    fn freeness_is_hereditary(g in graph_strategy(7), h in graph_strategy(4), bits in any::<u64>()) {
        if is_free(&g, std::slice::from_ref(&h)).free {
            let sub = g.induced(&subset(g.n(), bits)).unwrap();
            prop_assert!(is_free(&sub, std::slice::from_ref(&h)).free);
        }
    }

    #[test]
    fn bipartite_complement_is_three_subgraph_complements(g in graph_strategy(8), bits in any::<u64>(), side in any::<u64>()) {
        let s = subset(g.n(), bits);
        let x: Vec<usize> = s.iter().copied().filter(|v| side >> v & 1 == 1).collect();
        let y: Vec<usize> = s.iter().copied().filter(|v| side >> v & 1 == 0).collect();
        let three = subgraph_complement(&subgraph_complement(&subgraph_complement(&g, &s).unwrap(), &x).unwrap(), &y).unwrap();
        prop_assert_eq!(bipartite_complement(&g, &x, &y).unwrap(), three);
    }

    #[test]
    fn split_labels_match_z_respecting_embeddings(
        h in graph_strategy(4),
        g in graph_strategy(6),
        zh in any::<u64>(),
        zg in any::<u64>(),
        labels in proptest::collection::vec(0usize..3, 10),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = oracle::random_quasi_order(&mut rng, 3);
        let (zh, zg) = (subset(h.n(), zh), subset(g.n(), zg));
        let (hl, gl) = (labels[..h.n()].to_vec(), labels[4..4 + g.n()].to_vec());
        let expected = oracle::z_respecting_embeds(&h, &hl, &zh, &g, &gl, &zg, &order);
        let hc = LabelledGraph::new(subgraph_complement(&h, &zh).unwrap(), hl).unwrap();
        let gc = LabelledGraph::new(subgraph_complement(&g, &zg).unwrap(), gl).unwrap();
        let (sh, doubled) = split_labels(&hc, &order, &zh).unwrap();
        let (sg, _) = split_labels(&gc, &order, &zg).unwrap();
        prop_assert_eq!(labelled_embed(&sh, &sg, &doubled).unwrap().is_some(), expected);
    }

    #[test]
    fn labelled_embedding_matches_brute_force(
        h in graph_strategy(4),
        g in graph_strategy(6),
        labels in proptest::collection::vec(0usize..3, 10),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = oracle::random_quasi_order(&mut rng, 3);
        let (hl, gl) = (labels[..h.n()].to_vec(), labels[4..4 + g.n()].to_vec());
        let expected = oracle::labelled_embeds(&h, &hl, &g, &gl, &order);
        let lh = LabelledGraph::new(h, hl).unwrap();
        let lg = LabelledGraph::new(g, gl).unwrap();
        prop_assert_eq!(labelled_embed(&lh, &lg, &order).unwrap().is_some(), expected);
    }

    #[test]
    fn witnesses_survive_restriction_and_transport(t in template_strategy(), copies in 1usize..=4, a in any::<u64>(), b in any::<u64>()) {
        let (g, w) = expansion(&t, copies);
        prop_assert!(witness_verifies(&g, &w));
        let s = subset(g.n(), a);
        prop_assert!(witness_verifies(&g.induced(&s).unwrap(), &w.restrict(&s)));
        let x = subset(g.n(), b);
        let wc = transport_complement(&w, &x).unwrap();
        prop_assert_eq!(wc.template.order(), 2 * t.order());
        prop_assert!(witness_verifies(&subgraph_complement(&g, &x).unwrap(), &wc));
        let (xs, ys): (Vec<usize>, Vec<usize>) = (0..g.n()).filter(|v| a >> v & 1 == 1).partition(|v| b >> v & 1 == 1);
        let wb = transport_bipartite(&w, &xs, &ys).unwrap();
        prop_assert!(witness_verifies(&bipartite_complement(&g, &xs, &ys).unwrap(), &wb));
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy(20)) {
        prop_assert_eq!(codec::from_graph6(&codec::to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(codec::from_json(&codec::to_json(&g)).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn class_members_get_sound_certificates(seed in any::<u64>(), which in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = match which {
            0 => gen::c5_instance(&mut rng),
            1 => gen::c4_instance(&mut rng),
            k => gen::k5_instance(&mut rng, k - 1),
        }.unwrap();
        let r = decompose(&inst.graph).unwrap();
        prop_assert!(r.claims_hold(), "{:?}", r.failed_claims());
        let cert = r.certificate.as_ref().unwrap();
        prop_assert_eq!(check_certificate(&inst.graph, cert).unwrap(), Vec::<String>::new());
    }
}

#[test]
fn uniformicity_of_small_graphs_matches_the_oracle() {
    for g in small_graphs(4) {
        let fast = bigenic::uniform::uniformicity(&g.graph, 3).unwrap();
        assert_eq!(fast, oracle::uniformicity(&g.graph, 3), "{}", g.name);
    }
    let p4 = catalog::graph("P4").unwrap();
    assert_eq!(oracle::uniformicity(&p4, 3), Some(2));
}

#[test]
fn classification_is_invariant_under_equivalence() {
    let corpus = small_graphs(4);
    for (i, a) in corpus.iter().enumerate() {
        for b in &corpus[i..] {
            let p = ClassPair::new(a.clone(), b.clone());
            let s = classify(&p).unwrap();
            for q in equivalent_pairs(&p) {
                let t = classify(&q).unwrap();
                assert_eq!((s.wqo, s.cw), (t.wqo, t.cw), "{p} vs {q}");
            }
        }
    }
}

#[test]
fn deleting_a_cycle_vertex_breaks_the_antichain() {
    let cycles: Vec<Graph> = (4..=8).map(|k| catalog::graph(&format!("C{k}")).unwrap()).collect();
    assert!(bigenic::order::antichain_check(&cycles).antichain);
    let paths: Vec<Graph> = cycles.iter().map(|c| bigenic::ops::delete_vertex(c, 0).unwrap()).collect();
    assert!(!bigenic::order::antichain_check(&paths).antichain);
}

#[test]
fn quasi_orders_from_random_pairs_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for size in 1..=4 {
        let q: QuasiOrder = oracle::random_quasi_order(&mut rng, size);
        assert_eq!(q.size(), size);
    }
}
