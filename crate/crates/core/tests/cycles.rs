mod common;

use common::{enumerated_cycle_nodes, random_dag, random_digraph, witness_cycle_nodes};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsl::validators::{cycle_nodes, strongly_connected};

#[test]
fn matches_oracles_on_random_digraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1500 {
        let (n, edges) = random_digraph(&mut rng, 12);
        let got = cycle_nodes(n, &edges);
        assert_eq!(got, witness_cycle_nodes(n, &edges), "{n} {edges:?}");
        if n <= 8 {
            assert_eq!(got, enumerated_cycle_nodes(n, &edges), "{n} {edges:?}");
        }
    }
}

#[test]
fn no_false_positives_on_dags() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let (n, edges) = random_dag(&mut rng);
        assert!(cycle_nodes(n, &edges).is_empty(), "{n} {edges:?}");
    }
}

#[test]
fn exhaustive_on_four_nodes() {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
        assert_eq!(cycle_nodes(4, &edges), enumerated_cycle_nodes(4, &edges), "{edges:?}");
    }
}

#[test]
fn components_partition_the_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let (n, edges) = random_digraph(&mut rng, 12);
        let mut all: Vec<usize> = strongly_connected(n, &edges).concat();
        all.sort();
        assert_eq!(all, (0..n).collect::<Vec<_>>());
    }
}
