use proptest::prelude::*;

use crate::graph::Graph;

/// Random simple graphs with `min_n..=max_n` vertices and arbitrary density.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges = pairs
                .iter()
                .zip(mask)
                .filter(|(_, keep)| *keep)
                .map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}
