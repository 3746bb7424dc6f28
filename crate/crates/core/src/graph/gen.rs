//! Deterministic graph generators used by tests and the experiment
//! harness. Real dataset files can be loaded instead via the text
//! readers; these stand-ins reproduce the vertex/edge counts and the
//! low-degree, locally-clustered structure the experiments need.

use super::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Six-vertex fixture with edges
/// {(5,0),(1,0),(0,1),(2,2),(5,3),(3,4),(4,5)}.
///
/// Source vertex 5 has out-neighbors in both halves of the vertex range,
/// so partitioning with interval size 3 loads it twice while interval
/// size 6 loads it once.
pub fn toy6() -> Graph {
    Graph::from_edges(6, vec![(5, 0), (1, 0), (0, 1), (2, 2), (5, 3), (3, 4), (4, 5)]).unwrap()
}

/// Fully connected bipartite block: sources `0..k` each point at
/// destinations `0..k`. Every window is dense, so coarse partitioning
/// has nothing to trim.
pub fn dense_bipartite(k: u32) -> Graph {
    let mut edges = Vec::with_capacity((k * k) as usize);
    for s in 0..k {
        for d in 0..k {
            edges.push((s, d));
        }
    }
    Graph::from_edges(k, edges).unwrap()
}

/// Seeded random directed graph with exactly `num_edges` edges over
/// `num_vertices` vertices. A base ring keeps every vertex at in- and
/// out-degree >= 1; the remainder are random pairs. With `local`, extra
/// edges stay within a small id distance, giving the banded sparsity
/// pattern of mesh-like datasets.
pub fn random_graph(num_vertices: u32, num_edges: u32, seed: u64, local: bool) -> Graph {
    assert!(num_vertices > 0, "random_graph needs at least one vertex");
    assert!(
        num_edges >= num_vertices,
        "random_graph needs at least one edge per vertex for the base ring"
    );
    let n = num_vertices as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(num_edges as usize);
    for v in 0..num_vertices {
        edges.push((v, (v + 1) % num_vertices));
    }
    while edges.len() < num_edges as usize {
        let s = rng.gen_range(0..n) as u32;
        let d = if local {
            let off = rng.gen_range(1..=20u64);
            ((s as u64 + off) % n) as u32
        } else {
            rng.gen_range(0..n) as u32
        };
        edges.push((s, d));
    }
    Graph::from_edges(num_vertices, edges).unwrap()
}

/// Stand-in for the ak2010 redistricting graph: 45,293 vertices and
/// 108,549 directed edges with ring connectivity plus short-range links.
pub fn ak2010_like() -> Graph {
    random_graph(45_293, 108_549, 0xa20_10, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Direction;

    #[test]
    fn toy6_counts() {
        let g = toy6();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.num_edges(), 7);
    }

    #[test]
    fn ak_like_matches_reference_counts() {
        let g = ak2010_like();
        assert_eq!(g.num_vertices(), 45_293);
        assert_eq!(g.num_edges(), 108_549);
    }

    #[test]
    fn random_graph_has_no_sinks_or_sources() {
        let g = random_graph(100, 400, 3, false);
        for v in 0..g.num_vertices() {
            assert!(g.degree(v, Direction::In).unwrap() >= 1);
            assert!(g.degree(v, Direction::Out).unwrap() >= 1);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_graph(50, 200, 9, true);
        let b = random_graph(50, 200, 9, true);
        assert_eq!(a.edges(), b.edges());
    }
}
