//! Small named graphs used throughout the tests, the docs and the CLI.

use crate::graph::{ColoredGraph, Vertex};
use crate::moves::suspend;

/// `(0 1)(2 3)` on four vertices.
const A4: [Vertex; 4] = [1, 0, 3, 2];
/// `(0 3)(1 2)`.
const B4: [Vertex; 4] = [3, 2, 1, 0];
/// `(0 2)(1 3)`.
const C4: [Vertex; 4] = [2, 3, 0, 1];

fn build(matchings: Vec<Vec<Vertex>>) -> ColoredGraph {
    ColoredGraph::new(matchings).expect("fixture is a valid colored graph")
}

/// The order-two `(n+1)`-colored graph; it represents the `n`-sphere.
pub fn k2(n: usize) -> ColoredGraph {
    build(vec![vec![1, 0]; n + 1])
}

/// The standard order-six 3-colored graph of the torus: color `c` pairs
/// `i` with `3 + (i + c) mod 3`.
pub fn t6() -> ColoredGraph {
    let matchings = (0..3)
        .map(|c| {
            let mut m = vec![0; 6];
            for i in 0..3 {
                let j = 3 + (i + c) % 3;
                m[i] = j;
                m[j] = i;
            }
            m
        })
        .collect();
    build(matchings)
}

/// Order-four bipartite 5-colored graph: colors 0,1 on `(01)(23)`, colors
/// 2,3,4 on `(03)(12)`.
pub fn q4() -> ColoredGraph {
    build(vec![A4.to_vec(), A4.to_vec(), B4.to_vec(), B4.to_vec(), B4.to_vec()])
}

/// Order-four 5-colored graph that is not supercontracted: color 0 on
/// `(01)(23)`, colors 1..4 on `(03)(12)`.
pub fn q4_split() -> ColoredGraph {
    build(vec![A4.to_vec(), B4.to_vec(), B4.to_vec(), B4.to_vec(), B4.to_vec()])
}

/// Non-bipartite order-four 5-colored graph with color multiplicities 3,1,1
/// on the three perfect matchings of four points.
pub fn order4_nonbipartite_311() -> ColoredGraph {
    build(vec![A4.to_vec(), A4.to_vec(), A4.to_vec(), B4.to_vec(), C4.to_vec()])
}

/// Non-bipartite order-four 5-colored graph with color multiplicities 2,2,1.
pub fn order4_nonbipartite_221() -> ColoredGraph {
    build(vec![A4.to_vec(), A4.to_vec(), B4.to_vec(), B4.to_vec(), C4.to_vec()])
}

/// The complete graph on four vertices as a 3-colored graph (projective plane).
pub fn k4() -> ColoredGraph {
    build(vec![A4.to_vec(), B4.to_vec(), C4.to_vec()])
}

/// Order-eight crystallization of the real projective 3-space: vertices are
/// the corners of a cube, colors 0,1,2 flip one coordinate and color 3 is the
/// antipodal map.
pub fn rp3() -> ColoredGraph {
    let flip = |mask: usize| (0..8).map(|v| v ^ mask).collect::<Vec<_>>();
    build(vec![flip(1), flip(2), flip(4), flip(7)])
}

/// `Σ₁(T6)`: a 4-colored graph representing the torus times an interval.
pub fn suspended_t6() -> ColoredGraph {
    suspend(&t6(), 1).expect("color 1 exists")
}

/// `Σ₂(Σ₁(T6))`: a 5-colored order-six graph representing `S¹×S¹×B²`.
pub fn f_tb() -> ColoredGraph {
    suspend(&suspended_t6(), 2).expect("color 2 exists")
}
