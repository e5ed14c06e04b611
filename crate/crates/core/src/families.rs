//! Graph fixtures: classical small graphs and the hexagonal-cylinder family
//! of near-planar cubic graphs.

use std::sync::Arc;

use thiserror::Error;

use crate::embedding::Embedding;
use crate::graph::{Dart, EdgeId, Graph, Vertex};
use crate::planarity::{planar_embedding, verify_certificate, NestedCertificate};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("complete graph")
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges).expect("cycle")
}

/// Parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::new(a + b, &edges).expect("complete bipartite graph")
}

/// `K_{3,3}` with parts {1,2,3} and {4,5,6}.
pub fn k33() -> Graph {
    complete_bipartite(3, 3)
}

/// 3-cube; vertices are 3-bit labels, adjacent when they differ in one bit.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for u in 0..8usize {
        for b in 0..3 {
            let v = u ^ (1 << b);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::new(8, &edges).expect("cube")
}

/// Prism over a `k`-cycle: rim `0..k`, rim `k..2k`, rungs `i -- k+i`.
pub fn prism(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    Graph::new(2 * k, &edges).expect("prism")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).expect("Petersen graph")
}

/// Heawood graph, the (3,6)-cage.
pub fn heawood() -> Graph {
    let mut edges: Vec<_> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
    for i in (0..14).step_by(2) {
        edges.push((i, (i + 5) % 14));
    }
    Graph::new(14, &edges).expect("Heawood graph")
}

/// Wagner graph (Moebius ladder on 8 vertices).
pub fn wagner() -> Graph {
    let mut edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    for i in 0..4 {
        edges.push((i, i + 4));
    }
    Graph::new(8, &edges).expect("Wagner graph")
}

/// A near-planar instance: `graph - planarizing_edge` is planar and the
/// planarizing edge joins `x` to `y`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Arc<Graph>,
    pub rings: usize,
    pub x: Vertex,
    pub y: Vertex,
    /// Always the last edge id, so `graph - xy` keeps every other id.
    pub planarizing_edge: EdgeId,
    pub reference_planar: Embedding,
    pub reference_rings: NestedCertificate,
    pub reference_toroidal: Option<Embedding>,
}

impl Instance {
    pub fn planar_part(&self) -> &Graph {
        self.reference_planar.graph()
    }
}

/// Which ring positions carry a spoke from ring `i` to ring `i + 1`.
fn spoke_slots(i: usize) -> [usize; 3] {
    if i % 2 == 1 {
        [0, 2, 4]
    } else {
        [1, 3, 5]
    }
}

/// Vertex of ring `i` (1-based) at position `j`.
pub fn hex_vertex(i: usize, j: usize) -> Vertex {
    4 + 6 * (i - 1) + j % 6
}

/// Concentric hexagons `H_1..H_r` with alternating spokes between
/// consecutive rings. The three free vertices of `H_1` hang on a centre
/// vertex `c` (vertex 3), with `x` (vertex 1) subdividing one of those
/// spokes; the free vertices of `H_r` hang on `d` (vertex 4) with `y`
/// (vertex 2) subdividing one of them. Finally `x` and `y` are joined.
///
/// The result is cubic with `6r + 4` vertices and `9r + 6` edges, the rings
/// are nested and disjoint, and the facial distance of `x` and `y` in the
/// plane embedding of `G - xy` is `r + 1`.
pub fn hex_cylinder(r: usize) -> Result<Instance, FamilyError> {
    if r < 1 {
        return Err(FamilyError::InvalidParameter(format!("ring count must be at least 1, got {r}")));
    }
    let (x, y, c, d) = (0, 1, 2, 3);
    let n = 6 * r + 4;
    let mut edges = Vec::new();
    for i in 1..=r {
        for j in 0..6 {
            edges.push((hex_vertex(i, j), hex_vertex(i, j + 1)));
        }
    }
    for i in 1..r {
        for j in spoke_slots(i) {
            edges.push((hex_vertex(i, j), hex_vertex(i + 1, j)));
        }
    }
    edges.push((c, hex_vertex(1, 3)));
    edges.push((c, hex_vertex(1, 5)));
    edges.push((c, x));
    edges.push((x, hex_vertex(1, 1)));
    let outer = spoke_slots(r);
    edges.push((d, hex_vertex(r, outer[1])));
    edges.push((d, hex_vertex(r, outer[2])));
    edges.push((d, y));
    edges.push((y, hex_vertex(r, outer[0])));
    edges.push((x, y));
    let graph = Arc::new(Graph::new(n, &edges).expect("hex cylinder"));
    let planarizing_edge = graph.edge_count() - 1;
    let planar_part = Arc::new(graph.delete_edge(planarizing_edge));
    let reference_planar = planar_embedding(&planar_part)
        .expect("connected")
        .into_embedding()
        .expect("hex cylinder minus xy is planar");
    let reference_rings = NestedCertificate { x, y, cycles: (1..=r).map(|i| (0..6).map(|j| hex_vertex(i, j)).collect()).collect() };
    debug_assert!(verify_certificate(&planar_part, &reference_rings, &reference_planar).is_valid());

    // Route xy through a handle: append its darts to the rotations at x and y.
    let mut rotation: Vec<Vec<Dart>> = reference_planar.rotations().to_vec();
    rotation[x].push(Dart::new(2 * planarizing_edge));
    rotation[y].push(Dart::new(2 * planarizing_edge + 1));
    let toroidal = Embedding::orientable(graph.clone(), rotation).expect("rotation over the full graph");
    debug_assert_eq!(toroidal.euler_characteristic(), 0);

    Ok(Instance { graph, rings: r, x, y, planarizing_edge, reference_planar, reference_rings, reference_toroidal: Some(toroidal) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_cylinder_audit() {
        for r in 1..=6 {
            let inst = hex_cylinder(r).unwrap();
            let g = &inst.graph;
            assert_eq!(g.vertex_count(), 6 * r + 4);
            assert_eq!(g.edge_count(), 9 * r + 6);
            assert!(g.is_cubic());
            assert!(g.is_simple());
            assert_eq!(g.endpoints(inst.planarizing_edge), (inst.x, inst.y));
            assert_eq!(inst.reference_planar.euler_characteristic(), 2);
            assert_eq!(inst.reference_toroidal.as_ref().unwrap().euler_characteristic(), 0);
            assert_eq!(inst.reference_planar.facial_distance(inst.x, inst.y), Ok(r + 1));
            assert!(inst.planar_part().is_subdivision_of_3connected());
        }
    }

    #[test]
    fn hex_cylinder_two() {
        let inst = hex_cylinder(2).unwrap();
        assert_eq!(inst.graph.vertex_count(), 16);
        assert_eq!(inst.graph.edge_count(), 24);
        assert_eq!(inst.graph.girth(), crate::graph::Girth::Finite(4));
    }

    #[test]
    fn zero_rings_rejected() {
        assert!(matches!(hex_cylinder(0), Err(FamilyError::InvalidParameter(_))));
    }

    #[test]
    fn fixtures() {
        let k = k33();
        assert_eq!((k.vertex_count(), k.edge_count()), (6, 9));
        assert!(k.is_cubic());
        assert!(cube().is_cubic() && petersen().is_cubic() && heawood().is_cubic() && wagner().is_cubic() && prism(5).is_cubic());
    }
}
