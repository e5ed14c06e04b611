//! Shared fixtures and brute-force oracles for the integration tests. Nothing
//! here calls the face tracer, so it can be used to check it.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use stronggenus::graph::EdgeId;
use stronggenus::planarity::{planar_embedding, Planarity};
use stronggenus::{families, Dart, Embedding, Graph, Vertex};

pub struct Named {
    pub name: String,
    pub graph: Arc<Graph>,
}

fn named(name: &str, g: Graph) -> Named {
    Named { name: name.to_string(), graph: Arc::new(g) }
}

pub fn octahedron() -> Graph {
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if v != u + 3 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(6, &edges).unwrap()
}

/// Hub 0 joined to a rim of `k` vertices.
pub fn wheel(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((0, 1 + i));
        edges.push((1 + i, 1 + (i + 1) % k));
    }
    Graph::new(k + 1, &edges).unwrap()
}

/// The small named graphs used across the property suites.
pub fn corpus() -> Vec<Named> {
    let theta = Graph::new(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
    let bowtie = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
    let dumbbell = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
    let k4_sub = families::complete(4).subdivide_edge(0).subdivide_edge(3);
    vec![
        named("C3", families::cycle(3)),
        named("C5", families::cycle(5)),
        named("theta", theta),
        named("bowtie", bowtie),
        named("dumbbell", dumbbell),
        named("K4", families::complete(4)),
        named("K4-subdivided", k4_sub),
        named("K5", families::complete(5)),
        named("K2,3", families::complete_bipartite(2, 3)),
        named("K3,3", families::k33()),
        named("K3,4", families::complete_bipartite(3, 4)),
        named("prism3", families::prism(3)),
        named("cube", families::cube()),
        named("octahedron", octahedron()),
        named("wheel5", wheel(5)),
        named("wagner", families::wagner()),
        named("prism5", families::prism(5)),
        named("petersen", families::petersen()),
        named("hex1", (*families::hex_cylinder(1).unwrap().graph).clone()),
        named("heawood", families::heawood()),
        named("hex2", (*families::hex_cylinder(2).unwrap().graph).clone()),
    ]
}

/// A simple cycle: vertices in order and the edge leaving each one.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    pub vmask: u64,
    pub emask: u64,
}

/// Every cycle of `g` exactly once, including 2-cycles on parallel edges.
pub fn all_cycles(g: &Graph) -> Vec<Cycle> {
    assert!(g.vertex_count() <= 64 && g.edge_count() <= 64);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        let mut path = vec![s];
        let mut path_edges = Vec::new();
        extend(g, s, &mut path, &mut path_edges, &mut seen, &mut out);
    }
    out
}

fn extend(g: &Graph, s: Vertex, path: &mut Vec<Vertex>, path_edges: &mut Vec<EdgeId>, seen: &mut std::collections::HashSet<u64>, out: &mut Vec<Cycle>) {
    let cur = *path.last().unwrap();
    for &d in g.darts_at(cur) {
        let (e, w) = (d.edge(), g.head(d));
        if path_edges.contains(&e) {
            continue;
        }
        if w == s && path.len() >= 2 {
            let mut edges = path_edges.clone();
            edges.push(e);
            let emask = edges.iter().fold(0u64, |m, &e| m | 1 << e);
            if seen.insert(emask) {
                let vmask = path.iter().fold(0u64, |m, &v| m | 1 << v);
                out.push(Cycle { vertices: path.clone(), edges, vmask, emask });
            }
        } else if w > s && !path.contains(&w) {
            path.push(w);
            path_edges.push(e);
            extend(g, s, path, path_edges, seen, out);
            path.pop();
            path_edges.pop();
        }
    }
}

/// Face count of an orientable rotation system: orbits of `d -> next(mate d)`.
pub fn orbit_face_lengths(e: &Embedding) -> Vec<usize> {
    let darts = e.graph().dart_count();
    let mut seen = vec![false; darts];
    let mut out = Vec::new();
    for s in 0..darts {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut d = Dart::new(s);
        while !seen[d.index()] {
            seen[d.index()] = true;
            len += 1;
            d = e.next(d.mate());
        }
        out.push(len);
    }
    out
}

/// Random cyclic order at every vertex.
pub fn random_rotation<R: Rng>(g: &Arc<Graph>, rng: &mut R) -> Vec<Vec<Dart>> {
    (0..g.vertex_count())
        .map(|v| {
            let mut ds = g.darts_at(v).to_vec();
            ds.shuffle(rng);
            ds
        })
        .collect()
}

/// Which side of the directed cycle each non-cycle dart at a cycle vertex
/// leaves on, read off the rotation alone.
fn side_labels(e: &Embedding, c: &Cycle) -> HashMap<Dart, bool> {
    let g = e.graph();
    let k = c.vertices.len();
    let mut label = HashMap::new();
    for i in 0..k {
        let v = c.vertices[i];
        let out_edge = c.edges[i];
        let in_edge = c.edges[(i + k - 1) % k];
        let rot = e.rotation(v);
        let at = |edge: EdgeId| rot.iter().position(|d| d.edge() == edge && (g.origin(*d) == v)).unwrap();
        let (a, b) = (at(out_edge), at(in_edge));
        let deg = rot.len();
        let mut j = (a + 1) % deg;
        while j != b {
            label.insert(rot[j], true);
            j = (j + 1) % deg;
        }
        let mut j = (b + 1) % deg;
        while j != a {
            label.insert(rot[j], false);
            j = (j + 1) % deg;
        }
    }
    label
}

/// Plane separation of `x` and `y` by a cycle avoiding both, using only the
/// rotation at the cycle's vertices.
pub fn cycle_separates(e: &Embedding, c: &Cycle, x: Vertex, y: Vertex) -> bool {
    let g = e.graph();
    let labels = side_labels(e, c);
    let on_cycle = |v: Vertex| c.vmask >> v & 1 == 1;
    let side_of = |start: Vertex| -> (u64, Option<bool>) {
        let mut comp = 1u64 << start;
        let mut stack = vec![start];
        let mut side = None;
        while let Some(u) = stack.pop() {
            for &d in g.darts_at(u) {
                let w = g.head(d);
                if on_cycle(w) {
                    side = side.or(labels.get(&d.mate()).copied());
                } else if comp >> w & 1 == 0 {
                    comp |= 1 << w;
                    stack.push(w);
                }
            }
        }
        (comp, side)
    };
    let (cx, sx) = side_of(x);
    if cx >> y & 1 == 1 {
        return false;
    }
    let (_, sy) = side_of(y);
    sx.is_some() && sy.is_some() && sx != sy
}

/// Largest number of pairwise disjoint cycles avoiding `x`, `y` that each
/// separate them in the plane embedding `e`.
pub fn max_nested_cycles(e: &Embedding, cycles: &[Cycle], x: Vertex, y: Vertex) -> usize {
    let avoid = 1u64 << x | 1u64 << y;
    let sep: Vec<u64> = cycles.iter().filter(|c| c.vmask & avoid == 0 && cycle_separates(e, c, x, y)).map(|c| c.vmask).collect();
    fn best(cands: &[u64], used: u64) -> usize {
        let mut top = 0;
        for (i, &c) in cands.iter().enumerate() {
            if c & used == 0 {
                top = top.max(1 + best(&cands[i + 1..], used | c));
            }
        }
        top
    }
    best(&sep, 0)
}

/// Connected cubic multigraph as an edge list; loops count twice.
#[derive(Clone, Debug)]
pub struct Cubic {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Cubic {
    fn mult(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] += 1;
            if u != v {
                a[v][u] += 1;
            }
        }
        a
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u != v) && self.mult().iter().flatten().all(|&k| k <= 1)
    }

    pub fn graph(&self) -> Graph {
        Graph::new(self.n, &self.edges).unwrap()
    }

    /// Subdivide edges `i` and `j` (or edge `i` twice) and join the new vertices.
    fn insert(&self, i: usize, j: usize) -> Cubic {
        let (u, v) = (self.n, self.n + 1);
        let mut edges: Vec<_> = self.edges.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &e)| e).collect();
        let (a, b) = self.edges[i];
        if i == j {
            edges.extend([(a, u), (u, v), (u, v), (v, b)]);
        } else {
            let (c, d) = self.edges[j];
            edges.extend([(a, u), (u, b), (c, v), (v, d), (u, v)]);
        }
        Cubic { n: self.n + 2, edges }
    }
}

type Signature = (usize, Vec<(usize, u8)>);
/// Adjacency matrix with its refined colouring.
type Matrix = (Vec<Vec<u8>>, Vec<usize>);

/// Weisfeiler-Leman colours plus the round-by-round signature lists.
fn refine(a: &[Vec<u8>]) -> (Vec<usize>, Vec<Vec<Signature>>) {
    let n = a.len();
    let mut color = vec![0usize; n];
    let mut history = Vec::new();
    for _ in 0..n.min(6) {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, u8)> = (0..n).filter(|&w| a[v][w] > 0).map(|w| (color[w], a[v][w])).collect();
                s.sort();
                (color[v], s)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        color = sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect();
        let mut sorted = sigs;
        sorted.sort();
        history.push(sorted);
    }
    (color, history)
}

fn isomorphic(a: &[Vec<u8>], ca: &[usize], b: &[Vec<u8>], cb: &[usize]) -> bool {
    let n = a.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            let v = order[i];
            for w in 0..n {
                if a[v][w] > 0 && !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn go(k: usize, order: &[usize], a: &[Vec<u8>], ca: &[usize], b: &[Vec<u8>], cb: &[usize], map: &mut [usize], used: &mut [bool]) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for t in 0..b.len() {
            if used[t] || cb[t] != ca[v] || a[v][v] != b[t][t] {
                continue;
            }
            if order[..k].iter().all(|&u| a[v][u] == b[t][map[u]]) {
                map[v] = t;
                used[t] = true;
                if go(k + 1, order, a, ca, b, cb, map, used) {
                    return true;
                }
                used[t] = false;
            }
        }
        map[v] = usize::MAX;
        false
    }
    go(0, &order, a, ca, b, cb, &mut map, &mut used)
}

/// One representative per isomorphism class of connected cubic multigraphs
/// (loops allowed), for each even order up to `max_n`, grown by edge
/// insertion from the two such graphs on two vertices.
pub fn cubic_multigraphs(max_n: usize) -> Vec<Vec<Cubic>> {
    let theta = Cubic { n: 2, edges: vec![(0, 1), (0, 1), (0, 1)] };
    let dumbbell = Cubic { n: 2, edges: vec![(0, 0), (0, 1), (1, 1)] };
    let mut levels = vec![vec![theta, dumbbell]];
    while levels.last().unwrap()[0].n + 2 <= max_n {
        let mut buckets: HashMap<Vec<Vec<Signature>>, Vec<Matrix>> = HashMap::new();
        let mut next = Vec::new();
        for g in levels.last().unwrap() {
            for i in 0..g.edges.len() {
                for j in i..g.edges.len() {
                    let h = g.insert(i, j);
                    let a = h.mult();
                    let (c, key) = refine(&a);
                    let bucket = buckets.entry(key).or_default();
                    if bucket.iter().any(|(b, cb)| isomorphic(&a, &c, b, cb)) {
                        continue;
                    }
                    bucket.push((a, c));
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// 2-connected planar simple cubic graphs with at most `max_n` vertices.
pub fn planar_cubic_corpus(max_n: usize) -> Vec<Graph> {
    cubic_multigraphs(max_n)
        .into_iter()
        .flatten()
        .filter(|c| c.n >= 4 && c.is_simple())
        .map(|c| c.graph())
        .filter(|g| g.is_two_connected() && planar_embedding(&Arc::new(g.clone())).unwrap().is_planar())
        .collect()
}

/// Random 2-connected planar simple graph on at most `max_n` vertices: a
/// cycle with ears added inside faces.
pub fn random_planar<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let k = rng.gen_range(3..=6.min(max_n));
    let mut n = k;
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let ears = rng.gen_range(1..=6);
    for _ in 0..ears {
        let g = Arc::new(Graph::new(n, &edges).unwrap());
        let Planarity::Planar(e) = planar_embedding(&g).unwrap() else { unreachable!("ears keep the graph planar") };
        let faces = e.trace_faces();
        for _attempt in 0..20 {
            let face = faces[rng.gen_range(0..faces.len())].vertex_sequence(&g);
            let (i, j) = (rng.gen_range(0..face.len()), rng.gen_range(0..face.len()));
            let (u, v) = (face[i], face[j]);
            if u == v {
                continue;
            }
            let inner = rng.gen_range(0..=2usize).min(max_n - n);
            if inner == 0 {
                if g.edge_between(u, v).is_some() {
                    continue;
                }
                edges.push((u, v));
            } else {
                let mut prev = u;
                for t in 0..inner {
                    edges.push((prev, n + t));
                    prev = n + t;
                }
                edges.push((prev, v));
                n += inner;
            }
            break;
        }
    }
    Graph::new(n, &edges).unwrap()
}
