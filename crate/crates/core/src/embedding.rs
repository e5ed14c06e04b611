//! Rotation-system embeddings with edge signatures.
//!
//! A face is traced by leaving a vertex along a dart, arriving at the far
//! end and continuing with the rotation successor (or predecessor, once an
//! odd number of negative edges has been crossed) of the dart we came back
//! in on. Each edge side is used once, so the faces together traverse every
//! edge exactly twice.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::gf2::BitVec;
use crate::graph::{Dart, EdgeId, Graph, GraphError, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rotation at vertex {vertex} is not a cyclic order of its darts")]
    BadRotation { vertex: usize },
    #[error("signature vector has {found} entries, graph has {expected} edges")]
    SignatureLength { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("facial distance needs two distinct vertices")]
    SameVertex,
    #[error("orientable embedding traced to odd Euler characteristic {chi}")]
    OddCharacteristicOrientable { chi: i64 },
    #[error("face layering degenerated at layer {layer}: {reason}")]
    LayeringDegenerate { layer: usize, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    fn bit(self) -> usize {
        match self {
            Side::Plus => 0,
            Side::Minus => 1,
        }
    }

    /// The other side of the same edge.
    pub fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub dart: Dart,
    pub side: Side,
}

/// Closed walk bounding one face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceWalk {
    steps: Vec<Step>,
}

impl FaceWalk {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.steps.iter().map(|s| s.dart)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertex_sequence(&self, g: &Graph) -> Vec<Vertex> {
        self.darts().map(|d| g.origin(d)).collect()
    }

    /// No vertex visited twice.
    pub fn is_cycle(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        self.darts().all(|d| !std::mem::replace(&mut seen[g.origin(d)], true))
    }

    /// Edges traversed an odd number of times.
    pub fn edge_vector(&self, m: usize) -> BitVec {
        BitVec::from_indices(m, self.darts().map(Dart::edge))
    }
}

/// Orientability and genus of the host surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceKind {
    pub orientable: bool,
    pub genus: u32,
}

impl SurfaceKind {
    pub fn euler_characteristic(self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }
}

/// Faces of an embedding plus the map from (dart, side) back to its face.
#[derive(Clone, Debug)]
pub struct Faces {
    pub walks: Vec<FaceWalk>,
    state_face: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn face_of(&self, dart: Dart, side: Side) -> usize {
        self.state_face[2 * dart.index() + side.bit()]
    }

    /// Vertex membership per face.
    pub fn vertex_sets(&self, g: &Graph) -> Vec<Vec<bool>> {
        self.walks
            .iter()
            .map(|w| {
                let mut s = vec![false; g.vertex_count()];
                for v in w.vertex_sequence(g) {
                    s[v] = true;
                }
                s
            })
            .collect()
    }
}

/// Eulerian edge set produced by the face layering, with its cycle
/// decomposition when every vertex on it has degree 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianSubgraph {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<Vertex>,
    pub cycles: Option<Vec<Vec<Vertex>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    graph: Arc<Graph>,
    rotation: Vec<Vec<Dart>>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    negative: Vec<bool>,
}

impl Embedding {
    /// Orientable embedding (all signatures positive).
    pub fn orientable(graph: impl Into<Arc<Graph>>, rotation: Vec<Vec<Dart>>) -> Result<Self, EmbeddingError> {
        let graph = graph.into();
        let m = graph.edge_count();
        Self::new(graph, rotation, vec![false; m])
    }

    /// `negative[e]` marks edges with signature -1.
    pub fn new(graph: impl Into<Arc<Graph>>, rotation: Vec<Vec<Dart>>, negative: Vec<bool>) -> Result<Self, EmbeddingError> {
        let graph = graph.into();
        if rotation.len() != graph.vertex_count() {
            return Err(EmbeddingError::BadRotation { vertex: rotation.len().min(graph.vertex_count()) + 1 });
        }
        if negative.len() != graph.edge_count() {
            return Err(EmbeddingError::SignatureLength { expected: graph.edge_count(), found: negative.len() });
        }
        let nd = graph.dart_count();
        let mut next = vec![Dart(u32::MAX); nd];
        let mut prev = vec![Dart(u32::MAX); nd];
        let mut normalized = Vec::with_capacity(rotation.len());
        for (v, rot) in rotation.into_iter().enumerate() {
            let mut expected = graph.darts_at(v).to_vec();
            let mut got = rot.clone();
            expected.sort();
            got.sort();
            if expected != got {
                return Err(EmbeddingError::BadRotation { vertex: v + 1 });
            }
            let k = rot.len();
            for i in 0..k {
                next[rot[i].index()] = rot[(i + 1) % k];
                prev[rot[(i + 1) % k].index()] = rot[i];
            }
            normalized.push(rotate_to_min(rot));
        }
        Ok(Embedding { graph, rotation: normalized, next, prev, negative })
    }

    /// Builds an orientable embedding from a rotation successor per dart.
    pub fn from_successors(graph: impl Into<Arc<Graph>>, succ: &[Dart]) -> Result<Self, EmbeddingError> {
        let graph = graph.into();
        let mut rotation = Vec::with_capacity(graph.vertex_count());
        for v in 0..graph.vertex_count() {
            let darts = graph.darts_at(v);
            let mut rot = Vec::with_capacity(darts.len());
            if let Some(&first) = darts.first() {
                let mut d = first;
                loop {
                    rot.push(d);
                    d = succ[d.index()];
                    if d == first || rot.len() > darts.len() {
                        break;
                    }
                }
            }
            rotation.push(rot);
        }
        Self::orientable(graph, rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// Cyclic order at `v`, starting from its lowest dart.
    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    #[inline]
    pub fn next(&self, d: Dart) -> Dart {
        self.next[d.index()]
    }

    #[inline]
    pub fn prev(&self, d: Dart) -> Dart {
        self.prev[d.index()]
    }

    pub fn is_negative(&self, e: EdgeId) -> bool {
        self.negative[e]
    }

    pub fn signature(&self) -> &[bool] {
        &self.negative
    }

    pub fn all_positive(&self) -> bool {
        !self.negative.iter().any(|&n| n)
    }

    /// Mirror image: every rotation reversed.
    pub fn mirrored(&self) -> Embedding {
        let rotation = self.rotation.iter().map(|r| r.iter().rev().copied().collect()).collect();
        Embedding::new(self.graph.clone(), rotation, self.negative.clone()).expect("mirror of a valid embedding")
    }

    /// Reverses the rotation at `v` and negates the signatures of its edges.
    /// The embedded surface is unchanged.
    pub fn flip_vertex(&self, v: Vertex) -> Embedding {
        let mut rotation = self.rotation.clone();
        rotation[v].reverse();
        let mut negative = self.negative.clone();
        for &d in self.graph.darts_at(v) {
            negative[d.edge()] = !negative[d.edge()];
        }
        Embedding::new(self.graph.clone(), rotation, negative).expect("flip of a valid embedding")
    }

    /// Vertex flips (spanning-tree propagation) that make every signature
    /// positive, if such flips exist. Requires a connected graph.
    pub fn orientable_flips(&self) -> Option<Vec<bool>> {
        let g = &*self.graph;
        let mut flip = vec![None; g.vertex_count()];
        let mut queue = VecDeque::new();
        for s in 0..g.vertex_count() {
            if flip[s].is_some() {
                continue;
            }
            flip[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let fu = flip[u].unwrap();
                for &d in g.darts_at(u) {
                    let w = g.head(d);
                    let want = fu ^ self.negative[d.edge()];
                    match flip[w] {
                        None => {
                            flip[w] = Some(want);
                            queue.push_back(w);
                        }
                        Some(fw) if fw != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(flip.into_iter().map(|f| f.unwrap()).collect())
    }

    /// Equivalent all-positive embedding, if the surface is orientable.
    pub fn normalized_orientable(&self) -> Option<Embedding> {
        let flips = self.orientable_flips()?;
        let rotation = self
            .rotation
            .iter()
            .zip(&flips)
            .map(|(r, &f)| if f { r.iter().rev().copied().collect() } else { r.clone() })
            .collect();
        Some(Embedding::orientable(self.graph.clone(), rotation).expect("flip-normalized embedding"))
    }

    fn step(&self, d: Dart, side: Side) -> (Dart, Side) {
        let side = if self.negative[d.edge()] { side.flip() } else { side };
        let back = d.mate();
        let nd = match side {
            Side::Plus => self.next[back.index()],
            Side::Minus => self.prev[back.index()],
        };
        (nd, side)
    }

    fn mirror(&self, d: Dart, side: Side) -> (Dart, Side) {
        let side = if self.negative[d.edge()] { side } else { side.flip() };
        (d.mate(), side)
    }

    /// Complete face set, ordered by the lowest dart each face starts from.
    pub fn faces(&self) -> Faces {
        let nd = self.graph.dart_count();
        let mut state_face = vec![usize::MAX; 2 * nd];
        let mut walks = Vec::new();
        for di in 0..nd {
            for side in [Side::Plus, Side::Minus] {
                let start = (Dart::new(di), side);
                if state_face[2 * di + side.bit()] != usize::MAX {
                    continue;
                }
                let id = walks.len();
                let mut steps = Vec::new();
                let mut cur = start;
                loop {
                    state_face[2 * cur.0.index() + cur.1.bit()] = id;
                    steps.push(Step { dart: cur.0, side: cur.1 });
                    cur = self.step(cur.0, cur.1);
                    if cur == start {
                        break;
                    }
                }
                for s in &steps {
                    let (md, ms) = self.mirror(s.dart, s.side);
                    let slot = &mut state_face[2 * md.index() + ms.bit()];
                    if *slot == usize::MAX {
                        *slot = id;
                    }
                }
                walks.push(FaceWalk { steps });
            }
        }
        if nd == 0 {
            // a lone vertex sits in one face with an empty boundary
            walks.push(FaceWalk { steps: Vec::new() });
        }
        Faces { walks, state_face }
    }

    pub fn trace_faces(&self) -> Vec<FaceWalk> {
        self.faces().walks
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// `n - m + f`.
    pub fn euler_characteristic(&self) -> i64 {
        self.graph.vertex_count() as i64 - self.graph.edge_count() as i64 + self.face_count() as i64
    }

    pub fn surface(&self) -> Result<SurfaceKind, EmbeddingError> {
        let chi = self.euler_characteristic();
        if self.orientable_flips().is_some() {
            if chi % 2 != 0 || chi > 2 {
                return Err(EmbeddingError::OddCharacteristicOrientable { chi });
            }
            Ok(SurfaceKind { orientable: true, genus: ((2 - chi) / 2) as u32 })
        } else {
            Ok(SurfaceKind { orientable: false, genus: (2 - chi).max(1) as u32 })
        }
    }

    /// Every face boundary is a cycle.
    pub fn is_strong(&self) -> bool {
        self.trace_faces().iter().all(|w| w.is_cycle(&self.graph))
    }

    /// Every face is an induced cycle whose vertex deletion leaves a
    /// connected (possibly empty) graph.
    pub fn is_polyhedral(&self) -> bool {
        let g = &*self.graph;
        self.trace_faces().iter().all(|w| {
            if !w.is_cycle(g) {
                return false;
            }
            let mut on = vec![false; g.vertex_count()];
            for v in w.vertex_sequence(g) {
                on[v] = true;
            }
            let mut own = vec![false; g.edge_count()];
            for d in w.darts() {
                own[d.edge()] = true;
            }
            let induced = g.edges().iter().enumerate().all(|(e, &(u, v))| own[e] || !(on[u] && on[v]));
            induced && g.components_without(&on) <= 1
        })
    }

    /// Face-depth of every face from `x`: faces through `x` have depth 1,
    /// and a face sharing a vertex with a depth-`k` face has depth at most `k + 1`.
    pub fn face_depths(&self, faces: &Faces, x: Vertex) -> Vec<usize> {
        let sets = faces.vertex_sets(&self.graph);
        let mut depth = vec![usize::MAX; faces.len()];
        let mut queue = VecDeque::new();
        for (f, s) in sets.iter().enumerate() {
            if s[x] {
                depth[f] = 1;
                queue.push_back(f);
            }
        }
        // Faces through a vertex form a clique, so BFS over vertices works.
        let mut faces_at = vec![Vec::new(); self.graph.vertex_count()];
        for (f, s) in sets.iter().enumerate() {
            for v in 0..s.len() {
                if s[v] {
                    faces_at[v].push(f);
                }
            }
        }
        let mut vertex_done = vec![false; self.graph.vertex_count()];
        while let Some(f) = queue.pop_front() {
            for v in 0..sets[f].len() {
                if !sets[f][v] || std::mem::replace(&mut vertex_done[v], true) {
                    continue;
                }
                for &h in &faces_at[v] {
                    if depth[h] == usize::MAX {
                        depth[h] = depth[f] + 1;
                        queue.push_back(h);
                    }
                }
            }
        }
        depth
    }

    /// Least number of facial walks chaining `x` to `y`, consecutive walks
    /// sharing a vertex.
    pub fn facial_distance(&self, x: Vertex, y: Vertex) -> Result<usize, EmbeddingError> {
        let n = self.graph.vertex_count();
        for v in [x, y] {
            if v >= n {
                return Err(EmbeddingError::VertexOutOfRange { vertex: v + 1 });
            }
        }
        if x == y {
            return Err(EmbeddingError::SameVertex);
        }
        let faces = self.faces();
        let depth = self.face_depths(&faces, x);
        let sets = faces.vertex_sets(&self.graph);
        Ok((0..faces.len()).filter(|&f| sets[f][y]).map(|f| depth[f]).min().expect("y lies on some face"))
    }

    /// Layers `Q_1, ..., Q_r` grown from `Q_0 = {x}`: the interior of `Q_i`
    /// is the interior of `Q_{i-1}` plus every face meeting `Q_{i-1}`, and
    /// `Q_i` is the GF(2) sum of the interior faces. `r` is the facial
    /// distance minus one.
    pub fn face_bfs_layers(&self, x: Vertex, y: Vertex) -> Result<Vec<EulerianSubgraph>, EmbeddingError> {
        let g = &*self.graph;
        let q = self.facial_distance(x, y)?;
        let faces = self.faces();
        let sets = faces.vertex_sets(g);
        let m = g.edge_count();
        let vectors: Vec<BitVec> = faces.walks.iter().map(|w| w.edge_vector(m)).collect();
        let mut interior = vec![false; faces.len()];
        let mut frontier = vec![false; g.vertex_count()];
        frontier[x] = true;
        let mut used = vec![false; g.vertex_count()];
        let mut layers = Vec::new();
        for layer in 1..q {
            for f in 0..faces.len() {
                if !interior[f] && (0..g.vertex_count()).any(|v| frontier[v] && sets[f][v]) {
                    interior[f] = true;
                }
            }
            let mut sum = BitVec::zeros(m);
            for f in (0..faces.len()).filter(|&f| interior[f]) {
                sum.xor_assign(&vectors[f]);
            }
            let edges: Vec<EdgeId> = sum.ones().collect();
            let mut deg = vec![0usize; g.vertex_count()];
            for &e in &edges {
                let (u, v) = g.endpoints(e);
                deg[u] += 1;
                deg[v] += 1;
            }
            let vertices: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| deg[v] > 0).collect();
            if vertices.is_empty() {
                return Err(EmbeddingError::LayeringDegenerate { layer, reason: "empty boundary".into() });
            }
            for &v in &vertices {
                if v == x || v == y {
                    return Err(EmbeddingError::LayeringDegenerate { layer, reason: format!("layer meets terminal {}", v + 1) });
                }
                if used[v] {
                    return Err(EmbeddingError::LayeringDegenerate { layer, reason: format!("vertex {} shared with an earlier layer", v + 1) });
                }
            }
            for &v in &vertices {
                used[v] = true;
            }
            let cycles = if vertices.iter().all(|&v| deg[v] == 2) { Some(split_two_regular(g, &edges)) } else { None };
            frontier.fill(false);
            for &v in &vertices {
                frontier[v] = true;
            }
            layers.push(EulerianSubgraph { edges, vertices, cycles });
        }
        Ok(layers)
    }

    /// Text form: the graph block, then `r <v> : <darts>` per vertex and
    /// `s <edge> -1` for each negative edge.
    pub fn to_text(&self) -> String {
        let mut out = self.graph.to_text();
        for (v, rot) in self.rotation.iter().enumerate() {
            let _ = write!(out, "r {} :", v + 1);
            for d in rot {
                let _ = write!(out, " {d}");
            }
            out.push('\n');
        }
        for (e, &neg) in self.negative.iter().enumerate() {
            if neg {
                let _ = writeln!(out, "s {} -1", e + 1);
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, EmbeddingError> {
        let mut graph_block = String::new();
        let mut rest = Vec::new();
        let mut in_graph = true;
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if in_graph && (t.starts_with('r') || t.starts_with('s')) {
                in_graph = false;
            }
            if in_graph {
                graph_block.push_str(line);
                graph_block.push('\n');
            } else {
                rest.push((i + 1, t));
            }
        }
        let graph = Graph::parse(&graph_block)?;
        let n = graph.vertex_count();
        let m = graph.edge_count();
        let mut rotation: Vec<Option<Vec<Dart>>> = vec![None; n];
        let mut negative = vec![false; m];
        for (no, line) in rest {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| EmbeddingError::Malformed { line: no, message };
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("r") => {
                    let v: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad vertex".into()))?;
                    if v == 0 || v > n {
                        return Err(bad(format!("vertex {v} out of range")));
                    }
                    if tok.next() != Some(":") {
                        return Err(bad("expected `:`".into()));
                    }
                    let darts = tok.map(|t| parse_dart(t, m).ok_or_else(|| bad(format!("bad dart `{t}`")))).collect::<Result<Vec<_>, _>>()?;
                    if rotation[v - 1].replace(darts).is_some() {
                        return Err(bad(format!("duplicate rotation for vertex {v}")));
                    }
                }
                Some("s") => {
                    let e: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad edge id".into()))?;
                    if e == 0 || e > m {
                        return Err(bad(format!("edge {e} out of range")));
                    }
                    negative[e - 1] = match tok.next() {
                        Some("-1") => true,
                        Some("1") | Some("+1") => false,
                        other => return Err(bad(format!("bad signature {other:?}"))),
                    };
                }
                _ => return Err(bad(format!("unexpected line `{line}`"))),
            }
        }
        let rotation = rotation
            .into_iter()
            .enumerate()
            .map(|(v, r)| match r {
                Some(r) => Ok(r),
                None if graph.degree(v) == 0 => Ok(Vec::new()),
                None => Err(EmbeddingError::BadRotation { vertex: v + 1 }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Embedding::new(graph, rotation, negative)
    }
}

fn rotate_to_min(mut rot: Vec<Dart>) -> Vec<Dart> {
    if let Some(pos) = rot.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i) {
        rot.rotate_left(pos);
    }
    rot
}

fn parse_dart(tok: &str, m: usize) -> Option<Dart> {
    let (num, side) = tok.split_at(tok.len().checked_sub(1)?);
    let e: usize = num.parse().ok()?;
    if e == 0 || e > m {
        return None;
    }
    match side {
        "a" => Some(Dart::new(2 * (e - 1))),
        "b" => Some(Dart::new(2 * (e - 1) + 1)),
        _ => None,
    }
}

/// Splits a 2-regular edge set into its cycles (vertex sequences).
pub(crate) fn split_two_regular(g: &Graph, edges: &[EdgeId]) -> Vec<Vec<Vertex>> {
    let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut used = vec![false; g.edge_count()];
    let mut cycles = Vec::new();
    for &e0 in edges {
        if used[e0] {
            continue;
        }
        let (start, mut cur) = g.endpoints(e0);
        used[e0] = true;
        let mut cycle = vec![start];
        while cur != start {
            cycle.push(cur);
            let e = *incident[cur].iter().find(|&&e| !used[e]).expect("2-regular");
            used[e] = true;
            let (a, b) = g.endpoints(e);
            cur = if a == cur { b } else { a };
        }
        cycles.push(cycle);
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::search::enumerate_rotations;

    fn triangle() -> Embedding {
        let g = families::cycle(3);
        let rot = (0..3).map(|v| g.darts_at(v).to_vec()).collect();
        Embedding::orientable(g, rot).unwrap()
    }

    /// Tetrahedral rotation: at each vertex the other three in a fixed
    /// orientation of the sphere.
    fn tetrahedron() -> Embedding {
        crate::planarity::planar_embedding(&Arc::new(families::complete(4))).unwrap().into_embedding().unwrap()
    }

    #[test]
    fn single_vertex_is_a_sphere() {
        let g = Graph::new(1, &[]).unwrap();
        let e = Embedding::orientable(g, vec![Vec::new()]).unwrap();
        assert_eq!(e.face_count(), 1);
        assert_eq!(e.euler_characteristic(), 2);
        assert_eq!(e.surface().unwrap().genus, 0);
    }

    #[test]
    fn triangle_has_two_faces() {
        let e = triangle();
        let faces = e.trace_faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(e.euler_characteristic(), 2);
        assert_eq!(e.surface().unwrap(), SurfaceKind { orientable: true, genus: 0 });
        assert!(e.is_strong());
        assert!(e.is_polyhedral());
    }

    #[test]
    fn tetrahedron_faces() {
        let e = tetrahedron();
        let faces = e.trace_faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(e.euler_characteristic(), 2);
        assert!(e.is_polyhedral());
    }

    #[test]
    fn projective_triangle() {
        let g = families::cycle(3);
        let rot = (0..3).map(|v| g.darts_at(v).to_vec()).collect();
        let e = Embedding::new(g, rot, vec![true, false, false]).unwrap();
        assert_eq!(e.euler_characteristic(), 1);
        assert_eq!(e.surface().unwrap(), SurfaceKind { orientable: false, genus: 1 });
        assert_eq!(e.trace_faces()[0].len(), 6);
    }

    #[test]
    fn flips_preserve_faces() {
        let e = tetrahedron().flip_vertex(2);
        assert!(!e.all_positive());
        assert_eq!(e.surface().unwrap(), SurfaceKind { orientable: true, genus: 0 });
        let lens = |e: &Embedding| {
            let mut l: Vec<usize> = e.trace_faces().iter().map(FaceWalk::len).collect();
            l.sort();
            l
        };
        assert_eq!(lens(&e), lens(&tetrahedron()));
        assert_eq!(e.normalized_orientable().unwrap().euler_characteristic(), 2);
    }

    #[test]
    fn k33_rotations_by_characteristic() {
        let g = Arc::new(families::k33());
        let mut toroidal_strong = 0;
        let mut toroidal_weak = 0;
        for e in enumerate_rotations(&g) {
            let chi = e.euler_characteristic();
            assert!(chi == 0 || chi == -2);
            if chi == 0 {
                if e.is_strong() {
                    toroidal_strong += 1;
                    assert!(!e.is_polyhedral());
                } else {
                    toroidal_weak += 1;
                }
            }
        }
        assert!(toroidal_strong > 0 && toroidal_weak > 0);
    }

    #[test]
    fn strong_k33_torus_has_three_hexagons() {
        let g = Arc::new(families::k33());
        let e = enumerate_rotations(&g).find(|e| e.euler_characteristic() == 0 && e.trace_faces().iter().all(|f| f.len() == 6)).unwrap();
        assert_eq!(e.trace_faces().len(), 3);
        assert!(e.is_strong());
        assert!(!e.is_polyhedral());
    }

    #[test]
    fn facial_distance_basics() {
        let e = tetrahedron();
        assert_eq!(e.facial_distance(0, 1), Ok(1));
        assert_eq!(e.facial_distance(0, 0), Err(EmbeddingError::SameVertex));
        let cube = crate::planarity::planar_embedding(&Arc::new(families::cube())).unwrap().into_embedding().unwrap();
        // vertices 0 and 7 are antipodal in the bit-labelled cube
        assert_eq!(cube.facial_distance(0, 7), Ok(2));
        assert_eq!(cube.facial_distance(7, 0), Ok(2));
        assert!(cube.face_bfs_layers(0, 1).unwrap().is_empty());
        let layers = cube.face_bfs_layers(0, 7).unwrap();
        assert_eq!(layers.len(), 1);
        assert_eq!(layers[0].cycles.as_ref().unwrap()[0].len(), 6);
    }

    #[test]
    fn text_round_trip() {
        let e = tetrahedron().flip_vertex(1);
        let text = e.to_text();
        let back = Embedding::parse(&text).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_rejects_bad_rotation() {
        let text = "p 3 3\ne 1 2\ne 2 3\ne 3 1\nr 1 : 1a 2a\nr 2 : 1b 2a\nr 3 : 2b 3a\n";
        assert!(matches!(Embedding::parse(text), Err(EmbeddingError::BadRotation { vertex: 1 })));
    }
}
