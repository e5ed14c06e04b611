//! Undirected multigraphs in dart (half-edge) form.
//!
//! Edge `e` (0-based internally, 1-based in files) owns two darts: `2e`
//! leaves the first listed endpoint and `2e + 1` leaves the second. A
//! rotation system is then just a permutation of darts, which is why every
//! other module works on this representation.

use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

/// One directed side of an edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn new(index: usize) -> Self {
        Dart(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn mate(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn edge(self) -> EdgeId {
        (self.0 >> 1) as usize
    }

    /// `true` for the dart leaving the first listed endpoint (`<id>a` in files).
    #[inline]
    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.is_forward() { 'a' } else { 'b' };
        write!(f, "{}{}", self.edge() + 1, side)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("loop at vertex {vertex} rejected")]
    LoopRejected { vertex: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is a cycle; suppressing degree-2 vertices would leave a loop")]
    DegenerateCycle,
    #[error("suppressing the degree-2 path at vertex {vertex} would leave a loop")]
    SuppressionLoop { vertex: usize },
    #[error("graph is not connected")]
    NotConnected,
}

/// Girth of a graph; forests have none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    ends: Vec<(Vertex, Vertex)>,
    darts_at: Vec<Vec<Dart>>,
}

impl Graph {
    /// Builds a graph from 0-based endpoint pairs; edge ids follow slice order.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut darts_at = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { line: 0, vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopRejected { vertex: u + 1 });
            }
            darts_at[u].push(Dart::new(2 * e));
            darts_at[v].push(Dart::new(2 * e + 1));
        }
        Ok(Graph { n, ends: edges.to_vec(), darts_at })
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut header = None;
        let mut edges = Vec::new();
        for (no, line) in lines.by_ref() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            header = Some(parse_header(no, line)?);
            break;
        }
        let (n, m) = header.ok_or(GraphError::Malformed { line: 0, message: "missing `p <n> <m>` header".into() })?;
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (no, line) in lines {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            if tok.next() != Some("e") {
                return Err(GraphError::Malformed { line: no, message: format!("expected edge line, got `{line}`") });
            }
            let u = parse_vertex(no, tok.next(), n)?;
            let v = parse_vertex(no, tok.next(), n)?;
            if tok.next().is_some() {
                return Err(GraphError::Malformed { line: no, message: "trailing tokens".into() });
            }
            if u == v {
                return Err(GraphError::LoopRejected { vertex: u + 1 });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch { expected: m, found: edges.len() });
        }
        Graph::new(n, &edges)
    }

    /// Writes the `p`/`e` format, edges in id order.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.ends.len());
        for &(u, v) in &self.ends {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.ends.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.ends
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.ends[e]
    }

    /// Vertex the dart leaves from.
    #[inline]
    pub fn origin(&self, d: Dart) -> Vertex {
        let (u, v) = self.ends[d.edge()];
        if d.is_forward() {
            u
        } else {
            v
        }
    }

    /// Vertex the dart points to.
    #[inline]
    pub fn head(&self, d: Dart) -> Vertex {
        self.origin(d.mate())
    }

    pub fn darts_at(&self, v: Vertex) -> &[Dart] {
        &self.darts_at[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.darts_at[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.darts_at[v].iter().map(move |&d| self.head(d))
    }

    /// Some edge joining `u` and `v`, lowest id first.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.darts_at[u].iter().find(|&&d| self.head(d) == v).map(|d| d.edge())
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.ends.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&vec![false; self.n]) <= 1
    }

    /// Number of connected components after deleting the flagged vertices.
    /// An empty remainder counts as a single (connected) component of size zero.
    pub fn components_without(&self, removed: &[bool]) -> usize {
        let mut seen = removed.to_vec();
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// Vertex connectivity by exhaustive cut enumeration. Disconnected graphs
    /// give 0, complete graphs `n - 1`.
    pub fn connectivity(&self) -> usize {
        if !self.is_connected() {
            return 0;
        }
        let n = self.n;
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in &self.ends {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let complete = (0..n).all(|u| (0..n).all(|v| u == v || adj[u][v]));
        if complete {
            return n - 1;
        }
        let mut removed = vec![false; n];
        for k in 1..n.saturating_sub(1) {
            if cut_of_size(self, k, 0, &mut removed) {
                return k;
            }
        }
        n.saturating_sub(2)
    }

    /// Length of a shortest cycle; parallel edges count as 2-cycles.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut via = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            dist.fill(usize::MAX);
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &d in &self.darts_at[u] {
                    if d.edge() == via[u] && u != s {
                        continue;
                    }
                    let w = self.head(d);
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        via[w] = d.edge();
                        queue.push_back(w);
                    } else if via[w] != d.edge() || w == s {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Graph with edge `e` removed; later edge ids shift down by one.
    pub fn delete_edge(&self, e: EdgeId) -> Graph {
        let mut edges = self.ends.clone();
        edges.remove(e);
        Graph::new(self.n, &edges).expect("subgraph of a valid graph")
    }

    /// Graph with a new vertex `n` placed in the middle of edge `e`. The
    /// two halves take ids `e` and `m`.
    pub fn subdivide_edge(&self, e: EdgeId) -> Graph {
        let mut edges = self.ends.clone();
        let (u, v) = edges[e];
        let w = self.n;
        edges[e] = (u, w);
        edges.push((w, v));
        Graph::new(self.n + 1, &edges).expect("subdivision of a valid graph")
    }

    /// Replaces every maximal path through degree-2 vertices by one edge.
    /// Surviving vertices keep their relative order.
    pub fn suppress_degree_two(&self) -> Result<Graph, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let keep: Vec<bool> = (0..self.n).map(|v| self.degree(v) != 2).collect();
        if !keep.iter().any(|&k| k) {
            return Err(GraphError::DegenerateCycle);
        }
        let mut new_index = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                new_index[v] = next;
                next += 1;
            }
        }
        let mut used = vec![false; self.dart_count()];
        let mut edges = Vec::new();
        for v in 0..self.n {
            if !keep[v] {
                continue;
            }
            for &start in &self.darts_at[v] {
                if used[start.index()] {
                    continue;
                }
                let mut d = start;
                loop {
                    used[d.index()] = true;
                    used[d.mate().index()] = true;
                    let w = self.head(d);
                    if keep[w] {
                        if w == v {
                            return Err(GraphError::SuppressionLoop { vertex: v + 1 });
                        }
                        edges.push((new_index[v], new_index[w]));
                        break;
                    }
                    let back = d.mate();
                    d = *self.darts_at[w].iter().find(|&&o| o != back).expect("degree-2 vertex");
                }
            }
        }
        Graph::new(next, &edges)
    }

    /// `G` is a subdivision of a 3-connected graph.
    pub fn is_subdivision_of_3connected(&self) -> bool {
        match self.suppress_degree_two() {
            Ok(h) => h.vertex_count() >= 4 && h.connectivity() >= 3,
            Err(_) => false,
        }
    }

    /// Biconnected in the vertex sense (at least 3 vertices, no cut vertex).
    pub fn is_two_connected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        let mut removed = vec![false; self.n];
        (0..self.n).all(|v| {
            removed[v] = true;
            let ok = self.components_without(&removed) == 1;
            removed[v] = false;
            ok
        })
    }

    /// Underlying simple adjacency as a dense matrix.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.ends {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }
}

fn parse_header(no: usize, line: &str) -> Result<(usize, usize), GraphError> {
    let mut tok = line.split_whitespace();
    let bad = || GraphError::Malformed { line: no, message: format!("expected `p <n> <m>`, got `{line}`") };
    if tok.next() != Some("p") {
        return Err(bad());
    }
    let n = tok.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let m = tok.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if tok.next().is_some() {
        return Err(bad());
    }
    Ok((n, m))
}

fn parse_vertex(no: usize, tok: Option<&str>, n: usize) -> Result<Vertex, GraphError> {
    let tok = tok.ok_or(GraphError::Malformed { line: no, message: "missing endpoint".into() })?;
    let v: usize = tok
        .parse()
        .map_err(|_| GraphError::Malformed { line: no, message: format!("bad vertex `{tok}`") })?;
    if v == 0 || v > n {
        return Err(GraphError::VertexOutOfRange { line: no, vertex: v, n });
    }
    Ok(v - 1)
}

fn cut_of_size(g: &Graph, k: usize, from: usize, removed: &mut [bool]) -> bool {
    if k == 0 {
        return g.components_without(removed) > 1;
    }
    for v in from..g.vertex_count() {
        removed[v] = true;
        let found = cut_of_size(g, k - 1, v + 1, removed);
        removed[v] = false;
        if found {
            return true;
        }
    }
    false
}
