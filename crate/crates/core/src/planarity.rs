//! Planarity testing by path addition (Demoucron, Malgrange, Pertuiset) on
//! each block, and nested-cycle certificates for facial distance in the plane.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::embedding::{Embedding, EmbeddingError, Faces};
use crate::graph::{Dart, EdgeId, Graph, Vertex};
use crate::homology::{parse_cycle_line, CycleSetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanarityError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("embedding is not planar (Euler characteristic {chi})")]
    NotPlanar { chi: i64 },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("certificate extraction failed at layer {layer}")]
    ExtractionFailed { layer: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

impl From<CycleSetError> for PlanarityError {
    fn from(e: CycleSetError) -> Self {
        PlanarityError::Malformed { line: 0, message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(Embedding),
    NonPlanar,
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn into_embedding(self) -> Option<Embedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar => None,
        }
    }
}

/// All-positive planar embedding of a connected graph, or `NonPlanar`.
/// Deterministic: rotations start at their lowest dart and the mirror image
/// is fixed by the first vertex of degree at least 3.
pub fn planar_embedding(g: &Arc<Graph>) -> Result<Planarity, PlanarityError> {
    if !g.is_connected() {
        return Err(PlanarityError::NotConnected);
    }
    let nd = g.dart_count();
    let mut block_next = vec![Dart(u32::MAX); nd];
    let mut block_of = vec![usize::MAX; g.edge_count()];
    let blocks = blocks(g);
    for (b, edges) in blocks.iter().enumerate() {
        for &e in edges {
            block_of[e] = b;
        }
        let Some(faces) = embed_block(g, edges) else {
            return Ok(Planarity::NonPlanar);
        };
        for face in &faces {
            for i in 0..face.len() {
                let d = face[i];
                let nxt = face[(i + 1) % face.len()];
                block_next[d.mate().index()] = nxt;
            }
        }
    }
    let mut rotation = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let mut darts: Vec<Dart> = g.darts_at(v).to_vec();
        darts.sort();
        let mut done = vec![false; darts.len()];
        let mut rot = Vec::with_capacity(darts.len());
        for i in 0..darts.len() {
            if done[i] {
                continue;
            }
            let start = darts[i];
            let mut d = start;
            loop {
                let pos = darts.binary_search(&d).expect("dart at vertex");
                done[pos] = true;
                rot.push(d);
                d = block_next[d.index()];
                if d == start {
                    break;
                }
            }
        }
        rotation.push(rot);
    }
    let mut emb = Embedding::orientable(g.clone(), rotation)?;
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) >= 3) {
        let r = emb.rotation(v);
        if r[1] > r[r.len() - 1] {
            emb = emb.mirrored();
        }
    }
    let chi = emb.euler_characteristic();
    if chi != 2 {
        return Err(PlanarityError::NotPlanar { chi });
    }
    Ok(Planarity::Planar(emb))
}

/// Edge sets of the biconnected components.
fn blocks(g: &Graph) -> Vec<Vec<EdgeId>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<EdgeId>,
        out: Vec<Vec<EdgeId>>,
    }
    fn dfs(s: &mut State, u: Vertex, parent_edge: Option<EdgeId>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for &d in s.g.darts_at(u) {
            let e = d.edge();
            if Some(e) == parent_edge {
                continue;
            }
            let w = s.g.head(d);
            if s.disc[w] == 0 {
                s.stack.push(e);
                dfs(s, w, Some(e));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(f) = s.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort();
                    s.out.push(block);
                }
            } else if s.disc[w] < s.disc[u] {
                s.stack.push(e);
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let mut s = State { g, disc: vec![0; g.vertex_count()], low: vec![0; g.vertex_count()], time: 0, stack: Vec::new(), out: Vec::new() };
    dfs(&mut s, 0, None);
    s.out.sort();
    s.out
}

/// Faces (dart cycles) of a planar embedding of one block, or `None`.
fn embed_block(g: &Graph, edges: &[EdgeId]) -> Option<Vec<Vec<Dart>>> {
    if edges.len() == 1 {
        let d = Dart::new(2 * edges[0]);
        return Some(vec![vec![d, d.mate()]]);
    }
    let n = g.vertex_count();
    let mut in_block = vec![false; g.edge_count()];
    for &e in edges {
        in_block[e] = true;
    }
    let block_darts = |v: Vertex| g.darts_at(v).iter().copied().filter(|d| in_block[d.edge()]).collect::<Vec<_>>();
    let adj: Vec<Vec<Dart>> = (0..n).map(block_darts).collect();

    // initial cycle through the first edge
    let e0 = edges[0];
    let (u0, v0) = g.endpoints(e0);
    let mut parent: Vec<Option<Dart>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([v0]);
    seen[v0] = true;
    while let Some(a) = queue.pop_front() {
        if a == u0 {
            break;
        }
        for &d in &adj[a] {
            if d.edge() == e0 {
                continue;
            }
            let b = g.head(d);
            if !seen[b] {
                seen[b] = true;
                parent[b] = Some(d);
                queue.push_back(b);
            }
        }
    }
    let mut cycle = Vec::new();
    let mut cur = u0;
    while cur != v0 {
        let d = parent[cur]?;
        cycle.push(d);
        cur = g.origin(d);
    }
    cycle.reverse();
    cycle.insert(0, Dart::new(2 * e0));
    let reversed: Vec<Dart> = cycle.iter().rev().map(|d| d.mate()).collect();
    let mut faces = vec![cycle.clone(), reversed];
    let mut vertex_in = vec![false; n];
    let mut edge_in = vec![false; g.edge_count()];
    for d in &cycle {
        vertex_in[g.origin(*d)] = true;
        edge_in[d.edge()] = true;
    }
    let mut remaining = edges.len() - cycle.len();

    while remaining > 0 {
        let fragments = fragments(g, &adj, &vertex_in, &edge_in, edges);
        let face_sets: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut s = vec![false; n];
                for d in f {
                    s[g.origin(*d)] = true;
                }
                s
            })
            .collect();
        let mut choice = None;
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len()).filter(|&f| frag.contacts.iter().all(|&c| face_sets[f][c])).collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let path = fragment_path(g, &adj, &vertex_in, &edge_in, &fragments[fi]);
        let a = g.origin(path[0]);
        let b = g.head(*path.last().unwrap());
        let face = faces.swap_remove(face_idx);
        let ia = face.iter().position(|d| g.origin(*d) == a).expect("contact on face");
        let ib = face.iter().position(|d| g.origin(*d) == b).expect("contact on face");
        let k = face.len();
        let seg = |from: usize, to: usize| {
            let mut s = Vec::new();
            let mut i = from;
            while i != to {
                s.push(face[i]);
                i = (i + 1) % k;
            }
            s
        };
        let mut f1 = seg(ia, ib);
        f1.extend(path.iter().rev().map(|d| d.mate()));
        let mut f2 = path.clone();
        f2.extend(seg(ib, ia));
        faces.push(f1);
        faces.push(f2);
        for d in &path {
            edge_in[d.edge()] = true;
            vertex_in[g.head(*d)] = true;
        }
        remaining -= path.len();
    }
    Some(faces)
}

struct Fragment {
    /// Chord edge, or the non-embedded vertices of a bridge component.
    chord: Option<EdgeId>,
    inner: Vec<Vertex>,
    contacts: Vec<Vertex>,
}

fn fragments(g: &Graph, adj: &[Vec<Dart>], vertex_in: &[bool], edge_in: &[bool], edges: &[EdgeId]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &e in edges {
        let (u, v) = g.endpoints(e);
        if !edge_in[e] && vertex_in[u] && vertex_in[v] {
            let mut contacts = vec![u, v];
            contacts.sort();
            out.push(Fragment { chord: Some(e), inner: Vec::new(), contacts });
        }
    }
    let n = g.vertex_count();
    let mut comp = vec![false; n];
    for s in 0..n {
        if vertex_in[s] || comp[s] || adj[s].is_empty() {
            continue;
        }
        let mut inner = vec![s];
        let mut contacts = Vec::new();
        comp[s] = true;
        let mut i = 0;
        while i < inner.len() {
            let a = inner[i];
            i += 1;
            for &d in &adj[a] {
                let b = g.head(d);
                if vertex_in[b] {
                    contacts.push(b);
                } else if !comp[b] {
                    comp[b] = true;
                    inner.push(b);
                }
            }
        }
        contacts.sort();
        contacts.dedup();
        out.push(Fragment { chord: None, inner, contacts });
    }
    out
}

/// Path through a fragment between two distinct contacts.
fn fragment_path(g: &Graph, adj: &[Vec<Dart>], vertex_in: &[bool], edge_in: &[bool], frag: &Fragment) -> Vec<Dart> {
    if let Some(e) = frag.chord {
        debug_assert!(!edge_in[e]);
        return vec![Dart::new(2 * e)];
    }
    let n = g.vertex_count();
    let a = frag.contacts[0];
    let mut in_frag = vec![false; n];
    for &v in &frag.inner {
        in_frag[v] = true;
    }
    let mut parent: Vec<Option<Dart>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &d in &adj[a] {
        let b = g.head(d);
        if in_frag[b] && parent[b].is_none() {
            parent[b] = Some(d);
            queue.push_back(b);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &d in &adj[u] {
            let w = g.head(d);
            if vertex_in[w] && w != a {
                let mut path = vec![d];
                let mut cur = u;
                while let Some(p) = parent[cur] {
                    path.push(p);
                    cur = g.origin(p);
                    if cur == a {
                        break;
                    }
                }
                path.reverse();
                return path;
            }
            if in_frag[w] && parent[w].is_none() {
                parent[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a block have at least two contacts")
}

/// Label of the side of a cycle each face lies on, in a planar embedding.
/// Faces are joined across every edge not in `cycle_edges`.
pub fn face_sides(e: &Embedding, faces: &Faces, cycle_edges: &[bool]) -> Vec<usize> {
    let g = e.graph();
    let mut label = vec![usize::MAX; faces.len()];
    let mut adj = vec![Vec::new(); faces.len()];
    for edge in (0..g.edge_count()).filter(|&ed| !cycle_edges[ed]) {
        let a = faces.face_of(Dart::new(2 * edge), crate::embedding::Side::Plus);
        let b = faces.face_of(Dart::new(2 * edge), crate::embedding::Side::Minus);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut next = 0;
    for s in 0..faces.len() {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(f) = stack.pop() {
            for &h in &adj[f] {
                if label[h] == usize::MAX {
                    label[h] = next;
                    stack.push(h);
                }
            }
        }
        next += 1;
    }
    label
}

fn vertex_side(e: &Embedding, faces: &Faces, sides: &[usize], v: Vertex) -> usize {
    let d = e.graph().darts_at(v)[0];
    sides[faces.face_of(d, crate::embedding::Side::Plus)]
}

fn cycle_edge_mask(g: &Graph, cycle: &[Vertex]) -> Option<Vec<bool>> {
    let mut mask = vec![false; g.edge_count()];
    let k = cycle.len();
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        let e = g.darts_at(u).iter().map(|d| d.edge()).find(|&e| !mask[e] && {
            let (a, b) = g.endpoints(e);
            (a == u && b == v) || (a == v && b == u)
        })?;
        mask[e] = true;
    }
    Some(mask)
}

/// The cycle separates `x` from `y` on the sphere. Neither terminal may lie on it.
pub fn separates(e: &Embedding, faces: &Faces, cycle: &[Vertex], x: Vertex, y: Vertex) -> bool {
    let Some(mask) = cycle_edge_mask(e.graph(), cycle) else {
        return false;
    };
    let sides = face_sides(e, faces, &mask);
    vertex_side(e, faces, &sides, x) != vertex_side(e, faces, &sides, y)
}

/// Cycles `Q_1, ..., Q_r` in `G - x - y`, pairwise disjoint, each separating
/// `x` from `y`, listed from the one nearest `x` outwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedCertificate {
    pub x: Vertex,
    pub y: Vertex,
    pub cycles: Vec<Vec<Vertex>>,
}

impl NestedCertificate {
    pub fn to_text(&self) -> String {
        let mut out = format!("x {}\ny {}\n", self.x + 1, self.y + 1);
        for c in &self.cycles {
            out.push('c');
            for v in c {
                let _ = write!(out, " {}", v + 1);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, n: usize) -> Result<Self, PlanarityError> {
        let mut x = None;
        let mut y = None;
        let mut cycles = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let no = i + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let bad = |message: String| PlanarityError::Malformed { line: no, message };
            let mut tok = t.split_whitespace();
            match tok.next() {
                Some(tag @ ("x" | "y")) => {
                    let v: usize = tok.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad terminal".into()))?;
                    if v == 0 || v > n {
                        return Err(bad(format!("vertex {v} out of range")));
                    }
                    if tag == "x" {
                        x = Some(v - 1);
                    } else {
                        y = Some(v - 1);
                    }
                }
                Some("c") => cycles.push(parse_cycle_line(t, n).map_err(|e| bad(e.to_string()))?),
                _ => return Err(bad(format!("unexpected line `{t}`"))),
            }
        }
        let x = x.ok_or(PlanarityError::Malformed { line: 0, message: "missing `x` line".into() })?;
        let y = y.ok_or(PlanarityError::Malformed { line: 0, message: "missing `y` line".into() })?;
        Ok(NestedCertificate { x, y, cycles })
    }
}

fn require_planar(e: &Embedding) -> Result<(), PlanarityError> {
    let chi = e.euler_characteristic();
    if chi != 2 || e.orientable_flips().is_none() {
        return Err(PlanarityError::NotPlanar { chi });
    }
    Ok(())
}

/// Nested separating cycles witnessing `d'(x, y) = r + 1`.
///
/// Layer `i` is the boundary of the region formed by faces deeper than `i`
/// that is reachable from `y` across edges. Its vertices all have face depth
/// exactly `i`, so different layers are disjoint; the boundary splits into
/// cycles and an odd number of them separate `x` from `y`.
pub fn prop1_certificate(e: &Embedding, x: Vertex, y: Vertex) -> Result<NestedCertificate, PlanarityError> {
    require_planar(e)?;
    let g = e.graph();
    let q = e.facial_distance(x, y)?;
    let faces = e.faces();
    let depth = e.face_depths(&faces, x);
    let y_face = faces.face_of(g.darts_at(y)[0], crate::embedding::Side::Plus);
    let mut cycles = Vec::with_capacity(q - 1);
    for layer in 1..q {
        let mut region = vec![false; faces.len()];
        region[y_face] = true;
        let mut stack = vec![y_face];
        while let Some(f) = stack.pop() {
            for s in faces.walks[f].steps() {
                let h = faces.face_of(s.dart, s.side.flip());
                if !region[h] && depth[h] > layer {
                    region[h] = true;
                    stack.push(h);
                }
            }
        }
        let boundary: Vec<EdgeId> = (0..g.edge_count())
            .filter(|&ed| {
                let a = faces.face_of(Dart::new(2 * ed), crate::embedding::Side::Plus);
                let b = faces.face_of(Dart::new(2 * ed), crate::embedding::Side::Minus);
                region[a] != region[b]
            })
            .collect();
        let chosen = decompose_eulerian(g, &boundary)
            .into_iter()
            .find(|c| !c.contains(&x) && !c.contains(&y) && separates(e, &faces, c, x, y))
            .ok_or(PlanarityError::ExtractionFailed { layer })?;
        cycles.push(chosen);
    }
    let cert = NestedCertificate { x, y, cycles };
    if !verify_certificate(g, &cert, e).is_valid() {
        return Err(PlanarityError::ExtractionFailed { layer: 0 });
    }
    Ok(cert)
}

/// Splits an edge set with all degrees even into cycles.
pub fn decompose_eulerian(g: &Graph, edges: &[EdgeId]) -> Vec<Vec<Vertex>> {
    let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut used = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for &e0 in edges {
        if used[e0] {
            continue;
        }
        let start = g.endpoints(e0).0;
        let mut path = vec![start];
        let mut pos = vec![usize::MAX; g.vertex_count()];
        pos[start] = 0;
        let mut cur = start;
        while let Some(&e) = incident[cur].iter().find(|&&e| !used[e]) {
            used[e] = true;
            let (a, b) = g.endpoints(e);
            let w = if a == cur { b } else { a };
            if pos[w] != usize::MAX {
                let cyc: Vec<Vertex> = path.drain(pos[w]..).collect();
                for &v in &cyc {
                    pos[v] = usize::MAX;
                }
                out.push(cyc);
            }
            pos[w] = path.len();
            path.push(w);
            cur = w;
        }
    }
    out
}

/// Outcome of checking a nested certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateCheck {
    pub problems: Vec<String>,
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

pub fn verify_certificate(g: &Graph, cert: &NestedCertificate, e: &Embedding) -> CertificateCheck {
    let mut problems = Vec::new();
    if e.graph() != g {
        problems.push("embedding is over a different graph".into());
        return CertificateCheck { problems };
    }
    if require_planar(e).is_err() {
        problems.push("embedding is not planar".into());
        return CertificateCheck { problems };
    }
    let n = g.vertex_count();
    let (x, y) = (cert.x, cert.y);
    if x >= n || y >= n || x == y {
        problems.push("terminals must be two distinct vertices".into());
        return CertificateCheck { problems };
    }
    let faces = e.faces();
    let mut owner = vec![usize::MAX; n];
    for (i, c) in cert.cycles.iter().enumerate() {
        if c.iter().any(|&v| v >= n) {
            problems.push(format!("cycle {} has a vertex out of range", i + 1));
            continue;
        }
        let mut distinct = c.clone();
        distinct.sort();
        distinct.dedup();
        if c.len() < 2 || distinct.len() != c.len() || cycle_edge_mask(g, c).is_none() {
            problems.push(format!("cycle {} is not a cycle of the graph", i + 1));
            continue;
        }
        if c.contains(&x) || c.contains(&y) {
            problems.push(format!("cycle {} meets a terminal", i + 1));
            continue;
        }
        for &v in c {
            if owner[v] != usize::MAX {
                problems.push(format!("cycles {} and {} share vertex {}", owner[v] + 1, i + 1, v + 1));
            }
            owner[v] = i;
        }
        if !separates(e, &faces, c, x, y) {
            problems.push(format!("cycle {} does not separate x from y", i + 1));
        }
        let mut removed = vec![false; n];
        for &v in c {
            removed[v] = true;
        }
        if connected_avoiding(g, &removed, x, y) {
            problems.push(format!("x and y stay connected after deleting cycle {}", i + 1));
        }
    }
    if problems.is_empty() {
        for i in 1..cert.cycles.len() {
            let outer = &cert.cycles[i];
            let mask = cycle_edge_mask(g, outer).expect("checked above");
            let sides = face_sides(e, &faces, &mask);
            let xs = vertex_side(e, &faces, &sides, x);
            if cert.cycles[i - 1].iter().any(|&v| vertex_side(e, &faces, &sides, v) != xs) {
                problems.push(format!("cycle {} is not inside cycle {}", i, i + 1));
            }
        }
    }
    CertificateCheck { problems }
}

fn connected_avoiding(g: &Graph, removed: &[bool], x: Vertex, y: Vertex) -> bool {
    let mut seen = removed.to_vec();
    let mut stack = vec![x];
    seen[x] = true;
    while let Some(u) = stack.pop() {
        if u == y {
            return true;
        }
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}
