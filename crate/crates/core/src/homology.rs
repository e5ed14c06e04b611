//! Edge-space homology over GF(2): which unions of disjoint cycles are sums
//! of face boundaries.

use std::fmt::Write as _;

use thiserror::Error;

use crate::embedding::Embedding;
use crate::gf2::{BitVec, XorBasis};
use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleSetError {
    #[error("cycle {index} is not a cycle of the graph")]
    InvalidCycle { index: usize },
    #[error("cycles {first} and {second} share a vertex")]
    NotDisjoint { first: usize, second: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Pairwise vertex-disjoint cycles with their edge vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    cycles: Vec<Vec<Vertex>>,
    edges: Vec<Vec<EdgeId>>,
}

impl CycleSet {
    pub fn new(g: &Graph, cycles: Vec<Vec<Vertex>>) -> Result<Self, CycleSetError> {
        let mut owner = vec![usize::MAX; g.vertex_count()];
        let mut edges = Vec::with_capacity(cycles.len());
        for (i, c) in cycles.iter().enumerate() {
            let es = cycle_edges(g, c).ok_or(CycleSetError::InvalidCycle { index: i + 1 })?;
            for &v in c {
                if owner[v] != usize::MAX {
                    return Err(CycleSetError::NotDisjoint { first: owner[v] + 1, second: i + 1 });
                }
                owner[v] = i;
            }
            edges.push(es);
        }
        Ok(CycleSet { cycles, edges })
    }

    pub fn cycles(&self) -> &[Vec<Vertex>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn edge_vector(&self, index: usize, m: usize) -> BitVec {
        BitVec::from_indices(m, self.edges[index].iter().copied())
    }

    pub fn union_vector(&self, m: usize) -> BitVec {
        BitVec::from_indices(m, self.edges.iter().flatten().copied())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cycles {
            out.push('c');
            for v in c {
                let _ = write!(out, " {}", v + 1);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(g: &Graph, text: &str) -> Result<Self, CycleSetError> {
        let mut cycles = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            cycles.push(parse_cycle_line(t, g.vertex_count()).map_err(|e| match e {
                CycleSetError::Malformed { message, .. } => CycleSetError::Malformed { line: i + 1, message },
                other => other,
            })?);
        }
        CycleSet::new(g, cycles)
    }
}

/// Parses `c <v1> ... <vk>` into 0-based vertices.
pub fn parse_cycle_line(line: &str, n: usize) -> Result<Vec<Vertex>, CycleSetError> {
    let bad = |message: String| CycleSetError::Malformed { line: 0, message };
    let mut tok = line.split_whitespace();
    if tok.next() != Some("c") {
        return Err(bad(format!("expected cycle line, got `{line}`")));
    }
    tok.map(|t| match t.parse::<usize>() {
        Ok(v) if v >= 1 && v <= n => Ok(v - 1),
        _ => Err(bad(format!("bad vertex `{t}`"))),
    })
    .collect()
}

/// Edge ids of a closed walk with distinct vertices, or `None` if it is not
/// a cycle of `g`. Parallel edges are taken lowest id first, without reuse.
pub fn cycle_edges(g: &Graph, cycle: &[Vertex]) -> Option<Vec<EdgeId>> {
    let k = cycle.len();
    if k < 2 || cycle.iter().any(|&v| v >= g.vertex_count()) {
        return None;
    }
    let mut seen = vec![false; g.vertex_count()];
    if cycle.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
        return None;
    }
    let mut used = vec![false; g.edge_count()];
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        let e = g.darts_at(u).iter().filter(|&&d| g.head(d) == v).map(|d| d.edge()).find(|&e| !used[e])?;
        used[e] = true;
        out.push(e);
    }
    Some(out)
}

/// Span of the face boundary vectors of one embedding.
#[derive(Clone, Debug)]
pub struct FaceSpan {
    basis: XorBasis,
    m: usize,
    faces: usize,
}

impl FaceSpan {
    pub fn new(e: &Embedding) -> Self {
        let m = e.graph().edge_count();
        let walks = e.trace_faces();
        let mut basis = XorBasis::new();
        for w in &walks {
            basis.insert(&w.edge_vector(m));
        }
        FaceSpan { basis, m, faces: walks.len() }
    }

    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }

    pub fn face_count(&self) -> usize {
        self.faces
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.basis.contains(v)
    }

    /// The union of the set is a sum of faces.
    pub fn is_surface_separating(&self, cs: &CycleSet) -> bool {
        self.contains(&cs.union_vector(self.m))
    }

    /// No non-empty subfamily is surface-separating. Disjoint cycles have
    /// disjoint edge sets, so subfamily unions are XORs and the condition is
    /// linear independence modulo the face span.
    pub fn homologically_independent(&self, cs: &CycleSet) -> bool {
        let mut basis = self.basis.clone();
        (0..cs.len()).all(|i| basis.insert(&cs.edge_vector(i, self.m)))
    }
}

pub fn is_surface_separating(e: &Embedding, cs: &CycleSet) -> bool {
    FaceSpan::new(e).is_surface_separating(cs)
}

pub fn homologically_independent(e: &Embedding, cs: &CycleSet) -> bool {
    FaceSpan::new(e).homologically_independent(cs)
}

/// Dimension of the cycle space, `m - n + c`.
pub fn cycle_space_dimension(g: &Graph) -> usize {
    g.edge_count() + g.components_without(&vec![false; g.vertex_count()]) - g.vertex_count()
}
