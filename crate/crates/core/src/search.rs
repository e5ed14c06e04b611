//! Exhaustive and branch-and-bound search over orientable rotation systems.
//!
//! Vertices receive rotations one at a time. Once a vertex is fixed, the
//! face-tracing successor of every dart entering it is known, so the darts
//! link up into open chains and closed faces. Two prunings apply:
//!
//! * strong mode: a chain that meets the same vertex twice can never close
//!   into a cycle;
//! * genus cap: every face still to close contains at least one open chain
//!   and at least `L` darts (`L` = girth), so the final face count is at
//!   most `closed + sum(min(len, L)) / L` over open chains.
//!
//! Targets are tried from the Euler lower bound upwards; the first target
//! reached gives the minimum, and the first witness in search order is
//! returned. Rotations of the first vertex of degree at least 3 are
//! restricted to one of each mirror pair, since reflecting a whole rotation
//! system preserves both genus and strongness.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds;
use crate::embedding::Embedding;
use crate::graph::{Dart, Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("strong search supports at most 128 vertices, graph has {n}")]
    TooLarge { n: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    MinGenus,
    StrongGenus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "genus")]
pub enum SearchValue {
    Genus(u32),
    /// Nothing at or below the cap.
    AboveCap,
    /// No strong orientable embedding at any genus.
    Infinite,
    /// The timeout tripped before the question was settled.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub cap: Option<u32>,
    pub threads: usize,
    pub timeout: Option<Duration>,
    pub pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { cap: None, threads: 1, timeout: None, pruning: true }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub quantity: Quantity,
    pub value: SearchValue,
    /// Every genus below this was excluded exhaustively.
    pub lower_bound: u32,
    pub witness: Option<Embedding>,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

/// Iterator over all orientable rotation systems. The lowest dart at each
/// vertex is fixed first; the rest run through permutations in
/// lexicographic order, the last vertex varying fastest.
pub struct RotationSystems {
    graph: Arc<Graph>,
    current: Vec<Vec<Dart>>,
    done: bool,
}

pub fn enumerate_rotations(g: &Arc<Graph>) -> RotationSystems {
    let current = (0..g.vertex_count())
        .map(|v| {
            let mut d = g.darts_at(v).to_vec();
            d.sort();
            d
        })
        .collect();
    RotationSystems { graph: g.clone(), current, done: false }
}

/// `prod (deg(v) - 1)!`
pub fn rotation_system_count(g: &Graph) -> u128 {
    (0..g.vertex_count()).map(|v| (1..g.degree(v).max(1) as u128).product::<u128>()).product()
}

impl Iterator for RotationSystems {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        if self.done {
            return None;
        }
        let out = Embedding::orientable(self.graph.clone(), self.current.clone()).expect("valid rotation system");
        self.done = true;
        for v in (0..self.current.len()).rev() {
            let rot = &mut self.current[v];
            if rot.len() > 2 && next_permutation(&mut rot[1..]) {
                self.done = false;
                break;
            }
            if rot.len() > 2 {
                rot[1..].sort();
            }
        }
        Some(out)
    }
}

fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Cyclic orders at one vertex: the lowest dart first, the rest permuted.
fn cyclic_orders(darts: &[Dart], mirror_quotient: bool) -> Vec<Vec<Dart>> {
    let mut base = darts.to_vec();
    base.sort();
    if base.len() <= 2 {
        return vec![base];
    }
    let mut out = Vec::new();
    loop {
        if !mirror_quotient || base[1] < base[base.len() - 1] {
            out.push(base.clone());
        }
        if !next_permutation(&mut base[1..]) {
            break;
        }
    }
    out
}

/// Order in which vertices are fixed: repeatedly the unplaced vertex with
/// the most placed neighbours (lowest index on ties), starting from vertex 0.
fn assignment_order(g: &Graph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (weight[v], std::cmp::Reverse(v))).expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            weight[w] += 1;
        }
    }
    order
}

struct Problem<'a> {
    g: &'a Graph,
    order: Vec<Vertex>,
    /// Per order position: candidate rotations as (dart, successor) lists.
    choices: Vec<Vec<Vec<(u32, u32)>>>,
    strong: bool,
    min_face: usize,
    faces_needed: usize,
    pruning: bool,
}

#[derive(Clone)]
struct State {
    succ: Vec<u32>,
    start: Vec<u32>,
    end: Vec<u32>,
    len: Vec<u32>,
    mask: Vec<u128>,
    closed: usize,
    sum_min: usize,
    conflicts: u32,
    trail: Vec<Undo>,
}

#[derive(Clone, Copy)]
enum Undo {
    Start(u32, u32),
    End(u32, u32),
    Len(u32, u32),
    Mask(u32, u128),
    Scalars(usize, usize, u32),
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    deadline: Option<Instant>,
}

impl Shared {
    fn check(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }
}

impl<'a> Problem<'a> {
    fn new(g: &'a Graph, strong: bool, target_genus: u32, pruning: bool) -> Self {
        let order = assignment_order(g);
        let quotient_at = order.iter().position(|&v| g.degree(v) >= 3);
        let choices = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                cyclic_orders(g.darts_at(v), Some(i) == quotient_at)
                    .into_iter()
                    .map(|rot| (0..rot.len()).map(|k| (rot[k].0, rot[(k + 1) % rot.len()].0)).collect())
                    .collect()
            })
            .collect();
        let min_face = if g.min_degree() >= 2 { g.girth().finite().unwrap_or(1) } else { 1 };
        let (n, m) = (g.vertex_count() as i64, g.edge_count() as i64);
        let faces_needed = (m - n + 2 - 2 * target_genus as i64).max(0) as usize;
        Problem { g, order, choices, strong, min_face, faces_needed, pruning }
    }

    fn initial_state(&self) -> State {
        let nd = self.g.dart_count();
        let min1 = 1.min(self.min_face);
        State {
            succ: vec![u32::MAX; nd],
            start: (0..nd as u32).collect(),
            end: (0..nd as u32).collect(),
            len: vec![1; nd],
            mask: (0..nd).map(|d| 1u128 << (self.g.origin(Dart::new(d)) % 128)).collect(),
            closed: 0,
            sum_min: nd * min1,
            conflicts: 0,
            trail: Vec::new(),
        }
    }

    /// Links the face-tracing successor `d_in -> d_out`.
    #[inline]
    fn link(&self, st: &mut State, d_in: u32, d_out: u32) {
        let l = self.min_face as u32;
        let s_a = st.start[d_in as usize];
        if s_a == d_out {
            st.closed += 1;
            st.sum_min -= st.len[s_a as usize].min(l) as usize;
            return;
        }
        let e_b = st.end[d_out as usize];
        let (la, lb) = (st.len[s_a as usize], st.len[d_out as usize]);
        if self.strong && st.mask[s_a as usize] & st.mask[d_out as usize] != 0 {
            st.conflicts += 1;
        }
        st.sum_min = st.sum_min + (la + lb).min(l) as usize - la.min(l) as usize - lb.min(l) as usize;
        st.trail.push(Undo::End(s_a, st.end[s_a as usize]));
        st.end[s_a as usize] = e_b;
        st.trail.push(Undo::Start(e_b, st.start[e_b as usize]));
        st.start[e_b as usize] = s_a;
        st.trail.push(Undo::Len(s_a, la));
        st.len[s_a as usize] = la + lb;
        if self.strong {
            st.trail.push(Undo::Mask(s_a, st.mask[s_a as usize]));
            st.mask[s_a as usize] |= st.mask[d_out as usize];
        }
    }

    fn apply(&self, st: &mut State, choice: &[(u32, u32)]) {
        st.trail.push(Undo::Scalars(st.closed, st.sum_min, st.conflicts));
        for &(d, nxt) in choice {
            st.succ[d as usize] = nxt;
        }
        for &(d, nxt) in choice {
            // the dart entering this vertex along d continues with nxt
            self.link(st, d ^ 1, nxt);
        }
    }

    fn undo_to(&self, st: &mut State, mark: usize) {
        while st.trail.len() > mark {
            match st.trail.pop().unwrap() {
                Undo::Start(i, v) => st.start[i as usize] = v,
                Undo::End(i, v) => st.end[i as usize] = v,
                Undo::Len(i, v) => st.len[i as usize] = v,
                Undo::Mask(i, v) => st.mask[i as usize] = v,
                Undo::Scalars(c, s, k) => {
                    st.closed = c;
                    st.sum_min = s;
                    st.conflicts = k;
                }
            }
        }
    }

    #[inline]
    fn viable(&self, st: &State) -> bool {
        if !self.pruning {
            return true;
        }
        if st.conflicts > 0 {
            return false;
        }
        st.closed + st.sum_min / self.min_face >= self.faces_needed
    }

    fn leaf_ok(&self, st: &State) -> bool {
        st.conflicts == 0 && st.closed >= self.faces_needed
    }

    /// Depth-first search below `depth`; on success `st.succ` holds a witness.
    fn dfs(&self, st: &mut State, depth: usize, shared: &Shared, local: &mut u64) -> bool {
        if depth == self.order.len() {
            return self.leaf_ok(st);
        }
        for choice in &self.choices[depth] {
            *local += 1;
            if *local & 0xfff == 0 {
                shared.nodes.fetch_add(0x1000, Ordering::Relaxed);
                if !shared.check() {
                    return false;
                }
            }
            let mark = st.trail.len();
            self.apply(st, choice);
            if self.viable(st) && self.dfs(st, depth + 1, shared, local) {
                return true;
            }
            self.undo_to(st, mark);
        }
        false
    }

    /// Surviving prefixes of length `depth`, in search order.
    fn prefixes(&self, depth: usize, shared: &Shared) -> Vec<Vec<usize>> {
        fn rec(p: &Problem, st: &mut State, at: usize, depth: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, shared: &Shared) {
            if at == depth {
                out.push(path.clone());
                return;
            }
            for (i, choice) in p.choices[at].iter().enumerate() {
                shared.nodes.fetch_add(1, Ordering::Relaxed);
                let mark = st.trail.len();
                p.apply(st, choice);
                if p.viable(st) {
                    path.push(i);
                    rec(p, st, at + 1, depth, path, out, shared);
                    path.pop();
                }
                p.undo_to(st, mark);
            }
        }
        let mut st = self.initial_state();
        let mut out = Vec::new();
        rec(self, &mut st, 0, depth, &mut Vec::new(), &mut out, shared);
        out
    }

    /// First rotation system (in search order) meeting the target, as a
    /// successor table; `None` when none exists or the search was stopped.
    fn solve(&self, threads: usize, shared: &Shared) -> Option<Vec<u32>> {
        let run_from = |prefix: &[usize]| -> Option<Vec<u32>> {
            let mut st = self.initial_state();
            for (at, &i) in prefix.iter().enumerate() {
                self.apply(&mut st, &self.choices[at][i]);
            }
            st.trail.clear();
            let mut local = 0u64;
            let found = self.dfs(&mut st, prefix.len(), shared, &mut local);
            shared.nodes.fetch_add(local & 0xfff, Ordering::Relaxed);
            found.then(|| st.succ.clone())
        };
        if threads <= 1 {
            return run_from(&[]);
        }
        let mut depth = 0;
        let mut width: usize = 1;
        while depth < self.order.len() && width < 64 * threads {
            width = width.saturating_mul(self.choices[depth].len());
            depth += 1;
        }
        let prefixes = self.prefixes(depth, shared);
        if depth == self.order.len() {
            let st_ok = prefixes.into_iter().find_map(|p| {
                let mut st = self.initial_state();
                for (at, &i) in p.iter().enumerate() {
                    self.apply(&mut st, &self.choices[at][i]);
                }
                self.leaf_ok(&st).then(|| st.succ.clone())
            });
            return st_ok;
        }
        prefixes.par_iter().find_map_first(|p| run_from(p))
    }
}

fn run_search(g: &Arc<Graph>, config: &SearchConfig, quantity: Quantity) -> Result<SearchResult, SearchError> {
    if !g.is_connected() {
        return Err(SearchError::NotConnected);
    }
    let strong = quantity == Quantity::StrongGenus;
    if strong && g.vertex_count() > 128 {
        return Err(SearchError::TooLarge { n: g.vertex_count() });
    }
    let (n, m) = (g.vertex_count() as u64, g.edge_count() as u64);
    let ceiling = bounds::max_genus_ub(n, m) as u32;
    let start = match g.girth().finite() {
        Some(girth) if g.min_degree() >= 2 => bounds::euler_girth_bound(n, m, girth as u64).orientable_lb as u32,
        _ => 0,
    };
    let top = config.cap.map_or(ceiling, |c| c.min(ceiling));
    let shared = Shared { nodes: AtomicU64::new(0), stop: AtomicBool::new(false), deadline: config.timeout.map(|t| Instant::now() + t) };
    // single-threaded runs stay on the caller's thread (and work without threads at all)
    let pool = if config.threads > 1 {
        Some(rayon::ThreadPoolBuilder::new().num_threads(config.threads).build().map_err(|e| SearchError::ThreadPool(e.to_string()))?)
    } else {
        None
    };

    let mut lower = start;
    for target in start..=top {
        let problem = Problem::new(g, strong, target, config.pruning);
        let found = match &pool {
            Some(pool) => pool.install(|| problem.solve(config.threads, &shared)),
            None => problem.solve(1, &shared),
        };
        if shared.stop.load(Ordering::Relaxed) && found.is_none() {
            return Ok(SearchResult { quantity, value: SearchValue::Unknown, lower_bound: lower, witness: None, nodes_explored: shared.nodes.load(Ordering::Relaxed), exhaustive: false });
        }
        if let Some(succ) = found {
            let succ: Vec<Dart> = succ.into_iter().map(Dart).collect();
            let witness = Embedding::from_successors(g.clone(), &succ).expect("search assigns every vertex");
            let genus = witness.surface().expect("orientable witness").genus;
            debug_assert_eq!(genus, target);
            return Ok(SearchResult { quantity, value: SearchValue::Genus(genus), lower_bound: genus, witness: Some(witness), nodes_explored: shared.nodes.load(Ordering::Relaxed), exhaustive: true });
        }
        lower = target + 1;
    }
    let value = if top >= ceiling { SearchValue::Infinite } else { SearchValue::AboveCap };
    Ok(SearchResult { quantity, value, lower_bound: lower, witness: None, nodes_explored: shared.nodes.load(Ordering::Relaxed), exhaustive: true })
}

/// Minimum orientable genus, searched up to `config.cap`.
pub fn min_genus(g: &Arc<Graph>, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    run_search(g, config, Quantity::MinGenus)
}

/// Least genus of a strong orientable embedding, searched up to `config.cap`.
pub fn strong_genus(g: &Arc<Graph>, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    run_search(g, config, Quantity::StrongGenus)
}
