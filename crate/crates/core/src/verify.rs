//! Exact rainbow and strong-rainbow verification.
//!
//! Searches run over states `(vertex, set of colors used so far)`, expanding
//! only edges whose color is still unused. A rainbow walk can always be
//! shortened to a rainbow path, so reachability of `(t, _)` from `(s, ∅)`
//! decides whether a rainbow `s-t` path exists. For the strong variant every
//! move must increase the BFS distance from the source by one, which confines
//! the search to geodesics.

use std::collections::{HashSet, VecDeque};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::{LabeledGraph, UNREACHABLE};
use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};

/// Colors are tracked in a `u32` mask.
pub const MAX_COLORS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rainbow,
    Strong,
}

/// Which sources the all-pairs check starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairScope {
    All,
    /// For colorings of vertex-transitive graphs: source 0 plus
    /// `spot_checks` sources sampled with `seed`. This is a spot check of the
    /// coloring, not a proof, because colorings need not be translation invariant.
    VertexTransitive {
        spot_checks: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub failing_pair: Option<(u32, u32)>,
    pub states_explored: u64,
}

fn check_inputs(graph: &LabeledGraph, coloring: &EdgeColoring) -> Result<()> {
    if coloring.num_colors() > MAX_COLORS {
        return Err(Error::ColorCap { got: coloring.num_colors(), cap: MAX_COLORS });
    }
    if coloring.colors().len() != graph.edge_count() {
        return Err(Error::ColoringMismatch(format!(
            "{} colors for {} edges",
            coloring.colors().len(),
            graph.edge_count()
        )));
    }
    Ok(())
}

fn check_vertex(graph: &LabeledGraph, v: u32) -> Result<()> {
    if v as usize >= graph.n_vertices() {
        return Err(Error::VertexOutOfRange { vertex: v as u64, n: graph.n_vertices() as u64 });
    }
    Ok(())
}

#[inline]
fn key(v: u32, mask: u32) -> u64 {
    (v as u64) << 32 | mask as u64
}

/// Outcome of one search from a source.
struct SourceSearch {
    reached: Vec<bool>,
    states: u64,
}

/// Breadth-first search over `(vertex, used colors)` from `source`. With
/// `geodesic` set only distance-increasing moves are taken. Stops once
/// `stop_at` (or every vertex) is reached.
fn search_from(
    graph: &LabeledGraph,
    coloring: &EdgeColoring,
    source: u32,
    geodesic: bool,
    stop_at: Option<u32>,
) -> SourceSearch {
    let n = graph.n_vertices();
    let dist = if geodesic { graph.bfs_distances(source) } else { Vec::new() };
    let mut reached = vec![false; n];
    reached[source as usize] = true;
    let mut remaining = n - 1;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut queue = VecDeque::from([(source, 0u32)]);
    seen.insert(key(source, 0));
    let mut states = 1u64;
    let done = |reached: &[bool], remaining: usize| match stop_at {
        Some(t) => reached[t as usize],
        None => remaining == 0,
    };
    if done(&reached, remaining) {
        return SourceSearch { reached, states };
    }
    while let Some((x, mask)) = queue.pop_front() {
        for &(y, e) in graph.neighbors(x) {
            if geodesic && dist[y as usize] != dist[x as usize] + 1 {
                continue;
            }
            let bit = 1u32 << coloring.color_of(e as usize);
            if mask & bit != 0 {
                continue;
            }
            let next = mask | bit;
            if !seen.insert(key(y, next)) {
                continue;
            }
            states += 1;
            if !reached[y as usize] {
                reached[y as usize] = true;
                remaining -= 1;
                if done(&reached, remaining) {
                    return SourceSearch { reached, states };
                }
            }
            queue.push_back((y, next));
        }
    }
    SourceSearch { reached, states }
}

/// True iff some `u-v` path has pairwise distinct edge colors.
pub fn rainbow_path_exists(graph: &LabeledGraph, coloring: &EdgeColoring, u: u32, v: u32) -> Result<bool> {
    check_inputs(graph, coloring)?;
    check_vertex(graph, u)?;
    check_vertex(graph, v)?;
    Ok(search_from(graph, coloring, u, false, Some(v)).reached[v as usize])
}

/// True iff some shortest `u-v` path has pairwise distinct edge colors.
pub fn rainbow_geodesic_exists(graph: &LabeledGraph, coloring: &EdgeColoring, u: u32, v: u32) -> Result<bool> {
    check_inputs(graph, coloring)?;
    check_vertex(graph, u)?;
    check_vertex(graph, v)?;
    Ok(search_from(graph, coloring, u, true, Some(v)).reached[v as usize])
}

/// Checks every pair over all sources.
pub fn is_rainbow_connected(graph: &LabeledGraph, coloring: &EdgeColoring) -> Result<VerifyReport> {
    verify(graph, coloring, Mode::Rainbow, PairScope::All)
}

pub fn is_strong_rainbow_connected(graph: &LabeledGraph, coloring: &EdgeColoring) -> Result<VerifyReport> {
    verify(graph, coloring, Mode::Strong, PairScope::All)
}

/// Runs the searches from every source in `scope` (in parallel) and reports
/// the lexicographically first failing pair `(min, max)`.
pub fn verify(graph: &LabeledGraph, coloring: &EdgeColoring, mode: Mode, scope: PairScope) -> Result<VerifyReport> {
    check_inputs(graph, coloring)?;
    let n = graph.n_vertices();
    let sources: Vec<u32> = match scope {
        PairScope::All => (0..n as u32).collect(),
        PairScope::VertexTransitive { spot_checks, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s: Vec<u32> = if n > 1 {
                sample(&mut rng, n - 1, spot_checks.min(n - 1)).into_iter().map(|i| i as u32 + 1).collect()
            } else {
                Vec::new()
            };
            s.push(0);
            s.sort_unstable();
            s
        }
    };
    let geodesic = mode == Mode::Strong;
    let results: Vec<(Option<(u32, u32)>, u64)> = sources
        .par_iter()
        .map(|&s| {
            let found = search_from(graph, coloring, s, geodesic, None);
            let fail = found.reached.iter().position(|&r| !r).map(|t| (s.min(t as u32), s.max(t as u32)));
            (fail, found.states)
        })
        .collect();
    let states_explored = results.iter().map(|r| r.1).sum();
    let failing_pair = results.iter().filter_map(|r| r.0).min();
    Ok(VerifyReport { ok: failing_pair.is_none(), failing_pair, states_explored })
}

/// Reusable all-pairs checker for tiny graphs, used by the exhaustive search.
/// Visited states live in a dense bitset of `n · 2^k` bits.
pub(crate) struct SmallVerifier<'g> {
    graph: &'g LabeledGraph,
    dist: Vec<Vec<u32>>,
    visited: Vec<u64>,
    stack: Vec<(u32, u32)>,
    reached: Vec<bool>,
    pub(crate) states: u64,
}

impl<'g> SmallVerifier<'g> {
    pub(crate) fn new(graph: &'g LabeledGraph) -> Self {
        let n = graph.n_vertices();
        let dist = (0..n as u32).map(|s| graph.bfs_distances(s)).collect();
        Self { graph, dist, visited: Vec::new(), stack: Vec::new(), reached: vec![false; n], states: 0 }
    }

    /// All-pairs check of `colors` with `k` colors; stops at the first failing source.
    pub(crate) fn check(&mut self, colors: &[u32], k: u32, mode: Mode) -> bool {
        let n = self.graph.n_vertices();
        let words = (n << k).div_ceil(64);
        // Rainbow connectivity is symmetric, so sources 0..n-1 cover every pair
        // once targets above the source are all reached.
        for s in 0..n as u32 {
            self.visited.clear();
            self.visited.resize(words, 0);
            self.reached.iter_mut().for_each(|r| *r = false);
            self.reached[s as usize] = true;
            let mut remaining = n - 1 - s as usize;
            for t in 0..s as usize {
                self.reached[t] = true;
            }
            if remaining == 0 {
                break;
            }
            self.stack.clear();
            self.stack.push((s, 0));
            let idx = (s as usize) << k;
            self.visited[idx / 64] |= 1 << (idx % 64);
            let dist = &self.dist[s as usize];
            'search: while let Some((x, mask)) = self.stack.pop() {
                for &(y, e) in self.graph.neighbors(x) {
                    if mode == Mode::Strong && dist[y as usize] != dist[x as usize] + 1 {
                        continue;
                    }
                    let bit = 1u32 << colors[e as usize];
                    if mask & bit != 0 {
                        continue;
                    }
                    let next = mask | bit;
                    let idx = ((y as usize) << k) | next as usize;
                    if self.visited[idx / 64] >> (idx % 64) & 1 == 1 {
                        continue;
                    }
                    self.visited[idx / 64] |= 1 << (idx % 64);
                    self.states += 1;
                    if !self.reached[y as usize] {
                        self.reached[y as usize] = true;
                        remaining -= 1;
                        if remaining == 0 {
                            break 'search;
                        }
                    }
                    self.stack.push((y, next));
                }
            }
            if remaining > 0 {
                return false;
            }
        }
        true
    }

    pub(crate) fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for row in &self.dist {
            for &d in row {
                if d == UNREACHABLE {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }
}
