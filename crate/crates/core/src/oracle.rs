//! Exhaustive rainbow connection numbers for tiny graphs, plus the
//! bounds report that combines diameter, closed-form bounds and
//! constructions.
//!
//! `exact_rc` tries `k = max(diameter, 1), k+1, ..` and enumerates the
//! colorings with exactly `k` colors as restricted-growth strings over the
//! edge list, which visits each partition of the edges into color classes
//! once. Colorings with fewer colors were already refuted at smaller `k`.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{build_cayley, LabeledGraph};
use crate::circulant::{build_circulant, formula_lower_bound, level_coloring_formula, CirculantSpec};
use crate::coloring::{color_count_upper_bound, EdgeColoring};
use crate::error::{Error, Result};
use crate::group::{GeneratorSet, GroupSpec};
use crate::verify::{Mode, SmallVerifier, MAX_COLORS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_edges: usize,
    pub max_colors: u32,
    pub max_states: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self { max_edges: 16, max_colors: 4, max_states: 100_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Exact {
        value: u32,
        witness: EdgeColoring,
    },
    /// Caps were hit; the true value lies in `[lower, upper]`.
    Bounded {
        lower: u32,
        upper: u32,
    },
}

impl OracleOutcome {
    pub fn exact(&self) -> Option<u32> {
        match self {
            Self::Exact { value, .. } => Some(*value),
            Self::Bounded { .. } => None,
        }
    }
}

/// Depth at which the restricted-growth tree is split into parallel jobs.
const SPLIT_DEPTH: usize = 6;

/// Exact `rc(G)` (`Mode::Rainbow`) or `src(G)` (`Mode::Strong`).
///
/// `upper_hint` is a known valid color count (e.g. from a construction) used
/// as the upper end of the interval when caps are hit.
pub fn exact_rc(graph: &LabeledGraph, mode: Mode, caps: OracleCaps, upper_hint: Option<u32>) -> Result<OracleOutcome> {
    let m = graph.edge_count();
    let verifier = SmallVerifier::new(graph);
    let diameter = verifier.diameter().ok_or(Error::Disconnected)?;
    if graph.n_vertices() <= 1 {
        return Ok(OracleOutcome::Exact { value: 0, witness: EdgeColoring::uniform(graph) });
    }
    // All edges distinct is always a strong rainbow coloring.
    let upper = upper_hint.map_or(m as u32, |h| h.min(m as u32));
    if m > caps.max_edges {
        return Ok(OracleOutcome::Bounded { lower: diameter, upper });
    }
    let states = AtomicU64::new(0);
    let max_k = caps.max_colors.min(m as u32).min(MAX_COLORS as u32);
    let mut refuted_below = diameter.max(1);
    for k in diameter.max(1)..=max_k {
        match search_k(graph, mode, k, caps.max_states, &states) {
            Search::Found(colors) => {
                let witness = EdgeColoring::from_ids(graph, colors)?;
                return Ok(OracleOutcome::Exact { value: k, witness });
            }
            Search::Refuted => refuted_below = k + 1,
            Search::Aborted => break,
        }
    }
    Ok(OracleOutcome::Bounded { lower: refuted_below.min(upper), upper })
}

enum Search {
    Found(Vec<u32>),
    Refuted,
    Aborted,
}

fn search_k(graph: &LabeledGraph, mode: Mode, k: u32, max_states: u64, states: &AtomicU64) -> Search {
    let m = graph.edge_count();
    let split = SPLIT_DEPTH.min(m);
    let mut prefixes = Vec::new();
    rgs_prefixes(&mut vec![0; split], 0, 0, k, m, &mut prefixes);
    let aborted = std::sync::atomic::AtomicBool::new(false);
    let found = prefixes.par_iter().find_map_first(|prefix| {
        let mut verifier = SmallVerifier::new(graph);
        let mut colors = vec![0u32; m];
        colors[..split].copy_from_slice(prefix);
        let used = prefix.iter().max().map_or(0, |&c| c + 1);
        let hit = extend(&mut verifier, &mut colors, split, used, k, mode, max_states, states, &aborted);
        states.fetch_add(verifier.states, Ordering::Relaxed);
        hit.then_some(colors)
    });
    match found {
        Some(colors) => Search::Found(colors),
        None if aborted.load(Ordering::Relaxed) => Search::Aborted,
        None => Search::Refuted,
    }
}

/// All restricted-growth prefixes of length `prefix.len()` that can still be
/// completed to exactly `k` blocks over `total` positions.
fn rgs_prefixes(prefix: &mut Vec<u32>, pos: usize, used: u32, k: u32, total: usize, out: &mut Vec<Vec<u32>>) {
    if pos == prefix.len() {
        out.push(prefix.clone());
        return;
    }
    for c in 0..(used + 1).min(k) {
        let used_next = used.max(c + 1);
        if (total - pos - 1) < (k - used_next) as usize {
            continue;
        }
        prefix[pos] = c;
        rgs_prefixes(prefix, pos + 1, used_next, k, total, out);
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    verifier: &mut SmallVerifier<'_>,
    colors: &mut [u32],
    pos: usize,
    used: u32,
    k: u32,
    mode: Mode,
    max_states: u64,
    states: &AtomicU64,
    aborted: &std::sync::atomic::AtomicBool,
) -> bool {
    if pos == colors.len() {
        if used != k {
            return false;
        }
        if aborted.load(Ordering::Relaxed) {
            return false;
        }
        let ok = verifier.check(colors, k, mode);
        let total = states.fetch_add(verifier.states, Ordering::Relaxed) + verifier.states;
        verifier.states = 0;
        if total > max_states {
            aborted.store(true, Ordering::Relaxed);
        }
        return ok;
    }
    let remaining = colors.len() - pos - 1;
    for c in 0..(used + 1).min(k) {
        let used_next = used.max(c + 1);
        if remaining < (k - used_next) as usize {
            continue;
        }
        colors[pos] = c;
        if extend(verifier, colors, pos + 1, used_next, k, mode, max_states, states, aborted) {
            return true;
        }
        if aborted.load(Ordering::Relaxed) {
            return false;
        }
    }
    false
}

/// An instance the bounds report understands.
#[derive(Debug, Clone)]
pub enum Instance {
    /// `C(Γ, S)` for an inverse-closed `S`.
    Cayley {
        group: GroupSpec,
        generators: GeneratorSet,
    },
    Circulant(CirculantSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub diameter: u32,
    /// Closed-form lower bound when one applies: `Σ ⌊|a|/2⌋` for an
    /// independent minimal generating set, the level-wise bound for circulants.
    pub formula_lower: Option<u64>,
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
    /// Oracle value when it was run and finished within caps.
    pub oracle: Option<u32>,
}

/// Lower bound `max(diameter, formula)`, upper bound from the construction.
/// With `oracle_caps` the exhaustive search is also run (rainbow mode).
pub fn bounds_report(instance: &Instance, oracle_caps: Option<OracleCaps>) -> Result<BoundsReport> {
    let (graph, formula_lower, upper) = match instance {
        Instance::Cayley { group, generators } => {
            let cayley = build_cayley(group, generators)?;
            let upper = color_count_upper_bound(group, generators)?.count;
            let reps = GeneratorSet::new(group, generators.pair_representatives(group))?;
            let formula = crate::cayley::theoretical_diameter(group, &reps).ok();
            (cayley.into_graph(), formula, upper)
        }
        Instance::Circulant(spec) => {
            let graph = build_circulant(spec)?.into_graph();
            (graph, Some(formula_lower_bound(spec)), level_coloring_formula(spec))
        }
    };
    let diameter = graph.diameter()?;
    let lower = formula_lower.unwrap_or(0).max(diameter as u64);
    let oracle = match oracle_caps {
        Some(caps) => exact_rc(&graph, Mode::Rainbow, caps, Some(upper as u32))?.exact(),
        None => None,
    };
    let exact = lower == upper || oracle.is_some();
    Ok(BoundsReport { diameter, formula_lower, lower, upper, exact, oracle })
}
