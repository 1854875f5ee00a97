//! Edge colorings and the half-cycle construction for Cayley graphs of
//! Abelian groups.
//!
//! For each generator `a_i` of order `b_i ≥ 3` the `a_i`-edges split into
//! `|Γ|/b_i` cycles, one per coset of `⟨a_i⟩`. Walking a cycle from its
//! representative `u` by repeatedly adding `a_i`, the edge at position `p`
//! joins `p·a_i + u` to `(p+1)·a_i + u`. Positions are colored so that any
//! run of at most `⌊b_i/2⌋` consecutive edges is rainbow:
//!
//! * `b_i` even: position `p` gets `(i, p mod b_i/2 + 1)`;
//! * `b_i` odd: positions `p < (b_i-1)/2` get `(i, p+1)`, the middle edge gets
//!   `(i, (b_i+1)/2)` and the rest repeat the first half;
//! * `b_i = 2`: the class is a perfect matching and gets `(i, 1)`.
//!
//! Distinct generators never share colors, so the total is `Σ ⌈b_i/2⌉`.

use std::collections::{BTreeSet, HashMap};

use crate::cayley::{CayleyGraph, LabeledGraph};
use crate::error::{Error, Result};
use crate::group::{GeneratorSet, GroupSpec};

/// Total edge coloring. Color ids are `0..num_colors`, every id is used, and
/// `legend[id]` is the structured `(i, j)` name the construction gave it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<u32>,
    legend: Vec<(u32, u32)>,
}

impl EdgeColoring {
    pub fn new(graph: &LabeledGraph, colors: Vec<u32>, legend: Vec<(u32, u32)>) -> Result<Self> {
        if colors.len() != graph.edge_count() {
            return Err(Error::ColoringMismatch(format!("{} colors for {} edges", colors.len(), graph.edge_count())));
        }
        let mut used = vec![false; legend.len()];
        for &c in &colors {
            match used.get_mut(c as usize) {
                Some(slot) => *slot = true,
                None => return Err(Error::ColoringMismatch(format!("color {c} outside legend of {}", legend.len()))),
            }
        }
        if let Some(unused) = used.iter().position(|&u| !u) {
            return Err(Error::ColoringMismatch(format!("color {unused} is never used")));
        }
        Ok(Self { colors, legend })
    }

    /// Colors edges by arbitrary sortable keys; ids follow the sorted key order.
    pub fn from_keys(graph: &LabeledGraph, keys: &[(u32, u32)]) -> Result<Self> {
        let legend: Vec<(u32, u32)> = keys.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let id: HashMap<(u32, u32), u32> = legend.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let colors = keys.iter().map(|k| id[k]).collect();
        Self::new(graph, colors, legend)
    }

    /// Colors from plain ids with the trivial legend `(0, id)`.
    pub fn from_ids(graph: &LabeledGraph, colors: Vec<u32>) -> Result<Self> {
        let k = colors.iter().max().map_or(0, |&c| c + 1);
        Self::new(graph, colors, (0..k).map(|c| (0, c)).collect())
    }

    pub fn uniform(graph: &LabeledGraph) -> Self {
        let legend = if graph.edge_count() == 0 { Vec::new() } else { vec![(0, 1)] };
        Self { colors: vec![0; graph.edge_count()], legend }
    }

    pub fn color_of(&self, edge: usize) -> u32 {
        self.colors[edge]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        self.legend.len()
    }

    pub fn legend(&self) -> &[(u32, u32)] {
        &self.legend
    }
}

/// The coset cycles of one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    pub label: usize,
    pub order: u64,
    /// Each cycle lists `u, u + a, u + 2a, ..` (length `order`).
    pub cycles: Vec<Vec<u32>>,
}

impl CycleClass {
    /// `(cycle index, position)` of every vertex.
    pub fn positions(&self, n: usize) -> Vec<(u32, u32)> {
        let mut pos = vec![(0, 0); n];
        for (k, cycle) in self.cycles.iter().enumerate() {
            for (p, &v) in cycle.iter().enumerate() {
                pos[v as usize] = (k as u32, p as u32);
            }
        }
        pos
    }
}

/// Cosets of `⟨a_label⟩` traversed along `+a`, representatives taken as the
/// smallest uncovered vertex id (the identity first). For an order-2
/// generator each "cycle" is a matched pair.
pub fn decompose_cycles(graph: &CayleyGraph, label: usize) -> CycleClass {
    let n = graph.graph().n_vertices();
    let order = graph.generator_order(label);
    let mut covered = vec![false; n];
    let mut cycles = Vec::with_capacity(n / order as usize);
    for start in 0..n as u32 {
        if covered[start as usize] {
            continue;
        }
        let mut cycle = Vec::with_capacity(order as usize);
        let mut x = start;
        loop {
            covered[x as usize] = true;
            cycle.push(x);
            x = graph.step(x, label);
            if x == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    CycleClass { label, order, cycles }
}

/// The `j` (1-based) of the color the half-cycle pattern gives position `p`
/// on a cycle of length `len`.
pub fn half_cycle_color(len: u64, p: u64) -> u32 {
    debug_assert!(p < len);
    if len <= 2 {
        return 1;
    }
    if len.is_multiple_of(2) {
        return (p % (len / 2)) as u32 + 1;
    }
    let half = (len - 1) / 2;
    match p.cmp(&half) {
        std::cmp::Ordering::Less => p as u32 + 1,
        std::cmp::Ordering::Equal => half as u32 + 1,
        std::cmp::Ordering::Greater => (p - half) as u32,
    }
}

/// Color key of every edge, computed per generator from its cycle class.
/// `pattern(label, cycle_len, position)` returns the `(i, j)` key.
pub(crate) fn color_by_cycle_position(
    graph: &CayleyGraph,
    mut pattern: impl FnMut(usize, u64, u64) -> (u32, u32),
) -> Vec<(u32, u32)> {
    let n = graph.graph().n_vertices();
    let classes: Vec<_> = (0..graph.generators().len())
        .map(|label| {
            let class = decompose_cycles(graph, label);
            let pos = class.positions(n);
            (class, pos)
        })
        .collect();
    graph
        .graph()
        .edges()
        .iter()
        .map(|e| {
            let label = e.label as usize;
            let (class, pos) = &classes[label];
            // Edge {x, x + a}: find the endpoint the traversal leaves from.
            let from = if graph.step(e.u, label) == e.v { e.u } else { e.v };
            let (_, p) = pos[from as usize];
            pattern(label, class.order, p as u64)
        })
        .collect()
}

/// Half-cycle coloring of `C(Γ, S* ∪ (S*)⁻¹)`. `basis` lists `S*` (one element
/// per inverse pair); color `(i, j)` belongs to the `i`-th element of `basis`.
/// Uses exactly `Σ ⌈|a|/2⌉` colors.
pub fn half_cycle_coloring(graph: &CayleyGraph, basis: &GeneratorSet) -> Result<EdgeColoring> {
    let group = graph.group();
    let reps = basis.pair_representatives(group);
    if !group.generates(&GeneratorSet::new(group, reps.clone())?) {
        return Err(Error::NotGenerating);
    }
    if reps.len() != graph.generators().len() {
        return Err(Error::ColoringMismatch(format!(
            "graph has {} generator pairs, basis has {}",
            graph.generators().len(),
            reps.len()
        )));
    }
    // label -> index in the basis enumeration
    let mut basis_index = vec![0u32; reps.len()];
    for (i, a) in reps.iter().enumerate() {
        let label = graph
            .label_of(a)
            .ok_or_else(|| Error::ColoringMismatch(format!("basis element {a} is not a generator of the graph")))?;
        basis_index[label] = i as u32;
    }
    let keys = color_by_cycle_position(graph, |label, len, p| (basis_index[label], half_cycle_color(len, p)));
    EdgeColoring::from_keys(graph.graph(), &keys)
}

/// Best bound `min Σ ⌈|a|/2⌉` over minimal generating subsets of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBound {
    /// 0 when `S` does not generate (the graph is disconnected).
    pub count: u64,
    pub basis: Option<GeneratorSet>,
}

pub fn color_count_upper_bound(group: &GroupSpec, gens: &GeneratorSet) -> Result<UpperBound> {
    let best = group.minimal_generating_subsets(gens)?.into_iter().min_by_key(|s| s.score);
    Ok(match best {
        Some(s) => UpperBound { count: s.score, basis: Some(s.set) },
        None => UpperBound { count: 0, basis: None },
    })
}

/// Extends a coloring of a spanning Cayley subgraph to the Cayley graph over a
/// larger generating set on the same group. Shared edges keep their color,
/// every other edge reuses color id 0. Rainbow paths of the subgraph survive,
/// so a rainbow coloring stays rainbow (strong rainbow is not preserved in general).
pub fn extend_to_supergraph(sub: &CayleyGraph, coloring: &EdgeColoring, full: &CayleyGraph) -> Result<EdgeColoring> {
    if sub.group() != full.group() {
        return Err(Error::ColoringMismatch("graphs are over different groups".into()));
    }
    if coloring.colors().len() != sub.graph().edge_count() {
        return Err(Error::ColoringMismatch("coloring does not belong to the subgraph".into()));
    }
    let mut colors = Vec::with_capacity(full.graph().edge_count());
    for e in full.graph().edges() {
        let c = match sub.graph().edge_between(e.u, e.v) {
            Some(idx) => coloring.color_of(idx as usize),
            None => 0,
        };
        colors.push(c);
    }
    for e in sub.graph().edges() {
        if full.graph().edge_between(e.u, e.v).is_none() {
            return Err(Error::ColoringMismatch(format!("edge {}-{} missing from the supergraph", e.u, e.v)));
        }
    }
    EdgeColoring::new(full.graph(), colors, coloring.legend().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_cayley;

    fn setup(moduli: &str, basis: &str) -> (CayleyGraph, GeneratorSet) {
        let g: GroupSpec = moduli.parse().unwrap();
        let basis = g.parse_generators(basis).unwrap();
        let c = build_cayley(&g, &basis.inverse_closure(&g)).unwrap();
        (c, basis)
    }

    #[test]
    fn cycle_decompositions() {
        let (c, _) = setup("9", "1");
        let class = decompose_cycles(&c, 0);
        assert_eq!(class.cycles, vec![(0..9).collect::<Vec<u32>>()]);

        let (c, _) = setup("4,4", "1,0;0,1");
        let class = decompose_cycles(&c, 0);
        assert_eq!(class.cycles.len(), 4);
        assert!(class.cycles.iter().all(|cy| cy.len() == 4));
        // (0,0),(1,0),(2,0),(3,0) have ids 0,4,8,12
        assert_eq!(class.cycles[0], vec![0, 4, 8, 12]);

        let (c, _) = setup("6", "2;3");
        let class = decompose_cycles(&c, 0);
        assert_eq!(class.cycles, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        let matching = decompose_cycles(&c, 1);
        assert_eq!(matching.cycles, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
    }

    #[test]
    fn half_cycle_patterns() {
        let c5: Vec<u32> = (0..5).map(|p| half_cycle_color(5, p)).collect();
        assert_eq!(c5, vec![1, 2, 3, 1, 2]);
        let c6: Vec<u32> = (0..6).map(|p| half_cycle_color(6, p)).collect();
        assert_eq!(c6, vec![1, 2, 3, 1, 2, 3]);
        let c3: Vec<u32> = (0..3).map(|p| half_cycle_color(3, p)).collect();
        assert_eq!(c3, vec![1, 2, 1]);
        assert_eq!(half_cycle_color(2, 0), 1);
    }

    #[test]
    fn hypercube_gets_parallel_classes() {
        let q3 = GroupSpec::hypercube(3).unwrap();
        let basis = q3.parse_generators("1,0,0;0,1,0;0,0,1").unwrap();
        let c = build_cayley(&q3, &basis.inverse_closure(&q3)).unwrap();
        let col = half_cycle_coloring(&c, &basis).unwrap();
        assert_eq!(col.num_colors(), 3);
        for (idx, e) in c.graph().edges().iter().enumerate() {
            assert_eq!(col.color_of(idx), e.label);
        }
        assert_eq!(col.legend(), &[(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn c6_opposite_edges_share_colors() {
        let (c, basis) = setup("6", "1");
        let col = half_cycle_coloring(&c, &basis).unwrap();
        assert_eq!(col.num_colors(), 3);
        let color_from = |x: u32| col.color_of(c.graph().edge_between(x, (x + 1) % 6).unwrap() as usize);
        for x in 0..3 {
            assert_eq!(color_from(x), color_from(x + 3));
        }
    }

    #[test]
    fn c5_pattern() {
        let (c, basis) = setup("5", "1");
        let col = half_cycle_coloring(&c, &basis).unwrap();
        let around: Vec<(u32, u32)> = (0..5)
            .map(|x| col.legend()[col.color_of(c.graph().edge_between(x, (x + 1) % 5).unwrap() as usize) as usize])
            .collect();
        assert_eq!(around, vec![(0, 1), (0, 2), (0, 3), (0, 1), (0, 2)]);
    }

    #[test]
    fn exact_color_counts_and_multiplicities() {
        for (moduli, basis, expected) in [
            ("3,4", "1,0;0,1", 4),
            ("5,6", "1,0;0,1", 6),
            ("7", "1", 4),
            ("6", "2;3", 3),
            ("2,2,5", "1,0,0;0,1,0;0,0,1", 5),
        ] {
            let (c, basis) = setup(moduli, basis);
            let col = half_cycle_coloring(&c, &basis).unwrap();
            assert_eq!(col.num_colors(), expected, "{moduli}");
            // each color appears at most twice per cycle
            for label in 0..c.generators().len() {
                let class = decompose_cycles(&c, label);
                for cycle in &class.cycles {
                    let mut count: HashMap<u32, usize> = HashMap::new();
                    for (p, &x) in cycle.iter().enumerate() {
                        if class.order == 2 && p == 1 {
                            break;
                        }
                        let y = cycle[(p + 1) % cycle.len()];
                        *count.entry(col.color_of(c.graph().edge_between(x, y).unwrap() as usize)).or_default() += 1;
                    }
                    let singles = count.values().filter(|&&k| k == 1).count();
                    assert!(count.values().all(|&k| k <= 2));
                    if class.order.is_multiple_of(2) && class.order > 2 {
                        assert_eq!(singles, 0);
                    } else if class.order > 2 {
                        assert_eq!(singles, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn coloring_requires_matching_basis() {
        let (c, _) = setup("9", "1");
        let g = c.group().clone();
        assert!(matches!(half_cycle_coloring(&c, &g.parse_generators("3").unwrap()), Err(Error::NotGenerating)));
        assert!(half_cycle_coloring(&c, &g.parse_generators("2").unwrap()).is_err());
    }

    #[test]
    fn upper_bounds() {
        let z9: GroupSpec = "9".parse().unwrap();
        let b = color_count_upper_bound(&z9, &z9.parse_generators("1;8;2;7").unwrap()).unwrap();
        assert_eq!(b.count, 5);
        assert_eq!(b.basis.unwrap().elements(), &[z9.element(&[1]).unwrap()]);
        let q3 = GroupSpec::hypercube(3).unwrap();
        assert_eq!(color_count_upper_bound(&q3, &q3.standard_generators()).unwrap().count, 3);
        let none = color_count_upper_bound(&z9, &z9.parse_generators("3;6").unwrap()).unwrap();
        assert_eq!(none, UpperBound { count: 0, basis: None });
    }

    #[test]
    fn extension_identity_and_reuse() {
        let (c, basis) = setup("9", "1");
        let col = half_cycle_coloring(&c, &basis).unwrap();
        assert_eq!(extend_to_supergraph(&c, &col, &c).unwrap(), col);

        let g = c.group().clone();
        let full = build_cayley(&g, &g.parse_generators("1;8;2;7").unwrap()).unwrap();
        let ext = extend_to_supergraph(&c, &col, &full).unwrap();
        assert_eq!(ext.num_colors(), col.num_colors());
        for (idx, e) in full.graph().edges().iter().enumerate() {
            if e.label == 1 {
                assert_eq!(ext.color_of(idx), 0);
            }
        }
        assert!(extend_to_supergraph(&full, &ext, &c).is_err());
    }

    #[test]
    fn coloring_validation() {
        let g = LabeledGraph::new(3, [(0, 1, 0), (1, 2, 0)]).unwrap();
        assert!(EdgeColoring::new(&g, vec![0], vec![(0, 1)]).is_err());
        assert!(EdgeColoring::new(&g, vec![0, 2], vec![(0, 1), (0, 2)]).is_err());
        assert!(EdgeColoring::new(&g, vec![0, 0], vec![(0, 1), (0, 2)]).is_err());
        assert_eq!(EdgeColoring::from_ids(&g, vec![1, 0]).unwrap().num_colors(), 2);
        assert_eq!(EdgeColoring::uniform(&g).num_colors(), 1);
    }
}
