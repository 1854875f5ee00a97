//! Cayley graphs of finite Abelian groups and recursive circulants, their
//! constructive (strong) rainbow edge-colorings, canonical shortest-path
//! words, and exact verification of rainbow connectivity.
//!
//! ```
//! use rainbow_core::{build_cayley, half_cycle_coloring, is_strong_rainbow_connected, GroupSpec};
//!
//! let q3 = GroupSpec::hypercube(3).unwrap();
//! let basis = q3.parse_generators("1,0,0;0,1,0;0,0,1").unwrap();
//! let graph = build_cayley(&q3, &basis.inverse_closure(&q3)).unwrap();
//! let coloring = half_cycle_coloring(&graph, &basis).unwrap();
//! assert_eq!(coloring.num_colors(), 3);
//! assert!(is_strong_rainbow_connected(graph.graph(), &coloring).unwrap().ok);
//! ```

pub mod cayley;
pub mod certificate;
pub mod circulant;
pub mod coloring;
pub mod corpus;
pub mod error;
pub mod group;
pub mod oracle;
pub mod pathword;
pub mod verify;

pub use cayley::{build_cayley, theoretical_diameter, CayleyGraph, Edge, GraphExport, LabeledGraph, UNREACHABLE};
pub use certificate::Certificate;
pub use circulant::{
    build_circulant, diameter_formula, level_coloring, level_coloring_formula, CirculantSpec, LevelCase,
};
pub use coloring::{
    color_count_upper_bound, decompose_cycles, extend_to_supergraph, half_cycle_coloring, CycleClass, EdgeColoring,
    UpperBound,
};
pub use corpus::Corpus;
pub use error::{Error, Result};
pub use group::{GeneratorSet, GroupElement, GroupSpec, MinimalSubset};
pub use oracle::{bounds_report, exact_rc, BoundsReport, Instance, OracleCaps, OracleOutcome};
pub use pathword::{canonical_word, naf_word, word_to_path, PathWord, StepOrder};
pub use verify::{
    is_rainbow_connected, is_strong_rainbow_connected, rainbow_geodesic_exists, rainbow_path_exists, verify, Mode,
    PairScope, VerifyReport,
};
