//! Coloring certificates:
//! `{"graph": {"n": .., "edges": [[u,v,label],..]}, "num_colors": k,
//!   "legend": [[i,j],..], "edges": [[u,v,color_id],..]}`.
//!
//! Serialization is compact JSON with a trailing newline; reading and
//! re-writing a certificate reproduces it byte for byte.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cayley::{GraphExport, LabeledGraph};
use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph: GraphExport,
    pub num_colors: usize,
    pub legend: Vec<[u32; 2]>,
    pub edges: Vec<[u32; 3]>,
}

impl Certificate {
    pub fn new(graph: &LabeledGraph, coloring: &EdgeColoring) -> Self {
        Self {
            graph: graph.export(),
            num_colors: coloring.num_colors(),
            legend: coloring.legend().iter().map(|&(i, j)| [i, j]).collect(),
            edges: graph.edges().iter().enumerate().map(|(idx, e)| [e.u, e.v, coloring.color_of(idx)]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("certificate is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Rebuilds the graph and the coloring, checking that the colored edge
    /// list is exactly the graph's edge set.
    pub fn into_parts(&self) -> Result<(LabeledGraph, EdgeColoring)> {
        let graph = LabeledGraph::from_export(&self.graph)?;
        if self.edges.len() != graph.edge_count() {
            return Err(Error::ColoringMismatch(format!(
                "{} colored edges for {} graph edges",
                self.edges.len(),
                graph.edge_count()
            )));
        }
        let index: HashMap<(u32, u32), usize> =
            graph.edges().iter().enumerate().map(|(i, e)| ((e.u, e.v), i)).collect();
        let mut colors = vec![None; graph.edge_count()];
        for &[a, b, c] in &self.edges {
            let slot = index
                .get(&(a.min(b), a.max(b)))
                .ok_or_else(|| Error::ColoringMismatch(format!("edge {a}-{b} is not in the graph")))?;
            if colors[*slot].replace(c).is_some() {
                return Err(Error::ColoringMismatch(format!("edge {a}-{b} colored twice")));
            }
        }
        let colors: Vec<u32> = colors.into_iter().map(|c| c.expect("every edge matched once")).collect();
        let legend: Vec<(u32, u32)> = self.legend.iter().map(|&[i, j]| (i, j)).collect();
        if legend.len() != self.num_colors {
            return Err(Error::ColoringMismatch(format!(
                "legend has {} entries, num_colors is {}",
                legend.len(),
                self.num_colors
            )));
        }
        let coloring = EdgeColoring::new(&graph, colors, legend)?;
        Ok((graph, coloring))
    }
}
