//! The instance corpus shared by the acceptance suite and the sweep command.

use serde::Deserialize;

use crate::circulant::CirculantSpec;
use crate::error::Result;
use crate::group::{GeneratorSet, GroupSpec};

/// The checked-in default corpus.
pub const DEFAULT_CORPUS: &str = include_str!("../corpus/default.toml");

#[derive(Debug, Clone, Deserialize)]
struct RawCorpus {
    #[serde(default)]
    group: Vec<RawGroup>,
    circulants: RawCirculants,
}

#[derive(Debug, Clone, Deserialize)]
struct RawGroup {
    name: String,
    moduli: String,
    generators: String,
    #[serde(default)]
    oracle: bool,
}

#[derive(Debug, Clone, Deserialize)]
struct RawCirculants {
    #[serde(default)]
    explicit: Vec<String>,
    sweep: Option<SweepRange>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct SweepRange {
    pub d_min: u64,
    pub d_max: u64,
    pub m_min: u32,
    pub m_max: u32,
    pub max_order: u64,
}

impl SweepRange {
    pub fn specs(&self) -> Vec<CirculantSpec> {
        let mut out = Vec::new();
        for d in self.d_min.max(2)..=self.d_max {
            for r in 1..d {
                for m in self.m_min.max(1)..=self.m_max {
                    if let Ok(spec) = CirculantSpec::new(r, d, m) {
                        if spec.order() <= self.max_order {
                            out.push(spec);
                        }
                    }
                }
            }
        }
        out
    }
}

/// A Cayley-graph instance: `basis` holds one element per inverse pair.
#[derive(Debug, Clone)]
pub struct GroupInstance {
    pub name: String,
    pub group: GroupSpec,
    pub basis: GeneratorSet,
    pub oracle: bool,
}

impl GroupInstance {
    pub fn generators(&self) -> GeneratorSet {
        self.basis.inverse_closure(&self.group)
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub groups: Vec<GroupInstance>,
    pub circulants: Vec<CirculantSpec>,
    pub sweep: Option<SweepRange>,
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawCorpus = toml::from_str(text)?;
        let groups = raw
            .group
            .into_iter()
            .map(|g| {
                let group: GroupSpec = g.moduli.parse()?;
                let basis = group.parse_generators(&g.generators)?;
                Ok(GroupInstance { name: g.name, group, basis, oracle: g.oracle })
            })
            .collect::<Result<Vec<_>>>()?;
        let circulants = raw.circulants.explicit.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?;
        Ok(Self { groups, circulants, sweep: raw.circulants.sweep })
    }

    pub fn default_corpus() -> Self {
        Self::parse(DEFAULT_CORPUS).expect("the checked-in corpus parses")
    }

    /// Explicit circulants followed by the swept range, without duplicates.
    pub fn all_circulants(&self) -> Vec<CirculantSpec> {
        let mut out = self.circulants.clone();
        for spec in self.sweep.map(|s| s.specs()).unwrap_or_default() {
            if !out.contains(&spec) {
                out.push(spec);
            }
        }
        out
    }
}
