//! Recursive circulants `G(r·d^m, d)`: the Cayley graph of `Z_N`, `N = r·d^m`,
//! with jumps `±d^0, .., ±d^{m-1}` and, when `r ≥ 2`, `±d^m`.
//!
//! Edge label `i` is the level of the jump `d^i`.

use std::fmt;
use std::str::FromStr;

use crate::cayley::{build_cayley, CayleyGraph};
use crate::coloring::{color_by_cycle_position, half_cycle_color, EdgeColoring};
use crate::error::{Error, Result};
use crate::group::{GeneratorSet, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CirculantSpec {
    r: u64,
    d: u64,
    m: u32,
}

impl CirculantSpec {
    pub fn new(r: u64, d: u64, m: u32) -> Result<Self> {
        let invalid = |reason| Err(Error::InvalidCirculant { r, d, m, reason });
        if d < 2 {
            return invalid("d must be at least 2");
        }
        if r < 1 || r >= d {
            return invalid("r must satisfy 1 <= r < d");
        }
        if m < 1 {
            return invalid("m must be at least 1");
        }
        match d.checked_pow(m).and_then(|p| p.checked_mul(r)) {
            Some(n) if n <= u32::MAX as u64 => Ok(Self { r, d, m }),
            _ => invalid("order does not fit in 32 bits"),
        }
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `N = r·d^m`.
    pub fn order(&self) -> u64 {
        self.r * self.d.pow(self.m)
    }

    /// `m` when `r = 1` (the jump `d^m ≡ 0` vanishes), otherwise `m + 1`.
    pub fn level_count(&self) -> usize {
        if self.r == 1 {
            self.m as usize
        } else {
            self.m as usize + 1
        }
    }

    /// Jump `d^i` of every level.
    pub fn jumps(&self) -> Vec<u64> {
        (0..self.level_count() as u32).map(|i| self.d.pow(i)).collect()
    }

    /// Order of the jump at `level` in `Z_N`: `r·d^{m-level}`.
    pub fn level_order(&self, level: usize) -> u64 {
        self.r * self.d.pow(self.m - level as u32)
    }

    pub fn group(&self) -> GroupSpec {
        GroupSpec::cyclic(self.order()).expect("N >= 2")
    }

    /// Maximum number of steps per level in a canonical shortest word:
    /// `⌊d/2⌋` below the top level, `⌊r/2⌋` at level `m`.
    pub fn level_bound(&self, level: usize) -> u64 {
        if level < self.m as usize {
            self.d / 2
        } else {
            self.r / 2
        }
    }
}

impl FromStr for CirculantSpec {
    type Err = Error;

    /// Parses `"r:d:m"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected r:d:m, got {s:?}")));
        }
        let num = |t: &str| t.parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
        let m = u32::try_from(num(parts[2])?).map_err(|_| Error::Parse("m too large".into()))?;
        Self::new(num(parts[0])?, num(parts[1])?, m)
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.order(), self.d)
    }
}

pub fn build_circulant(spec: &CirculantSpec) -> Result<CayleyGraph> {
    let group = spec.group();
    let n = spec.order() as i64;
    let mut elements = Vec::new();
    for jump in spec.jumps() {
        elements.push(group.element(&[jump as i64])?);
        elements.push(group.element(&[n - jump as i64])?);
    }
    let gens = GeneratorSet::new(&group, elements)?;
    let graph = build_cayley(&group, &gens)?;
    debug_assert_eq!(graph.generators().len(), spec.level_count());
    Ok(graph)
}

/// Closed-form diameter:
/// `⌊d/2⌋m + ⌊r/2⌋` for odd `d`, `⌊(d-1)m/2⌋ + ⌊r/2⌋` when `r` and `d` are
/// even, `⌈(d-1)m/2⌉ + ⌊r/2⌋` when `r` is odd and `d` even.
pub fn diameter_formula(spec: &CirculantSpec) -> u64 {
    let (r, d, m) = (spec.r, spec.d, spec.m as u64);
    let top = r / 2;
    if d % 2 == 1 {
        (d / 2) * m + top
    } else if r % 2 == 0 {
        (d - 1) * m / 2 + top
    } else {
        ((d - 1) * m).div_ceil(2) + top
    }
}

/// Which branch of the level-wise construction a spec falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelCase {
    /// `d = 2`: levels `2i` and `2i+1` share one color.
    Binary,
    /// `d = 3`: one color per level.
    Ternary,
    /// `d ≥ 4` even: period `d/2` on every level.
    EvenBase,
    /// `d ≥ 5` odd with `r = ⌊d/2⌋`.
    OddBalanced,
    /// `d ≥ 5` odd with `r < ⌊d/2⌋`.
    OddSmallR,
    /// `d ≥ 5` odd with `r > ⌊d/2⌋`.
    OddLargeR,
}

impl LevelCase {
    pub fn of(spec: &CirculantSpec) -> Self {
        let half = spec.d / 2;
        match spec.d {
            2 => Self::Binary,
            3 => Self::Ternary,
            d if d % 2 == 0 => Self::EvenBase,
            _ if spec.r == half => Self::OddBalanced,
            _ if spec.r < half => Self::OddSmallR,
            _ => Self::OddLargeR,
        }
    }
}

/// Trailing remainder `r'` for odd `d`: the level cycles have length
/// `r·d^{m-i} = ⌊d/2⌋·t + r'`.
pub fn odd_remainder(spec: &CirculantSpec) -> u64 {
    let half = spec.d / 2;
    match spec.r.cmp(&half) {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => spec.r,
        std::cmp::Ordering::Greater => spec.r - half,
    }
}

/// Number of colors the top level `±d^m` needs: `⌈r/2⌉` for `r ≥ 4`
/// (half-cycle pattern on `r`-cycles), otherwise `⌊r/2⌋` (absent, a perfect
/// matching, or disjoint triangles).
fn top_colors(r: u64) -> u64 {
    if r >= 4 {
        r.div_ceil(2)
    } else {
        r / 2
    }
}

/// Color count of the level-wise construction, in closed form.
pub fn level_coloring_formula(spec: &CirculantSpec) -> u64 {
    let (r, d, m) = (spec.r, spec.d, spec.m as u64);
    let half = d / 2;
    match LevelCase::of(spec) {
        LevelCase::Binary => m.div_ceil(2),
        LevelCase::Ternary => m + r / 2,
        LevelCase::EvenBase => half * m + top_colors(r),
        LevelCase::OddBalanced => half * m + top_colors(r),
        LevelCase::OddSmallR => (half + r) * m + top_colors(r),
        LevelCase::OddLargeR => r * m + top_colors(r),
    }
}

/// Level-wise coloring of `G(r·d^m, d)`. `graph` must be
/// `build_circulant(spec)`.
///
/// Level `i < m` consists of `d^i` cycles of length `L = r·d^{m-i}`; position
/// `p` along a cycle is colored
/// * `d` even: `(i, p mod d/2 + 1)`;
/// * `d` odd, `d ≥ 5`: with `L = ⌊d/2⌋·t + r'`, `(i, p mod ⌊d/2⌋ + 1)` for
///   `p < ⌊d/2⌋·t` and fresh colors `(i, ⌊d/2⌋ + 1 ..)` for the trailing `r'` edges;
/// * `d = 3`: `(i, 1)`;
/// * `d = 2`: `(⌊i/2⌋, 1)`.
///
/// The top level uses the half-cycle pattern when `r ≥ 4` and a single
/// color when `r ∈ {2, 3}`.
pub fn level_coloring(spec: &CirculantSpec, graph: &CayleyGraph) -> Result<EdgeColoring> {
    if graph.group().moduli() != [spec.order()] || graph.generators().len() != spec.level_count() {
        return Err(Error::ColoringMismatch(format!("graph is not {spec}")));
    }
    for (label, jump) in spec.jumps().into_iter().enumerate() {
        if graph.generators()[label].residues() != [jump] {
            return Err(Error::ColoringMismatch(format!("label {label} is not the jump {jump}")));
        }
    }
    let case = LevelCase::of(spec);
    let m = spec.m as usize;
    let half = spec.d / 2;
    let remainder = odd_remainder(spec);
    let keys = color_by_cycle_position(graph, |level, len, p| {
        debug_assert_eq!(len, spec.level_order(level));
        let i = level as u32;
        if case == LevelCase::Binary {
            return (i / 2, 1);
        }
        if level == m {
            return (i, if spec.r >= 4 { half_cycle_color(len, p) } else { 1 });
        }
        match case {
            LevelCase::Ternary => (i, 1),
            LevelCase::EvenBase => (i, (p % half) as u32 + 1),
            _ => {
                assert_eq!((len - remainder) % half, 0, "r·d^(m-i) - r' must be a multiple of ⌊d/2⌋");
                let periodic = len - remainder;
                if p < periodic {
                    (i, (p % half) as u32 + 1)
                } else {
                    (i, (half + p - periodic) as u32 + 1)
                }
            }
        }
    });
    EdgeColoring::from_keys(graph.graph(), &keys)
}

/// The lower bound on `rc` that the level-wise analysis provides: the
/// diameter for `d ≥ 3`, `⌊m/2⌋` for `d = 2`.
pub fn formula_lower_bound(spec: &CirculantSpec) -> u64 {
    if spec.d == 2 {
        spec.m as u64 / 2
    } else {
        diameter_formula(spec)
    }
}
