//! Shortest-path words in recursive circulants.
//!
//! A path from 0 is a multiset of signed jumps `±d^j`; by commutativity only
//! the net count per level matters, so a word is one signed coefficient per
//! level. A canonical word is shortest and keeps at most `⌊d/2⌋` steps per
//! level below `m` and at most `⌊r/2⌋` steps at level `m`.

use std::fmt;

use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    base: u64,
    coeffs: Vec<i64>,
}

impl PathWord {
    pub fn new(base: u64, coeffs: Vec<i64>) -> Self {
        Self { base, coeffs }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Net number of `+d^j` steps at each level `j`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Number of edges on the path.
    pub fn len(&self) -> u64 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Σ c_j·d^j mod n`.
    pub fn evaluate(&self, n: u64) -> u64 {
        let n = n as i128;
        let mut power: i128 = 1;
        let mut acc: i128 = 0;
        for &c in &self.coeffs {
            acc = (acc + c as i128 * power).rem_euclid(n);
            power = power * self.base as i128 % n;
        }
        acc as u64
    }

    /// First level whose coefficient exceeds the canonical bound.
    pub fn check_bounds(&self, spec: &CirculantSpec) -> Result<()> {
        if self.coeffs.len() > spec.level_count() {
            let level = spec.level_count();
            return Err(Error::WordBounds { level, coeff: self.coeffs[level], bound: 0 });
        }
        for (level, &c) in self.coeffs.iter().enumerate() {
            let bound = spec.level_bound(level);
            if c.unsigned_abs() > bound {
                return Err(Error::WordBounds { level, coeff: c, bound });
            }
        }
        Ok(())
    }
}

/// Renders the word as a signed level list such as `-3^0 -3^1`, one entry
/// per step; the empty word renders as `ε`.
impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 { '-' } else { '+' };
            for _ in 0..c.unsigned_abs() {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{sign}{}^{j}", self.base)?;
                first = false;
            }
        }
        if first {
            f.write_str("ε")?;
        }
        Ok(())
    }
}

fn check_vertex(spec: &CirculantSpec, v: u64) -> Result<()> {
    if v >= spec.order() {
        return Err(Error::VertexOutOfRange { vertex: v, n: spec.order() });
    }
    Ok(())
}

/// Canonical shortest word from 0 to `v` in `G(r·d^m, d)`.
///
/// A shortest path never needs `d` or more steps on one level, so the
/// coefficient of level `j` is the base-`d` digit of `v` plus an incoming
/// carry, minus `d` times an outgoing carry in `{0, 1}`. A two-state dynamic
/// program over the carry picks the shortest such word (ties keep the
/// non-negative digit). Rewrite passes then enforce the level bounds: the
/// lowest level with `c > ⌊d/2⌋` trades its steps for one step up and `d - c`
/// steps down, and a top coefficient above `⌊r/2⌋` becomes `c - r`. Neither
/// rewrite lengthens the word.
pub fn canonical_word(spec: &CirculantSpec, v: u64) -> Result<PathWord> {
    check_vertex(spec, v)?;
    let d = spec.d() as i64;
    let r = spec.r() as i64;
    let m = spec.m() as usize;

    let mut digits = Vec::with_capacity(m);
    let mut rest = v;
    for _ in 0..m {
        digits.push((rest % spec.d()) as i64);
        rest /= spec.d();
    }
    let top_digit = rest as i64;

    // cost[c]: best length of levels < j given carry c into level j.
    const INF: u64 = u64::MAX / 2;
    let mut cost = [0u64, INF];
    // choice[j][c_out] = (c_in, coefficient)
    let mut choice: Vec<[(usize, i64); 2]> = Vec::with_capacity(m);
    for &t in &digits {
        let mut next = [INF; 2];
        let mut pick = [(0usize, 0i64); 2];
        for (carry_in, &base_cost) in cost.iter().enumerate() {
            if base_cost >= INF {
                continue;
            }
            let x = t + carry_in as i64;
            for carry_out in 0..2usize {
                let coeff = x - d * carry_out as i64;
                if coeff.abs() >= d {
                    continue;
                }
                let total = base_cost + coeff.unsigned_abs();
                if total < next[carry_out] {
                    next[carry_out] = total;
                    pick[carry_out] = (carry_in, coeff);
                }
            }
        }
        cost = next;
        choice.push(pick);
    }

    let top_coeff = |carry: usize| -> i64 {
        if r == 1 {
            return 0;
        }
        let y = (top_digit + carry as i64).rem_euclid(r);
        if y <= r / 2 {
            y
        } else {
            y - r
        }
    };
    let final_cost = |carry: usize| cost[carry].saturating_add(top_coeff(carry).unsigned_abs());
    let mut carry = if final_cost(0) <= final_cost(1) { 0 } else { 1 };

    let mut coeffs = vec![0i64; spec.level_count()];
    if r > 1 {
        coeffs[m] = top_coeff(carry);
    }
    for j in (0..m).rev() {
        let (carry_in, coeff) = choice[j][carry];
        coeffs[j] = coeff;
        carry = carry_in;
    }
    let mut word = PathWord::new(spec.d(), coeffs);
    let shortest = word.len();
    normalize(spec, &mut word);
    debug_assert_eq!(word.len(), shortest);
    debug_assert_eq!(word.evaluate(spec.order()), v);
    Ok(word)
}

/// Applies the level-bound rewrites until none applies.
fn normalize(spec: &CirculantSpec, word: &mut PathWord) {
    let d = spec.d() as i64;
    let r = spec.r() as i64;
    let m = spec.m() as usize;
    let cap = (m + 1) * spec.d() as usize;
    for _ in 0..=cap {
        let Some(level) = (0..word.coeffs.len()).find(|&j| word.coeffs[j].unsigned_abs() > spec.level_bound(j)) else {
            return;
        };
        let c = word.coeffs[level];
        let sign = c.signum();
        if level < m {
            word.coeffs[level] = c - sign * d;
            if level + 1 < word.coeffs.len() {
                word.coeffs[level + 1] += sign;
            }
        } else {
            word.coeffs[level] = c - sign * r;
        }
    }
    unreachable!("level rewrites did not terminate within {cap} passes");
}

/// Non-adjacent form of `v` in `G(2^m, 2)`: digits in `{-1, 0, 1}`, no two
/// consecutive nonzero digits, computed for the representative of `v` in
/// `(-2^{m-1}, 2^{m-1}]`.
pub fn naf_word(m: u32, v: u64) -> Result<PathWord> {
    let spec = CirculantSpec::new(1, 2, m)?;
    check_vertex(&spec, v)?;
    let n = spec.order() as i64;
    let mut x = if v as i64 <= n / 2 { v as i64 } else { v as i64 - n };
    let mut coeffs = Vec::with_capacity(m as usize);
    while x != 0 {
        let digit = if x & 1 == 1 { 2 - x.rem_euclid(4) } else { 0 };
        coeffs.push(digit);
        x = (x - digit) / 2;
    }
    assert!(coeffs.len() <= m as usize, "NAF of a balanced residue fits in m digits");
    coeffs.resize(m as usize, 0);
    Ok(PathWord::new(2, coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepOrder {
    /// All level-0 steps first, then level 1, and so on.
    #[default]
    LevelAscending,
    LevelDescending,
}

/// Vertex sequence obtained by taking the word's steps from `start`.
pub fn word_to_path(spec: &CirculantSpec, word: &PathWord, start: u64, order: StepOrder) -> Result<Vec<u64>> {
    check_vertex(spec, start)?;
    if word.base != spec.d() {
        return Err(Error::Parse(format!("word in base {} used on {spec}", word.base)));
    }
    word.check_bounds(spec)?;
    let n = spec.order();
    let levels: Vec<usize> = match order {
        StepOrder::LevelAscending => (0..word.coeffs.len()).collect(),
        StepOrder::LevelDescending => (0..word.coeffs.len()).rev().collect(),
    };
    let mut path = vec![start];
    let mut x = start;
    for j in levels {
        let c = word.coeffs[j];
        let step = spec.d().pow(j as u32) % n;
        let step = if c < 0 { n - step } else { step };
        for _ in 0..c.unsigned_abs() {
            x = (x + step) % n;
            path.push(x);
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{build_circulant, diameter_formula};

    fn spec(s: &str) -> CirculantSpec {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let w = canonical_word(&spec("1:3:2"), 5).unwrap();
        assert_eq!(w.coeffs(), &[-1, -1]);
        assert_eq!(w.len(), 2);
        assert_eq!(w.to_string(), "-3^0 -3^1");
        let empty = canonical_word(&spec("4:9:1"), 0).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.to_string(), "ε");
    }

    #[test]
    fn even_base_needs_the_carry_choice() {
        // 10 = 2 + 2·4 has greedy length 4; -2 - 4 ≡ 10 (mod 16) has length 3.
        let sp = spec("1:4:2");
        let w = canonical_word(&sp, 10).unwrap();
        assert_eq!(w.len(), 3);
        let g = build_circulant(&sp).unwrap();
        assert_eq!(g.graph().bfs_distances(0)[10], 3);
    }

    #[test]
    fn antipode_of_g36_9() {
        let sp = spec("4:9:1");
        let w = canonical_word(&sp, 18).unwrap();
        let g = build_circulant(&sp).unwrap();
        assert_eq!(w.len(), g.graph().bfs_distances(0)[18] as u64);
        assert_eq!(w.coeffs()[0], 0);
        w.check_bounds(&sp).unwrap();
    }

    #[test]
    fn naf_examples() {
        assert!(naf_word(4, 0).unwrap().is_empty());
        assert_eq!(naf_word(4, 7).unwrap().coeffs(), &[-1, 0, 0, 1]);
        assert_eq!(naf_word(4, 5).unwrap().coeffs(), &[1, 0, 1, 0]);
        assert_eq!(naf_word(3, 4).unwrap().coeffs(), &[0, 0, 1]);
        assert_eq!(naf_word(1, 1).unwrap().coeffs(), &[1]);
        assert!(naf_word(4, 16).is_err());
    }

    #[test]
    fn paths() {
        let sp = spec("1:3:2");
        assert_eq!(word_to_path(&sp, &PathWord::new(3, vec![0, 0]), 4, StepOrder::default()).unwrap(), vec![4]);
        let w = PathWord::new(3, vec![-1, -1]);
        assert_eq!(word_to_path(&sp, &w, 0, StepOrder::LevelAscending).unwrap(), vec![0, 8, 5]);
        assert_eq!(word_to_path(&sp, &w, 0, StepOrder::LevelDescending).unwrap(), vec![0, 6, 5]);
        let w = PathWord::new(2, vec![1, 0, 1, 0]);
        assert_eq!(word_to_path(&spec("1:2:4"), &w, 0, StepOrder::LevelAscending).unwrap(), vec![0, 1, 5]);
        let bad = PathWord::new(3, vec![2, 0]);
        assert!(matches!(word_to_path(&sp, &bad, 0, StepOrder::default()), Err(Error::WordBounds { level: 0, .. })));
        assert!(word_to_path(&sp, &w, 0, StepOrder::default()).is_err());
    }

    #[test]
    fn words_are_shortest_and_bounded() {
        for s in ["1:3:2", "2:3:2", "1:4:2", "2:4:2", "3:4:2", "1:5:2", "4:5:2", "3:7:1", "4:9:1", "6:8:1", "1:2:5"] {
            let sp = spec(s);
            let g = build_circulant(&sp).unwrap();
            let dist = g.graph().bfs_distances(0);
            let mut longest = 0;
            for v in 0..sp.order() {
                let w = canonical_word(&sp, v).unwrap();
                assert_eq!(w.len(), dist[v as usize] as u64, "{s} v={v} {w}");
                assert_eq!(w.evaluate(sp.order()), v);
                w.check_bounds(&sp).unwrap();
                longest = longest.max(w.len());
            }
            assert_eq!(longest, diameter_formula(&sp), "{s}");
        }
    }
}
