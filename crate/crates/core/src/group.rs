//! Finite Abelian groups presented as products of cyclic groups
//! `Z_{n_1} x ... x Z_{n_s}`.
//!
//! Elements are residue vectors. Vertex ids used by the graph modules are the
//! mixed-radix rank of the residue vector with the first component most
//! significant, so id order coincides with lexicographic residue order and
//! the identity always has id 0.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of generator pairs `minimal_generating_subsets` will enumerate.
pub const SUBSET_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    moduli: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_identity(&self) -> bool {
        self.residues.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.residues.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors".into()));
        }
        if let Some(&n) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("modulus {n} < 2")));
        }
        let mut order: u64 = 1;
        for &n in &moduli {
            order = order
                .checked_mul(n)
                .filter(|&o| o <= u32::MAX as u64)
                .ok_or_else(|| Error::InvalidGroup("group order too large".into()))?;
        }
        Ok(Self { moduli })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `Z_2^n`, whose Cayley graph over the unit vectors is the hypercube `Q_n`.
    pub fn hypercube(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { residues: vec![0; self.rank()] }
    }

    /// The `k`-th unit vector `(0,..,1,..,0)`.
    pub fn unit(&self, k: usize) -> GroupElement {
        let mut residues = vec![0; self.rank()];
        residues[k] = 1;
        GroupElement { residues }
    }

    /// All unit vectors together with their inverses: the standard
    /// inverse-closed generating set whose Cayley graph is the torus
    /// `C_{n_1} x ... x C_{n_s}`.
    pub fn standard_generators(&self) -> GeneratorSet {
        let reps: Vec<_> = (0..self.rank()).map(|k| self.unit(k)).collect();
        GeneratorSet::from_valid(self, reps).inverse_closure(self)
    }

    /// Builds an element, reducing each component modulo its factor.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::SpecMismatch {
                element: residues.iter().map(|&x| x as u64).collect(),
                moduli: self.moduli.clone(),
            });
        }
        let residues = residues.iter().zip(&self.moduli).map(|(&x, &n)| x.rem_euclid(n as i64) as u64).collect();
        Ok(GroupElement { residues })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.residues.len() == self.rank() && g.residues.iter().zip(&self.moduli).all(|(&x, &n)| x < n)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::SpecMismatch { element: g.residues.clone(), moduli: self.moduli.clone() })
        }
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.add_unchecked(g, h))
    }

    pub(crate) fn add_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let residues = g.residues.iter().zip(&h.residues).zip(&self.moduli).map(|((&x, &y), &n)| (x + y) % n).collect();
        GroupElement { residues }
    }

    pub fn neg(&self, g: &GroupElement) -> GroupElement {
        let residues = g.residues.iter().zip(&self.moduli).map(|(&x, &n)| (n - x) % n).collect();
        GroupElement { residues }
    }

    /// `t * g` for `t >= 0`.
    pub fn scale(&self, g: &GroupElement, t: u64) -> GroupElement {
        let residues =
            g.residues.iter().zip(&self.moduli).map(|(&x, &n)| ((x as u128 * t as u128) % n as u128) as u64).collect();
        GroupElement { residues }
    }

    /// Least `t >= 1` with `t * g = 0`: the lcm over components of `n_k / gcd(n_k, g_k)`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.residues.iter().zip(&self.moduli).map(|(&x, &n)| n / n.gcd(&x)).fold(1, |acc, o| acc.lcm(&o))
    }

    /// Mixed-radix rank of `g`; the vertex id of `g` in every Cayley graph.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.residues.iter().zip(&self.moduli).fold(0u64, |acc, (&x, &n)| acc * n + x) as usize
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut residues = vec![0; self.rank()];
        for (slot, &n) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = index as u64 % n;
            index /= n as usize;
        }
        GroupElement { residues }
    }

    /// Canonical representative of the pair `{a, -a}`: the lexicographically
    /// smaller residue vector.
    pub fn pair_representative(&self, a: &GroupElement) -> GroupElement {
        let inv = self.neg(a);
        if inv < *a {
            inv
        } else {
            a.clone()
        }
    }

    /// Size of the subgroup generated by `elements`, by closure from the identity.
    pub fn closure_size(&self, elements: &[GroupElement]) -> u64 {
        let n = self.order() as usize;
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![self.identity()];
        let mut count = 1u64;
        while let Some(x) = stack.pop() {
            for a in elements {
                let y = self.add_unchecked(&x, a);
                let iy = self.index_of(&y);
                if !seen[iy] {
                    seen[iy] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    /// True iff the closure of `set` under addition is the whole group.
    pub fn generates(&self, set: &GeneratorSet) -> bool {
        self.closure_size(&set.elements) == self.order()
    }

    /// Every minimal generating subset of `set`, taking one representative per
    /// `{a, -a}` pair. Subsets are listed by size, then in the order their
    /// members first occur in `set`. Returns an empty list when `set` does not
    /// generate.
    pub fn minimal_generating_subsets(&self, set: &GeneratorSet) -> Result<Vec<MinimalSubset>> {
        let reps = set.pair_representatives(self);
        let k = reps.len();
        if k > SUBSET_CAP {
            return Err(Error::SubsetCap { got: k, cap: SUBSET_CAP });
        }
        let full = self.order();
        let generating: Vec<bool> = (0..1usize << k)
            .map(|mask| {
                let chosen: Vec<_> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| reps[b].clone()).collect();
                self.closure_size(&chosen) == full
            })
            .collect();
        if !generating[(1 << k) - 1] {
            return Ok(Vec::new());
        }
        let mut masks: Vec<usize> = (0..1usize << k)
            .filter(|&mask| generating[mask] && (0..k).all(|b| mask >> b & 1 == 0 || !generating[mask ^ (1 << b)]))
            .collect();
        // Size first, then lexicographic in member positions.
        masks.sort_by_key(|&mask| {
            let members: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
            (members.len(), members)
        });
        Ok(masks
            .into_iter()
            .map(|mask| {
                let elements: Vec<_> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| reps[b].clone()).collect();
                let score = elements.iter().map(|a| self.element_order(a).div_ceil(2)).sum();
                MinimalSubset { set: GeneratorSet::from_valid(self, elements), score }
            })
            .collect())
    }

    /// Checks that `reps` (one element per inverse pair) is a minimal generating
    /// set whose cyclic subgroups form a direct decomposition of the group,
    /// i.e. the product of the element orders equals the group order.
    pub fn check_independent_basis(&self, reps: &GeneratorSet) -> Result<()> {
        let elements = reps.pair_representatives(self);
        let set = GeneratorSet::from_valid(self, elements.clone());
        if !self.generates(&set) {
            return Err(Error::NotGenerating);
        }
        for skip in 0..elements.len() {
            let rest: Vec<_> =
                elements.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, a)| a.clone()).collect();
            if self.closure_size(&rest) == self.order() {
                return Err(Error::NotMinimal);
            }
        }
        let product: u64 = elements.iter().map(|a| self.element_order(a)).product();
        if product != self.order() {
            return Err(Error::NotIndependent { product, order: self.order() });
        }
        Ok(())
    }

    /// Parses a semicolon-separated list of residue vectors, e.g. `"1,0,0;0,1,0"`.
    pub fn parse_generators(&self, s: &str) -> Result<GeneratorSet> {
        let elements = s
            .split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                let residues = t
                    .split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("residue {x:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                self.element(&residues)
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(self, elements)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let moduli = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("modulus {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(moduli)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z_{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// A deduplicated set of non-identity elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    elements: Vec<GroupElement>,
    inverse_closed: bool,
}

impl GeneratorSet {
    /// Validates membership, rejects the identity and drops duplicates while
    /// keeping first-occurrence order.
    pub fn new(spec: &GroupSpec, elements: Vec<GroupElement>) -> Result<Self> {
        for g in &elements {
            spec.check(g)?;
            if g.is_identity() {
                return Err(Error::IdentityGenerator);
            }
        }
        Ok(Self::from_valid(spec, elements))
    }

    fn from_valid(spec: &GroupSpec, elements: Vec<GroupElement>) -> Self {
        let mut unique: Vec<GroupElement> = Vec::with_capacity(elements.len());
        for g in elements {
            if !unique.contains(&g) {
                unique.push(g);
            }
        }
        let inverse_closed = unique.iter().all(|g| unique.contains(&spec.neg(g)));
        Self { elements: unique, inverse_closed }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.inverse_closed
    }

    /// `S ∪ S⁻¹`, each inverse placed right after its element.
    pub fn inverse_closure(&self, spec: &GroupSpec) -> GeneratorSet {
        let mut all = Vec::with_capacity(2 * self.elements.len());
        for g in &self.elements {
            all.push(g.clone());
            all.push(spec.neg(g));
        }
        Self::from_valid(spec, all)
    }

    /// One canonical representative per `{a, -a}` pair, in first-occurrence order.
    pub fn pair_representatives(&self, spec: &GroupSpec) -> Vec<GroupElement> {
        let mut reps: Vec<GroupElement> = Vec::new();
        for g in &self.elements {
            let rep = spec.pair_representative(g);
            if !reps.contains(&rep) {
                reps.push(rep);
            }
        }
        reps
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A minimal generating subset with its color budget `Σ ⌈|a|/2⌉`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSubset {
    pub set: GeneratorSet,
    pub score: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: &[u64]) -> GroupSpec {
        GroupSpec::new(n.to_vec()).unwrap()
    }

    fn el(spec: &GroupSpec, r: &[i64]) -> GroupElement {
        spec.element(r).unwrap()
    }

    #[test]
    fn addition() {
        let k4 = z(&[2, 2]);
        assert_eq!(k4.add(&el(&k4, &[1, 1]), &el(&k4, &[1, 1])).unwrap(), k4.identity());
        let z9 = z(&[9]);
        assert_eq!(z9.add(&el(&z9, &[5]), &el(&z9, &[7])).unwrap(), el(&z9, &[3]));
        let g = el(&z9, &[4]);
        assert_eq!(z9.add(&g, &z9.identity()).unwrap(), g);
    }

    #[test]
    fn addition_rejects_foreign_elements() {
        let z9 = z(&[9]);
        let other = z(&[3, 3]);
        assert!(matches!(z9.add(&el(&z9, &[1]), &el(&other, &[1, 1])), Err(Error::SpecMismatch { .. })));
    }

    #[test]
    fn orders() {
        let q = GroupSpec::hypercube(5).unwrap();
        assert_eq!(q.element_order(&q.unit(3)), 2);
        let z9 = z(&[9]);
        assert_eq!(z9.element_order(&el(&z9, &[1])), 9);
        assert_eq!(z9.element_order(&z9.identity()), 1);
        let g = z(&[4, 6]);
        assert_eq!(g.element_order(&el(&g, &[2, 2])), 6);
    }

    #[test]
    fn generation() {
        let z9 = z(&[9]);
        assert!(z9.generates(&z9.parse_generators("1;8").unwrap()));
        assert!(!z9.generates(&z9.parse_generators("3;6").unwrap()));
        let k4 = z(&[2, 2]);
        assert!(k4.generates(&k4.parse_generators("1,0;0,1").unwrap()));
    }

    #[test]
    fn minimal_subsets_of_hypercube_units() {
        let q3 = GroupSpec::hypercube(3).unwrap();
        let subsets = q3.minimal_generating_subsets(&q3.standard_generators()).unwrap();
        assert_eq!(subsets.len(), 1);
        assert_eq!(subsets[0].set.len(), 3);
        assert_eq!(subsets[0].score, 3);
    }

    #[test]
    fn minimal_subsets_of_cyclic() {
        let z9 = z(&[9]);
        let subsets = z9.minimal_generating_subsets(&z9.parse_generators("1;8").unwrap()).unwrap();
        assert_eq!(subsets.len(), 1);
        assert_eq!(subsets[0].set.elements(), &[el(&z9, &[1])]);
        assert_eq!(subsets[0].score, 5);

        let subsets = z9.minimal_generating_subsets(&z9.parse_generators("1;2;7;8").unwrap()).unwrap();
        let sets: Vec<_> = subsets.iter().map(|s| s.set.elements().to_vec()).collect();
        assert_eq!(sets, vec![vec![el(&z9, &[1])], vec![el(&z9, &[2])]]);
        assert_eq!(subsets.iter().map(|s| s.score).min(), Some(5));

        let none = z9.minimal_generating_subsets(&z9.parse_generators("3;6").unwrap()).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn subset_cap() {
        let g = GroupSpec::hypercube(17).unwrap();
        let err = g.minimal_generating_subsets(&g.standard_generators()).unwrap_err();
        assert!(matches!(err, Error::SubsetCap { got: 17, cap: SUBSET_CAP }));
    }

    #[test]
    fn parse_and_validation() {
        assert!("2,2,2".parse::<GroupSpec>().is_ok());
        assert!("2,1".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
        assert!("2,x".parse::<GroupSpec>().is_err());
        let z6 = z(&[6]);
        assert!(matches!(z6.parse_generators("0"), Err(Error::IdentityGenerator)));
        assert!(z6.parse_generators("1,2").is_err());
        let s = z6.parse_generators("1;5;1").unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.is_inverse_closed());
        assert!(!z6.parse_generators("1;2").unwrap().is_inverse_closed());
    }

    #[test]
    fn pair_representatives_are_lexicographically_smaller() {
        let g = z(&[5, 4]);
        let s = g.parse_generators("4,0;0,3;1,0").unwrap();
        assert_eq!(s.pair_representatives(&g), vec![el(&g, &[1, 0]), el(&g, &[0, 1])]);
    }

    #[test]
    fn independent_basis_check() {
        let z6 = z(&[6]);
        assert!(z6.check_independent_basis(&z6.parse_generators("2;3").unwrap()).is_ok());
        assert!(matches!(z6.check_independent_basis(&z6.parse_generators("1;2").unwrap()), Err(Error::NotMinimal)));
        let g = z(&[2, 4]);
        assert!(matches!(
            g.check_independent_basis(&g.parse_generators("1,1;0,1").unwrap()),
            Err(Error::NotIndependent { product: 16, order: 8 })
        ));
    }

    fn small_group() -> impl Strategy<Value = GroupSpec> {
        prop::collection::vec(2u64..8, 1..4)
            .prop_filter("order <= 200", |m| m.iter().product::<u64>() <= 200)
            .prop_map(|m| GroupSpec::new(m).unwrap())
    }

    proptest! {
        #[test]
        fn order_divides_group_order(spec in small_group()) {
            for i in 0..spec.order() as usize {
                let g = spec.element_at(i);
                prop_assert_eq!(spec.order() % spec.element_order(&g), 0);
                prop_assert!(spec.scale(&g, spec.element_order(&g)).is_identity());
                prop_assert_eq!(spec.index_of(&g), i);
            }
        }

        #[test]
        fn generation_matches_closure_size(spec in small_group(), picks in prop::collection::vec(any::<u32>(), 1..4)) {
            let n = spec.order() as usize;
            let elements: Vec<_> = picks.iter().map(|&p| spec.element_at(1 + p as usize % (n - 1))).collect();
            let set = GeneratorSet::new(&spec, elements).unwrap();
            prop_assert_eq!(spec.generates(&set), spec.closure_size(set.elements()) == spec.order());
        }

        #[test]
        fn minimal_subsets_are_minimal(spec in small_group(), picks in prop::collection::vec(any::<u32>(), 1..6)) {
            let n = spec.order() as usize;
            let elements: Vec<_> = picks.iter().map(|&p| spec.element_at(1 + p as usize % (n - 1))).collect();
            let set = GeneratorSet::new(&spec, elements).unwrap();
            for sub in spec.minimal_generating_subsets(&set).unwrap() {
                prop_assert!(spec.generates(&sub.set));
                for skip in 0..sub.set.len() {
                    let rest: Vec<_> = sub.set.elements().iter().enumerate()
                        .filter(|&(i, _)| i != skip).map(|(_, a)| a.clone()).collect();
                    prop_assert!(spec.closure_size(&rest) < spec.order());
                }
            }
        }
    }
}
