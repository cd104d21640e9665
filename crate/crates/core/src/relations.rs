//! Finite equivalence relations on triangle ids and their filtrations.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::TriId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("id {0} is not in the universe")]
    UnknownId(TriId),
    #[error("id {0} appears in two classes")]
    Overlap(TriId),
    #[error("empty class")]
    EmptyClass,
    #[error("step {step} has a different universe")]
    UniverseMismatch { step: usize },
    #[error("empty filtration")]
    EmptyFiltration,
}

/// A partition of a finite set of triangle ids. Classes are numbered in
/// order of their minimum element, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePartition {
    class_of: BTreeMap<TriId, u32>,
    classes: Vec<BTreeSet<TriId>>,
}

impl FinitePartition {
    pub fn from_classes<I, C>(classes: I) -> Result<Self, RelationError>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = TriId>,
    {
        let mut sets: Vec<BTreeSet<TriId>> = Vec::new();
        let mut seen = BTreeSet::new();
        for c in classes {
            let mut set = BTreeSet::new();
            for id in c {
                if !seen.insert(id) {
                    return Err(RelationError::Overlap(id));
                }
                set.insert(id);
            }
            if set.is_empty() {
                return Err(RelationError::EmptyClass);
            }
            sets.push(set);
        }
        sets.sort_by_key(|s| *s.iter().next().unwrap());
        let mut class_of = BTreeMap::new();
        for (k, s) in sets.iter().enumerate() {
            for &id in s {
                class_of.insert(id, k as u32);
            }
        }
        Ok(FinitePartition { class_of, classes: sets })
    }

    /// Partition from an arbitrary labelling of the universe.
    pub fn from_labels<L: Ord>(labels: impl IntoIterator<Item = (TriId, L)>) -> Self {
        let mut by: BTreeMap<L, Vec<TriId>> = BTreeMap::new();
        for (id, l) in labels {
            by.entry(l).or_default().push(id);
        }
        Self::from_classes(by.into_values()).expect("labelling gives disjoint classes")
    }

    pub fn identity(universe: impl IntoIterator<Item = TriId>) -> Self {
        let set: BTreeSet<TriId> = universe.into_iter().collect();
        Self::from_classes(set.into_iter().map(|t| [t])).unwrap()
    }

    pub fn single_class(universe: impl IntoIterator<Item = TriId>) -> Self {
        let set: BTreeSet<TriId> = universe.into_iter().collect();
        if set.is_empty() {
            return Self::empty();
        }
        Self::from_classes([set]).unwrap()
    }

    pub fn empty() -> Self {
        FinitePartition { class_of: BTreeMap::new(), classes: Vec::new() }
    }

    pub fn universe(&self) -> impl Iterator<Item = TriId> + '_ {
        self.class_of.keys().copied()
    }

    pub fn universe_len(&self) -> usize {
        self.class_of.len()
    }

    pub fn contains(&self, id: TriId) -> bool {
        self.class_of.contains_key(&id)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[BTreeSet<TriId>] {
        &self.classes
    }

    pub fn class_index(&self, id: TriId) -> Option<u32> {
        self.class_of.get(&id).copied()
    }

    pub fn class(&self, id: TriId) -> Result<&BTreeSet<TriId>, RelationError> {
        let k = self.class_index(id).ok_or(RelationError::UnknownId(id))?;
        Ok(&self.classes[k as usize])
    }

    pub fn same_class(&self, a: TriId, b: TriId) -> bool {
        matches!((self.class_index(a), self.class_index(b)), (Some(x), Some(y)) if x == y)
    }

    /// Union of the classes meeting `a`.
    pub fn saturate(&self, a: &BTreeSet<TriId>) -> Result<BTreeSet<TriId>, RelationError> {
        let mut ks = BTreeSet::new();
        for &id in a {
            ks.insert(self.class_index(id).ok_or(RelationError::UnknownId(id))?);
        }
        Ok(ks.into_iter().flat_map(|k| self.classes[k as usize].iter().copied()).collect())
    }

    pub fn class_cardinality(&self, id: TriId) -> Result<usize, RelationError> {
        Ok(self.class(id)?.len())
    }

    /// The numeric minimum of every class.
    pub fn fundamental_domain(&self) -> BTreeSet<TriId> {
        self.fundamental_domain_by(|a, b| a.cmp(b))
    }

    /// The `order`-minimum of every class.
    pub fn fundamental_domain_by(&self, mut order: impl FnMut(&TriId, &TriId) -> Ordering) -> BTreeSet<TriId> {
        self.classes
            .iter()
            .map(|c| *c.iter().min_by(|a, b| order(a, b)).unwrap())
            .collect()
    }

    /// Every class of `self` lies inside a class of `coarser`. Both must
    /// share a universe.
    pub fn refines(&self, coarser: &FinitePartition) -> bool {
        self.classes.iter().all(|c| {
            let mut it = c.iter();
            let first = it.next().and_then(|&t| coarser.class_index(t));
            first.is_some() && it.all(|&t| coarser.class_index(t) == first)
        })
    }

    /// Restriction to `t`: classes intersected with `t`, empty ones dropped.
    pub fn induced(&self, t: &BTreeSet<TriId>) -> FinitePartition {
        Self::from_classes(
            self.classes
                .iter()
                .map(|c| c.intersection(t).copied().collect::<Vec<_>>())
                .filter(|c| !c.is_empty()),
        )
        .unwrap()
    }

    pub fn same_universe(&self, other: &FinitePartition) -> bool {
        self.class_of.len() == other.class_of.len() && self.class_of.keys().eq(other.class_of.keys())
    }
}

/// Restriction of `host` to `t`.
pub fn induced_relation(host: &FinitePartition, t: &BTreeSet<TriId>) -> FinitePartition {
    host.induced(t)
}

/// An increasing sequence of partitions of one universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<FinitePartition>,
}

impl Filtration {
    /// Checks only that the steps share a universe; use [`check_filtration`]
    /// for monotonicity.
    pub fn new(steps: Vec<FinitePartition>) -> Result<Self, RelationError> {
        if let Some(first) = steps.first() {
            for (k, s) in steps.iter().enumerate().skip(1) {
                if !s.same_universe(first) {
                    return Err(RelationError::UniverseMismatch { step: k });
                }
            }
        }
        Ok(Filtration { steps })
    }

    pub fn steps(&self) -> &[FinitePartition] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> Option<&FinitePartition> {
        self.steps.last()
    }

    /// First step `k` such that step `k` does not refine step `k + 1`.
    pub fn first_non_monotone(&self) -> Option<usize> {
        self.steps.windows(2).position(|w| !w[0].refines(&w[1]))
    }

    pub fn induced(&self, t: &BTreeSet<TriId>) -> Filtration {
        Filtration { steps: self.steps.iter().map(|s| s.induced(t)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub steps: usize,
    pub monotone: bool,
    pub first_violation: Option<usize>,
    pub join_matches_target: bool,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.monotone && self.join_matches_target
    }
}

/// Monotone coarsening plus equality of the last step with `target`.
pub fn check_filtration(f: &Filtration, target: &FinitePartition) -> Result<FiltrationReport, RelationError> {
    let last = f.last().ok_or(RelationError::EmptyFiltration)?;
    if !last.same_universe(target) {
        return Err(RelationError::UniverseMismatch { step: f.len() });
    }
    let first_violation = f.first_non_monotone();
    Ok(FiltrationReport {
        steps: f.len(),
        monotone: first_violation.is_none(),
        first_violation,
        join_matches_target: last == target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> BTreeSet<TriId> {
        v.iter().map(|&x| TriId(x)).collect()
    }

    fn part(classes: &[&[u32]]) -> FinitePartition {
        FinitePartition::from_classes(classes.iter().map(|c| c.iter().map(|&x| TriId(x)))).unwrap()
    }

    #[test]
    fn saturation_examples() {
        let r = part(&[&[0, 1], &[2]]);
        assert_eq!(r.saturate(&ids(&[])).unwrap(), ids(&[]));
        assert_eq!(r.saturate(&ids(&[0])).unwrap(), ids(&[0, 1]));
        let id = FinitePartition::identity(ids(&[0, 1, 2]));
        assert_eq!(id.saturate(&ids(&[0, 2])).unwrap(), ids(&[0, 2]));
        assert_eq!(r.saturate(&ids(&[9])).unwrap_err(), RelationError::UnknownId(TriId(9)));
    }

    #[test]
    fn cardinalities() {
        let r = part(&[&[0, 1], &[2]]);
        assert_eq!(r.class_cardinality(TriId(0)).unwrap(), 2);
        assert_eq!(r.class_cardinality(TriId(2)).unwrap(), 1);
        assert!(r.class_cardinality(TriId(5)).is_err());
        let one = FinitePartition::single_class((0..8).map(TriId));
        assert!((0..8).all(|t| one.class_cardinality(TriId(t)).unwrap() == 8));
    }

    #[test]
    fn fundamental_domains() {
        let r = part(&[&[2, 5], &[7]]);
        assert_eq!(r.fundamental_domain(), ids(&[2, 7]));
        let id = FinitePartition::identity(ids(&[1, 4, 6]));
        assert_eq!(id.fundamental_domain(), ids(&[1, 4, 6]));
        let one = part(&[&[3, 4, 5]]);
        assert_eq!(one.fundamental_domain(), ids(&[3]));
        assert_eq!(one.fundamental_domain_by(|a, b| b.cmp(a)), ids(&[5]));
    }

    #[test]
    fn filtration_checks() {
        let u = ids(&[0, 1, 2, 3]);
        let target = part(&[&[0, 1], &[2, 3]]);
        let id = FinitePartition::identity(u.clone());
        let ok = Filtration::new(vec![id.clone(), target.clone()]).unwrap();
        assert!(check_filtration(&ok, &target).unwrap().passed());
        let bad = Filtration::new(vec![target.clone(), id.clone()]).unwrap();
        let rep = check_filtration(&bad, &target).unwrap();
        assert!(!rep.monotone);
        assert_eq!(rep.first_violation, Some(0));
        assert!(Filtration::new(vec![id, part(&[&[0, 1]])]).is_err());
    }

    #[test]
    fn induced_examples() {
        let r = part(&[&[0, 1], &[2, 3]]);
        assert_eq!(r.induced(&ids(&[0, 1, 2, 3])), r);
        assert_eq!(r.induced(&ids(&[])).num_classes(), 0);
        assert_eq!(r.induced(&ids(&[0, 2])), part(&[&[0], &[2]]));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FinitePartition::from_classes(vec![vec![TriId(0)], vec![TriId(0)]]).unwrap_err(),
            RelationError::Overlap(TriId(0))
        );
        assert_eq!(
            FinitePartition::from_classes(vec![Vec::<TriId>::new()]).unwrap_err(),
            RelationError::EmptyClass
        );
    }
}
