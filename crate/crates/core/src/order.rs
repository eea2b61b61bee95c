//! Finite oriented sets: a nonempty base with a reflexive relation `y ← x`
//! ("y results from x"), plus chains, transitive sets and classification.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::Set;

/// Token adjoined by the generating-time construction; never valid in user input.
pub const AUGMENT_TOKEN: &str = "~aug";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSet {
    elements: Vec<String>,
    index: BTreeMap<String, usize>,
    rel: Relation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyFlags {
    pub chain_oriented: bool,
    pub cyclic: bool,
    pub anti_cyclical: bool,
}

impl OrientedSet {
    /// Builds an oriented set from `(from, to)` arrows, each meaning `to ← from`.
    pub fn new<I, A>(elements: I, arrows: A, auto_reflexive: bool) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<String>,
        A: IntoIterator<Item = (String, String)>,
    {
        let elems: BTreeSet<String> = elements.into_iter().map(Into::into).collect();
        for e in &elems {
            if e.is_empty() {
                return Err(Error::EmptyToken);
            }
            if e == AUGMENT_TOKEN {
                return Err(Error::ReservedToken(e.clone()));
            }
        }
        Self::build(elems, arrows, auto_reflexive)
    }

    pub(crate) fn build<A>(elems: BTreeSet<String>, arrows: A, auto_reflexive: bool) -> Result<Self>
    where
        A: IntoIterator<Item = (String, String)>,
    {
        if elems.is_empty() {
            return Err(Error::EmptyBase);
        }
        let elements: Vec<String> = elems.into_iter().collect();
        let index: BTreeMap<String, usize> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut rel = Relation::empty(elements.len());
        for (from, to) in arrows {
            match (index.get(&from), index.get(&to)) {
                (Some(&a), Some(&b)) => rel.set(a, b),
                _ => return Err(Error::DanglingArrow(from, to)),
            }
        }
        for (i, e) in elements.iter().enumerate() {
            if !rel.holds(i, i) {
                if auto_reflexive {
                    rel.set(i, i);
                } else {
                    return Err(Error::MissingReflexive(e.clone()));
                }
            }
        }
        Ok(OrientedSet { elements, index, rel })
    }

    pub(crate) fn from_relation(elements: Vec<String>, rel: Relation) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(rel.is_reflexive());
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        OrientedSet { elements, index, rel }
    }

    /// Elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_set(&self) -> Set {
        self.elements.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &str) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &str) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    /// `to ← from`.
    pub fn leads(&self, from: &str, to: &str) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(a), Some(b)) => self.rel.holds(a, b),
            _ => false,
        }
    }

    /// `to ← from` and not `from ← to`.
    pub fn strictly_leads(&self, from: &str, to: &str) -> bool {
        self.leads(from, to) && !self.leads(to, from)
    }

    /// All arrows as `(from, to)`, reflexive ones included, sorted.
    pub fn arrows(&self) -> Vec<(String, String)> {
        self.rel
            .pairs()
            .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }

    /// Arrows with `from != to`, sorted.
    pub fn proper_arrows(&self) -> Vec<(String, String)> {
        self.arrows().into_iter().filter(|(a, b)| a != b).collect()
    }

    pub(crate) fn indices(&self, set: &Set) -> Result<Vec<usize>> {
        set.iter()
            .map(|x| self.index_of(x).ok_or_else(|| Error::NotSubset(x.clone())))
            .collect()
    }

    pub(crate) fn names(&self, idx: &[usize]) -> Set {
        idx.iter().map(|&i| self.elements[i].clone()).collect()
    }

    /// The oriented set induced on `subset`.
    pub fn restrict(&self, subset: &Set) -> Result<OrientedSet> {
        if subset.is_empty() {
            return Err(Error::EmptyBase);
        }
        let idx = self.indices(subset)?;
        Ok(OrientedSet::from_relation(
            idx.iter().map(|&i| self.elements[i].clone()).collect(),
            self.rel.restrict(&idx),
        ))
    }

    /// Every element of `self` is in `other` and every arrow of `self` is an arrow of `other`.
    pub fn is_embedded_in(&self, other: &OrientedSet) -> bool {
        self.elements.iter().all(|e| other.contains(e)) && self.arrows().iter().all(|(a, b)| other.leads(a, b))
    }

    fn nonempty_indices(&self, set: &Set) -> Result<Vec<usize>> {
        if set.is_empty() {
            return Err(Error::NotSubset("{}".into()));
        }
        self.indices(set)
    }

    pub fn is_transitive_subset(&self, set: &Set) -> Result<bool> {
        Ok(self.rel.is_transitive_on(&self.nonempty_indices(set)?))
    }

    pub fn is_chain(&self, set: &Set) -> Result<bool> {
        Ok(self.rel.is_chain(&self.nonempty_indices(set)?))
    }

    /// Every nonempty chain in (size, lexicographic) order, truncated at `limit`.
    /// With `exhaustive`, exceeding the limit is an error instead.
    pub fn all_chains(&self, limit: usize, exhaustive: bool) -> Result<Vec<Set>> {
        let to_sets = |v: Vec<Vec<usize>>| v.iter().map(|c| self.names(c)).collect();
        match self.rel.chains(limit) {
            Ok(v) => Ok(to_sets(v)),
            Err(_) if exhaustive => Err(Error::LimitExceeded(limit)),
            Err(_) => {
                // Truncation must follow canonical order, so enumerate fully first.
                let mut v = self.rel.chains(usize::MAX).unwrap_or_default();
                v.truncate(limit);
                Ok(to_sets(v))
            }
        }
    }

    pub fn maximal_chains(&self) -> Vec<Set> {
        self.rel.maximal_chains().iter().map(|c| self.names(c)).collect()
    }

    pub fn maximal_transitive_sets(&self) -> Vec<Set> {
        self.rel
            .maximal_transitive_sets()
            .iter()
            .map(|c| self.names(c))
            .collect()
    }

    pub fn extend_chain_to_maximal(&self, chain: &Set) -> Result<Set> {
        let idx = self.nonempty_indices(chain)?;
        if !self.rel.is_chain(&idx) {
            return Err(Error::NotAChain);
        }
        Ok(self.names(&self.rel.extend_chain(&idx)))
    }

    pub fn classify(&self) -> ClassifyFlags {
        let n = self.len();
        let all: Vec<usize> = (0..n).collect();
        let mut cyclic = true;
        let mut anti = true;
        for a in 0..n {
            for b in 0..n {
                let mutual = self.rel.holds(a, b) && self.rel.holds(b, a);
                cyclic &= mutual;
                if a != b && mutual {
                    anti = false;
                }
            }
        }
        ClassifyFlags {
            chain_oriented: self.rel.is_chain(&all),
            cyclic,
            anti_cyclical: anti,
        }
    }

    /// Classes of mutual reachability (`x ← y` and `y ← x`) of a chain oriented
    /// set, listed in the order the relation induces on them.
    pub fn cyclic_equivalence_partition(&self) -> Result<Vec<Set>> {
        if !self.classify().chain_oriented {
            return Err(Error::NotChainOriented);
        }
        Ok(self.cyclic_classes_idx().iter().map(|c| self.names(c)).collect())
    }

    /// Index form of [`cyclic_equivalence_partition`]; assumes a chain oriented set.
    pub(crate) fn cyclic_classes_idx(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut class_of: Vec<Option<usize>> = vec![None; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a].is_some() {
                continue;
            }
            let members: Vec<usize> = (a..n)
                .filter(|&b| self.rel.holds(a, b) && self.rel.holds(b, a))
                .collect();
            for &b in &members {
                class_of[b] = Some(classes.len());
            }
            classes.push(members);
        }
        // A class is later than every class it strictly results from.
        let rank = |c: &Vec<usize>| {
            classes
                .iter()
                .filter(|d| d[0] != c[0] && self.rel.holds(d[0], c[0]))
                .count()
        };
        let mut ranked: Vec<(usize, Vec<usize>)> = classes.iter().map(|c| (rank(c), c.clone())).collect();
        ranked.sort();
        ranked.into_iter().map(|(_, c)| c).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[&str]) -> Set {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn construction_adds_or_demands_reflexive_pairs() {
        let f1 = fixtures::f1();
        assert_eq!(f1.arrows().len(), 3);
        assert!(f1.leads("x1", "x2"));
        let single = OrientedSet::new(["a"], [], true).unwrap();
        assert_eq!(single.arrows(), vec![("a".to_string(), "a".to_string())]);
        let err = OrientedSet::new(["a", "b"], [("a".into(), "b".into())], false).unwrap_err();
        assert_eq!(err, Error::MissingReflexive("a".into()));
        let err = OrientedSet::new(["a"], [("a".into(), "z".into())], true).unwrap_err();
        assert!(matches!(err, Error::DanglingArrow(..)));
        assert_eq!(
            OrientedSet::new(Vec::<String>::new(), [], true).unwrap_err(),
            Error::EmptyBase
        );
        assert!(matches!(
            OrientedSet::new([AUGMENT_TOKEN], [], true).unwrap_err(),
            Error::ReservedToken(_)
        ));
    }

    #[test]
    fn transitive_and_chain_predicates() {
        let f2 = fixtures::f2();
        let f3 = fixtures::f3();
        assert!(f2.is_transitive_subset(&set(&["x1", "x2"])).unwrap());
        assert!(f3.is_transitive_subset(&set(&["1", "3", "4"])).unwrap());
        assert!(f3.is_chain(&set(&["1", "3"])).unwrap());
        assert!(!f3.is_chain(&set(&["1", "2"])).unwrap());
        assert!(f3.is_chain(&set(&["2"])).unwrap());
        assert!(f3.is_chain(&set(&["9"])).is_err());
    }

    #[test]
    fn chain_enumeration() {
        let f1 = fixtures::f1();
        assert_eq!(
            f1.all_chains(10, true).unwrap(),
            vec![set(&["x1"]), set(&["x2"]), set(&["x1", "x2"])]
        );
        let f3 = fixtures::f3();
        let chains = f3.all_chains(100, true).unwrap();
        assert_eq!(chains.len(), 6);
        assert!(chains.contains(&set(&["1", "3"])) && chains.contains(&set(&["2", "4"])));
        assert_eq!(f3.all_chains(3, false).unwrap().len(), 3);
        assert_eq!(f3.all_chains(3, true).unwrap_err(), Error::LimitExceeded(3));
        let single = OrientedSet::new(["a"], [], true).unwrap();
        assert_eq!(single.all_chains(10, true).unwrap(), vec![set(&["a"])]);
    }

    #[test]
    fn maximal_chains_and_transitive_sets() {
        assert_eq!(
            fixtures::f3().maximal_chains(),
            vec![set(&["1", "3"]), set(&["2", "4"])]
        );
        assert_eq!(fixtures::f1().maximal_chains(), vec![set(&["x1", "x2"])]);
        let full = OrientedSet::new(
            ["a", "b", "c"],
            ["a", "b", "c"]
                .iter()
                .flat_map(|x| ["a", "b", "c"].iter().map(move |y| (x.to_string(), y.to_string()))),
            true,
        )
        .unwrap();
        assert_eq!(full.maximal_chains(), vec![set(&["a", "b", "c"])]);
        assert_eq!(
            fixtures::f3().maximal_transitive_sets(),
            vec![set(&["1", "2", "3", "4"])]
        );
        assert_eq!(
            fixtures::f4().maximal_transitive_sets(),
            vec![set(&["a", "b"]), set(&["a", "c"]), set(&["b", "c"])]
        );
        assert_eq!(single_os().maximal_transitive_sets(), vec![set(&["a"])]);
    }

    fn single_os() -> OrientedSet {
        OrientedSet::new(["a"], [], true).unwrap()
    }

    #[test]
    fn chain_extension() {
        let f3 = fixtures::f3();
        assert_eq!(f3.extend_chain_to_maximal(&set(&["1"])).unwrap(), set(&["1", "3"]));
        assert_eq!(f3.extend_chain_to_maximal(&set(&["2", "4"])).unwrap(), set(&["2", "4"]));
        assert_eq!(
            fixtures::f1().extend_chain_to_maximal(&set(&["x2"])).unwrap(),
            set(&["x1", "x2"])
        );
        assert_eq!(
            f3.extend_chain_to_maximal(&set(&["1", "2"])).unwrap_err(),
            Error::NotAChain
        );
    }

    #[test]
    fn classification() {
        let flags = |os: &OrientedSet| {
            let c = os.classify();
            (c.chain_oriented, c.cyclic, c.anti_cyclical)
        };
        assert_eq!(flags(&fixtures::f3()), (false, false, true));
        assert_eq!(flags(&fixtures::two_cycle()), (true, true, false));
        assert_eq!(flags(&fixtures::f1()), (true, false, true));
    }

    #[test]
    fn cyclic_partition_orders_classes() {
        assert_eq!(
            fixtures::f1().cyclic_equivalence_partition().unwrap(),
            vec![set(&["x1"]), set(&["x2"])]
        );
        assert_eq!(
            fixtures::two_cycle().cyclic_equivalence_partition().unwrap(),
            vec![set(&["a", "b"])]
        );
        let abc = OrientedSet::new(
            ["a", "b", "c"],
            [("c", "b"), ("b", "a"), ("c", "a")]
                .iter()
                .map(|(x, y)| (x.to_string(), y.to_string())),
            true,
        )
        .unwrap();
        assert_eq!(
            abc.cyclic_equivalence_partition().unwrap(),
            vec![set(&["c"]), set(&["b"]), set(&["a"])]
        );
        assert_eq!(
            fixtures::f3().cyclic_equivalence_partition().unwrap_err(),
            Error::NotChainOriented
        );
    }
}
