//! Simultaneities: monotone sequentiality and its closure, the unrepeatable /
//! precise / monotone-connected predicates, generating and internal times,
//! chronometric processes.

use crate::chronology::{self, Chronologization};
use crate::error::{Error, Result};
use crate::order::{OrientedSet, AUGMENT_TOKEN};
use crate::relation::Relation;
use crate::{fmt_set, Set};

/// A family of subsets of the base, kept sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simultaneity {
    classes: Vec<Set>,
}

impl Simultaneity {
    pub fn new(classes: Vec<Set>) -> Self {
        let mut classes = classes;
        classes.sort();
        classes.dedup();
        Simultaneity { classes }
    }

    pub fn classes(&self) -> &[Set] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Elements of `os` covered by no class; empty iff `y` is a simultaneity on `os`.
pub fn check_simultaneity(os: &OrientedSet, y: &Simultaneity) -> Result<Vec<String>> {
    for x in y.classes.iter().flatten() {
        if !os.contains(x) {
            return Err(Error::ForeignElement(x.clone()));
        }
    }
    Ok(os
        .elements()
        .iter()
        .filter(|x| !y.classes.iter().any(|c| c.contains(*x)))
        .cloned()
        .collect())
}

fn require_simultaneity(os: &OrientedSet, y: &Simultaneity) -> Result<()> {
    match check_simultaneity(os, y)?.first() {
        None => Ok(()),
        Some(x) => Err(Error::NotASimultaneity(format!("{x} is uncovered"))),
    }
}

/// `B` is monotonously sequential to `A`: some `y ∈ B` strictly results from some `x ∈ A`.
pub fn m_seq(os: &OrientedSet, a: &Set, b: &Set) -> bool {
    a.iter().any(|x| b.iter().any(|y| os.strictly_leads(x, y)))
}

/// Transitive closure of [`m_seq`] within a system of sets `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSeqRelation {
    over: Vec<Set>,
    closure: Relation,
}

impl MSeqRelation {
    pub fn over(&self) -> &[Set] {
        &self.over
    }

    /// `over[b]` is transitively monotonously sequential to `over[a]`.
    pub fn holds_idx(&self, a: usize, b: usize) -> bool {
        self.closure.holds(a, b)
    }

    pub fn holds(&self, a: &Set, b: &Set) -> bool {
        match (self.index(a), self.index(b)) {
            (Some(i), Some(j)) => self.closure.holds(i, j),
            _ => false,
        }
    }

    pub fn index(&self, a: &Set) -> Option<usize> {
        self.over.binary_search(a).ok()
    }

    /// All `(A, B)` with `B` after `A`.
    pub fn pairs(&self) -> Vec<(Set, Set)> {
        self.closure
            .pairs()
            .map(|(a, b)| (self.over[a].clone(), self.over[b].clone()))
            .collect()
    }

    /// No two members (equal ones included) follow each other.
    pub fn is_unrepeatable(&self) -> bool {
        let n = self.over.len();
        (0..n).all(|a| (a..n).all(|b| !(self.closure.holds(a, b) && self.closure.holds(b, a))))
    }
}

pub fn m_seq_closure(os: &OrientedSet, q: &[Set]) -> MSeqRelation {
    let mut over = q.to_vec();
    over.sort();
    over.dedup();
    let n = over.len();
    let mut step = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if m_seq(os, &over[a], &over[b]) {
                step.set(a, b);
            }
        }
    }
    MSeqRelation {
        closure: step.transitive_closure(),
        over,
    }
}

pub fn is_unrepeatable(os: &OrientedSet, s: &[Set]) -> bool {
    m_seq_closure(os, s).is_unrepeatable()
}

fn precise_with(os: &OrientedSet, y: &Simultaneity, rel: &MSeqRelation) -> bool {
    os.proper_arrows().iter().all(|(x, z)| {
        y.classes
            .iter()
            .any(|a| a.contains(x) && y.classes.iter().any(|b| b.contains(z) && a != b && rel.holds(a, b)))
    })
}

fn connected_with(y: &Simultaneity, rel: &MSeqRelation) -> bool {
    let n = y.classes.len();
    (0..n).all(|a| (0..n).all(|b| a == b || rel.holds_idx(a, b) || rel.holds_idx(b, a)))
}

/// Every change `y ← x`, `x ≠ y` is fixed by distinct classes ordered by the closure.
pub fn is_precise(os: &OrientedSet, y: &Simultaneity) -> Result<bool> {
    require_simultaneity(os, y)?;
    Ok(precise_with(os, y, &m_seq_closure(os, &y.classes)))
}

/// Any two distinct classes are comparable under the closure.
pub fn is_monotone_connected(os: &OrientedSet, y: &Simultaneity) -> Result<bool> {
    require_simultaneity(os, y)?;
    Ok(connected_with(y, &m_seq_closure(os, &y.classes)))
}

/// Every change `y ← x`, `x ≠ y` has `x` and `y` in distinct classes.
fn separates(os: &OrientedSet, classes: &[Set]) -> bool {
    os.proper_arrows().iter().all(|(x, z)| {
        classes
            .iter()
            .any(|a| a.contains(x) && classes.iter().any(|b| b.contains(z) && a != b))
    })
}

/// The classes as an oriented set: `B ← A` iff `A = B = ∅` or some element of
/// `B` results from some element of `A`. Class `i` gets token `c` + zero-padded `i`.
fn class_oriented_set(os: &OrientedSet, classes: &[Set]) -> OrientedSet {
    let width = classes.len().to_string().len();
    let tokens: Vec<String> = (0..classes.len()).map(|i| format!("c{i:0width$}")).collect();
    let mut rel = Relation::empty(classes.len());
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            let both_empty = a.is_empty() && b.is_empty();
            if both_empty || a.iter().any(|x| b.iter().any(|z| os.leads(x, z))) {
                rel.set(i, j);
            }
        }
    }
    OrientedSet::from_relation(tokens, rel)
}

fn separated_generating_time(os: &OrientedSet, classes: &[Set]) -> Chronologization {
    let cos = class_oriented_set(os, classes);
    let c = chronology::chronologize_any(&cos);
    let psi = c
        .images()
        .iter()
        .map(|s| {
            let token = s.iter().next().expect("quasi one-point");
            classes[cos.index_of(token).expect("class token")].clone()
        })
        .collect();
    Chronologization::new(c.scale().to_vec(), psi).expect("scale reused")
}

/// A time whose family of images is exactly `y`.
pub fn generating_time(os: &OrientedSet, y: &Simultaneity) -> Result<Chronologization> {
    require_simultaneity(os, y)?;
    if separates(os, &y.classes) {
        return Ok(separated_generating_time(os, &y.classes));
    }
    // Adjoin a fresh element with only its reflexive arrow and duplicate every
    // class holding an internal change with that element added; the enlarged
    // family separates, and intersecting with the base recovers `y`.
    let mut elems = os.element_set();
    elems.insert(AUGMENT_TOKEN.to_string());
    let aug = OrientedSet::build(elems, os.arrows(), true)?;
    let mut classes = y.classes.clone();
    for b in &y.classes {
        let internal = b.iter().any(|x| b.iter().any(|z| x != z && os.leads(x, z)));
        if internal {
            let mut bt = b.clone();
            bt.insert(AUGMENT_TOKEN.to_string());
            classes.push(bt);
        }
    }
    classes.sort();
    let c = separated_generating_time(&aug, &classes);
    chronology::restrict_time(os, &aug, &c)
}

/// The classes ordered by the closure, one moment per class, `ψ(t) = t`.
/// Requires a precise, unrepeatable, monotone-connected simultaneity.
pub fn internal_time(os: &OrientedSet, y: &Simultaneity) -> Result<Chronologization> {
    require_simultaneity(os, y)?;
    let rel = m_seq_closure(os, &y.classes);
    if !precise_with(os, y, &rel) {
        return Err(Error::PreconditionFailed("is_precise".into()));
    }
    if !rel.is_unrepeatable() {
        return Err(Error::PreconditionFailed("is_unrepeatable".into()));
    }
    if !connected_with(y, &rel) {
        return Err(Error::PreconditionFailed("is_monotone_connected".into()));
    }
    let n = y.classes.len();
    let mut ranked: Vec<(usize, usize)> = (0..n)
        .map(|b| ((0..n).filter(|&a| rel.holds_idx(a, b)).count(), b))
        .collect();
    ranked.sort();
    if ranked.iter().enumerate().any(|(i, &(r, _))| r != i) {
        return Err(Error::NotLinear);
    }
    let order: Vec<usize> = ranked.into_iter().map(|(_, b)| b).collect();
    Chronologization::new(
        order.iter().map(|&b| fmt_set(&y.classes[b])).collect(),
        order.iter().map(|&b| y.classes[b].clone()).collect(),
    )
}

/// `h(t) ⊆ ψ(t)` and `t < τ` iff `h(τ)` follows `h(t)` within `h(T)` and differs from it.
pub fn is_chronometric_process(os: &OrientedSet, c: &Chronologization, h: &[Set]) -> Result<bool> {
    if h.len() != c.len() {
        return Err(Error::DomainMismatch);
    }
    if h.iter().zip(c.images()).any(|(a, p)| !a.is_subset(p)) {
        return Ok(false);
    }
    let rel = m_seq_closure(os, h);
    let idx: Vec<usize> = h.iter().map(|a| rel.index(a).expect("member")).collect();
    for t in 0..h.len() {
        for tau in 0..h.len() {
            let follows = idx[t] != idx[tau] && rel.holds_idx(idx[t], idx[tau]);
            if (t < tau) != follows {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Default number of candidate processes the exhaustive search may visit.
pub const DEFAULT_PROCESS_BOUND: u128 = 1_000_000;

/// A chronometric process for `c`, if one exists. Times generating a precise,
/// unrepeatable, monotone-connected simultaneity are decided by strict
/// monotonicity; anything else is searched exhaustively.
pub fn find_chronometric_process(os: &OrientedSet, c: &Chronologization, bound: u128) -> Result<Option<Vec<Set>>> {
    let y = chronology::simultaneity_of(os, c)?;
    let rel = m_seq_closure(os, y.classes());
    if precise_with(os, &y, &rel) && rel.is_unrepeatable() && connected_with(&y, &rel) {
        let kind = chronology::time_kind(os, c)?;
        return Ok(kind.strictly_monotone.then(|| c.images().to_vec()));
    }
    search_chronometric_process(os, c, bound)
}

/// Exhaustive search over all sub-assignments `h(t) ⊆ ψ(t)` in mixed-radix order.
pub fn search_chronometric_process(os: &OrientedSet, c: &Chronologization, bound: u128) -> Result<Option<Vec<Set>>> {
    let images: Vec<Vec<String>> = c.images().iter().map(|s| s.iter().cloned().collect()).collect();
    let mut space: u128 = 1;
    for img in &images {
        space = space.saturating_mul(1u128 << img.len().min(127));
        if space > bound {
            return Err(Error::SearchSpaceTooLarge(bound));
        }
    }
    let mut masks = vec![0u64; images.len()];
    loop {
        let h: Vec<Set> = images
            .iter()
            .zip(&masks)
            .map(|(img, &m)| {
                img.iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        if is_chronometric_process(os, c, &h)? {
            return Ok(Some(h));
        }
        let mut i = 0;
        loop {
            if i == masks.len() {
                return Ok(None);
            }
            masks[i] += 1;
            if masks[i] < 1u64 << images[i].len() {
                break;
            }
            masks[i] = 0;
            i += 1;
        }
    }
}
