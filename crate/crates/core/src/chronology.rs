//! Times on oriented sets: validation, kind flags, the chronologization
//! constructions, equivalence, restriction and rescaling.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::order::OrientedSet;
use crate::simultaneity::Simultaneity;
use crate::Set;

/// A finite linear scale (sequence order is the time order) and the map `ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chronologization {
    scale: Vec<String>,
    psi: Vec<Set>,
}

impl Chronologization {
    pub fn new(scale: Vec<String>, psi: Vec<Set>) -> Result<Self> {
        if scale.len() != psi.len() {
            return Err(Error::BadParams(format!(
                "{} moments but {} images",
                scale.len(),
                psi.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for t in &scale {
            if t.is_empty() {
                return Err(Error::EmptyToken);
            }
            if !seen.insert(t) {
                return Err(Error::DuplicateTime(t.clone()));
            }
        }
        Ok(Chronologization { scale, psi })
    }

    pub fn scale(&self) -> &[String] {
        &self.scale
    }

    /// Images in scale order.
    pub fn images(&self) -> &[Set] {
        &self.psi
    }

    pub fn len(&self) -> usize {
        self.scale.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scale.is_empty()
    }

    pub fn position(&self, t: &str) -> Option<usize> {
        self.scale.iter().position(|s| s == t)
    }

    pub fn psi(&self, t: &str) -> Option<&Set> {
        self.position(t).map(|i| &self.psi[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &Set)> {
        self.scale.iter().zip(self.psi.iter())
    }

    /// Union of all images.
    pub fn support(&self) -> Set {
        self.psi.iter().flatten().cloned().collect()
    }

    fn check_elements(&self, os: &OrientedSet) -> Result<()> {
        for x in self.psi.iter().flatten() {
            if !os.contains(x) {
                return Err(Error::ForeignElement(x.clone()));
            }
        }
        Ok(())
    }

    fn first_last(&self, x: &str) -> Option<(usize, usize)> {
        let first = self.psi.iter().position(|s| s.contains(x))?;
        let last = self.psi.iter().rposition(|s| s.contains(x))?;
        Some((first, last))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TimeViolation {
    Uncovered(String),
    NotSeparated { from: String, to: String },
}

impl fmt::Display for TimeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeViolation::Uncovered(x) => write!(f, "element {x} appears at no moment"),
            TimeViolation::NotSeparated { from, to } => {
                write!(f, "no moment of {from} precedes a moment of {to}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TimeKindFlags {
    pub quasi_one_point: bool,
    pub one_point: bool,
    pub monotone: bool,
    pub incessant: bool,
    pub strictly_monotone: bool,
}

/// Lists coverage and separation failures; empty iff `c` is a time on `os`.
pub fn check_time(os: &OrientedSet, c: &Chronologization) -> Result<Vec<TimeViolation>> {
    c.check_elements(os)?;
    let spans: Vec<Option<(usize, usize)>> = os.elements().iter().map(|x| c.first_last(x)).collect();
    let mut out = Vec::new();
    for (i, x) in os.elements().iter().enumerate() {
        if spans[i].is_none() {
            out.push(TimeViolation::Uncovered(x.clone()));
        }
    }
    for (a, b) in os.relation().pairs() {
        if a == b {
            continue;
        }
        // Separated iff the first moment of the source precedes the last moment of the result.
        let ok = matches!((spans[a], spans[b]), (Some((fa, _)), Some((_, lb))) if fa < lb);
        if !ok {
            out.push(TimeViolation::NotSeparated {
                from: os.elements()[a].clone(),
                to: os.elements()[b].clone(),
            });
        }
    }
    Ok(out)
}

pub fn is_time(os: &OrientedSet, c: &Chronologization) -> Result<bool> {
    Ok(check_time(os, c)?.is_empty())
}

fn require_time(os: &OrientedSet, c: &Chronologization) -> Result<()> {
    let v = check_time(os, c)?;
    match v.first() {
        None => Ok(()),
        Some(first) => Err(Error::NotATime(first.to_string())),
    }
}

pub fn time_kind(os: &OrientedSet, c: &Chronologization) -> Result<TimeKindFlags> {
    require_time(os, c)?;
    let psi = c.images();
    let quasi_one_point = psi.iter().all(|s| s.len() == 1);
    let mut forward = true;
    let mut monotone = true;
    for (t1, s1) in psi.iter().enumerate() {
        for (t2, s2) in psi.iter().enumerate() {
            for x1 in s1 {
                for x2 in s2 {
                    if t1 <= t2 && !os.leads(x1, x2) {
                        forward = false;
                    }
                    if os.strictly_leads(x1, x2) && t1 >= t2 {
                        monotone = false;
                    }
                }
            }
        }
    }
    let incessant = psi.windows(2).all(|w| w[0] != w[1]);
    Ok(TimeKindFlags {
        quasi_one_point,
        one_point: quasi_one_point && forward,
        monotone,
        incessant,
        strictly_monotone: monotone && incessant,
    })
}

/// Distinct moments carry distinct images.
pub fn is_unrepeatable_time(c: &Chronologization) -> bool {
    let distinct: BTreeSet<&Set> = c.images().iter().collect();
    distinct.len() == c.len()
}

/// `k` moments, each carrying the whole base.
pub fn trivial_chronologization(os: &OrientedSet, k: usize) -> Result<Chronologization> {
    if k < 2 {
        return Err(Error::BadSize(k));
    }
    Chronologization::new((1..=k).map(|i| i.to_string()).collect(), vec![os.element_set(); k])
}

fn cyclic_scale(class_rank: usize, members: &[String]) -> (Vec<String>, Vec<Set>) {
    let mut scale = Vec::new();
    let mut psi = Vec::new();
    for copy in 1..=2 {
        for x in members {
            scale.push(format!("c:{class_rank}:{copy}:{x}"));
            psi.push(Set::from([x.clone()]));
        }
    }
    (scale, psi)
}

/// Two passes over the elements in canonical order, one element per moment.
pub fn chronologize_cyclic(os: &OrientedSet) -> Result<Chronologization> {
    if !os.classify().cyclic {
        return Err(Error::NotCyclic);
    }
    let (scale, psi) = cyclic_scale(0, os.elements());
    Chronologization::new(scale, psi)
}

/// Each class of mutual reachability is chronologized cyclically and the
/// blocks are laid out in the order of the classes.
pub fn chronologize_chain(os: &OrientedSet) -> Result<Chronologization> {
    let classes = os.cyclic_equivalence_partition()?;
    let mut scale = Vec::new();
    let mut psi = Vec::new();
    for (rank, class) in classes.iter().enumerate() {
        let members: Vec<String> = class.iter().cloned().collect();
        let (s, p) = cyclic_scale(rank, &members);
        scale.extend(s);
        psi.extend(p);
    }
    Chronologization::new(scale, psi)
}

/// Concatenates chain chronologizations of every maximal chain, in canonical order.
pub fn chronologize_any(os: &OrientedSet) -> Chronologization {
    let mut scale = Vec::new();
    let mut psi = Vec::new();
    for (rank, chain) in os.maximal_chains().iter().enumerate() {
        let sub = os.restrict(chain).expect("maximal chains are nonempty subsets");
        let c = chronologize_chain(&sub).expect("a maximal chain is chain oriented");
        scale.extend(c.scale.into_iter().map(|t| format!("l{rank}:{t}")));
        psi.extend(c.psi);
    }
    Chronologization::new(scale, psi).expect("chain prefixes keep moments distinct")
}

/// A triple `x1, x2, x3` with `x2 ← x1` and `x3 ← x2` strict and `x1 ← x3`,
/// `x1 ≠ x3`; its presence rules out every monotone time.
pub fn monotone_obstruction(os: &OrientedSet) -> Option<(String, String, String)> {
    let r = os.relation();
    let n = os.len();
    for a in 0..n {
        for b in 0..n {
            if !r.strict(a, b) {
                continue;
            }
            for c in 0..n {
                if c != a && r.strict(b, c) && r.holds(c, a) {
                    let e = os.elements();
                    return Some((e[a].clone(), e[b].clone(), e[c].clone()));
                }
            }
        }
    }
    None
}

/// Finite scales of equal length are uniquely order isomorphic, so equivalence
/// is pointwise equality of images by rank.
pub fn chronologizations_equivalent(c1: &Chronologization, c2: &Chronologization) -> bool {
    c1.psi == c2.psi
}

/// `ψ'(t) = ψ(t) ∩ Bs(sub)` for `sub` embedded in `os`.
pub fn restrict_time(sub: &OrientedSet, os: &OrientedSet, c: &Chronologization) -> Result<Chronologization> {
    if !sub.is_embedded_in(os) {
        return Err(Error::NotEmbedded);
    }
    c.check_elements(os)?;
    let keep = sub.element_set();
    Chronologization::new(
        c.scale.clone(),
        c.psi.iter().map(|s| s.intersection(&keep).cloned().collect()).collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rescale {
    /// Keep only these moments; every dropped moment must carry `∅`.
    Trim(BTreeSet<String>),
    /// Move to a larger scale containing the current one in order; new moments carry `∅`.
    Embed(Vec<String>),
}

pub fn rescale_time(c: &Chronologization, mode: &Rescale) -> Result<Chronologization> {
    match mode {
        Rescale::Trim(keep) => {
            if keep.is_empty() {
                return Err(Error::BadParams("trim keeps no moment".into()));
            }
            if let Some(t) = keep.iter().find(|t| c.position(t).is_none()) {
                return Err(Error::UnknownTime(t.clone()));
            }
            let mut scale = Vec::new();
            let mut psi = Vec::new();
            for (t, s) in c.entries() {
                if keep.contains(t) {
                    scale.push(t.clone());
                    psi.push(s.clone());
                } else if !s.is_empty() {
                    return Err(Error::TrimDropsNonEmpty(t.clone()));
                }
            }
            Chronologization::new(scale, psi)
        }
        Rescale::Embed(target) => {
            let mut it = c.entries().peekable();
            let mut psi = Vec::with_capacity(target.len());
            for t in target {
                match it.peek() {
                    Some((s, img)) if *s == t => {
                        psi.push((*img).clone());
                        it.next();
                    }
                    _ => psi.push(Set::new()),
                }
            }
            if it.next().is_some() {
                return Err(Error::NotAnEmbedding);
            }
            Chronologization::new(target.clone(), psi)
        }
    }
}

/// The family of images of a time, duplicates collapsed.
pub fn simultaneity_of(os: &OrientedSet, c: &Chronologization) -> Result<Simultaneity> {
    require_time(os, c)?;
    Ok(Simultaneity::new(c.psi.clone()))
}
