//! Primitive and basic changeable sets: elementary-time states, trajectory
//! systems, bases of elementary processes, fate lines, changeable systems and
//! images under transforming maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::chronology::{self, Chronologization};
use crate::error::{Error, Result};
use crate::order::OrientedSet;
use crate::relation::Relation;
use crate::Set;

/// Elementary-time state: an element present at a moment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ets {
    pub time: String,
    pub elem: String,
}

impl Ets {
    pub fn new(time: impl Into<String>, elem: impl Into<String>) -> Self {
        Ets {
            time: time.into(),
            elem: elem.into(),
        }
    }
}

impl fmt::Display for Ets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.time, self.elem)
    }
}

/// A changeable system: a set of elementary-time states.
pub type System = BTreeSet<Ets>;

/// An oriented set together with a time on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pcs {
    os: OrientedSet,
    chron: Chronologization,
}

impl Pcs {
    pub fn new(os: OrientedSet, chron: Chronologization) -> Result<Self> {
        if let Some(v) = chronology::check_time(&os, &chron)?.first() {
            return Err(Error::NotATime(v.to_string()));
        }
        Ok(Pcs { os, chron })
    }

    pub fn os(&self) -> &OrientedSet {
        &self.os
    }

    pub fn chron(&self) -> &Chronologization {
        &self.chron
    }

    pub fn time_rank(&self, t: &str) -> Option<usize> {
        self.chron.position(t)
    }

    /// All elementary-time states, by moment then element.
    pub fn ets(&self) -> Vec<Ets> {
        self.chron
            .entries()
            .flat_map(|(t, s)| s.iter().map(move |x| Ets::new(t.clone(), x.clone())))
            .collect()
    }

    pub fn contains(&self, w: &Ets) -> bool {
        self.chron.psi(&w.time).is_some_and(|s| s.contains(&w.elem))
    }

    fn formal_idx(&self, a: &Ets, b: &Ets) -> bool {
        a == b || (self.os.leads(&a.elem, &b.elem) && self.rank(a) < self.rank(b))
    }

    fn rank(&self, w: &Ets) -> usize {
        self.time_rank(&w.time).expect("state of this structure")
    }

    /// The formal sequence relation on [`Pcs::ets`].
    pub fn formal_relation(&self) -> Relation {
        let states = self.ets();
        let mut r = Relation::empty(states.len());
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                if self.formal_idx(a, b) {
                    r.set(i, j);
                }
            }
        }
        r
    }
}

pub fn ets_of(p: &Pcs) -> Vec<Ets> {
    p.ets()
}

fn require_state(p: &Pcs, w: &Ets) -> Result<()> {
    if p.contains(w) {
        Ok(())
    } else {
        Err(Error::UnknownState(w.time.clone(), w.elem.clone()))
    }
}

/// `ω1 = ω2`, or `bs(ω2) ← bs(ω1)` with `tm(ω1) < tm(ω2)`.
pub fn formally_sequential(p: &Pcs, w1: &Ets, w2: &Ets) -> Result<bool> {
    require_state(p, w1)?;
    require_state(p, w2)?;
    Ok(p.formal_idx(w1, w2))
}

/// Abstract trajectory: a partial map from moments to elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub id: String,
    pub points: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectorySystem {
    scale: Vec<String>,
    universe: Set,
    trajectories: Vec<Trajectory>,
}

impl TrajectorySystem {
    pub fn new(scale: Vec<String>, universe: Set, trajectories: Vec<Trajectory>) -> Result<Self> {
        // Reuse the scale validation of chronologizations.
        Chronologization::new(scale.clone(), vec![Set::new(); scale.len()])?;
        let mut ids = BTreeSet::new();
        let mut covered = Set::new();
        for r in &trajectories {
            if !ids.insert(&r.id) {
                return Err(Error::InvalidTrajectory(format!("duplicate id {}", r.id)));
            }
            if r.points.is_empty() {
                return Err(Error::InvalidTrajectory(format!("{} has an empty domain", r.id)));
            }
            for (t, x) in &r.points {
                if !scale.contains(t) {
                    return Err(Error::InvalidTrajectory(format!("{}: unknown moment {t}", r.id)));
                }
                if !universe.contains(x) {
                    return Err(Error::InvalidTrajectory(format!("{}: {x} outside the universe", r.id)));
                }
                covered.insert(x.clone());
            }
        }
        if let Some(x) = universe.difference(&covered).next() {
            return Err(Error::CoverageViolation(format!("{x} lies on no trajectory")));
        }
        if universe.is_empty() {
            return Err(Error::EmptyBase);
        }
        Ok(TrajectorySystem {
            scale,
            universe,
            trajectories,
        })
    }

    pub fn scale(&self) -> &[String] {
        &self.scale
    }

    pub fn universe(&self) -> &Set {
        &self.universe
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    /// Points of `r` in scale order.
    fn ordered(&self, r: &Trajectory) -> Vec<(usize, Ets)> {
        self.scale
            .iter()
            .enumerate()
            .filter_map(|(i, t)| r.points.get(t).map(|x| (i, Ets::new(t.clone(), x.clone()))))
            .collect()
    }
}

/// The primitive changeable set traced by the trajectories: `y ← x` iff some
/// trajectory visits `x` no later than `y`; `ψ(t)` holds every `r(t)`.
pub fn atp_from_trajectories(ts: &TrajectorySystem) -> Result<Pcs> {
    let mut arrows = Vec::new();
    for r in &ts.trajectories {
        let pts = ts.ordered(r);
        for (i, (_, a)) in pts.iter().enumerate() {
            for (_, b) in &pts[i..] {
                arrows.push((a.elem.clone(), b.elem.clone()));
            }
        }
    }
    let os = OrientedSet::new(ts.universe.iter().cloned(), arrows, true)?;
    let psi = ts
        .scale
        .iter()
        .map(|t| {
            ts.trajectories
                .iter()
                .filter_map(|r| r.points.get(t).cloned())
                .collect()
        })
        .collect();
    let chron = Chronologization::new(ts.scale.clone(), psi)?;
    Pcs::new(os, chron).map_err(|e| Error::CoverageViolation(e.to_string()))
}

/// A primitive changeable set with a base of elementary processes on its states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bcs {
    pcs: Pcs,
    states: Vec<Ets>,
    rel: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseViolation {
    /// Axiom 1: a state lacks its reflexive pair.
    NotReflexive(Ets),
    /// Axiom 2: a pair outside the formal sequence relation.
    NotFormal(Ets, Ets),
    /// Axiom 3: an element-level change with no witnessing pair of states.
    Unrealized(String, String),
}

impl BaseViolation {
    pub fn axiom(&self) -> u8 {
        match self {
            BaseViolation::NotReflexive(_) => 1,
            BaseViolation::NotFormal(..) => 2,
            BaseViolation::Unrealized(..) => 3,
        }
    }
}

impl fmt::Display for BaseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseViolation::NotReflexive(w) => write!(f, "axiom 1: {w} is not related to itself"),
            BaseViolation::NotFormal(a, b) => {
                write!(f, "axiom 2: pair {a} -> {b} is not formally sequential")
            }
            BaseViolation::Unrealized(x, y) => {
                write!(f, "axiom 3: change {x} -> {y} has no witnessing pair of states")
            }
        }
    }
}

fn index_pairs(p: &Pcs, states: &[Ets], pairs: &[(Ets, Ets)]) -> Result<Relation> {
    let pos: BTreeMap<&Ets, usize> = states.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut r = Relation::empty(states.len());
    for (a, b) in pairs {
        require_state(p, a)?;
        require_state(p, b)?;
        r.set(pos[a], pos[b]);
    }
    Ok(r)
}

fn base_violations(p: &Pcs, states: &[Ets], r: &Relation) -> Vec<BaseViolation> {
    let mut out = Vec::new();
    for (i, w) in states.iter().enumerate() {
        if !r.holds(i, i) {
            out.push(BaseViolation::NotReflexive(w.clone()));
        }
    }
    for (a, b) in r.pairs() {
        if !p.formal_idx(&states[a], &states[b]) {
            out.push(BaseViolation::NotFormal(states[a].clone(), states[b].clone()));
        }
    }
    let os = p.os();
    for (x, y) in os.proper_arrows() {
        let realized = r.pairs().any(|(a, b)| states[a].elem == x && states[b].elem == y);
        if !realized {
            out.push(BaseViolation::Unrealized(x, y));
        }
    }
    out
}

/// Lists the violated axioms of a candidate base of elementary processes.
pub fn check_base(p: &Pcs, pairs: &[(Ets, Ets)]) -> Result<Vec<BaseViolation>> {
    let states = p.ets();
    let r = index_pairs(p, &states, pairs)?;
    Ok(base_violations(p, &states, &r))
}

fn assemble(p: Pcs, states: Vec<Ets>, rel: Relation) -> Result<Bcs> {
    let v = base_violations(&p, &states, &rel);
    if !v.is_empty() {
        let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidBase(msgs.join("; ")));
    }
    Ok(Bcs { pcs: p, states, rel })
}

pub fn make_basic(p: Pcs, pairs: &[(Ets, Ets)]) -> Result<Bcs> {
    let states = p.ets();
    let rel = index_pairs(&p, &states, pairs)?;
    assemble(p, states, rel)
}

/// The base made of every formally sequential pair.
pub fn basic_from_formal(p: Pcs) -> Bcs {
    let states = p.ets();
    let rel = p.formal_relation();
    Bcs { pcs: p, states, rel }
}

impl Bcs {
    pub fn pcs(&self) -> &Pcs {
        &self.pcs
    }

    pub fn os(&self) -> &OrientedSet {
        &self.pcs.os
    }

    pub fn chron(&self) -> &Chronologization {
        &self.pcs.chron
    }

    /// `BS(B)`, by moment then element.
    pub fn states(&self) -> &[Ets] {
        &self.states
    }

    pub fn state_set(&self) -> System {
        self.states.iter().cloned().collect()
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn index_of(&self, w: &Ets) -> Option<usize> {
        let rank = self.pcs.time_rank(&w.time)?;
        self.states
            .binary_search_by(|s| {
                let sr = self.pcs.time_rank(&s.time).expect("own state");
                sr.cmp(&rank).then_with(|| s.elem.cmp(&w.elem))
            })
            .ok()
    }

    fn require(&self, w: &Ets) -> Result<usize> {
        self.index_of(w)
            .ok_or_else(|| Error::UnknownState(w.time.clone(), w.elem.clone()))
    }

    /// `to ← from` at the level of elementary-time states.
    pub fn leads(&self, from: &Ets, to: &Ets) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(a), Some(b)) => self.rel.holds(a, b),
            _ => false,
        }
    }

    /// State-level arrows `(from, to)`, reflexive ones included.
    pub fn arrows(&self) -> Vec<(Ets, Ets)> {
        self.rel
            .pairs()
            .map(|(a, b)| (self.states[a].clone(), self.states[b].clone()))
            .collect()
    }

    pub fn proper_arrows(&self) -> Vec<(Ets, Ets)> {
        self.arrows().into_iter().filter(|(a, b)| a != b).collect()
    }

    pub(crate) fn time_rank(&self, w: &Ets) -> usize {
        self.pcs.rank(w)
    }
}

/// Maximal chains of the state-level relation, each in time order.
pub fn fate_lines(b: &Bcs) -> Vec<Vec<Ets>> {
    b.rel
        .maximal_chains()
        .into_iter()
        .map(|c| c.into_iter().map(|i| b.states[i].clone()).collect())
        .collect()
}

pub fn united_by_fate(b: &Bcs, w1: &Ets, w2: &Ets) -> Result<bool> {
    let i = b.require(w1)?;
    let j = b.require(w2)?;
    Ok(b.rel.holds(i, j) || b.rel.holds(j, i))
}

/// Trajectory system whose trajectories are the fate lines of `b`, ids `L0, L1, ..`.
pub fn fate_line_system(b: &Bcs) -> TrajectorySystem {
    let trajectories = fate_lines(b)
        .into_iter()
        .enumerate()
        .map(|(i, line)| Trajectory {
            id: format!("L{i}"),
            points: line.into_iter().map(|w| (w.time, w.elem)).collect(),
        })
        .collect();
    TrajectorySystem::new(b.chron().scale().to_vec(), b.os().element_set(), trajectories)
        .expect("fate lines are trajectories covering the base")
}

/// Rebuilds `b` from its fate lines and compares every component.
pub fn roundtrip_holds(b: &Bcs) -> bool {
    match at_from_trajectories(&fate_line_system(b)) {
        Ok(rebuilt) => rebuilt == *b,
        Err(_) => false,
    }
}

/// The basic changeable set traced by the trajectories: states are the
/// trajectory points and `ω2 ← ω1` iff `tm(ω1) ≤ tm(ω2)` on a common trajectory.
pub fn at_from_trajectories(ts: &TrajectorySystem) -> Result<Bcs> {
    let pcs = atp_from_trajectories(ts)?;
    let states = pcs.ets();
    let pos: BTreeMap<&Ets, usize> = states.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut rel = Relation::empty(states.len());
    for r in &ts.trajectories {
        let pts = ts.ordered(r);
        for (i, (_, a)) in pts.iter().enumerate() {
            for (_, b) in &pts[i..] {
                rel.set(pos[a], pos[b]);
            }
        }
    }
    assemble(pcs, states, rel)
}

/// No other trajectory of the system strictly extends `r`.
pub fn is_maximum_trajectory(ts: &TrajectorySystem, id: &str) -> Result<bool> {
    let r = ts
        .trajectories
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::NotInSystem(id.to_string()))?;
    Ok(!ts
        .trajectories
        .iter()
        .any(|rho| rho.points.len() > r.points.len() && r.points.iter().all(|(t, x)| rho.points.get(t) == Some(x))))
}

/// The process `S~(t) = {x : (t, x) ∈ S}`, aligned with the scale.
pub fn process_of(b: &Bcs, s: &System) -> Result<Vec<Set>> {
    let mut out = vec![Set::new(); b.chron().len()];
    for w in s {
        let i = b
            .index_of(w)
            .ok_or_else(|| Error::ForeignState(w.time.clone(), w.elem.clone()))?;
        out[b.time_rank(&b.states[i])].insert(w.elem.clone());
    }
    Ok(out)
}

/// The unique changeable system whose process is `proc`.
pub fn system_of(b: &Bcs, proc: &[Set]) -> Result<System> {
    if proc.len() != b.chron().len() {
        return Err(Error::NotAProcess(format!(
            "{} values for {} moments",
            proc.len(),
            b.chron().len()
        )));
    }
    let mut out = System::new();
    for ((t, psi), v) in b.chron().entries().zip(proc) {
        if let Some(x) = v.difference(psi).next() {
            return Err(Error::NotAProcess(format!("{x} is not present at {t}")));
        }
        out.extend(v.iter().map(|x| Ets::new(t.clone(), x.clone())));
    }
    Ok(out)
}

pub fn member_at(b: &Bcs, x: &str, t: &str, s: &System) -> bool {
    b.chron().position(t).is_some() && s.contains(&Ets::new(t, x))
}

/// An extensional map on elementary-time states.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransMap {
    pub map: BTreeMap<Ets, Ets>,
}

impl TransMap {
    pub fn identity(b: &Bcs) -> Self {
        TransMap {
            map: b.states.iter().map(|w| (w.clone(), w.clone())).collect(),
        }
    }

    pub fn apply(&self, w: &Ets) -> Option<&Ets> {
        self.map.get(w)
    }

    pub fn is_injective(&self) -> bool {
        let img: BTreeSet<&Ets> = self.map.values().collect();
        img.len() == self.map.len()
    }
}

/// The basic changeable set `U[B]` on the same scale.
pub fn image_basic(b: &Bcs, u: &TransMap) -> Result<Bcs> {
    let scale = b.chron().scale();
    let mut img = Vec::with_capacity(b.states.len());
    for w in &b.states {
        let v = u
            .apply(w)
            .ok_or_else(|| Error::NotTotal(w.time.clone(), w.elem.clone()))?;
        let rank = scale
            .iter()
            .position(|t| *t == v.time)
            .ok_or_else(|| Error::TimeOutOfScale(v.time.clone()))?;
        img.push((rank, v.clone()));
    }
    let elems: Set = img.iter().map(|(_, v)| v.elem.clone()).collect();
    let mut bs_arrows = Vec::new();
    let mut ets_arrows = Vec::new();
    for (i, j) in b.rel.pairs().chain(b.rel.pairs().map(|(i, j)| (j, i))) {
        let ((r1, v1), (r2, v2)) = (&img[i], &img[j]);
        if r1 < r2 {
            bs_arrows.push((v1.elem.clone(), v2.elem.clone()));
            ets_arrows.push((v1.clone(), v2.clone()));
        }
    }
    let os = OrientedSet::new(elems, bs_arrows, true).map_err(|e| Error::ImageError(e.to_string()))?;
    let psi = (0..scale.len())
        .map(|k| {
            img.iter()
                .filter(|(r, _)| *r == k)
                .map(|(_, v)| v.elem.clone())
                .collect()
        })
        .collect();
    let chron = Chronologization::new(scale.to_vec(), psi)?;
    let pcs = Pcs::new(os, chron).map_err(|e| Error::ImageError(e.to_string()))?;
    ets_arrows.extend(pcs.ets().into_iter().map(|w| (w.clone(), w)));
    make_basic(pcs, &ets_arrows).map_err(|e| Error::ImageError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, set};

    fn ts(scale: &[&str], trajectories: &[&[(&str, &str)]]) -> TrajectorySystem {
        let trajs: Vec<Trajectory> = trajectories
            .iter()
            .enumerate()
            .map(|(i, pts)| Trajectory {
                id: format!("r{}", i + 1),
                points: pts.iter().map(|(t, x)| (t.to_string(), x.to_string())).collect(),
            })
            .collect();
        let universe = trajs.iter().flat_map(|r| r.points.values().cloned()).collect();
        TrajectorySystem::new(scale.iter().map(|s| s.to_string()).collect(), universe, trajs).unwrap()
    }

    fn e(t: &str, x: &str) -> Ets {
        Ets::new(t, x)
    }

    fn f2_pcs() -> Pcs {
        Pcs::new(fixtures::f2(), fixtures::f2_monotone_time()).unwrap()
    }

    fn disjoint() -> TrajectorySystem {
        ts(&["1", "2"], &[&[("1", "a"), ("2", "b")], &[("1", "c"), ("2", "d")]])
    }

    #[test]
    fn elementary_time_states() {
        assert_eq!(
            ets_of(&f2_pcs()),
            vec![e("1", "x1"), e("1", "x3"), e("2", "x2"), e("2", "x4")]
        );
        let f1 = fixtures::f1();
        let p = Pcs::new(f1.clone(), chronology::trivial_chronologization(&f1, 2).unwrap()).unwrap();
        assert_eq!(p.ets().len(), 4);
        let c = Chronologization::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![set(&["x1"]), Set::new(), set(&["x2"])],
        )
        .unwrap();
        assert_eq!(Pcs::new(f1, c).unwrap().ets().len(), 2);
    }

    #[test]
    fn formal_sequence() {
        let p = f2_pcs();
        assert!(formally_sequential(&p, &e("1", "x1"), &e("2", "x2")).unwrap());
        assert!(formally_sequential(&p, &e("1", "x1"), &e("1", "x1")).unwrap());
        assert!(!formally_sequential(&p, &e("2", "x2"), &e("1", "x1")).unwrap());
        assert!(formally_sequential(&p, &e("9", "x1"), &e("1", "x1")).is_err());
    }

    #[test]
    fn traced_primitive_sets() {
        let p = atp_from_trajectories(&ts(&["1", "2"], &[&[("1", "a"), ("2", "b")]])).unwrap();
        assert!(p.os().leads("a", "b") && !p.os().leads("b", "a"));
        assert_eq!(p.chron().images(), &[set(&["a"]), set(&["b"])]);

        let p = atp_from_trajectories(&ts(&["1", "2"], &[&[("1", "a"), ("2", "a")]])).unwrap();
        assert_eq!(p.os().arrows().len(), 1);
        assert_eq!(p.chron().images(), &[set(&["a"]), set(&["a"])]);

        let p = atp_from_trajectories(&disjoint()).unwrap();
        let expected = OrientedSet::new(
            ["a", "b", "c", "d"],
            [("a".into(), "b".into()), ("c".into(), "d".into())],
            true,
        )
        .unwrap();
        assert_eq!(*p.os(), expected);
        assert_eq!(p.chron().images(), &[set(&["a", "c"]), set(&["b", "d"])]);

        let uncovered = TrajectorySystem::new(
            vec!["1".into()],
            set(&["a", "z"]),
            vec![Trajectory {
                id: "r".into(),
                points: [("1".into(), "a".into())].into(),
            }],
        );
        assert!(matches!(uncovered, Err(Error::CoverageViolation(_))));
    }

    #[test]
    fn base_axioms() {
        let p = f2_pcs();
        let formal = basic_from_formal(p.clone());
        assert!(check_base(&p, &formal.arrows()).unwrap().is_empty());

        let mut missing = formal.arrows();
        missing.retain(|(a, b)| !(a == b && a.elem == "x1"));
        let v = check_base(&p, &missing).unwrap();
        assert_eq!(v, vec![BaseViolation::NotReflexive(e("1", "x1"))]);

        let mut backwards = formal.arrows();
        backwards.push((e("2", "x2"), e("1", "x1")));
        let v = check_base(&p, &backwards).unwrap();
        assert_eq!(v.iter().map(BaseViolation::axiom).collect::<Vec<_>>(), [2]);

        let reflexive: Vec<(Ets, Ets)> = p.ets().into_iter().map(|w| (w.clone(), w)).collect();
        let err = make_basic(p.clone(), &reflexive).unwrap_err();
        assert!(matches!(err, Error::InvalidBase(ref m) if m.contains("axiom 3")));
        assert!(make_basic(p, &formal.arrows()).is_ok());
    }

    #[test]
    fn formal_base_of_the_four_element_set() {
        let b = basic_from_formal(f2_pcs());
        assert!(b.leads(&e("1", "x1"), &e("2", "x2")));
        assert!(b.leads(&e("1", "x3"), &e("2", "x4")));
        assert!(!b.leads(&e("1", "x1"), &e("2", "x4")));
        assert_eq!(
            fate_lines(&b),
            vec![vec![e("1", "x1"), e("2", "x2")], vec![e("1", "x3"), e("2", "x4")]]
        );
        assert!(roundtrip_holds(&b));

        let one_moment = Chronologization::new(vec!["t".into()], vec![set(&["a"])]).unwrap();
        let single = basic_from_formal(Pcs::new(fixtures::singleton(), one_moment).unwrap());
        assert_eq!(single.proper_arrows().len(), 0);
    }

    #[test]
    fn crossing_trajectories_differ_from_the_formal_base() {
        let cross = ts(&["1", "2"], &[&[("1", "a"), ("2", "b")], &[("1", "b"), ("2", "a")]]);
        let at = at_from_trajectories(&cross).unwrap();
        let formal = basic_from_formal(at.pcs().clone());
        assert!(formal.leads(&e("1", "a"), &e("2", "a")));
        assert!(!at.leads(&e("1", "a"), &e("2", "a")));
        assert!(roundtrip_holds(&at));
    }

    #[test]
    fn traced_basic_sets() {
        let b = at_from_trajectories(&disjoint()).unwrap();
        assert_eq!(
            b.proper_arrows(),
            vec![(e("1", "a"), e("2", "b")), (e("1", "c"), e("2", "d"))]
        );
        let lines = fate_lines(&b);
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l.len() == 2));
        assert!(united_by_fate(&b, &e("1", "a"), &e("2", "b")).unwrap());
        assert!(united_by_fate(&b, &e("1", "a"), &e("1", "a")).unwrap());
        assert!(!united_by_fate(&b, &e("1", "a"), &e("2", "d")).unwrap());
        assert!(roundtrip_holds(&b));

        let one = at_from_trajectories(&ts(&["1", "2", "3"], &[&[("1", "a"), ("2", "b"), ("3", "c")]])).unwrap();
        assert_eq!(fate_lines(&one).len(), 1);

        let shared = at_from_trajectories(&ts(
            &["1", "2", "3"],
            &[
                &[("1", "a"), ("2", "m"), ("3", "b")],
                &[("1", "c"), ("2", "m"), ("3", "d")],
            ],
        ))
        .unwrap();
        let lines = fate_lines(&shared);
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l.contains(&e("2", "m"))));
        assert!(roundtrip_holds(&shared));
    }

    #[test]
    fn maximum_trajectories() {
        let b = at_from_trajectories(&disjoint()).unwrap();
        let sys = fate_line_system(&b);
        for r in sys.trajectories() {
            assert!(is_maximum_trajectory(&sys, &r.id).unwrap());
        }
        let nested = ts(&["1", "2"], &[&[("1", "a"), ("2", "b")], &[("1", "a")]]);
        assert!(!is_maximum_trajectory(&nested, "r2").unwrap());
        assert!(is_maximum_trajectory(&nested, "r1").unwrap());
        assert!(matches!(
            is_maximum_trajectory(&nested, "zz"),
            Err(Error::NotInSystem(_))
        ));
    }

    #[test]
    fn processes_and_systems() {
        let b = at_from_trajectories(&disjoint()).unwrap();
        let line: System = [e("1", "a"), e("2", "b")].into();
        assert_eq!(process_of(&b, &line).unwrap(), vec![set(&["a"]), set(&["b"])]);
        assert_eq!(process_of(&b, &System::new()).unwrap(), vec![Set::new(), Set::new()]);
        assert_eq!(process_of(&b, &b.state_set()).unwrap(), b.chron().images());
        assert_eq!(system_of(&b, b.chron().images()).unwrap(), b.state_set());
        assert!(system_of(&b, &[Set::new(), Set::new()]).unwrap().is_empty());
        assert!(matches!(
            system_of(&b, &[set(&["b"]), Set::new()]),
            Err(Error::NotAProcess(_))
        ));
        assert!(matches!(
            process_of(&b, &[e("1", "b")].into()),
            Err(Error::ForeignState(..))
        ));
        assert!(member_at(&b, "a", "1", &line));
        assert!(!member_at(&b, "b", "1", &line));
    }

    #[test]
    fn images() {
        let b = at_from_trajectories(&disjoint()).unwrap();
        assert_eq!(image_basic(&b, &TransMap::identity(&b)).unwrap(), b);

        let mut collapse = TransMap::identity(&b);
        collapse.map.insert(e("2", "b"), e("1", "b"));
        let img = image_basic(&b, &collapse).unwrap();
        assert!(!img.leads(&e("1", "a"), &e("1", "b")));
        assert!(!img.os().leads("a", "b"));

        let one = at_from_trajectories(&ts(&["1", "2"], &[&[("1", "a"), ("2", "b")]])).unwrap();
        let mut swap = TransMap::default();
        swap.map.insert(e("1", "a"), e("2", "a"));
        swap.map.insert(e("2", "b"), e("1", "b"));
        let img = image_basic(&one, &swap).unwrap();
        assert!(img.leads(&e("1", "b"), &e("2", "a")));
        assert!(img.os().leads("b", "a") && !img.os().leads("a", "b"));

        let mut partial = TransMap::identity(&one);
        partial.map.remove(&e("1", "a"));
        assert!(matches!(image_basic(&one, &partial), Err(Error::NotTotal(..))));
        let mut outside = TransMap::identity(&one);
        outside.map.insert(e("1", "a"), e("9", "a"));
        assert!(matches!(image_basic(&one, &outside), Err(Error::TimeOutOfScale(_))));
    }
}
