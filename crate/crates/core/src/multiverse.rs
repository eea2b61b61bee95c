//! Changeable sets: families of basic changeable sets (frames) joined by
//! unification-of-perception maps between their systems of states.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{self, Bcs, Ets, System, Trajectory, TrajectorySystem, TransMap};
use crate::error::{Error, Result};
use crate::Set;

/// Closed-form unification maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Every subset maps to `∅`.
    ConstEmpty,
    /// `{ω}` for the whole source frame, `∅` otherwise.
    Z1Forward { omega: Ets },
    /// The whole target frame when `ω ∈ A`, `∅` otherwise.
    Z1Backward { omega: Ets },
    /// `{ω}` for every nonempty subset.
    Z2Forward { omega: Ets },
    /// Between frames `from` and `to` sharing one state set: `A` for `to ∈ {from, from+1}`,
    /// the whole frame for `to > from + 1` and `A ≠ ∅`, `∅` otherwise.
    StepWindow { from: usize, to: usize },
    /// Between frames sharing one state set: `A` for `to = from`, `{ω}` for
    /// `to = from + 1` when `ω ∈ A` (`ω` is the point of frame `to`), `∅` otherwise.
    MovingPoint { from: usize, to: usize, omega: Option<Ets> },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::ConstEmpty => "const-empty",
            Rule::Z1Forward { .. } => "z1-forward",
            Rule::Z1Backward { .. } => "z1-backward",
            Rule::Z2Forward { .. } => "z2-forward",
            Rule::StepWindow { .. } => "step-window",
            Rule::MovingPoint { .. } => "moving-point",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniMap {
    Identity,
    /// Pointwise image under a bijection of states.
    Bijection(BTreeMap<Ets, Ets>),
    /// Explicit images of listed subsets; any other subset is an error.
    Table(Vec<(System, System)>),
    Rule(Rule),
}

impl UniMap {
    pub fn kind(&self) -> &'static str {
        match self {
            UniMap::Identity => "identity",
            UniMap::Bijection(_) => "bijection",
            UniMap::Table(_) => "table",
            UniMap::Rule(_) => "rule",
        }
    }
}

/// Frames keyed by id plus the unification maps `uni[(l, m)] = ⟨l→m⟩`.
/// A missing diagonal entry means the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeableSet {
    frames: BTreeMap<String, Bcs>,
    uni: BTreeMap<(String, String), UniMap>,
}

fn same_states(a: &Bcs, b: &Bcs) -> bool {
    a.states() == b.states()
}

impl ChangeableSet {
    pub fn new(frames: BTreeMap<String, Bcs>, mut uni: BTreeMap<(String, String), UniMap>) -> Result<Self> {
        if frames.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for ((l, m), map) in uni.iter_mut() {
            if let UniMap::Table(rows) = map {
                rows.sort();
                rows.dedup();
                if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
                    return Err(Error::BadParams(format!(
                        "table {l} -> {m} lists {} twice with different images",
                        fmt_system(&w[0].0)
                    )));
                }
            }
        }
        for ((l, m), map) in &uni {
            let (bl, bm) = match (frames.get(l), frames.get(m)) {
                (Some(a), Some(b)) => (a, b),
                (None, _) => return Err(Error::UnknownFrame(l.clone())),
                (_, None) => return Err(Error::UnknownFrame(m.clone())),
            };
            match map {
                UniMap::Bijection(w) => check_bijection(l, m, bl, bm, w)?,
                UniMap::Table(rows) => {
                    for (a, b) in rows {
                        if !a.iter().all(|w| bl.index_of(w).is_some()) {
                            return Err(Error::ForeignStates(l.clone()));
                        }
                        if !b.iter().all(|w| bm.index_of(w).is_some()) {
                            return Err(Error::ForeignStates(m.clone()));
                        }
                    }
                }
                UniMap::Identity | UniMap::Rule(Rule::StepWindow { .. }) | UniMap::Rule(Rule::MovingPoint { .. }) => {
                    if !same_states(bl, bm) {
                        return Err(Error::BadParams(format!(
                            "{} map {l} -> {m} needs frames with equal state sets",
                            map.kind()
                        )));
                    }
                }
                UniMap::Rule(Rule::Z1Forward { omega }) | UniMap::Rule(Rule::Z2Forward { omega }) => {
                    if bm.index_of(omega).is_none() {
                        return Err(Error::BadParams(format!("{omega} is not a state of {m}")));
                    }
                }
                UniMap::Rule(Rule::Z1Backward { omega }) => {
                    if bl.index_of(omega).is_none() {
                        return Err(Error::BadParams(format!("{omega} is not a state of {l}")));
                    }
                }
                UniMap::Rule(Rule::ConstEmpty) => {}
            }
        }
        for l in frames.keys() {
            for m in frames.keys() {
                if l != m && !uni.contains_key(&(l.clone(), m.clone())) {
                    return Err(Error::MissingUni(l.clone(), m.clone()));
                }
            }
        }
        Ok(ChangeableSet { frames, uni })
    }

    pub fn frames(&self) -> &BTreeMap<String, Bcs> {
        &self.frames
    }

    pub fn frame_ids(&self) -> Vec<String> {
        self.frames.keys().cloned().collect()
    }

    pub fn frame(&self, l: &str) -> Result<&Bcs> {
        self.frames.get(l).ok_or_else(|| Error::UnknownFrame(l.to_string()))
    }

    pub fn uni(&self) -> &BTreeMap<(String, String), UniMap> {
        &self.uni
    }

    pub fn map(&self, l: &str, m: &str) -> Result<&UniMap> {
        self.frame(l)?;
        self.frame(m)?;
        match self.uni.get(&(l.to_string(), m.to_string())) {
            Some(u) => Ok(u),
            None if l == m => Ok(&UniMap::Identity),
            None => Err(Error::MissingUni(l.to_string(), m.to_string())),
        }
    }
}

fn check_bijection(l: &str, m: &str, bl: &Bcs, bm: &Bcs, w: &BTreeMap<Ets, Ets>) -> Result<()> {
    let domain: BTreeSet<&Ets> = w.keys().collect();
    let source: BTreeSet<&Ets> = bl.states().iter().collect();
    if domain != source {
        return Err(Error::NotBijective(format!(
            "{l} -> {m}: domain differs from the states of {l}"
        )));
    }
    let range: BTreeSet<&Ets> = w.values().collect();
    let target: BTreeSet<&Ets> = bm.states().iter().collect();
    if range != target || range.len() != domain.len() {
        return Err(Error::NotBijective(format!(
            "{l} -> {m}: not onto the states of {m} one-to-one"
        )));
    }
    Ok(())
}

/// `⟨l→m⟩A`.
pub fn apply_uni(z: &ChangeableSet, l: &str, m: &str, a: &System) -> Result<System> {
    let bl = z.frame(l)?;
    let bm = z.frame(m)?;
    if a.iter().any(|w| bl.index_of(w).is_none()) {
        return Err(Error::ForeignStates(l.to_string()));
    }
    Ok(match z.map(l, m)? {
        UniMap::Identity => a.clone(),
        UniMap::Bijection(w) => a.iter().map(|x| w[x].clone()).collect(),
        UniMap::Table(rows) => rows
            .iter()
            .find(|(k, _)| k == a)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::TableMiss(fmt_system(a)))?,
        UniMap::Rule(rule) => apply_rule(rule, bl, bm, a),
    })
}

fn apply_rule(rule: &Rule, bl: &Bcs, bm: &Bcs, a: &System) -> System {
    let point = |w: &Ets| System::from([w.clone()]);
    match rule {
        Rule::ConstEmpty => System::new(),
        Rule::Z1Forward { omega } if a.len() == bl.states().len() => point(omega),
        Rule::Z1Backward { omega } if a.contains(omega) => bm.state_set(),
        Rule::Z2Forward { omega } if !a.is_empty() => point(omega),
        Rule::StepWindow { from, to } if *to == *from || *to == from + 1 => a.clone(),
        Rule::StepWindow { from, to } if *to > from + 1 && !a.is_empty() => bm.state_set(),
        Rule::MovingPoint { from, to, .. } if to == from => a.clone(),
        Rule::MovingPoint {
            from,
            to,
            omega: Some(w),
        } if *to == from + 1 && a.contains(w) => point(w),
        _ => System::new(),
    }
}

pub fn fmt_system(a: &System) -> String {
    let parts: Vec<String> = a.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Bitmask form of a subset of `states`.
pub(crate) fn to_mask(states: &[Ets], a: &System) -> u64 {
    states
        .iter()
        .enumerate()
        .filter(|(_, w)| a.contains(*w))
        .fold(0, |m, (i, _)| m | 1 << i)
}

pub(crate) fn from_mask(states: &[Ets], mask: u64) -> System {
    states
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, w)| w.clone())
        .collect()
}

/// Largest frame handled by exhaustive subset scans unless overridden.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 10;
/// Hard cap: subsets are indexed by 64-bit masks and tabulated.
pub const MAX_EXHAUSTIVE_LIMIT: usize = 24;

/// Images of every subset of `BS(l)` under `⟨l→m⟩`, indexed by source mask,
/// as masks over the states of `m`.
pub(crate) fn image_table(z: &ChangeableSet, l: &str, m: &str) -> Result<Vec<u64>> {
    let src = z.frame(l)?.states();
    let dst = z.frame(m)?.states();
    (0..1u64 << src.len())
        .map(|mask| apply_uni(z, l, m, &from_mask(src, mask)).map(|img| to_mask(dst, &img)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every subset, for frames of at most `limit` states.
    Exhaustive { limit: usize },
    /// `n` random subsets per frame pair or triple, drawn from `seed`.
    Sampled { seed: u64, n: usize },
}

impl Default for CheckMode {
    fn default() -> Self {
        CheckMode::Exhaustive {
            limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMode::Exhaustive { limit } => write!(f, "exhaustive(limit={limit})"),
            CheckMode::Sampled { seed, n } => write!(f, "sampled(seed={seed}, n={n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniViolation {
    pub axiom: u8,
    pub frames: Vec<String>,
    pub subset: System,
    pub detail: String,
}

impl fmt::Display for UniViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "axiom {} at ({}) on {}: {}",
            self.axiom,
            self.frames.join(", "),
            fmt_system(&self.subset),
            self.detail
        )
    }
}

/// Violations beyond this count are not collected.
pub const MAX_REPORTED: usize = 100;

pub(crate) fn require_exhaustive(z: &ChangeableSet, limit: usize) -> Result<()> {
    let limit = limit.min(MAX_EXHAUSTIVE_LIMIT);
    for (l, b) in &z.frames {
        if b.states().len() > limit {
            return Err(Error::SizeLimitExceeded(l.clone(), b.states().len(), limit));
        }
    }
    Ok(())
}

/// Checks identity on the diagonal, monotonicity and the composition inclusion
/// `⟨m→p⟩⟨l→m⟩A ⊆ ⟨l→p⟩A`.
pub fn check_unification(z: &ChangeableSet, mode: CheckMode) -> Result<Vec<UniViolation>> {
    match mode {
        CheckMode::Exhaustive { limit } => {
            require_exhaustive(z, limit)?;
            check_exhaustive(z)
        }
        CheckMode::Sampled { seed, n } => check_sampled(z, seed, n),
    }
}

fn check_exhaustive(z: &ChangeableSet) -> Result<Vec<UniViolation>> {
    let ids = z.frame_ids();
    let mut tables = BTreeMap::new();
    for l in &ids {
        for m in &ids {
            tables.insert((l.clone(), m.clone()), image_table(z, l, m)?);
        }
    }
    let states = |l: &str| z.frames[l].states();
    let mut out = Vec::new();
    let mut push = |v: UniViolation| {
        if out.len() < MAX_REPORTED {
            out.push(v);
        }
    };
    for l in &ids {
        let t = &tables[&(l.clone(), l.clone())];
        for (a, &img) in t.iter().enumerate() {
            if img != a as u64 {
                push(UniViolation {
                    axiom: 1,
                    frames: vec![l.clone()],
                    subset: from_mask(states(l), a as u64),
                    detail: format!("image is {}", fmt_system(&from_mask(states(l), img))),
                });
            }
        }
    }
    for l in &ids {
        let n = states(l).len();
        for m in &ids {
            let t = &tables[&(l.clone(), m.clone())];
            for a in 0..t.len() {
                for i in 0..n {
                    let bigger = a | 1 << i;
                    if bigger != a && t[a] & !t[bigger] != 0 {
                        push(UniViolation {
                            axiom: 2,
                            frames: vec![l.clone(), m.clone()],
                            subset: from_mask(states(l), a as u64),
                            detail: format!("image shrinks after adding {}", states(l)[i]),
                        });
                    }
                }
            }
        }
    }
    for l in &ids {
        for m in &ids {
            let lm = &tables[&(l.clone(), m.clone())];
            for p in &ids {
                let mp = &tables[&(m.clone(), p.clone())];
                let lp = &tables[&(l.clone(), p.clone())];
                for a in 0..lm.len() {
                    let composed = mp[lm[a] as usize];
                    if composed & !lp[a] != 0 {
                        push(UniViolation {
                            axiom: 3,
                            frames: vec![l.clone(), m.clone(), p.clone()],
                            subset: from_mask(states(l), a as u64),
                            detail: "composed image exceeds the direct image".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn random_subset(rng: &mut ChaCha8Rng, states: &[Ets]) -> System {
    states.iter().filter(|_| rng.random_bool(0.5)).cloned().collect()
}

fn check_sampled(z: &ChangeableSet, seed: u64, n: usize) -> Result<Vec<UniViolation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids = z.frame_ids();
    let mut out = Vec::new();
    for l in &ids {
        let sl = z.frames[l].states();
        for _ in 0..n {
            let a = random_subset(&mut rng, sl);
            if apply_uni(z, l, l, &a)? != a {
                out.push(UniViolation {
                    axiom: 1,
                    frames: vec![l.clone()],
                    subset: a,
                    detail: "not the identity".into(),
                });
            }
        }
        for m in &ids {
            for _ in 0..n {
                let a = random_subset(&mut rng, sl);
                if sl.is_empty() {
                    break;
                }
                let mut b = a.clone();
                b.insert(sl[rng.random_range(0..sl.len())].clone());
                if !apply_uni(z, l, m, &a)?.is_subset(&apply_uni(z, l, m, &b)?) {
                    out.push(UniViolation {
                        axiom: 2,
                        frames: vec![l.clone(), m.clone()],
                        subset: a,
                        detail: "image shrinks on a superset".into(),
                    });
                }
            }
            for p in &ids {
                for _ in 0..n {
                    let a = random_subset(&mut rng, sl);
                    let composed = apply_uni(z, m, p, &apply_uni(z, l, m, &a)?)?;
                    if !composed.is_subset(&apply_uni(z, l, p, &a)?) {
                        out.push(UniViolation {
                            axiom: 3,
                            frames: vec![l.clone(), m.clone(), p.clone()],
                            subset: a,
                            detail: "composed image exceeds the direct image".into(),
                        });
                    }
                }
            }
        }
        if out.len() >= MAX_REPORTED {
            out.truncate(MAX_REPORTED);
            break;
        }
    }
    Ok(out)
}

/// Frames related by bijections `W` satisfying `W_αα = id` and `W_γβ ∘ W_βα = W_γα`.
/// Missing diagonal entries are the identity.
pub fn make_zpv(
    frames: BTreeMap<String, Bcs>,
    w: BTreeMap<(String, String), BTreeMap<Ets, Ets>>,
) -> Result<ChangeableSet> {
    let ids: Vec<String> = frames.keys().cloned().collect();
    let first = ids.first().ok_or(Error::EmptyFamily)?;
    for l in &ids {
        if frames[l].states().len() != frames[first].states().len() {
            return Err(Error::NotEquipotent(first.clone(), l.clone()));
        }
    }
    let mut maps: BTreeMap<(String, String), BTreeMap<Ets, Ets>> = BTreeMap::new();
    for l in &ids {
        for m in &ids {
            let key = (l.clone(), m.clone());
            let map = match w.get(&key) {
                Some(map) => map.clone(),
                None if l == m => frames[l].states().iter().map(|s| (s.clone(), s.clone())).collect(),
                None => return Err(Error::MissingUni(l.clone(), m.clone())),
            };
            check_bijection(l, m, &frames[l], &frames[m], &map)?;
            maps.insert(key, map);
        }
    }
    for a in &ids {
        for s in frames[a].states() {
            if maps[&(a.clone(), a.clone())][s] != *s {
                return Err(Error::PseudoGroupViolation(
                    a.clone(),
                    a.clone(),
                    a.clone(),
                    s.to_string(),
                ));
            }
            for b in &ids {
                let via = &maps[&(a.clone(), b.clone())][s];
                for c in &ids {
                    if maps[&(b.clone(), c.clone())][via] != maps[&(a.clone(), c.clone())][s] {
                        return Err(Error::PseudoGroupViolation(
                            a.clone(),
                            b.clone(),
                            c.clone(),
                            s.to_string(),
                        ));
                    }
                }
            }
        }
    }
    let uni = maps
        .into_iter()
        .map(|((l, m), map)| {
            let u = if l == m {
                UniMap::Identity
            } else {
                UniMap::Bijection(map)
            };
            ((l, m), u)
        })
        .collect();
    ChangeableSet::new(frames, uni)
}

/// Pseudo-group built from bijections `W_α` of each frame onto a common hub:
/// `W_βα = W_β⁻¹ ∘ W_α`.
pub fn hub_bijections(
    to_hub: &BTreeMap<String, BTreeMap<Ets, Ets>>,
) -> Result<BTreeMap<(String, String), BTreeMap<Ets, Ets>>> {
    let mut inverse = BTreeMap::new();
    for (l, w) in to_hub {
        let inv: BTreeMap<Ets, Ets> = w.iter().map(|(a, h)| (h.clone(), a.clone())).collect();
        if inv.len() != w.len() {
            return Err(Error::NotBijective(format!("{l} -> hub is not injective")));
        }
        inverse.insert(l.clone(), inv);
    }
    let mut out = BTreeMap::new();
    for (a, wa) in to_hub {
        for (b, inv_b) in &inverse {
            let mut map = BTreeMap::new();
            for (s, h) in wa {
                let t = inv_b
                    .get(h)
                    .ok_or_else(|| Error::NotBijective(format!("hub state of {a} missing from {b}")))?;
                map.insert(s.clone(), t.clone());
            }
            out.insert((a.clone(), b.clone()), map);
        }
    }
    Ok(out)
}

/// Frames `u1, u2, ..` are the images `U_k[b]`, joined by `U_β ∘ U_α⁻¹`.
pub fn make_zim(b: &Bcs, transforms: &[TransMap]) -> Result<ChangeableSet> {
    if transforms.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut frames = BTreeMap::new();
    let mut to_hub = BTreeMap::new();
    for (k, u) in transforms.iter().enumerate() {
        if !u.is_injective() {
            return Err(Error::NotBijective(format!("transform {} is not injective", k + 1)));
        }
        let img = base::image_basic(b, u).map_err(|e| match e {
            Error::NotTotal(..) | Error::TimeOutOfScale(_) => Error::ImageError(e.to_string()),
            other => other,
        })?;
        let id = format!("u{}", k + 1);
        // The hub is BS(b) itself: U_k⁻¹ sends each image state back to its preimage.
        let back: BTreeMap<Ets, Ets> = b.states().iter().map(|w| (u.map[w].clone(), w.clone())).collect();
        frames.insert(id.clone(), img);
        to_hub.insert(id, back);
    }
    make_zpv(frames, hub_bijections(&to_hub)?)
}

/// Identity on the diagonal, `∅` between distinct frames.
pub fn make_znv(frames: BTreeMap<String, Bcs>) -> Result<ChangeableSet> {
    if frames.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut uni = BTreeMap::new();
    for l in frames.keys() {
        for m in frames.keys() {
            let u = if l == m {
                UniMap::Identity
            } else {
                UniMap::Rule(Rule::ConstEmpty)
            };
            uni.insert((l.clone(), m.clone()), u);
        }
    }
    ChangeableSet::new(frames, uni)
}

pub fn frame_id(k: usize) -> String {
    format!("l{k}")
}

fn two_frames(b1: Bcs, b2: Bcs, forward: UniMap, backward: UniMap) -> Result<ChangeableSet> {
    let frames = BTreeMap::from([(frame_id(1), b1), (frame_id(2), b2)]);
    let uni = BTreeMap::from([
        ((frame_id(1), frame_id(2)), forward),
        ((frame_id(2), frame_id(1)), backward),
    ]);
    ChangeableSet::new(frames, uni)
}

/// `⟨l1→l2⟩A = {ω}` only for `A = BS(l1)`; `⟨l2→l1⟩A = BS(l1)` when `ω ∈ A`.
pub fn fixture_z1(b1: Bcs, b2: Bcs, omega: Ets) -> Result<ChangeableSet> {
    if b2.index_of(&omega).is_none() {
        return Err(Error::BadParams(format!("{omega} is not a state of the second frame")));
    }
    two_frames(
        b1,
        b2,
        UniMap::Rule(Rule::Z1Forward { omega: omega.clone() }),
        UniMap::Rule(Rule::Z1Backward { omega }),
    )
}

/// `⟨l1→l2⟩A = {ω}` for nonempty `A`; `⟨l2→l1⟩ ≡ ∅`.
pub fn fixture_z2(b1: Bcs, b2: Bcs, omega: Ets) -> Result<ChangeableSet> {
    if b2.index_of(&omega).is_none() {
        return Err(Error::BadParams(format!("{omega} is not a state of the second frame")));
    }
    two_frames(
        b1,
        b2,
        UniMap::Rule(Rule::Z2Forward { omega }),
        UniMap::Rule(Rule::ConstEmpty),
    )
}

/// Frames `l1..ln`, all equal to `b`, joined by the step-window rule.
pub fn fixture_step_window(b: Bcs, n: usize) -> Result<ChangeableSet> {
    if n < 3 {
        return Err(Error::BadParams(format!(
            "step-window needs at least 3 frames, got {n}"
        )));
    }
    let frames = (1..=n).map(|k| (frame_id(k), b.clone())).collect();
    let mut uni = BTreeMap::new();
    for from in 1..=n {
        for to in 1..=n {
            uni.insert(
                (frame_id(from), frame_id(to)),
                UniMap::Rule(Rule::StepWindow { from, to }),
            );
        }
    }
    ChangeableSet::new(frames, uni)
}

/// Frames `l1..ln` (`n = points.len()`), all equal to `b`; `points[k-1]` is the
/// point seen by frame `lk` from its predecessor.
pub fn fixture_moving_point(b: Bcs, points: Vec<Ets>) -> Result<ChangeableSet> {
    let n = points.len();
    if n < 2 {
        return Err(Error::BadParams("moving-point needs at least 2 frames".into()));
    }
    if b.states().len() < n {
        return Err(Error::BadParams(format!("{} states for {n} points", b.states().len())));
    }
    let distinct: BTreeSet<&Ets> = points.iter().collect();
    if distinct.len() != n || points.iter().any(|w| b.index_of(w).is_none()) {
        return Err(Error::BadParams("points must be distinct states of the frame".into()));
    }
    let frames = (1..=n).map(|k| (frame_id(k), b.clone())).collect();
    let mut uni = BTreeMap::new();
    for from in 1..=n {
        for to in 1..=n {
            let omega = (to == from + 1).then(|| points[to - 1].clone());
            uni.insert(
                (frame_id(from), frame_id(to)),
                UniMap::Rule(Rule::MovingPoint { from, to, omega }),
            );
        }
    }
    ChangeableSet::new(frames, uni)
}

/// Basic changeable set of one trajectory visiting `elems` at moments `1, 2, ..`.
pub fn path_bcs(elems: &[&str]) -> Bcs {
    let scale: Vec<String> = (1..=elems.len()).map(|i| i.to_string()).collect();
    let traj = Trajectory {
        id: "r1".into(),
        points: scale
            .iter()
            .zip(elems)
            .map(|(t, x)| (t.clone(), x.to_string()))
            .collect(),
    };
    let universe: Set = elems.iter().map(|x| x.to_string()).collect();
    base::at_from_trajectories(&TrajectorySystem::new(scale, universe, vec![traj]).expect("path"))
        .expect("path structure")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Z1,
    Z2,
    StepWindow,
    MovingPoint,
}

impl std::str::FromStr for FixtureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z1" => Ok(FixtureKind::Z1),
            "z2" => Ok(FixtureKind::Z2),
            "step-window" => Ok(FixtureKind::StepWindow),
            "moving-point" => Ok(FixtureKind::MovingPoint),
            other => Err(Error::BadParams(format!("unknown fixture {other}"))),
        }
    }
}

/// The named fixtures over small default frames. `n` is the frame count for
/// step-window and moving-point and is ignored otherwise.
pub fn fixture(kind: FixtureKind, n: usize) -> Result<ChangeableSet> {
    let omega = Ets::new("1", "w");
    match kind {
        FixtureKind::Z1 => fixture_z1(path_bcs(&["a", "b"]), path_bcs(&["w"]), omega),
        FixtureKind::Z2 => fixture_z2(path_bcs(&["a", "b"]), path_bcs(&["w"]), omega),
        FixtureKind::StepWindow => fixture_step_window(path_bcs(&["a", "b"]), n),
        FixtureKind::MovingPoint => {
            let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let b = path_bcs(&refs);
            let points = b.states().to_vec();
            fixture_moving_point(b, points)
        }
    }
}
