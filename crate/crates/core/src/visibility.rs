//! Visibility grades between frames of a changeable set and the partitions
//! of frames they induce.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::{Ets, System};
use crate::error::{Error, Result};
use crate::multiverse::{
    apply_uni, from_mask, image_table, random_subset, require_exhaustive, ChangeableSet, CheckMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Invisible,
    Visible,
    NormallyVisible,
    PreciselyVisible,
}

impl Grade {
    pub fn as_str(self) -> &'static str {
        match self {
            Grade::Invisible => "invisible",
            Grade::Visible => "visible",
            Grade::NormallyVisible => "normally_visible",
            Grade::PreciselyVisible => "precisely_visible",
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Grade {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Grade::Invisible,
            Grade::Visible,
            Grade::NormallyVisible,
            Grade::PreciselyVisible,
        ]
        .into_iter()
        .find(|g| g.as_str() == s)
        .ok_or_else(|| Error::BadParams(format!("unknown grade {s}")))
    }
}

/// Blocks are sorted internally and by their first member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramePartition {
    pub blocks: Vec<Vec<String>>,
}

impl FramePartition {
    fn from_labels(ids: &[String], label: &[usize]) -> Self {
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (id, &c) in ids.iter().zip(label) {
            groups.entry(c).or_default().push(id.clone());
        }
        let mut blocks: Vec<Vec<String>> = groups.into_values().collect();
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        FramePartition { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Largest subsystem whose partitions are scanned unless overridden.
pub const DEFAULT_PARTITION_LIMIT: usize = 10;
const MAX_PARTITION_LIMIT: usize = 20;

/// Images of every subset of `a` under `⟨l→m⟩`, as bitsets over the states of `m`.
struct SubsetImages {
    words: usize,
    data: Vec<u64>,
}

impl SubsetImages {
    fn new(z: &ChangeableSet, l: &str, m: &str, a: &[Ets]) -> Result<Self> {
        let target = z.frame(m)?;
        let words = target.states().len().div_ceil(64).max(1);
        let mut data = vec![0u64; words << a.len()];
        for mask in 0..1usize << a.len() {
            let sub = from_mask(a, mask as u64);
            for w in apply_uni(z, l, m, &sub)? {
                let i = target.index_of(&w).expect("image lies in the target frame");
                data[mask * words + i / 64] |= 1 << (i % 64);
            }
        }
        Ok(SubsetImages { words, data })
    }

    fn get(&self, mask: usize) -> &[u64] {
        &self.data[mask * self.words..(mask + 1) * self.words]
    }

    fn is_empty(&self, mask: usize) -> bool {
        self.get(mask).iter().all(|w| *w == 0)
    }
}

/// Set partitions of `0..n` as restricted growth strings, in lexicographic order.
pub struct Partitions {
    rgs: Vec<usize>,
    max: Vec<usize>,
    done: bool,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        Partitions {
            rgs: vec![0; n],
            max: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for Partitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.rgs.clone();
        let n = self.rgs.len();
        // Advance the rightmost position that may still grow; positions after it reset.
        match (1..n).rev().find(|&i| self.rgs[i] <= self.max[i - 1]) {
            Some(i) => {
                self.rgs[i] += 1;
                self.max[i] = self.max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.max[j] = self.max[i];
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(MAX_PARTITION_LIMIT);
    if n > limit {
        return Err(Error::PartitionLimitExceeded(n, limit));
    }
    Ok(())
}

fn frame_states(z: &ChangeableSet, l: &str, a: &System) -> Result<Vec<Ets>> {
    let bl = z.frame(l)?;
    if a.iter().any(|w| bl.index_of(w).is_none()) {
        return Err(Error::ForeignStates(l.to_string()));
    }
    Ok(a.iter().cloned().collect())
}

/// Every partition of `a` into blocks has pairwise disjoint images covering the image of `a`.
fn partitions_preserved(images: &SubsetImages, n: usize) -> bool {
    let full = (1usize << n) - 1;
    let mut blocks = vec![0usize; n];
    Partitions::new(n).all(|rgs| {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        blocks[..k].iter_mut().for_each(|b| *b = 0);
        for (i, &c) in rgs.iter().enumerate() {
            blocks[c] |= 1 << i;
        }
        let mut acc = vec![0u64; images.words];
        for &b in &blocks[..k] {
            for (x, y) in acc.iter_mut().zip(images.get(b)) {
                if *x & y != 0 {
                    return false;
                }
                *x |= y;
            }
        }
        acc == images.get(full)
    })
}

/// Grade of the changeable system `a ⊆ BS(l)` seen from frame `m`.
/// Normal visibility is decided on singletons, which suffices by monotonicity.
pub fn system_grade(z: &ChangeableSet, l: &str, m: &str, a: &System, partition_limit: usize) -> Result<Grade> {
    let states = frame_states(z, l, a)?;
    z.frame(m)?;
    if apply_uni(z, l, m, a)?.is_empty() {
        return Ok(Grade::Invisible);
    }
    for w in &states {
        if apply_uni(z, l, m, &System::from([w.clone()]))?.is_empty() {
            return Ok(Grade::Visible);
        }
    }
    check_limit(states.len(), partition_limit)?;
    let images = SubsetImages::new(z, l, m, &states)?;
    debug_assert!(!images.is_empty((1 << states.len()) - 1));
    if partitions_preserved(&images, states.len()) {
        Ok(Grade::PreciselyVisible)
    } else {
        Ok(Grade::NormallyVisible)
    }
}

/// Grade of frame `l` seen from frame `m`, decided on `A = BS(l)`.
pub fn frame_grade(z: &ChangeableSet, l: &str, m: &str) -> Result<Grade> {
    frame_grade_with(z, l, m, DEFAULT_PARTITION_LIMIT)
}

pub fn frame_grade_with(z: &ChangeableSet, l: &str, m: &str, partition_limit: usize) -> Result<Grade> {
    let all = z.frame(l)?.state_set();
    if all.is_empty() {
        z.frame(m)?;
        return Ok(Grade::Invisible);
    }
    system_grade(z, l, m, &all, partition_limit)
}

/// `l ≻ m`: some state of `l` is visible from `m`.
pub fn is_visible(z: &ChangeableSet, l: &str, m: &str) -> Result<bool> {
    z.frame(m)?;
    Ok(!apply_uni(z, l, m, &z.frame(l)?.state_set())?.is_empty())
}

/// `l ≻! m`: every nonempty system of `l` is visible from `m`.
pub fn is_normally_visible(z: &ChangeableSet, l: &str, m: &str) -> Result<bool> {
    z.frame(m)?;
    let bl = z.frame(l)?;
    if bl.states().is_empty() {
        return Ok(false);
    }
    for w in bl.states() {
        if apply_uni(z, l, m, &System::from([w.clone()]))?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every ordered pair of frames is normally visible, which for changeable sets
/// coincides with precise visibility.
pub fn is_precisely_visible_cset(z: &ChangeableSet) -> bool {
    let ids = z.frame_ids();
    ids.iter()
        .all(|l| ids.iter().all(|m| is_normally_visible(z, l, m).expect("frames exist")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionWitness {
    pub frames: [String; 3],
    pub subset: System,
    pub composed: System,
    pub direct: System,
}

/// First triple `(l, m, p)` and subset `A` with `⟨m→p⟩⟨l→m⟩A ≠ ⟨l→p⟩A`.
pub fn composition_witness(z: &ChangeableSet, mode: CheckMode) -> Result<Option<CompositionWitness>> {
    let ids = z.frame_ids();
    match mode {
        CheckMode::Exhaustive { limit } => {
            require_exhaustive(z, limit)?;
            let mut tables = BTreeMap::new();
            for l in &ids {
                for m in &ids {
                    tables.insert((l, m), image_table(z, l, m)?);
                }
            }
            for l in &ids {
                for m in &ids {
                    for p in &ids {
                        let (lm, mp, lp) = (&tables[&(l, m)], &tables[&(m, p)], &tables[&(l, p)]);
                        if let Some(a) = (0..lm.len()).find(|&a| mp[lm[a] as usize] != lp[a]) {
                            let subset = from_mask(z.frame(l)?.states(), a as u64);
                            return witness(z, [l, m, p], subset).map(Some);
                        }
                    }
                }
            }
            Ok(None)
        }
        CheckMode::Sampled { seed, n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for l in &ids {
                for m in &ids {
                    for p in &ids {
                        for _ in 0..n {
                            let a = random_subset(&mut rng, z.frame(l)?.states());
                            let w = witness(z, [l, m, p], a)?;
                            if w.composed != w.direct {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
            Ok(None)
        }
    }
}

fn witness(z: &ChangeableSet, [l, m, p]: [&String; 3], subset: System) -> Result<CompositionWitness> {
    let composed = apply_uni(z, m, p, &apply_uni(z, l, m, &subset)?)?;
    let direct = apply_uni(z, l, p, &subset)?;
    Ok(CompositionWitness {
        frames: [l.clone(), m.clone(), p.clone()],
        subset,
        composed,
        direct,
    })
}

/// `⟨m→p⟩⟨l→m⟩ = ⟨l→p⟩` for every triple of frames.
pub fn composition_criterion(z: &ChangeableSet, mode: CheckMode) -> Result<bool> {
    Ok(composition_witness(z, mode)?.is_none())
}

/// Mutual normal visibility.
pub fn precisely_equivalent(z: &ChangeableSet, l: &str, m: &str) -> Result<bool> {
    Ok(is_normally_visible(z, l, m)? && is_normally_visible(z, m, l)?)
}

fn components(ids: &[String], linked: impl Fn(usize, usize) -> bool) -> FramePartition {
    let n = ids.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if linked(i, j) {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut label, i)).collect();
    FramePartition::from_labels(ids, &roots)
}

/// Classes of mutual normal visibility.
pub fn precise_visibility_classes(z: &ChangeableSet) -> FramePartition {
    let ids = z.frame_ids();
    // Mutual normal visibility is an equivalence, so linking pairs yields its classes.
    components(&ids, |i, j| {
        precisely_equivalent(z, &ids[i], &ids[j]).expect("frames exist")
    })
}

/// Connected components of `l ≻ m or m ≻ l`.
pub fn visibility_classes(z: &ChangeableSet) -> FramePartition {
    let ids = z.frame_ids();
    components(&ids, |i, j| {
        is_visible(z, &ids[i], &ids[j]).expect("frames exist") || is_visible(z, &ids[j], &ids[i]).expect("frames exist")
    })
}

pub fn is_connected_visible(z: &ChangeableSet) -> bool {
    visibility_classes(z).len() == 1
}

/// The single state of `⟨l→m⟩{ω}`. Only the pointwise condition is required,
/// not precise visibility of the whole changeable set.
pub fn visible_image(z: &ChangeableSet, l: &str, m: &str, omega: &Ets) -> Result<Ets> {
    let img = apply_uni(z, l, m, &System::from([omega.clone()]))?;
    if img.len() != 1 {
        return Err(Error::NotSingletonImage(img.len()));
    }
    Ok(img.into_iter().next().expect("one element"))
}

/// `⟨l→m⟩A` assembled from the visible images of the states of `A`.
pub fn pointwise_uni(z: &ChangeableSet, l: &str, m: &str, a: &System) -> Result<System> {
    frame_states(z, l, a)?;
    z.frame(m)?;
    if a.is_empty() {
        return Err(Error::BadParams("pointwise image needs a nonempty system".into()));
    }
    if !is_precisely_visible_cset(z) {
        return Err(Error::NotPreciselyVisible);
    }
    a.iter().map(|w| visible_image(z, l, m, w)).collect()
}

/// Frame grades for every ordered pair `(l, m)`.
pub fn visibility_matrix(z: &ChangeableSet, partition_limit: usize) -> Result<Vec<(String, String, Grade)>> {
    let ids = z.frame_ids();
    let mut out = Vec::with_capacity(ids.len() * ids.len());
    for l in &ids {
        for m in &ids {
            out.push((l.clone(), m.clone(), frame_grade_with(z, l, m, partition_limit)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiverse::{fixture, make_znv, make_zpv, path_bcs, FixtureKind};

    fn grade(z: &ChangeableSet, l: &str, m: &str) -> Grade {
        frame_grade(z, l, m).unwrap()
    }

    fn names(p: &FramePartition) -> Vec<Vec<&str>> {
        p.blocks
            .iter()
            .map(|b| b.iter().map(String::as_str).collect())
            .collect()
    }

    fn zpv() -> ChangeableSet {
        let frames = BTreeMap::from([
            ("f1".to_string(), path_bcs(&["a", "b", "c"])),
            ("f2".to_string(), path_bcs(&["d", "e", "f"])),
        ]);
        let s1 = frames["f1"].states().to_vec();
        let s2 = frames["f2"].states().to_vec();
        let fwd: BTreeMap<Ets, Ets> = s1.iter().cloned().zip(s2.iter().rev().cloned()).collect();
        let bwd = fwd.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        make_zpv(
            frames,
            BTreeMap::from([
                (("f1".to_string(), "f2".to_string()), fwd),
                (("f2".to_string(), "f1".to_string()), bwd),
            ]),
        )
        .unwrap()
    }

    fn znv(n: usize) -> ChangeableSet {
        make_znv((1..=n).map(|k| (format!("f{k}"), path_bcs(&["a", "b"]))).collect()).unwrap()
    }

    #[test]
    fn restricted_growth_strings() {
        let counts: Vec<usize> = (0..8).map(|n| Partitions::new(n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52, 203, 877]);
        let three: Vec<Vec<usize>> = Partitions::new(3).collect();
        assert_eq!(
            three,
            [[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [0, 1, 2]].map(|r| r.to_vec())
        );
    }

    #[test]
    fn system_grades() {
        let z1 = fixture(FixtureKind::Z1, 0).unwrap();
        let all = z1.frame("l1").unwrap().state_set();
        assert_eq!(system_grade(&z1, "l1", "l2", &all, 10).unwrap(), Grade::Visible);
        let z2 = fixture(FixtureKind::Z2, 0).unwrap();
        assert_eq!(system_grade(&z2, "l1", "l2", &all, 10).unwrap(), Grade::NormallyVisible);
        assert_eq!(
            system_grade(&z2, "l1", "l1", &all, 10).unwrap(),
            Grade::PreciselyVisible
        );
        assert_eq!(
            system_grade(&z2, "l1", "l2", &System::new(), 10).unwrap(),
            Grade::Invisible
        );
        assert!(matches!(
            system_grade(&z2, "l1", "l9", &all, 10),
            Err(Error::UnknownFrame(_))
        ));
        assert!(matches!(
            system_grade(&z2, "l1", "l1", &all, 1),
            Err(Error::PartitionLimitExceeded(2, 1))
        ));
    }

    #[test]
    fn frame_grades_on_fixtures() {
        let z1 = fixture(FixtureKind::Z1, 0).unwrap();
        assert_eq!(grade(&z1, "l1", "l2"), Grade::Visible);
        assert!(grade(&z1, "l2", "l1") >= Grade::Visible);
        let sw = fixture(FixtureKind::StepWindow, 4).unwrap();
        for k in 1..4 {
            assert_eq!(
                grade(&sw, &format!("l{k}"), &format!("l{}", k + 1)),
                Grade::PreciselyVisible
            );
        }
        assert_eq!(grade(&sw, "l1", "l3"), Grade::NormallyVisible);
        assert_eq!(grade(&sw, "l3", "l1"), Grade::Invisible);
        let mp = fixture(FixtureKind::MovingPoint, 4).unwrap();
        assert_eq!(grade(&mp, "l1", "l2"), Grade::Visible);
        assert_eq!(grade(&mp, "l2", "l3"), Grade::Visible);
        assert_eq!(grade(&mp, "l1", "l3"), Grade::Invisible);
    }

    #[test]
    fn changeable_set_predicates() {
        let z = zpv();
        assert!(is_precisely_visible_cset(&z));
        assert!(composition_criterion(&z, CheckMode::default()).unwrap());
        assert!(precisely_equivalent(&z, "f1", "f2").unwrap());
        assert_eq!(names(&precise_visibility_classes(&z)), [["f1", "f2"]]);
        assert!(is_connected_visible(&z));

        let z1 = fixture(FixtureKind::Z1, 0).unwrap();
        assert!(!is_precisely_visible_cset(&z1));
        let w = composition_witness(&z1, CheckMode::default()).unwrap().unwrap();
        assert_ne!(w.composed, w.direct);
        assert!(!precisely_equivalent(&z1, "l1", "l2").unwrap());
        assert!(precisely_equivalent(&z1, "l1", "l1").unwrap());
        assert_eq!(names(&precise_visibility_classes(&z1)), [["l1"], ["l2"]]);
        assert_eq!(names(&visibility_classes(&z1)), [["l1", "l2"]]);

        let z2 = fixture(FixtureKind::Z2, 0).unwrap();
        assert!(!composition_criterion(&z2, CheckMode::default()).unwrap());
        assert!(!composition_criterion(&z2, CheckMode::Sampled { seed: 1, n: 20 }).unwrap());

        assert!(!is_precisely_visible_cset(&znv(2)));
        assert_eq!(names(&precise_visibility_classes(&znv(3))), [["f1"], ["f2"], ["f3"]]);
        assert_eq!(visibility_classes(&znv(2)).len(), 2);
        assert!(!is_connected_visible(&znv(2)));

        let mp = fixture(FixtureKind::MovingPoint, 3).unwrap();
        assert_eq!(names(&visibility_classes(&mp)), [["l1", "l2", "l3"]]);
        assert!(is_connected_visible(&mp));
    }

    #[test]
    fn visible_images() {
        let z = zpv();
        let s1 = z.frame("f1").unwrap().states().to_vec();
        let s2 = z.frame("f2").unwrap().states().to_vec();
        assert_eq!(visible_image(&z, "f1", "f2", &s1[0]).unwrap(), s2[2]);
        assert_eq!(visible_image(&z, "f1", "f1", &s1[1]).unwrap(), s1[1]);
        let a: System = s1.iter().cloned().collect();
        assert_eq!(
            pointwise_uni(&z, "f1", "f2", &a).unwrap(),
            z.frame("f2").unwrap().state_set()
        );
        assert_eq!(
            pointwise_uni(&z, "f1", "f2", &a).unwrap(),
            apply_uni(&z, "f1", "f2", &a).unwrap()
        );

        let z2 = fixture(FixtureKind::Z2, 0).unwrap();
        let w = z2.frame("l1").unwrap().states()[0].clone();
        assert_eq!(visible_image(&z2, "l1", "l2", &w).unwrap(), Ets::new("1", "w"));
        assert!(matches!(
            pointwise_uni(&z2, "l1", "l2", &System::from([w])),
            Err(Error::NotPreciselyVisible)
        ));
        let z1 = fixture(FixtureKind::Z1, 0).unwrap();
        let v = Ets::new("1", "w");
        assert_eq!(visible_image(&z1, "l2", "l1", &v), Err(Error::NotSingletonImage(2)));
    }
}
