//! Seeded random instances for property tests, the acceptance suite and
//! `chset oracle generate`.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{self, Bcs, Ets, Pcs, System, Trajectory, TrajectorySystem, TransMap};
use crate::chronology::{self, Chronologization};
use crate::doc::{Body, Kind};
use crate::error::{Error, Result};
use crate::multiverse::{self, frame_id, ChangeableSet, UniMap};
use crate::order::OrientedSet;
use crate::Set;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn elem(i: usize) -> String {
    format!("e{i}")
}

/// `1..=max_elems` elements; each ordered pair is an arrow with a density drawn per instance.
pub fn random_oriented_set<R: Rng>(rng: &mut R, max_elems: usize) -> OrientedSet {
    let n = rng.random_range(1..=max_elems.max(1));
    let density = rng.random_range(0.1..0.6);
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(density) {
                arrows.push((elem(a), elem(b)));
            }
        }
    }
    OrientedSet::new((0..n).map(elem), arrows, true).expect("generated oriented set")
}

/// A time with at most `max_moments` moments, retried at random and otherwise
/// the two-moment trivial time.
pub fn random_time<R: Rng>(rng: &mut R, os: &OrientedSet, max_moments: usize) -> Chronologization {
    for _ in 0..20 {
        let k = rng.random_range(1..=max_moments.max(1));
        let mut psi = vec![Set::new(); k];
        for x in os.elements() {
            psi[rng.random_range(0..k)].insert(x.clone());
            for s in psi.iter_mut() {
                if rng.random_bool(0.2) {
                    s.insert(x.clone());
                }
            }
        }
        let c = Chronologization::new((1..=k).map(|t| t.to_string()).collect(), psi).expect("scale");
        if chronology::is_time(os, &c).expect("elements of os") {
            return c;
        }
    }
    chronology::trivial_chronologization(os, 2).expect("two moments")
}

/// Scale `1..=k`, at most three trajectories with nonempty domains; the
/// universe is whatever the trajectories visit.
pub fn random_trajectory_system<R: Rng>(rng: &mut R, max_moments: usize, max_elems: usize) -> TrajectorySystem {
    let k = rng.random_range(1..=max_moments.max(1));
    let n = rng.random_range(1..=max_elems.max(1));
    let count = rng.random_range(1..=3);
    let scale: Vec<String> = (1..=k).map(|t| t.to_string()).collect();
    let trajectories: Vec<Trajectory> = (0..count)
        .map(|i| {
            let mut points = BTreeMap::new();
            while points.is_empty() {
                for t in &scale {
                    if rng.random_bool(0.6) {
                        points.insert(t.clone(), elem(rng.random_range(0..n)));
                    }
                }
            }
            Trajectory {
                id: format!("r{}", i + 1),
                points,
            }
        })
        .collect();
    let universe = trajectories.iter().flat_map(|r| r.points.values().cloned()).collect();
    TrajectorySystem::new(scale, universe, trajectories).expect("generated trajectory system")
}

/// A reflexive base containing a random share of the formal pairs and one
/// witness for every change of the oriented set.
pub fn random_base<R: Rng>(rng: &mut R, p: Pcs) -> Bcs {
    let formal = base::basic_from_formal(p.clone());
    let mut pairs: Vec<(Ets, Ets)> = formal
        .arrows()
        .into_iter()
        .filter(|(a, b)| a == b || rng.random_bool(0.4))
        .collect();
    for (x, y) in p.os().proper_arrows() {
        let witnesses: Vec<(Ets, Ets)> = formal
            .proper_arrows()
            .into_iter()
            .filter(|(a, b)| a.elem == x && b.elem == y)
            .collect();
        if let Some(w) = witnesses.choose(rng) {
            pairs.push(w.clone());
        }
    }
    base::make_basic(p, &pairs).expect("witnessed formal base")
}

/// Alternates between trajectory-generated structures and random bases on a
/// random primitive changeable set, retrying until `|BS| ≤ max_states`.
pub fn random_bcs<R: Rng>(rng: &mut R, max_states: usize) -> Bcs {
    let max_states = max_states.max(1);
    loop {
        let b = if rng.random_bool(0.5) {
            let ts = random_trajectory_system(rng, 4, max_states.min(4));
            base::at_from_trajectories(&ts).expect("trajectories generate a structure")
        } else {
            let os = random_oriented_set(rng, (max_states / 2).clamp(1, 4));
            let c = random_time(rng, &os, 3);
            random_base(rng, Pcs::new(os, c).expect("time"))
        };
        if b.states().len() <= max_states {
            return b;
        }
    }
}

pub fn random_system<R: Rng>(rng: &mut R, b: &Bcs) -> System {
    b.states().iter().filter(|_| rng.random_bool(0.5)).cloned().collect()
}

/// A random changeable process: at every moment a subset of the states present.
pub fn random_process<R: Rng>(rng: &mut R, b: &Bcs) -> Vec<Set> {
    b.chron()
        .images()
        .iter()
        .map(|s| s.iter().filter(|_| rng.random_bool(0.5)).cloned().collect())
        .collect()
}

/// Renames states to `(t', x')` with random moments of the same scale.
fn random_transform<R: Rng>(rng: &mut R, b: &Bcs, tag: usize) -> TransMap {
    let scale = b.chron().scale();
    TransMap {
        map: b
            .states()
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let t = if rng.random_bool(0.5) {
                    w.time.clone()
                } else {
                    scale.choose(rng).expect("nonempty scale").clone()
                };
                (w.clone(), Ets::new(t, format!("s{tag}_{i}")))
            })
            .collect(),
    }
}

/// Frames joined through injective maps into a common hub: `⟨l→m⟩A = g_m⁻¹(g_l(A))`,
/// stored as full tables.
fn partial_hub<R: Rng>(rng: &mut R, frames: BTreeMap<String, Bcs>, hub: usize) -> Result<ChangeableSet> {
    let mut g: BTreeMap<String, BTreeMap<Ets, usize>> = BTreeMap::new();
    for (id, b) in &frames {
        let mut slots: Vec<usize> = (0..hub).collect();
        slots.shuffle(rng);
        g.insert(id.clone(), b.states().iter().cloned().zip(slots).collect());
    }
    let mut uni = BTreeMap::new();
    for (l, bl) in &frames {
        for m in frames.keys() {
            let states = bl.states();
            let rows = (0..1u64 << states.len())
                .map(|mask| {
                    let a = multiverse::from_mask(states, mask);
                    let image = g[m]
                        .iter()
                        .filter(|(_, slot)| a.iter().any(|w| g[l][w] == **slot))
                        .map(|(w, _)| w.clone())
                        .collect();
                    (a, image)
                })
                .collect();
            uni.insert((l.clone(), m.clone()), UniMap::Table(rows));
        }
    }
    ChangeableSet::new(frames, uni)
}

/// A changeable set satisfying the unification axioms, drawn from several
/// families so that both precisely visible and non-visible instances occur.
pub fn random_cset<R: Rng>(rng: &mut R, max_frames: usize, max_states: usize) -> ChangeableSet {
    let max_frames = max_frames.max(1);
    loop {
        let frames_in = |rng: &mut R, n: usize| -> BTreeMap<String, Bcs> {
            (1..=n).map(|k| (frame_id(k), random_bcs(rng, max_states))).collect()
        };
        let n = rng.random_range(1..=max_frames);
        let z = match rng.random_range(0..7) {
            0 => multiverse::make_znv(frames_in(rng, n)),
            1 => {
                let b = random_bcs(rng, max_states);
                let transforms: Vec<TransMap> = (0..n).map(|k| random_transform(rng, &b, k)).collect();
                multiverse::make_zim(&b, &transforms)
            }
            2 => {
                let frames = frames_in(rng, n);
                partial_hub(rng, frames, max_states.max(1))
            }
            3 | 4 if max_frames >= 2 => {
                let mut f = frames_in(rng, 2);
                let b2 = f.remove(&frame_id(2)).expect("two frames");
                let b1 = f.remove(&frame_id(1)).expect("two frames");
                let omega = b2.states().choose(rng).expect("nonempty frame").clone();
                if rng.random_bool(0.5) {
                    multiverse::fixture_z1(b1, b2, omega)
                } else {
                    multiverse::fixture_z2(b1, b2, omega)
                }
            }
            5 if max_frames >= 3 => multiverse::fixture_step_window(random_bcs(rng, max_states), 3),
            6 if max_frames >= 3 => {
                let b = random_bcs(rng, max_states);
                let mut states = b.states().to_vec();
                states.shuffle(rng);
                states.truncate(3);
                multiverse::fixture_moving_point(b, states)
            }
            _ => continue,
        };
        if let Ok(z) = z {
            return z;
        }
    }
}

/// `count` documents of `kind`, reproducible from `seed`.
pub fn generate(kind: Kind, count: usize, seed: u64, max_elems: usize) -> Result<Vec<Body>> {
    if count == 0 || max_elems == 0 {
        return Err(Error::BadBounds("count and size bounds must be positive".into()));
    }
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            Ok(match kind {
                Kind::OrientedSet => Body::OrientedSet(random_oriented_set(&mut rng, max_elems)),
                Kind::TrajectorySystem => Body::TrajectorySystem(random_trajectory_system(&mut rng, 4, max_elems)),
                Kind::Pcs => {
                    let os = random_oriented_set(&mut rng, max_elems);
                    let c = random_time(&mut rng, &os, 4);
                    Body::Pcs(os, c)
                }
                Kind::Bcs => Body::from_bcs(&random_bcs(&mut rng, max_elems)),
                Kind::ChangeableSet => Body::ChangeableSet(random_cset(&mut rng, 3, max_elems)),
                other => return Err(Error::BadBounds(format!("no generator for {other}"))),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiverse::{check_unification, CheckMode};

    #[test]
    fn generators_are_reproducible() {
        let a = generate(Kind::OrientedSet, 20, 42, 6).unwrap();
        let b = generate(Kind::OrientedSet, 20, 42, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate(Kind::OrientedSet, 20, 43, 6).unwrap());
        assert!(matches!(generate(Kind::Bcs, 0, 1, 4), Err(Error::BadBounds(_))));
    }

    #[test]
    fn generated_structures_are_valid() {
        let mut r = rng(7);
        for _ in 0..50 {
            let b = random_bcs(&mut r, 8);
            assert!(b.states().len() <= 8);
        }
        for _ in 0..30 {
            let z = random_cset(&mut r, 3, 6);
            assert!(z.frames().len() <= 3);
            assert!(z.frames().values().all(|b| b.states().len() <= 6));
            assert!(check_unification(&z, CheckMode::default()).unwrap().is_empty());
        }
    }
}
