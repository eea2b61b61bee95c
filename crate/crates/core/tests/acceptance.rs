//! The acceptance criteria, one PASS/FAIL line each. Every check is exact.

use std::collections::BTreeMap;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chset_core::base::{self, Bcs, Ets, System};
use chset_core::chronology::{self, chronologizations_equivalent};
use chset_core::fixtures;
use chset_core::gen;
use chset_core::multiverse::{self, apply_uni, fixture, ChangeableSet, CheckMode, FixtureKind};
use chset_core::oracle;
use chset_core::simultaneity::{self, Simultaneity};
use chset_core::visibility::{self, Grade};
use chset_core::OrientedSet;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const TIME_BUDGET: Duration = Duration::from_secs(60);

fn c1_time_kinds() -> Outcome {
    let k = chronology::time_kind(&fixtures::f2(), &fixtures::f2_monotone_time()).map_err(|e| e.to_string())?;
    ensure!(k.monotone && !k.quasi_one_point, "two-moment time on F2: {k:?}");
    let k = chronology::time_kind(&fixtures::f2(), &fixtures::f2_point_time()).map_err(|e| e.to_string())?;
    ensure!(
        k.quasi_one_point && k.monotone && !k.one_point,
        "four-moment time on F2: {k:?}"
    );
    Ok("F2 time kinds match".into())
}

fn c2_simultaneity_example() -> Outcome {
    let (f3, y3) = (fixtures::f3(), fixtures::y3());
    let e = |r: chset_core::Result<bool>| r.map_err(|e| e.to_string());
    ensure!(simultaneity::is_unrepeatable(&f3, y3.classes()), "Y3 repeatable");
    ensure!(
        e(simultaneity::is_monotone_connected(&f3, &y3))?,
        "Y3 not monotone connected"
    );
    ensure!(e(simultaneity::is_precise(&f3, &y3))?, "Y3 not precise");
    let k1 = chronology::time_kind(&f3, &fixtures::psi1()).map_err(|e| e.to_string())?;
    ensure!(k1.monotone, "psi1 not monotone");
    ensure!(chronology::is_unrepeatable_time(&fixtures::psi1()), "psi1 repeats");
    let k2 = chronology::time_kind(&f3, &fixtures::psi2()).map_err(|e| e.to_string())?;
    ensure!(!k2.monotone, "psi2 monotone");
    for psi in [fixtures::psi1(), fixtures::psi2()] {
        let y = chronology::simultaneity_of(&f3, &psi).map_err(|e| e.to_string())?;
        ensure!(y == y3, "simultaneity of {psi:?} is {y:?}");
    }
    Ok("F3/Y3 predicates and both times match".into())
}

/// Random simultaneities read off random times, kept when the internal-time
/// preconditions hold.
fn internal_time_instances() -> Vec<(OrientedSet, Simultaneity)> {
    let mut rng = gen::rng(3);
    let mut out = vec![(fixtures::f3(), fixtures::y3())];
    for _ in 0..400 {
        let os = gen::random_oriented_set(&mut rng, 5);
        let c = gen::random_time(&mut rng, &os, 4);
        let y = chronology::simultaneity_of(&os, &c).expect("time");
        let ok = simultaneity::is_unrepeatable(&os, y.classes())
            && simultaneity::is_precise(&os, &y).unwrap()
            && simultaneity::is_monotone_connected(&os, &y).unwrap();
        if ok {
            out.push((os, y));
        }
    }
    out
}

fn c3_internal_time() -> Outcome {
    let (f3, y3) = (fixtures::f3(), fixtures::y3());
    let psi = simultaneity::internal_time(&f3, &y3).map_err(|e| e.to_string())?;
    let k = chronology::time_kind(&f3, &psi).map_err(|e| e.to_string())?;
    ensure!(k.strictly_monotone, "internal time of Y3 not strictly monotone");
    ensure!(
        chronology::simultaneity_of(&f3, &psi).map_err(|e| e.to_string())? == y3,
        "internal time does not generate Y3"
    );
    ensure!(
        chronologizations_equivalent(&psi, &fixtures::psi1()),
        "not equivalent to psi1"
    );
    let instances = internal_time_instances();
    for (os, y) in &instances {
        let internal = simultaneity::internal_time(os, y).map_err(|e| format!("{os:?} {y:?}: {e}"))?;
        let found = oracle::strictly_monotone_generating_times(os, y).map_err(|e| e.to_string())?;
        ensure!(!found.is_empty(), "search missed the internal time of {y:?}");
        for c in &found {
            ensure!(
                chronologizations_equivalent(c, &internal),
                "{c:?} differs from the internal time {internal:?}"
            );
        }
    }
    Ok(format!("unique up to equivalence on {} instances", instances.len()))
}

fn c4_chronologizations() -> Outcome {
    let mut rng = gen::rng(4);
    let (mut chain, mut cyclic) = (0, 0);
    for i in 0..200 {
        let os = gen::random_oriented_set(&mut rng, 7);
        let c = chronology::chronologize_any(&os);
        ensure!(
            chronology::check_time(&os, &c).unwrap().is_empty(),
            "instance {i}: not a time"
        );
        ensure!(
            chronology::time_kind(&os, &c).unwrap().quasi_one_point,
            "instance {i}: not quasi one-point"
        );
        let flags = os.classify();
        if flags.chain_oriented {
            chain += 1;
            let c = chronology::chronologize_chain(&os).map_err(|e| e.to_string())?;
            ensure!(
                chronology::time_kind(&os, &c).unwrap().one_point,
                "instance {i}: chain time not one-point"
            );
        }
        if flags.cyclic {
            cyclic += 1;
            let c = chronology::chronologize_cyclic(&os).map_err(|e| e.to_string())?;
            ensure!(
                chronology::time_kind(&os, &c).unwrap().one_point,
                "instance {i}: cyclic time not one-point"
            );
        }
    }
    Ok(format!("200 oriented sets, {chain} chain oriented, {cyclic} cyclic"))
}

fn c5_roundtrip() -> Outcome {
    let mut rng = gen::rng(5);
    for i in 0..200 {
        let b = gen::random_bcs(&mut rng, 8);
        ensure!(b.states().len() <= 8, "instance {i} too large");
        ensure!(base::roundtrip_holds(&b), "instance {i}: {b:?}");
    }
    Ok("200 basic changeable sets rebuilt from their fate lines".into())
}

fn c6_duality() -> Outcome {
    let mut rng = gen::rng(6);
    for i in 0..200 {
        let b = gen::random_bcs(&mut rng, 8);
        let s = gen::random_system(&mut rng, &b);
        let p = base::process_of(&b, &s).map_err(|e| e.to_string())?;
        ensure!(
            base::system_of(&b, &p).map_err(|e| e.to_string())? == s,
            "instance {i}: system"
        );
        let p = gen::random_process(&mut rng, &b);
        let s = base::system_of(&b, &p).map_err(|e| e.to_string())?;
        ensure!(
            base::process_of(&b, &s).map_err(|e| e.to_string())? == p,
            "instance {i}: process"
        );
    }
    Ok("200 systems and 200 processes".into())
}

fn grade(z: &ChangeableSet, l: &str, m: &str) -> Grade {
    visibility::frame_grade(z, l, m).expect("frames exist")
}

fn c7_counterexamples() -> Outcome {
    let z1 = fixture(FixtureKind::Z1, 0).unwrap();
    ensure!(
        grade(&z1, "l1", "l2") == Grade::Visible,
        "z1: l1 from l2 is {}",
        grade(&z1, "l1", "l2")
    );
    ensure!(grade(&z1, "l2", "l1") >= Grade::Visible, "z1: l2 invisible from l1");
    let z2 = fixture(FixtureKind::Z2, 0).unwrap();
    ensure!(
        grade(&z2, "l1", "l2") == Grade::NormallyVisible,
        "z2: {}",
        grade(&z2, "l1", "l2")
    );
    let sw = fixture(FixtureKind::StepWindow, 4).unwrap();
    for k in 1..4 {
        let (l, m) = (format!("l{k}"), format!("l{}", k + 1));
        ensure!(
            grade(&sw, &l, &m) == Grade::PreciselyVisible,
            "step-window: {l} from {m}"
        );
    }
    ensure!(
        grade(&sw, "l1", "l3") < Grade::PreciselyVisible,
        "step-window: l1 precisely from l3"
    );
    let mp = fixture(FixtureKind::MovingPoint, 4).unwrap();
    ensure!(grade(&mp, "l1", "l2") >= Grade::Visible, "moving-point: l1 from l2");
    ensure!(grade(&mp, "l2", "l3") >= Grade::Visible, "moving-point: l2 from l3");
    ensure!(grade(&mp, "l1", "l3") == Grade::Invisible, "moving-point: l1 from l3");
    Ok("z1, z2, step-window(4), moving-point(4)".into())
}

fn zpv_instances() -> Vec<ChangeableSet> {
    let b = multiverse::path_bcs(&["a", "b", "c"]);
    let to_hub: BTreeMap<String, BTreeMap<Ets, Ets>> = ["f1", "f2", "f3"]
        .iter()
        .enumerate()
        .map(|(k, id)| {
            let n = b.states().len();
            let map = b
                .states()
                .iter()
                .enumerate()
                .map(|(i, w)| (w.clone(), Ets::new("h", ((i + k) % n).to_string())))
                .collect();
            (id.to_string(), map)
        })
        .collect();
    let frames = to_hub.keys().map(|id| (id.clone(), b.clone())).collect();
    let hub = multiverse::make_zpv(frames, multiverse::hub_bijections(&to_hub).unwrap()).unwrap();
    let two = multiverse::make_zim(
        &b,
        &[
            base::TransMap::identity(&b),
            base::TransMap {
                map: b
                    .states()
                    .iter()
                    .map(|w| (w.clone(), Ets::new(w.time.clone(), format!("{}'", w.elem))))
                    .collect(),
            },
        ],
    )
    .unwrap();
    vec![hub, two]
}

fn fixture_corpus() -> Vec<ChangeableSet> {
    let mut out = vec![
        fixture(FixtureKind::Z1, 0).unwrap(),
        fixture(FixtureKind::Z2, 0).unwrap(),
        fixture(FixtureKind::StepWindow, 3).unwrap(),
        fixture(FixtureKind::StepWindow, 4).unwrap(),
        fixture(FixtureKind::MovingPoint, 3).unwrap(),
        fixture(FixtureKind::MovingPoint, 4).unwrap(),
        multiverse::make_znv(
            [("f1", &["a", "b"][..]), ("f2", &["c"][..])]
                .iter()
                .map(|(id, xs)| (id.to_string(), multiverse::path_bcs(xs)))
                .collect(),
        )
        .unwrap(),
    ];
    out.extend(zpv_instances());
    out
}

fn random_corpus() -> Vec<ChangeableSet> {
    let mut rng = gen::rng(8);
    (0..50).map(|_| gen::random_cset(&mut rng, 3, 6)).collect()
}

fn c8_criterion() -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for (i, z) in fixture_corpus().iter().chain(random_corpus().iter()).enumerate() {
        let by_composition = visibility::composition_criterion(z, CheckMode::default()).map_err(|e| e.to_string())?;
        let by_visibility = visibility::is_precisely_visible_cset(z);
        ensure!(
            by_composition == by_visibility,
            "instance {i}: composition {by_composition}, visibility {by_visibility}"
        );
        if by_visibility {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("{yes} precisely visible, {no} not"))
}

fn c9_fvieq() -> Outcome {
    let mut pairs = 0;
    for (i, z) in fixture_corpus().iter().chain(random_corpus().iter()).enumerate() {
        for l in z.frame_ids() {
            for m in z.frame_ids() {
                let normal = visibility::precisely_equivalent(z, &l, &m).unwrap();
                let precise = oracle::raw_frame_grade(z, &l, &m).unwrap() == Grade::PreciselyVisible
                    && oracle::raw_frame_grade(z, &m, &l).unwrap() == Grade::PreciselyVisible;
                ensure!(
                    normal == precise,
                    "instance {i} ({l}, {m}): normal {normal}, precise {precise}"
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered frame pairs"))
}

fn masks(b: &Bcs) -> Vec<System> {
    let n = b.states().len();
    (0..1u64 << n)
        .map(|m| {
            b.states()
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, w)| w.clone())
                .collect()
        })
        .collect()
}

fn c10_algebra() -> Outcome {
    let mut checked = 0;
    for z in fixture_corpus().into_iter().chain(random_corpus()) {
        if !visibility::is_precisely_visible_cset(&z) {
            continue;
        }
        checked += 1;
        for l in z.frame_ids() {
            let subsets = masks(z.frame(&l).unwrap());
            for m in z.frame_ids() {
                let u = |a: &System| apply_uni(&z, &l, &m, a).unwrap();
                let images: Vec<System> = subsets.iter().map(&u).collect();
                for (a, ua) in subsets.iter().zip(&images) {
                    for (b, ub) in subsets.iter().zip(&images) {
                        let meet: System = a.intersection(b).cloned().collect();
                        let diff: System = a.difference(b).cloned().collect();
                        let join: System = a.union(b).cloned().collect();
                        ensure!(u(&meet) == ua.intersection(ub).cloned().collect(), "∩ at {l}->{m}");
                        ensure!(u(&diff) == ua.difference(ub).cloned().collect(), "∖ at {l}->{m}");
                        ensure!(u(&join) == ua.union(ub).cloned().collect(), "∪ at {l}->{m}");
                    }
                    if a.len() == 1 {
                        ensure!(ua.len() == 1, "singleton image of size {} at {l}->{m}", ua.len());
                    }
                    if !a.is_empty() {
                        let p = visibility::pointwise_uni(&z, &l, &m, a).map_err(|e| e.to_string())?;
                        ensure!(&p == ua && p.len() == a.len(), "pointwise image at {l}->{m}");
                    }
                }
                let all = z.frame(&l).unwrap().state_set();
                ensure!(u(&all) == z.frame(&m).unwrap().state_set(), "BS image at {l}->{m}");
            }
        }
    }
    ensure!(checked > 0, "no precisely visible changeable set in the corpus");
    Ok(format!("{checked} precisely visible changeable sets"))
}

fn c11_oracles() -> Outcome {
    for (i, z) in fixture_corpus().iter().enumerate() {
        let cmp = oracle::visibility_exhaustive(z).map_err(|e| e.to_string())?;
        ensure!(cmp.mismatches.is_empty(), "fixture {i}: {:?}", cmp.mismatches);
    }
    let mut rng = gen::rng(11);
    let mut obstructed = vec![fixtures::f4()];
    while obstructed.len() < 25 {
        let extra = gen::random_oriented_set(&mut rng, 3);
        let mut elems: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        elems.extend(extra.elements().iter().cloned());
        let mut arrows: Vec<(String, String)> = fixtures::f4().arrows();
        arrows.extend(extra.arrows());
        for x in extra.elements() {
            if rand::Rng::random_bool(&mut rng, 0.3) {
                arrows.push((x.clone(), "a".into()));
            }
        }
        let os = OrientedSet::new(elems, arrows, true).unwrap();
        if chronology::monotone_obstruction(&os).is_some() {
            obstructed.push(os);
        }
    }
    for os in &obstructed {
        let found = oracle::monotone_chron(os, 5).map_err(|e| e.to_string())?;
        ensure!(found.is_none(), "monotone time found for {os:?}");
    }
    for (name, os, k) in [("F2", fixtures::f2(), 2), ("F3", fixtures::f3(), 3)] {
        let c = oracle::monotone_chron(&os, k).map_err(|e| e.to_string())?;
        let c = c.ok_or(format!("no monotone time for {name}"))?;
        ensure!(
            chronology::time_kind(&os, &c).unwrap().monotone,
            "{name}: result not monotone"
        );
    }
    Ok(format!(
        "{} fixtures, {} obstructed oriented sets",
        fixture_corpus().len(),
        obstructed.len()
    ))
}

fn is_equivalence(n: usize, rel: impl Fn(usize, usize) -> bool) -> bool {
    (0..n).all(|a| rel(a, a))
        && (0..n).all(|a| (0..n).all(|b| rel(a, b) == rel(b, a)))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))))
}

fn same_block(p: &visibility::FramePartition, a: &str, b: &str) -> bool {
    p.blocks
        .iter()
        .any(|blk| blk.iter().any(|x| x == a) && blk.iter().any(|x| x == b))
}

fn c12_relation_laws() -> Outcome {
    let mut structures = 0;
    for (i, z) in fixture_corpus().iter().chain(random_corpus().iter()).enumerate() {
        let ids = z.frame_ids();
        let n = ids.len();
        let nv = |a: usize, b: usize| visibility::is_normally_visible(z, &ids[a], &ids[b]).unwrap();
        ensure!(
            (0..n).all(|a| nv(a, a)),
            "instance {i}: normal visibility not reflexive"
        );
        ensure!(
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(nv(a, b) && nv(b, c)) || nv(a, c)))),
            "instance {i}: normal visibility not transitive"
        );
        ensure!(
            is_equivalence(n, |a, b| visibility::precisely_equivalent(z, &ids[a], &ids[b]).unwrap()),
            "instance {i}: mutual normal visibility not an equivalence"
        );
        let pv = visibility::precise_visibility_classes(z);
        ensure!(
            (0..n).all(|a| (0..n).all(|b| same_block(&pv, &ids[a], &ids[b]) == (nv(a, b) && nv(b, a)))),
            "instance {i}: precise visibility classes disagree with the relation"
        );
        let vc = visibility::visibility_classes(z);
        ensure!(
            is_equivalence(n, |a, b| same_block(&vc, &ids[a], &ids[b])),
            "instance {i}: visibility classes not an equivalence"
        );
        for a in 0..n {
            for b in 0..n {
                let direct = visibility::is_visible(z, &ids[a], &ids[b]).unwrap();
                ensure!(
                    !direct || same_block(&vc, &ids[a], &ids[b]),
                    "instance {i}: visible pair split"
                );
                ensure!(
                    apply_uni(z, &ids[a], &ids[b], &System::new()).unwrap().is_empty(),
                    "instance {i}: image of the empty system"
                );
            }
        }
        for b in z.frames().values() {
            let r = b.pcs().formal_relation();
            let k = b.states().len();
            ensure!(
                (0..k).all(|x| (0..k).all(|y| x == y || !(r.holds(x, y) && r.holds(y, x)))),
                "instance {i}: formal sequence relation not asymmetric"
            );
            structures += 1;
        }
    }
    let mut rng = gen::rng(12);
    for _ in 0..200 {
        let b = gen::random_bcs(&mut rng, 8);
        let r = b.pcs().formal_relation();
        let k = b.states().len();
        ensure!(
            (0..k).all(|x| (0..k).all(|y| x == y || !(r.holds(x, y) && r.holds(y, x)))),
            "formal sequence relation not asymmetric"
        );
        structures += 1;
    }
    Ok(format!(
        "{structures} basic changeable sets, {} changeable sets",
        fixture_corpus().len() + 50
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("time kinds on F2", c1_time_kinds),
        ("simultaneity example on F3", c2_simultaneity_example),
        ("internal time and its uniqueness", c3_internal_time),
        ("chronologization constructions", c4_chronologizations),
        ("fate-line round trip", c5_roundtrip),
        ("process/system duality", c6_duality),
        ("visibility counterexamples", c7_counterexamples),
        ("composition criterion", c8_criterion),
        ("mutual normal vs mutual precise visibility", c9_fvieq),
        ("precise-visibility algebra", c10_algebra),
        ("oracle concordance", c11_oracles),
        ("relation laws", c12_relation_laws),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > TIME_BUDGET => Err(format!("exceeded {}s", TIME_BUDGET.as_secs())),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({} ms)", i + 1, elapsed.as_millis()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({} ms)", i + 1, elapsed.as_millis());
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
