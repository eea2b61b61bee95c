//! Small named structures used throughout the tests, the CLI and the demo.

use crate::chronology::Chronologization;
use crate::order::OrientedSet;
use crate::simultaneity::Simultaneity;
use crate::{set_of, Set};

fn os(elements: &[&str], arrows: &[(&str, &str)]) -> OrientedSet {
    OrientedSet::new(
        elements.iter().copied(),
        arrows.iter().map(|(a, b)| (a.to_string(), b.to_string())),
        true,
    )
    .expect("fixture oriented set")
}

fn chron(points: &[(&str, &[&str])]) -> Chronologization {
    Chronologization::new(
        points.iter().map(|(t, _)| t.to_string()).collect(),
        points.iter().map(|(_, xs)| set_of(xs.iter().copied())).collect(),
    )
    .expect("fixture chronologization")
}

/// `{x1, x2}` with `x2 ← x1`.
pub fn f1() -> OrientedSet {
    os(&["x1", "x2"], &[("x1", "x2")])
}

/// `{x1, .., x4}` with `x2 ← x1` and `x4 ← x3`.
pub fn f2() -> OrientedSet {
    os(&["x1", "x2", "x3", "x4"], &[("x1", "x2"), ("x3", "x4")])
}

/// `{1, 2, 3, 4}` with `3 ← 1` and `4 ← 2`.
pub fn f3() -> OrientedSet {
    os(&["1", "2", "3", "4"], &[("1", "3"), ("2", "4")])
}

/// Three-cycle `b ← a`, `c ← b`, `a ← c` without shortcuts: no monotone time exists.
pub fn f4() -> OrientedSet {
    os(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
}

/// `{a, b}` with every pair related.
pub fn two_cycle() -> OrientedSet {
    os(&["a", "b"], &[("a", "b"), ("b", "a")])
}

pub fn singleton() -> OrientedSet {
    os(&["a"], &[])
}

/// On [`f2`]: `1 ↦ {x1,x3}`, `2 ↦ {x2,x4}`; monotone but not quasi one-point.
pub fn f2_monotone_time() -> Chronologization {
    chron(&[("1", &["x1", "x3"]), ("2", &["x2", "x4"])])
}

/// On [`f2`]: `t ↦ {x_t}`; quasi one-point and monotone but not one-point.
pub fn f2_point_time() -> Chronologization {
    chron(&[("1", &["x1"]), ("2", &["x2"]), ("3", &["x3"]), ("4", &["x4"])])
}

/// On [`f3`]: the classes `{1,2},{2,3},{3,4}`.
pub fn y3() -> Simultaneity {
    Simultaneity::new(vec![set_of(["1", "2"]), set_of(["2", "3"]), set_of(["3", "4"])])
}

/// On [`f3`]: `{1,2}, {2,3}, {3,4}` in that order; monotone.
pub fn psi1() -> Chronologization {
    chron(&[("1", &["1", "2"]), ("2", &["2", "3"]), ("3", &["3", "4"])])
}

/// On [`f3`]: `{1,2}, {3,4}, {2,3}` in that order; not monotone.
pub fn psi2() -> Chronologization {
    chron(&[("1", &["1", "2"]), ("2", &["3", "4"]), ("3", &["2", "3"])])
}

pub fn set(xs: &[&str]) -> Set {
    set_of(xs.iter().copied())
}
