//! Finite models of changeable sets: oriented sets and their times, simultaneities
//! and internal time, basic changeable sets built from trajectories, multi-frame
//! changeable sets with unification of perception, and visibility.

use std::collections::BTreeSet;

pub mod base;
pub mod chronology;
pub mod doc;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod multiverse;
pub mod oracle;
pub mod order;
pub mod relation;
pub mod simultaneity;
pub mod visibility;

pub use chronology::{Chronologization, TimeKindFlags, TimeViolation};
pub use error::{Error, Result};
pub use order::{ClassifyFlags, OrientedSet};
pub use simultaneity::Simultaneity;

/// A finite set of tokens in canonical order.
pub type Set = BTreeSet<String>;

pub fn set_of<I, S>(items: I) -> Set
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    items.into_iter().map(Into::into).collect()
}

/// Renders a set as `{a,b}`.
pub fn fmt_set(s: &Set) -> String {
    let parts: Vec<&str> = s.iter().map(String::as_str).collect();
    format!("{{{}}}", parts.join(","))
}
