//! Brute-force recomputations used to cross-check the fast algorithms. Each one
//! works from the definitions directly and shares no search code with them.

use std::collections::HashMap;

use crate::base::{Ets, System};
use crate::chronology::{self, Chronologization};
use crate::error::{Error, Result};
use crate::multiverse::{apply_uni, from_mask, ChangeableSet};
use crate::order::OrientedSet;
use crate::simultaneity::Simultaneity;
use crate::visibility::{self, Grade};
use crate::Set;

pub const MAX_SEARCH_ELEMS: usize = 6;
pub const MAX_SCALE_BOUND: usize = 6;

/// Searches every time with at most `scale_bound` moments for a monotone one.
///
/// Both the time condition and monotonicity depend only on the first and last
/// moment of each element, so the search assigns every element an interval of
/// moments and occupies just its two endpoints. Empty moments are dropped from
/// the result. `None` means none exists within the bound.
pub fn monotone_chron(os: &OrientedSet, scale_bound: usize) -> Result<Option<Chronologization>> {
    let n = os.len();
    if n > MAX_SEARCH_ELEMS {
        return Err(Error::SizeLimitExceeded("elements".into(), n, MAX_SEARCH_ELEMS));
    }
    if scale_bound > MAX_SCALE_BOUND {
        return Err(Error::SizeLimitExceeded(
            "scale bound".into(),
            scale_bound,
            MAX_SCALE_BOUND,
        ));
    }
    let elems = os.elements();
    let leads = |a: usize, b: usize| a != b && os.leads(&elems[a], &elems[b]);
    let strict = |a: usize, b: usize| os.strictly_leads(&elems[a], &elems[b]);
    let ok = |a: usize, ia: (usize, usize), b: usize, ib: (usize, usize)| {
        (!leads(a, b) || ia.0 < ib.1)
            && (!leads(b, a) || ib.0 < ia.1)
            && (!strict(a, b) || ia.1 < ib.0)
            && (!strict(b, a) || ib.1 < ia.0)
    };
    let intervals: Vec<(usize, usize)> = (0..scale_bound)
        .flat_map(|f| (f..scale_bound).map(move |l| (f, l)))
        .collect();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(n);
    fn assign(
        n: usize,
        intervals: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        ok: &dyn Fn(usize, (usize, usize), usize, (usize, usize)) -> bool,
    ) -> bool {
        let x = chosen.len();
        if x == n {
            return true;
        }
        for &iv in intervals {
            if (0..x).all(|y| ok(x, iv, y, chosen[y])) {
                chosen.push(iv);
                if assign(n, intervals, chosen, ok) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if !assign(n, &intervals, &mut chosen, &ok) {
        return Ok(None);
    }
    let psi: Vec<Set> = (0..scale_bound)
        .map(|t| {
            (0..n)
                .filter(|&i| chosen[i].0 == t || chosen[i].1 == t)
                .map(|i| elems[i].clone())
                .collect::<Set>()
        })
        .filter(|s| !s.is_empty())
        .collect();
    let scale = (1..=psi.len()).map(|t| t.to_string()).collect();
    Ok(Some(Chronologization::new(scale, psi)?))
}

/// Every strictly monotone time whose values are classes of `y` and that takes
/// every class, over sequences of length at most `|Y| + 1`.
pub fn strictly_monotone_generating_times(os: &OrientedSet, y: &Simultaneity) -> Result<Vec<Chronologization>> {
    let classes = y.classes();
    let k = classes.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for len in 1..=k + 1 {
        let mut idx = vec![0usize; len];
        loop {
            let adjacent_distinct = idx.windows(2).all(|w| w[0] != w[1]);
            let covers = (0..k).all(|c| idx.contains(&c));
            if adjacent_distinct && covers {
                let c = Chronologization::new(
                    (1..=len).map(|t| t.to_string()).collect(),
                    idx.iter().map(|&i| classes[i].clone()).collect(),
                )?;
                if chronology::is_time(os, &c)? && chronology::time_kind(os, &c)?.strictly_monotone {
                    out.push(c);
                }
            }
            let Some(pos) = (0..len).rev().find(|&p| idx[p] + 1 < k) else {
                break;
            };
            idx[pos] += 1;
            idx[pos + 1..].iter_mut().for_each(|v| *v = 0);
        }
    }
    Ok(out)
}

pub const MAX_ORACLE_STATES: usize = 8;

/// Images of subsets of one frame, memoized by source mask.
struct Images<'a> {
    z: &'a ChangeableSet,
    l: &'a str,
    m: &'a str,
    states: &'a [Ets],
    memo: HashMap<u64, System>,
}

impl<'a> Images<'a> {
    fn new(z: &'a ChangeableSet, l: &'a str, m: &'a str) -> Result<Self> {
        Ok(Images {
            z,
            l,
            m,
            states: z.frame(l)?.states(),
            memo: HashMap::new(),
        })
    }

    fn of(&mut self, mask: u64) -> Result<&System> {
        if !self.memo.contains_key(&mask) {
            let img = apply_uni(self.z, self.l, self.m, &from_mask(self.states, mask))?;
            self.memo.insert(mask, img);
        }
        Ok(&self.memo[&mask])
    }
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    // Nonempty submasks, largest first.
    let mut s = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = s;
        s = (s - 1) & mask;
        done = s == 0;
        Some(out)
    })
}

/// All partitions of `mask`: the lowest element joins every possible block.
fn partitions(mask: u64, f: &mut dyn FnMut(&[u64]) -> Result<bool>) -> Result<bool> {
    fn go(rest: u64, blocks: &mut Vec<u64>, f: &mut dyn FnMut(&[u64]) -> Result<bool>) -> Result<bool> {
        if rest == 0 {
            return f(blocks);
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        let mut t = others;
        loop {
            blocks.push(low | t);
            let keep = go(others & !t, blocks, f)?;
            blocks.pop();
            if !keep {
                return Ok(false);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & others;
        }
        Ok(true)
    }
    go(mask, &mut Vec::new(), f)
}

fn raw_grade(img: &mut Images, mask: u64) -> Result<Grade> {
    if mask == 0 || img.of(mask)?.is_empty() {
        return Ok(Grade::Invisible);
    }
    for b in submasks(mask) {
        if img.of(b)?.is_empty() {
            return Ok(Grade::Visible);
        }
    }
    let whole = img.of(mask)?.clone();
    let precise = partitions(mask, &mut |blocks| {
        let mut union = System::new();
        for &b in blocks {
            let part = img.of(b)?;
            if !part.is_disjoint(&union) {
                return Ok(false);
            }
            union.extend(part.iter().cloned());
        }
        Ok(union == whole)
    })?;
    Ok(if precise {
        Grade::PreciselyVisible
    } else {
        Grade::NormallyVisible
    })
}

fn require_small(z: &ChangeableSet) -> Result<()> {
    for (l, b) in z.frames() {
        if b.states().len() > MAX_ORACLE_STATES {
            return Err(Error::SizeLimitExceeded(l.clone(), b.states().len(), MAX_ORACLE_STATES));
        }
    }
    Ok(())
}

/// Grade of `a` from the definitions: every subsystem and every partition.
pub fn raw_system_grade(z: &ChangeableSet, l: &str, m: &str, a: &System) -> Result<Grade> {
    let mut img = Images::new(z, l, m)?;
    z.frame(m)?;
    let mask = a.iter().try_fold(0u64, |acc, w| {
        img.states
            .iter()
            .position(|s| s == w)
            .map(|i| acc | 1 << i)
            .ok_or_else(|| Error::ForeignStates(l.to_string()))
    })?;
    raw_grade(&mut img, mask)
}

/// Frame grade from the definitions: visible if some system is, normally or
/// precisely visible if every nonempty system is.
pub fn raw_frame_grade(z: &ChangeableSet, l: &str, m: &str) -> Result<Grade> {
    let mut img = Images::new(z, l, m)?;
    let n = img.states.len();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut lowest = Grade::PreciselyVisible;
    let mut any_visible = false;
    for a in submasks(full) {
        let g = raw_grade(&mut img, a)?;
        any_visible |= g > Grade::Invisible;
        lowest = lowest.min(g);
    }
    Ok(match (any_visible, lowest) {
        (false, _) => Grade::Invisible,
        (true, Grade::Invisible) => Grade::Visible,
        (true, g) => g,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeMismatch {
    pub from: String,
    pub to: String,
    /// `None` for the frame grade, otherwise the subsystem compared.
    pub subset: Option<System>,
    pub reduced: Grade,
    pub raw: Grade,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityComparison {
    pub frame_grades: Vec<(String, String, Grade)>,
    pub systems_compared: usize,
    pub mismatches: Vec<GradeMismatch>,
}

/// Compares every frame grade and every system grade against the definitions.
pub fn visibility_exhaustive(z: &ChangeableSet) -> Result<VisibilityComparison> {
    require_small(z)?;
    let ids = z.frame_ids();
    let mut out = VisibilityComparison {
        frame_grades: Vec::new(),
        systems_compared: 0,
        mismatches: Vec::new(),
    };
    for l in &ids {
        for m in &ids {
            let reduced = visibility::frame_grade_with(z, l, m, MAX_ORACLE_STATES)?;
            let raw = raw_frame_grade(z, l, m)?;
            out.frame_grades.push((l.clone(), m.clone(), reduced));
            if reduced != raw {
                out.mismatches.push(GradeMismatch {
                    from: l.clone(),
                    to: m.clone(),
                    subset: None,
                    reduced,
                    raw,
                });
            }
            let states = z.frame(l)?.states();
            let mut img = Images::new(z, l, m)?;
            for mask in 0..1u64 << states.len() {
                let a = from_mask(states, mask);
                let reduced = visibility::system_grade(z, l, m, &a, MAX_ORACLE_STATES)?;
                let raw = raw_grade(&mut img, mask)?;
                out.systems_compared += 1;
                if reduced != raw {
                    out.mismatches.push(GradeMismatch {
                        from: l.clone(),
                        to: m.clone(),
                        subset: Some(a),
                        reduced,
                        raw,
                    });
                }
            }
        }
    }
    Ok(out)
}
