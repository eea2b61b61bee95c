//! JSON documents for every structure, with path-tagged schema errors and a
//! canonical byte-stable serialization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::base::{self, Bcs, Ets, Pcs, System, Trajectory, TrajectorySystem, TransMap};
use crate::chronology::Chronologization;
use crate::error::{Error, Result};
use crate::multiverse::{ChangeableSet, Rule, UniMap};
use crate::order::OrientedSet;
use crate::simultaneity::Simultaneity;
use crate::Set;

pub const VERSION: &str = "chset/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    OrientedSet,
    Chronologization,
    Simultaneity,
    TrajectorySystem,
    Pcs,
    Bcs,
    ChangeableSet,
    TransMap,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::OrientedSet,
        Kind::Chronologization,
        Kind::Simultaneity,
        Kind::TrajectorySystem,
        Kind::Pcs,
        Kind::Bcs,
        Kind::ChangeableSet,
        Kind::TransMap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::OrientedSet => "oriented-set",
            Kind::Chronologization => "chronologization",
            Kind::Simultaneity => "simultaneity",
            Kind::TrajectorySystem => "trajectory-system",
            Kind::Pcs => "pcs",
            Kind::Bcs => "bcs",
            Kind::ChangeableSet => "changeable-set",
            Kind::TransMap => "trans-map",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::SchemaViolation("/kind".into(), format!("unknown kind {s:?}")))
    }
}

/// A base of elementary processes as written, before its axioms are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcsDraft {
    pub os: OrientedSet,
    pub chron: Chronologization,
    /// Listed pairs plus the implied reflexive pairs of every state.
    pub pairs: Vec<(Ets, Ets)>,
}

impl BcsDraft {
    pub fn pcs(&self) -> Result<Pcs> {
        Pcs::new(self.os.clone(), self.chron.clone())
    }

    pub fn build(&self) -> Result<Bcs> {
        base::make_basic(self.pcs()?, &self.pairs)
    }
}

/// Primitive changeable sets are kept unvalidated so that `validate` can report
/// a failing time instead of rejecting the document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    OrientedSet(OrientedSet),
    Chronologization(Chronologization),
    Simultaneity(Simultaneity),
    TrajectorySystem(TrajectorySystem),
    Pcs(OrientedSet, Chronologization),
    Bcs(BcsDraft),
    ChangeableSet(ChangeableSet),
    TransMap(TransMap),
}

impl Body {
    pub fn kind(&self) -> Kind {
        match self {
            Body::OrientedSet(_) => Kind::OrientedSet,
            Body::Chronologization(_) => Kind::Chronologization,
            Body::Simultaneity(_) => Kind::Simultaneity,
            Body::TrajectorySystem(_) => Kind::TrajectorySystem,
            Body::Pcs(..) => Kind::Pcs,
            Body::Bcs(_) => Kind::Bcs,
            Body::ChangeableSet(_) => Kind::ChangeableSet,
            Body::TransMap(_) => Kind::TransMap,
        }
    }

    pub fn from_bcs(b: &Bcs) -> Body {
        let mut pairs = b.arrows();
        pairs.sort();
        Body::Bcs(BcsDraft {
            os: b.os().clone(),
            chron: b.chron().clone(),
            pairs,
        })
    }
}

fn violation(path: &str, reason: impl Into<String>) -> Error {
    Error::SchemaViolation(if path.is_empty() { "/".into() } else { path.into() }, reason.into())
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| violation(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| violation(path, "expected an array"))
}

fn string(v: &Value, path: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| violation(path, "expected a string"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| violation(&format!("{path}/{key}"), "missing field"))
}

fn strings(v: &Value, path: &str) -> Result<Vec<String>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("{path}/{i}")))
        .collect()
}

fn ets(v: &Value, path: &str) -> Result<Ets> {
    let parts = strings(v, path)?;
    match parts.as_slice() {
        [t, x] => Ok(Ets::new(t.clone(), x.clone())),
        _ => Err(violation(path, "expected [moment, element]")),
    }
}

fn ets_value(w: &Ets) -> Value {
    json!([w.time, w.elem])
}

fn system_value(s: &System) -> Value {
    Value::Array(s.iter().map(ets_value).collect())
}

fn system(v: &Value, path: &str) -> Result<System> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| ets(x, &format!("{path}/{i}")))
        .collect()
}

fn set_value(s: &Set) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn map_err_at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::SchemaViolation(..) => e,
        other => violation(path, other.to_string()),
    }
}

// Oriented sets.

fn parse_oriented_set(v: &Value, path: &str) -> Result<OrientedSet> {
    let m = object(v, path)?;
    let elements = strings(field(m, "elements", path)?, &format!("{path}/elements"))?;
    let known: BTreeSet<&String> = elements.iter().collect();
    let mut arrows = Vec::new();
    let arrows_path = format!("{path}/arrows");
    for (i, a) in array(field(m, "arrows", path)?, &arrows_path)?.iter().enumerate() {
        let p = format!("{arrows_path}/{i}");
        let am = object(a, &p)?;
        let from = string(field(am, "from", &p)?, &format!("{p}/from"))?;
        let to = string(field(am, "to", &p)?, &format!("{p}/to"))?;
        for (key, x) in [("from", &from), ("to", &to)] {
            if !known.contains(x) {
                return Err(violation(&format!("{p}/{key}"), format!("unknown element {x:?}")));
            }
        }
        arrows.push((from, to));
    }
    let reflexive = match m.get("reflexiveClosure") {
        None => true,
        Some(b) => b
            .as_bool()
            .ok_or_else(|| violation(&format!("{path}/reflexiveClosure"), "expected a boolean"))?,
    };
    OrientedSet::new(elements, arrows, reflexive).map_err(map_err_at(path))
}

fn oriented_set_value(os: &OrientedSet) -> Value {
    let mut elements = os.elements().to_vec();
    elements.sort();
    let mut arrows = os.proper_arrows();
    arrows.sort();
    json!({
        "elements": elements,
        "arrows": arrows.iter().map(|(a, b)| json!({"from": a, "to": b})).collect::<Vec<_>>(),
        "reflexiveClosure": true,
    })
}

// Times.

fn parse_chronologization(v: &Value, path: &str) -> Result<Chronologization> {
    let m = object(v, path)?;
    let scale = strings(field(m, "scale", path)?, &format!("{path}/scale"))?;
    let psi_path = format!("{path}/psi");
    let psi = object(field(m, "psi", path)?, &psi_path)?;
    for t in psi.keys() {
        if !scale.contains(t) {
            return Err(violation(&format!("{psi_path}/{t}"), "moment is not on the scale"));
        }
    }
    let images = scale
        .iter()
        .map(|t| match psi.get(t) {
            Some(xs) => strings(xs, &format!("{psi_path}/{t}")).map(|v| v.into_iter().collect()),
            None => Ok(Set::new()),
        })
        .collect::<Result<Vec<Set>>>()?;
    Chronologization::new(scale, images).map_err(map_err_at(&format!("{path}/scale")))
}

fn chronologization_value(c: &Chronologization) -> Value {
    let psi: Map<String, Value> = c.entries().map(|(t, s)| (t.clone(), set_value(s))).collect();
    json!({"scale": c.scale(), "psi": psi})
}

fn check_elements(os: &OrientedSet, c: &Chronologization, path: &str) -> Result<()> {
    for (t, s) in c.entries() {
        if let Some(x) = s.iter().find(|x| !os.contains(x)) {
            return Err(violation(&format!("{path}/psi/{t}"), format!("unknown element {x:?}")));
        }
    }
    Ok(())
}

// Simultaneities.

fn parse_simultaneity(v: &Value, path: &str) -> Result<Simultaneity> {
    let m = object(v, path)?;
    let cp = format!("{path}/classes");
    let classes = array(field(m, "classes", path)?, &cp)?
        .iter()
        .enumerate()
        .map(|(i, c)| strings(c, &format!("{cp}/{i}")).map(|v| v.into_iter().collect()))
        .collect::<Result<Vec<Set>>>()?;
    Ok(Simultaneity::new(classes))
}

fn simultaneity_value(y: &Simultaneity) -> Value {
    json!({"classes": y.classes().iter().map(set_value).collect::<Vec<_>>()})
}

// Trajectory systems.

fn parse_trajectory_system(v: &Value, path: &str) -> Result<TrajectorySystem> {
    let m = object(v, path)?;
    let scale = strings(field(m, "scale", path)?, &format!("{path}/scale"))?;
    let universe = strings(field(m, "universe", path)?, &format!("{path}/universe"))?;
    let tp = format!("{path}/trajectories");
    let mut trajectories = Vec::new();
    for (i, r) in array(field(m, "trajectories", path)?, &tp)?.iter().enumerate() {
        let p = format!("{tp}/{i}");
        let rm = object(r, &p)?;
        let id = string(field(rm, "id", &p)?, &format!("{p}/id"))?;
        let pp = format!("{p}/points");
        let points = object(field(rm, "points", &p)?, &pp)?
            .iter()
            .map(|(t, x)| Ok((t.clone(), string(x, &format!("{pp}/{t}"))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        trajectories.push(Trajectory { id, points });
    }
    TrajectorySystem::new(scale, universe.into_iter().collect(), trajectories).map_err(map_err_at(path))
}

fn trajectory_system_value(ts: &TrajectorySystem) -> Value {
    let mut trajs: Vec<&Trajectory> = ts.trajectories().iter().collect();
    trajs.sort_by(|a, b| a.id.cmp(&b.id));
    json!({
        "scale": ts.scale(),
        "universe": ts.universe(),
        "trajectories": trajs.iter().map(|r| json!({"id": r.id, "points": r.points})).collect::<Vec<_>>(),
    })
}

// Primitive and basic changeable sets.

fn parse_pcs(v: &Value, path: &str) -> Result<(OrientedSet, Chronologization)> {
    let m = object(v, path)?;
    let os = parse_oriented_set(field(m, "orientedSet", path)?, &format!("{path}/orientedSet"))?;
    let cp = format!("{path}/chronologization");
    let chron = parse_chronologization(field(m, "chronologization", path)?, &cp)?;
    check_elements(&os, &chron, &cp)?;
    Ok((os, chron))
}

fn pcs_value(os: &OrientedSet, c: &Chronologization) -> Value {
    json!({"orientedSet": oriented_set_value(os), "chronologization": chronologization_value(c)})
}

fn parse_bcs(v: &Value, path: &str) -> Result<BcsDraft> {
    let (os, chron) = parse_pcs(v, path)?;
    let m = object(v, path)?;
    let ap = format!("{path}/bsArrows");
    let mut pairs = Vec::new();
    let states: BTreeSet<Ets> = chron
        .entries()
        .flat_map(|(t, s)| s.iter().map(move |x| Ets::new(t.clone(), x.clone())))
        .collect();
    let listed = match m.get("bsArrows") {
        Some(a) => array(a, &ap)?.clone(),
        None => Vec::new(),
    };
    for (i, a) in listed.iter().enumerate() {
        let p = format!("{ap}/{i}");
        let am = object(a, &p)?;
        let from = ets(field(am, "from", &p)?, &format!("{p}/from"))?;
        let to = ets(field(am, "to", &p)?, &format!("{p}/to"))?;
        for (key, w) in [("from", &from), ("to", &to)] {
            if !states.contains(w) {
                return Err(violation(
                    &format!("{p}/{key}"),
                    format!("{w} is not an elementary-time state"),
                ));
            }
        }
        pairs.push((from, to));
    }
    pairs.extend(states.iter().map(|w| (w.clone(), w.clone())));
    pairs.sort();
    pairs.dedup();
    Ok(BcsDraft { os, chron, pairs })
}

fn bcs_value(d: &BcsDraft) -> Value {
    let mut v = pcs_value(&d.os, &d.chron);
    let arrows: Vec<Value> = d
        .pairs
        .iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| json!({"from": ets_value(a), "to": ets_value(b)}))
        .collect();
    v["bsArrows"] = Value::Array(arrows);
    v
}

// Changeable sets.

fn parse_pairs(v: &Value, path: &str) -> Result<BTreeMap<Ets, Ets>> {
    let mut out = BTreeMap::new();
    for (i, pair) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}/{i}");
        match array(pair, &p)?.as_slice() {
            [a, b] => {
                if out
                    .insert(ets(a, &format!("{p}/0"))?, ets(b, &format!("{p}/1"))?)
                    .is_some()
                {
                    return Err(violation(&p, "state mapped twice"));
                }
            }
            _ => return Err(violation(&p, "expected [state, image]")),
        }
    }
    Ok(out)
}

fn pairs_value(map: &BTreeMap<Ets, Ets>) -> Value {
    Value::Array(map.iter().map(|(a, b)| json!([ets_value(a), ets_value(b)])).collect())
}

fn index_param(params: &Map<String, Value>, key: &str, path: &str) -> Result<usize> {
    field(params, key, path)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| violation(&format!("{path}/{key}"), "expected a nonnegative integer"))
}

fn parse_rule(m: &Map<String, Value>, path: &str) -> Result<Rule> {
    let name = string(field(m, "name", path)?, &format!("{path}/name"))?;
    let empty = Map::new();
    let pp = format!("{path}/params");
    let params = match m.get("params") {
        Some(p) => object(p, &pp)?,
        None => &empty,
    };
    let omega = || ets(field(params, "omega", &pp)?, &format!("{pp}/omega"));
    Ok(match name.as_str() {
        "const-empty" => Rule::ConstEmpty,
        "z1-forward" => Rule::Z1Forward { omega: omega()? },
        "z1-backward" => Rule::Z1Backward { omega: omega()? },
        "z2-forward" => Rule::Z2Forward { omega: omega()? },
        "step-window" => Rule::StepWindow {
            from: index_param(params, "from", &pp)?,
            to: index_param(params, "to", &pp)?,
        },
        "moving-point" => Rule::MovingPoint {
            from: index_param(params, "from", &pp)?,
            to: index_param(params, "to", &pp)?,
            omega: match params.get("omega") {
                None | Some(Value::Null) => None,
                Some(_) => Some(omega()?),
            },
        },
        other => return Err(violation(&format!("{path}/name"), format!("unknown rule {other:?}"))),
    })
}

fn rule_value(r: &Rule) -> Value {
    let params = match r {
        Rule::ConstEmpty => json!({}),
        Rule::Z1Forward { omega } | Rule::Z1Backward { omega } | Rule::Z2Forward { omega } => {
            json!({"omega": ets_value(omega)})
        }
        Rule::StepWindow { from, to } => json!({"from": from, "to": to}),
        Rule::MovingPoint { from, to, omega } => match omega {
            Some(w) => json!({"from": from, "to": to, "omega": ets_value(w)}),
            None => json!({"from": from, "to": to}),
        },
    };
    json!({"kind": "rule", "name": r.name(), "params": params})
}

fn parse_uni(v: &Value, path: &str) -> Result<UniMap> {
    let m = object(v, path)?;
    let kind = string(field(m, "kind", path)?, &format!("{path}/kind"))?;
    Ok(match kind.as_str() {
        "identity" => UniMap::Identity,
        "bijection" => UniMap::Bijection(parse_pairs(field(m, "map", path)?, &format!("{path}/map"))?),
        "table" => {
            let rp = format!("{path}/rows");
            let mut rows = Vec::new();
            for (i, row) in array(field(m, "rows", path)?, &rp)?.iter().enumerate() {
                let p = format!("{rp}/{i}");
                match array(row, &p)?.as_slice() {
                    [a, b] => rows.push((system(a, &format!("{p}/0"))?, system(b, &format!("{p}/1"))?)),
                    _ => return Err(violation(&p, "expected [subset, image]")),
                }
            }
            UniMap::Table(rows)
        }
        "rule" => UniMap::Rule(parse_rule(m, path)?),
        other => {
            return Err(violation(
                &format!("{path}/kind"),
                format!("unknown map kind {other:?}"),
            ))
        }
    })
}

fn uni_value(u: &UniMap) -> Value {
    match u {
        UniMap::Identity => json!({"kind": "identity"}),
        UniMap::Bijection(map) => json!({"kind": "bijection", "map": pairs_value(map)}),
        UniMap::Table(rows) => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(a, b)| json!([system_value(a), system_value(b)]))
                .collect();
            json!({"kind": "table", "rows": rows})
        }
        UniMap::Rule(r) => rule_value(r),
    }
}

fn parse_changeable_set(v: &Value, path: &str) -> Result<ChangeableSet> {
    let m = object(v, path)?;
    let fp = format!("{path}/frames");
    let mut frames = BTreeMap::new();
    for (id, f) in object(field(m, "frames", path)?, &fp)? {
        let p = format!("{fp}/{id}");
        if id.is_empty() || id.contains("->") {
            return Err(violation(&p, "frame ids must be nonempty and must not contain \"->\""));
        }
        frames.insert(id.clone(), parse_bcs(f, &p)?.build().map_err(map_err_at(&p))?);
    }
    let up = format!("{path}/uni");
    let mut uni = BTreeMap::new();
    for (key, u) in object(field(m, "uni", path)?, &up)? {
        let p = format!("{up}/{key}");
        let (l, r) = key
            .split_once("->")
            .ok_or_else(|| violation(&p, "key must have the form \"l->m\""))?;
        uni.insert((l.to_string(), r.to_string()), parse_uni(u, &p)?);
    }
    ChangeableSet::new(frames, uni).map_err(map_err_at(path))
}

fn changeable_set_value(z: &ChangeableSet) -> Value {
    let frames: Map<String, Value> = z
        .frames()
        .iter()
        .map(|(id, b)| match Body::from_bcs(b) {
            Body::Bcs(d) => (id.clone(), bcs_value(&d)),
            _ => unreachable!(),
        })
        .collect();
    let uni: Map<String, Value> = z
        .uni()
        .iter()
        .map(|((l, m), u)| (format!("{l}->{m}"), uni_value(u)))
        .collect();
    json!({"frames": frames, "uni": uni})
}

fn parse_trans_map(v: &Value, path: &str) -> Result<TransMap> {
    let m = object(v, path)?;
    Ok(TransMap {
        map: parse_pairs(field(m, "map", path)?, &format!("{path}/map"))?,
    })
}

/// Parses a document body of a known kind. `path` prefixes schema error paths.
pub fn parse_body(kind: Kind, v: &Value, path: &str) -> Result<Body> {
    Ok(match kind {
        Kind::OrientedSet => Body::OrientedSet(parse_oriented_set(v, path)?),
        Kind::Chronologization => Body::Chronologization(parse_chronologization(v, path)?),
        Kind::Simultaneity => Body::Simultaneity(parse_simultaneity(v, path)?),
        Kind::TrajectorySystem => Body::TrajectorySystem(parse_trajectory_system(v, path)?),
        Kind::Pcs => {
            let (os, c) = parse_pcs(v, path)?;
            Body::Pcs(os, c)
        }
        Kind::Bcs => Body::Bcs(parse_bcs(v, path)?),
        Kind::ChangeableSet => Body::ChangeableSet(parse_changeable_set(v, path)?),
        Kind::TransMap => Body::TransMap(parse_trans_map(v, path)?),
    })
}

pub fn body_value(b: &Body) -> Value {
    match b {
        Body::OrientedSet(os) => oriented_set_value(os),
        Body::Chronologization(c) => chronologization_value(c),
        Body::Simultaneity(y) => simultaneity_value(y),
        Body::TrajectorySystem(ts) => trajectory_system_value(ts),
        Body::Pcs(os, c) => pcs_value(os, c),
        Body::Bcs(d) => bcs_value(d),
        Body::ChangeableSet(z) => changeable_set_value(z),
        Body::TransMap(t) => json!({"map": pairs_value(&t.map)}),
    }
}

/// Parses a wrapped document `{"kind", "version", "body"}`. A bare body is
/// accepted when `hint` names its kind.
pub fn parse_document(bytes: &[u8], hint: Option<Kind>) -> Result<Body> {
    let v: Value = serde_json::from_slice(bytes).map_err(|e| Error::MalformedJson(e.to_string()))?;
    let m = object(&v, "")?;
    if !m.contains_key("body") {
        return match hint {
            Some(kind) => parse_body(kind, &v, ""),
            None => Err(violation("/kind", "missing field")),
        };
    }
    let version = string(field(m, "version", "")?, "/version")?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let kind: Kind = string(field(m, "kind", "")?, "/kind")?.parse()?;
    if let Some(h) = hint {
        if h != kind {
            return Err(violation("/kind", format!("expected {h}, found {kind}")));
        }
    }
    parse_body(kind, &m["body"], "/body")
}

pub fn document_value(b: &Body) -> Value {
    json!({"kind": b.kind().as_str(), "version": VERSION, "body": body_value(b)})
}

/// Canonical form: sorted keys and collections, two-space indentation.
pub fn to_canonical_string(b: &Body) -> String {
    let mut s = serde_json::to_string_pretty(&document_value(b)).expect("JSON values serialize");
    s.push('\n');
    s
}
