use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use chset_core::base::{self, Ets, System};
use chset_core::chronology::{self, Chronologization};
use chset_core::doc::{self, Body, Kind};
use chset_core::error::Error;
use chset_core::multiverse::{self, ChangeableSet, CheckMode};
use chset_core::oracle;
use chset_core::simultaneity::{self, Simultaneity};
use chset_core::visibility;
use chset_core::OrientedSet;

use crate::report::{Report, Verdict};

/// Bad input, unreadable files and exceeded size caps; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        let hint = match e {
            Error::SizeLimitExceeded(..) => "; raise --limit or CHSET_LIMIT, or pass --sampled N",
            Error::PartitionLimitExceeded(..) => "; raise --limit or CHSET_LIMIT",
            _ => "",
        };
        UsageError(format!("{e}{hint}"))
    }
}

/// The brute-force searches have fixed caps that `--limit` does not lift.
fn oracle_err(e: Error) -> UsageError {
    match e {
        Error::SizeLimitExceeded(what, n, cap) => {
            UsageError(format!("oracle input too large: {what} is {n}, the cap is {cap}"))
        }
        other => other.into(),
    }
}

pub type Outcome = Result<Report, UsageError>;

/// Options shared by every subcommand.
pub struct Ctx {
    pub mode: CheckMode,
    pub limit: usize,
    pub emit: Option<PathBuf>,
}

impl Ctx {
    fn report(&self, command: &str) -> Report {
        Report::new(command, self.mode.to_string())
    }

    /// A sampled check that found no counterexample has not proved anything.
    fn settle(&self, mut r: Report) -> Report {
        if matches!(self.mode, CheckMode::Sampled { .. }) && r.verdict == Verdict::Pass {
            r.verdict = Verdict::Partial;
        }
        r
    }

    /// Writes `body` to `--emit`, or records it in the report when no path was given.
    fn emit(&self, r: &mut Report, body: &Body) -> Result<(), UsageError> {
        match &self.emit {
            Some(p) => {
                fs::write(p, doc::to_canonical_string(body))
                    .map_err(|e| UsageError(format!("cannot write {}: {e}", p.display())))?;
                r.add(
                    "emitted",
                    json!({"path": p.display().to_string(), "kind": body.kind().as_str()}),
                );
            }
            None => r.add("document", doc::document_value(body)),
        }
        Ok(())
    }
}

pub fn load(path: &Path, hint: Option<Kind>) -> Result<Body, UsageError> {
    let bytes = fs::read(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let body = doc::parse_document(&bytes, hint).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    match hint {
        Some(k) if body.kind() != k => Err(UsageError(format!(
            "{}: expected a {k} document, found {}",
            path.display(),
            body.kind()
        ))),
        _ => Ok(body),
    }
}

fn load_os(path: &Path) -> Result<OrientedSet, UsageError> {
    match load(path, Some(Kind::OrientedSet))? {
        Body::OrientedSet(os) => Ok(os),
        _ => unreachable!("kind checked by load"),
    }
}

fn load_simultaneity(path: &Path) -> Result<Simultaneity, UsageError> {
    match load(path, Some(Kind::Simultaneity))? {
        Body::Simultaneity(y) => Ok(y),
        _ => unreachable!("kind checked by load"),
    }
}

fn load_cset(path: &Path) -> Result<ChangeableSet, UsageError> {
    match load(path, Some(Kind::ChangeableSet))? {
        Body::ChangeableSet(z) => Ok(z),
        _ => unreachable!("kind checked by load"),
    }
}

fn ets(w: &Ets) -> Value {
    json!([w.time, w.elem])
}

fn system(a: &System) -> Value {
    a.iter().map(ets).collect()
}

fn time_value(c: &Chronologization) -> Value {
    doc::body_value(&Body::Chronologization(c.clone()))
}

fn kind_value(os: &OrientedSet, c: &Chronologization) -> Result<Value, UsageError> {
    let k = chronology::time_kind(os, c)?;
    Ok(json!({
        "quasi_one_point": k.quasi_one_point,
        "one_point": k.one_point,
        "monotone": k.monotone,
        "incessant": k.incessant,
        "strictly_monotone": k.strictly_monotone,
    }))
}

/// Fails the report with each time violation; true iff `c` is a time on `os`.
fn check_time(r: &mut Report, os: &OrientedSet, c: &Chronologization) -> Result<bool, UsageError> {
    let v = chronology::check_time(os, c)?;
    for x in &v {
        r.fail("time-violation", json!({"detail": x.to_string()}));
    }
    Ok(v.is_empty())
}

pub fn validate(ctx: &Ctx, path: &Path, kind: Option<Kind>) -> Outcome {
    let body = load(path, kind)?;
    let mut r = ctx.report("validate");
    r.add("document", json!({"kind": body.kind().as_str()}));
    match &body {
        Body::OrientedSet(os) => {
            let f = os.classify();
            r.add(
                "classify",
                json!({"chain_oriented": f.chain_oriented, "cyclic": f.cyclic, "anti_cyclical": f.anti_cyclical}),
            );
        }
        Body::Chronologization(c) => r.add("scale", json!({"moments": c.len()})),
        Body::Simultaneity(y) => r.add("classes", json!({"count": y.len()})),
        Body::TrajectorySystem(ts) => match base::at_from_trajectories(ts) {
            Ok(b) => r.add("generated-structure", json!({"states": b.states().len()})),
            Err(e) => r.fail("invalid", json!({"detail": e.to_string()})),
        },
        Body::Pcs(os, c) => {
            if check_time(&mut r, os, c)? {
                r.add("time-kind", kind_value(os, c)?);
            }
        }
        Body::Bcs(d) => {
            if check_time(&mut r, &d.os, &d.chron)? {
                for v in base::check_base(&d.pcs()?, &d.pairs)? {
                    r.fail("base-violation", json!({"axiom": v.axiom(), "detail": v.to_string()}));
                }
            }
        }
        Body::ChangeableSet(z) => {
            let v = multiverse::check_unification(z, ctx.mode)?;
            for x in &v {
                r.fail(
                    "unification-violation",
                    json!({"axiom": x.axiom, "frames": x.frames, "subset": system(&x.subset), "detail": x.detail}),
                );
            }
            if v.is_empty() {
                r.add("unification", json!({"frames": z.frame_ids(), "violations": 0}));
            }
            return Ok(ctx.settle(r));
        }
        Body::TransMap(t) => r.add("map", json!({"entries": t.map.len(), "injective": t.is_injective()})),
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ChronMode {
    Trivial,
    Cyclic,
    Chain,
    Any,
}

pub fn chronologize(ctx: &Ctx, path: &Path, mode: ChronMode, moments: usize) -> Outcome {
    let os = load_os(path)?;
    let mut r = ctx.report("chronologize");
    let built = match mode {
        ChronMode::Trivial => chronology::trivial_chronologization(&os, moments).map_err(UsageError::from)?,
        ChronMode::Any => chronology::chronologize_any(&os),
        ChronMode::Cyclic | ChronMode::Chain => {
            let c = if mode == ChronMode::Cyclic {
                chronology::chronologize_cyclic(&os)
            } else {
                chronology::chronologize_chain(&os)
            };
            match c {
                Ok(c) => c,
                Err(e @ (Error::NotCyclic | Error::NotChainOriented)) => {
                    let name = if mode == ChronMode::Cyclic {
                        "NotCyclic"
                    } else {
                        "NotChainOriented"
                    };
                    r.fail("precondition-failed", json!({"error": name, "detail": e.to_string()}));
                    return Ok(r);
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    r.add("time-kind", kind_value(&os, &built)?);
    ctx.emit(&mut r, &Body::Chronologization(built))?;
    Ok(r)
}

pub fn simultaneity(ctx: &Ctx, os_path: &Path, y_path: &Path, internal: bool) -> Outcome {
    let os = load_os(os_path)?;
    let y = load_simultaneity(y_path)?;
    let mut r = ctx.report("simultaneity");
    let uncovered = simultaneity::check_simultaneity(&os, &y)?;
    if !uncovered.is_empty() {
        r.fail("not-a-simultaneity", json!({"uncovered": uncovered}));
        return Ok(r);
    }
    r.add(
        "predicates",
        json!({
            "is_unrepeatable": simultaneity::is_unrepeatable(&os, y.classes()),
            "is_precise": simultaneity::is_precise(&os, &y)?,
            "is_monotone_connected": simultaneity::is_monotone_connected(&os, &y)?,
        }),
    );
    if internal {
        match simultaneity::internal_time(&os, &y) {
            Ok(c) => {
                r.add("internal-time", kind_value(&os, &c)?);
                ctx.emit(&mut r, &Body::Chronologization(c))?;
            }
            Err(Error::PreconditionFailed(p)) => r.fail("precondition-failed", json!({"predicate": p})),
            Err(e @ Error::NotLinear) => r.fail("not-linear", json!({"detail": e.to_string()})),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(r)
}

fn build_bcs(r: &mut Report, path: &Path) -> Result<Option<base::Bcs>, UsageError> {
    let Body::Bcs(d) = load(path, Some(Kind::Bcs))? else {
        unreachable!("kind checked by load")
    };
    match d.build() {
        Ok(b) => Ok(Some(b)),
        Err(e) => {
            r.fail("InvalidBase", json!({"detail": e.to_string()}));
            Ok(None)
        }
    }
}

pub fn fate_lines(ctx: &Ctx, path: &Path, roundtrip: bool) -> Outcome {
    let mut r = ctx.report("fate-lines");
    let Some(b) = build_bcs(&mut r, path)? else {
        return Ok(r);
    };
    let lines: Vec<Value> = base::fate_lines(&b)
        .iter()
        .map(|l| l.iter().map(ets).collect())
        .collect();
    r.add("fate-lines", json!({"count": lines.len(), "lines": lines}));
    if roundtrip {
        if base::roundtrip_holds(&b) {
            r.add("roundtrip", json!({"holds": true}));
        } else {
            let rebuilt = base::at_from_trajectories(&base::fate_line_system(&b))?;
            r.fail(
                "roundtrip",
                json!({"holds": false, "rebuilt": doc::body_value(&Body::from_bcs(&rebuilt))}),
            );
        }
    }
    Ok(r)
}

pub struct VisibilityParts {
    pub matrix: bool,
    pub classes: bool,
    pub criterion: bool,
}

pub fn visibility(ctx: &Ctx, path: &Path, parts: VisibilityParts) -> Outcome {
    let z = load_cset(path)?;
    let all = !(parts.matrix || parts.classes || parts.criterion);
    let mut r = ctx.report("visibility");
    if all || parts.matrix {
        let grades: Vec<Value> = visibility::visibility_matrix(&z, ctx.limit)?
            .into_iter()
            .map(|(l, m, g)| json!({"from": l, "to": m, "grade": g.as_str()}))
            .collect();
        r.add("matrix", json!({"grades": grades}));
    }
    if all || parts.classes {
        r.add(
            "classes",
            json!({
                "precise_visibility": visibility::precise_visibility_classes(&z).blocks,
                "visibility": visibility::visibility_classes(&z).blocks,
            }),
        );
    }
    if all || parts.criterion {
        match visibility::composition_witness(&z, ctx.mode)? {
            None => r.add("criterion", json!({"holds": true})),
            Some(w) => r.fail(
                "criterion",
                json!({
                    "holds": false,
                    "frames": w.frames,
                    "subset": system(&w.subset),
                    "composed": system(&w.composed),
                    "direct": system(&w.direct),
                }),
            ),
        }
        return Ok(ctx.settle(r));
    }
    Ok(r)
}

pub fn image(ctx: &Ctx, bcs_path: &Path, map_path: &Path) -> Outcome {
    let mut r = ctx.report("image");
    let Some(b) = build_bcs(&mut r, bcs_path)? else {
        return Ok(r);
    };
    let Body::TransMap(t) = load(map_path, Some(Kind::TransMap))? else {
        unreachable!("kind checked by load")
    };
    match base::image_basic(&b, &t) {
        Ok(img) => {
            r.add("image", json!({"states": img.states().len()}));
            ctx.emit(&mut r, &Body::from_bcs(&img))?;
        }
        Err(e) => r.fail("image-failed", json!({"detail": e.to_string()})),
    }
    Ok(r)
}

pub fn oracle_monotone(ctx: &Ctx, path: &Path, scale_bound: usize) -> Outcome {
    let os = load_os(path)?;
    let mut r = ctx.report("oracle monotone-chron");
    r.mode = format!("exhaustive(scale_bound={scale_bound})");
    let obstruction = chronology::monotone_obstruction(&os);
    if let Some((a, b, c)) = &obstruction {
        r.add("obstruction", json!({"elements": [a, b, c]}));
    }
    match oracle::monotone_chron(&os, scale_bound).map_err(oracle_err)? {
        Some(c) => {
            let fields = json!({"found": true, "time": time_value(&c), "kind": kind_value(&os, &c)?});
            if obstruction.is_some() {
                r.fail("disagreement", fields);
            } else {
                r.add("search", fields);
            }
        }
        None => r.add(
            "search",
            json!({"found": false, "note": format!("none with at most {scale_bound} moments; larger scales were not searched")}),
        ),
    }
    Ok(r)
}

/// Generating-time enumeration is exponential in the number of classes.
const MAX_ORACLE_CLASSES: usize = 6;

pub fn oracle_internal_time(ctx: &Ctx, os_path: &Path, y_path: &Path) -> Outcome {
    let os = load_os(os_path)?;
    let y = load_simultaneity(y_path)?;
    if y.len() > MAX_ORACLE_CLASSES {
        return Err(oracle_err(Error::SizeLimitExceeded(
            "classes".into(),
            y.len(),
            MAX_ORACLE_CLASSES,
        )));
    }
    let mut r = ctx.report("oracle internal-time");
    r.mode = "exhaustive".into();
    let found = oracle::strictly_monotone_generating_times(&os, &y).map_err(oracle_err)?;
    r.add("search", json!({"strictly_monotone_generating_times": found.len()}));
    match simultaneity::internal_time(&os, &y) {
        Ok(c) => {
            if found.is_empty() {
                r.fail("missed", json!({"internal_time": time_value(&c)}));
            }
            for other in found
                .iter()
                .filter(|o| !chronology::chronologizations_equivalent(o, &c))
            {
                r.fail(
                    "not-unique",
                    json!({"internal_time": time_value(&c), "other": time_value(other)}),
                );
            }
            if r.findings.len() == 1 {
                r.add(
                    "internal-time",
                    json!({"time": time_value(&c), "unique_up_to_equivalence": true}),
                );
            }
        }
        Err(Error::PreconditionFailed(p)) => r.add("precondition-failed", json!({"predicate": p})),
        Err(Error::NotLinear) => r.add("not-linear", json!({})),
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

pub fn oracle_visibility(ctx: &Ctx, path: &Path) -> Outcome {
    let z = load_cset(path)?;
    let mut r = ctx.report("oracle visibility");
    r.mode = "exhaustive".into();
    let cmp = oracle::visibility_exhaustive(&z).map_err(oracle_err)?;
    r.add(
        "comparison",
        json!({"frame_pairs": cmp.frame_grades.len(), "systems_compared": cmp.systems_compared}),
    );
    for m in &cmp.mismatches {
        r.fail(
            "mismatch",
            json!({
                "from": m.from,
                "to": m.to,
                "subset": m.subset.as_ref().map(system),
                "reduced": m.reduced.as_str(),
                "raw": m.raw.as_str(),
            }),
        );
    }
    Ok(r)
}

pub enum Generated {
    /// Documents were written to `--emit`.
    Report(Report),
    /// One canonical document per line, for stdout.
    Lines(String),
}

pub fn oracle_generate(
    ctx: &Ctx,
    seed: u64,
    kind: Kind,
    count: usize,
    max_elems: usize,
) -> Result<Generated, UsageError> {
    let docs = chset_core::gen::generate(kind, count, seed, max_elems)?;
    let mut out = String::new();
    for d in &docs {
        out.push_str(&doc::document_value(d).to_string());
        out.push('\n');
    }
    let Some(p) = &ctx.emit else {
        return Ok(Generated::Lines(out));
    };
    fs::write(p, &out).map_err(|e| UsageError(format!("cannot write {}: {e}", p.display())))?;
    let mut r = ctx.report("oracle generate");
    r.mode = format!("seed={seed}");
    r.add(
        "generated",
        json!({"kind": kind.as_str(), "count": docs.len(), "path": p.display().to_string()}),
    );
    Ok(Generated::Report(r))
}
