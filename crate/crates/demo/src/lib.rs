//! WebAssembly bindings for the static page in `www/`. Every function takes and
//! returns JSON text so the page needs no generated type glue.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use chset_core::doc::{self, Body, Kind};
use chset_core::multiverse::{self, CheckMode, FixtureKind};
use chset_core::{base, chronology, fixtures, visibility, Error};

fn parse(text: &str, hint: Option<Kind>) -> Result<Body, String> {
    doc::parse_document(text.as_bytes(), hint).map_err(|e| e.to_string())
}

fn finish(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => json!({"ok": true, "result": v}).to_string(),
        Err(e) => json!({"ok": false, "error": e}).to_string(),
    }
}

/// A ready-made document: `f1`..`f4`, `z1`, `z2`, `step-window` or `moving-point`.
#[wasm_bindgen]
pub fn example(name: &str) -> String {
    let body = match name {
        "f1" => Body::OrientedSet(fixtures::f1()),
        "f2" => Body::OrientedSet(fixtures::f2()),
        "f3" => Body::OrientedSet(fixtures::f3()),
        "f4" => Body::OrientedSet(fixtures::f4()),
        other => match other.parse::<FixtureKind>().and_then(|k| multiverse::fixture(k, 3)) {
            Ok(z) => Body::ChangeableSet(z),
            Err(_) => return String::new(),
        },
    };
    doc::to_canonical_string(&body)
}

/// Builds a time on an oriented-set document; `mode` is `any`, `chain`, `cyclic` or `trivial`.
#[wasm_bindgen]
pub fn chronologize(document: &str, mode: &str) -> String {
    finish((|| {
        let Body::OrientedSet(os) = parse(document, Some(Kind::OrientedSet))? else {
            return Err("expected an oriented-set document".into());
        };
        let c = match mode {
            "any" => Ok(chronology::chronologize_any(&os)),
            "chain" => chronology::chronologize_chain(&os),
            "cyclic" => chronology::chronologize_cyclic(&os),
            "trivial" => chronology::trivial_chronologization(&os, 2),
            other => return Err(format!("unknown mode {other:?}")),
        }
        .map_err(|e| e.to_string())?;
        let k = chronology::time_kind(&os, &c).map_err(|e| e.to_string())?;
        Ok(json!({
            "time": doc::body_value(&Body::Chronologization(c)),
            "kind": {
                "quasi_one_point": k.quasi_one_point,
                "one_point": k.one_point,
                "monotone": k.monotone,
                "strictly_monotone": k.strictly_monotone,
            },
        }))
    })())
}

/// Frame grades, visibility classes and the composition criterion of a changeable set.
#[wasm_bindgen]
pub fn visibility_report(document: &str) -> String {
    finish((|| {
        let Body::ChangeableSet(z) = parse(document, Some(Kind::ChangeableSet))? else {
            return Err("expected a changeable-set document".into());
        };
        let grades: Vec<Value> = visibility::visibility_matrix(&z, visibility::DEFAULT_PARTITION_LIMIT)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(l, m, g)| json!({"from": l, "to": m, "grade": g.as_str()}))
            .collect();
        let criterion = visibility::composition_criterion(&z, CheckMode::default()).map_err(|e| e.to_string())?;
        Ok(json!({
            "frames": z.frame_ids(),
            "grades": grades,
            "precise_visibility_classes": visibility::precise_visibility_classes(&z).blocks,
            "visibility_classes": visibility::visibility_classes(&z).blocks,
            "composition_criterion": criterion,
        }))
    })())
}

/// Lists the violated axioms of any document; an empty list means it is valid.
#[wasm_bindgen]
pub fn validate(document: &str) -> String {
    finish((|| {
        let body = parse(document, None)?;
        let err = |e: Error| e.to_string();
        let violations: Vec<String> = match &body {
            Body::Pcs(os, c) => chronology::check_time(os, c)
                .map_err(err)?
                .iter()
                .map(ToString::to_string)
                .collect(),
            Body::Bcs(d) => {
                let t = chronology::check_time(&d.os, &d.chron).map_err(err)?;
                if t.is_empty() {
                    let p = d.pcs().map_err(err)?;
                    base::check_base(&p, &d.pairs)
                        .map_err(err)?
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                } else {
                    t.iter().map(ToString::to_string).collect()
                }
            }
            Body::ChangeableSet(z) => multiverse::check_unification(z, CheckMode::default())
                .map_err(err)?
                .iter()
                .map(ToString::to_string)
                .collect(),
            _ => Vec::new(),
        };
        Ok(json!({"kind": body.kind().as_str(), "violations": violations}))
    })())
}
