use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn chronologize_reports_kind_flags() {
    let r = parse(&chset_demo::chronologize(&chset_demo::example("f3"), "any"));
    assert_eq!(r["ok"], true);
    assert_eq!(r["result"]["kind"]["quasi_one_point"], true);

    let r = parse(&chset_demo::chronologize(&chset_demo::example("f3"), "chain"));
    assert_eq!(r["ok"], false);
    assert!(r["error"].as_str().unwrap().contains("chain"));

    assert_eq!(parse(&chset_demo::chronologize("{", "any"))["ok"], false);
}

#[test]
fn visibility_report_of_the_step_window() {
    let r = parse(&chset_demo::visibility_report(&chset_demo::example("step-window")));
    assert_eq!(r["ok"], true);
    let grades = r["result"]["grades"].as_array().unwrap();
    assert_eq!(grades.len(), 9);
    let g = |from: &str, to: &str| grades.iter().find(|g| g["from"] == from && g["to"] == to).unwrap()["grade"].clone();
    assert_eq!(g("l1", "l2"), "precisely_visible");
    assert_eq!(g("l1", "l3"), "normally_visible");
    assert_eq!(r["result"]["composition_criterion"], false);
}

#[test]
fn validate_lists_violations() {
    let r = parse(&chset_demo::validate(&chset_demo::example("z1")));
    assert_eq!(r["result"]["kind"], "changeable-set");
    assert_eq!(r["result"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(chset_demo::example("nope"), "");
}
