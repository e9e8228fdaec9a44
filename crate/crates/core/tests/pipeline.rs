use lietorus::config::RunConfig;
use lietorus::loopmod::{verify_classification_instance, Verdict};

fn run(text: &str) -> lietorus::loopmod::ClassificationReport {
    verify_classification_instance(&RunConfig::from_json_str(text).unwrap(), None, None).unwrap()
}

#[test]
fn single_point_sl2() {
    let r = run(r#"{"type":"A","rank":1,"sigma":[{"kind":"identity"}],"lambda":[[1]],"b":[["1"]],"alpha":["0"]}"#);
    assert_eq!(r.overall, Verdict::Pass, "{}", r.to_text());
    assert_eq!(r.decomposition.unwrap().components.len(), 1);
}

#[test]
fn two_point_sl2_half_shift() {
    let r = run(r#"{"type":"A","rank":1,"sigma":[{"kind":"identity"}],"lambda":[[1],[1]],"b":[["1"],["-1"]],"alpha":["1/2"],"box":[[-4,4]]}"#);
    assert_eq!(r.overall, Verdict::Pass, "{}", r.to_text());
    let d = r.decomposition.unwrap();
    assert_eq!(d.components.len(), 2);
    assert!(d.grade_shift_pairs.iter().all(|p| p.isomorphic));
}

#[test]
fn twisted_a2_reports_lattice_and_components() {
    let r = run(r#"{"type":"A","rank":2,"sigma":[{"kind":"diagram","perm":[2,1]}],"lambda":[[1,0]],"b":[["1"]],"alpha":["0"]}"#);
    assert_eq!(r.stage("lie_torus").unwrap().verdict, Verdict::Pass);
    let d = r.decomposition.unwrap();
    assert_eq!(d.lattice.index, Some(2));
    // the degree-one Cartan element h1 - h2 of the odd piece moves v+ to odd degrees
    assert_eq!(d.lattice.extended_index, Some(1));
    assert_eq!(d.components.len(), 1);
    assert_eq!(d.verdicts.component_count, Verdict::Fail);
}

#[test]
fn box_too_small_without_escalation_is_inconclusive() {
    let text = r#"{"type":"A","rank":1,"sigma":[{"kind":"identity"}],"lambda":[[1],[1]],"b":[["1"],["-1"]],"box":[[0,1]]}"#;
    let r = run(text);
    assert_eq!(r.stage("decompose").unwrap().verdict, Verdict::Inconclusive);
    assert_eq!(r.overall, Verdict::Inconclusive, "{}", r.to_text());
    let cfg = RunConfig::from_json_str(text).unwrap();
    let r = verify_classification_instance(&cfg, None, Some(8)).unwrap();
    assert_eq!(r.stage("decompose").unwrap().verdict, Verdict::Pass, "{}", r.to_text());
}

#[test]
fn equal_points_are_reducible() {
    let r = run(r#"{"type":"A","rank":1,"sigma":[{"kind":"identity"}],"lambda":[[1],[1]],"b":[["2"],["2"]]}"#);
    assert_eq!(r.stage("eval_irreducible").unwrap().verdict, Verdict::Fail);
    assert_eq!(r.overall, Verdict::Fail);
}

#[test]
fn report_is_deterministic() {
    let text = r#"{"type":"A","rank":1,"sigma":[{"kind":"identity"},{"kind":"identity"}],"lambda":[[1]],"b":[["1","-1"]]}"#;
    assert_eq!(run(text).to_json_string(), run(text).to_json_string());
}
