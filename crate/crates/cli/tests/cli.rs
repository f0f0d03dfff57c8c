use std::path::PathBuf;
use std::process::{Command, Output};

use monogamy_core::fixtures;
use monogamy_core::graph::CommutationGraph;
use monogamy_core::jpd::Behavior;
use monogamy_core::monogamy::InequalitySpec;
use monogamy_core::nd::LinearObjective;
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_monogamy"));
    cmd.current_dir(root()).args(args).env_remove("MONOGAMY_SIZE_LIMIT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["command"], args[0]);
    assert!(v["inputs"].is_object());
    assert!(v["results"].is_object());
    v
}

fn read(rel: &str) -> String {
    std::fs::read_to_string(root().join(rel)).unwrap()
}

#[test]
fn documented_examples() {
    let v = json(&["monogamy", "fixtures/fig1.json", "specs/two-kcbs.json"]);
    assert_eq!(v["results"]["classification"], "monogamous-genuine");
    assert_eq!(v["results"]["clique_cover_number"], 4);

    let v = json(&["nd-max", "fixtures/pentagon.json", "objectives/kcbs.json"]);
    assert_eq!(v["results"]["value"], "5/2");

    let v = json(&["chordal", "fixtures/pentagon.json"]);
    assert_eq!(v["results"]["chordal"], false);
    assert_eq!(v["results"]["witness_cycle"].as_array().unwrap().len(), 5);
}

#[test]
fn fixture_files_match_the_builtin_graphs() {
    for name in fixtures::NAMES {
        let file = CommutationGraph::from_json(&read(&format!("fixtures/{name}.json"))).unwrap();
        let built = fixtures::by_name(name).unwrap();
        assert_eq!(file.labels(), built.labels(), "{name}");
        let mut a: Vec<_> = file.edges().collect();
        let mut b: Vec<_> = built.edges().collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{name}");
        // Serialization round trip.
        let again = CommutationGraph::from_json(&built.to_json_value().to_string()).unwrap();
        assert_eq!(again.edges().collect::<Vec<_>>(), built.edges().collect::<Vec<_>>());
    }
    let g = fixtures::fig1();
    let specs = InequalitySpec::from_json(&g, &read("specs/two-kcbs.json")).unwrap();
    assert_eq!(specs.len(), 2);
    assert!(LinearObjective::from_json(&g, &read("objectives/monogamy.json")).is_ok());
    Behavior::from_json(&fixtures::pentagon(), &read("fixtures/pentagon-half.behavior.json"))
        .unwrap()
        .validate(&fixtures::pentagon())
        .unwrap();
}

#[test]
fn graph_subcommands() {
    let v = json(&["alpha", "fig1"]);
    assert_eq!(v["results"]["value"], 4);
    assert_eq!(v["results"]["witness"].as_array().unwrap().len(), 4);
    let v = json(&["clique-cover", "two-pentagons-complete"]);
    assert_eq!(v["results"]["value"], 3);
    let v = json(&["chordal", "bell-chsh-3party"]);
    assert_eq!(v["results"]["chordal"], false);
    let v = json(&["classical-max", "fixtures/fig1.json", "objectives/monogamy.json"]);
    assert_eq!(v["results"]["value"], "4");
}

#[test]
fn lp_witnesses_round_trip_as_behaviors() {
    let v = json(&["nd-max", "pentagon", "unit"]);
    let g = fixtures::pentagon();
    let b = Behavior::from_json(&g, &v["results"]["witness"].to_string()).unwrap();
    b.validate(&g).unwrap();
    let obj = LinearObjective::unit(&g);
    assert_eq!(monogamy_core::rational::format(&obj.evaluate(&b).unwrap()), "5/2");
}

#[test]
fn jpd_subcommand() {
    let v = json(&["jpd", "pentagon", "fixtures/pentagon-half.behavior.json"]);
    assert_eq!(v["results"]["exists"], false);
    assert_eq!(v["results"]["method"], "lp");

    // A chordal graph goes through the clique tree.
    let dir = std::env::temp_dir().join(format!("monogamy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("path.json");
    let behavior = dir.join("path.behavior.json");
    std::fs::write(
        &graph,
        r#"{"vertices":["x","y","z"],"edges":[
            {"u":"x","v":"y","exclusive":false},{"u":"y","v":"z","exclusive":false}]}"#,
    )
    .unwrap();
    std::fs::write(
        &behavior,
        r#"{"contexts":[
            {"vertices":["x","y"],"table":{"00":"1/2","11":"1/2"}},
            {"vertices":["y","z"],"table":{"00":"1/4","01":"1/4","11":"1/2"}}]}"#,
    )
    .unwrap();
    let v = json(&["jpd", graph.to_str().unwrap(), behavior.to_str().unwrap()]);
    assert_eq!(v["results"]["exists"], true);
    assert_eq!(v["results"]["method"], "clique-tree");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scans_and_physics_subcommands() {
    let v = json(&["minimality-scan", "--k", "2"]);
    assert_eq!(v["results"]["levels"].as_array().unwrap().len(), 2);
    assert!(v["results"]["minimal_k"].is_null());

    let v = json(&["quantum", "--scan", "200"]);
    assert_eq!(v["results"]["topology_constant"], true);
    assert_eq!(v["results"]["bound_holds"], true);
    let v = json(&["quantum", "--angles", "0.3,0.7,1.1,0.4,2.0"]);
    assert!(v["results"].is_object());

    let v = json(&["bell-monogamy", "--shared-settings", "true"]);
    assert_eq!(v["results"]["ns_max"], "4");
    let v = json(&["bell-monogamy", "--shared-settings", "false"]);
    assert_eq!(v["results"]["ns_max"], "8");
}

#[test]
fn pretty_output_adds_a_summary() {
    let out = run(&["--pretty", "alpha", "pentagon"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains('\n'));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(v["summary"].is_string());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["alpha", "no/such/file.json"]).status.code(), Some(1));
    assert_eq!(
        run(&["nd-max", "pentagon", "objectives/missing.json"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["quantum", "--angles", "1,2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let out = run_env(&["alpha", "fig1"], &[("MONOGAMY_SIZE_LIMIT", "5")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        run_env(&["alpha", "fig1"], &[("MONOGAMY_SIZE_LIMIT", "nope")])
            .status
            .code(),
        Some(1)
    );
}
