use std::path::PathBuf;
use std::process::Command;

use dframe_cli::{
    cmd_check, cmd_dsub, cmd_gen, cmd_hat, cmd_mine, cmd_props, generate, CliError, Options,
};
use dframe_core::document::DFrameDocument;
use dframe_core::{DFrame, Error, Frame};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_dframe"))
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
        .expect("exit code")
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["check", &fixture("sym3.json")]), 0);
    assert_eq!(exit_code(&["check", &fixture("bad_contot.json")]), 1);
    assert_eq!(exit_code(&["gen", "sym:tree:3"]), 2);
    let empty = std::env::temp_dir().join(format!("dframe-empty-{}.json", std::process::id()));
    std::fs::write(&empty, "").unwrap();
    assert_eq!(exit_code(&["check", empty.to_str().unwrap()]), 2);
    std::fs::remove_file(empty).ok();
}

#[test]
fn sym3_fixture_passes_every_axiom() {
    let r = cmd_check(&fixture("sym3.json"), &Options::default()).unwrap();
    assert_eq!(r.verdicts.len(), 9);
    assert!(r.passed);
    let loaded = std::fs::read_to_string(fixture("sym3.json")).unwrap();
    let d = DFrameDocument::from_json(&loaded)
        .unwrap()
        .load(false)
        .unwrap();
    assert_eq!(d, DFrame::sym(&Frame::chain(3).unwrap()));
}

#[test]
fn bad_fixture_names_con_tot_with_triple() {
    let r = cmd_check(&fixture("bad_contot.json"), &Options::default()).unwrap();
    assert!(!r.passed);
    let v = r.get_verdict("con-tot+").unwrap();
    assert!(!v.passed);
    assert_eq!(v.witness.as_deref(), Some("1 con 1 tot 0 but 1 ≰ 0"));
}

#[test]
fn empty_document_is_a_parse_error() {
    let empty = std::env::temp_dir().join(format!("dframe-empty2-{}.json", std::process::id()));
    std::fs::write(&empty, "").unwrap();
    let e = cmd_check(empty.to_str().unwrap(), &Options::default()).unwrap_err();
    std::fs::remove_file(empty).ok();
    assert!(matches!(e, CliError::Core(Error::Parse(_))));
}

#[test]
fn generated_documents_round_trip() {
    for spec in [
        "sym:chain:1",
        "sym:chain:3",
        "sym:bool:2",
        "min:chain:3:chain:3",
        "min:bool:2:chain:2",
        "fixture:dense-components:dom",
    ] {
        let doc = cmd_gen(spec).unwrap();
        let back = DFrameDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.load(true).unwrap(), generate(spec).unwrap(), "{spec}");
        assert_eq!(back.load(false).unwrap(), generate(spec).unwrap(), "{spec}");
    }
    let c3 = Frame::chain(3).unwrap();
    assert_eq!(
        generate("min:chain:3:chain:3").unwrap(),
        DFrame::minimal(&c3, &c3).unwrap()
    );
    assert!(generate("sym:chain:1").unwrap().is_trivial());
    assert!(matches!(
        generate("sym:chain:0"),
        Err(Error::UnknownSpec(_))
    ));
    assert!(matches!(
        generate("min:chain:1:chain:2"),
        Err(Error::TrivialMismatch)
    ));
}

#[test]
fn dsub_reports() {
    let opts = Options::default();
    let r = cmd_dsub("min:chain:3:chain:3", &opts, None).unwrap();
    assert_eq!(r.get_detail("members").unwrap(), 10);
    assert_eq!(r.get_detail("distributive").unwrap(), false);
    assert_eq!(
        r.get_detail("covers").unwrap().as_array().unwrap().len(),
        16
    );
    let r = cmd_dsub("sym:chain:1", &opts, None).unwrap();
    assert_eq!(r.get_detail("members").unwrap(), 1);
    let r = cmd_dsub("sym:chain:2", &opts, None).unwrap();
    assert_eq!(r.get_detail("members").unwrap(), 2);
    let tight = Options {
        max_pairs: 4,
        ..Options::default()
    };
    let e = cmd_dsub("min:chain:3:chain:3", &tight, None).unwrap_err();
    assert!(matches!(e, CliError::Core(Error::SizeGuardExceeded { .. })));
}

#[test]
fn dsub_writes_dot() {
    let dot = std::env::temp_dir().join(format!("dframe-ds-{}.dot", std::process::id()));
    cmd_dsub("min:chain:3:chain:3", &Options::default(), Some(&dot)).unwrap();
    let text = std::fs::read_to_string(&dot).unwrap();
    std::fs::remove_file(dot).ok();
    assert!(text.starts_with("digraph \"dS\" {\n  rankdir=BT;\n"));
    assert_eq!(text.matches(" -> ").count(), 16);
    assert!(text.contains("[label=\"o(c).o(c)\"]"));
}

#[test]
fn hat_reports() {
    let opts = Options::default();
    let r = cmd_hat(&fixture("sym3.json"), &opts).unwrap();
    assert!(r.passed);
    assert_eq!(
        r.get_detail("hat_minus").unwrap(),
        &serde_json::json!(["0", "1"])
    );
    assert_eq!(
        r.get_detail("hat_plus").unwrap(),
        &serde_json::json!(["0", "1"])
    );
    let r = cmd_hat("sym:chain:1", &opts).unwrap();
    assert_eq!(r.get_detail("hat").unwrap(), "1.1");
}

#[test]
fn props_on_fixtures_and_random_corpus() {
    let opts = Options {
        seed: 9,
        ..Options::default()
    };
    let r = cmd_props("fixture:dense-components:dom", &opts).unwrap();
    assert!(r.passed, "{}", r.to_text());
    let a = cmd_props("corpus:random:5", &opts).unwrap();
    assert!(a.passed, "{}", a.to_text());
    assert_eq!(
        a.to_json(),
        cmd_props("corpus:random:5", &opts).unwrap().to_json()
    );
    let e = cmd_props("corpus:random:x", &opts).unwrap_err();
    assert!(matches!(e, CliError::Core(Error::UnknownSpec(_))));
}

#[test]
fn props_on_standard_corpus() {
    let r = cmd_props("corpus:standard", &Options::default()).unwrap();
    assert!(r.passed, "{}", r.to_text());
    assert_eq!(
        r.get_detail("dense_components_witness").unwrap(),
        "(bc, ab)"
    );
    assert_eq!(r.get_detail("dframes").unwrap(), 60);
}

#[test]
fn mine_small() {
    let r = cmd_mine(3, &Options::default()).unwrap();
    assert!(r.passed);
    assert_eq!(r.get_detail("frame_pairs").unwrap(), 4);
}
