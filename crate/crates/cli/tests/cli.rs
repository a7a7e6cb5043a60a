use std::path::PathBuf;
use std::process::{Command, Output};

use flopkit_cli::report::{Body, EquivalenceSummary, Failure, Report};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn flopkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flopkit"))
        .args(args)
        .env_remove("FLOPKIT_CATALOGUE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, String) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = flopkit(&all);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str]) -> (i32, Report) {
    let (code, text) = json(args);
    let r: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    // the structured output is its own fixed point
    let again: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(&text).unwrap());
    (code, r)
}

fn failure(args: &[&str]) -> (i32, Failure) {
    let (code, text) = json(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

#[test]
fn atiyah_flop_end_to_end() {
    let (code, r) = report(&["flop", data("atiyah.fk").to_str().unwrap(), "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(r.ok);
    assert_eq!(r.seed, 3);
    let Body::Flop(items) = r.body else { panic!("wrong body") };
    let f = &items[0];
    assert_eq!(f.length, Some(1));
    assert!(f.swap_certified && f.base_change_ok && f.is_flop);
    assert!(f.w.small && f.wplus.small && f.w.smooth && f.wplus.smooth);
    assert!(matches!(f.sides_distinct, EquivalenceSummary::Inequivalent { .. }));
    assert_eq!(f.central.as_ref().unwrap().surface, "x^2 + y*z");
}

#[test]
fn extra_fibre_is_checked() {
    let (code, r) = report(&["flop", "--family", "pagoda", "--t", "-2/3"]);
    assert_eq!(code, 0);
    let Body::Flop(items) = r.body else { panic!("wrong body") };
    assert_eq!(items.len(), 1);
    let ts: Vec<&str> = items[0].base_change.iter().map(|b| b.t.as_str()).collect();
    assert_eq!(ts, ["0", "0", "1", "1", "-2/3", "-2/3"]);
}

#[test]
fn non_small_family_fails() {
    let (code, r) = report(&["flop", data("cylinder.fk").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!r.ok);
    let Body::Flop(items) = r.body else { panic!("wrong body") };
    assert!(!items[0].w.small);
    assert_eq!(items[0].w.exceptional_dimension, 2);
}

#[test]
fn catalogue_self_check() {
    let (code, r) = report(&["catalogue"]);
    assert_eq!(code, 0);
    let Body::Catalogue(c) = r.body else { panic!("wrong body") };
    assert_eq!(c.source, "builtin");
    assert_eq!(c.entries.len(), 14);
    assert!(c.entries.iter().all(|e| e.minimal));
    assert_eq!(c.families.len(), 4);
}

#[test]
fn catalogue_override_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_flopkit"))
        .args(["--format", "json", "catalogue"])
        .env("FLOPKIT_CATALOGUE", data("mini_catalogue.fk"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    let Body::Catalogue(c) = r.body else { panic!("wrong body") };
    assert_eq!(c.entries.len(), 1);
    assert!(c.source.ends_with("mini_catalogue.fk"));
}

#[test]
fn blowup_report_is_deterministic() {
    let a2 = data("a2.fk");
    let args = ["blowup", a2.to_str().unwrap(), "--seed", "11", "--order", "lex"];
    let (code, first) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(first, json(&args).1);
    let r: Report = serde_json::from_str(&first).unwrap();
    assert_eq!(r.order, "lex");
    let Body::Blowup(items) = r.body else { panic!("wrong body") };
    assert_eq!(items[0].residual, ["A1"]);
    assert_eq!(items[0].fibre_multiplicity, Some(1));
}

#[test]
fn classify_and_graph() {
    let (_, r) = report(&["classify", data("polys.fk").to_str().unwrap()]);
    let Body::Classify(items) = r.body else { panic!("wrong body") };
    let labels: Vec<_> = items.iter().map(|c| c.label.clone().unwrap()).collect();
    assert_eq!(labels, ["A3", "D5", "E6", "E8"]);

    let (code, r) = report(&["graph", data("graphs.fk").to_str().unwrap()]);
    assert_eq!(code, 0);
    let Body::Graph(items) = r.body else { panic!("wrong body") };
    assert_eq!(items[1].fundamental_cycle, [1, 2, 1, 1]);
    assert_eq!(items[2].flop_lengths, [5, 6]);
    assert_eq!(items[2].partial_resolutions.len(), 256);
    assert_eq!(items[3].label, None);
    assert!(items[3].wunram.is_none());
}

#[test]
fn verify_mf_reports_ranks() {
    let (code, r) = report(&["verify-mf", data("atiyah.fk").to_str().unwrap()]);
    assert_eq!(code, 0);
    let Body::VerifyMf(items) = r.body else { panic!("wrong body") };
    assert_eq!((items[0].rank, items[0].syzygy_rank, items[0].minimal), (1, 1, true));
}

#[test]
fn errors_map_to_exit_codes() {
    let (code, f) = failure(&["blowup", data("nonsquare.fk").to_str().unwrap()]);
    assert_eq!((code, f.kind.as_str()), (1, "contract"));

    let (code, f) = failure(&["verify-mf", data("syntax.fk").to_str().unwrap()]);
    assert_eq!((code, f.kind.as_str(), f.line, f.column), (2, "parse", Some(2), Some(14)));

    let (code, f) = failure(&["verify-mf", data("wrong_product.fk").to_str().unwrap()]);
    assert_eq!((code, f.kind.as_str()), (1, "verification"));

    let (code, f) = failure(&["flop", "--family", "nonesuch"]);
    assert_eq!((code, f.kind.as_str()), (1, "contract"));

    let out = flopkit(&["graph", data("graphs.fk").to_str().unwrap(), "--seed", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_output_ends_with_verdict() {
    let out = flopkit(&["flop", "--family", "atiyah"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("length 1"), "{text}");
    assert!(text.trim_end().ends_with("ok"));
}
