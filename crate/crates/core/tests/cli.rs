mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use ccgroup::cli::problem::parse_term_with;
use common::*;
use serde_json::Value;

fn problem_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("problems")
        .join(format!("{name}.txt"))
}

fn ccgroup(args: &[&str], file: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccgroup"))
        .args(args)
        .arg(file)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str], name: &str) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = ccgroup(&all, &problem_path(name));
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

fn with_text(text: &str, args: &[&str]) -> Output {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    std::io::Write::write_all(&mut f, text.as_bytes()).unwrap();
    ccgroup(args, f.path())
}

#[test]
fn semigroup_completes_with_four_rules() {
    let (code, v) = json(&[], "semigroup");
    assert_eq!(code, 0);
    assert_eq!(v["status"], "completed");
    assert_eq!(v["rules"].as_array().unwrap().len(), 4);
    assert_eq!(v["queries"][0]["verdict"], "equal");
    assert_eq!(v["queries"][1]["verdict"], "not-equal");
}

#[test]
fn divergent_run_exits_with_two() {
    let (code, v) = json(&["--fuel", "5000"], "divergent");
    assert_eq!(code, 2);
    assert_eq!(v["status"], "diverged");
    assert!(v["steps"].as_u64().unwrap() >= 5000);
    assert_eq!(v["queries"][0]["verdict"], "undecided");
}

#[test]
fn multi_group_query_is_equal() {
    let (code, v) = json(&[], "multigroup");
    assert_eq!(code, 0);
    assert_eq!(v["queries"][0]["verdict"], "equal");
}

#[test]
fn input_errors_exit_with_one() {
    let out = with_text("assoc f\nconst a b\neq f(a) = b\n", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = with_text("const a\neq a = b\n", &[]);
    assert_eq!(out.status.code(), Some(1));
    let out = ccgroup(&[], std::path::Path::new("/nonexistent/problem.txt"));
    assert_eq!(out.status.code(), Some(1));
    let out = ccgroup(&["--show-presentation"], &problem_path("semigroup"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn empty_file_is_a_completed_empty_problem() {
    let out = with_text("", &["--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "completed");
    assert!(v["rules"].as_array().unwrap().is_empty());
}

#[test]
fn json_is_stable() {
    let a = ccgroup(&["--json", "--trace"], &problem_path("running"));
    let b = ccgroup(&["--json", "--trace"], &problem_path("running"));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let keys: Vec<usize> = ["\"status\"", "\"steps\"", "\"rules\"", "\"queries\"", "\"trace\""]
        .iter()
        .map(|k| text.find(k).expect("key present"))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn dihedral_presentation_and_normal_forms() {
    let (code, v) = json(&["--show-presentation", "--enumerate-nf", "6"], "dihedral");
    assert_eq!(code, 0);
    assert_eq!(v["presentation"]["generators"].as_array().unwrap().len(), 4);
    assert_eq!(v["presentation"]["relations"].as_array().unwrap().len(), 7);
    assert_eq!(v["normal_forms"]["count"], 6);
    assert_eq!(v["normal_forms"]["grew_at_max"], false);
}

#[test]
fn text_output_lists_rules_and_verdicts() {
    let out = ccgroup(&["--trace"], &problem_path("monoid"));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("status: completed"));
    assert!(text.contains("f(a,c,1,d) -> f(a,c,d) -> f(a,d,d) -> f(a,d) -> a"));
    assert!(text.contains("trace:"));
}

#[test]
fn skip_unit_deduce_flag_is_accepted() {
    let (code, plain) = json(&[], "intro");
    let (code2, skipped) = json(&["--skip-unit-deduce"], "intro");
    assert_eq!((code, code2), (0, 0));
    assert_eq!(plain["rules"], skipped["rules"]);
}

#[test]
fn rendered_rules_parse_back() {
    for name in GOLDEN {
        let p = pipeline(name);
        let sig = &p.system.sig;
        for r in &p.completion.rules {
            let text = r.render(sig);
            let (l, rhs) = text.split_once(" -> ").expect("rule arrow");
            let (pl, pr) = (parse_term_with(sig, l).unwrap(), parse_term_with(sig, rhs).unwrap());
            assert_eq!(pl, r.lhs.to_term(), "{name}: {text}");
            assert_eq!(pr, r.rhs.to_term(), "{name}: {text}");
        }
    }
}
