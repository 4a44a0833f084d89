mod common;

use tmc_forge::transform::transform_program;
use tmc_forge::{parse_program, print_program, Expr};

/// Set `TMC_FORGE_BLESS=1` to rewrite the golden files from current output.
fn check_golden(source: &str, golden: &str) {
    let p = common::corpus(source);
    let out = print_program(&transform_program(&p).unwrap().program) + "\n";
    let path = common::golden_path(golden);
    if std::env::var("TMC_FORGE_BLESS").as_deref() == Ok("1") {
        std::fs::write(&path, &out).unwrap();
    }
    assert_eq!(out, common::read(&path), "{golden} is stale");
}

#[test]
fn map_golden() {
    check_golden("map", "map_transformed");
}

#[test]
fn umap_golden() {
    check_golden("umap", "umap_transformed");
}

#[test]
fn main_calls_map_golden() {
    check_golden("main_calls_map", "main_calls_map_transformed");
}

#[test]
fn call_from_main_is_left_alone() {
    let g = common::golden("main_calls_map_transformed");
    let Expr::Constr { args, .. } = &g.main else {
        panic!("main is a constructor")
    };
    assert!(matches!(&args[1], Expr::Call { callee, .. } if callee == "map"));
    assert_eq!(g.main, common::corpus("main_calls_map").main);
}

#[test]
fn unmarked_program_is_byte_identical() {
    let text = common::read(&common::corpus_path("no_marks"));
    let p = parse_program(&text).unwrap();
    assert_eq!(
        print_program(&transform_program(&p).unwrap().program) + "\n",
        text
    );
}

#[test]
fn minimal_program_layout() {
    let p = parse_program("(program (main (int 0)))").unwrap();
    assert_eq!(print_program(&p), "(program\n  (main (int 0)))");
}

#[test]
fn broken_fixture_differs_in_one_line() {
    let good = common::read(&common::golden_path("map_transformed"));
    let bad = common::read(&common::golden_path("map_broken_index"));
    let changed: Vec<_> = good
        .lines()
        .zip(bad.lines())
        .filter(|(a, b)| a != b)
        .collect();
    assert_eq!(good.lines().count(), bad.lines().count());
    assert_eq!(changed.len(), 1);
    assert!(changed[0].1.contains("(setref dst0 (int 1) dst0)"));
}

#[test]
fn corpus_files_round_trip() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let p = parse_program(&common::read(&path)).unwrap();
        let printed = print_program(&p);
        assert_eq!(parse_program(&printed).unwrap(), p, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 13);
}

#[test]
fn truncated_file_reports_the_end() {
    let text = "(program (main (constr Cons 1)))";
    let cut = &text[..text.len() - 1];
    let e = parse_program(cut).unwrap_err();
    assert_eq!(e.span.byte_start, cut.len());
    assert!(e.span.byte_end <= cut.len());
}
