#![allow(dead_code)]

pub mod strategies;

use std::path::PathBuf;

use tmc_forge::gen::ArgSpec;
use tmc_forge::{parse_program, Program};

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(format!("{name}.tmc"))
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.tmc"))
}

pub fn read(path: &PathBuf) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn corpus(name: &str) -> Program {
    parse_program(&read(&corpus_path(name))).unwrap()
}

pub fn golden(name: &str) -> Program {
    parse_program(&read(&golden_path(name))).unwrap()
}

pub fn args(specs: &[&str]) -> Vec<ArgSpec> {
    specs.iter().map(|s| s.parse().unwrap()).collect()
}

/// Corpus programs with a marked entry point and inputs for it.
pub const SUITE: &[(&str, &str, &[&str])] = &[
    ("map", "map", &["add1", "list:0..60"]),
    ("filter", "filter", &["small", "list:0..60"]),
    (
        "merge",
        "merge",
        &["cmp", "sortedlist:0..30", "sortedlist:0..30"],
    ),
    ("umap", "umap", &["add1", "list:0..60"]),
    ("tree_map_annotated", "tree_map", &["add1", "tree:7"]),
    ("map_tail", "map_tail", &["bump", "cmmlike:200"]),
    ("flatten_nested", "flatten", &["listlist:8x5"]),
    ("flatten_mutual", "flatten", &["listlist:8x5"]),
];
