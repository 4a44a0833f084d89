//! Metric table for four ways of writing map.
use tmc_forge::harness::{bench, bench_table, BenchConfig};
use tmc_forge::parse_program;
use tmc_forge::runtime::Limits;
use tmc_forge::transform::transform_program;

pub fn main() {
    let p = parse_program(include_str!("../corpus/map_variants.tmc")).unwrap();
    let p = transform_program(&p).unwrap().program;
    let entries: Vec<String> = ["map_direct", "map_acc", "map_tmc", "umap"]
        .map(String::from)
        .to_vec();
    let templates = vec!["add1".to_string(), "list:N".to_string()];
    let rows = bench(
        &p,
        &BenchConfig {
            entries: &entries,
            arg_templates: &templates,
            sizes: &[10, 100, 1_000],
            seed: 0,
            limits: Limits::default(),
            scratch: false,
        },
    )
    .unwrap();
    print!("{}", bench_table(&rows));
}
