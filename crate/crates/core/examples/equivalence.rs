//! Randomized comparison of `merge` and its transformation.
use tmc_forge::gen::ArgSpec;
use tmc_forge::harness::{diff_programs, DiffConfig};
use tmc_forge::parse_program;
use tmc_forge::runtime::Limits;
use tmc_forge::transform::transform_program;

pub fn main() {
    let original = parse_program(include_str!("../corpus/merge.tmc")).unwrap();
    let transformed = transform_program(&original).unwrap().program;
    let args: Vec<ArgSpec> = ["cmp", "sortedlist:0..40", "sortedlist:0..40"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let report = diff_programs(
        &original,
        &transformed,
        &DiffConfig {
            entry: "merge",
            args: &args,
            trials: 100,
            seed: 0,
            limits: Limits::default(),
        },
    )
    .unwrap();
    print!("{}", report.render());
    assert!(report.ok());
}
