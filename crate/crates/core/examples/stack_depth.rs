//! Stack depth of `map` before and after the transformation.
use tmc_forge::gen::ArgSpec;
use tmc_forge::harness::run_entry;
use tmc_forge::parse_program;
use tmc_forge::runtime::Limits;
use tmc_forge::transform::transform_program;

pub fn main() {
    let original = parse_program(include_str!("../corpus/map.tmc")).unwrap();
    let transformed = transform_program(&original).unwrap().program;

    for n in [100, 1_000, 10_000] {
        let args: Vec<ArgSpec> = vec![
            "add1".parse().unwrap(),
            format!("list:{n}").parse().unwrap(),
        ];
        let before = run_entry(&original, "map", &args, 0, Limits::default(), false).unwrap();
        let after = run_entry(&transformed, "map", &args, 0, Limits::default(), false).unwrap();
        println!(
            "n={n:>6}  original depth={:>6}  transformed depth={}",
            before.metrics().max_stack_depth,
            after.metrics().max_stack_depth
        );
    }

    let args: Vec<ArgSpec> = vec!["add1".parse().unwrap(), "list:10000".parse().unwrap()];
    let small = Limits {
        max_stack: 5_000,
        ..Limits::default()
    };
    let r = run_entry(&original, "map", &args, 0, small, false).unwrap();
    println!("original with a 5000-frame limit: {}", r.rendered());
}
