//! A transformed program with a wrong destination index is caught at
//! runtime by the single-write check.
use tmc_forge::gen::ArgSpec;
use tmc_forge::harness::run_entry;
use tmc_forge::parse_program;
use tmc_forge::runtime::Limits;

pub fn main() {
    let broken = parse_program(include_str!("../tests/golden/map_broken_index.tmc")).unwrap();
    let args: Vec<ArgSpec> = vec!["add1".parse().unwrap(), "list:3".parse().unwrap()];
    let r = run_entry(&broken, "map", &args, 0, Limits::default(), false).unwrap();
    match r.outcome {
        Err(e) => println!("caught {e}"),
        Ok(_) => unreachable!(),
    }
}
