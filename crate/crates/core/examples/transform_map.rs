//! Transform `map` and show which rules fired where.
use tmc_forge::parse_program;
use tmc_forge::print_program;
use tmc_forge::transform::transform_program;

pub fn main() {
    let p = parse_program(include_str!("../corpus/map.tmc")).unwrap();
    let out = transform_program(&p).expect("map transforms");
    for line in &out.trace {
        println!("; {line}");
    }
    println!("{}", print_program(&out.program));
}
