//! Parse a corpus file and print it in canonical form.
use tmc_forge::{parse_program, print_program};

pub fn main() {
    let src = include_str!("../corpus/merge.tmc");
    let p = parse_program(src).expect("merge.tmc parses");
    let canonical = print_program(&p);
    println!("{canonical}");

    // Printing is a canonicalization: one more round changes nothing.
    let again = print_program(&parse_program(&canonical).unwrap());
    assert_eq!(again, canonical);
}
