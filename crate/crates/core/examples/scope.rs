//! Which call sites get rewritten: inside marked bodies yes, from main no.
use tmc_forge::analysis::{resolve_scope, Eligibility};
use tmc_forge::parse_program;
use tmc_forge::print_program;
use tmc_forge::transform::transform_program;

pub fn main() {
    for src in [
        include_str!("../corpus/flatten_nested.tmc"),
        include_str!("../corpus/main_calls_map.tmc"),
    ] {
        let p = parse_program(src).unwrap();
        for (path, site) in &resolve_scope(&p).calls {
            if site.eligibility == Eligibility::RewriteEligible {
                println!("eligible: {} at {path}", site.callee_name);
            }
        }
        println!(
            "{}\n",
            print_program(&transform_program(&p).unwrap().program)
        );
    }
}
