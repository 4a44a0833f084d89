//! Destination writes of the unrolled map, with and without compression.
use tmc_forge::gen::ArgSpec;
use tmc_forge::harness::run_entry;
use tmc_forge::parse_program;
use tmc_forge::runtime::Limits;
use tmc_forge::transform::{transform_program_with, TransformOptions};

pub fn main() {
    let p = parse_program(include_str!("../corpus/umap.tmc")).unwrap();
    for compression in [true, false] {
        let t = transform_program_with(&p, TransformOptions { compression })
            .unwrap()
            .program;
        for n in [10, 100] {
            let args: Vec<ArgSpec> = vec![
                "add1".parse().unwrap(),
                format!("list:{n}").parse().unwrap(),
            ];
            let r = run_entry(&t, "umap_dps", &args, 0, Limits::default(), true).unwrap();
            println!(
                "compression={compression:<5} n={n:<4} writes={}",
                r.metrics().dest_writes
            );
        }
    }
}
