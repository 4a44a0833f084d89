//! Effects in constructor arguments run in a different order after the
//! transformation; values stay the same.
use tmc_forge::parse_program;
use tmc_forge::runtime::{Limits, Runtime};
use tmc_forge::transform::transform_program;

pub fn main() {
    let original = parse_program(include_str!("../corpus/effect_order.tmc")).unwrap();
    let transformed = transform_program(&original).unwrap().program;
    for (name, p) in [("original", &original), ("transformed", &transformed)] {
        let mut rt = Runtime::new(p, Limits::default()).unwrap();
        let v = rt.eval_main().unwrap();
        println!(
            "{name:<12} {}  trace={:?}",
            rt.render(&v),
            rt.metrics.effect_trace
        );
    }
}
