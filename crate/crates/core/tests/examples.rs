//! Every example runs to completion.

#[path = "../examples/ambiguity.rs"]
mod ambiguity;
#[path = "../examples/bench_variants.rs"]
mod bench_variants;
#[path = "../examples/compression.rs"]
mod compression;
#[path = "../examples/decompose.rs"]
mod decompose;
#[path = "../examples/effect_order.rs"]
mod effect_order;
#[path = "../examples/equivalence.rs"]
mod equivalence;
#[path = "../examples/generators.rs"]
mod generators;
#[path = "../examples/hole_safety.rs"]
mod hole_safety;
#[path = "../examples/parse_print.rs"]
mod parse_print;
#[path = "../examples/scope.rs"]
mod scope;
#[path = "../examples/stack_depth.rs"]
mod stack_depth;
#[path = "../examples/transform_map.rs"]
mod transform_map;

#[test]
fn ambiguity_runs() {
    ambiguity::main();
}

#[test]
fn bench_variants_runs() {
    bench_variants::main();
}

#[test]
fn compression_runs() {
    compression::main();
}

#[test]
fn decompose_runs() {
    decompose::main();
}

#[test]
fn effect_order_runs() {
    effect_order::main();
}

#[test]
fn equivalence_runs() {
    equivalence::main();
}

#[test]
fn generators_runs() {
    generators::main();
}

#[test]
fn hole_safety_runs() {
    hole_safety::main();
}

#[test]
fn parse_print_runs() {
    parse_print::main();
}

#[test]
fn scope_runs() {
    scope::main();
}

#[test]
fn stack_depth_runs() {
    stack_depth::main();
}

#[test]
fn transform_map_runs() {
    transform_map::main();
}
