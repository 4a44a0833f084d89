mod common;

use tmc_forge::harness::{diff_programs, DiffConfig};
use tmc_forge::parse_program;
use tmc_forge::runtime::{Limits, Runtime};
use tmc_forge::transform::transform_program;

fn trace_of_main(p: &tmc_forge::Program) -> Vec<String> {
    let mut rt = Runtime::new(p, Limits::default()).unwrap();
    rt.eval_main().unwrap();
    rt.metrics.effect_trace.clone()
}

#[test]
fn arguments_run_left_to_right() {
    let p = parse_program("(program (main (tuple (call print 1) (call print 2) (call print 3))))")
        .unwrap();
    assert_eq!(trace_of_main(&p), ["1", "2", "3"]);
}

#[test]
fn recursive_argument_runs_last_after_transformation() {
    let p = common::corpus("effect_order");
    let t = transform_program(&p).unwrap().program;
    assert_eq!(trace_of_main(&p), ["1", "2", "1002", "1001"]);
    assert_eq!(trace_of_main(&t), ["1", "1001", "2", "1002"]);
}

#[test]
fn reordering_is_a_trace_divergence_not_a_failure() {
    let p = common::corpus("effect_order");
    let t = transform_program(&p).unwrap().program;
    let args = common::args(&["list:2..8"]);
    let cfg = DiffConfig {
        entry: "echo",
        args: &args,
        trials: 50,
        seed: 0,
        limits: Limits::default(),
    };
    let report = diff_programs(&p, &t, &cfg).unwrap();
    assert!(report.ok());
    assert_eq!(report.trace_divergences.len(), 50);
    assert!(report
        .trace_divergences
        .iter()
        .all(|d| d.same_effects && d.position == 1));
}

#[test]
fn effects_outside_constructor_arguments_keep_their_order() {
    let p = common::corpus("map");
    let t = transform_program(&p).unwrap().program;
    let args = common::args(&["print", "list:0..20"]);
    let cfg = DiffConfig {
        entry: "map",
        args: &args,
        trials: 50,
        seed: 0,
        limits: Limits::default(),
    };
    let report = diff_programs(&p, &t, &cfg).unwrap();
    assert!(report.ok());
    assert!(report.trace_divergences.is_empty(), "{}", report.render());
}
