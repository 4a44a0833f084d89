mod common;

use proptest::prelude::*;

use common::strategies::program;
use tmc_forge::harness::{diff_programs, DiffConfig};
use tmc_forge::runtime::{struct_eq, Limits, Runtime};
use tmc_forge::transform::{transform_program, transform_program_with, TransformOptions};

fn diff_corpus(opts: TransformOptions, trials: u64, seed: u64) {
    for (file, entry, specs) in common::SUITE {
        let p = common::corpus(file);
        let t = transform_program_with(&p, opts).unwrap().program;
        let args = common::args(specs);
        let cfg = DiffConfig {
            entry,
            args: &args,
            trials,
            seed,
            limits: Limits::default(),
        };
        let report = diff_programs(&p, &t, &cfg).unwrap();
        assert!(report.ok(), "{file}\n{}", report.render());
        assert!(
            report.hole_violations.is_empty(),
            "{file}\n{}",
            report.render()
        );
        assert!(
            report.trace_divergences.is_empty(),
            "{file}\n{}",
            report.render()
        );
    }
}

#[test]
fn corpus_agrees_with_its_transformation() {
    diff_corpus(TransformOptions::default(), 100, 0);
}

#[test]
fn uncompressed_transformation_agrees_too() {
    diff_corpus(TransformOptions { compression: false }, 30, 1000);
}

#[test]
fn golden_programs_agree_with_their_sources() {
    for name in ["map", "umap", "main_calls_map"] {
        let p = common::corpus(name);
        let g = common::golden(&format!("{name}_transformed"));
        let mut a = Runtime::new(&p, Limits::default()).unwrap();
        let mut b = Runtime::new(&g, Limits::default()).unwrap();
        let va = a.eval_main().unwrap();
        let vb = b.eval_main().unwrap();
        assert!(struct_eq(&a.store, &va, &b.store, &vb), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Whenever the original program finishes, the transformed one finishes
    /// with a structurally equal, hole-free value.
    #[test]
    fn transformation_preserves_results(p in program()) {
        let Ok(out) = transform_program(&p) else { return Ok(()) };
        let mut orig = Runtime::new(&p, Limits { max_stack: 1_000_000, max_steps: 20_000 }).unwrap();
        let Ok(v) = orig.eval_main() else { return Ok(()) };
        let mut tr = Runtime::new(&out.program, Limits { max_stack: 1_000_000, max_steps: 200_000 }).unwrap();
        let w = tr.eval_main();
        prop_assert!(w.is_ok(), "{:?}", w);
        let w = w.unwrap();
        prop_assert!(tr.store.assert_no_holes(&w).is_ok());
        prop_assert!(struct_eq(&orig.store, &v, &tr.store, &w), "{} vs {}", orig.render(&v), tr.render(&w));
        prop_assert_eq!(orig.metrics.effect_trace, tr.metrics.effect_trace);
    }
}
