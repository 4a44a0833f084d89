//! Randomized equivalence checking and metric benchmarks.

use std::fmt::Write as _;

use crate::diagnostic::Diagnostic;
use crate::gen::{ArgSpec, GenError, Lcg};
use crate::ir::Program;
use crate::runtime::{struct_eq, Limits, Metrics, Runtime, RuntimeError, Value};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("program does not transform")]
    Static(Vec<Diagnostic>),
    #[error(transparent)]
    Runtime(#[from] RuntimeError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("no toplevel function `{0}`")]
    UnknownEntry(String),
    #[error("`{entry}` takes {expected} arguments, {given} given")]
    ArgCount {
        entry: String,
        expected: usize,
        given: usize,
    },
}

/// Load `args` for a fresh trial into `rt`, one generator stream per trial.
pub fn load_args(rt: &mut Runtime, args: &[ArgSpec], seed: u64) -> Result<Vec<Value>, GenError> {
    let mut rng = Lcg::new(seed);
    args.iter().map(|a| a.load(&mut rng, rt)).collect()
}

fn check_entry(rt: &Runtime, entry: &str, extra: usize, given: usize) -> Result<(), HarnessError> {
    let arity = rt
        .arity(entry)
        .ok_or_else(|| HarnessError::UnknownEntry(entry.to_string()))?;
    if arity != given + extra {
        return Err(HarnessError::ArgCount {
            entry: entry.to_string(),
            expected: arity - extra.min(arity),
            given,
        });
    }
    Ok(())
}

/// Call a DPS companion with a fresh one-field scratch block as destination
/// and return what it wrote. The scratch block is not counted as an
/// allocation.
pub fn call_into_scratch(
    rt: &mut Runtime,
    dps: &str,
    args: Vec<Value>,
) -> Result<Value, RuntimeError> {
    let scratch = rt.store.alloc_named("Scratch", vec![Value::Hole]);
    let mut all = vec![scratch.clone(), Value::Int(1)];
    all.extend(args);
    rt.call_partial(dps, all)?;
    let block = scratch.as_block().expect("scratch is a block");
    let v = rt.store.get(block).fields[0].clone();
    rt.store.assert_no_holes(&scratch)?;
    Ok(v)
}

/// One run of one entry point.
pub struct RunResult {
    pub input: String,
    pub outcome: Result<Value, RuntimeError>,
    pub runtime: Runtime,
}

impl RunResult {
    pub fn rendered(&self) -> String {
        match &self.outcome {
            Ok(v) => self.runtime.render(v),
            Err(e) => format!("error: {e}"),
        }
    }

    pub fn metrics(&self) -> &Metrics {
        &self.runtime.metrics
    }
}

pub fn run_entry(
    p: &Program,
    entry: &str,
    args: &[ArgSpec],
    seed: u64,
    limits: Limits,
    scratch: bool,
) -> Result<RunResult, HarnessError> {
    let mut rt = Runtime::new(p, limits)?;
    check_entry(&rt, entry, if scratch { 2 } else { 0 }, args.len())?;
    let values = load_args(&mut rt, args, seed)?;
    let input = values
        .iter()
        .map(|v| rt.render(v))
        .collect::<Vec<_>>()
        .join(" ");
    let outcome = if scratch {
        call_into_scratch(&mut rt, entry, values)
    } else {
        rt.call(entry, values)
    };
    Ok(RunResult {
        input,
        outcome,
        runtime: rt,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffFailure {
    pub seed: u64,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceDivergence {
    pub seed: u64,
    /// First index at which the effect traces differ.
    pub position: usize,
    /// Whether the two traces are permutations of each other.
    pub same_effects: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    pub entry: String,
    pub trials: u64,
    pub failures: Vec<DiffFailure>,
    pub trace_divergences: Vec<TraceDivergence>,
    /// Runs that failed with a hole-discipline error, on either side.
    pub hole_violations: Vec<(u64, RuntimeError)>,
}

impl DiffReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "diff {}: {} trials, {} failures, {} trace divergences\n",
            self.entry,
            self.trials,
            self.failures.len(),
            self.trace_divergences.len()
        );
        for f in &self.failures {
            let _ = writeln!(
                out,
                "FAIL seed={} input={} original={} transformed={}",
                f.seed, f.input, f.lhs, f.rhs
            );
        }
        for t in &self.trace_divergences {
            let _ = writeln!(
                out,
                "TRACE seed={} position={} {}",
                t.seed,
                t.position,
                if t.same_effects {
                    "reordered"
                } else {
                    "different effects"
                }
            );
        }
        out
    }
}

pub struct DiffConfig<'a> {
    pub entry: &'a str,
    pub args: &'a [ArgSpec],
    pub trials: u64,
    pub seed: u64,
    pub limits: Limits,
}

/// Run `entry` of both programs on the same seeded inputs and compare
/// results structurally and effect traces exactly.
pub fn diff_programs(
    original: &Program,
    transformed: &Program,
    cfg: &DiffConfig<'_>,
) -> Result<DiffReport, HarnessError> {
    let mut report = DiffReport {
        entry: cfg.entry.to_string(),
        trials: cfg.trials,
        failures: Vec::new(),
        trace_divergences: Vec::new(),
        hole_violations: Vec::new(),
    };
    for t in 0..cfg.trials {
        let seed = cfg.seed.wrapping_add(t);
        let lhs = run_entry(original, cfg.entry, cfg.args, seed, cfg.limits, false)?;
        let rhs = run_entry(transformed, cfg.entry, cfg.args, seed, cfg.limits, false)?;
        for side in [&lhs, &rhs] {
            if let Err(e) = &side.outcome {
                if e.is_hole_violation() {
                    report.hole_violations.push((seed, e.clone()));
                }
            }
        }
        let agree = match (&lhs.outcome, &rhs.outcome) {
            (Ok(a), Ok(b)) => struct_eq(&lhs.runtime.store, a, &rhs.runtime.store, b),
            (Err(a), Err(b)) => a.name() == b.name(),
            _ => false,
        };
        if !agree {
            report.failures.push(DiffFailure {
                seed,
                input: lhs.input.clone(),
                lhs: lhs.rendered(),
                rhs: rhs.rendered(),
            });
        }
        let (ta, tb) = (&lhs.metrics().effect_trace, &rhs.metrics().effect_trace);
        if ta != tb {
            let position = ta.iter().zip(tb).take_while(|(a, b)| a == b).count();
            let (mut sa, mut sb) = (ta.clone(), tb.clone());
            sa.sort();
            sb.sort();
            report.trace_divergences.push(TraceDivergence {
                seed,
                position,
                same_effects: sa == sb,
            });
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub variant: String,
    pub size: u64,
    pub max_stack_depth: usize,
    pub allocations: u64,
    pub dest_writes: u64,
    pub steps: u64,
    pub error: Option<String>,
}

pub struct BenchConfig<'a> {
    pub entries: &'a [String],
    /// Argument specs; `N` stands for the size of the row.
    pub arg_templates: &'a [String],
    pub sizes: &'a [u64],
    pub seed: u64,
    pub limits: Limits,
    pub scratch: bool,
}

/// One row per (entry, size). Runtime errors are recorded in the row and
/// do not stop the others.
pub fn bench(p: &Program, cfg: &BenchConfig<'_>) -> Result<Vec<BenchRow>, HarnessError> {
    let mut rows = Vec::new();
    for entry in cfg.entries {
        for &size in cfg.sizes {
            let args = cfg
                .arg_templates
                .iter()
                .map(|t| ArgSpec::with_size(t, size))
                .collect::<Result<Vec<_>, _>>()?;
            let r = run_entry(p, entry, &args, cfg.seed, cfg.limits, cfg.scratch)?;
            let m = r.metrics();
            rows.push(BenchRow {
                variant: entry.clone(),
                size,
                max_stack_depth: m.max_stack_depth,
                allocations: m.allocations,
                dest_writes: m.dest_writes,
                steps: m.steps,
                error: r.outcome.as_ref().err().map(|e| e.name().to_string()),
            });
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "variant,size,max_stack_depth,allocations,dest_writes,steps";

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.variant, r.size, r.max_stack_depth, r.allocations, r.dest_writes, r.steps
        );
    }
    out
}

/// Aligned text table; failed cells carry the error name in a last column.
pub fn bench_table(rows: &[BenchRow]) -> String {
    let header = [
        "variant",
        "size",
        "max_stack_depth",
        "allocations",
        "dest_writes",
        "steps",
        "error",
    ];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.variant.clone(),
                r.size.to_string(),
                r.max_stack_depth.to_string(),
                r.allocations.to_string(),
                r.dest_writes.to_string(),
                r.steps.to_string(),
                r.error.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: [&str; 7]| {
        let mut s = String::new();
        for (i, (c, w)) in row.iter().zip(widths).enumerate() {
            if i == 0 {
                let _ = write!(s, "{c:<w$}");
            } else {
                let _ = write!(s, "  {c:>w$}");
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(header) + "\n";
    for row in &cells {
        out += &line(row.each_ref().map(String::as_str));
        out.push('\n');
    }
    out
}
