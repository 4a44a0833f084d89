//! The `tmc-forge` command line.
//!
//! Exit codes: 0 on success (warnings allowed), 1 on static errors (parse,
//! analysis, usage), 2 on runtime errors and failed equivalence checks.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::diagnostic::{has_errors, Diagnostic, Severity};
use crate::gen::ArgSpec;
use crate::harness::{self, BenchConfig, DiffConfig, HarnessError};
use crate::ir::{well_formed, Program};
use crate::parser::{parse_program_with_spans, print_program, ParseError, SpanMap};
use crate::runtime::Limits;
use crate::transform::transform_program;

pub const EXIT_OK: i32 = 0;
pub const EXIT_STATIC: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "tmc-forge",
    version,
    about = "Tail-modulo-cons transformation workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a program and print it in canonical form.
    Parse { file: PathBuf },
    /// Rewrite marked functions into direct and destination-passing pairs.
    Transform {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print each rewrite rule application to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a function (or `main`) and print the result.
    Run {
        file: PathBuf,
        /// Function to call; evaluates `main` when absent.
        #[arg(long)]
        entry: Option<String>,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        metrics: bool,
        /// Transform the program before running it.
        #[arg(long)]
        transformed: bool,
        /// Call a DPS companion with a scratch destination.
        #[arg(long)]
        scratch: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Compare the original and transformed program on random inputs.
    Diff {
        file: PathBuf,
        #[arg(long)]
        entry: String,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Use this file as the transformed program instead of transforming.
        #[arg(long)]
        against: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Metric table for several entry points over several sizes.
    Bench {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        entry: Vec<String>,
        /// Argument specs; `N` is replaced by the size.
        #[arg(long)]
        arg: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the rows as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Run the program as written instead of its transformation.
        #[arg(long)]
        original: bool,
        #[arg(long)]
        scratch: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Argument literal or generator spec, once per parameter.
    #[arg(long)]
    arg: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long, default_value_t = Limits::default().max_stack)]
    max_stack: usize,
    #[arg(long, default_value_t = Limits::default().max_steps)]
    max_steps: u64,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_stack: self.max_stack,
            max_steps: self.max_steps,
        }
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

impl Io<'_> {
    fn diag(&mut self, file: &str, spans: Option<&SpanMap>, d: &Diagnostic) {
        let line = d.render(file, spans);
        let line = match (self.color, d.severity) {
            (false, _) => line,
            (true, Severity::Error) => format!("\x1b[31m{line}\x1b[0m"),
            (true, Severity::Warning) => format!("\x1b[33m{line}\x1b[0m"),
        };
        let _ = writeln!(self.err, "{line}");
    }

    fn diags(&mut self, file: &str, spans: Option<&SpanMap>, ds: &[Diagnostic]) {
        for d in ds {
            self.diag(file, spans, d);
        }
    }

    fn error(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "{msg}");
    }
}

/// Process entry point used by the binary.
pub fn main() -> i32 {
    let color = std::env::var("TMC_FORGE_COLOR").map_or(true, |v| v != "0")
        && std::io::stderr().is_terminal();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err, color)
}

/// Run the command line `args` (including the program name).
pub fn run(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    out: &mut dyn Write,
    err: &mut dyn Write,
    color: bool,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_STATIC,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { out, err, color };
    match cli.command {
        Command::Parse { file } => cmd_parse(&mut io, &file),
        Command::Transform { file, out, trace } => {
            cmd_transform(&mut io, &file, out.as_deref(), trace)
        }
        Command::Run {
            file,
            entry,
            input,
            metrics,
            transformed,
            scratch,
            limits,
        } => cmd_run(
            &mut io,
            &file,
            RunOpts {
                entry: entry.as_deref(),
                args: &input.arg,
                seed: input.seed,
                metrics,
                transformed,
                scratch,
                limits: limits.limits(),
            },
        ),
        Command::Diff {
            file,
            entry,
            input,
            trials,
            against,
            limits,
        } => cmd_diff(
            &mut io,
            &file,
            &entry,
            &input,
            trials,
            against.as_deref(),
            limits.limits(),
        ),
        Command::Bench {
            file,
            entry,
            arg,
            sizes,
            seed,
            csv,
            original,
            scratch,
            limits,
        } => {
            let cfg = BenchConfig {
                entries: &entry,
                arg_templates: &arg,
                sizes: &sizes,
                seed,
                limits: limits.limits(),
                scratch,
            };
            cmd_bench(&mut io, &file, &cfg, csv.as_deref(), original)
        }
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

/// Read and parse `path`, reporting problems. `None` means exit 1.
fn load(io: &mut Io<'_>, path: &Path) -> Option<(Program, SpanMap)> {
    let name = display(path);
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            io.error(format!("ERROR Io {name}: {e}"));
            return None;
        }
    };
    match parse_program_with_spans(&text) {
        Ok((p, spans)) => {
            let wf = well_formed(&p);
            io.diags(&name, Some(&spans), &wf);
            if has_errors(&wf) {
                None
            } else {
                Some((p, spans))
            }
        }
        Err(e) => {
            io.error(render_parse_error(&name, &e));
            None
        }
    }
}

fn render_parse_error(file: &str, e: &ParseError) -> String {
    format!("ERROR Parse {file}:{e}")
}

/// Transform, printing diagnostics. `None` means exit 1.
fn transform(
    io: &mut Io<'_>,
    path: &Path,
    p: &Program,
    spans: &SpanMap,
) -> Option<crate::transform::TransformOutput> {
    match transform_program(p) {
        Ok(t) => {
            io.diags(&display(path), Some(spans), &t.warnings);
            Some(t)
        }
        Err(ds) => {
            io.diags(&display(path), Some(spans), &ds);
            None
        }
    }
}

fn cmd_parse(io: &mut Io<'_>, path: &Path) -> i32 {
    let Some((p, _)) = load(io, path) else {
        return EXIT_STATIC;
    };
    let _ = writeln!(io.out, "{}", print_program(&p));
    EXIT_OK
}

fn cmd_transform(io: &mut Io<'_>, path: &Path, out: Option<&Path>, trace: bool) -> i32 {
    let Some((p, spans)) = load(io, path) else {
        return EXIT_STATIC;
    };
    let Some(t) = transform(io, path, &p, &spans) else {
        return EXIT_STATIC;
    };
    if trace {
        for line in &t.trace {
            io.error(line);
        }
    }
    let text = print_program(&t.program) + "\n";
    match out {
        Some(o) => {
            if let Err(e) = std::fs::write(o, text) {
                io.error(format!("ERROR Io {}: {e}", display(o)));
                return EXIT_STATIC;
            }
        }
        None => {
            let _ = io.out.write_all(text.as_bytes());
        }
    }
    EXIT_OK
}

struct RunOpts<'a> {
    entry: Option<&'a str>,
    args: &'a [String],
    seed: u64,
    metrics: bool,
    transformed: bool,
    scratch: bool,
    limits: Limits,
}

fn parse_args(io: &mut Io<'_>, args: &[String]) -> Option<Vec<ArgSpec>> {
    let mut out = Vec::new();
    for a in args {
        match a.parse() {
            Ok(spec) => out.push(spec),
            Err(e) => {
                io.error(format!("ERROR Usage {e}"));
                return None;
            }
        }
    }
    Some(out)
}

fn harness_error(io: &mut Io<'_>, path: &Path, spans: &SpanMap, e: HarnessError) -> i32 {
    match e {
        HarnessError::Runtime(e) => {
            io.error(format!("RUNTIME ERROR {e}"));
            EXIT_RUNTIME
        }
        HarnessError::Static(ds) => {
            io.diags(&display(path), Some(spans), &ds);
            EXIT_STATIC
        }
        other => {
            io.error(format!("ERROR Usage {other}"));
            EXIT_STATIC
        }
    }
}

fn cmd_run(io: &mut Io<'_>, path: &Path, o: RunOpts<'_>) -> i32 {
    let Some((mut p, spans)) = load(io, path) else {
        return EXIT_STATIC;
    };
    if o.transformed {
        let Some(t) = transform(io, path, &p, &spans) else {
            return EXIT_STATIC;
        };
        p = t.program;
    }
    let Some(args) = parse_args(io, o.args) else {
        return EXIT_STATIC;
    };
    let (rendered, metrics, failed) = match o.entry {
        Some(entry) => match harness::run_entry(&p, entry, &args, o.seed, o.limits, o.scratch) {
            Ok(r) => {
                let failed = r.outcome.as_ref().err().map(|e| e.to_string());
                (
                    r.outcome.is_ok().then(|| r.rendered()),
                    r.metrics().clone(),
                    failed,
                )
            }
            Err(e) => return harness_error(io, path, &spans, e),
        },
        None => {
            if !args.is_empty() {
                io.error("ERROR Usage --arg needs --entry");
                return EXIT_STATIC;
            }
            let mut rt = match crate::runtime::Runtime::new(&p, o.limits) {
                Ok(rt) => rt,
                Err(e) => return harness_error(io, path, &spans, e.into()),
            };
            match rt.eval_main() {
                Ok(v) => (Some(rt.render(&v)), rt.metrics.clone(), None),
                Err(e) => (None, rt.metrics.clone(), Some(e.to_string())),
            }
        }
    };
    if let Some(v) = rendered {
        let _ = writeln!(io.out, "{v}");
    }
    if o.metrics {
        let _ = writeln!(io.out, "{metrics}");
    }
    match failed {
        Some(e) => {
            io.error(format!("RUNTIME ERROR {e}"));
            EXIT_RUNTIME
        }
        None => EXIT_OK,
    }
}

fn cmd_diff(
    io: &mut Io<'_>,
    path: &Path,
    entry: &str,
    input: &InputArgs,
    trials: u64,
    against: Option<&Path>,
    limits: Limits,
) -> i32 {
    let Some((p, spans)) = load(io, path) else {
        return EXIT_STATIC;
    };
    let transformed = match against {
        Some(a) => match load(io, a) {
            Some((t, _)) => t,
            None => return EXIT_STATIC,
        },
        None => match transform(io, path, &p, &spans) {
            Some(t) => t.program,
            None => return EXIT_STATIC,
        },
    };
    let Some(args) = parse_args(io, &input.arg) else {
        return EXIT_STATIC;
    };
    let cfg = DiffConfig {
        entry,
        args: &args,
        trials,
        seed: input.seed,
        limits,
    };
    match harness::diff_programs(&p, &transformed, &cfg) {
        Ok(report) => {
            let _ = write!(io.out, "{}", report.render());
            if report.ok() {
                EXIT_OK
            } else {
                EXIT_RUNTIME
            }
        }
        Err(e) => harness_error(io, path, &spans, e),
    }
}

fn cmd_bench(
    io: &mut Io<'_>,
    path: &Path,
    cfg: &BenchConfig<'_>,
    csv: Option<&Path>,
    original: bool,
) -> i32 {
    let Some((mut p, spans)) = load(io, path) else {
        return EXIT_STATIC;
    };
    if !original {
        let Some(t) = transform(io, path, &p, &spans) else {
            return EXIT_STATIC;
        };
        p = t.program;
    }
    let rows = match harness::bench(&p, cfg) {
        Ok(rows) => rows,
        Err(e) => return harness_error(io, path, &spans, e),
    };
    let _ = write!(io.out, "{}", harness::bench_table(&rows));
    if let Some(c) = csv {
        if let Err(e) = std::fs::write(c, harness::bench_csv(&rows)) {
            io.error(format!("ERROR Io {}: {e}", display(c)));
            return EXIT_STATIC;
        }
    }
    EXIT_OK
}
