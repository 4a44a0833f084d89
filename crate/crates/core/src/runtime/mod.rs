//! Instrumented evaluator.
//!
//! An explicit-stack machine: evaluation never recurses on the host stack,
//! so deep object programs only ever hit the configured limits. A call in
//! plain tail position reuses the caller's frame; the reported stack depth
//! is the number of live frames.

mod compile;
mod store;

use std::fmt;
use std::rc::Rc;

pub use store::{struct_eq, Block, BlockId, Builtin, Env, FunValue, Store, Value};

use compile::{CExpr, CPat, Compiled, Ref};
use store::FunTarget;

use crate::ir::Program;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RuntimeError {
    #[error("StackLimit: more than {limit} frames")]
    StackLimit { limit: usize },
    #[error("StepLimit: more than {limit} steps")]
    StepLimit { limit: u64 },
    #[error("MatchFailure: no clause of `{function}` matches {value}")]
    MatchFailure { function: String, value: String },
    #[error("UnboundName: `{name}`")]
    UnboundName { name: String },
    #[error("UnknownEntry: no toplevel function `{name}`")]
    UnknownEntry { name: String },
    #[error("TypeError: {message}")]
    TypeError { message: String },
    #[error("ArityMismatch: `{callee}` takes {expected} arguments, got {got}")]
    ArityMismatch {
        callee: String,
        expected: usize,
        got: usize,
    },
    #[error("NonHoleOverwrite: field {index} of block #{block} is already initialized")]
    NonHoleOverwrite { block: usize, index: i64 },
    #[error("IndexOutOfRange: field {index} of block #{block} with {arity} fields")]
    IndexOutOfRange {
        block: usize,
        index: i64,
        arity: usize,
    },
    #[error("BadAddress: no block #{block}")]
    BadAddress { block: usize },
    #[error("HoleInspected: `{function}` matched on an uninitialized field")]
    HoleInspected { function: String },
    #[error("HoleEscape: result contains a hole at field path {}", render_path(.path))]
    HoleEscape { path: Vec<usize> },
}

fn render_path(path: &[usize]) -> String {
    if path.is_empty() {
        return "(root)".to_string();
    }
    path.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

impl RuntimeError {
    pub fn name(&self) -> &'static str {
        match self {
            RuntimeError::StackLimit { .. } => "StackLimit",
            RuntimeError::StepLimit { .. } => "StepLimit",
            RuntimeError::MatchFailure { .. } => "MatchFailure",
            RuntimeError::UnboundName { .. } => "UnboundName",
            RuntimeError::UnknownEntry { .. } => "UnknownEntry",
            RuntimeError::TypeError { .. } => "TypeError",
            RuntimeError::ArityMismatch { .. } => "ArityMismatch",
            RuntimeError::NonHoleOverwrite { .. } => "NonHoleOverwrite",
            RuntimeError::IndexOutOfRange { .. } => "IndexOutOfRange",
            RuntimeError::BadAddress { .. } => "BadAddress",
            RuntimeError::HoleInspected { .. } => "HoleInspected",
            RuntimeError::HoleEscape { .. } => "HoleEscape",
        }
    }

    /// Errors that signal a broken destination discipline.
    pub fn is_hole_violation(&self) -> bool {
        matches!(
            self,
            RuntimeError::HoleEscape { .. }
                | RuntimeError::NonHoleOverwrite { .. }
                | RuntimeError::HoleInspected { .. }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_stack: usize,
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_stack: 1_000_000,
            max_steps: 1_000_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metrics {
    pub max_stack_depth: usize,
    pub allocations: u64,
    pub dest_writes: u64,
    pub steps: u64,
    pub effect_trace: Vec<String>,
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max_stack_depth={}", self.max_stack_depth)?;
        writeln!(f, "allocations={}", self.allocations)?;
        writeln!(f, "dest_writes={}", self.dest_writes)?;
        writeln!(f, "steps={}", self.steps)?;
        write!(f, "effect_trace=[{}]", self.effect_trace.join("; "))
    }
}

/// A loaded program with its heap and counters.
pub struct Runtime {
    code: Compiled,
    pub store: Store,
    pub metrics: Metrics,
    pub limits: Limits,
    true_block: Value,
    false_block: Value,
}

impl Runtime {
    pub fn new(p: &Program, limits: Limits) -> Result<Runtime, RuntimeError> {
        let code = Compiled::new(p)?;
        let mut store = Store::new();
        let true_block = store.alloc_named("True", vec![]);
        let false_block = store.alloc_named("False", vec![]);
        Ok(Runtime {
            code,
            store,
            metrics: Metrics::default(),
            limits,
            true_block,
            false_block,
        })
    }

    /// A toplevel function or builtin as a value.
    pub fn function(&self, name: &str) -> Option<Value> {
        if let Some(&g) = self.code.globals.get(name) {
            return Some(Value::Fun(FunValue {
                name: self.code.funs[g].name.clone(),
                target: FunTarget::Global(g),
            }));
        }
        Builtin::from_name(name).map(builtin_value)
    }

    pub fn has_function(&self, name: &str) -> bool {
        self.code.globals.contains_key(name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.code
            .globals
            .get(name)
            .map(|&g| self.code.funs[g].params.len())
    }

    /// Call a toplevel function; the result must be hole-free.
    pub fn call(&mut self, entry: &str, args: Vec<Value>) -> Result<Value, RuntimeError> {
        let v = self.call_partial(entry, args)?;
        self.store.assert_no_holes(&v)?;
        Ok(v)
    }

    /// Call a toplevel function without checking the result for holes.
    pub fn call_partial(&mut self, entry: &str, args: Vec<Value>) -> Result<Value, RuntimeError> {
        let f = match self.code.globals.get(entry) {
            Some(_) => self.function(entry).expect("global exists"),
            None => {
                return Err(RuntimeError::UnknownEntry {
                    name: entry.to_string(),
                })
            }
        };
        let Value::Fun(f) = f else { unreachable!() };
        self.machine().run(Control::Apply(f, args), Vec::new())
    }

    pub fn eval_main(&mut self) -> Result<Value, RuntimeError> {
        let mut m = self.machine();
        let main = m.code.main.as_ref().expect("compiled main");
        m.depth = 1;
        m.metrics.max_stack_depth = m.metrics.max_stack_depth.max(1);
        let v = m.run(
            Control::Eval(main, Env::default()),
            vec![Kont::Frame { saved: None }],
        )?;
        self.store.assert_no_holes(&v)?;
        Ok(v)
    }

    pub fn render(&self, v: &Value) -> String {
        self.store.render(v)
    }

    fn machine(&mut self) -> Machine<'_> {
        Machine {
            code: &self.code,
            store: &mut self.store,
            metrics: &mut self.metrics,
            limits: self.limits,
            true_block: &self.true_block,
            false_block: &self.false_block,
            depth: 0,
            current: None,
        }
    }
}

/// Evaluate `entry` on `args` (already loaded into `rt`'s store).
pub fn eval(rt: &mut Runtime, entry: &str, args: Vec<Value>) -> Result<Value, RuntimeError> {
    rt.call(entry, args)
}

fn builtin_value(b: Builtin) -> Value {
    Value::Fun(FunValue {
        name: Rc::from(b.name()),
        target: FunTarget::Builtin(b),
    })
}

enum Control<'p> {
    Eval(&'p CExpr, Env),
    Apply(FunValue, Vec<Value>),
    Return(Value),
}

enum Kont<'p> {
    /// A function activation; remembers the caller for error messages.
    Frame {
        saved: Option<usize>,
    },
    CallArgs {
        f: FunValue,
        done: Vec<Value>,
        rest: &'p [CExpr],
        env: Env,
    },
    ConstrArgs {
        tag: &'p Rc<str>,
        done: Vec<Value>,
        rest: &'p [CExpr],
        env: Env,
    },
    Let {
        binder: compile::Sym,
        body: &'p CExpr,
        env: Env,
    },
    Seq {
        second: &'p CExpr,
        env: Env,
    },
    Match {
        clauses: &'p [(CPat, CExpr)],
        env: Env,
    },
    SetRefIndex {
        index: &'p CExpr,
        value: &'p CExpr,
        env: Env,
    },
    SetRefValue {
        block: Value,
        value: &'p CExpr,
        env: Env,
    },
    SetRefWrite {
        block: Value,
        index: Value,
    },
}

struct Machine<'p> {
    code: &'p Compiled,
    store: &'p mut Store,
    metrics: &'p mut Metrics,
    limits: Limits,
    true_block: &'p Value,
    false_block: &'p Value,
    depth: usize,
    current: Option<usize>,
}

impl<'p> Machine<'p> {
    fn current_name(&self) -> String {
        match self.current {
            Some(f) => self.code.funs[f].name.to_string(),
            None => "main".to_string(),
        }
    }

    fn lookup(&self, r: &Ref, env: &Env) -> Result<Value, RuntimeError> {
        match r {
            Ref::Local(s) => env
                .lookup(*s)
                .cloned()
                .ok_or_else(|| RuntimeError::UnboundName {
                    name: self.code.syms.name(*s).to_string(),
                }),
            Ref::Global(g) => Ok(Value::Fun(FunValue {
                name: self.code.funs[*g].name.clone(),
                target: FunTarget::Global(*g),
            })),
            Ref::Builtin(b) => Ok(builtin_value(*b)),
        }
    }

    fn alloc(&mut self, tag: &Rc<str>, fields: Vec<Value>) -> Value {
        self.metrics.allocations += 1;
        Value::Block(self.store.alloc(tag.clone(), fields))
    }

    /// Bind the members of local group `g` as closures over `env`.
    fn bind_group(&self, g: usize, env: &Env, closure_env: &Env) -> Env {
        let mut out = env.clone();
        for &f in &self.code.groups[g] {
            let fun = &self.code.funs[f];
            out = out.bind(
                fun.sym,
                Value::Fun(FunValue {
                    name: fun.name.clone(),
                    target: FunTarget::Local {
                        fun: f,
                        env: closure_env.clone(),
                    },
                }),
            );
        }
        out
    }

    fn run(mut self, start: Control<'p>, mut kont: Vec<Kont<'p>>) -> Result<Value, RuntimeError> {
        let mut control = start;
        loop {
            self.metrics.steps += 1;
            if self.metrics.steps > self.limits.max_steps {
                return Err(RuntimeError::StepLimit {
                    limit: self.limits.max_steps,
                });
            }
            control = match control {
                Control::Eval(e, env) => self.eval(e, env, &mut kont)?,
                Control::Return(v) => match kont.pop() {
                    None => return Ok(v),
                    Some(k) => self.resume(k, v, &mut kont)?,
                },
                Control::Apply(f, args) => self.apply(f, args, &mut kont)?,
            };
        }
    }

    fn eval(
        &mut self,
        e: &'p CExpr,
        env: Env,
        kont: &mut Vec<Kont<'p>>,
    ) -> Result<Control<'p>, RuntimeError> {
        Ok(match e {
            CExpr::Ref(r) => Control::Return(self.lookup(r, &env)?),
            CExpr::Int(n) => Control::Return(Value::Int(*n)),
            CExpr::Hole => Control::Return(Value::Hole),
            CExpr::Call { callee, args } => {
                let f = match self.lookup(callee, &env)? {
                    Value::Fun(f) => f,
                    other => {
                        return Err(RuntimeError::TypeError {
                            message: format!("cannot call {}", self.store.render(&other)),
                        })
                    }
                };
                match args.split_first() {
                    None => Control::Apply(f, Vec::new()),
                    Some((first, rest)) => {
                        kont.push(Kont::CallArgs {
                            f,
                            done: Vec::with_capacity(args.len()),
                            rest,
                            env: env.clone(),
                        });
                        Control::Eval(first, env)
                    }
                }
            }
            CExpr::Constr { tag, args } => match args.split_first() {
                None => Control::Return(self.alloc(tag, Vec::new())),
                Some((first, rest)) => {
                    kont.push(Kont::ConstrArgs {
                        tag,
                        done: Vec::with_capacity(args.len()),
                        rest,
                        env: env.clone(),
                    });
                    Control::Eval(first, env)
                }
            },
            CExpr::Let {
                binder,
                bound,
                body,
            } => {
                kont.push(Kont::Let {
                    binder: *binder,
                    body,
                    env: env.clone(),
                });
                Control::Eval(bound, env)
            }
            CExpr::Seq(a, b) => {
                kont.push(Kont::Seq {
                    second: b,
                    env: env.clone(),
                });
                Control::Eval(a, env)
            }
            CExpr::Match { scrutinee, clauses } => {
                kont.push(Kont::Match {
                    clauses,
                    env: env.clone(),
                });
                Control::Eval(scrutinee, env)
            }
            CExpr::SetRef { dest, index, value } => {
                kont.push(Kont::SetRefIndex {
                    index,
                    value,
                    env: env.clone(),
                });
                Control::Eval(dest, env)
            }
            CExpr::Letrec { group, body } => {
                let inner = self.bind_group(*group, &env, &env);
                Control::Eval(body, inner)
            }
        })
    }

    fn resume(
        &mut self,
        k: Kont<'p>,
        v: Value,
        kont: &mut Vec<Kont<'p>>,
    ) -> Result<Control<'p>, RuntimeError> {
        Ok(match k {
            Kont::Frame { saved } => {
                self.depth -= 1;
                self.current = saved;
                Control::Return(v)
            }
            Kont::CallArgs {
                f,
                mut done,
                rest,
                env,
            } => {
                done.push(v);
                match rest.split_first() {
                    None => Control::Apply(f, done),
                    Some((next, rest)) => {
                        kont.push(Kont::CallArgs {
                            f,
                            done,
                            rest,
                            env: env.clone(),
                        });
                        Control::Eval(next, env)
                    }
                }
            }
            Kont::ConstrArgs {
                tag,
                mut done,
                rest,
                env,
            } => {
                done.push(v);
                match rest.split_first() {
                    None => Control::Return(self.alloc(tag, done)),
                    Some((next, rest)) => {
                        kont.push(Kont::ConstrArgs {
                            tag,
                            done,
                            rest,
                            env: env.clone(),
                        });
                        Control::Eval(next, env)
                    }
                }
            }
            Kont::Let { binder, body, env } => Control::Eval(body, env.bind(binder, v)),
            Kont::Seq { second, env } => Control::Eval(second, env),
            Kont::Match { clauses, env } => {
                for (pat, body) in clauses {
                    if let Some(env) = self.matches(pat, &v, &env)? {
                        return Ok(Control::Eval(body, env));
                    }
                }
                return Err(RuntimeError::MatchFailure {
                    function: self.current_name(),
                    value: self.store.render(&v),
                });
            }
            Kont::SetRefIndex { index, value, env } => {
                kont.push(Kont::SetRefValue {
                    block: v,
                    value,
                    env: env.clone(),
                });
                Control::Eval(index, env)
            }
            Kont::SetRefValue { block, value, env } => {
                kont.push(Kont::SetRefWrite { block, index: v });
                Control::Eval(value, env)
            }
            Kont::SetRefWrite { block, index } => {
                let (Some(b), Some(i)) = (block.as_block(), index.as_int()) else {
                    return Err(RuntimeError::TypeError {
                        message: format!(
                            "setref needs a block and an integer index, got {} and {}",
                            self.store.render(&block),
                            self.store.render(&index)
                        ),
                    });
                };
                self.store.set_field(b, i, v)?;
                self.metrics.dest_writes += 1;
                Control::Return(Value::Int(0))
            }
        })
    }

    fn matches(&self, pat: &CPat, v: &Value, env: &Env) -> Result<Option<Env>, RuntimeError> {
        let mut env = env.clone();
        let mut work = vec![(pat, v.clone())];
        while let Some((p, v)) = work.pop() {
            match p {
                CPat::Var(s) => env = env.bind(*s, v),
                CPat::Wild => {}
                CPat::Int(n) => match v {
                    Value::Int(m) if m == *n => {}
                    Value::Hole => {
                        return Err(RuntimeError::HoleInspected {
                            function: self.current_name(),
                        })
                    }
                    _ => return Ok(None),
                },
                CPat::Constr(tag, subs) => match v {
                    Value::Block(b) => {
                        let block = self.store.get(b);
                        if block.tag != *tag || block.fields.len() != subs.len() {
                            return Ok(None);
                        }
                        // Reverse so that binders are introduced left to right.
                        for (sp, f) in subs.iter().zip(&block.fields).rev() {
                            work.push((sp, f.clone()));
                        }
                    }
                    Value::Hole => {
                        return Err(RuntimeError::HoleInspected {
                            function: self.current_name(),
                        })
                    }
                    _ => return Ok(None),
                },
            }
        }
        Ok(Some(env))
    }

    fn apply(
        &mut self,
        f: FunValue,
        args: Vec<Value>,
        kont: &mut Vec<Kont<'p>>,
    ) -> Result<Control<'p>, RuntimeError> {
        let (fun, env) = match f.target {
            FunTarget::Builtin(b) => return self.builtin(b, args).map(Control::Return),
            FunTarget::Global(g) => (g, Env::default()),
            FunTarget::Local { fun, env } => {
                let g = self.code.funs[fun]
                    .group
                    .expect("local functions belong to a group");
                (fun, self.bind_group(g, &env, &env))
            }
        };
        let def = &self.code.funs[fun];
        if def.params.len() != args.len() {
            return Err(RuntimeError::ArityMismatch {
                callee: def.name.to_string(),
                expected: def.params.len(),
                got: args.len(),
            });
        }
        if !matches!(kont.last(), Some(Kont::Frame { .. })) {
            self.depth += 1;
            if self.depth > self.limits.max_stack {
                return Err(RuntimeError::StackLimit {
                    limit: self.limits.max_stack,
                });
            }
            self.metrics.max_stack_depth = self.metrics.max_stack_depth.max(self.depth);
            kont.push(Kont::Frame {
                saved: self.current,
            });
        }
        self.current = Some(fun);
        let env = def
            .params
            .iter()
            .zip(args)
            .fold(env, |env, (&p, a)| env.bind(p, a));
        Ok(Control::Eval(&def.body, env))
    }

    fn builtin(&mut self, b: Builtin, args: Vec<Value>) -> Result<Value, RuntimeError> {
        if args.len() != b.arity() {
            return Err(RuntimeError::ArityMismatch {
                callee: b.name().to_string(),
                expected: b.arity(),
                got: args.len(),
            });
        }
        if b == Builtin::Print {
            let shown = self.store.render(&args[0]);
            self.metrics.effect_trace.push(shown);
            let tag = self.store.tag("Tuple");
            self.metrics.allocations += 1;
            return Ok(Value::Block(self.store.alloc(tag, Vec::new())));
        }
        let ints: Vec<i64> = args
            .iter()
            .map(|a| {
                a.as_int().ok_or_else(|| RuntimeError::TypeError {
                    message: format!(
                        "`{}` expects integers, got {}",
                        b.name(),
                        self.store.render(a)
                    ),
                })
            })
            .collect::<Result<_, _>>()?;
        let truth = |c: bool| {
            if c {
                self.true_block.clone()
            } else {
                self.false_block.clone()
            }
        };
        Ok(match b {
            Builtin::Add => Value::Int(ints[0].wrapping_add(ints[1])),
            Builtin::Sub => Value::Int(ints[0].wrapping_sub(ints[1])),
            Builtin::Add1 => Value::Int(ints[0].wrapping_add(1)),
            Builtin::Leq => truth(ints[0] <= ints[1]),
            Builtin::Eq => truth(ints[0] == ints[1]),
            Builtin::Print => unreachable!(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;
    use crate::transform::transform_program;

    const MAP: &str = "(program (letrec (fun (@ tail_mod_cons) map (f xs)
        (match xs (case (Nil) (constr Nil))
          (case (Cons x xs) (let y (call f x) (constr Cons y (call map f xs)))))))
      (main (call map add1 (constr Cons 1 (constr Cons 2 (constr Cons 3 (constr Nil)))))))";

    fn list(rt: &mut Runtime, n: i64) -> Value {
        let mut v = rt.store.alloc_named("Nil", vec![]);
        for x in (1..=n).rev() {
            v = rt.store.alloc_named("Cons", vec![Value::Int(x), v]);
        }
        v
    }

    fn run_map(p: &Program, n: i64, limits: Limits) -> (Result<Value, RuntimeError>, Metrics) {
        let mut rt = Runtime::new(p, limits).unwrap();
        let xs = list(&mut rt, n);
        let f = rt.function("add1").unwrap();
        let r = rt.call("map", vec![f, xs]);
        (r, rt.metrics.clone())
    }

    #[test]
    fn map_main() {
        let p = parse_program(MAP).unwrap();
        let mut rt = Runtime::new(&p, Limits::default()).unwrap();
        let v = rt.eval_main().unwrap();
        assert_eq!(rt.render(&v), "(Cons 2 (Cons 3 (Cons 4 Nil)))");
        let t = transform_program(&p).unwrap().program;
        let mut rt = Runtime::new(&t, Limits::default()).unwrap();
        let v = rt.eval_main().unwrap();
        assert_eq!(rt.render(&v), "(Cons 2 (Cons 3 (Cons 4 Nil)))");
    }

    #[test]
    fn transformed_map_runs_in_constant_stack() {
        let t = transform_program(&parse_program(MAP).unwrap())
            .unwrap()
            .program;
        let (_, small) = run_map(&t, 100, Limits::default());
        let (_, big) = run_map(&t, 10_000, Limits::default());
        assert_eq!(small.max_stack_depth, big.max_stack_depth);
        assert_eq!(big.allocations, 10_001);
    }

    #[test]
    fn original_map_overflows() {
        let p = parse_program(MAP).unwrap();
        let (r, m) = run_map(&p, 10_000, Limits::default());
        assert!(r.is_ok());
        assert!(m.max_stack_depth >= 10_000);
        let limits = Limits {
            max_stack: 5_000,
            ..Limits::default()
        };
        let (r, _) = run_map(&p, 10_000, limits);
        assert_eq!(r.unwrap_err(), RuntimeError::StackLimit { limit: 5_000 });
    }

    #[test]
    fn self_tail_loop_keeps_depth() {
        let p = parse_program(
            "(program (letrec (fun loop (n) (match (call eq n 0) (case (True) 0) (case (False) (call loop (call sub n 1))))))
              (main 0))",
        )
        .unwrap();
        let mut rt = Runtime::new(&p, Limits::default()).unwrap();
        assert_eq!(
            rt.call("loop", vec![Value::Int(1_000_000)])
                .unwrap()
                .as_int(),
            Some(0)
        );
        assert!(rt.metrics.max_stack_depth <= 2);
    }

    #[test]
    fn step_limit() {
        let p = parse_program("(program (letrec (fun spin (n) (call spin n))) (main 0))").unwrap();
        let limits = Limits {
            max_steps: 1_000,
            ..Limits::default()
        };
        let mut rt = Runtime::new(&p, limits).unwrap();
        assert_eq!(
            rt.call("spin", vec![Value::Int(0)]).unwrap_err(),
            RuntimeError::StepLimit { limit: 1_000 }
        );
    }

    #[test]
    fn builtins() {
        let p = parse_program("(program (main (seq (call print 7) (tuple (call add 2 3) (call leq 3 3) (call sub 1 2)))))").unwrap();
        let mut rt = Runtime::new(&p, Limits::default()).unwrap();
        let v = rt.eval_main().unwrap();
        assert_eq!(rt.render(&v), "(Tuple 5 True -1)");
        assert_eq!(rt.metrics.effect_trace, vec!["7"]);
        // One for the printed unit, one for the tuple.
        assert_eq!(rt.metrics.allocations, 2);
    }

    #[test]
    fn type_errors() {
        let p = parse_program("(program (main (call add 1 (constr Nil))))").unwrap();
        let mut rt = Runtime::new(&p, Limits::default()).unwrap();
        assert_eq!(rt.eval_main().unwrap_err().name(), "TypeError");
    }

    #[test]
    fn escaping_hole_is_reported() {
        let p = parse_program("(program (main (constr Cons 1 (hole))))").unwrap();
        let mut rt = Runtime::new(&p, Limits::default()).unwrap();
        assert_eq!(
            rt.eval_main().unwrap_err(),
            RuntimeError::HoleEscape { path: vec![2] }
        );
    }

    #[test]
    fn inspecting_a_hole_fails() {
        let p = parse_program(
            "(program (main (let d (constr Box (hole)) (match d (case (Box (Nil)) 0) (case _ 1)))))",
        )
        .unwrap();
        let mut rt = Runtime::new(&p, Limits::default()).unwrap();
        assert_eq!(rt.eval_main().unwrap_err().name(), "HoleInspected");
    }

    #[test]
    fn local_closures_capture_their_environment() {
        let p = parse_program(
            "(program (letrec (fun addall (k xs)
                (letrec (fun go (ys) (match ys (case (Nil) (constr Nil)) (case (Cons y r) (constr Cons (call add k y) (call go r)))))
                  (call go xs))))
              (main (call addall 10 (constr Cons 1 (constr Cons 2 (constr Nil))))))",
        )
        .unwrap();
        let mut rt = Runtime::new(&p, Limits::default()).unwrap();
        let v = rt.eval_main().unwrap();
        assert_eq!(rt.render(&v), "(Cons 11 (Cons 12 Nil))");
    }

    #[test]
    fn metrics_render_as_five_lines() {
        let m = Metrics {
            max_stack_depth: 3,
            allocations: 4,
            dest_writes: 0,
            steps: 10,
            effect_trace: vec!["1".into(), "2".into()],
        };
        assert_eq!(
            m.to_string(),
            "max_stack_depth=3\nallocations=4\ndest_writes=0\nsteps=10\neffect_trace=[1; 2]"
        );
    }
}
