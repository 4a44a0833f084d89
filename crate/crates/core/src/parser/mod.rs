//! Concrete s-expression syntax for programs.
//!
//! ```text
//! program  := ( "program" letrec* main )
//! letrec   := ( "letrec" fundef+ )
//! fundef   := ( "fun" attrs? SYM ( SYM+ ) expr )
//! attrs    := ( "@" ("tail_mod_cons")* )
//! main     := ( "main" expr )
//! expr     := SYM | INT | ( "int" INT ) | ( "var" SYM )
//!           | ( "call" cattrs? SYM expr* )
//!           | ( "let" SYM expr expr ) | ( "seq" expr expr )
//!           | ( "constr" SYM expr* )
//!           | ( "match" expr clause+ )
//!           | ( "setref" expr expr expr ) | ( "hole" )
//!           | ( "letrec" fundef+ expr )
//!           | ( "if" expr expr expr )
//!           | ( "tuple" expr* )
//! cattrs   := ( "@" ("tailcall")* )
//! clause   := ( "case" pat expr )
//! pat      := SYM | "_" | INT | ( SYM pat* )
//! ```
//!
//! `if` and `tuple` are sugar: `if` becomes a match on `True`/`False`,
//! `tuple` a `Tuple` constructor.

mod print;
pub mod sexp;

use std::collections::HashMap;
use std::fmt;

use crate::ir::{CallAttrs, Clause, Expr, FunAttrs, FunDef, NodePath, Pattern, Program};
use sexp::{Sexp, SexpKind};

pub use print::{print_expr, print_program};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub byte_start: usize,
    pub byte_end: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(span: SourceSpan, message: impl Into<String>, expected: Vec<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
            expected,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}",
            self.span.line, self.span.column, self.message
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

/// Source locations of parsed expressions, keyed by tree path.
#[derive(Clone, Debug, Default)]
pub struct SpanMap {
    spans: HashMap<NodePath, SourceSpan>,
}

impl SpanMap {
    /// Span of the node at `path`, or of its closest recorded ancestor.
    pub fn lookup(&self, path: &NodePath) -> Option<SourceSpan> {
        let mut p = path.clone();
        loop {
            if let Some(s) = self.spans.get(&p) {
                return Some(*s);
            }
            p.steps.pop()?;
        }
    }

    fn record(&mut self, path: &NodePath, span: SourceSpan) {
        self.spans.insert(path.clone(), span);
    }
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    parse_program_with_spans(text).map(|(p, _)| p)
}

pub fn parse_program_with_spans(text: &str) -> Result<(Program, SpanMap), ParseError> {
    let forms = sexp::read_all(text)?;
    let end = SourceSpan {
        byte_start: text.len(),
        byte_end: text.len(),
        ..Default::default()
    };
    let Some(top) = forms.first() else {
        return Err(ParseError::new(
            end,
            "empty input",
            vec!["`(program ...)`".into()],
        ));
    };
    if let Some(extra) = forms.get(1) {
        return Err(ParseError::new(
            extra.span,
            "trailing input after program",
            vec!["end of input".into()],
        ));
    }
    let mut cx = Cx {
        spans: SpanMap::default(),
    };
    let program = cx.program(top)?;
    Ok((program, cx.spans))
}

/// Parse a single expression (used for value literals and tests).
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let forms = sexp::read_all(text)?;
    match forms.as_slice() {
        [one] => Cx {
            spans: SpanMap::default(),
        }
        .expr(one, &NodePath::main()),
        _ => Err(ParseError::new(
            SourceSpan::default(),
            "expected exactly one expression",
            vec![],
        )),
    }
}

const EXPR_FORMS: &[&str] = &[
    "int", "var", "call", "let", "seq", "constr", "match", "setref", "hole", "letrec", "if",
    "tuple",
];

fn err(s: &Sexp, message: impl Into<String>, expected: &[&str]) -> ParseError {
    ParseError::new(
        s.span,
        message,
        expected.iter().map(|e| e.to_string()).collect(),
    )
}

/// Error for a form that ended early: points just before its closing paren.
fn missing(form: &Sexp, what: &str) -> ParseError {
    let mut span = form.span;
    span.byte_start = span.byte_end.saturating_sub(1);
    ParseError::new(span, format!("missing {what}"), vec![what.to_string()])
}

struct Cx {
    spans: SpanMap,
}

impl Cx {
    fn program(&mut self, s: &Sexp) -> Result<Program, ParseError> {
        let items = match s.as_list() {
            Some(items) if s.head() == Some("program") => items,
            _ => return Err(err(s, "expected a program", &["`(program ...)`"])),
        };
        let mut groups = Vec::new();
        let mut main = None;
        for form in &items[1..] {
            match form.head() {
                Some("letrec") if main.is_none() => {
                    let g = groups.len();
                    let list = form.as_list().expect("head implies list");
                    if list.len() < 2 {
                        return Err(missing(form, "function definition"));
                    }
                    let mut group = Vec::new();
                    for (i, f) in list[1..].iter().enumerate() {
                        group.push(self.fundef(f, &NodePath::fun(g, i))?);
                    }
                    groups.push(group);
                }
                Some("main") if main.is_none() => {
                    let list = form.as_list().expect("head implies list");
                    match list {
                        [_, e] => main = Some(self.expr(e, &NodePath::main())?),
                        [_] => return Err(missing(form, "main expression")),
                        [_, _, extra, ..] => {
                            return Err(err(extra, "extra form in `main`", &["`)`"]))
                        }
                        [] => unreachable!(),
                    }
                }
                _ => {
                    let expected: &[&str] = if main.is_none() {
                        &["`(letrec ...)`", "`(main ...)`"]
                    } else {
                        &["`)`"]
                    };
                    return Err(err(
                        form,
                        format!("unexpected {}", form.describe()),
                        expected,
                    ));
                }
            }
        }
        let main = main.ok_or_else(|| missing(s, "`(main ...)`"))?;
        Ok(Program { groups, main })
    }

    fn fundef(&mut self, s: &Sexp, path: &NodePath) -> Result<FunDef, ParseError> {
        let items = match s.as_list() {
            Some(items) if s.head() == Some("fun") => items,
            _ => return Err(err(s, "expected a function definition", &["`(fun ...)`"])),
        };
        let mut rest = &items[1..];
        let mut attrs = FunAttrs::default();
        if let Some(first) = rest.first() {
            if first.head() == Some("@") {
                for a in &first.as_list().expect("head implies list")[1..] {
                    match a.as_sym() {
                        Some("tail_mod_cons") => attrs.tail_mod_cons = true,
                        _ => {
                            return Err(err(
                                a,
                                format!("unknown function attribute {}", a.describe()),
                                &["`tail_mod_cons`"],
                            ))
                        }
                    }
                }
                rest = &rest[1..];
            }
        }
        let [name, params, body] = rest else {
            return match rest.get(3) {
                Some(extra) => Err(err(extra, "extra form in function definition", &["`)`"])),
                None => Err(missing(s, "function name, parameter list and body")),
            };
        };
        let name = name
            .as_sym()
            .ok_or_else(|| err(name, "expected a function name", &["symbol"]))?;
        let params = params
            .as_list()
            .ok_or_else(|| err(params, "expected a parameter list", &["`(x ...)`"]))?
            .iter()
            .map(|p| {
                p.as_sym()
                    .map(String::from)
                    .ok_or_else(|| err(p, "expected a parameter name", &["symbol"]))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if params.is_empty() {
            return Err(err(
                &rest[1],
                "functions take at least one parameter",
                &["symbol"],
            ));
        }
        let body = self.expr(body, path)?;
        Ok(FunDef {
            name: name.to_string(),
            params,
            body,
            attrs,
        })
    }

    fn expr(&mut self, s: &Sexp, path: &NodePath) -> Result<Expr, ParseError> {
        self.spans.record(path, s.span);
        let items = match &s.kind {
            SexpKind::Sym(x) => return Ok(Expr::Var(x.clone())),
            SexpKind::Int(n) => return Ok(Expr::Int(*n)),
            SexpKind::List(items) => items,
        };
        let Some(head) = s.head() else {
            return Err(err(s, "expected an expression form", EXPR_FORMS));
        };
        let args = &items[1..];
        let arity = |n: usize| -> Result<(), ParseError> {
            match args.len().cmp(&n) {
                std::cmp::Ordering::Equal => Ok(()),
                std::cmp::Ordering::Less => Err(missing(s, "operand")),
                std::cmp::Ordering::Greater => Err(err(
                    &args[n],
                    format!("extra operand to `{head}`"),
                    &["`)`"],
                )),
            }
        };
        match head {
            "int" => {
                arity(1)?;
                match args[0].kind {
                    SexpKind::Int(n) => Ok(Expr::Int(n)),
                    _ => Err(err(&args[0], "expected an integer", &["integer"])),
                }
            }
            "var" => {
                arity(1)?;
                let x = args[0]
                    .as_sym()
                    .ok_or_else(|| err(&args[0], "expected a variable name", &["symbol"]))?;
                Ok(Expr::Var(x.to_string()))
            }
            "hole" => {
                arity(0)?;
                Ok(Expr::Hole)
            }
            "call" => {
                let mut rest = args;
                let mut attrs = CallAttrs::default();
                if let Some(first) = rest.first() {
                    if first.head() == Some("@") {
                        for a in &first.as_list().expect("head implies list")[1..] {
                            match a.as_sym() {
                                Some("tailcall") => attrs.tailcall = true,
                                _ => {
                                    return Err(err(
                                        a,
                                        format!("unknown call attribute {}", a.describe()),
                                        &["`tailcall`"],
                                    ))
                                }
                            }
                        }
                        rest = &rest[1..];
                    }
                }
                let Some(callee) = rest.first() else {
                    return Err(missing(s, "callee"));
                };
                let callee = callee
                    .as_sym()
                    .ok_or_else(|| err(callee, "expected a callee name", &["symbol"]))?;
                let args = self.exprs(&rest[1..], path, 0)?;
                Ok(Expr::Call {
                    callee: callee.to_string(),
                    args,
                    attrs,
                })
            }
            "let" => {
                arity(3)?;
                let binder = args[0]
                    .as_sym()
                    .ok_or_else(|| err(&args[0], "expected a binder name", &["symbol"]))?;
                let bound = self.expr(&args[1], &path.child(0))?;
                let body = self.expr(&args[2], &path.child(1))?;
                Ok(Expr::let_(binder, bound, body))
            }
            "seq" => {
                arity(2)?;
                let a = self.expr(&args[0], &path.child(0))?;
                let b = self.expr(&args[1], &path.child(1))?;
                Ok(Expr::seq(a, b))
            }
            "constr" | "tuple" => {
                let (tag, fields) = if head == "tuple" {
                    ("Tuple", args)
                } else {
                    let Some(tag) = args.first() else {
                        return Err(missing(s, "constructor tag"));
                    };
                    let tag = tag
                        .as_sym()
                        .ok_or_else(|| err(tag, "expected a constructor tag", &["symbol"]))?;
                    (tag, &args[1..])
                };
                let fields = self.exprs(fields, path, 0)?;
                Ok(Expr::constr(tag, fields))
            }
            "match" => {
                if args.len() < 2 {
                    return Err(missing(s, "`(case ...)` clause"));
                }
                let scrutinee = self.expr(&args[0], &path.child(0))?;
                let mut clauses = Vec::new();
                for (i, c) in args[1..].iter().enumerate() {
                    clauses.push(self.clause(c, &path.child(i + 1))?);
                }
                Ok(Expr::Match {
                    scrutinee: Box::new(scrutinee),
                    clauses,
                })
            }
            "if" => {
                arity(3)?;
                let cond = self.expr(&args[0], &path.child(0))?;
                let then = self.expr(&args[1], &path.child(1))?;
                let els = self.expr(&args[2], &path.child(2))?;
                Ok(Expr::Match {
                    scrutinee: Box::new(cond),
                    clauses: vec![
                        Clause {
                            pattern: Pattern::Constr("True".into(), vec![]),
                            body: then,
                        },
                        Clause {
                            pattern: Pattern::Constr("False".into(), vec![]),
                            body: els,
                        },
                    ],
                })
            }
            "setref" => {
                arity(3)?;
                let d = self.expr(&args[0], &path.child(0))?;
                let i = self.expr(&args[1], &path.child(1))?;
                let v = self.expr(&args[2], &path.child(2))?;
                Ok(Expr::setref(d, i, v))
            }
            "letrec" => {
                if args.len() < 2 {
                    return Err(missing(s, "function definition and body"));
                }
                let (body, funs) = args.split_last().expect("len checked");
                let mut group = Vec::new();
                for (i, f) in funs.iter().enumerate() {
                    group.push(self.fundef(f, &path.child(i))?);
                }
                let body = self.expr(body, &path.child(group.len()))?;
                Ok(Expr::Letrec {
                    group,
                    body: Box::new(body),
                })
            }
            other => Err(err(
                &items[0],
                format!("unknown expression form `{other}`"),
                EXPR_FORMS,
            )),
        }
    }

    fn exprs(
        &mut self,
        items: &[Sexp],
        path: &NodePath,
        offset: usize,
    ) -> Result<Vec<Expr>, ParseError> {
        items
            .iter()
            .enumerate()
            .map(|(i, e)| self.expr(e, &path.child(offset + i)))
            .collect()
    }

    fn clause(&mut self, s: &Sexp, path: &NodePath) -> Result<Clause, ParseError> {
        let items = match s.as_list() {
            Some(items) if s.head() == Some("case") => items,
            _ => return Err(err(s, "expected a clause", &["`(case pat expr)`"])),
        };
        let [_, pat, body] = items else {
            return Err(missing(s, "pattern and clause body"));
        };
        let pattern = pattern(pat)?;
        let body = self.expr(body, path)?;
        Ok(Clause { pattern, body })
    }
}

fn pattern(s: &Sexp) -> Result<Pattern, ParseError> {
    match &s.kind {
        SexpKind::Sym(x) if x == "_" => Ok(Pattern::Wild),
        SexpKind::Sym(x) => Ok(Pattern::Var(x.clone())),
        SexpKind::Int(n) => Ok(Pattern::Int(*n)),
        SexpKind::List(items) => {
            let Some(tag) = items.first().and_then(Sexp::as_sym) else {
                return Err(err(
                    s,
                    "expected a constructor pattern",
                    &["`(Tag pat ...)`"],
                ));
            };
            let subs = items[1..].iter().map(pattern).collect::<Result<_, _>>()?;
            Ok(Pattern::Constr(tag.to_string(), subs))
        }
    }
}
