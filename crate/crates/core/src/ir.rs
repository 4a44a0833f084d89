//! Abstract syntax of the source and target language.
//!
//! The language is first order: functions are only introduced by `letrec`
//! groups (at toplevel, or as a local expression wrapper), and are called by
//! name. Constructor fields are numbered from 1, so `setref d 2 v` writes the
//! second argument of the block `d`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::diagnostic::{Code, Diagnostic};

pub type Name = String;

/// Names of the builtin operations. Builtins are never TMC candidates.
pub const BUILTINS: &[&str] = &["add", "sub", "leq", "eq", "print", "add1"];

pub fn is_builtin(name: &str) -> bool {
    BUILTINS.contains(&name)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CallAttrs {
    /// `(@ tailcall)`: the user asks for this call to become a tail call.
    pub tailcall: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FunAttrs {
    /// `(@ tail_mod_cons)`: generate a destination-passing companion.
    pub tail_mod_cons: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(Name),
    Int(i64),
    Call {
        callee: Name,
        args: Vec<Expr>,
        attrs: CallAttrs,
    },
    Let {
        binder: Name,
        bound: Box<Expr>,
        body: Box<Expr>,
    },
    Seq(Box<Expr>, Box<Expr>),
    Constr {
        tag: Name,
        args: Vec<Expr>,
    },
    Match {
        scrutinee: Box<Expr>,
        clauses: Vec<Clause>,
    },
    /// In-place initializing write of field `index` of block `dest`.
    SetRef {
        dest: Box<Expr>,
        index: Box<Expr>,
        value: Box<Expr>,
    },
    /// Placeholder for a not-yet-initialized constructor field.
    Hole,
    /// Local recursive group; the functions are in scope in their own bodies
    /// and in `body`.
    Letrec {
        group: Vec<FunDef>,
        body: Box<Expr>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub pattern: Pattern,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Var(Name),
    Wild,
    Constr(Name, Vec<Pattern>),
    Int(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunDef {
    pub name: Name,
    pub params: Vec<Name>,
    pub body: Expr,
    pub attrs: FunAttrs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub groups: Vec<Vec<FunDef>>,
    pub main: Expr,
}

// Smart constructors, mostly used by the transformation and by tests.
impl Expr {
    pub fn var(name: impl Into<Name>) -> Expr {
        Expr::Var(name.into())
    }

    pub fn call(callee: impl Into<Name>, args: Vec<Expr>) -> Expr {
        Expr::Call {
            callee: callee.into(),
            args,
            attrs: CallAttrs::default(),
        }
    }

    pub fn constr(tag: impl Into<Name>, args: Vec<Expr>) -> Expr {
        Expr::Constr {
            tag: tag.into(),
            args,
        }
    }

    pub fn let_(binder: impl Into<Name>, bound: Expr, body: Expr) -> Expr {
        Expr::Let {
            binder: binder.into(),
            bound: Box::new(bound),
            body: Box::new(body),
        }
    }

    pub fn seq(first: Expr, second: Expr) -> Expr {
        Expr::Seq(Box::new(first), Box::new(second))
    }

    pub fn setref(dest: Expr, index: Expr, value: Expr) -> Expr {
        Expr::SetRef {
            dest: Box::new(dest),
            index: Box::new(index),
            value: Box::new(value),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Expr::Var(_) | Expr::Int(_))
    }

    /// Immediate subexpressions in child-index order (see [`NodePath`]).
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Var(_) | Expr::Int(_) | Expr::Hole => Vec::new(),
            Expr::Call { args, .. } | Expr::Constr { args, .. } => args.iter().collect(),
            Expr::Let { bound, body, .. } => vec![bound, body],
            Expr::Seq(a, b) => vec![a, b],
            Expr::Match { scrutinee, clauses } => std::iter::once(&**scrutinee)
                .chain(clauses.iter().map(|c| &c.body))
                .collect(),
            Expr::SetRef { dest, index, value } => vec![dest, index, value],
            Expr::Letrec { group, body } => group
                .iter()
                .map(|f| &f.body)
                .chain(std::iter::once(&**body))
                .collect(),
        }
    }

    pub fn child(&self, i: usize) -> Option<&Expr> {
        self.children().get(i).copied()
    }
}

impl Pattern {
    /// Variables bound by the pattern, left to right, duplicates included.
    pub fn binders(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Pattern::Var(x) => out.push(x),
            Pattern::Constr(_, subs) => subs.iter().for_each(|p| p.collect_binders(out)),
            Pattern::Wild | Pattern::Int(_) => {}
        }
    }
}

impl Program {
    pub fn functions(&self) -> impl Iterator<Item = &FunDef> {
        self.groups.iter().flatten()
    }

    pub fn function(&self, name: &str) -> Option<&FunDef> {
        self.functions().find(|f| f.name == name)
    }

    /// Every identifier occurring anywhere in the program: function names,
    /// parameters, binders and variables.
    pub fn identifiers(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in self.functions() {
            fundef_identifiers(f, &mut out);
        }
        expr_identifiers(&self.main, &mut out);
        out
    }

    /// Resolve a path to the expression it denotes.
    pub fn at(&self, path: &NodePath) -> Option<&Expr> {
        let mut e = match path.root {
            PathRoot::Main => &self.main,
            PathRoot::Fun { group, index } => &self.groups.get(group)?.get(index)?.body,
        };
        for &step in &path.steps {
            e = e.child(step)?;
        }
        Some(e)
    }
}

fn fundef_identifiers(f: &FunDef, out: &mut BTreeSet<String>) {
    out.insert(f.name.clone());
    out.extend(f.params.iter().cloned());
    expr_identifiers(&f.body, out);
}

fn expr_identifiers(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Var(x) => {
            out.insert(x.clone());
        }
        Expr::Call { callee, .. } => {
            out.insert(callee.clone());
        }
        Expr::Let { binder, .. } => {
            out.insert(binder.clone());
        }
        Expr::Match { clauses, .. } => {
            for c in clauses {
                out.extend(c.pattern.binders().into_iter().map(String::from));
            }
        }
        Expr::Letrec { group, .. } => {
            for f in group {
                out.insert(f.name.clone());
                out.extend(f.params.iter().cloned());
            }
        }
        _ => {}
    }
    for c in e.children() {
        expr_identifiers(c, out);
    }
}

/// Where a path starts: the main expression or the body of a toplevel
/// function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathRoot {
    Main,
    Fun { group: usize, index: usize },
}

/// Location of a subexpression, as child indices from a root.
///
/// Child numbering: `Call`/`Constr` arguments by position; `Let` bound 0,
/// body 1; `Seq` 0, 1; `Match` scrutinee 0, clause `i` body `i + 1`;
/// `SetRef` 0, 1, 2; `Letrec` function `i` body `i`, letrec body `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath {
    pub root: PathRoot,
    pub steps: Vec<usize>,
}

impl NodePath {
    pub fn main() -> NodePath {
        NodePath {
            root: PathRoot::Main,
            steps: Vec::new(),
        }
    }

    pub fn fun(group: usize, index: usize) -> NodePath {
        NodePath {
            root: PathRoot::Fun { group, index },
            steps: Vec::new(),
        }
    }

    pub fn child(&self, i: usize) -> NodePath {
        let mut steps = self.steps.clone();
        steps.push(i);
        NodePath {
            root: self.root,
            steps,
        }
    }

    pub fn is_prefix_of(&self, other: &NodePath) -> bool {
        self.root == other.root && other.steps.starts_with(&self.steps)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root {
            PathRoot::Main => write!(f, "main")?,
            PathRoot::Fun { group, index } => write!(f, "fun{group}.{index}")?,
        }
        for s in &self.steps {
            write!(f, "/{s}")?;
        }
        Ok(())
    }
}

/// Hole classification inside a [`Decomposition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoleKind {
    /// A regular tail position.
    PlainTail,
    /// Tail position only modulo the constructors above it.
    StrictModCons,
}

/// A tail-modulo-cons context: an expression tree with holes in tail
/// positions modulo constructors. Only the constructs of the TMC context
/// grammar appear here; everything else lives inside a hole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TmcContext {
    Hole,
    Let {
        binder: Name,
        bound: Expr,
        body: Box<TmcContext>,
    },
    Seq {
        first: Expr,
        second: Box<TmcContext>,
    },
    Match {
        scrutinee: Expr,
        clauses: Vec<(Pattern, TmcContext)>,
    },
    Constr {
        tag: Name,
        before: Vec<Expr>,
        inner: Box<TmcContext>,
        after: Vec<Expr>,
    },
    Letrec {
        group: Vec<FunDef>,
        body: Box<TmcContext>,
    },
}

impl TmcContext {
    pub fn hole_count(&self) -> usize {
        match self {
            TmcContext::Hole => 1,
            TmcContext::Let { body, .. } => body.hole_count(),
            TmcContext::Seq { second, .. } => second.hole_count(),
            TmcContext::Match { clauses, .. } => clauses.iter().map(|(_, c)| c.hole_count()).sum(),
            TmcContext::Constr { inner, .. } => inner.hole_count(),
            TmcContext::Letrec { body, .. } => body.hole_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompHole {
    pub expr: Expr,
    pub kind: HoleKind,
    pub path: NodePath,
}

/// An expression split as `U[e1, ..., en]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub root: NodePath,
    pub context: TmcContext,
    pub holes: Vec<DecompHole>,
    /// Path of the argument chosen at each constructor of the context.
    pub chosen_constructor_paths: Vec<NodePath>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("context has {context} holes but {supplied} expressions were supplied")]
pub struct PlugArityError {
    pub context: usize,
    pub supplied: usize,
}

/// Fill the holes of a context, left to right.
pub fn plug_context(context: &TmcContext, holes: &[Expr]) -> Result<Expr, PlugArityError> {
    let expected = context.hole_count();
    if expected != holes.len() {
        return Err(PlugArityError {
            context: expected,
            supplied: holes.len(),
        });
    }
    let mut it = holes.iter();
    Ok(plug_rec(context, &mut it))
}

fn plug_rec<'a>(c: &TmcContext, holes: &mut impl Iterator<Item = &'a Expr>) -> Expr {
    match c {
        TmcContext::Hole => holes.next().expect("hole count checked").clone(),
        TmcContext::Let {
            binder,
            bound,
            body,
        } => Expr::let_(binder.clone(), bound.clone(), plug_rec(body, holes)),
        TmcContext::Seq { first, second } => Expr::seq(first.clone(), plug_rec(second, holes)),
        TmcContext::Match { scrutinee, clauses } => Expr::Match {
            scrutinee: Box::new(scrutinee.clone()),
            clauses: clauses
                .iter()
                .map(|(p, c)| Clause {
                    pattern: p.clone(),
                    body: plug_rec(c, holes),
                })
                .collect(),
        },
        TmcContext::Constr {
            tag,
            before,
            inner,
            after,
        } => {
            let mut args = before.clone();
            args.push(plug_rec(inner, holes));
            args.extend(after.iter().cloned());
            Expr::constr(tag.clone(), args)
        }
        TmcContext::Letrec { group, body } => Expr::Letrec {
            group: group.clone(),
            body: Box::new(plug_rec(body, holes)),
        },
    }
}

/// Plug a decomposition's own holes back into its context.
pub fn plug(d: &Decomposition) -> Result<Expr, PlugArityError> {
    let exprs: Vec<Expr> = d.holes.iter().map(|h| h.expr.clone()).collect();
    plug_context(&d.context, &exprs)
}

/// A delayed one-hole nest of constructor applications, outermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstrContext {
    pub frames: Vec<ConstrFrame>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstrFrame {
    pub tag: Name,
    pub before: Vec<Expr>,
    pub after: Vec<Expr>,
}

impl ConstrFrame {
    /// Field index of the hole, counting from 1.
    pub fn hole_index(&self) -> i64 {
        self.before.len() as i64 + 1
    }

    pub fn apply(&self, inner: Expr) -> Expr {
        let mut args = self.before.clone();
        args.push(inner);
        args.extend(self.after.iter().cloned());
        Expr::constr(self.tag.clone(), args)
    }
}

impl ConstrContext {
    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn push(&mut self, frame: ConstrFrame) {
        self.frames.push(frame);
    }

    /// `C[e]`.
    pub fn plug(&self, e: Expr) -> Expr {
        self.frames.iter().rev().fold(e, |acc, fr| fr.apply(acc))
    }

    /// Whether any delayed argument mentions `name`.
    pub fn mentions(&self, name: &str) -> bool {
        self.frames.iter().any(|fr| {
            fr.before
                .iter()
                .chain(&fr.after)
                .any(|a| matches!(a, Expr::Var(x) if x == name))
        })
    }
}

/// Check the structural invariants of a program. Returns one diagnostic per
/// violation; an empty list means the program is well formed.
pub fn well_formed(p: &Program) -> Vec<Diagnostic> {
    let mut cx = WfCx {
        diags: Vec::new(),
        toplevel: p.functions().map(|f| f.name.clone()).collect(),
    };
    let mut seen = HashSet::new();
    for (g, group) in p.groups.iter().enumerate() {
        for (i, f) in group.iter().enumerate() {
            let path = NodePath::fun(g, i);
            if !seen.insert(f.name.as_str()) {
                cx.diags.push(Diagnostic::error(
                    Code::DuplicateFunction,
                    path.clone(),
                    format!("function `{}` is defined more than once", f.name),
                ));
            }
            let mut scope = Scope::default();
            cx.fundef(f, &path, &mut scope);
        }
    }
    cx.expr(&p.main, &NodePath::main(), &mut Scope::default(), false);
    cx.diags
}

#[derive(Default)]
struct Scope {
    names: Vec<String>,
}

impl Scope {
    fn contains(&self, n: &str) -> bool {
        self.names.iter().any(|x| x == n)
    }
}

struct WfCx {
    diags: Vec<Diagnostic>,
    toplevel: HashSet<String>,
}

impl WfCx {
    fn resolves(&self, name: &str, scope: &Scope) -> bool {
        scope.contains(name) || self.toplevel.contains(name) || is_builtin(name)
    }

    fn fundef(&mut self, f: &FunDef, path: &NodePath, scope: &mut Scope) {
        let mut seen = HashSet::new();
        for p in &f.params {
            if !seen.insert(p.as_str()) {
                self.diags.push(Diagnostic::error(
                    Code::DuplicateParam,
                    path.clone(),
                    format!("parameter `{p}` of `{}` is bound twice", f.name),
                ));
            }
        }
        if f.params.is_empty() {
            self.diags.push(Diagnostic::error(
                Code::NoParams,
                path.clone(),
                format!("function `{}` has no parameters", f.name),
            ));
        }
        let mark = scope.names.len();
        scope.names.extend(f.params.iter().cloned());
        self.expr(&f.body, path, scope, false);
        scope.names.truncate(mark);
    }

    fn expr(&mut self, e: &Expr, path: &NodePath, scope: &mut Scope, constr_arg: bool) {
        match e {
            Expr::Var(x) => {
                if !self.resolves(x, scope) {
                    self.diags.push(Diagnostic::error(
                        Code::UnboundName,
                        path.clone(),
                        format!("unbound variable `{x}`"),
                    ));
                }
            }
            Expr::Int(_) => {}
            Expr::Hole => {
                if !constr_arg {
                    self.diags.push(Diagnostic::error(
                        Code::MisplacedHole,
                        path.clone(),
                        "`(hole)` may only appear as a constructor argument",
                    ));
                }
            }
            Expr::Call { callee, args, .. } => {
                if !self.resolves(callee, scope) {
                    self.diags.push(Diagnostic::error(
                        Code::UnboundName,
                        path.clone(),
                        format!("call to unknown function `{callee}`"),
                    ));
                }
                for (i, a) in args.iter().enumerate() {
                    self.expr(a, &path.child(i), scope, false);
                }
            }
            Expr::Constr { args, .. } => {
                for (i, a) in args.iter().enumerate() {
                    self.expr(a, &path.child(i), scope, true);
                }
            }
            Expr::Let {
                binder,
                bound,
                body,
            } => {
                self.expr(bound, &path.child(0), scope, false);
                scope.names.push(binder.clone());
                self.expr(body, &path.child(1), scope, false);
                scope.names.pop();
            }
            Expr::Seq(a, b) => {
                self.expr(a, &path.child(0), scope, false);
                self.expr(b, &path.child(1), scope, false);
            }
            Expr::Match { scrutinee, clauses } => {
                if clauses.is_empty() {
                    self.diags.push(Diagnostic::error(
                        Code::EmptyMatch,
                        path.clone(),
                        "match without clauses",
                    ));
                }
                self.expr(scrutinee, &path.child(0), scope, false);
                for (i, c) in clauses.iter().enumerate() {
                    let binders = c.pattern.binders();
                    let mut seen = HashSet::new();
                    for b in &binders {
                        if !seen.insert(*b) {
                            self.diags.push(Diagnostic::error(
                                Code::DuplicateBinder,
                                path.child(i + 1),
                                format!("pattern binds `{b}` twice"),
                            ));
                        }
                    }
                    let mark = scope.names.len();
                    scope.names.extend(binders.into_iter().map(String::from));
                    self.expr(&c.body, &path.child(i + 1), scope, false);
                    scope.names.truncate(mark);
                }
            }
            Expr::SetRef { dest, index, value } => {
                if let Expr::Int(n) = **index {
                    if n < 1 {
                        self.diags.push(Diagnostic::error(
                            Code::BadIndex,
                            path.child(1),
                            format!("field index {n} is below 1"),
                        ));
                    }
                }
                self.expr(dest, &path.child(0), scope, false);
                self.expr(index, &path.child(1), scope, false);
                self.expr(value, &path.child(2), scope, false);
            }
            Expr::Letrec { group, body } => {
                let mut seen = HashSet::new();
                for f in group {
                    if !seen.insert(f.name.as_str()) {
                        self.diags.push(Diagnostic::error(
                            Code::DuplicateFunction,
                            path.clone(),
                            format!("function `{}` is defined more than once", f.name),
                        ));
                    }
                }
                let mark = scope.names.len();
                scope.names.extend(group.iter().map(|f| f.name.clone()));
                for (i, f) in group.iter().enumerate() {
                    self.fundef(f, &path.child(i), scope);
                }
                self.expr(body, &path.child(group.len()), scope, false);
                scope.names.truncate(mark);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map_program() -> Program {
        // (fun map (f xs) (match xs ((Nil) Nil) ((Cons x xs) (let y (f x) (Cons y (map f xs))))))
        let body = Expr::Match {
            scrutinee: Box::new(Expr::var("xs")),
            clauses: vec![
                Clause {
                    pattern: Pattern::Constr("Nil".into(), vec![]),
                    body: Expr::constr("Nil", vec![]),
                },
                Clause {
                    pattern: Pattern::Constr(
                        "Cons".into(),
                        vec![Pattern::Var("x".into()), Pattern::Var("xs".into())],
                    ),
                    body: Expr::let_(
                        "y",
                        Expr::call("f", vec![Expr::var("x")]),
                        Expr::constr(
                            "Cons",
                            vec![
                                Expr::var("y"),
                                Expr::call("map", vec![Expr::var("f"), Expr::var("xs")]),
                            ],
                        ),
                    ),
                },
            ],
        };
        Program {
            groups: vec![vec![FunDef {
                name: "map".into(),
                params: vec!["f".into(), "xs".into()],
                body,
                attrs: FunAttrs {
                    tail_mod_cons: true,
                },
            }]],
            main: Expr::Int(0),
        }
    }

    #[test]
    fn plug_identity_context() {
        let e = plug_context(&TmcContext::Hole, &[Expr::Int(3)]).unwrap();
        assert_eq!(e, Expr::Int(3));
    }

    #[test]
    fn plug_constructor_context() {
        let ctx = TmcContext::Constr {
            tag: "Cons".into(),
            before: vec![Expr::var("y")],
            inner: Box::new(TmcContext::Hole),
            after: vec![],
        };
        let call = Expr::call("map", vec![Expr::var("f"), Expr::var("xs")]);
        let e = plug_context(&ctx, std::slice::from_ref(&call)).unwrap();
        assert_eq!(e, Expr::constr("Cons", vec![Expr::var("y"), call]));
    }

    #[test]
    fn plug_seq_context() {
        let print = Expr::call("print", vec![Expr::Int(1)]);
        let ctx = TmcContext::Seq {
            first: print.clone(),
            second: Box::new(TmcContext::Hole),
        };
        let e = plug_context(&ctx, &[Expr::var("x")]).unwrap();
        assert_eq!(e, Expr::seq(print, Expr::var("x")));
    }

    #[test]
    fn plug_arity_mismatch() {
        let err = plug_context(&TmcContext::Hole, &[]).unwrap_err();
        assert_eq!(
            err,
            PlugArityError {
                context: 1,
                supplied: 0
            }
        );
    }

    #[test]
    fn map_is_well_formed() {
        assert!(well_formed(&map_program()).is_empty());
    }

    #[test]
    fn duplicate_param_is_reported() {
        let mut p = map_program();
        p.groups[0][0].params = vec!["x".into(), "x".into()];
        p.groups[0][0].body = Expr::var("x");
        let codes: Vec<Code> = well_formed(&p).into_iter().map(|d| d.code).collect();
        assert_eq!(codes, vec![Code::DuplicateParam]);
    }

    #[test]
    fn hole_outside_constructor_is_misplaced() {
        let p = Program {
            groups: vec![],
            main: Expr::let_("x", Expr::Hole, Expr::var("x")),
        };
        let diags = well_formed(&p);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::MisplacedHole);
        assert_eq!(diags[0].path, NodePath::main().child(0));
    }

    #[test]
    fn hole_as_constructor_argument_is_fine() {
        let p = Program {
            groups: vec![],
            main: Expr::constr("Cons", vec![Expr::Int(1), Expr::Hole]),
        };
        assert!(well_formed(&p).is_empty());
    }

    #[test]
    fn unbound_names() {
        let p = Program {
            groups: vec![],
            main: Expr::call("nope", vec![Expr::var("z")]),
        };
        let codes: Vec<Code> = well_formed(&p).into_iter().map(|d| d.code).collect();
        assert_eq!(codes, vec![Code::UnboundName, Code::UnboundName]);
    }

    #[test]
    fn well_formed_is_idempotent() {
        let mut p = map_program();
        p.groups[0][0].params = vec!["f".into(), "f".into()];
        assert_eq!(well_formed(&p), well_formed(&p));
    }

    #[test]
    fn constr_context_plugs_outermost_first() {
        let mut c = ConstrContext::default();
        c.push(ConstrFrame {
            tag: "Cons".into(),
            before: vec![Expr::var("y1")],
            after: vec![],
        });
        c.push(ConstrFrame {
            tag: "Cons".into(),
            before: vec![Expr::var("y2")],
            after: vec![],
        });
        let e = c.plug(Expr::var("d"));
        assert_eq!(
            e,
            Expr::constr(
                "Cons",
                vec![
                    Expr::var("y1"),
                    Expr::constr("Cons", vec![Expr::var("y2"), Expr::var("d")])
                ]
            )
        );
        assert!(c.mentions("y2"));
        assert!(!c.mentions("d"));
    }

    #[test]
    fn program_at_resolves_paths() {
        let p = map_program();
        let path = NodePath::fun(0, 0).child(2).child(1).child(1);
        assert_eq!(
            p.at(&path),
            Some(&Expr::call("map", vec![Expr::var("f"), Expr::var("xs")]))
        );
    }
}
