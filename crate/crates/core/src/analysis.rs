//! Static analysis ahead of the transformation.
//!
//! Resolves every call site lexically, decides whether a call to a marked
//! function may be rewritten (the rewrite scope), and splits expressions into
//! a tail-modulo-cons context plus the expressions in its holes.
//!
//! Rewrite scope: a call to a marked `f` is eligible when it occurs inside
//! the body of a function of `f`'s own letrec group, or anywhere inside the
//! body of a marked function (however deeply nested). Calls from the main
//! expression are never rewritten.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::diagnostic::{Code, Diagnostic};
use crate::ir::{
    is_builtin, DecompHole, Decomposition, Expr, FunDef, HoleKind, Name, NodePath, Program,
    TmcContext, BUILTINS,
};

/// Functions marked `tail_mod_cons` and the names of their DPS companions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkSet {
    pub marked: BTreeSet<Name>,
    pub dps_name: BTreeMap<Name, Name>,
}

impl MarkSet {
    pub fn is_empty(&self) -> bool {
        self.marked.is_empty()
    }

    pub fn dps_of(&self, name: &str) -> Option<&str> {
        self.dps_name.get(name).map(String::as_str)
    }
}

/// Give every marked function a fresh `<name>_dps` companion name, falling
/// back to `_dps2`, `_dps3`, ... when the name is taken.
pub fn collect_marks(p: &Program) -> MarkSet {
    let mut used: BTreeSet<String> = p.identifiers();
    used.extend(BUILTINS.iter().map(|b| b.to_string()));
    let mut marks = MarkSet::default();
    let mut marked_in_order = Vec::new();
    for f in p.functions() {
        collect_marked(f, &mut marked_in_order);
    }
    collect_marked_expr(&p.main, &mut marked_in_order);
    for name in marked_in_order {
        if marks.dps_name.contains_key(&name) {
            continue;
        }
        let base = format!("{name}_dps");
        let mut candidate = base.clone();
        let mut n = 2;
        while used.contains(&candidate) {
            candidate = format!("{base}{n}");
            n += 1;
        }
        used.insert(candidate.clone());
        marks.marked.insert(name.clone());
        marks.dps_name.insert(name, candidate);
    }
    marks
}

fn collect_marked(f: &FunDef, out: &mut Vec<Name>) {
    if f.attrs.tail_mod_cons {
        out.push(f.name.clone());
    }
    collect_marked_expr(&f.body, out);
}

fn collect_marked_expr(e: &Expr, out: &mut Vec<Name>) {
    if let Expr::Letrec { group, body } = e {
        for f in group {
            collect_marked(f, out);
        }
        collect_marked_expr(body, out);
        return;
    }
    for c in e.children() {
        collect_marked_expr(c, out);
    }
}

/// Identity of a letrec group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKey {
    Toplevel(usize),
    /// Path of the `letrec` expression.
    Local(NodePath),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Callee {
    /// The callee is a bound variable holding a function value.
    Indirect,
    Builtin,
    Function {
        marked: bool,
        group: GroupKey,
    },
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eligibility {
    RewriteEligible,
    NotEligible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CallSite {
    pub callee_name: Name,
    pub callee: Callee,
    pub eligibility: Eligibility,
    /// Whether the call lies inside the body of a marked function.
    pub in_marked_body: bool,
    pub tailcall: bool,
}

impl CallSite {
    /// A call to a marked function that may be rewritten to its companion.
    pub fn is_candidate(&self) -> bool {
        self.eligibility == Eligibility::RewriteEligible
    }
}

/// Per-call-site resolution and rewrite eligibility.
#[derive(Clone, Debug, Default)]
pub struct ScopeVerdict {
    pub calls: BTreeMap<NodePath, CallSite>,
}

impl ScopeVerdict {
    pub fn is_candidate(&self, path: &NodePath) -> bool {
        self.calls.get(path).is_some_and(CallSite::is_candidate)
    }

    pub fn eligibility(&self, path: &NodePath) -> Option<Eligibility> {
        self.calls.get(path).map(|c| c.eligibility)
    }
}

#[derive(Clone, Debug)]
enum Binding {
    Var,
    Fun { marked: bool, group: GroupKey },
}

struct Region {
    groups: Vec<GroupKey>,
    in_marked: bool,
}

struct ScopeWalker<'a> {
    toplevel: HashMap<&'a str, (bool, usize)>,
    calls: BTreeMap<NodePath, CallSite>,
}

pub fn resolve_scope(p: &Program) -> ScopeVerdict {
    let mut w = ScopeWalker {
        toplevel: HashMap::new(),
        calls: BTreeMap::new(),
    };
    for (g, group) in p.groups.iter().enumerate() {
        for f in group {
            w.toplevel
                .entry(f.name.as_str())
                .or_insert((f.attrs.tail_mod_cons, g));
        }
    }
    for (g, group) in p.groups.iter().enumerate() {
        for (i, f) in group.iter().enumerate() {
            let mut env: Vec<(Name, Binding)> =
                f.params.iter().map(|x| (x.clone(), Binding::Var)).collect();
            let region = Region {
                groups: vec![GroupKey::Toplevel(g)],
                in_marked: f.attrs.tail_mod_cons,
            };
            w.walk(&f.body, &NodePath::fun(g, i), &mut env, &region);
        }
    }
    let region = Region {
        groups: Vec::new(),
        in_marked: false,
    };
    w.walk(&p.main, &NodePath::main(), &mut Vec::new(), &region);
    ScopeVerdict { calls: w.calls }
}

impl ScopeWalker<'_> {
    fn resolve(&self, name: &str, env: &[(Name, Binding)]) -> Callee {
        if let Some((_, b)) = env.iter().rev().find(|(n, _)| n == name) {
            return match b {
                Binding::Var => Callee::Indirect,
                Binding::Fun { marked, group } => Callee::Function {
                    marked: *marked,
                    group: group.clone(),
                },
            };
        }
        if let Some(&(marked, g)) = self.toplevel.get(name) {
            return Callee::Function {
                marked,
                group: GroupKey::Toplevel(g),
            };
        }
        if is_builtin(name) {
            Callee::Builtin
        } else {
            Callee::Unresolved
        }
    }

    fn walk(&mut self, e: &Expr, path: &NodePath, env: &mut Vec<(Name, Binding)>, region: &Region) {
        match e {
            Expr::Call {
                callee,
                args,
                attrs,
            } => {
                let resolved = self.resolve(callee, env);
                let eligible = match &resolved {
                    Callee::Function {
                        marked: true,
                        group,
                    } => region.in_marked || region.groups.contains(group),
                    _ => false,
                };
                self.calls.insert(
                    path.clone(),
                    CallSite {
                        callee_name: callee.clone(),
                        callee: resolved,
                        eligibility: if eligible {
                            Eligibility::RewriteEligible
                        } else {
                            Eligibility::NotEligible
                        },
                        in_marked_body: region.in_marked,
                        tailcall: attrs.tailcall,
                    },
                );
                for (i, a) in args.iter().enumerate() {
                    self.walk(a, &path.child(i), env, region);
                }
            }
            Expr::Let {
                binder,
                bound,
                body,
            } => {
                self.walk(bound, &path.child(0), env, region);
                env.push((binder.clone(), Binding::Var));
                self.walk(body, &path.child(1), env, region);
                env.pop();
            }
            Expr::Match { scrutinee, clauses } => {
                self.walk(scrutinee, &path.child(0), env, region);
                for (i, c) in clauses.iter().enumerate() {
                    let mark = env.len();
                    env.extend(
                        c.pattern
                            .binders()
                            .into_iter()
                            .map(|b| (b.to_string(), Binding::Var)),
                    );
                    self.walk(&c.body, &path.child(i + 1), env, region);
                    env.truncate(mark);
                }
            }
            Expr::Letrec { group, body } => {
                let key = GroupKey::Local(path.clone());
                let mark = env.len();
                env.extend(group.iter().map(|f| {
                    (
                        f.name.clone(),
                        Binding::Fun {
                            marked: f.attrs.tail_mod_cons,
                            group: key.clone(),
                        },
                    )
                }));
                for (i, f) in group.iter().enumerate() {
                    let inner_mark = env.len();
                    env.extend(f.params.iter().map(|x| (x.clone(), Binding::Var)));
                    let mut groups = region.groups.clone();
                    groups.push(key.clone());
                    let inner = Region {
                        groups,
                        in_marked: region.in_marked || f.attrs.tail_mod_cons,
                    };
                    self.walk(&f.body, &path.child(i), env, &inner);
                    env.truncate(inner_mark);
                }
                self.walk(body, &path.child(group.len()), env, region);
                env.truncate(mark);
            }
            _ => {
                for (i, c) in e.children().into_iter().enumerate() {
                    self.walk(c, &path.child(i), env, region);
                }
            }
        }
    }
}

/// Marks plus scope: everything the decomposition and the transformation
/// need to know about call sites.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub marks: MarkSet,
    pub scope: ScopeVerdict,
}

impl Analysis {
    pub fn new(p: &Program) -> Analysis {
        Analysis {
            marks: collect_marks(p),
            scope: resolve_scope(p),
        }
    }
}

/// Does some TMC decomposition of `e` put a candidate call in a hole?
pub fn has_candidate(e: &Expr, path: &NodePath, scope: &ScopeVerdict) -> bool {
    match e {
        Expr::Call { .. } => scope.is_candidate(path),
        Expr::Let { body, .. } => has_candidate(body, &path.child(1), scope),
        Expr::Seq(_, b) => has_candidate(b, &path.child(1), scope),
        Expr::Match { clauses, .. } => clauses
            .iter()
            .enumerate()
            .any(|(i, c)| has_candidate(&c.body, &path.child(i + 1), scope)),
        Expr::Constr { args, .. } => args
            .iter()
            .enumerate()
            .any(|(i, a)| has_candidate(a, &path.child(i), scope)),
        Expr::Letrec { group, body } => has_candidate(body, &path.child(group.len()), scope),
        _ => false,
    }
}

/// Candidate calls in tail-modulo-cons positions of `e`, in source order.
pub fn candidate_calls(e: &Expr, path: &NodePath, scope: &ScopeVerdict) -> Vec<NodePath> {
    let mut out = Vec::new();
    tmc_calls(e, path, &mut |p| {
        if scope.is_candidate(p) {
            out.push(p.clone());
        }
    });
    out
}

fn tmc_calls(e: &Expr, path: &NodePath, f: &mut impl FnMut(&NodePath)) {
    match e {
        Expr::Call { .. } => f(path),
        Expr::Let { body, .. } => tmc_calls(body, &path.child(1), f),
        Expr::Seq(_, b) => tmc_calls(b, &path.child(1), f),
        Expr::Match { clauses, .. } => {
            for (i, c) in clauses.iter().enumerate() {
                tmc_calls(&c.body, &path.child(i + 1), f);
            }
        }
        Expr::Constr { args, .. } => {
            for (i, a) in args.iter().enumerate() {
                tmc_calls(a, &path.child(i), f);
            }
        }
        Expr::Letrec { group, body } => tmc_calls(body, &path.child(group.len()), f),
        _ => {}
    }
}

/// Calls in plain tail position of `e` (no constructor above them).
pub fn tail_calls(e: &Expr, path: &NodePath) -> Vec<NodePath> {
    let mut out = Vec::new();
    tail_calls_rec(e, path, &mut out);
    out
}

fn tail_calls_rec(e: &Expr, path: &NodePath, out: &mut Vec<NodePath>) {
    match e {
        Expr::Call { .. } => out.push(path.clone()),
        Expr::Let { body, .. } => tail_calls_rec(body, &path.child(1), out),
        Expr::Seq(_, b) => tail_calls_rec(b, &path.child(1), out),
        Expr::Match { clauses, .. } => {
            for (i, c) in clauses.iter().enumerate() {
                tail_calls_rec(&c.body, &path.child(i + 1), out);
            }
        }
        Expr::Letrec { group, body } => tail_calls_rec(body, &path.child(group.len()), out),
        _ => {}
    }
}

/// Split `e` (found at `root`) into a TMC context and its holes.
///
/// Constructs are only decomposed when their tail subterm holds a candidate.
/// At a constructor, the unique argument holding a candidate is chosen; if
/// several do, the unique one holding a `tailcall`-annotated candidate wins,
/// otherwise the decomposition is ambiguous.
pub fn decompose_tmc(
    e: &Expr,
    root: &NodePath,
    scope: &ScopeVerdict,
) -> Result<Decomposition, Diagnostic> {
    let mut d = Decomposer {
        scope,
        holes: Vec::new(),
        chosen: Vec::new(),
    };
    let context = d.go(e, root, false)?;
    Ok(Decomposition {
        root: root.clone(),
        context,
        holes: d.holes,
        chosen_constructor_paths: d.chosen,
    })
}

struct Decomposer<'a> {
    scope: &'a ScopeVerdict,
    holes: Vec<DecompHole>,
    chosen: Vec<NodePath>,
}

impl Decomposer<'_> {
    fn hole(&mut self, e: &Expr, path: &NodePath, under_constr: bool) -> TmcContext {
        self.holes.push(DecompHole {
            expr: e.clone(),
            kind: if under_constr {
                HoleKind::StrictModCons
            } else {
                HoleKind::PlainTail
            },
            path: path.clone(),
        });
        TmcContext::Hole
    }

    fn go(
        &mut self,
        e: &Expr,
        path: &NodePath,
        under_constr: bool,
    ) -> Result<TmcContext, Diagnostic> {
        if !has_candidate(e, path, self.scope) {
            return Ok(self.hole(e, path, under_constr));
        }
        Ok(match e {
            Expr::Let {
                binder,
                bound,
                body,
            } => TmcContext::Let {
                binder: binder.clone(),
                bound: (**bound).clone(),
                body: Box::new(self.go(body, &path.child(1), under_constr)?),
            },
            Expr::Seq(a, b) => TmcContext::Seq {
                first: (**a).clone(),
                second: Box::new(self.go(b, &path.child(1), under_constr)?),
            },
            Expr::Match { scrutinee, clauses } => {
                let mut out = Vec::with_capacity(clauses.len());
                for (i, c) in clauses.iter().enumerate() {
                    out.push((
                        c.pattern.clone(),
                        self.go(&c.body, &path.child(i + 1), under_constr)?,
                    ));
                }
                TmcContext::Match {
                    scrutinee: (**scrutinee).clone(),
                    clauses: out,
                }
            }
            Expr::Letrec { group, body } => TmcContext::Letrec {
                group: group.clone(),
                body: Box::new(self.go(body, &path.child(group.len()), under_constr)?),
            },
            Expr::Constr { tag, args } => {
                let j = self.choose(args, path)?;
                self.chosen.push(path.child(j));
                TmcContext::Constr {
                    tag: tag.clone(),
                    before: args[..j].to_vec(),
                    inner: Box::new(self.go(&args[j], &path.child(j), true)?),
                    after: args[j + 1..].to_vec(),
                }
            }
            // A call with a candidate is itself the candidate.
            _ => self.hole(e, path, under_constr),
        })
    }

    fn choose(&self, args: &[Expr], path: &NodePath) -> Result<usize, Diagnostic> {
        let with_candidate: Vec<usize> = (0..args.len())
            .filter(|&i| has_candidate(&args[i], &path.child(i), self.scope))
            .collect();
        if let [only] = with_candidate.as_slice() {
            return Ok(*only);
        }
        let annotated: Vec<usize> = with_candidate
            .iter()
            .copied()
            .filter(|&i| {
                candidate_calls(&args[i], &path.child(i), self.scope)
                    .iter()
                    .any(|c| self.scope.calls[c].tailcall)
            })
            .collect();
        if let [only] = annotated.as_slice() {
            return Ok(*only);
        }
        let listed = if annotated.is_empty() {
            &with_candidate
        } else {
            &annotated
        };
        let mut candidate_paths = Vec::new();
        for &i in listed {
            for c in candidate_calls(&args[i], &path.child(i), self.scope) {
                if annotated.is_empty() || self.scope.calls[&c].tailcall {
                    candidate_paths.push(c);
                }
            }
        }
        let mut d = Diagnostic::error(
            Code::AmbiguousTmc,
            path.clone(),
            format!(
                "{} constructor arguments contain tail-modulo-cons calls; \
                 mark the one to optimize with (@ tailcall)",
                listed.len()
            ),
        );
        d.candidate_paths = candidate_paths;
        Err(d)
    }
}

/// What a decomposition root is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// Body of a function (toplevel or local).
    FunctionBody {
        name: Name,
        marked: bool,
    },
    /// Body of a `letrec` that sits outside any TMC context.
    LetrecBody,
    Main,
}

#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub root: NodePath,
    pub kind: RootKind,
    pub result: Result<Decomposition, Diagnostic>,
}

/// Decompose every root of the program: function bodies, the main
/// expression, and `letrec` bodies that are not part of an enclosing context.
pub fn decompose_all(p: &Program, scope: &ScopeVerdict) -> Vec<RootDecomposition> {
    let mut out = Vec::new();
    for (g, group) in p.groups.iter().enumerate() {
        for (i, f) in group.iter().enumerate() {
            visit_root(&f.body, &NodePath::fun(g, i), fun_root(f), scope, &mut out);
        }
    }
    visit_root(&p.main, &NodePath::main(), RootKind::Main, scope, &mut out);
    out
}

fn fun_root(f: &FunDef) -> RootKind {
    RootKind::FunctionBody {
        name: f.name.clone(),
        marked: f.attrs.tail_mod_cons,
    }
}

fn visit_root(
    e: &Expr,
    path: &NodePath,
    kind: RootKind,
    scope: &ScopeVerdict,
    out: &mut Vec<RootDecomposition>,
) {
    let result = decompose_tmc(e, path, scope);
    match &result {
        Ok(d) => scan_context(&d.context, path, scope, out, &mut d.holes.iter()),
        Err(_) => scan_expr(e, path, scope, out),
    }
    out.push(RootDecomposition {
        root: path.clone(),
        kind,
        result,
    });
}

fn scan_context<'a>(
    c: &TmcContext,
    path: &NodePath,
    scope: &ScopeVerdict,
    out: &mut Vec<RootDecomposition>,
    holes: &mut impl Iterator<Item = &'a DecompHole>,
) {
    match c {
        TmcContext::Hole => {
            let h = holes.next().expect("one hole per context hole");
            scan_expr(&h.expr, &h.path, scope, out);
        }
        TmcContext::Let { bound, body, .. } => {
            scan_expr(bound, &path.child(0), scope, out);
            scan_context(body, &path.child(1), scope, out, holes);
        }
        TmcContext::Seq { first, second } => {
            scan_expr(first, &path.child(0), scope, out);
            scan_context(second, &path.child(1), scope, out, holes);
        }
        TmcContext::Match { scrutinee, clauses } => {
            scan_expr(scrutinee, &path.child(0), scope, out);
            for (i, (_, c)) in clauses.iter().enumerate() {
                scan_context(c, &path.child(i + 1), scope, out, holes);
            }
        }
        TmcContext::Constr {
            before,
            inner,
            after,
            ..
        } => {
            for (i, a) in before.iter().enumerate() {
                scan_expr(a, &path.child(i), scope, out);
            }
            let j = before.len();
            for (k, a) in after.iter().enumerate() {
                scan_expr(a, &path.child(j + 1 + k), scope, out);
            }
            scan_context(inner, &path.child(j), scope, out, holes);
        }
        TmcContext::Letrec { group, body } => {
            for (i, f) in group.iter().enumerate() {
                visit_root(&f.body, &path.child(i), fun_root(f), scope, out);
            }
            scan_context(body, &path.child(group.len()), scope, out, holes);
        }
    }
}

fn scan_expr(e: &Expr, path: &NodePath, scope: &ScopeVerdict, out: &mut Vec<RootDecomposition>) {
    if let Expr::Letrec { group, body } = e {
        for (i, f) in group.iter().enumerate() {
            visit_root(&f.body, &path.child(i), fun_root(f), scope, out);
        }
        visit_root(
            body,
            &path.child(group.len()),
            RootKind::LetrecBody,
            scope,
            out,
        );
        return;
    }
    for (i, c) in e.children().into_iter().enumerate() {
        scan_expr(c, &path.child(i), scope, out);
    }
}

/// Run the whole analysis and report its diagnostics: ambiguous
/// decompositions, unsatisfiable `tailcall` annotations and useless marks.
pub fn analyze(p: &Program) -> (Analysis, Vec<Diagnostic>) {
    let analysis = Analysis::new(p);
    let roots = decompose_all(p, &analysis.scope);
    let diags = root_diagnostics(p, &analysis, &roots);
    (analysis, diags)
}

pub fn root_diagnostics(
    p: &Program,
    an: &Analysis,
    roots: &[RootDecomposition],
) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut satisfied: BTreeSet<NodePath> = BTreeSet::new();
    for r in roots {
        match &r.result {
            Err(d) => diags.push(d.clone()),
            Ok(d) => {
                for h in &d.holes {
                    if h.kind == HoleKind::StrictModCons && an.scope.is_candidate(&h.path) {
                        satisfied.insert(h.path.clone());
                    }
                }
                if let RootKind::FunctionBody { name, marked: true } = &r.kind {
                    if !d.holes.iter().any(|h| an.scope.is_candidate(&h.path)) {
                        diags.push(Diagnostic::warning(
                            Code::UselessMark,
                            r.root.clone(),
                            format!(
                                "`{name}` is marked tail_mod_cons but has no \
                                 tail-modulo-cons call to transform"
                            ),
                        ));
                    }
                }
            }
        }
        if matches!(r.kind, RootKind::FunctionBody { .. } | RootKind::Main) {
            if let Some(e) = p.at(&r.root) {
                satisfied.extend(tail_calls(e, &r.root));
            }
        }
    }
    for (path, site) in &an.scope.calls {
        if site.tailcall && !satisfied.contains(path) {
            let message = format!(
                "call to `{}` is annotated (@ tailcall) but is not in tail position \
                 modulo constructors",
                site.callee_name
            );
            diags.push(if site.in_marked_body {
                Diagnostic::error(Code::TailcallNotSatisfiable, path.clone(), message)
            } else {
                Diagnostic::warning(Code::TailcallNotSatisfiable, path.clone(), message)
            });
        }
    }
    diags
}
