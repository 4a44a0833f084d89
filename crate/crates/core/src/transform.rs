//! The tail-modulo-cons rewrite.
//!
//! Every marked `f` becomes a pair: a direct-style `f` that switches to
//! destination-passing style under constructors, and `f_dps dst idx ...`
//! whose meaning is "write `f ...` into field `idx` of block `dst`".
//! Nested constructors are compressed: they are accumulated in a delayed
//! context and only allocated when a concrete destination is needed.

use std::collections::{BTreeSet, HashMap};

use crate::analysis::{self, Analysis};
use crate::diagnostic::{has_errors, Diagnostic};
use crate::ir::{
    well_formed, CallAttrs, Clause, ConstrContext, ConstrFrame, DecompHole, Decomposition, Expr,
    FunAttrs, FunDef, Name, NodePath, Program, TmcContext, BUILTINS,
};

/// Generator of identifiers that are unused in the program so far.
#[derive(Clone, Debug, Default)]
pub struct FreshNamer {
    used: BTreeSet<Name>,
    counters: HashMap<Name, usize>,
}

impl FreshNamer {
    pub fn new() -> FreshNamer {
        FreshNamer::default()
    }

    pub fn with_used(used: impl IntoIterator<Item = Name>) -> FreshNamer {
        FreshNamer {
            used: used.into_iter().collect(),
            counters: HashMap::new(),
        }
    }

    pub fn reserve(&mut self, name: impl Into<Name>) {
        self.used.insert(name.into());
    }

    pub fn is_used(&self, name: &str) -> bool {
        self.used.contains(name)
    }

    /// `base0`, `base1`, ... skipping anything already taken.
    pub fn fresh(&mut self, base: &str) -> Name {
        let counter = self.counters.entry(base.to_string()).or_insert(0);
        loop {
            let candidate = format!("{base}{counter}");
            *counter += 1;
            if self.used.insert(candidate.clone()) {
                return candidate;
            }
        }
    }

    /// `base` itself if free, otherwise a numbered variant.
    pub fn prefer(&mut self, base: &str) -> Name {
        if self.used.insert(base.to_string()) {
            base.to_string()
        } else {
            self.fresh(base)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransformOptions {
    /// Delay nested constructors instead of allocating each one eagerly.
    /// Turning this off exists for measuring its effect.
    pub compression: bool,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions { compression: true }
    }
}

#[derive(Clone, Debug)]
pub struct TransformOutput {
    pub program: Program,
    /// Non-fatal diagnostics.
    pub warnings: Vec<Diagnostic>,
    /// One `RULE path` line per rewrite step.
    pub trace: Vec<String>,
}

pub fn transform_program(p: &Program) -> Result<TransformOutput, Vec<Diagnostic>> {
    transform_program_with(p, TransformOptions::default())
}

/// Check, analyze and rewrite `p`. Fails with every diagnostic when any of
/// them is an error.
pub fn transform_program_with(
    p: &Program,
    opts: TransformOptions,
) -> Result<TransformOutput, Vec<Diagnostic>> {
    let wf = well_formed(p);
    if has_errors(&wf) {
        return Err(wf);
    }
    let (an, diags) = analysis::analyze(p);
    if has_errors(&diags) {
        return Err(diags);
    }
    let mut t = Transformer::new(p, &an, opts);
    let groups = p
        .groups
        .iter()
        .enumerate()
        .map(|(g, group)| t.group(group, &|i| NodePath::fun(g, i)))
        .collect();
    let main = t.nested(&p.main, &NodePath::main());
    if has_errors(&t.diags) {
        return Err(t.diags);
    }
    Ok(TransformOutput {
        program: Program { groups, main },
        warnings: diags,
        trace: t.trace,
    })
}

/// The direct-style version of `f`, whose body sits at `root`.
pub fn transform_direct(
    p: &Program,
    f: &FunDef,
    root: &NodePath,
    an: &Analysis,
) -> Result<FunDef, Diagnostic> {
    let mut t = Transformer::new(p, an, TransformOptions::default());
    let d = analysis::decompose_tmc(&f.body, root, &an.scope)?;
    Ok(t.direct_fun(f, &d))
}

/// The destination-passing companion of the marked function `f`.
pub fn transform_dps(
    p: &Program,
    f: &FunDef,
    root: &NodePath,
    an: &Analysis,
) -> Result<FunDef, Diagnostic> {
    transform_dps_with(p, f, root, an, TransformOptions::default())
}

pub fn transform_dps_with(
    p: &Program,
    f: &FunDef,
    root: &NodePath,
    an: &Analysis,
    opts: TransformOptions,
) -> Result<FunDef, Diagnostic> {
    let mut t = Transformer::new(p, an, opts);
    let d = analysis::decompose_tmc(&f.body, root, &an.scope)?;
    Ok(t.dps_fun(f, &d))
}

/// A symbolic destination: block variable and field index.
#[derive(Clone, Debug)]
struct Dest {
    block: Name,
    index: Expr,
}

struct Transformer<'a> {
    an: &'a Analysis,
    opts: TransformOptions,
    seed: BTreeSet<Name>,
    diags: Vec<Diagnostic>,
    trace: Vec<String>,
}

type Holes<'h> = std::slice::Iter<'h, DecompHole>;

impl<'a> Transformer<'a> {
    fn new(p: &Program, an: &'a Analysis, opts: TransformOptions) -> Transformer<'a> {
        let mut seed = p.identifiers();
        seed.extend(BUILTINS.iter().map(|b| b.to_string()));
        seed.extend(an.marks.dps_name.values().cloned());
        Transformer {
            an,
            opts,
            seed,
            diags: Vec::new(),
            trace: Vec::new(),
        }
    }

    fn namer(&self) -> FreshNamer {
        FreshNamer::with_used(self.seed.iter().cloned())
    }

    fn note(&mut self, rule: &str, path: &NodePath) {
        self.trace.push(format!("{rule} {path}"));
    }

    /// Rewrite a letrec group: each function keeps its place, marked ones
    /// are followed by their companion.
    fn group(&mut self, group: &[FunDef], path_of: &dyn Fn(usize) -> NodePath) -> Vec<FunDef> {
        let mut out = Vec::with_capacity(group.len());
        for (i, f) in group.iter().enumerate() {
            let root = path_of(i);
            match analysis::decompose_tmc(&f.body, &root, &self.an.scope) {
                Ok(d) => {
                    out.push(self.direct_fun(f, &d));
                    if f.attrs.tail_mod_cons {
                        out.push(self.dps_fun(f, &d));
                    }
                }
                Err(diag) => {
                    self.diags.push(diag);
                    out.push(f.clone());
                }
            }
        }
        out
    }

    fn direct_fun(&mut self, f: &FunDef, d: &Decomposition) -> FunDef {
        let mut namer = self.namer();
        let body = self.direct(&d.context, &d.root, &mut d.holes.iter(), &mut namer);
        FunDef {
            name: f.name.clone(),
            params: f.params.clone(),
            body,
            attrs: FunAttrs::default(),
        }
    }

    fn dps_fun(&mut self, f: &FunDef, d: &Decomposition) -> FunDef {
        let mut namer = self.namer();
        let dst = namer.prefer("dst");
        let idx = namer.prefer("idx");
        let dest = Dest {
            block: dst.clone(),
            index: Expr::var(idx.clone()),
        };
        let body = self.dps(
            &d.context,
            &d.root,
            dest,
            ConstrContext::default(),
            &mut d.holes.iter(),
            &mut namer,
        );
        let mut params = vec![dst, idx];
        params.extend(f.params.iter().cloned());
        FunDef {
            name: self.dps_name(&f.name).to_string(),
            params,
            body,
            attrs: FunAttrs::default(),
        }
    }

    fn dps_name(&self, f: &str) -> &'a str {
        self.an
            .marks
            .dps_of(f)
            .expect("marked functions have a companion name")
    }

    /// Rebuild an expression outside any TMC context: local groups are
    /// rewritten and attributes are dropped.
    fn nested(&mut self, e: &Expr, path: &NodePath) -> Expr {
        match e {
            Expr::Letrec { group, body } => {
                let group = self.group(group, &|i| path.child(i));
                let n = group_len(e);
                let d = analysis::decompose_tmc(body, &path.child(n), &self.an.scope);
                let body = match d {
                    Ok(d) => {
                        let mut namer = self.namer();
                        self.direct(&d.context, &d.root, &mut d.holes.iter(), &mut namer)
                    }
                    Err(diag) => {
                        self.diags.push(diag);
                        (**body).clone()
                    }
                };
                Expr::Letrec {
                    group,
                    body: Box::new(body),
                }
            }
            Expr::Var(_) | Expr::Int(_) | Expr::Hole => e.clone(),
            Expr::Call { callee, args, .. } => Expr::Call {
                callee: callee.clone(),
                args: self.nested_all(args, path, 0),
                attrs: CallAttrs::default(),
            },
            Expr::Constr { tag, args } => Expr::Constr {
                tag: tag.clone(),
                args: self.nested_all(args, path, 0),
            },
            Expr::Let {
                binder,
                bound,
                body,
            } => Expr::let_(
                binder.clone(),
                self.nested(bound, &path.child(0)),
                self.nested(body, &path.child(1)),
            ),
            Expr::Seq(a, b) => Expr::seq(
                self.nested(a, &path.child(0)),
                self.nested(b, &path.child(1)),
            ),
            Expr::Match { scrutinee, clauses } => Expr::Match {
                scrutinee: Box::new(self.nested(scrutinee, &path.child(0))),
                clauses: clauses
                    .iter()
                    .enumerate()
                    .map(|(i, c)| Clause {
                        pattern: c.pattern.clone(),
                        body: self.nested(&c.body, &path.child(i + 1)),
                    })
                    .collect(),
            },
            Expr::SetRef { dest, index, value } => Expr::setref(
                self.nested(dest, &path.child(0)),
                self.nested(index, &path.child(1)),
                self.nested(value, &path.child(2)),
            ),
        }
    }

    fn nested_all(&mut self, es: &[Expr], path: &NodePath, first: usize) -> Vec<Expr> {
        es.iter()
            .enumerate()
            .map(|(i, a)| self.nested(a, &path.child(first + i)))
            .collect()
    }

    /// Direct mode: plain tail positions are kept; a constructor on the
    /// way to a candidate is allocated with a hole and filled in DPS mode.
    fn direct(
        &mut self,
        c: &TmcContext,
        path: &NodePath,
        holes: &mut Holes<'_>,
        namer: &mut FreshNamer,
    ) -> Expr {
        match c {
            TmcContext::Hole => {
                let h = holes.next().expect("hole count matches context");
                self.nested(&h.expr, &h.path)
            }
            TmcContext::Let {
                binder,
                bound,
                body,
            } => {
                let bound = self.nested(bound, &path.child(0));
                Expr::let_(
                    binder.clone(),
                    bound,
                    self.direct(body, &path.child(1), holes, namer),
                )
            }
            TmcContext::Seq { first, second } => {
                let first = self.nested(first, &path.child(0));
                Expr::seq(first, self.direct(second, &path.child(1), holes, namer))
            }
            TmcContext::Match { scrutinee, clauses } => {
                let scrutinee = Box::new(self.nested(scrutinee, &path.child(0)));
                let clauses = clauses
                    .iter()
                    .enumerate()
                    .map(|(i, (pat, c))| Clause {
                        pattern: pat.clone(),
                        body: self.direct(c, &path.child(i + 1), holes, namer),
                    })
                    .collect();
                Expr::Match { scrutinee, clauses }
            }
            TmcContext::Letrec { group, body } => {
                let new_group = self.group(group, &|i| path.child(i));
                let body = self.direct(body, &path.child(group.len()), holes, namer);
                Expr::Letrec {
                    group: new_group,
                    body: Box::new(body),
                }
            }
            TmcContext::Constr {
                tag,
                before,
                inner,
                after,
            } => {
                self.note("Direct-Constr", path);
                let j = before.len();
                let d = namer.fresh("dst");
                let mut args = self.nested_all(before, path, 0);
                args.push(Expr::Hole);
                args.extend(self.nested_all(after, path, j + 1));
                let dest = Dest {
                    block: d.clone(),
                    index: Expr::Int(j as i64 + 1),
                };
                let fill = self.dps(
                    inner,
                    &path.child(j),
                    dest,
                    ConstrContext::default(),
                    holes,
                    namer,
                );
                Expr::let_(
                    d.clone(),
                    Expr::constr(tag.clone(), args),
                    Expr::seq(fill, Expr::var(d)),
                )
            }
        }
    }

    /// Allocate the innermost delayed constructor with a hole, write the
    /// rest of the delayed context into `dest`, and continue with the new
    /// block as destination.
    fn reify(
        &mut self,
        path: &NodePath,
        dest: Dest,
        mut cctx: ConstrContext,
        namer: &mut FreshNamer,
    ) -> (Reified, Dest) {
        self.note("DPS-Reify", path);
        let frame = cctx.frames.pop().expect("reify needs a nonempty context");
        let d = namer.fresh("dst");
        let write = Expr::setref(
            Expr::var(dest.block),
            dest.index,
            cctx.plug(Expr::var(d.clone())),
        );
        let new_dest = Dest {
            block: d.clone(),
            index: Expr::Int(frame.hole_index()),
        };
        (
            Reified {
                binder: d,
                block: frame.apply(Expr::Hole),
                write,
            },
            new_dest,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn dps(
        &mut self,
        c: &TmcContext,
        path: &NodePath,
        dest: Dest,
        cctx: ConstrContext,
        holes: &mut Holes<'_>,
        namer: &mut FreshNamer,
    ) -> Expr {
        match c {
            TmcContext::Hole => {
                let h = holes.next().expect("hole count matches context");
                self.dps_hole(h, dest, cctx, namer)
            }
            TmcContext::Let {
                binder,
                bound,
                body,
            } => {
                let bound = self.nested(bound, &path.child(0));
                self.guard(
                    path,
                    dest,
                    cctx,
                    namer,
                    cctx_shadowed(&[binder.as_str()]),
                    |t, dest, cctx, namer| {
                        Expr::let_(
                            binder.clone(),
                            bound,
                            t.dps(body, &path.child(1), dest, cctx, holes, namer),
                        )
                    },
                )
            }
            TmcContext::Seq { first, second } => {
                let first = self.nested(first, &path.child(0));
                Expr::seq(
                    first,
                    self.dps(second, &path.child(1), dest, cctx, holes, namer),
                )
            }
            TmcContext::Match { scrutinee, clauses } => {
                let scrutinee = self.nested(scrutinee, &path.child(0));
                let binders: Vec<&str> = clauses.iter().flat_map(|(p, _)| p.binders()).collect();
                let duplicates = clauses.len() >= 2;
                let must_reify = move |cctx: &ConstrContext| {
                    !cctx.is_empty() && (duplicates || binders.iter().any(|b| cctx.mentions(b)))
                };
                self.guard(
                    path,
                    dest,
                    cctx,
                    namer,
                    must_reify,
                    |t, dest, cctx, namer| {
                        let clauses = clauses
                            .iter()
                            .enumerate()
                            .map(|(i, (pat, c))| Clause {
                                pattern: pat.clone(),
                                body: t.dps(
                                    c,
                                    &path.child(i + 1),
                                    dest.clone(),
                                    cctx.clone(),
                                    holes,
                                    namer,
                                ),
                            })
                            .collect();
                        Expr::Match {
                            scrutinee: Box::new(scrutinee),
                            clauses,
                        }
                    },
                )
            }
            TmcContext::Letrec { group, body } => {
                let names: Vec<&str> = group.iter().map(|f| f.name.as_str()).collect();
                self.guard(
                    path,
                    dest,
                    cctx,
                    namer,
                    cctx_shadowed(&names),
                    |t, dest, cctx, namer| {
                        let new_group = t.group(group, &|i| path.child(i));
                        let body = t.dps(body, &path.child(group.len()), dest, cctx, holes, namer);
                        Expr::Letrec {
                            group: new_group,
                            body: Box::new(body),
                        }
                    },
                )
            }
            TmcContext::Constr {
                tag,
                before,
                inner,
                after,
            } => {
                self.note("DPS-Constr-Opt", path);
                let j = before.len();
                let mut bindings = Vec::new();
                let mut atomize = |t: &mut Self, a: &Expr, p: NodePath| {
                    let a = t.nested(a, &p);
                    if a.is_atom() {
                        a
                    } else {
                        let y = namer.fresh("y");
                        bindings.push((y.clone(), a));
                        Expr::var(y)
                    }
                };
                let vs: Vec<Expr> = before
                    .iter()
                    .enumerate()
                    .map(|(i, a)| atomize(self, a, path.child(i)))
                    .collect();
                let ws: Vec<Expr> = after
                    .iter()
                    .enumerate()
                    .map(|(k, a)| atomize(self, a, path.child(j + 1 + k)))
                    .collect();
                let mut cctx = cctx;
                cctx.push(ConstrFrame {
                    tag: tag.clone(),
                    before: vs,
                    after: ws,
                });
                let body = if self.opts.compression {
                    self.dps(inner, &path.child(j), dest, cctx, holes, namer)
                } else {
                    let (r, dest) = self.reify(path, dest, cctx, namer);
                    let rest = self.dps(
                        inner,
                        &path.child(j),
                        dest,
                        ConstrContext::default(),
                        holes,
                        namer,
                    );
                    r.wrap(rest)
                };
                bindings
                    .into_iter()
                    .rev()
                    .fold(body, |acc, (y, e)| Expr::let_(y, e, acc))
            }
        }
    }

    /// Reify first when `must_reify` says the delayed context cannot be
    /// carried into the sub-term.
    fn guard(
        &mut self,
        path: &NodePath,
        dest: Dest,
        cctx: ConstrContext,
        namer: &mut FreshNamer,
        must_reify: impl FnOnce(&ConstrContext) -> bool,
        k: impl FnOnce(&mut Self, Dest, ConstrContext, &mut FreshNamer) -> Expr,
    ) -> Expr {
        if must_reify(&cctx) {
            let (r, dest) = self.reify(path, dest, cctx, namer);
            let rest = k(self, dest, ConstrContext::default(), namer);
            r.wrap(rest)
        } else {
            k(self, dest, cctx, namer)
        }
    }

    fn dps_hole(
        &mut self,
        h: &DecompHole,
        dest: Dest,
        cctx: ConstrContext,
        namer: &mut FreshNamer,
    ) -> Expr {
        if let Expr::Call { callee, args, .. } = &h.expr {
            if self.an.scope.is_candidate(&h.path) {
                let args = self.nested_all(args, &h.path, 0);
                let (reified, dest) = if cctx.is_empty() {
                    (None, dest)
                } else {
                    let (r, d) = self.reify(&h.path, dest, cctx, namer);
                    (Some(r), d)
                };
                self.note("DPS-Call", &h.path);
                let mut all = vec![Expr::var(dest.block), dest.index];
                all.extend(args);
                let call = Expr::call(self.dps_name(callee), all);
                return match reified {
                    Some(r) => r.wrap(call),
                    None => call,
                };
            }
        }
        self.note("DPS-Hole-Opt", &h.path);
        let value = cctx.plug(self.nested(&h.expr, &h.path));
        Expr::setref(Expr::var(dest.block), dest.index, value)
    }
}

fn cctx_shadowed<'n>(names: &'n [&'n str]) -> impl FnOnce(&ConstrContext) -> bool + 'n {
    move |cctx| names.iter().any(|n| cctx.mentions(n))
}

fn group_len(e: &Expr) -> usize {
    match e {
        Expr::Letrec { group, .. } => group.len(),
        _ => 0,
    }
}

struct Reified {
    binder: Name,
    block: Expr,
    write: Expr,
}

impl Reified {
    /// `let d' = K(.., Hole, ..) in (dst.idx <- C[d']); rest`
    fn wrap(self, rest: Expr) -> Expr {
        Expr::let_(self.binder, self.block, Expr::seq(self.write, rest))
    }
}

/// Every plain tail position of `e` is a field write or a call to one of
/// `dps_names`. Holds for any body produced by the DPS rewrite.
pub fn dps_body_is_complete(e: &Expr, dps_names: &BTreeSet<&str>) -> bool {
    match e {
        Expr::SetRef { .. } => true,
        Expr::Call { callee, .. } => dps_names.contains(callee.as_str()),
        Expr::Let { body, .. } => dps_body_is_complete(body, dps_names),
        Expr::Seq(_, b) => dps_body_is_complete(b, dps_names),
        Expr::Match { clauses, .. } => clauses
            .iter()
            .all(|c| dps_body_is_complete(&c.body, dps_names)),
        Expr::Letrec { body, .. } => dps_body_is_complete(body, dps_names),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_expr, parse_program, print_expr, print_program};

    const MAP: &str = "(program (letrec (fun (@ tail_mod_cons) map (f xs)
        (match xs (case (Nil) (constr Nil))
          (case (Cons x xs) (let y (call f x) (constr Cons y (call map f xs)))))))
      (main (int 0)))";

    const UMAP: &str = "(program (letrec (fun (@ tail_mod_cons) umap (f xs)
        (match xs (case (Nil) (constr Nil))
          (case (Cons x (Nil)) (constr Cons (call f x) (constr Nil)))
          (case (Cons x1 (Cons x2 xs))
            (constr Cons (call f x1) (constr Cons (call f x2) (call umap f xs)))))))
      (main (int 0)))";

    fn fun<'p>(p: &'p Program, name: &str) -> &'p FunDef {
        p.function(name).unwrap()
    }

    fn expr(src: &str) -> Expr {
        parse_expr(src).unwrap()
    }

    #[test]
    fn fresh_names() {
        let mut n = FreshNamer::new();
        assert_eq!(n.fresh("dst"), "dst0");
        assert_eq!(n.fresh("dst"), "dst1");
        let mut n = FreshNamer::with_used(["y0".to_string()]);
        assert_eq!(n.fresh("y"), "y1");
    }

    #[test]
    fn map_pair() {
        let out = transform_program(&parse_program(MAP).unwrap()).unwrap();
        let p = out.program;
        assert_eq!(p.groups[0].len(), 2);
        let direct = fun(&p, "map");
        assert_eq!(
            direct.body,
            expr(
                "(match xs (case (Nil) (constr Nil))
                   (case (Cons x xs) (let y (call f x)
                     (let dst0 (constr Cons y (hole)) (seq (call map_dps dst0 2 f xs) dst0)))))"
            )
        );
        let dps = fun(&p, "map_dps");
        assert_eq!(dps.params, vec!["dst", "idx", "f", "xs"]);
        assert_eq!(
            dps.body,
            expr(
                "(match xs (case (Nil) (setref dst idx (constr Nil)))
                   (case (Cons x xs) (let y (call f x)
                     (let dst0 (constr Cons y (hole))
                       (seq (setref dst idx dst0) (call map_dps dst0 2 f xs))))))"
            )
        );
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn umap_dps_is_compressed() {
        let p = transform_program(&parse_program(UMAP).unwrap())
            .unwrap()
            .program;
        let dps = fun(&p, "umap_dps");
        let expected = expr(
            "(match xs (case (Nil) (setref dst idx (constr Nil)))
               (case (Cons x (Nil)) (setref dst idx (constr Cons (call f x) (constr Nil))))
               (case (Cons x1 (Cons x2 xs))
                 (let y0 (call f x1) (let y1 (call f x2)
                   (let dst0 (constr Cons y1 (hole))
                     (seq (setref dst idx (constr Cons y0 dst0)) (call umap_dps dst0 2 f xs)))))))",
        );
        assert_eq!(dps.body, expected, "{}", print_expr(&dps.body));
    }

    #[test]
    fn umap_without_compression_writes_each_cell() {
        let p = parse_program(UMAP).unwrap();
        let an = Analysis::new(&p);
        let f = &p.groups[0][0];
        let dps = transform_dps_with(
            &p,
            f,
            &NodePath::fun(0, 0),
            &an,
            TransformOptions { compression: false },
        )
        .unwrap();
        let printed = print_expr(&dps.body);
        assert_eq!(printed.matches("setref").count(), 4, "{printed}");
    }

    #[test]
    fn identity_dps_is_a_single_write() {
        let p =
            parse_program("(program (letrec (fun (@ tail_mod_cons) id (x) x)) (main 0))").unwrap();
        let out = transform_program(&p).unwrap();
        assert_eq!(fun(&out.program, "id_dps").body, expr("(setref dst idx x)"));
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn no_marks_is_identity() {
        let src = "(program (letrec (fun len (xs) (match xs (case (Nil) 0) (case (Cons _ r) (call add1 (call len r)))))) (main (call len (constr Nil))))";
        let p = parse_program(src).unwrap();
        assert_eq!(transform_program(&p).unwrap().program, p);
    }

    #[test]
    fn attributes_are_consumed() {
        let src = "(program (letrec (fun (@ tail_mod_cons) map (f t)
            (match t (case (Leaf v) (constr Leaf (call f v)))
              (case (Node a b) (constr Node (call map f a) (call (@ tailcall) map f b))))))
          (main 0))";
        let out = transform_program(&parse_program(src).unwrap()).unwrap();
        let printed = print_program(&out.program);
        assert!(!printed.contains("(@"), "{printed}");
    }

    #[test]
    fn ambiguity_fails_the_transformation() {
        let src = "(program (letrec (fun (@ tail_mod_cons) map (f t)
            (match t (case (Leaf v) (constr Leaf (call f v)))
              (case (Node a b) (constr Node (call map f a) (call map f b))))))
          (main 0))";
        let err = transform_program(&parse_program(src).unwrap()).unwrap_err();
        assert_eq!(err[0].code, crate::diagnostic::Code::AmbiguousTmc);
    }

    #[test]
    fn shadowing_binder_forces_reification() {
        let src = "(program (letrec (fun (@ tail_mod_cons) f (x xs)
            (constr Cons x (let x (call add1 x) (constr Cons x (call f x xs))))))
          (main 0))";
        let p = transform_program(&parse_program(src).unwrap())
            .unwrap()
            .program;
        let dps = fun(&p, "f_dps");
        assert_eq!(
            dps.body,
            expr(
                "(let dst0 (constr Cons x (hole)) (seq (setref dst idx dst0)
                   (let x (call add1 x)
                     (let dst1 (constr Cons x (hole)) (seq (setref dst0 2 dst1) (call f_dps dst1 2 x xs))))))"
            ),
            "{}",
            print_expr(&dps.body)
        );
    }

    #[test]
    fn dps_bodies_end_in_writes_or_dps_calls() {
        for src in [MAP, UMAP] {
            let p = transform_program(&parse_program(src).unwrap())
                .unwrap()
                .program;
            let names: BTreeSet<&str> = p
                .functions()
                .filter(|f| f.name.ends_with("_dps"))
                .map(|f| f.name.as_str())
                .collect();
            for f in p.functions().filter(|f| names.contains(f.name.as_str())) {
                assert!(dps_body_is_complete(&f.body, &names));
            }
        }
    }

    #[test]
    fn transformation_is_deterministic() {
        let p = parse_program(UMAP).unwrap();
        let a = print_program(&transform_program(&p).unwrap().program);
        let b = print_program(&transform_program(&p).unwrap().program);
        assert_eq!(a, b);
    }

    #[test]
    fn trace_records_rules() {
        let out = transform_program(&parse_program(MAP).unwrap()).unwrap();
        assert!(out.trace.iter().any(|l| l.starts_with("DPS-Call ")));
        assert!(out.trace.iter().any(|l| l.starts_with("Direct-Constr ")));
    }
}
