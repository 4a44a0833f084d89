//! Lowering to a resolved form: every name is classified once as a local
//! binding, a toplevel function or a builtin.

use std::collections::HashMap;
use std::rc::Rc;

use super::store::Builtin;
use super::RuntimeError;
use crate::ir::{Expr, FunDef, Pattern, Program};

pub type Sym = u32;

#[derive(Debug, Default)]
pub struct Interner {
    ids: HashMap<String, Sym>,
    names: Vec<String>,
}

impl Interner {
    pub fn intern(&mut self, s: &str) -> Sym {
        if let Some(&id) = self.ids.get(s) {
            return id;
        }
        let id = self.names.len() as Sym;
        self.names.push(s.to_string());
        self.ids.insert(s.to_string(), id);
        id
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s as usize]
    }
}

#[derive(Debug)]
pub enum Ref {
    Local(Sym),
    Global(usize),
    Builtin(Builtin),
}

#[derive(Debug)]
pub enum CExpr {
    Ref(Ref),
    Int(i64),
    Call {
        callee: Ref,
        args: Vec<CExpr>,
    },
    Let {
        binder: Sym,
        bound: Box<CExpr>,
        body: Box<CExpr>,
    },
    Seq(Box<CExpr>, Box<CExpr>),
    Constr {
        tag: Rc<str>,
        args: Vec<CExpr>,
    },
    Match {
        scrutinee: Box<CExpr>,
        clauses: Vec<(CPat, CExpr)>,
    },
    SetRef {
        dest: Box<CExpr>,
        index: Box<CExpr>,
        value: Box<CExpr>,
    },
    Hole,
    Letrec {
        group: usize,
        body: Box<CExpr>,
    },
}

#[derive(Debug)]
pub enum CPat {
    Var(Sym),
    Wild,
    Int(i64),
    Constr(Rc<str>, Vec<CPat>),
}

#[derive(Debug)]
pub struct CFun {
    pub name: Rc<str>,
    pub sym: Sym,
    pub params: Vec<Sym>,
    pub body: CExpr,
    /// Local group this function belongs to.
    pub group: Option<usize>,
}

#[derive(Debug, Default)]
pub struct Compiled {
    pub syms: Interner,
    pub funs: Vec<CFun>,
    pub groups: Vec<Vec<usize>>,
    pub globals: HashMap<String, usize>,
    pub main: Option<CExpr>,
    tags: HashMap<String, Rc<str>>,
}

impl Compiled {
    pub fn new(p: &Program) -> Result<Compiled, RuntimeError> {
        let mut c = Compiled::default();
        let toplevel: Vec<&FunDef> = p.functions().collect();
        for f in &toplevel {
            let idx = c.funs.len();
            c.globals.entry(f.name.clone()).or_insert(idx);
            let sym = c.syms.intern(&f.name);
            c.funs.push(CFun {
                name: Rc::from(f.name.as_str()),
                sym,
                params: Vec::new(),
                body: CExpr::Int(0),
                group: None,
            });
        }
        for (i, f) in toplevel.iter().enumerate() {
            let params: Vec<Sym> = f.params.iter().map(|x| c.syms.intern(x)).collect();
            let mut scope: Vec<&str> = f.params.iter().map(String::as_str).collect();
            let body = c.expr(&f.body, &mut scope)?;
            c.funs[i].params = params;
            c.funs[i].body = body;
        }
        let main = c.expr(&p.main, &mut Vec::new())?;
        c.main = Some(main);
        Ok(c)
    }

    pub fn tag(&mut self, name: &str) -> Rc<str> {
        if let Some(t) = self.tags.get(name) {
            return t.clone();
        }
        let t: Rc<str> = Rc::from(name);
        self.tags.insert(name.to_string(), t.clone());
        t
    }

    fn resolve(&mut self, name: &str, scope: &[&str]) -> Result<Ref, RuntimeError> {
        if scope.contains(&name) {
            return Ok(Ref::Local(self.syms.intern(name)));
        }
        if let Some(&g) = self.globals.get(name) {
            return Ok(Ref::Global(g));
        }
        Builtin::from_name(name)
            .map(Ref::Builtin)
            .ok_or_else(|| RuntimeError::UnboundName {
                name: name.to_string(),
            })
    }

    fn expr<'a>(&mut self, e: &'a Expr, scope: &mut Vec<&'a str>) -> Result<CExpr, RuntimeError> {
        Ok(match e {
            Expr::Var(x) => CExpr::Ref(self.resolve(x, scope)?),
            Expr::Int(n) => CExpr::Int(*n),
            Expr::Hole => CExpr::Hole,
            Expr::Call { callee, args, .. } => CExpr::Call {
                callee: self.resolve(callee, scope)?,
                args: self.exprs(args, scope)?,
            },
            Expr::Constr { tag, args } => CExpr::Constr {
                tag: self.tag(tag),
                args: self.exprs(args, scope)?,
            },
            Expr::Let {
                binder,
                bound,
                body,
            } => {
                let bound = self.expr(bound, scope)?;
                scope.push(binder);
                let body = self.expr(body, scope);
                scope.pop();
                CExpr::Let {
                    binder: self.syms.intern(binder),
                    bound: Box::new(bound),
                    body: Box::new(body?),
                }
            }
            Expr::Seq(a, b) => CExpr::Seq(
                Box::new(self.expr(a, scope)?),
                Box::new(self.expr(b, scope)?),
            ),
            Expr::Match { scrutinee, clauses } => {
                let scrutinee = Box::new(self.expr(scrutinee, scope)?);
                let mut out = Vec::with_capacity(clauses.len());
                for c in clauses {
                    let mark = scope.len();
                    scope.extend(c.pattern.binders());
                    let body = self.expr(&c.body, scope);
                    scope.truncate(mark);
                    out.push((self.pattern(&c.pattern), body?));
                }
                CExpr::Match {
                    scrutinee,
                    clauses: out,
                }
            }
            Expr::SetRef { dest, index, value } => CExpr::SetRef {
                dest: Box::new(self.expr(dest, scope)?),
                index: Box::new(self.expr(index, scope)?),
                value: Box::new(self.expr(value, scope)?),
            },
            Expr::Letrec { group, body } => {
                let gid = self.groups.len();
                self.groups.push(Vec::new());
                let mark = scope.len();
                scope.extend(group.iter().map(|f| f.name.as_str()));
                for f in group {
                    let inner = scope.len();
                    scope.extend(f.params.iter().map(String::as_str));
                    let body = self.expr(&f.body, scope);
                    scope.truncate(inner);
                    let body = body?;
                    let idx = self.funs.len();
                    let sym = self.syms.intern(&f.name);
                    let params = f.params.iter().map(|x| self.syms.intern(x)).collect();
                    self.funs.push(CFun {
                        name: Rc::from(f.name.as_str()),
                        sym,
                        params,
                        body,
                        group: Some(gid),
                    });
                    self.groups[gid].push(idx);
                }
                let body = self.expr(body, scope);
                scope.truncate(mark);
                CExpr::Letrec {
                    group: gid,
                    body: Box::new(body?),
                }
            }
        })
    }

    fn exprs<'a>(
        &mut self,
        es: &'a [Expr],
        scope: &mut Vec<&'a str>,
    ) -> Result<Vec<CExpr>, RuntimeError> {
        es.iter().map(|e| self.expr(e, scope)).collect()
    }

    fn pattern(&mut self, p: &Pattern) -> CPat {
        match p {
            Pattern::Var(x) => CPat::Var(self.syms.intern(x)),
            Pattern::Wild => CPat::Wild,
            Pattern::Int(n) => CPat::Int(*n),
            Pattern::Constr(tag, subs) => CPat::Constr(
                self.tag(tag),
                subs.iter().map(|s| self.pattern(s)).collect(),
            ),
        }
    }
}
