//! Random programs over a fixed vocabulary: parameters `a` and `b`, a
//! marked `f` of two arguments, an unmarked `g` of one, and builtins.

use proptest::prelude::*;

use tmc_forge::ir::{CallAttrs, Clause, FunAttrs};
use tmc_forge::{Expr, FunDef, Pattern, Program};

const VARS: &[&str] = &["a", "b"];
const TAGS: &[&str] = &["Nil", "Cons", "Leaf", "Node"];

fn var() -> impl Strategy<Value = String> {
    prop::sample::select(VARS).prop_map(String::from)
}

fn pattern() -> impl Strategy<Value = Pattern> {
    prop_oneof![
        Just(Pattern::Wild),
        var().prop_map(Pattern::Var),
        (-5i64..5).prop_map(Pattern::Int),
        (prop::sample::select(TAGS), 0usize..3).prop_map(|(t, n)| {
            // Binders within one pattern are distinct: use each name at most once.
            let subs = (0..n)
                .map(|i| match VARS.get(i) {
                    Some(v) if i % 2 == 0 => Pattern::Var(v.to_string()),
                    _ => Pattern::Wild,
                })
                .collect();
            Pattern::Constr(t.to_string(), subs)
        }),
    ]
}

pub fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![var().prop_map(Expr::Var), (-20i64..20).prop_map(Expr::Int)];
    leaf.prop_recursive(5, 48, 4, |inner| {
        prop_oneof![
            (any::<bool>(), inner.clone(), inner.clone()).prop_map(|(tc, x, y)| Expr::Call {
                callee: "f".into(),
                args: vec![x, y],
                attrs: CallAttrs { tailcall: tc },
            }),
            inner.clone().prop_map(|x| Expr::call("g", vec![x])),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::call("add", vec![x, y])),
            (var(), inner.clone(), inner.clone()).prop_map(|(v, x, y)| Expr::let_(v, x, y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::seq(x, y)),
            (
                prop::sample::select(TAGS),
                prop::collection::vec(inner.clone(), 0..3)
            )
                .prop_map(|(t, args)| Expr::constr(t, args)),
            (
                inner.clone(),
                prop::collection::vec((pattern(), inner.clone()), 1..3)
            )
                .prop_map(|(s, cs)| {
                    Expr::Match {
                        scrutinee: Box::new(s),
                        clauses: cs
                            .into_iter()
                            .map(|(pattern, body)| Clause { pattern, body })
                            .collect(),
                    }
                }),
        ]
    })
}

/// Mostly atoms, so that generated programs often run to completion.
fn sibling() -> impl Strategy<Value = Expr> {
    prop_oneof![
        3 => var().prop_map(Expr::Var),
        3 => (-20i64..20).prop_map(Expr::Int),
        1 => expr(),
    ]
}

/// A recursive call to `f` on `a - 1` wrapped in one or two constructors, with
/// arbitrary siblings.
fn tmc_spine() -> impl Strategy<Value = Expr> {
    (
        sibling(),
        sibling(),
        sibling(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(x, y, z, twice, right)| {
            let call = Expr::call(
                "f",
                vec![Expr::call("sub", vec![Expr::var("a"), Expr::Int(1)]), z],
            );
            let inner = if twice {
                Expr::constr("Cons", vec![y, call])
            } else {
                call
            };
            let args = if right {
                vec![inner, x]
            } else {
                vec![x, inner]
            };
            Expr::constr("Node", args)
        })
}

fn fun_body() -> impl Strategy<Value = Expr> {
    prop_oneof![
        expr(),
        (sibling(), tmc_spine()).prop_map(|(base, step)| Expr::Match {
            scrutinee: Box::new(Expr::var("a")),
            clauses: vec![
                Clause {
                    pattern: Pattern::Int(0),
                    body: base,
                },
                Clause {
                    pattern: Pattern::Wild,
                    body: step,
                },
            ],
        }),
        (var(), expr(), tmc_spine()).prop_map(|(v, bound, body)| Expr::let_(v, bound, body)),
    ]
}

fn main_body() -> impl Strategy<Value = Expr> {
    prop_oneof![
        expr(),
        (0i64..6, sibling()).prop_map(|(n, e)| Expr::call("f", vec![Expr::Int(n), e])),
    ]
}

pub fn program() -> impl Strategy<Value = Program> {
    (fun_body(), expr(), main_body()).prop_map(|(fb, gb, main)| Program {
        groups: vec![
            vec![FunDef {
                name: "g".into(),
                params: vec!["a".into()],
                body: Expr::let_("b", Expr::Int(0), gb),
                attrs: FunAttrs::default(),
            }],
            vec![FunDef {
                name: "f".into(),
                params: vec!["a".into(), "b".into()],
                body: fb,
                attrs: FunAttrs {
                    tail_mod_cons: true,
                },
            }],
        ],
        main: Expr::let_("a", Expr::Int(1), Expr::let_("b", Expr::Int(2), main)),
    })
}
