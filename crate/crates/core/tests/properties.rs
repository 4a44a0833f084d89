mod common;

use proptest::prelude::*;

use common::strategies::{expr, program};
use tmc_forge::analysis::{decompose_all, resolve_scope};
use tmc_forge::ir::{plug, well_formed, HoleKind};
use tmc_forge::parser::{parse_expr, print_expr};
use tmc_forge::{parse_program, print_program, Expr, NodePath};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_programs_are_well_formed(p in program()) {
        prop_assert_eq!(well_formed(&p), vec![]);
    }

    #[test]
    fn parse_after_print_is_identity(p in program()) {
        let text = print_program(&p);
        prop_assert_eq!(parse_program(&text).unwrap(), p);
    }

    #[test]
    fn printing_is_idempotent(p in program()) {
        let once = print_program(&parse_program(&print_program(&p)).unwrap());
        let twice = print_program(&parse_program(&once).unwrap());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn expression_round_trip(e in expr()) {
        prop_assert_eq!(parse_expr(&print_expr(&e)).unwrap(), e);
    }

    #[test]
    fn plug_inverts_decompose(p in program()) {
        let scope = resolve_scope(&p);
        for r in decompose_all(&p, &scope) {
            if let Ok(d) = r.result {
                prop_assert_eq!(&plug(&d).unwrap(), p.at(&r.root).unwrap());
            }
        }
    }

    #[test]
    fn strict_holes_sit_under_a_constructor(p in program()) {
        let scope = resolve_scope(&p);
        for r in decompose_all(&p, &scope) {
            let Ok(d) = r.result else { continue };
            for h in &d.holes {
                let under_constr = (r.root.steps.len()..h.path.steps.len()).any(|n| {
                    let prefix = NodePath { root: h.path.root, steps: h.path.steps[..n].to_vec() };
                    matches!(p.at(&prefix), Some(Expr::Constr { .. }))
                });
                prop_assert_eq!(h.kind == HoleKind::StrictModCons, under_constr);
                prop_assert_eq!(p.at(&h.path), Some(&h.expr));
            }
        }
    }

    #[test]
    fn well_formed_is_idempotent(p in program(), bad in any::<bool>()) {
        let mut p = p;
        if bad {
            // An unbound variable and a misplaced hole.
            p.main = Expr::seq(Expr::var("zz"), Expr::let_("q", Expr::Hole, Expr::Int(0)));
        }
        let before = p.clone();
        let first = well_formed(&p);
        prop_assert_eq!(&first, &well_formed(&p));
        prop_assert_eq!(first.is_empty(), !bad);
        prop_assert_eq!(p, before);
    }
}
