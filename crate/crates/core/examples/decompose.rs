//! Split the body of `map` into a TMC context and its holes.
use tmc_forge::analysis::{decompose_tmc, resolve_scope};
use tmc_forge::ir::plug;
use tmc_forge::parser::print_expr;
use tmc_forge::{parse_program, NodePath};

pub fn main() {
    let p = parse_program(include_str!("../corpus/map.tmc")).unwrap();
    let scope = resolve_scope(&p);
    let root = NodePath::fun(0, 0);
    let body = p.at(&root).unwrap();
    let d = decompose_tmc(body, &root, &scope).unwrap();

    for h in &d.holes {
        println!("{:?} at {}: {}", h.kind, h.path, print_expr(&h.expr));
    }
    assert_eq!(&plug(&d).unwrap(), body);
}
