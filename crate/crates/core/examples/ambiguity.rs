//! Two recursive calls under one constructor need a `(@ tailcall)` hint.
use tmc_forge::parse_program;
use tmc_forge::parser::parse_program_with_spans;
use tmc_forge::transform::transform_program;

pub fn main() {
    let file = "tree_map_ambiguous.tmc";
    let (p, spans) =
        parse_program_with_spans(include_str!("../corpus/tree_map_ambiguous.tmc")).unwrap();
    match transform_program(&p) {
        Ok(_) => unreachable!("the unannotated tree map is ambiguous"),
        Err(ds) => {
            for d in ds {
                println!("{}", d.render(file, Some(&spans)));
            }
        }
    }

    let annotated = parse_program(include_str!("../corpus/tree_map_annotated.tmc")).unwrap();
    let out = transform_program(&annotated).unwrap();
    println!(
        "annotated version: {} functions",
        out.program.functions().count()
    );
}
