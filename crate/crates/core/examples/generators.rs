//! Seeded input generators.
use tmc_forge::gen::{gen_value_seeded, GenSpec};
use tmc_forge::runtime::Store;

pub fn main() {
    for spec in [
        "int",
        "list:5",
        "sortedlist:5",
        "tree:3",
        "listlist:2x3",
        "cmmlike:4",
        "cmmthen:2",
    ] {
        let spec: GenSpec = spec.parse().unwrap();
        let mut store = Store::new();
        let v = gen_value_seeded(&spec, 7, &mut store);
        println!("{:<14} {}", spec.to_string(), store.render(&v));
    }
}
