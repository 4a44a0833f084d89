//! Tail-modulo-cons (TMC) transformation for a small first-order language.
//!
//! Functions marked `(@ tail_mod_cons)` get a destination-passing companion
//! `f_dps` that writes its result into a caller-provided `(block, field)`
//! destination. Recursive calls that sit under constructors become tail
//! calls to the companion, so functions like `map` run in constant stack.
//!
//! The pipeline is [`parser`] → [`analysis`] → [`transform`], and the
//! instrumented evaluator in [`runtime`] checks that the output behaves like
//! the input while counting frames, allocations and destination writes.

pub mod analysis;
pub mod cli;
pub mod diagnostic;
pub mod gen;
pub mod harness;
pub mod ir;
pub mod parser;
pub mod runtime;
pub mod transform;

pub use diagnostic::{Code, Diagnostic, Severity};
pub use ir::{Expr, FunDef, NodePath, Pattern, Program};
pub use parser::{parse_program, print_program, ParseError};
