//! Seeded input generation and argument literals.
//!
//! The generator is a 64-bit linear congruential generator with Knuth's
//! MMIX constants, so every input is reproducible on any platform.
//!
//! Generator specs:
//!
//! | spec               | value                                                   |
//! |--------------------|---------------------------------------------------------|
//! | `int`              | an integer in `0..100`                                  |
//! | `list:N`           | `N` integers in `0..1000`                               |
//! | `list:LO..HI`      | as above, length drawn from `LO..=HI`                   |
//! | `sortedlist:N`     | nondecreasing list (also takes `LO..HI`)                |
//! | `tree:D`           | `Leaf v` / `Node l r` tree of depth at most `D`         |
//! | `listlist:NxM`     | `N` lists of `M` integers                               |
//! | `cmmlike:N`        | chain of `N` `Clet`/`Csequence`/`Cifthenelse` nodes     |
//! | `cmmthen:N`        | `N` `Cifthenelse` nodes nested through the `then` branch |

use std::fmt;
use std::str::FromStr;

use crate::parser::sexp::{read_all, Sexp, SexpKind};
use crate::runtime::{Runtime, Store, Value};

const MUL: u64 = 6364136223846793005;
const INC: u64 = 1442695040888963407;

#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        let mut r = Lcg { state: seed };
        r.next_u64();
        r
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MUL).wrapping_add(INC);
        self.state
    }

    /// Uniform-ish in `0..n` from the high bits.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        (self.next_u64() >> 33) % n
    }

    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("bad generator spec `{0}`")]
    BadSpec(String),
    #[error("bad argument literal `{0}`")]
    BadLiteral(String),
    #[error("unknown function `{0}` in argument")]
    UnknownFunction(String),
}

/// Length of a generated collection: fixed or drawn from a range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Size {
    Exactly(u64),
    Between(u64, u64),
}

impl Size {
    fn draw(self, rng: &mut Lcg) -> u64 {
        match self {
            Size::Exactly(n) => n,
            Size::Between(lo, hi) => rng.range(lo, hi),
        }
    }
}

impl FromStr for Size {
    type Err = ();

    fn from_str(s: &str) -> Result<Size, ()> {
        match s.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (lo.parse().map_err(|_| ())?, hi.parse().map_err(|_| ())?);
                if lo > hi {
                    return Err(());
                }
                Ok(Size::Between(lo, hi))
            }
            None => s.parse().map(Size::Exactly).map_err(|_| ()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Int,
    List(Size),
    SortedList(Size),
    Tree(u32),
    ListList(u64, u64),
    CmmLike(u64),
    CmmThen(u64),
}

impl FromStr for GenSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<GenSpec, GenError> {
        let bad = || GenError::BadSpec(s.to_string());
        if s == "int" {
            return Ok(GenSpec::Int);
        }
        let (kind, param) = s.split_once(':').ok_or_else(bad)?;
        let size = || param.parse::<Size>().map_err(|_| bad());
        let count = || param.parse::<u64>().map_err(|_| bad());
        Ok(match kind {
            "list" => GenSpec::List(size()?),
            "sortedlist" => GenSpec::SortedList(size()?),
            "tree" => GenSpec::Tree(param.parse().map_err(|_| bad())?),
            "cmmlike" => GenSpec::CmmLike(count()?),
            "cmmthen" => GenSpec::CmmThen(count()?),
            "listlist" => {
                let (n, m) = param.split_once('x').ok_or_else(bad)?;
                GenSpec::ListList(n.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?)
            }
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size = |s: &Size| match s {
            Size::Exactly(n) => n.to_string(),
            Size::Between(lo, hi) => format!("{lo}..{hi}"),
        };
        match self {
            GenSpec::Int => write!(f, "int"),
            GenSpec::List(s) => write!(f, "list:{}", size(s)),
            GenSpec::SortedList(s) => write!(f, "sortedlist:{}", size(s)),
            GenSpec::Tree(d) => write!(f, "tree:{d}"),
            GenSpec::ListList(n, m) => write!(f, "listlist:{n}x{m}"),
            GenSpec::CmmLike(n) => write!(f, "cmmlike:{n}"),
            GenSpec::CmmThen(n) => write!(f, "cmmthen:{n}"),
        }
    }
}

fn int_list(store: &mut Store, xs: &[i64]) -> Value {
    let mut v = store.alloc_named("Nil", vec![]);
    for &x in xs.iter().rev() {
        v = store.alloc_named("Cons", vec![Value::Int(x), v]);
    }
    v
}

fn random_ints(rng: &mut Lcg, n: u64) -> Vec<i64> {
    (0..n).map(|_| rng.below(1000) as i64).collect()
}

/// Build a value for `spec` directly in `store`. Input construction is not
/// counted as allocation by the evaluator.
pub fn gen_value(spec: &GenSpec, rng: &mut Lcg, store: &mut Store) -> Value {
    match *spec {
        GenSpec::Int => Value::Int(rng.below(100) as i64),
        GenSpec::List(size) => {
            let n = size.draw(rng);
            let xs = random_ints(rng, n);
            int_list(store, &xs)
        }
        GenSpec::SortedList(size) => {
            let n = size.draw(rng);
            let mut xs = random_ints(rng, n);
            xs.sort_unstable();
            int_list(store, &xs)
        }
        GenSpec::Tree(depth) => tree(rng, store, depth),
        GenSpec::ListList(n, m) => {
            let lists: Vec<Value> = (0..n)
                .map(|_| {
                    let xs = random_ints(rng, m);
                    int_list(store, &xs)
                })
                .collect();
            let mut v = store.alloc_named("Nil", vec![]);
            for l in lists.into_iter().rev() {
                v = store.alloc_named("Cons", vec![l, v]);
            }
            v
        }
        GenSpec::CmmLike(n) => cmm_chain(rng, store, n),
        GenSpec::CmmThen(n) => {
            let mut v = cmm_leaf(rng, store);
            for _ in 0..n {
                let cond = cmm_leaf(rng, store);
                let ifnot = cmm_leaf(rng, store);
                v = store.alloc_named("Cifthenelse", vec![cond, v, ifnot]);
            }
            v
        }
    }
}

pub fn gen_value_seeded(spec: &GenSpec, seed: u64, store: &mut Store) -> Value {
    gen_value(spec, &mut Lcg::new(seed), store)
}

fn tree(rng: &mut Lcg, store: &mut Store, depth: u32) -> Value {
    if depth == 0 || rng.below(4) == 0 {
        let v = Value::Int(rng.below(1000) as i64);
        return store.alloc_named("Leaf", vec![v]);
    }
    let l = tree(rng, store, depth - 1);
    let r = tree(rng, store, depth - 1);
    store.alloc_named("Node", vec![l, r])
}

fn cmm_leaf(rng: &mut Lcg, store: &mut Store) -> Value {
    let n = Value::Int(rng.below(100) as i64);
    let tag = if rng.below(2) == 0 { "Cconst" } else { "Cvar" };
    store.alloc_named(tag, vec![n])
}

/// A chain deep in the tail direction: every node's tail-modulo-cons child
/// continues the chain, other children are leaves.
fn cmm_chain(rng: &mut Lcg, store: &mut Store, n: u64) -> Value {
    let kinds: Vec<u64> = (0..n).map(|_| rng.below(10)).collect();
    let mut v = if rng.below(2) == 0 {
        let code = Value::Int(rng.below(10) as i64);
        store.alloc_named("Cexit", vec![code])
    } else {
        cmm_leaf(rng, store)
    };
    for k in kinds.into_iter().rev() {
        v = match k {
            0..=4 => {
                let id = Value::Int(rng.below(1000) as i64);
                let exp = cmm_leaf(rng, store);
                store.alloc_named("Clet", vec![id, exp, v])
            }
            5..=8 => {
                let e1 = cmm_leaf(rng, store);
                store.alloc_named("Csequence", vec![e1, v])
            }
            _ => {
                let cond = cmm_leaf(rng, store);
                let ifso = cmm_leaf(rng, store);
                store.alloc_named("Cifthenelse", vec![cond, ifso, v])
            }
        };
    }
    v
}

/// A command-line argument: a generator or a literal value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArgSpec {
    Gen(GenSpec),
    Literal(Literal),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Int(i64),
    /// A toplevel function or builtin, written as a lowercase symbol.
    Fun(String),
    Block(String, Vec<Literal>),
}

impl FromStr for ArgSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<ArgSpec, GenError> {
        let s = s.trim();
        if s == "int" || (s.contains(':') && !s.starts_with('(')) {
            return s.parse().map(ArgSpec::Gen);
        }
        let bad = || GenError::BadLiteral(s.to_string());
        let forms = read_all(s).map_err(|_| bad())?;
        match forms.as_slice() {
            [one] => literal(one).map(ArgSpec::Literal).ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

fn literal(s: &Sexp) -> Option<Literal> {
    match &s.kind {
        SexpKind::Int(n) => Some(Literal::Int(*n)),
        SexpKind::Sym(x) if x.starts_with(|c: char| c.is_ascii_uppercase()) => {
            Some(Literal::Block(x.clone(), Vec::new()))
        }
        SexpKind::Sym(x) => Some(Literal::Fun(x.clone())),
        SexpKind::List(items) => {
            let (head, rest) = items.split_first()?;
            let tag = head
                .as_sym()
                .filter(|t| t.starts_with(|c: char| c.is_ascii_uppercase()))?;
            let fields = rest.iter().map(literal).collect::<Option<Vec<_>>>()?;
            Some(Literal::Block(tag.to_string(), fields))
        }
    }
}

impl ArgSpec {
    /// Materialize the argument in `rt`'s store.
    pub fn load(&self, rng: &mut Lcg, rt: &mut Runtime) -> Result<Value, GenError> {
        match self {
            ArgSpec::Gen(g) => Ok(gen_value(g, rng, &mut rt.store)),
            ArgSpec::Literal(l) => load_literal(l, rt),
        }
    }

    /// Replace the placeholder size `N` (as in `list:N`) by `n`.
    pub fn with_size(template: &str, n: u64) -> Result<ArgSpec, GenError> {
        let replaced = match template.split_once(':') {
            Some((kind, param)) => format!("{kind}:{}", param.replace('N', &n.to_string())),
            None => template.to_string(),
        };
        replaced.parse()
    }
}

fn load_literal(l: &Literal, rt: &mut Runtime) -> Result<Value, GenError> {
    Ok(match l {
        Literal::Int(n) => Value::Int(*n),
        Literal::Fun(f) => rt
            .function(f)
            .ok_or_else(|| GenError::UnknownFunction(f.clone()))?,
        Literal::Block(tag, fields) => {
            let fields = fields
                .iter()
                .map(|f| load_literal(f, rt))
                .collect::<Result<Vec<_>, _>>()?;
            rt.store.alloc_named(tag, fields)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(spec: &str, seed: u64) -> String {
        let mut s = Store::new();
        let v = gen_value_seeded(&spec.parse().unwrap(), seed, &mut s);
        s.render(&v)
    }

    #[test]
    fn lcg_is_the_mmix_generator() {
        let mut r = Lcg { state: 0 };
        assert_eq!(r.next_u64(), 1442695040888963407);
        assert_eq!(
            r.next_u64(),
            1442695040888963407u64.wrapping_mul(MUL).wrapping_add(INC)
        );
    }

    #[test]
    fn empty_list() {
        assert_eq!(render("list:0", 1), "Nil");
    }

    #[test]
    fn list_is_stable() {
        assert_eq!(render("list:3", 7), render("list:3", 7));
        assert_eq!(render("list:3", 7), "(Cons 231 (Cons 753 (Cons 673 Nil)))");
    }

    #[test]
    fn sorted_lists_are_sorted() {
        for seed in 0..20 {
            let mut s = Store::new();
            let mut v = gen_value_seeded(&"sortedlist:5".parse().unwrap(), seed, &mut s);
            let mut prev = i64::MIN;
            let mut len = 0;
            while let Value::Block(b) = v {
                let block = s.get(b);
                if block.fields.is_empty() {
                    break;
                }
                let x = block.fields[0].as_int().unwrap();
                assert!(prev <= x);
                prev = x;
                len += 1;
                v = block.fields[1].clone();
            }
            assert_eq!(len, 5);
        }
    }

    #[test]
    fn specs_round_trip() {
        for s in [
            "int",
            "list:4",
            "list:0..9",
            "sortedlist:2..3",
            "tree:4",
            "listlist:3x2",
            "cmmlike:10",
            "cmmthen:5",
        ] {
            assert_eq!(s.parse::<GenSpec>().unwrap().to_string(), s);
        }
        assert!("list:x".parse::<GenSpec>().is_err());
        assert!("list:5..2".parse::<GenSpec>().is_err());
        assert!("heap:3".parse::<GenSpec>().is_err());
    }

    #[test]
    fn literals() {
        assert_eq!(
            "5".parse::<ArgSpec>().unwrap(),
            ArgSpec::Literal(Literal::Int(5))
        );
        assert_eq!(
            "add1".parse::<ArgSpec>().unwrap(),
            ArgSpec::Literal(Literal::Fun("add1".into()))
        );
        assert_eq!(
            "(Cons 1 Nil)".parse::<ArgSpec>().unwrap(),
            ArgSpec::Literal(Literal::Block(
                "Cons".into(),
                vec![Literal::Int(1), Literal::Block("Nil".into(), vec![])]
            ))
        );
        assert!("(cons 1)".parse::<ArgSpec>().is_err());
        assert_eq!(
            ArgSpec::with_size("list:N", 100).unwrap(),
            ArgSpec::Gen(GenSpec::List(Size::Exactly(100)))
        );
        assert_eq!(
            ArgSpec::with_size("listlist:Nx10", 7).unwrap(),
            ArgSpec::Gen(GenSpec::ListList(7, 10))
        );
    }

    #[test]
    fn cmm_chain_has_requested_length() {
        let mut s = Store::new();
        let v = gen_value_seeded(&GenSpec::CmmLike(50), 3, &mut s);
        let mut depth = 0;
        let mut cur = v;
        loop {
            let b = s.get(cur.as_block().unwrap());
            let next = match &*b.tag {
                "Clet" | "Cifthenelse" => b.fields[2].clone(),
                "Csequence" => b.fields[1].clone(),
                _ => break,
            };
            depth += 1;
            cur = next;
        }
        assert_eq!(depth, 50);
    }
}
