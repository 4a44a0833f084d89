//! Values and the mutable block heap.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

use super::compile::Sym;
use super::RuntimeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId(pub usize);

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Add,
    Sub,
    Leq,
    Eq,
    Print,
    Add1,
}

impl Builtin {
    pub fn from_name(name: &str) -> Option<Builtin> {
        Some(match name {
            "add" => Builtin::Add,
            "sub" => Builtin::Sub,
            "leq" => Builtin::Leq,
            "eq" => Builtin::Eq,
            "print" => Builtin::Print,
            "add1" => Builtin::Add1,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Add => "add",
            Builtin::Sub => "sub",
            Builtin::Leq => "leq",
            Builtin::Eq => "eq",
            Builtin::Print => "print",
            Builtin::Add1 => "add1",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::Print | Builtin::Add1 => 1,
            _ => 2,
        }
    }
}

/// Persistent environment: a shared linked list of bindings.
#[derive(Clone, Default)]
pub struct Env(Option<Rc<EnvNode>>);

struct EnvNode {
    sym: Sym,
    val: Value,
    next: Env,
}

impl Env {
    pub fn bind(&self, sym: Sym, val: Value) -> Env {
        Env(Some(Rc::new(EnvNode {
            sym,
            val,
            next: self.clone(),
        })))
    }

    pub fn lookup(&self, sym: Sym) -> Option<&Value> {
        let mut cur = &self.0;
        while let Some(node) = cur {
            if node.sym == sym {
                return Some(&node.val);
            }
            cur = &node.next.0;
        }
        None
    }
}

impl fmt::Debug for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<env>")
    }
}

#[derive(Clone, Debug)]
pub(crate) enum FunTarget {
    Builtin(Builtin),
    Global(usize),
    Local { fun: usize, env: Env },
}

/// A first-class function: builtin, toplevel, or local closure.
#[derive(Clone, Debug)]
pub struct FunValue {
    pub name: Rc<str>,
    pub(crate) target: FunTarget,
}

#[derive(Clone, Debug)]
pub enum Value {
    Int(i64),
    Block(BlockId),
    Fun(FunValue),
    Hole,
}

impl Value {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_block(&self) -> Option<BlockId> {
        match self {
            Value::Block(b) => Some(*b),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub tag: Rc<str>,
    pub fields: Vec<Value>,
}

/// Block heap. Addresses start at 1 and are never reused.
#[derive(Debug, Default)]
pub struct Store {
    blocks: Vec<Block>,
    tags: HashMap<String, Rc<str>>,
}

impl Store {
    pub fn new() -> Store {
        Store::default()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn tag(&mut self, name: &str) -> Rc<str> {
        if let Some(t) = self.tags.get(name) {
            return t.clone();
        }
        let t: Rc<str> = Rc::from(name);
        self.tags.insert(name.to_string(), t.clone());
        t
    }

    pub fn alloc(&mut self, tag: Rc<str>, fields: Vec<Value>) -> BlockId {
        self.blocks.push(Block { tag, fields });
        BlockId(self.blocks.len())
    }

    pub fn alloc_named(&mut self, tag: &str, fields: Vec<Value>) -> Value {
        let t = self.tag(tag);
        Value::Block(self.alloc(t, fields))
    }

    pub fn get(&self, id: BlockId) -> &Block {
        &self.blocks[id.0 - 1]
    }

    /// Initializing write of field `index` (1-based). Only a hole may be
    /// overwritten.
    pub fn set_field(&mut self, id: BlockId, index: i64, v: Value) -> Result<(), RuntimeError> {
        let block = self
            .blocks
            .get_mut(id.0.wrapping_sub(1))
            .ok_or(RuntimeError::BadAddress { block: id.0 })?;
        let arity = block.fields.len();
        if index < 1 || index as usize > arity {
            return Err(RuntimeError::IndexOutOfRange {
                block: id.0,
                index,
                arity,
            });
        }
        let slot = &mut block.fields[index as usize - 1];
        if !matches!(slot, Value::Hole) {
            return Err(RuntimeError::NonHoleOverwrite { block: id.0, index });
        }
        *slot = v;
        Ok(())
    }

    /// Fail with the field path to the first hole reachable from `v`.
    pub fn assert_no_holes(&self, v: &Value) -> Result<(), RuntimeError> {
        let root = match v {
            Value::Hole => return Err(RuntimeError::HoleEscape { path: Vec::new() }),
            Value::Block(b) => *b,
            _ => return Ok(()),
        };
        let mut parent: HashMap<BlockId, (BlockId, usize)> = HashMap::new();
        let mut seen: HashSet<BlockId> = HashSet::from([root]);
        let mut stack = vec![root];
        while let Some(b) = stack.pop() {
            for (i, f) in self.get(b).fields.iter().enumerate() {
                match f {
                    Value::Hole => {
                        let mut path = vec![i + 1];
                        let mut cur = b;
                        while let Some(&(p, j)) = parent.get(&cur) {
                            path.push(j);
                            cur = p;
                        }
                        path.reverse();
                        return Err(RuntimeError::HoleEscape { path });
                    }
                    Value::Block(c) if seen.insert(*c) => {
                        parent.insert(*c, (b, i + 1));
                        stack.push(*c);
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Printed form, e.g. `(Cons 1 (Cons 2 Nil))`. Cycles print as `<cycle>`.
    pub fn render(&self, v: &Value) -> String {
        enum Work<'a> {
            Val(&'a Value),
            Close(BlockId),
            Text(&'static str),
        }
        let mut out = String::new();
        let mut on_path: HashSet<BlockId> = HashSet::new();
        let mut work = vec![Work::Val(v)];
        while let Some(w) = work.pop() {
            match w {
                Work::Text(t) => out.push_str(t),
                Work::Close(b) => {
                    on_path.remove(&b);
                    out.push(')');
                }
                Work::Val(Value::Int(n)) => out.push_str(&n.to_string()),
                Work::Val(Value::Hole) => out.push_str("Hole"),
                Work::Val(Value::Fun(f)) => {
                    out.push_str("<fun ");
                    out.push_str(&f.name);
                    out.push('>');
                }
                Work::Val(Value::Block(b)) => {
                    let block = self.get(*b);
                    if block.fields.is_empty() {
                        out.push_str(&block.tag);
                    } else if !on_path.insert(*b) {
                        out.push_str("<cycle>");
                    } else {
                        out.push('(');
                        out.push_str(&block.tag);
                        work.push(Work::Close(*b));
                        for f in block.fields.iter().rev() {
                            work.push(Work::Val(f));
                            work.push(Work::Text(" "));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Structural equality of values living in two (possibly equal) stores.
/// Cycles are compared by bisimulation.
pub fn struct_eq(s1: &Store, v1: &Value, s2: &Store, v2: &Value) -> bool {
    let mut seen: HashSet<(BlockId, BlockId)> = HashSet::new();
    let mut stack: Vec<(&Value, &Value)> = vec![(v1, v2)];
    while let Some((a, b)) = stack.pop() {
        match (a, b) {
            (Value::Int(x), Value::Int(y)) => {
                if x != y {
                    return false;
                }
            }
            (Value::Hole, Value::Hole) => {}
            (Value::Fun(f), Value::Fun(g)) => {
                if f.name != g.name {
                    return false;
                }
            }
            (Value::Block(x), Value::Block(y)) => {
                if !seen.insert((*x, *y)) {
                    continue;
                }
                let (bx, by) = (s1.get(*x), s2.get(*y));
                if bx.tag != by.tag || bx.fields.len() != by.fields.len() {
                    return false;
                }
                stack.extend(bx.fields.iter().zip(&by.fields));
            }
            _ => return false,
        }
    }
    true
}
