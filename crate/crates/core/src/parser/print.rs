//! Canonical pretty printer. The layout is a pure function of the tree, so
//! printed programs are byte-stable and suitable for golden files.

use crate::ir::{Clause, Expr, FunDef, Pattern, Program};

const WIDTH: usize = 80;

pub fn print_program(p: &Program) -> String {
    let mut out = String::from("(program");
    for group in &p.groups {
        out.push_str("\n  (letrec");
        for f in group {
            out.push_str("\n    ");
            fundef(&mut out, f, 4);
        }
        out.push(')');
    }
    out.push_str("\n  (main");
    let flat = flat(&p.main);
    if is_simple(&p.main) && 2 + "(main ".len() + flat.len() < WIDTH {
        out.push(' ');
        out.push_str(&flat);
    } else {
        out.push_str("\n    ");
        expr(&mut out, &p.main, 4);
    }
    out.push_str("))");
    out
}

pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    expr(&mut out, e, 0);
    out
}

fn newline(out: &mut String, indent: usize) {
    out.push('\n');
    out.extend(std::iter::repeat_n(' ', indent));
}

fn column(out: &str) -> usize {
    out.len() - out.rfind('\n').map_or(0, |i| i + 1)
}

fn fundef(out: &mut String, f: &FunDef, indent: usize) {
    out.push_str("(fun ");
    if f.attrs.tail_mod_cons {
        out.push_str("(@ tail_mod_cons) ");
    }
    out.push_str(&f.name);
    out.push_str(" (");
    out.push_str(&f.params.join(" "));
    out.push(')');
    newline(out, indent + 2);
    expr(out, &f.body, indent + 2);
    out.push(')');
}

/// No binding or branching construct anywhere inside.
fn is_simple(e: &Expr) -> bool {
    match e {
        Expr::Let { .. } | Expr::Seq(..) | Expr::Match { .. } | Expr::Letrec { .. } => false,
        _ => e.children().into_iter().all(is_simple),
    }
}

/// Print `e` inline if it is simple and fits, otherwise break it at `indent`.
fn inline_or_break(out: &mut String, e: &Expr, indent: usize) {
    let f = flat(e);
    if is_simple(e) && column(out) + 1 + f.len() <= WIDTH {
        out.push(' ');
        out.push_str(&f);
    } else {
        newline(out, indent);
        expr(out, e, indent);
    }
}

fn expr(out: &mut String, e: &Expr, indent: usize) {
    if is_simple(e) {
        let f = flat(e);
        if column(out) + f.len() <= WIDTH {
            out.push_str(&f);
            return;
        }
    }
    let inner = indent + 2;
    match e {
        Expr::Let {
            binder,
            bound,
            body,
        } => {
            out.push_str("(let ");
            out.push_str(binder);
            inline_or_break(out, bound, inner);
            newline(out, inner);
            expr(out, body, inner);
        }
        Expr::Seq(a, b) => {
            out.push_str("(seq");
            newline(out, inner);
            expr(out, a, inner);
            newline(out, inner);
            expr(out, b, inner);
        }
        Expr::Match { scrutinee, clauses } => {
            out.push_str("(match");
            inline_or_break(out, scrutinee, inner);
            for c in clauses {
                newline(out, inner);
                clause(out, c, inner);
            }
        }
        Expr::Letrec { group, body } => {
            out.push_str("(letrec");
            for f in group {
                newline(out, inner);
                fundef(out, f, inner);
            }
            newline(out, inner);
            expr(out, body, inner);
        }
        Expr::Call {
            callee,
            args,
            attrs,
        } => {
            out.push_str("(call ");
            if attrs.tailcall {
                out.push_str("(@ tailcall) ");
            }
            out.push_str(callee);
            for a in args {
                newline(out, inner);
                expr(out, a, inner);
            }
        }
        Expr::Constr { tag, args } => {
            out.push_str("(constr ");
            out.push_str(tag);
            for a in args {
                newline(out, inner);
                expr(out, a, inner);
            }
        }
        Expr::SetRef { dest, index, value } => {
            out.push_str("(setref");
            for a in [dest, index, value] {
                newline(out, inner);
                expr(out, a, inner);
            }
        }
        Expr::Var(_) | Expr::Int(_) | Expr::Hole => {
            // Atoms that did not fit still go on one line.
            out.push_str(&flat(e));
            return;
        }
    }
    out.push(')');
}

fn clause(out: &mut String, c: &Clause, indent: usize) {
    let pat = pattern(&c.pattern);
    let body = flat(&c.body);
    if is_simple(&c.body) && column(out) + "(case  )".len() + pat.len() + body.len() <= WIDTH {
        out.push_str(&format!("(case {pat} {body})"));
        return;
    }
    out.push_str("(case ");
    out.push_str(&pat);
    newline(out, indent + 2);
    expr(out, &c.body, indent + 2);
    out.push(')');
}

fn pattern(p: &Pattern) -> String {
    match p {
        Pattern::Var(x) => x.clone(),
        Pattern::Wild => "_".into(),
        Pattern::Int(n) => n.to_string(),
        Pattern::Constr(tag, subs) => {
            let mut s = format!("({tag}");
            for sp in subs {
                s.push(' ');
                s.push_str(&pattern(sp));
            }
            s.push(')');
            s
        }
    }
}

/// Single-line rendering of any expression.
fn flat(e: &Expr) -> String {
    match e {
        Expr::Var(x) => x.clone(),
        Expr::Int(n) => format!("(int {n})"),
        Expr::Hole => "(hole)".into(),
        Expr::Call {
            callee,
            args,
            attrs,
        } => {
            let mut s = String::from("(call ");
            if attrs.tailcall {
                s.push_str("(@ tailcall) ");
            }
            s.push_str(callee);
            for a in args {
                s.push(' ');
                s.push_str(&flat(a));
            }
            s.push(')');
            s
        }
        Expr::Constr { tag, args } => {
            let mut s = format!("(constr {tag}");
            for a in args {
                s.push(' ');
                s.push_str(&flat(a));
            }
            s.push(')');
            s
        }
        Expr::Let {
            binder,
            bound,
            body,
        } => format!("(let {binder} {} {})", flat(bound), flat(body)),
        Expr::Seq(a, b) => format!("(seq {} {})", flat(a), flat(b)),
        Expr::Match { scrutinee, clauses } => {
            let mut s = format!("(match {}", flat(scrutinee));
            for c in clauses {
                s.push_str(&format!(
                    " (case {} {})",
                    pattern(&c.pattern),
                    flat(&c.body)
                ));
            }
            s.push(')');
            s
        }
        Expr::SetRef { dest, index, value } => {
            format!("(setref {} {} {})", flat(dest), flat(index), flat(value))
        }
        Expr::Letrec { group, body } => {
            let mut s = String::from("(letrec");
            for f in group {
                s.push_str(" (fun ");
                if f.attrs.tail_mod_cons {
                    s.push_str("(@ tail_mod_cons) ");
                }
                s.push_str(&format!(
                    "{} ({}) {})",
                    f.name,
                    f.params.join(" "),
                    flat(&f.body)
                ));
            }
            s.push_str(&format!(" {})", flat(body)));
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    #[test]
    fn minimal_program_is_byte_exact() {
        let p = parse_program("(program (main 0))").unwrap();
        assert_eq!(print_program(&p), "(program\n  (main (int 0)))");
    }

    #[test]
    fn map_layout() {
        let src = "(program (letrec (fun (@ tail_mod_cons) map (f xs) (match xs (case (Nil) (constr Nil)) (case (Cons x xs) (let y (call f x) (constr Cons y (call map f xs))))))) (main 0))";
        let printed = print_program(&parse_program(src).unwrap());
        let expected = "\
(program
  (letrec
    (fun (@ tail_mod_cons) map (f xs)
      (match xs
        (case (Nil) (constr Nil))
        (case (Cons x xs)
          (let y (call f x)
            (constr Cons y (call map f xs)))))))
  (main (int 0)))";
        assert_eq!(printed, expected);
        assert_eq!(
            parse_program(&printed).unwrap(),
            parse_program(src).unwrap()
        );
    }

    #[test]
    fn long_calls_break_one_argument_per_line() {
        let long = "a_rather_long_variable_name";
        let src = format!("(program (main (call f {long} {long} {long} {long})))");
        let p = parse_program(&src).unwrap();
        let printed = print_program(&p);
        assert!(printed.lines().all(|l| l.len() <= WIDTH));
        assert_eq!(parse_program(&printed).unwrap(), p);
    }
}
