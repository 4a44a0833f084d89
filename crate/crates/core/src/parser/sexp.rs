//! Span-tracking s-expression reader.

use super::{ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SexpKind {
    Sym(String),
    Int(i64),
    List(Vec<Sexp>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sexp {
    pub kind: SexpKind,
    pub span: SourceSpan,
}

impl Sexp {
    pub fn as_sym(&self) -> Option<&str> {
        match &self.kind {
            SexpKind::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match &self.kind {
            SexpKind::List(items) => Some(items),
            _ => None,
        }
    }

    /// The head symbol of a list form, if any.
    pub fn head(&self) -> Option<&str> {
        self.as_list()
            .and_then(|l| l.first())
            .and_then(Sexp::as_sym)
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            SexpKind::Sym(s) => format!("symbol `{s}`"),
            SexpKind::Int(n) => format!("integer {n}"),
            SexpKind::List(items) => match items.first().and_then(Sexp::as_sym) {
                Some(h) => format!("`({h} ...)` form"),
                None => "list".to_string(),
            },
        }
    }
}

struct Reader<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

/// Read every top-level s-expression in `text`.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut r = Reader {
        text,
        bytes: text.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.pos >= r.bytes.len() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

impl Reader<'_> {
    fn here(&self) -> SourceSpan {
        SourceSpan {
            byte_start: self.pos,
            byte_end: self.pos,
            line: self.line,
            column: self.col,
        }
    }

    fn bump(&mut self) {
        let ch = self.text[self.pos..].chars().next().expect("not at end");
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
    }

    fn skip_trivia(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b';' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.bump();
                    }
                }
                c if c.is_ascii_whitespace() => self.bump(),
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        let start = self.here();
        match self.bytes[self.pos] {
            b'(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    if self.pos >= self.bytes.len() {
                        return Err(ParseError::new(
                            self.here(),
                            "unexpected end of input: unclosed `(`",
                            vec!["`)`".into()],
                        ));
                    }
                    if self.bytes[self.pos] == b')' {
                        self.bump();
                        break;
                    }
                    items.push(self.read()?);
                }
                Ok(Sexp {
                    kind: SexpKind::List(items),
                    span: SourceSpan {
                        byte_end: self.pos,
                        ..start
                    },
                })
            }
            b')' => {
                let mut span = start;
                span.byte_end = span.byte_start + 1;
                Err(ParseError::new(
                    span,
                    "unexpected `)`",
                    vec!["`(`".into(), "atom".into()],
                ))
            }
            _ => {
                while self.pos < self.bytes.len() {
                    let c = self.bytes[self.pos];
                    if c.is_ascii_whitespace() || c == b'(' || c == b')' || c == b';' {
                        break;
                    }
                    self.bump();
                }
                let span = SourceSpan {
                    byte_end: self.pos,
                    ..start
                };
                let tok = &self.text[span.byte_start..span.byte_end];
                Ok(Sexp {
                    kind: atom(tok, span)?,
                    span,
                })
            }
        }
    }
}

fn atom(tok: &str, span: SourceSpan) -> Result<SexpKind, ParseError> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        return tok.parse::<i64>().map(SexpKind::Int).map_err(|_| {
            ParseError::new(
                span,
                format!("integer literal `{tok}` out of range"),
                vec![],
            )
        });
    }
    Ok(SexpKind::Sym(tok.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_spans() {
        let s = read_all("(a (b 12) -3)").unwrap();
        assert_eq!(s.len(), 1);
        let items = s[0].as_list().unwrap();
        assert_eq!(items[0].as_sym(), Some("a"));
        assert_eq!(items[1].span.byte_start, 3);
        assert_eq!(items[1].span.byte_end, 9);
        assert_eq!(items[2].kind, SexpKind::Int(-3));
    }

    #[test]
    fn comments_and_lines() {
        let s = read_all("; header\n  (x)\n").unwrap();
        assert_eq!(s[0].span.line, 2);
        assert_eq!(s[0].span.column, 3);
    }

    #[test]
    fn unclosed_list_points_at_end() {
        let text = "(a (b)";
        let err = read_all(text).unwrap_err();
        assert_eq!(err.span.byte_start, text.len());
        assert_eq!(err.expected, vec!["`)`".to_string()]);
    }

    #[test]
    fn lone_minus_is_a_symbol() {
        let s = read_all("-").unwrap();
        assert_eq!(s[0].as_sym(), Some("-"));
    }
}
