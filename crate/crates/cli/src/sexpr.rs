//! S-expression reader and printer with source positions.

use std::fmt;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {msg}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub msg: String,
}

impl SyntaxError {
    pub fn new(pos: Pos, msg: impl Into<String>) -> Self {
        SyntaxError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Symbol(String),
    Str(String),
    List(Vec<Sexp>),
}

/// A node and the position of its first character. Built nodes have position `0:0`.
/// Equality ignores positions.
#[derive(Debug, Clone)]
pub struct Sexp {
    pub pos: Pos,
    pub kind: Kind,
}

impl PartialEq for Sexp {
    fn eq(&self, other: &Sexp) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Sexp {}

impl Sexp {
    pub fn sym(s: impl Into<String>) -> Sexp {
        Sexp { pos: Pos::default(), kind: Kind::Symbol(s.into()) }
    }

    pub fn string(s: impl Into<String>) -> Sexp {
        Sexp { pos: Pos::default(), kind: Kind::Str(s.into()) }
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp { pos: Pos::default(), kind: Kind::List(items) }
    }

    /// `(head items…)`.
    pub fn tagged(head: &str, items: impl IntoIterator<Item = Sexp>) -> Sexp {
        Sexp::list(std::iter::once(Sexp::sym(head)).chain(items).collect())
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match &self.kind {
            Kind::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match &self.kind {
            Kind::List(items) => Some(items),
            _ => None,
        }
    }

    /// The head symbol and the remaining items of a list.
    pub fn head(&self) -> Option<(&str, &[Sexp])> {
        let items = self.as_list()?;
        let (first, rest) = items.split_first()?;
        Some((first.as_symbol()?, rest))
    }

    pub fn error(&self, msg: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.pos, msg)
    }

    fn flat(&self, out: &mut String) {
        match &self.kind {
            Kind::Symbol(s) => out.push_str(s),
            Kind::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    if c == '"' || c == '\\' {
                        out.push('\\');
                    }
                    out.push(c);
                }
                out.push('"');
            }
            Kind::List(items) => {
                out.push('(');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    x.flat(out);
                }
                out.push(')');
            }
        }
    }

    fn pretty(&self, indent: usize, out: &mut String) {
        let mut line = String::new();
        self.flat(&mut line);
        let items = match &self.kind {
            Kind::List(items) if indent + line.len() > WIDTH && items.len() > 1 => items,
            _ => {
                out.push_str(&line);
                return;
            }
        };
        out.push('(');
        items[0].pretty(indent + 1, out);
        for x in &items[1..] {
            out.push('\n');
            out.push_str(&" ".repeat(indent + 2));
            x.pretty(indent + 2, out);
        }
        out.push(')');
    }
}

const WIDTH: usize = 100;

impl fmt::Display for Sexp {
    /// One line when it fits in 100 columns, otherwise one child per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.pretty(0, &mut out);
        f.write_str(&out)
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, SyntaxError> {
        self.skip_blank();
        let start = self.pos;
        match self.chars.peek().copied() {
            None => Err(SyntaxError::new(start, "unexpected end of input")),
            Some(')') => Err(SyntaxError::new(start, "unexpected `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        None => return Err(SyntaxError::new(start, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp { pos: start, kind: Kind::List(items) });
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(SyntaxError::new(start, "unterminated string")),
                        Some('"') => return Ok(Sexp { pos: start, kind: Kind::Str(s) }),
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => s.push(c),
                            Some('n') => s.push('\n'),
                            _ => return Err(SyntaxError::new(self.pos, "bad escape in string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Sexp { pos: start, kind: Kind::Symbol(s) })
            }
        }
    }
}

/// Every top-level expression of `text`.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, SyntaxError> {
    let mut r = Reader { chars: text.chars().peekable(), pos: Pos { line: 1, col: 1 } };
    let mut out = Vec::new();
    loop {
        r.skip_blank();
        if r.chars.peek().is_none() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

/// Exactly one expression.
pub fn parse_one(text: &str) -> Result<Sexp, SyntaxError> {
    let mut all = parse_all(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(SyntaxError::new(Pos { line: 1, col: 1 }, "expected an expression")),
        _ => Err(all[1].error("expected a single expression")),
    }
}
