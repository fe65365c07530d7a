//! Text syntax for objects, move lists and graph files.
//!
//! Objects: `X1`, `I`, `(a*b)`, `F(w)`, `sh[w]`, `H[w]`. Parentheses may be
//! dropped around a tensor that fills a whole delimited region, so
//! `X1*X2`, `F(X1*X2)` and `sh[X1*X2]` are accepted.
//!
//! Moves: `assoc@L; sym~@L/R; rot:2; comp`, where `~` marks the inverse
//! direction (also accepted after the path) and paths are `/`-joined steps
//! from `L`, `R`, `in`.

use std::fmt;

use thiserror::Error;

use crate::expr::{Graph, ObjectExpr, Path, Step};
use crate::morph::{Direction, Move, MoveKind};

/// A syntax error with the character offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} at offset {}", self.message, self.offset)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.offset))
    }
}

struct Cursor<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor { input, chars: input.chars().collect(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { input: self.input.to_string(), offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => Err(self.error(format!("expected '{c}', found '{found}'"))),
                None => Err(self.error(format!("expected '{c}', found end of input"))),
            }
        }
    }

    fn eat_tensor(&mut self) -> bool {
        self.eat('*') || self.eat('⊗') || self.eat('⊙')
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(&c) = self.chars.get(self.pos) {
            let ok = if self.pos == start { c.is_alphabetic() || c == '_' } else { c.is_alphanumeric() || c == '_' || c == '\'' };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses an object expression.
pub fn parse_object(input: &str) -> Result<ObjectExpr, ParseError> {
    let mut cur = Cursor::new(input);
    let e = body(&mut cur)?;
    if !cur.at_end() {
        let c = cur.peek().unwrap();
        return Err(cur.error(format!("unexpected '{c}'")));
    }
    Ok(e)
}

/// A term, optionally followed by `* term`.
fn body(cur: &mut Cursor) -> Result<ObjectExpr, ParseError> {
    let a = term(cur)?;
    if cur.eat_tensor() {
        let b = term(cur)?;
        if matches!(cur.peek(), Some('*' | '⊗' | '⊙')) {
            return Err(cur.error("ambiguous tensor: add parentheses"));
        }
        return Ok(ObjectExpr::tensor(a, b));
    }
    Ok(a)
}

fn term(cur: &mut Cursor) -> Result<ObjectExpr, ParseError> {
    match cur.peek() {
        None => Err(cur.error("expected a term, found end of input")),
        Some('(') => {
            cur.pos += 1;
            let inner = body(cur)?;
            cur.expect(')')?;
            Ok(inner)
        }
        Some('⟨') => {
            cur.pos += 1;
            let inner = body(cur)?;
            cur.expect('⟩')?;
            Ok(ObjectExpr::shadow(inner))
        }
        Some(c) if c.is_alphabetic() || c == '_' => {
            let name = cur.ident().unwrap();
            match (name.as_str(), cur.peek()) {
                ("I", _) => Ok(ObjectExpr::Unit),
                ("F", Some('(')) => {
                    cur.pos += 1;
                    let inner = body(cur)?;
                    cur.expect(')')?;
                    Ok(ObjectExpr::functor(inner))
                }
                ("sh", Some('[')) => {
                    cur.pos += 1;
                    let inner = body(cur)?;
                    cur.expect(']')?;
                    Ok(ObjectExpr::shadow(inner))
                }
                ("H", Some('[')) => {
                    cur.pos += 1;
                    let inner = body(cur)?;
                    cur.expect(']')?;
                    Ok(ObjectExpr::shadow_functor(inner))
                }
                ("H", Some('⟨')) => {
                    cur.pos += 1;
                    let inner = body(cur)?;
                    cur.expect('⟩')?;
                    Ok(ObjectExpr::shadow_functor(inner))
                }
                _ => Ok(ObjectExpr::leaf(&name)),
            }
        }
        Some(c) => Err(cur.error(format!("unexpected '{c}'"))),
    }
}

/// Prints an object in fully parenthesized form; `parse_object` inverts it.
pub fn print_object(e: &ObjectExpr) -> String {
    let mut out = String::new();
    write_object(e, &mut out);
    out
}

fn write_object(e: &ObjectExpr, out: &mut String) {
    match e {
        ObjectExpr::Leaf(id) => out.push_str(id.as_str()),
        ObjectExpr::Unit => out.push('I'),
        ObjectExpr::Tensor(a, b) => {
            out.push('(');
            write_object(a, out);
            out.push('*');
            write_object(b, out);
            out.push(')');
        }
        ObjectExpr::Functor(w) => {
            out.push_str("F(");
            write_object(w, out);
            out.push(')');
        }
        ObjectExpr::Shadow(w) => {
            out.push_str("sh[");
            write_object(w, out);
            out.push(']');
        }
        ObjectExpr::ShadowFunctor(s) => {
            out.push_str("H[");
            match s.as_ref() {
                ObjectExpr::Shadow(w) => write_object(w, out),
                other => write_object(other, out),
            }
            out.push(']');
        }
    }
}

/// Parses a `;`-separated move list. The empty string is the empty list.
pub fn parse_moves(input: &str) -> Result<Vec<Move>, ParseError> {
    let mut cur = Cursor::new(input);
    let mut moves = Vec::new();
    if cur.at_end() {
        return Ok(moves);
    }
    loop {
        moves.push(parse_move(&mut cur)?);
        if cur.eat(';') {
            if cur.at_end() {
                break;
            }
            continue;
        }
        if cur.at_end() {
            break;
        }
        let c = cur.peek().unwrap();
        return Err(cur.error(format!("expected ';' between moves, found '{c}'")));
    }
    Ok(moves)
}

fn parse_move(cur: &mut Cursor) -> Result<Move, ParseError> {
    cur.skip_ws();
    let start = cur.pos;
    let name = cur.ident().ok_or_else(|| cur.error("expected a move name"))?;
    let kind = match name.as_str() {
        "assoc" => MoveKind::Assoc,
        "lu" => MoveKind::LUnit,
        "ru" => MoveKind::RUnit,
        "sym" => MoveKind::Sym,
        "unit" => MoveKind::UnitMap,
        "comp" => MoveKind::CompMap,
        "shcomm" => MoveKind::ShadowComm,
        "rot" => {
            cur.expect(':')?;
            cur.skip_ws();
            let digits_start = cur.pos;
            while cur.chars.get(cur.pos).is_some_and(|c| c.is_ascii_digit()) {
                cur.pos += 1;
            }
            let digits: String = cur.chars[digits_start..cur.pos].iter().collect();
            let j = digits.parse().map_err(|_| cur.error("expected a split index after 'rot:'"))?;
            MoveKind::Rotator(j)
        }
        other => {
            cur.pos = start;
            return Err(cur.error(format!("unknown move '{other}'")));
        }
    };
    let mut dir = if cur.eat('~') { Direction::Inv } else { Direction::Fwd };
    let mut path = Path::root();
    if cur.eat('@') {
        path = parse_path(cur)?;
    }
    if cur.eat('~') {
        if dir == Direction::Inv {
            return Err(cur.error("duplicate '~'"));
        }
        dir = Direction::Inv;
    }
    Ok(Move { kind, dir, path })
}

fn parse_path(cur: &mut Cursor) -> Result<Path, ParseError> {
    let mut steps = Vec::new();
    if matches!(cur.peek(), None | Some(';' | '~')) {
        return Ok(Path(steps));
    }
    loop {
        let step = match cur.ident().as_deref() {
            Some("L") => Step::L,
            Some("R") => Step::R,
            Some("in") => Step::In,
            _ => return Err(cur.error("expected a path step (L, R or in)")),
        };
        steps.push(step);
        if !cur.eat('/') {
            break;
        }
    }
    Ok(Path(steps))
}

/// Parses a graph file: one `name: src -> tgt` per line, `#` comments.
pub fn parse_graph(input: &str) -> Result<Graph, ParseError> {
    let mut g = Graph::new();
    for line in input.lines() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |offset: usize, message: &str| ParseError {
            input: line.to_string(),
            offset,
            message: message.to_string(),
        };
        let colon = content.find(':').ok_or_else(|| err(content.len(), "expected 'name: src -> tgt'"))?;
        let arrow = content[colon..].find("->").map(|i| i + colon).ok_or_else(|| err(content.len(), "expected '->'"))?;
        let name = content[..colon].trim();
        let src = content[colon + 1..arrow].trim();
        let tgt = content[arrow + 2..].trim();
        for (part, at) in [(name, 0), (src, colon + 1), (tgt, arrow + 2)] {
            if part.is_empty() || part.chars().any(char::is_whitespace) {
                return Err(err(at, "expected a single identifier"));
            }
        }
        if name == "I" {
            return Err(err(0, "'I' is reserved for the unit"));
        }
        g.add_edge(name, src, tgt).map_err(|e| err(0, &e.to_string()))?;
    }
    Ok(g)
}
