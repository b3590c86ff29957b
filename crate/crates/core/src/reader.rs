//! Reading and printing S-expressions in both dialects.
//!
//! The aim8 reader accepts commas and/or whitespace between elements and
//! rejects every dot. The classic reader accepts `(a . b)`, list sugar with
//! spaces or commas, and reads `()` as `NIL`. Printing is canonical: aim8
//! separates with `", "`, classic with single spaces, using list sugar as far
//! as the tail chain allows.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::lexer::{Cursor, Tok, Token};
use crate::value::{
    list_to_pair, pair_to_list, Dialect, ListValue, PairCell, PairValue, Symbol, Value,
};

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    UnexpectedChar,
    UnbalancedParen,
    DotMisuse,
    EmptyInput,
    TrailingInput,
    /// A token that is lexically fine but out of place in an F-expression.
    UnexpectedToken,
    ReservedWord,
    MixedCase,
    DuplicateParameter,
}

impl ParseErrorKind {
    pub fn prefix(self) -> &'static str {
        match self {
            ParseErrorKind::UnexpectedChar => "unexpected character",
            ParseErrorKind::UnbalancedParen => "unbalanced parenthesis",
            ParseErrorKind::DotMisuse => "misplaced dot",
            ParseErrorKind::EmptyInput => "empty input",
            ParseErrorKind::TrailingInput => "trailing input",
            ParseErrorKind::UnexpectedToken => "unexpected token",
            ParseErrorKind::ReservedWord => "reserved word",
            ParseErrorKind::MixedCase => "mixed-case name",
            ParseErrorKind::DuplicateParameter => "duplicate parameter",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {}: {message}", kind.prefix())]
pub struct ParseError {
    pub position: SourcePosition,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(position: SourcePosition, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            position,
            kind,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PrintError {
    #[error("a list-kernel value prints only in the aim8 dialect and a pair-kernel value only in the classic dialect")]
    KindMismatch,
}

// ---------------------------------------------------------------------------
// Reading

/// Reads exactly one S-expression. Aim8 yields [`Value::List`], classic
/// yields [`Value::Pair`].
pub fn read_s(text: &str, dialect: Dialect) -> Result<Value, ParseError> {
    match dialect {
        Dialect::Aim8 => read_list(text).map(Value::List),
        Dialect::Classic => read_pair(text).map(Value::Pair),
    }
}

pub fn read_list(text: &str) -> Result<ListValue, ParseError> {
    read_one(text, parse_aim8)
}

pub fn read_pair(text: &str) -> Result<PairValue, ParseError> {
    read_one(text, parse_classic)
}

/// Reads a whitespace-separated sequence of S-expressions, e.g. a `.sexp`
/// file. Empty input yields an empty vector.
pub fn read_all(text: &str, dialect: Dialect) -> Result<Vec<Value>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    while !cur.at_eof() {
        out.push(match dialect {
            Dialect::Aim8 => Value::List(parse_aim8(&mut cur)?),
            Dialect::Classic => Value::Pair(parse_classic(&mut cur)?),
        });
    }
    Ok(out)
}

fn read_one<T>(
    text: &str,
    parse: fn(&mut Cursor) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.at_eof() {
        return Err(ParseError::new(
            cur.peek().pos,
            ParseErrorKind::EmptyInput,
            "no expression found",
        ));
    }
    let v = parse(&mut cur)?;
    if !cur.at_eof() {
        let t = cur.peek();
        return Err(ParseError::new(
            t.pos,
            ParseErrorKind::TrailingInput,
            format!("{} after a complete expression", t.tok.describe()),
        ));
    }
    Ok(v)
}

fn atom_of(name: &str) -> Symbol {
    Symbol::new(name).expect("lexer only yields valid uppercase atoms")
}

/// Error for a token that cannot start an expression.
fn not_an_expression(t: &Token) -> ParseError {
    match &t.tok {
        Tok::RParen => Cursor::error_at(t, ParseErrorKind::UnbalancedParen, "unmatched ')'"),
        Tok::Dot => Cursor::error_at(
            t,
            ParseErrorKind::DotMisuse,
            "a dot cannot start an expression",
        ),
        Tok::Eof => Cursor::error_at(t, ParseErrorKind::EmptyInput, "expected an expression"),
        Tok::Lower(name) => Cursor::error_at(
            t,
            ParseErrorKind::UnexpectedChar,
            format!("lowercase identifier {name} is not an S-expression atom"),
        ),
        other => Cursor::error_at(
            t,
            ParseErrorKind::UnexpectedChar,
            format!("{} cannot start an S-expression", other.describe()),
        ),
    }
}

fn unclosed(open: &Token) -> ParseError {
    ParseError::new(
        open.pos,
        ParseErrorKind::UnbalancedParen,
        "'(' is never closed",
    )
}

/// Parses one aim8 S-expression from the cursor. Also used for constants
/// inside F-expressions.
pub(crate) fn parse_aim8(cur: &mut Cursor) -> Result<ListValue, ParseError> {
    let t = cur.next();
    match &t.tok {
        Tok::Upper(name) => Ok(ListValue::Atom(atom_of(name))),
        Tok::LParen => {
            let open = t;
            let mut items = Vec::new();
            if matches!(cur.peek_tok(), Tok::RParen) {
                cur.next();
                return Ok(ListValue::null());
            }
            loop {
                match cur.peek_tok() {
                    Tok::Eof => return Err(unclosed(&open)),
                    Tok::Dot => {
                        return Err(Cursor::error_at(
                            cur.peek(),
                            ParseErrorKind::DotMisuse,
                            "dot notation does not exist in the aim8 dialect",
                        ))
                    }
                    _ => items.push(parse_aim8(cur)?),
                }
                match cur.peek_tok() {
                    Tok::RParen => {
                        cur.next();
                        return Ok(ListValue::list(items));
                    }
                    Tok::Comma => {
                        cur.next();
                        if matches!(cur.peek_tok(), Tok::RParen | Tok::Comma) {
                            return Err(Cursor::error_at(
                                cur.peek(),
                                ParseErrorKind::UnexpectedChar,
                                "expected an expression after ','",
                            ));
                        }
                    }
                    Tok::Eof => return Err(unclosed(&open)),
                    // Whitespace-separated element: loop around.
                    _ => {}
                }
            }
        }
        _ => Err(not_an_expression(&t)),
    }
}

fn parse_classic(cur: &mut Cursor) -> Result<PairValue, ParseError> {
    let t = cur.next();
    match &t.tok {
        Tok::Upper(name) => Ok(PairValue::Atom(atom_of(name))),
        Tok::LParen => {
            let open = t;
            let mut items = Vec::new();
            match cur.peek_tok() {
                Tok::RParen => {
                    cur.next();
                    return Ok(PairValue::nil());
                }
                Tok::Dot => {
                    return Err(Cursor::error_at(
                        cur.peek(),
                        ParseErrorKind::DotMisuse,
                        "a dot needs at least one element before it",
                    ))
                }
                _ => {}
            }
            let tail = loop {
                match cur.peek_tok() {
                    Tok::Eof => return Err(unclosed(&open)),
                    _ => items.push(parse_classic(cur)?),
                }
                match cur.peek_tok() {
                    Tok::RParen => {
                        cur.next();
                        break PairValue::nil();
                    }
                    Tok::Comma => {
                        cur.next();
                        if matches!(cur.peek_tok(), Tok::RParen | Tok::Comma | Tok::Dot) {
                            return Err(Cursor::error_at(
                                cur.peek(),
                                ParseErrorKind::UnexpectedChar,
                                "expected an expression after ','",
                            ));
                        }
                    }
                    Tok::Dot => {
                        cur.next();
                        if matches!(
                            cur.peek_tok(),
                            Tok::RParen | Tok::Dot | Tok::Comma | Tok::Eof
                        ) {
                            return Err(Cursor::error_at(
                                cur.peek(),
                                ParseErrorKind::DotMisuse,
                                "a dot must be followed by exactly one tail expression",
                            ));
                        }
                        let tail = parse_classic(cur)?;
                        let close = cur.next();
                        match close.tok {
                            Tok::RParen => break tail,
                            Tok::Eof => return Err(unclosed(&open)),
                            _ => {
                                return Err(Cursor::error_at(
                                    &close,
                                    ParseErrorKind::DotMisuse,
                                    "only one expression may follow a dot",
                                ))
                            }
                        }
                    }
                    Tok::Eof => return Err(unclosed(&open)),
                    _ => {}
                }
            };
            Ok(items
                .into_iter()
                .rev()
                .fold(tail, |tail, head| PairValue::cons(head, tail)))
        }
        _ => Err(not_an_expression(&t)),
    }
}

// ---------------------------------------------------------------------------
// Printing

/// Prints `v` in the dialect that matches its kind.
pub fn print_s(v: &Value, dialect: Dialect) -> Result<String, PrintError> {
    match (v, dialect) {
        (Value::List(v), Dialect::Aim8) => Ok(print_list(v)),
        (Value::Pair(v), Dialect::Classic) => Ok(print_pair(v)),
        _ => Err(PrintError::KindMismatch),
    }
}

/// Aim8 rendering: `(A, (B), ())`.
pub fn print_list(v: &ListValue) -> String {
    let mut out = String::new();
    write_list(v, &mut out);
    out
}

fn write_list(v: &ListValue, out: &mut String) {
    match v {
        ListValue::Atom(s) => out.push_str(s.as_str()),
        ListValue::List(items) => {
            out.push('(');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_list(item, out);
            }
            out.push(')');
        }
    }
}

/// Marker printed in place of a node already being printed further up.
pub const CYCLE_MARKER: &str = "#cycle";

/// Classic rendering with maximal list sugar: `(A B . C)`. A node revisited
/// on the current path prints as [`CYCLE_MARKER`].
pub fn print_pair(v: &PairValue) -> String {
    let mut out = String::new();
    write_pair(v, &mut out, &mut HashSet::new());
    out
}

fn write_pair(v: &PairValue, out: &mut String, path: &mut HashSet<*const PairCell>) {
    let cell = match v {
        PairValue::Atom(s) => return out.push_str(s.as_str()),
        PairValue::Pair(cell) => cell,
    };
    let id = |c: &PairCell| c as *const PairCell;
    if path.contains(&id(cell)) {
        return out.push_str(CYCLE_MARKER);
    }
    out.push('(');
    let mut added = Vec::new();
    let mut cur: &PairCell = cell;
    loop {
        path.insert(id(cur));
        added.push(id(cur));
        write_pair(cur.head(), out, path);
        match cur.tail() {
            PairValue::Atom(s) if s.as_str() == "NIL" => break,
            PairValue::Atom(s) => {
                out.push_str(" . ");
                out.push_str(s.as_str());
                break;
            }
            PairValue::Pair(next) if path.contains(&id(next)) => {
                out.push_str(" . ");
                out.push_str(CYCLE_MARKER);
                break;
            }
            PairValue::Pair(next) => {
                out.push(' ');
                cur = next;
            }
        }
    }
    out.push(')');
    for c in added {
        path.remove(&c);
    }
}

/// Renders a list-kernel value in either dialect.
pub fn print_list_in(v: &ListValue, dialect: Dialect) -> String {
    match dialect {
        Dialect::Aim8 => print_list(v),
        Dialect::Classic => print_pair(&list_to_pair(v)),
    }
}

/// Renders a pair-kernel value in either dialect. Structures that have no
/// aim8 form (improper or cyclic) fall back to classic notation.
pub fn print_pair_in(v: &PairValue, dialect: Dialect) -> String {
    match dialect {
        Dialect::Classic => print_pair(v),
        Dialect::Aim8 => match pair_to_list(v) {
            Ok(l) => print_list(&l),
            Err(_) => print_pair(v),
        },
    }
}
