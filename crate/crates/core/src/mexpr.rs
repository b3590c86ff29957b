//! F-expressions: the bracket-and-semicolon program notation.
//!
//! ```text
//! application   f[e1; ...; en]
//! conditional   [p1 -> e1; ...; pn -> en]
//! lambda        lambda[[v1; ...; vn]; e]
//! label         label[name; e]
//! constant      A   ()   (A, (B, C))
//! variable      x   append   x2
//! ```
//!
//! A program file is a sequence of items. `name = e` and
//! `name[v1; ...; vn] = e` define globals; anything else is an expression
//! to evaluate.

use std::collections::HashSet;
use std::fmt;

use crate::lexer::{Cursor, Tok, Token};
use crate::reader::{parse_aim8, print_list, ParseError, ParseErrorKind};
use crate::value::ListValue;

pub const RESERVED_WORDS: [&str; 2] = ["lambda", "label"];

/// A lowercase identifier: lowercase letters and digits, letter first, not a
/// reserved word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ident(String);

impl Ident {
    pub fn new(name: &str) -> Option<Self> {
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
            && !RESERVED_WORDS.contains(&name);
        ok.then(|| Ident(name.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FExpr {
    Var(Ident),
    Const(ListValue),
    App(Box<FExpr>, Vec<FExpr>),
    Cond(Vec<(FExpr, FExpr)>),
    Lambda(Vec<Ident>, Box<FExpr>),
    Label(Ident, Box<FExpr>),
}

impl FExpr {
    pub fn var(name: &str) -> Self {
        FExpr::Var(Ident::new(name).expect("valid identifier"))
    }

    pub fn app(f: FExpr, args: Vec<FExpr>) -> Self {
        FExpr::App(Box::new(f), args)
    }

    pub fn lambda(params: &[&str], body: FExpr) -> Self {
        let params = params
            .iter()
            .map(|p| Ident::new(p).expect("valid identifier"))
            .collect();
        FExpr::Lambda(params, Box::new(body))
    }

    pub fn label(name: &str, body: FExpr) -> Self {
        FExpr::Label(Ident::new(name).expect("valid identifier"), Box::new(body))
    }
}

impl fmt::Display for FExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_f(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Define(Ident, FExpr),
    Expr(FExpr),
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses exactly one F-expression.
pub fn read_f(text: &str) -> Result<FExpr, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.at_eof() {
        return Err(ParseError::new(
            cur.peek().pos,
            ParseErrorKind::EmptyInput,
            "no expression found",
        ));
    }
    let e = parse_expr(&mut cur)?;
    if !cur.at_eof() {
        let t = cur.peek();
        return Err(Cursor::error_at(
            t,
            ParseErrorKind::TrailingInput,
            format!("{} after a complete expression", t.tok.describe()),
        ));
    }
    Ok(e)
}

/// Parses a program: definitions and expressions in order.
pub fn read_program(text: &str) -> Result<Vec<Item>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut items = Vec::new();
    while !cur.at_eof() {
        let start = cur.peek().clone();
        let e = parse_expr(&mut cur)?;
        if matches!(cur.peek_tok(), Tok::Equals) {
            cur.next();
            let body = parse_expr(&mut cur)?;
            items.push(definition(&start, e, body)?);
        } else {
            items.push(Item::Expr(e));
        }
    }
    Ok(items)
}

fn definition(start: &Token, lhs: FExpr, body: FExpr) -> Result<Item, ParseError> {
    let bad_lhs = || {
        ParseError::new(
            start.pos,
            ParseErrorKind::UnexpectedToken,
            "the left side of '=' must be a name or name[v1; ...; vn]",
        )
    };
    match lhs {
        FExpr::Var(name) => Ok(Item::Define(name, body)),
        FExpr::App(f, args) => {
            let FExpr::Var(name) = *f else {
                return Err(bad_lhs());
            };
            let mut params = Vec::with_capacity(args.len());
            for a in args {
                let FExpr::Var(p) = a else {
                    return Err(bad_lhs());
                };
                if params.contains(&p) {
                    return Err(ParseError::new(
                        start.pos,
                        ParseErrorKind::DuplicateParameter,
                        format!("parameter {p} appears twice"),
                    ));
                }
                params.push(p);
            }
            Ok(Item::Define(name, FExpr::Lambda(params, Box::new(body))))
        }
        _ => Err(bad_lhs()),
    }
}

fn unclosed_bracket(open: &Token) -> ParseError {
    ParseError::new(
        open.pos,
        ParseErrorKind::UnbalancedParen,
        "'[' is never closed",
    )
}

fn expect(cur: &mut Cursor, want: Tok, open: &Token) -> Result<Token, ParseError> {
    let t = cur.next();
    if t.tok == want {
        return Ok(t);
    }
    if matches!(t.tok, Tok::Eof) {
        return Err(unclosed_bracket(open));
    }
    Err(Cursor::error_at(
        &t,
        ParseErrorKind::UnexpectedToken,
        format!("expected {}, found {}", want.describe(), t.tok.describe()),
    ))
}

fn parse_ident(cur: &mut Cursor, open: &Token) -> Result<Ident, ParseError> {
    let t = cur.next();
    match &t.tok {
        Tok::Lower(name) => Ident::new(name).ok_or_else(|| {
            ParseError::new(
                t.pos,
                ParseErrorKind::ReservedWord,
                format!("{name} cannot be used as a name"),
            )
        }),
        Tok::Eof => Err(unclosed_bracket(open)),
        Tok::Upper(name) => Err(ParseError::new(
            t.pos,
            ParseErrorKind::UnexpectedToken,
            format!("expected a lowercase name, found atom {name}"),
        )),
        other => Err(Cursor::error_at(
            &t,
            ParseErrorKind::UnexpectedToken,
            format!("expected a lowercase name, found {}", other.describe()),
        )),
    }
}

fn parse_expr(cur: &mut Cursor) -> Result<FExpr, ParseError> {
    let t = cur.peek().clone();
    let head = match &t.tok {
        Tok::Upper(_) | Tok::LParen => {
            let c = FExpr::Const(parse_aim8(cur)?);
            if matches!(cur.peek_tok(), Tok::LBracket) {
                return Err(ParseError::new(
                    cur.peek().pos,
                    ParseErrorKind::UnexpectedToken,
                    "a constant cannot be applied",
                ));
            }
            return Ok(c);
        }
        Tok::Lower(w) if w == "lambda" => {
            cur.next();
            parse_lambda(cur, &t)?
        }
        Tok::Lower(w) if w == "label" => {
            cur.next();
            parse_label(cur, &t)?
        }
        Tok::Lower(name) => {
            cur.next();
            FExpr::Var(Ident::new(name).expect("lexer yields lowercase identifiers"))
        }
        Tok::LBracket => {
            cur.next();
            parse_cond(cur, &t)?
        }
        Tok::Eof => {
            return Err(ParseError::new(
                t.pos,
                ParseErrorKind::UnbalancedParen,
                "unexpected end of input",
            ))
        }
        Tok::RBracket => {
            return Err(ParseError::new(
                t.pos,
                ParseErrorKind::UnbalancedParen,
                "unmatched ']'",
            ))
        }
        Tok::RParen => {
            return Err(ParseError::new(
                t.pos,
                ParseErrorKind::UnbalancedParen,
                "unmatched ')'",
            ))
        }
        Tok::Dot => {
            return Err(ParseError::new(
                t.pos,
                ParseErrorKind::DotMisuse,
                "dot notation is not available",
            ))
        }
        Tok::Equals => {
            return Err(ParseError::new(
                t.pos,
                ParseErrorKind::UnexpectedToken,
                "infix '=' is not supported; write eq[x; y]",
            ))
        }
        other => {
            return Err(Cursor::error_at(
                &t,
                ParseErrorKind::UnexpectedToken,
                format!("{} cannot start an expression", other.describe()),
            ))
        }
    };
    parse_postfix(cur, head)
}

fn parse_postfix(cur: &mut Cursor, mut f: FExpr) -> Result<FExpr, ParseError> {
    while matches!(cur.peek_tok(), Tok::LBracket) {
        let open = cur.next();
        let mut args = Vec::new();
        if matches!(cur.peek_tok(), Tok::RBracket) {
            cur.next();
        } else {
            loop {
                args.push(parse_expr(cur)?);
                let t = cur.next();
                match &t.tok {
                    Tok::Semi => continue,
                    Tok::RBracket => break,
                    Tok::Eof => return Err(unclosed_bracket(&open)),
                    Tok::Equals => {
                        return Err(ParseError::new(
                            t.pos,
                            ParseErrorKind::UnexpectedToken,
                            "infix '=' is not supported; write eq[x; y]",
                        ))
                    }
                    other => {
                        return Err(Cursor::error_at(
                            &t,
                            ParseErrorKind::UnexpectedToken,
                            format!("expected ';' or ']', found {}", other.describe()),
                        ))
                    }
                }
            }
        }
        f = FExpr::App(Box::new(f), args);
    }
    Ok(f)
}

fn parse_cond(cur: &mut Cursor, open: &Token) -> Result<FExpr, ParseError> {
    if matches!(cur.peek_tok(), Tok::RBracket) {
        return Err(ParseError::new(
            cur.peek().pos,
            ParseErrorKind::UnexpectedToken,
            "a conditional needs at least one clause",
        ));
    }
    let mut clauses = Vec::new();
    loop {
        let test = parse_expr(cur)?;
        expect(cur, Tok::Arrow, open)?;
        let result = parse_expr(cur)?;
        clauses.push((test, result));
        let t = cur.next();
        match &t.tok {
            Tok::Semi => continue,
            Tok::RBracket => return Ok(FExpr::Cond(clauses)),
            Tok::Eof => return Err(unclosed_bracket(open)),
            other => {
                return Err(Cursor::error_at(
                    &t,
                    ParseErrorKind::UnexpectedToken,
                    format!("expected ';' or ']', found {}", other.describe()),
                ))
            }
        }
    }
}

fn reserved_misuse(kw: &Token, word: &str) -> ParseError {
    ParseError::new(
        kw.pos,
        ParseErrorKind::ReservedWord,
        format!("{word} must be followed by '['"),
    )
}

fn parse_lambda(cur: &mut Cursor, kw: &Token) -> Result<FExpr, ParseError> {
    if !matches!(cur.peek_tok(), Tok::LBracket) {
        return Err(reserved_misuse(kw, "lambda"));
    }
    let open = cur.next();
    let params_open = expect(cur, Tok::LBracket, &open)?;
    let mut params: Vec<Ident> = Vec::new();
    let mut seen = HashSet::new();
    if matches!(cur.peek_tok(), Tok::RBracket) {
        cur.next();
    } else {
        loop {
            let pos = cur.peek().pos;
            let p = parse_ident(cur, &params_open)?;
            if !seen.insert(p.clone()) {
                return Err(ParseError::new(
                    pos,
                    ParseErrorKind::DuplicateParameter,
                    format!("parameter {p} appears twice"),
                ));
            }
            params.push(p);
            let t = cur.next();
            match &t.tok {
                Tok::Semi => continue,
                Tok::RBracket => break,
                Tok::Eof => return Err(unclosed_bracket(&params_open)),
                other => {
                    return Err(Cursor::error_at(
                        &t,
                        ParseErrorKind::UnexpectedToken,
                        format!(
                            "expected ';' or ']' in a parameter list, found {}",
                            other.describe()
                        ),
                    ))
                }
            }
        }
    }
    expect(cur, Tok::Semi, &open)?;
    let body = parse_expr(cur)?;
    expect(cur, Tok::RBracket, &open)?;
    Ok(FExpr::Lambda(params, Box::new(body)))
}

fn parse_label(cur: &mut Cursor, kw: &Token) -> Result<FExpr, ParseError> {
    if !matches!(cur.peek_tok(), Tok::LBracket) {
        return Err(reserved_misuse(kw, "label"));
    }
    let open = cur.next();
    let name = parse_ident(cur, &open)?;
    expect(cur, Tok::Semi, &open)?;
    let body = parse_expr(cur)?;
    expect(cur, Tok::RBracket, &open)?;
    Ok(FExpr::Label(name, Box::new(body)))
}

// ---------------------------------------------------------------------------
// Printing

/// Canonical rendering; [`read_f`] parses it back to the same tree.
pub fn print_f(e: &FExpr) -> String {
    let mut out = String::new();
    write_f(e, &mut out);
    out
}

fn write_f(e: &FExpr, out: &mut String) {
    match e {
        FExpr::Var(v) => out.push_str(v.as_str()),
        FExpr::Const(c) => out.push_str(&print_list(c)),
        FExpr::App(f, args) => {
            write_f(f, out);
            out.push('[');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str("; ");
                }
                write_f(a, out);
            }
            out.push(']');
        }
        FExpr::Cond(clauses) => {
            out.push('[');
            for (i, (p, r)) in clauses.iter().enumerate() {
                if i > 0 {
                    out.push_str("; ");
                }
                write_f(p, out);
                out.push_str(" -> ");
                write_f(r, out);
            }
            out.push(']');
        }
        FExpr::Lambda(params, body) => {
            out.push_str("lambda[[");
            for (i, p) in params.iter().enumerate() {
                if i > 0 {
                    out.push_str("; ");
                }
                out.push_str(p.as_str());
            }
            out.push_str("]; ");
            write_f(body, out);
            out.push(']');
        }
        FExpr::Label(name, body) => {
            out.push_str("label[");
            out.push_str(name.as_str());
            out.push_str("; ");
            write_f(body, out);
            out.push(']');
        }
    }
}

pub fn print_item(item: &Item) -> String {
    match item {
        Item::Define(name, e) => format!("{name} = {}", print_f(e)),
        Item::Expr(e) => print_f(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reader::read_list;
    use proptest::prelude::*;

    fn c(s: &str) -> FExpr {
        FExpr::Const(read_list(s).unwrap())
    }

    fn v(s: &str) -> FExpr {
        FExpr::var(s)
    }

    fn err(text: &str) -> ParseErrorKind {
        read_f(text).unwrap_err().kind
    }

    #[test]
    fn application_of_constant_list() {
        assert_eq!(
            read_f("first[(A, B)]").unwrap(),
            FExpr::app(v("first"), vec![c("(A, B)")])
        );
    }

    #[test]
    fn conditional() {
        assert_eq!(
            read_f("[eq[x; A] -> x; T -> y]").unwrap(),
            FExpr::Cond(vec![
                (FExpr::app(v("eq"), vec![v("x"), c("A")]), v("x")),
                (c("T"), v("y")),
            ])
        );
    }

    #[test]
    fn lambda_and_label() {
        assert_eq!(
            read_f("label[f; lambda[[x]; f[x]]]").unwrap(),
            FExpr::label("f", FExpr::lambda(&["x"], FExpr::app(v("f"), vec![v("x")])))
        );
        assert_eq!(read_f("lambda[[]; A]").unwrap(), FExpr::lambda(&[], c("A")));
        assert_eq!(
            read_f("lambda[[x; y]; x][A; B]").unwrap(),
            FExpr::app(FExpr::lambda(&["x", "y"], v("x")), vec![c("A"), c("B")])
        );
        assert_eq!(read_f("f[]").unwrap(), FExpr::app(v("f"), vec![]));
        assert_eq!(
            read_f("f[x][y]").unwrap(),
            FExpr::app(FExpr::app(v("f"), vec![v("x")]), vec![v("y")])
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(err("first[(A, B)"), ParseErrorKind::UnbalancedParen);
        assert_eq!(err("first[(A, B]"), ParseErrorKind::UnexpectedChar);
        assert_eq!(err("[x -> y"), ParseErrorKind::UnbalancedParen);
        assert_eq!(err("lambda"), ParseErrorKind::ReservedWord);
        assert_eq!(err("f[label]"), ParseErrorKind::ReservedWord);
        assert_eq!(err("lambda[[lambda]; x]"), ParseErrorKind::ReservedWord);
        assert_eq!(err("Foo[x]"), ParseErrorKind::MixedCase);
        assert_eq!(err("first[X, y]"), ParseErrorKind::UnexpectedToken);
        assert_eq!(err("lambda[[x; x]; x]"), ParseErrorKind::DuplicateParameter);
        assert_eq!(err("[x y]"), ParseErrorKind::UnexpectedToken);
        assert_eq!(err("[]"), ParseErrorKind::UnexpectedToken);
        assert_eq!(err("(A . B)"), ParseErrorKind::DotMisuse);
        assert_eq!(err("x = y"), ParseErrorKind::TrailingInput);
        assert_eq!(err("eq[x = y]"), ParseErrorKind::UnexpectedToken);
        assert_eq!(err("(A)[x]"), ParseErrorKind::UnexpectedToken);
        assert_eq!(err("x y"), ParseErrorKind::TrailingInput);
        assert_eq!(err(""), ParseErrorKind::EmptyInput);
        assert_eq!(err("]"), ParseErrorKind::UnbalancedParen);
    }

    #[test]
    fn error_positions() {
        let e = read_f("f[x;\n  (A . B)]").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DotMisuse);
        assert_eq!((e.position.line, e.position.column), (2, 6));
    }

    #[test]
    fn printing() {
        assert_eq!(
            print_f(&FExpr::app(v("first"), vec![c("(A)")])),
            "first[(A)]"
        );
        assert_eq!(print_f(&FExpr::lambda(&["x"], v("x"))), "lambda[[x]; x]");
        assert_eq!(
            print_f(&FExpr::label(
                "f",
                FExpr::lambda(&["x"], FExpr::app(v("f"), vec![v("x")]))
            )),
            "label[f; lambda[[x]; f[x]]]"
        );
        assert_eq!(
            print_f(&read_f("[eq[x;A]->x;T->y]").unwrap()),
            "[eq[x; A] -> x; T -> y]"
        );
    }

    #[test]
    fn programs() {
        let items = read_program(
            "# list utilities\n\
             append[x; y] = [null[x] -> y; T -> combine[first[x]; append[rest[x]; y]]]\n\
             abc = (A, B, C)\n\
             append[abc; (D)]\n",
        )
        .unwrap();
        assert_eq!(items.len(), 3);
        match &items[0] {
            Item::Define(name, FExpr::Lambda(params, _)) => {
                assert_eq!(name.as_str(), "append");
                assert_eq!(params.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            items[1],
            Item::Define(Ident::new("abc").unwrap(), c("(A, B, C)"))
        );
        assert!(matches!(items[2], Item::Expr(_)));
        assert!(read_program("").unwrap().is_empty());
        assert_eq!(
            read_program("f[x; x] = x").unwrap_err().kind,
            ParseErrorKind::DuplicateParameter
        );
        assert_eq!(
            read_program("f[A] = x").unwrap_err().kind,
            ParseErrorKind::UnexpectedToken
        );
        assert_eq!(
            read_program("f = ").unwrap_err().kind,
            ParseErrorKind::UnbalancedParen
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

        #[test]
        fn read_print_roundtrip(e in crate::harness::fexpr(6)) {
            let printed = print_f(&e);
            prop_assert_eq!(read_f(&printed).unwrap(), e);
        }
    }
}
