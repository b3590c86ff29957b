// Shared tokenizer for S-expression and F-expression text.
//
// Lexical failures become `Tok::Error` tokens so the parser reports them at
// the point where it reaches them.

use crate::reader::{ParseError, ParseErrorKind, SourcePosition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    LParen,
    RParen,
    Comma,
    Dot,
    LBracket,
    RBracket,
    Semi,
    Arrow,
    Equals,
    /// Uppercase atom.
    Upper(String),
    /// Lowercase identifier.
    Lower(String),
    Error(ParseErrorKind, String),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Dot => "'.'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Semi => "';'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Equals => "'='".into(),
            Tok::Upper(s) => format!("atom {s}"),
            Tok::Lower(s) => format!("identifier {s}"),
            Tok::Error(_, msg) => msg.clone(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: SourcePosition,
}

pub(crate) fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else if c.is_some() {
                column += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let pos = SourcePosition { line, column };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ';' => Tok::Semi,
            '=' => Tok::Equals,
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    out.push(Token {
                        tok: Tok::Arrow,
                        pos,
                    });
                } else {
                    out.push(Token {
                        tok: Tok::Error(
                            ParseErrorKind::UnexpectedChar,
                            "unexpected character '-'".into(),
                        ),
                        pos,
                    });
                }
                continue;
            }
            c if c.is_ascii_alphanumeric() => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if !c.is_ascii_alphanumeric() {
                        break;
                    }
                    word.push(c);
                    bump!();
                }
                out.push(Token {
                    tok: classify(word),
                    pos,
                });
                continue;
            }
            other => Tok::Error(
                ParseErrorKind::UnexpectedChar,
                format!("unexpected character {other:?}"),
            ),
        };
        bump!();
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: SourcePosition { line, column },
    });
    out
}

fn classify(word: String) -> Tok {
    let first = word.chars().next().expect("nonempty word");
    if first.is_ascii_digit() {
        return Tok::Error(
            ParseErrorKind::UnexpectedChar,
            format!("{word:?} starts with a digit; atoms and identifiers start with a letter"),
        );
    }
    let has_upper = word.chars().any(|c| c.is_ascii_uppercase());
    let has_lower = word.chars().any(|c| c.is_ascii_lowercase());
    match (has_upper, has_lower) {
        (true, false) => Tok::Upper(word),
        (false, true) => Tok::Lower(word),
        _ => Tok::Error(
            ParseErrorKind::MixedCase,
            format!("mixed-case name {word:?}: atoms are uppercase, identifiers lowercase"),
        ),
    }
}

/// Cursor over a token vector with error helpers.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    at: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Self {
        Cursor {
            toks: tokenize(text),
            at: 0,
        }
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    pub(crate) fn peek_tok(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub(crate) fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if !matches!(t.tok, Tok::Eof) {
            self.at += 1;
        }
        t
    }

    pub(crate) fn at_eof(&self) -> bool {
        matches!(self.peek_tok(), Tok::Eof)
    }

    /// Turns a lexical-error token into its `ParseError`; otherwise reports
    /// `kind` with `message`.
    pub(crate) fn error_at(
        token: &Token,
        kind: ParseErrorKind,
        message: impl Into<String>,
    ) -> ParseError {
        match &token.tok {
            Tok::Error(k, msg) => ParseError::new(token.pos, *k, msg.clone()),
            _ => ParseError::new(token.pos, kind, message),
        }
    }
}
