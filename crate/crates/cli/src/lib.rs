//! The `aim8` command: a REPL, a file runner and a translator.

use std::fmt;
use std::io::{self, BufRead, IsTerminal, Write};
use std::path::Path;

use aim8_core::{
    list_to_pair, pair_to_list, print_list_in, print_pair_in, read_all, read_program,
    translate_items, Dialect, Evaluator, ListKernel, ListValue, Object, PairKernel, PairValue,
    ParseError, RuntimeError, TopLevel, TranslateError, Value, DEFAULT_MAX_DEPTH,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

/// How many enclosing expressions a runtime error report shows.
const TRACE_SHOWN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelChoice {
    List,
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lang {
    Mexpr,
    Sexpr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub kernel: KernelChoice,
    /// `None` picks by file extension, or F-expressions in the REPL.
    pub lang: Option<Lang>,
    /// `None` picks aim8 for the list kernel and classic for the pair kernel.
    pub dialect: Option<Dialect>,
    pub max_depth: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            kernel: KernelChoice::List,
            lang: None,
            dialect: None,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }
}

impl Options {
    pub fn dialect(&self) -> Dialect {
        self.dialect.unwrap_or(match self.kernel {
            KernelChoice::List => Dialect::Aim8,
            KernelChoice::Pair => Dialect::Classic,
        })
    }

    pub fn lang_for(&self, path: Option<&Path>) -> Lang {
        self.lang.unwrap_or_else(|| {
            match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
                Some("sexp") => Lang::Sexpr,
                _ => Lang::Mexpr,
            }
        })
    }
}

#[derive(Debug)]
pub enum SessionError {
    Parse(ParseError),
    /// Dotted or cyclic input handed to the list kernel.
    Unrepresentable(String),
    Translate(TranslateError),
    Runtime(RuntimeError),
}

impl SessionError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SessionError::Parse(_) | SessionError::Unrepresentable(_) => EXIT_DATA,
            SessionError::Translate(_) => EXIT_USAGE,
            SessionError::Runtime(_) => EXIT_SOFTWARE,
        }
    }
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionError::Parse(e) => write!(f, "{e}"),
            SessionError::Unrepresentable(m) => f.write_str(m),
            SessionError::Translate(e) => write!(f, "{e}"),
            SessionError::Runtime(e) => {
                write!(f, "{e}")?;
                // The outermost frame is the form the user wrote; skip it.
                let inner = &e.trace[..e.trace.len().saturating_sub(1)];
                for expr in inner.iter().take(TRACE_SHOWN) {
                    write!(f, "\n  in {expr}")?;
                }
                Ok(())
            }
        }
    }
}

impl From<ParseError> for SessionError {
    fn from(e: ParseError) -> Self {
        SessionError::Parse(e)
    }
}

impl From<TranslateError> for SessionError {
    fn from(e: TranslateError) -> Self {
        SessionError::Translate(e)
    }
}

impl From<RuntimeError> for SessionError {
    fn from(e: RuntimeError) -> Self {
        SessionError::Runtime(e)
    }
}

enum Machine {
    List(Evaluator<ListKernel>),
    Pair(Evaluator<PairKernel>),
}

/// What one top-level form produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Defined(String),
    Value(String),
}

/// An evaluator plus the language and dialect it reads and prints.
pub struct Session {
    machine: Machine,
    lang: Lang,
    dialect: Dialect,
}

impl Session {
    pub fn new(options: &Options, lang: Lang) -> Self {
        let machine = match options.kernel {
            KernelChoice::List => Machine::List(Evaluator::with_max_depth(options.max_depth)),
            KernelChoice::Pair => Machine::Pair(Evaluator::with_max_depth(options.max_depth)),
        };
        Session {
            machine,
            lang,
            dialect: options.dialect(),
        }
    }

    /// Parses all of `src` into top-level forms without evaluating anything.
    pub fn parse(&self, src: &str) -> Result<Vec<Value>, SessionError> {
        match self.lang {
            Lang::Mexpr => {
                let items = read_program(src)?;
                Ok(translate_items(&items)?
                    .into_iter()
                    .map(Value::List)
                    .collect())
            }
            Lang::Sexpr => Ok(read_all(src, self.dialect)?),
        }
    }

    /// Runs one parsed form.
    pub fn run_form(&mut self, form: &Value) -> Result<Outcome, SessionError> {
        let dialect = self.dialect;
        match &mut self.machine {
            Machine::List(ev) => {
                let form = as_list(form)?;
                Ok(match ev.run_toplevel(&form)? {
                    TopLevel::Defined(name) => Outcome::Defined(name.to_string()),
                    TopLevel::Value(v) => Outcome::Value(render(&v, |d| print_list_in(d, dialect))),
                })
            }
            Machine::Pair(ev) => {
                let form = as_pair(form);
                Ok(match ev.run_toplevel(&form)? {
                    TopLevel::Defined(name) => Outcome::Defined(name.to_string()),
                    TopLevel::Value(v) => Outcome::Value(render(&v, |d| print_pair_in(d, dialect))),
                })
            }
        }
    }

    /// Parses and runs `src`, stopping at the first error.
    pub fn run_source(&mut self, src: &str) -> Result<Vec<Outcome>, SessionError> {
        let forms = self.parse(src)?;
        forms.iter().map(|f| self.run_form(f)).collect()
    }
}

fn render<V>(o: &Object<V>, print: impl Fn(&V) -> String) -> String
where
    Object<V>: fmt::Display,
{
    match o {
        Object::Data(d) => print(d),
        other => other.to_string(),
    }
}

fn as_list(v: &Value) -> Result<ListValue, SessionError> {
    match v {
        Value::List(l) => Ok(l.clone()),
        Value::Pair(p) => pair_to_list(p).map_err(|e| {
            SessionError::Unrepresentable(format!(
                "the list kernel has no dotted pairs ({e}); use --kernel pair for classic input with dots"
            ))
        }),
    }
}

fn as_pair(v: &Value) -> PairValue {
    match v {
        Value::List(l) => list_to_pair(l),
        Value::Pair(p) => p.clone(),
    }
}

fn read_source(path: &Path, err: &mut dyn Write) -> Result<String, i32> {
    std::fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        EXIT_IO
    })
}

/// `aim8 run`: evaluates every form in order and prints each expression's
/// value. Definitions print nothing.
pub fn run_file(path: &Path, options: &Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let src = match read_source(path, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut session = Session::new(options, options.lang_for(Some(path)));
    let forms = match session.parse(&src) {
        Ok(f) => f,
        Err(e) => return report(&e, err),
    };
    for form in &forms {
        match session.run_form(form) {
            Ok(Outcome::Defined(_)) => {}
            Ok(Outcome::Value(v)) => {
                if writeln!(out, "{v}").is_err() {
                    return EXIT_IO;
                }
            }
            Err(e) => return report(&e, err),
        }
    }
    EXIT_OK
}

/// `aim8 translate`: one S-expression per definition or expression.
pub fn run_translate(
    path: &Path,
    options: &Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let src = match read_source(path, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let dialect = options.dialect.unwrap_or(Dialect::Aim8);
    let session = Session {
        machine: Machine::List(Evaluator::new()),
        lang: options.lang_for(Some(path)),
        dialect,
    };
    let forms = match session.parse(&src) {
        Ok(f) => f,
        Err(e) => return report(&e, err),
    };
    for form in &forms {
        let line = match form {
            Value::List(l) => print_list_in(l, dialect),
            Value::Pair(p) => print_pair_in(p, dialect),
        };
        if writeln!(out, "{line}").is_err() {
            return EXIT_IO;
        }
    }
    EXIT_OK
}

fn report(e: &SessionError, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    e.exit_code()
}

/// Counts what is still open in a partial entry, so the REPL knows to keep
/// reading.
fn incomplete(buf: &str) -> bool {
    let mut depth = 0i64;
    for line in buf.lines() {
        let code = line.split('#').next().unwrap_or("");
        for c in code.chars() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
        }
    }
    let last = buf
        .lines()
        .last()
        .and_then(|l| l.split('#').next())
        .unwrap_or("")
        .trim_end();
    depth > 0 || last.ends_with('=') || last.ends_with(';') || last.ends_with("->")
}

/// `aim8 repl`: reads entries until end of input. Errors are reported and
/// the session continues.
pub fn run_repl(
    options: &Options,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    interactive: bool,
) -> i32 {
    let mut session = Session::new(options, options.lang_for(None));
    let mut buf = String::new();
    loop {
        if interactive {
            let prompt = if buf.is_empty() { "aim8> " } else { "  ... " };
            if write!(out, "{prompt}").and_then(|()| out.flush()).is_err() {
                return EXIT_IO;
            }
        }
        let mut line = String::new();
        let eof = match input.read_line(&mut line) {
            Ok(0) => true,
            Ok(_) => false,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_IO;
            }
        };
        buf.push_str(&line);
        if !eof && incomplete(&buf) {
            continue;
        }
        if !buf.trim().is_empty() {
            match session.run_source(&buf) {
                Ok(outcomes) => {
                    for o in outcomes {
                        let text = match o {
                            Outcome::Defined(name) => name,
                            Outcome::Value(v) => v,
                        };
                        if writeln!(out, "{text}").is_err() {
                            return EXIT_IO;
                        }
                    }
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                }
            }
        }
        buf.clear();
        if eof {
            if interactive {
                let _ = writeln!(out);
            }
            return EXIT_OK;
        }
    }
}

/// Runs the REPL on the process's standard streams.
pub fn run_repl_stdio(options: &Options) -> i32 {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut input = stdin.lock();
    run_repl(
        options,
        &mut input,
        &mut io::stdout(),
        &mut io::stderr(),
        interactive,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn repl(options: &Options, input: &str) -> (String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_repl(options, &mut input.as_bytes(), &mut out, &mut err, false);
        assert_eq!(code, EXIT_OK);
        (
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn incomplete_entries() {
        assert!(incomplete("first[(A,"));
        assert!(incomplete("f[x] ="));
        assert!(incomplete("[p -> a;"));
        assert!(!incomplete("first[(A, B)]"));
        assert!(!incomplete("first[x] # comment ["));
    }

    #[test]
    fn repl_continues_after_errors() {
        let (out, err) = repl(&Options::default(), "combine[A; B]\nfirst[(A, B)]\n");
        assert_eq!(out, "A\n");
        assert_eq!(err, "error: combine: second argument is atomic\n");
    }

    #[test]
    fn repl_multiline_definition() {
        let (out, err) = repl(
            &Options::default(),
            "second[x] =\n  first[rest[x]]\nsecond[(A, B)]\n",
        );
        assert_eq!(err, "");
        assert_eq!(out, "SECOND\nB\n");
    }

    #[test]
    fn default_dialect_follows_kernel() {
        let pair = Options {
            kernel: KernelChoice::Pair,
            ..Options::default()
        };
        assert_eq!(pair.dialect(), Dialect::Classic);
        assert_eq!(Options::default().dialect(), Dialect::Aim8);
        assert_eq!(
            Options::default().lang_for(Some(Path::new("a.sexp"))),
            Lang::Sexpr
        );
        assert_eq!(
            Options::default().lang_for(Some(Path::new("a.mexp"))),
            Lang::Mexpr
        );
        assert_eq!(Options::default().lang_for(None), Lang::Mexpr);
    }
}
