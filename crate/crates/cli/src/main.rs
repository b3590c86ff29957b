use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use aim8_cli::{
    run_file, run_repl_stdio, run_translate, KernelChoice, Lang, Options, EXIT_OK, EXIT_USAGE,
};
use aim8_core::{Dialect, DEFAULT_MAX_DEPTH};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "aim8",
    version,
    about = "A proper-lists-only Lisp: REPL, file runner and F-expression translator"
)]
struct Cli {
    /// Data model: proper lists only, or classic dotted pairs.
    #[arg(long, value_enum, global = true, default_value = "list")]
    kernel: KernelArg,

    /// Input notation. Defaults by file extension (.sexp or .mexp), F-expressions in the REPL.
    #[arg(long, value_enum, global = true)]
    lang: Option<LangArg>,

    /// S-expression dialect for reading and printing. Defaults to aim8 for the
    /// list kernel and classic for the pair kernel.
    #[arg(long, value_enum, global = true)]
    dialect: Option<DialectArg>,

    /// Maximum evaluation nesting depth.
    #[arg(long, global = true, env = "AIM8_MAX_DEPTH", default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Interactive read-eval-print loop (the default).
    Repl,
    /// Run a program file, printing the value of each expression.
    Run { file: PathBuf },
    /// Print the S-expression translation of an F-expression file.
    Translate { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    List,
    Pair,
}

#[derive(Clone, Copy, ValueEnum)]
enum LangArg {
    Mexpr,
    Sexpr,
}

#[derive(Clone, Copy, ValueEnum)]
enum DialectArg {
    Aim8,
    Classic,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK } as u8);
        }
    };
    let options = Options {
        kernel: match cli.kernel {
            KernelArg::List => KernelChoice::List,
            KernelArg::Pair => KernelChoice::Pair,
        },
        lang: cli.lang.map(|l| match l {
            LangArg::Mexpr => Lang::Mexpr,
            LangArg::Sexpr => Lang::Sexpr,
        }),
        dialect: cli.dialect.map(|d| match d {
            DialectArg::Aim8 => Dialect::Aim8,
            DialectArg::Classic => Dialect::Classic,
        }),
        max_depth: cli.max_depth,
    };
    let code = match cli.command.unwrap_or(Command::Repl) {
        Command::Repl => run_repl_stdio(&options),
        Command::Run { file } => run_file(&file, &options, &mut io::stdout(), &mut io::stderr()),
        Command::Translate { file } => {
            run_translate(&file, &options, &mut io::stdout(), &mut io::stderr())
        }
    };
    ExitCode::from(code as u8)
}
