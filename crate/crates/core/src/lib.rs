//! A small Lisp in two kernels.
//!
//! The list kernel (`first`, `rest`, `combine`, `atom`, `eq`, `null`) admits
//! only atoms and proper lists, so no improper structure can ever be built.
//! The pair kernel (`car`, `cdr`, `cons`, ...) is the familiar dotted-pair
//! variant. Programs are written as F-expressions (`f[x; y]`), translated to
//! S-expressions, and run by a generic [`Evaluator`] over either kernel or by
//! the meta-circular [`Universal`] evaluator.
//!
//! ```
//! use aim8_core::{read_f, Env, Evaluator, ListKernel};
//!
//! let mut ev = Evaluator::<ListKernel>::new();
//! let e = read_f("combine[A; (B, C)]").unwrap();
//! let v = ev.eval_f(&e, &Env::empty()).unwrap();
//! assert_eq!(v.to_string(), "(A, B, C)");
//! ```

pub mod eval;
pub mod kernel_list;
pub mod kernel_pair;
mod lexer;
pub mod metacircular;
pub mod mexpr;
pub mod reader;
pub mod translate;
pub mod value;

#[cfg(any(test, feature = "harness"))]
pub mod harness;

pub use eval::{
    eval_s, Closure, Env, Evaluator, Kernel, KernelKind, ListKernel, Object, PairKernel, Primitive,
    RuntimeError, RuntimeErrorKind, TopLevel, DEFAULT_MAX_DEPTH,
};
pub use kernel_list::{KernelError, KernelErrorKind};
pub use metacircular::{load_universal, meta_eval, Universal};
pub use mexpr::{print_f, print_item, read_f, read_program, FExpr, Ident, Item};
pub use reader::{
    print_list, print_list_in, print_pair, print_pair_in, print_s, read_all, read_list, read_pair,
    read_s, ParseError, ParseErrorKind, PrintError, SourcePosition,
};
pub use translate::{
    translate, translate_item, translate_items, translate_program, TranslateError,
};
pub use value::{
    list_to_pair, pair_to_list, ConversionError, Dialect, List, ListValue, PairValue, Symbol, Value,
};

/// Any failure on the way from source text to a value.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Runtime(#[from] RuntimeError),
}
