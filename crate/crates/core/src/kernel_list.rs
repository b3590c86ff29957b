//! The proper-lists-only primitives: `first`, `rest`, `combine`, `atom`,
//! `eq`, `null`.
//!
//! `first` and `rest` are defined only on lists that are neither null nor
//! atomic, and `combine` refuses an atomic second argument. That last rule is
//! what keeps pairs (and so improper lists) out of this kernel.

use std::fmt;

use thiserror::Error;

use crate::value::{List, ListValue, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelErrorKind {
    UndefinedOnNull,
    UndefinedOnAtom,
    AtomicSecondArg,
    NotASymbol,
}

impl fmt::Display for KernelErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelErrorKind::UndefinedOnNull => "undefined on the null list",
            KernelErrorKind::UndefinedOnAtom => "undefined on an atom",
            KernelErrorKind::AtomicSecondArg => "second argument is atomic",
            KernelErrorKind::NotASymbol => "argument is not an atomic symbol",
        })
    }
}

/// A primitive applied outside its domain. Shared by both kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{operation}: {kind}")]
pub struct KernelError {
    pub kind: KernelErrorKind,
    pub operation: String,
    pub offending: Value,
}

impl KernelError {
    pub fn new(kind: KernelErrorKind, operation: &str, offending: impl Into<Value>) -> Self {
        KernelError {
            kind,
            operation: operation.to_string(),
            offending: offending.into(),
        }
    }

    /// Reports the error under another primitive name, e.g. an alias.
    pub fn renamed(mut self, operation: &str) -> Self {
        self.operation = operation.to_string();
        self
    }
}

fn nonempty<'a>(op: &str, x: &'a ListValue) -> Result<&'a List, KernelError> {
    match x {
        ListValue::Atom(_) => Err(KernelError::new(
            KernelErrorKind::UndefinedOnAtom,
            op,
            x.clone(),
        )),
        ListValue::List(l) if l.is_null() => Err(KernelError::new(
            KernelErrorKind::UndefinedOnNull,
            op,
            x.clone(),
        )),
        ListValue::List(l) => Ok(l),
    }
}

pub fn first(x: &ListValue) -> Result<ListValue, KernelError> {
    let l = nonempty("first", x)?;
    Ok(l.first().expect("nonempty").clone())
}

pub fn rest(x: &ListValue) -> Result<ListValue, KernelError> {
    let l = nonempty("rest", x)?;
    Ok(ListValue::List(l.rest().expect("nonempty").clone()))
}

pub fn combine(e: &ListValue, l: &ListValue) -> Result<ListValue, KernelError> {
    match l {
        ListValue::Atom(_) => Err(KernelError::new(
            KernelErrorKind::AtomicSecondArg,
            "combine",
            l.clone(),
        )),
        ListValue::List(tail) => Ok(ListValue::List(List::combine(e.clone(), tail.clone()))),
    }
}

/// `()` is not an atom here.
pub fn atom_p(x: &ListValue) -> bool {
    x.is_atom()
}

pub fn eq_p(x: &ListValue, y: &ListValue) -> Result<bool, KernelError> {
    match (x, y) {
        (ListValue::Atom(a), ListValue::Atom(b)) => Ok(a == b),
        (ListValue::Atom(_), other) | (other, _) => Err(KernelError::new(
            KernelErrorKind::NotASymbol,
            "eq",
            other.clone(),
        )),
    }
}

pub fn null_p(x: &ListValue) -> bool {
    x.is_null()
}
