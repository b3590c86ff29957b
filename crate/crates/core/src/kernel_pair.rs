//! The binary-variant primitives: unconstrained `cons`, `car`, `cdr`,
//! `atom`, `eq`, and the properness test.

use crate::kernel_list::{KernelError, KernelErrorKind};
use crate::value::PairValue;

pub fn cons(a: &PairValue, b: &PairValue) -> PairValue {
    PairValue::cons(a.clone(), b.clone())
}

pub fn car(x: &PairValue) -> Result<PairValue, KernelError> {
    match x {
        PairValue::Pair(cell) => Ok(cell.head().clone()),
        PairValue::Atom(_) => Err(KernelError::new(
            KernelErrorKind::UndefinedOnAtom,
            "car",
            x.clone(),
        )),
    }
}

pub fn cdr(x: &PairValue) -> Result<PairValue, KernelError> {
    match x {
        PairValue::Pair(cell) => Ok(cell.tail().clone()),
        PairValue::Atom(_) => Err(KernelError::new(
            KernelErrorKind::UndefinedOnAtom,
            "cdr",
            x.clone(),
        )),
    }
}

/// `NIL` is an atom here.
pub fn atom_p(x: &PairValue) -> bool {
    x.is_atom()
}

pub fn eq_p(x: &PairValue, y: &PairValue) -> Result<bool, KernelError> {
    match (x, y) {
        (PairValue::Atom(a), PairValue::Atom(b)) => Ok(a == b),
        (PairValue::Atom(_), other) | (other, _) => Err(KernelError::new(
            KernelErrorKind::NotASymbol,
            "eq",
            other.clone(),
        )),
    }
}

/// Eq to `NIL`. Not part of the binary variant proper; bound so that
/// programs written for the list kernel run unchanged here.
pub fn null_p(x: &PairValue) -> bool {
    x.is_nil()
}

/// True iff the tail chain from `x` reaches `NIL`. Cyclic chains are caught
/// with two cursors moving at different speeds, so this never loops and
/// visits at most about twice the chain length.
pub fn proper_p(x: &PairValue) -> bool {
    let mut slow = x;
    let mut fast = x;
    loop {
        match step(fast) {
            Step::Nil => return true,
            Step::Improper => return false,
            Step::Next(f) => fast = f,
        }
        match step(fast) {
            Step::Nil => return true,
            Step::Improper => return false,
            Step::Next(f) => fast = f,
        }
        slow = match slow {
            PairValue::Pair(cell) => cell.tail(),
            PairValue::Atom(_) => unreachable!("slow never passes fast"),
        };
        if let (PairValue::Pair(s), PairValue::Pair(f)) = (slow, fast) {
            if std::ptr::eq(&**s, &**f) {
                return false;
            }
        }
    }
}

enum Step<'a> {
    Nil,
    Improper,
    Next(&'a PairValue),
}

fn step(v: &PairValue) -> Step<'_> {
    match v {
        PairValue::Atom(s) if s.as_str() == "NIL" => Step::Nil,
        PairValue::Atom(_) => Step::Improper,
        PairValue::Pair(cell) => Step::Next(cell.tail()),
    }
}

/// [`proper_p`] on `x` and, recursively, on every head reachable from it.
/// False on any cycle.
pub fn proper_at_every_depth(x: &PairValue) -> bool {
    crate::value::pair_to_list(x).is_ok()
}
