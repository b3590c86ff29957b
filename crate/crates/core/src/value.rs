//! The two value models.
//!
//! [`ListValue`] is the list kernel's universe: atoms and proper lists, with
//! the null list `()` a list rather than an atom. There is no pair type, so
//! an improper list cannot be expressed at all.
//!
//! [`PairValue`] is the pair kernel's universe: atoms (with `NIL` among them)
//! and unconstrained ordered pairs.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// An atomic symbol: uppercase letters and digits, starting with a letter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "invalid atomic symbol {0:?}: expected uppercase letters and digits, starting with a letter"
)]
pub struct InvalidSymbol(pub String);

impl Symbol {
    pub fn new(name: &str) -> Result<Self, InvalidSymbol> {
        if Self::is_valid(name) {
            Ok(Symbol(Arc::from(name)))
        } else {
            Err(InvalidSymbol(name.to_string()))
        }
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
            && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Panics on an invalid name. Intended for literals.
    pub(crate) fn lit(name: &str) -> Self {
        Symbol::new(name).expect("literal symbol")
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn nil_symbol() -> Symbol {
    Symbol::lit("NIL")
}

/// Concrete syntax selection for reading and printing S-expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    /// Comma-separated lists, bare `()`, no dot notation.
    Aim8,
    /// Space-separated lists, `(a . b)` pairs, `NIL` terminator.
    Classic,
}

// ---------------------------------------------------------------------------
// List kernel values

/// A value of the list kernel.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ListValue {
    Atom(Symbol),
    List(List),
}

/// A finite proper list. Every tail is itself a `List`, so the structure
/// always terminates in the null list.
#[derive(Clone, Default)]
pub struct List(Option<Arc<Cell>>);

struct Cell {
    first: ListValue,
    rest: List,
}

impl List {
    pub fn null() -> Self {
        List(None)
    }

    pub fn is_null(&self) -> bool {
        self.0.is_none()
    }

    pub fn first(&self) -> Option<&ListValue> {
        self.0.as_ref().map(|cell| &cell.first)
    }

    pub fn rest(&self) -> Option<&List> {
        self.0.as_ref().map(|cell| &cell.rest)
    }

    pub fn combine(first: ListValue, rest: List) -> Self {
        List(Some(Arc::new(Cell { first, rest })))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.is_null()
    }

    pub fn iter(&self) -> ListIter<'_> {
        ListIter { cur: self }
    }
}

impl FromIterator<ListValue> for List {
    fn from_iter<I: IntoIterator<Item = ListValue>>(iter: I) -> Self {
        let items: Vec<ListValue> = iter.into_iter().collect();
        items
            .into_iter()
            .rev()
            .fold(List::null(), |rest, first| List::combine(first, rest))
    }
}

pub struct ListIter<'a> {
    cur: &'a List,
}

impl<'a> Iterator for ListIter<'a> {
    type Item = &'a ListValue;

    fn next(&mut self) -> Option<&'a ListValue> {
        let cell = self.cur.0.as_deref()?;
        self.cur = &cell.rest;
        Some(&cell.first)
    }
}

impl<'a> IntoIterator for &'a List {
    type Item = &'a ListValue;
    type IntoIter = ListIter<'a>;

    fn into_iter(self) -> ListIter<'a> {
        self.iter()
    }
}

impl PartialEq for List {
    fn eq(&self, other: &Self) -> bool {
        let (mut a, mut b) = (self, other);
        loop {
            match (&a.0, &b.0) {
                (None, None) => return true,
                (Some(x), Some(y)) => {
                    if Arc::ptr_eq(x, y) {
                        return true;
                    }
                    if x.first != y.first {
                        return false;
                    }
                    a = &x.rest;
                    b = &y.rest;
                }
                _ => return false,
            }
        }
    }
}

impl Eq for List {}

impl std::hash::Hash for List {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for item in self {
            item.hash(state);
        }
        state.write_u8(0xff);
    }
}

// Long lists would otherwise drop recursively along the rest chain.
impl Drop for List {
    fn drop(&mut self) {
        let mut next = self.0.take();
        while let Some(cell) = next {
            match Arc::try_unwrap(cell) {
                Ok(mut cell) => next = cell.rest.0.take(),
                Err(_) => break,
            }
        }
    }
}

impl ListValue {
    pub fn atom(name: &str) -> Self {
        ListValue::Atom(Symbol::lit(name))
    }

    pub fn null() -> Self {
        ListValue::List(List::null())
    }

    pub fn list<I: IntoIterator<Item = ListValue>>(items: I) -> Self {
        ListValue::List(items.into_iter().collect())
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, ListValue::Atom(_))
    }

    pub fn is_null(&self) -> bool {
        matches!(self, ListValue::List(l) if l.is_null())
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self {
            ListValue::Atom(s) => Some(s),
            ListValue::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&List> {
        match self {
            ListValue::Atom(_) => None,
            ListValue::List(l) => Some(l),
        }
    }

    /// Maximum nesting depth; an atom or `()` has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            ListValue::Atom(_) => 0,
            ListValue::List(l) => l.iter().map(|v| v.depth() + 1).max().unwrap_or(0),
        }
    }
}

impl fmt::Debug for ListValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::reader::print_list(self))
    }
}

impl fmt::Display for ListValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::reader::print_list(self))
    }
}

/// Structural equality over list-kernel values.
pub fn equal_values(a: &ListValue, b: &ListValue) -> bool {
    a == b
}

// ---------------------------------------------------------------------------
// Pair kernel values

/// A value of the pair kernel.
#[derive(Clone)]
pub enum PairValue {
    Atom(Symbol),
    Pair(Arc<PairCell>),
}

pub struct PairCell {
    head: PairValue,
    // Always set for pairs built through `cons`; left unset only transiently
    // by the harness while it ties a cycle.
    tail: OnceLock<PairValue>,
}

impl PairCell {
    pub fn head(&self) -> &PairValue {
        &self.head
    }

    pub fn tail(&self) -> &PairValue {
        self.tail.get().expect("pair tail is always initialized")
    }

    fn id(&self) -> *const PairCell {
        self as *const PairCell
    }
}

impl Drop for PairCell {
    fn drop(&mut self) {
        let mut next = self.tail.take();
        while let Some(PairValue::Pair(cell)) = next {
            match Arc::try_unwrap(cell) {
                Ok(mut cell) => next = cell.tail.take(),
                Err(_) => break,
            }
        }
    }
}

impl PairValue {
    pub fn atom(name: &str) -> Self {
        PairValue::Atom(Symbol::lit(name))
    }

    pub fn nil() -> Self {
        PairValue::Atom(nil_symbol())
    }

    pub fn cons(head: PairValue, tail: PairValue) -> Self {
        let cell = PairCell {
            head,
            tail: OnceLock::new(),
        };
        let _ = cell.tail.set(tail);
        PairValue::Pair(Arc::new(cell))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, PairValue::Atom(_))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, PairValue::Atom(s) if s.as_str() == "NIL")
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self {
            PairValue::Atom(s) => Some(s),
            PairValue::Pair(_) => None,
        }
    }

    pub fn as_pair(&self) -> Option<&PairCell> {
        match self {
            PairValue::Atom(_) => None,
            PairValue::Pair(cell) => Some(cell),
        }
    }

    /// Builds a NIL-terminated chain from `items`.
    pub fn list<I>(items: I) -> Self
    where
        I: IntoIterator<Item = PairValue>,
        I::IntoIter: DoubleEndedIterator,
    {
        items
            .into_iter()
            .rev()
            .fold(PairValue::nil(), |tail, head| PairValue::cons(head, tail))
    }

    /// The elements of a NIL-terminated chain, or `None` when the chain is
    /// improper or cyclic.
    pub fn proper_elements(&self) -> Option<Vec<PairValue>> {
        if !crate::kernel_pair::proper_p(self) {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = self;
        while let PairValue::Pair(cell) = cur {
            out.push(cell.head.clone());
            cur = cell.tail();
        }
        Some(out)
    }
}

impl PartialEq for PairValue {
    /// Structural equality. Terminates on cyclic structures: a pair of nodes
    /// already under comparison is assumed equal (bisimulation).
    fn eq(&self, other: &Self) -> bool {
        let mut assumed: HashSet<(*const PairCell, *const PairCell)> = HashSet::new();
        let mut stack: Vec<(&PairValue, &PairValue)> = vec![(self, other)];
        while let Some((a, b)) = stack.pop() {
            match (a, b) {
                (PairValue::Atom(x), PairValue::Atom(y)) => {
                    if x != y {
                        return false;
                    }
                }
                (PairValue::Pair(x), PairValue::Pair(y)) => {
                    if Arc::ptr_eq(x, y) || !assumed.insert((x.id(), y.id())) {
                        continue;
                    }
                    stack.push((x.tail(), y.tail()));
                    stack.push((&x.head, &y.head));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for PairValue {}

impl fmt::Debug for PairValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::reader::print_pair(self))
    }
}

impl fmt::Display for PairValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::reader::print_pair(self))
    }
}

/// Either kind of value, as produced by the dialect-generic reader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    List(ListValue),
    Pair(PairValue),
}

impl From<ListValue> for Value {
    fn from(v: ListValue) -> Self {
        Value::List(v)
    }
}

impl From<PairValue> for Value {
    fn from(v: PairValue) -> Self {
        Value::Pair(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::List(v) => v.fmt(f),
            Value::Pair(v) => v.fmt(f),
        }
    }
}

// ---------------------------------------------------------------------------
// Conversion

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConversionError {
    #[error("improper structure: a tail chain ends in the atom {0} instead of NIL")]
    ImproperStructure(Symbol),
    #[error("cyclic structure")]
    CyclicStructure,
}

/// Expands list notation into nested pairs ending in `NIL`.
pub fn list_to_pair(v: &ListValue) -> PairValue {
    match v {
        ListValue::Atom(s) => PairValue::Atom(s.clone()),
        ListValue::List(items) => {
            let elems: Vec<PairValue> = items.iter().map(list_to_pair).collect();
            PairValue::list(elems)
        }
    }
}

/// Inverse of [`list_to_pair`]. Fails on any improper tail chain or cycle.
pub fn pair_to_list(v: &PairValue) -> Result<ListValue, ConversionError> {
    let mut on_path = HashSet::new();
    pair_to_list_inner(v, &mut on_path)
}

fn pair_to_list_inner(
    v: &PairValue,
    on_path: &mut HashSet<*const PairCell>,
) -> Result<ListValue, ConversionError> {
    let cell = match v {
        PairValue::Atom(s) if s.as_str() == "NIL" => return Ok(ListValue::null()),
        PairValue::Atom(s) => return Ok(ListValue::Atom(s.clone())),
        PairValue::Pair(cell) => cell,
    };

    let mut chain: Vec<&PairCell> = Vec::new();
    let mut cur: &PairCell = cell;
    let result = loop {
        if !on_path.insert(cur.id()) {
            break Err(ConversionError::CyclicStructure);
        }
        chain.push(cur);
        match cur.tail() {
            PairValue::Pair(next) => cur = next,
            PairValue::Atom(s) if s.as_str() == "NIL" => break Ok(()),
            PairValue::Atom(s) => break Err(ConversionError::ImproperStructure(s.clone())),
        }
    };

    let items = result.and_then(|()| {
        chain
            .iter()
            .map(|c| pair_to_list_inner(&c.head, on_path))
            .collect::<Result<Vec<_>, _>>()
    });
    for c in &chain {
        on_path.remove(&c.id());
    }
    items.map(ListValue::list)
}

/// Builds cyclic pair structures. Not reachable from the language; exists
/// so tests can exercise cycle-safety paths.
#[cfg(any(test, feature = "harness"))]
pub mod cyclic {
    use super::*;

    /// A ring of `len` pairs holding `heads` in order, whose last tail points
    /// back to the first pair.
    pub fn ring(heads: &[PairValue]) -> PairValue {
        assert!(!heads.is_empty(), "a ring needs at least one node");
        let first = Arc::new(PairCell {
            head: heads[0].clone(),
            tail: OnceLock::new(),
        });
        let mut tail = PairValue::Pair(first.clone());
        for head in heads[1..].iter().rev() {
            tail = PairValue::cons(head.clone(), tail);
        }
        // The first node's tail is the chain starting at heads[1], or itself.
        let _ = first.tail.set(if heads.len() == 1 {
            PairValue::Pair(first.clone())
        } else {
            tail
        });
        PairValue::Pair(first)
    }

    /// A pair whose head is itself: `x` with `car(x) = x`, tail `NIL`.
    pub fn head_loop() -> PairValue {
        // head must be fixed at construction, so go through the tail: the
        // outer cell's tail is a cell whose head is the outer cell.
        let outer = Arc::new(PairCell {
            head: PairValue::atom("A"),
            tail: OnceLock::new(),
        });
        let inner = PairValue::cons(PairValue::Pair(outer.clone()), PairValue::nil());
        let _ = outer.tail.set(inner);
        PairValue::Pair(outer)
    }
}
