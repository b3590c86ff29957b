//! The universal interpreter: `eval` and `apply` over S-expressions, generic
//! over the active kernel.
//!
//! Special forms are `(QUOTE, e)`, `(COND, (p, e), ...)`,
//! `(LAMBDA, (v, ...), body)` and `(LABEL, name, (LAMBDA, ...))`. At top
//! level `(DEFINE, NAME, e)` binds a global. Closures capture their defining
//! environment; globals are looked up at call time, so top-level functions
//! may refer to each other in any order.
//!
//! An atom is resolved through the lexical environment, then the globals,
//! then the truth atoms `T` and `F` (and `NIL` in the pair kernel), which
//! evaluate to themselves, and finally the primitive table.

use std::collections::HashMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use thiserror::Error;

use crate::kernel_list::{self, KernelError};
use crate::kernel_pair;
use crate::mexpr::FExpr;
use crate::translate::translate;
use crate::value::{list_to_pair, ListValue, PairValue, Symbol, Value};

pub const DEFAULT_MAX_DEPTH: usize = 10_000;

/// Number of enclosing expressions recorded on an error.
const TRACE_LIMIT: usize = 16;

// ---------------------------------------------------------------------------
// Kernels

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    List,
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Primitive {
    First,
    Rest,
    Combine,
    Car,
    Cdr,
    Cons,
    Atom,
    Eq,
    Null,
}

impl Primitive {
    pub const ALL: [Primitive; 9] = [
        Primitive::First,
        Primitive::Rest,
        Primitive::Combine,
        Primitive::Car,
        Primitive::Cdr,
        Primitive::Cons,
        Primitive::Atom,
        Primitive::Eq,
        Primitive::Null,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Primitive::First => "FIRST",
            Primitive::Rest => "REST",
            Primitive::Combine => "COMBINE",
            Primitive::Car => "CAR",
            Primitive::Cdr => "CDR",
            Primitive::Cons => "CONS",
            Primitive::Atom => "ATOM",
            Primitive::Eq => "EQ",
            Primitive::Null => "NULL",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Primitive::Combine | Primitive::Cons | Primitive::Eq => 2,
            _ => 1,
        }
    }

    fn lower(self) -> String {
        self.name().to_ascii_lowercase()
    }
}

/// The data model and primitive set an [`Evaluator`] runs over.
pub trait Kernel: Sized + 'static {
    type Value: Clone + PartialEq + fmt::Debug + fmt::Display + Into<Value> + Send + Sync;

    const KIND: KernelKind;

    fn atom(sym: Symbol) -> Self::Value;
    fn as_symbol(v: &Self::Value) -> Option<&Symbol>;
    /// The elements of `v` viewed as a form, or `None` if it is not a list.
    fn elements(v: &Self::Value) -> Option<Vec<Self::Value>>;
    /// Atoms that evaluate to themselves unless bound.
    fn self_evaluating(sym: &Symbol) -> bool;
    fn from_list(v: &ListValue) -> Self::Value;
    fn apply_primitive(p: Primitive, args: &[Self::Value]) -> Result<Self::Value, KernelError>;

    fn truth(b: bool) -> Self::Value {
        Self::atom(Symbol::new(if b { "T" } else { "F" }).expect("truth atom"))
    }
}

/// Proper lists only; `()` is not an atom.
#[derive(Debug, Clone, Copy)]
pub struct ListKernel;

/// Unconstrained pairs; `NIL` is an atom.
#[derive(Debug, Clone, Copy)]
pub struct PairKernel;

impl Kernel for ListKernel {
    type Value = ListValue;
    const KIND: KernelKind = KernelKind::List;

    fn atom(sym: Symbol) -> ListValue {
        ListValue::Atom(sym)
    }

    fn as_symbol(v: &ListValue) -> Option<&Symbol> {
        v.as_symbol()
    }

    fn elements(v: &ListValue) -> Option<Vec<ListValue>> {
        v.as_list().map(|l| l.iter().cloned().collect())
    }

    fn self_evaluating(sym: &Symbol) -> bool {
        matches!(sym.as_str(), "T" | "F")
    }

    fn from_list(v: &ListValue) -> ListValue {
        v.clone()
    }

    fn apply_primitive(p: Primitive, args: &[ListValue]) -> Result<ListValue, KernelError> {
        use Primitive::*;
        let rename = |e: KernelError| e.renamed(&p.lower());
        match p {
            First | Car => kernel_list::first(&args[0]).map_err(rename),
            Rest | Cdr => kernel_list::rest(&args[0]).map_err(rename),
            Combine | Cons => kernel_list::combine(&args[0], &args[1]).map_err(rename),
            Atom => Ok(Self::truth(kernel_list::atom_p(&args[0]))),
            Eq => kernel_list::eq_p(&args[0], &args[1]).map(Self::truth),
            Null => Ok(Self::truth(kernel_list::null_p(&args[0]))),
        }
    }
}

impl Kernel for PairKernel {
    type Value = PairValue;
    const KIND: KernelKind = KernelKind::Pair;

    fn atom(sym: Symbol) -> PairValue {
        PairValue::Atom(sym)
    }

    fn as_symbol(v: &PairValue) -> Option<&Symbol> {
        v.as_symbol()
    }

    fn elements(v: &PairValue) -> Option<Vec<PairValue>> {
        match v {
            PairValue::Atom(_) => None,
            PairValue::Pair(_) => v.proper_elements(),
        }
    }

    fn self_evaluating(sym: &Symbol) -> bool {
        matches!(sym.as_str(), "T" | "F" | "NIL")
    }

    fn from_list(v: &ListValue) -> PairValue {
        list_to_pair(v)
    }

    fn apply_primitive(p: Primitive, args: &[PairValue]) -> Result<PairValue, KernelError> {
        use Primitive::*;
        let rename = |e: KernelError| e.renamed(&p.lower());
        match p {
            First | Car => kernel_pair::car(&args[0]).map_err(rename),
            Rest | Cdr => kernel_pair::cdr(&args[0]).map_err(rename),
            Combine | Cons => Ok(kernel_pair::cons(&args[0], &args[1])),
            Atom => Ok(Self::truth(kernel_pair::atom_p(&args[0]))),
            Eq => kernel_pair::eq_p(&args[0], &args[1]).map(Self::truth),
            Null => Ok(Self::truth(kernel_pair::null_p(&args[0]))),
        }
    }
}

// ---------------------------------------------------------------------------
// Runtime objects

/// What an expression evaluates to: a datum or something callable.
pub enum Object<V> {
    Data(V),
    Closure(Arc<Closure<V>>),
    Primitive(Primitive),
}

pub struct Closure<V> {
    pub params: Vec<Symbol>,
    pub body: V,
    pub env: Env<V>,
    /// Name bound to the closure itself inside `body` (from LABEL).
    pub self_name: Option<Symbol>,
}

impl<V> Object<V> {
    pub fn as_data(&self) -> Option<&V> {
        match self {
            Object::Data(v) => Some(v),
            _ => None,
        }
    }

    pub fn into_data(self) -> Option<V> {
        match self {
            Object::Data(v) => Some(v),
            _ => None,
        }
    }
}

impl<V: Clone> Clone for Object<V> {
    fn clone(&self) -> Self {
        match self {
            Object::Data(v) => Object::Data(v.clone()),
            Object::Closure(c) => Object::Closure(c.clone()),
            Object::Primitive(p) => Object::Primitive(*p),
        }
    }
}

impl<V: PartialEq> PartialEq for Object<V> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Object::Data(a), Object::Data(b)) => a == b,
            (Object::Closure(a), Object::Closure(b)) => Arc::ptr_eq(a, b),
            (Object::Primitive(a), Object::Primitive(b)) => a == b,
            _ => false,
        }
    }
}

impl<V: fmt::Display> fmt::Display for Object<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Data(v) => v.fmt(f),
            Object::Closure(c) => match &c.self_name {
                Some(n) => write!(f, "#<closure {n}>"),
                None => f.write_str("#<closure>"),
            },
            Object::Primitive(p) => write!(f, "#<primitive {}>", p.name()),
        }
    }
}

impl<V: fmt::Debug> fmt::Debug for Object<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Data(v) => v.fmt(f),
            Object::Closure(c) => match &c.self_name {
                Some(n) => write!(f, "#<closure {n}>"),
                None => f.write_str("#<closure>"),
            },
            Object::Primitive(p) => write!(f, "#<primitive {}>", p.name()),
        }
    }
}

/// Association-list environment, innermost binding first. Extension shares
/// the parent.
pub struct Env<V>(Option<Arc<Frame<V>>>);

struct Frame<V> {
    name: Symbol,
    value: Object<V>,
    parent: Env<V>,
}

impl<V> Clone for Env<V> {
    fn clone(&self) -> Self {
        Env(self.0.clone())
    }
}

impl<V> Default for Env<V> {
    fn default() -> Self {
        Env(None)
    }
}

impl<V> Env<V> {
    pub fn empty() -> Self {
        Env(None)
    }

    pub fn extend(&self, name: Symbol, value: Object<V>) -> Self {
        Env(Some(Arc::new(Frame {
            name,
            value,
            parent: self.clone(),
        })))
    }

    pub fn lookup(&self, name: &Symbol) -> Option<&Object<V>> {
        let mut cur = self;
        while let Some(frame) = &cur.0 {
            if &frame.name == name {
                return Some(&frame.value);
            }
            cur = &frame.parent;
        }
        None
    }

    pub fn len(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let Some(frame) = &cur.0 {
            n += 1;
            cur = &frame.parent;
        }
        n
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }
}

// ---------------------------------------------------------------------------
// Errors

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuntimeErrorKind {
    Unbound,
    Arity,
    NotCallable,
    KernelFault,
    CondExhausted,
    DepthExceeded,
    /// A function where data was required, or a COND test that is not T/F.
    TypeMismatch,
    /// A special form with the wrong shape.
    Malformed,
}

impl fmt::Display for RuntimeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuntimeErrorKind::Unbound => "unbound variable",
            RuntimeErrorKind::Arity => "wrong number of arguments",
            RuntimeErrorKind::NotCallable => "not callable",
            RuntimeErrorKind::KernelFault => "kernel fault",
            RuntimeErrorKind::CondExhausted => "no COND test was true",
            RuntimeErrorKind::DepthExceeded => "recursion limit exceeded",
            RuntimeErrorKind::TypeMismatch => "type mismatch",
            RuntimeErrorKind::Malformed => "malformed expression",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct RuntimeError {
    pub kind: RuntimeErrorKind,
    pub detail: String,
    /// Set exactly when `kind` is `KernelFault`.
    pub fault: Option<KernelError>,
    /// Enclosing expressions, innermost first.
    pub trace: Vec<Value>,
}

impl fmt::Display for RuntimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.fault {
            Some(fault) => fault.fmt(f),
            None if self.detail.is_empty() => self.kind.fmt(f),
            None => write!(f, "{}: {}", self.kind, self.detail),
        }
    }
}

impl RuntimeError {
    pub fn new(kind: RuntimeErrorKind, detail: impl Into<String>) -> Self {
        RuntimeError {
            kind,
            detail: detail.into(),
            fault: None,
            trace: Vec::new(),
        }
    }

    pub fn kernel(fault: KernelError) -> Self {
        RuntimeError {
            kind: RuntimeErrorKind::KernelFault,
            detail: String::new(),
            fault: Some(fault),
            trace: Vec::new(),
        }
    }
}

fn malformed(detail: impl Into<String>) -> RuntimeError {
    RuntimeError::new(RuntimeErrorKind::Malformed, detail)
}

// ---------------------------------------------------------------------------
// Evaluator

/// Result of running one top-level form.
#[derive(Debug, Clone, PartialEq)]
pub enum TopLevel<V> {
    Defined(Symbol),
    Value(Object<V>),
}

/// A single-threaded interpreter instance holding the global definitions.
pub struct Evaluator<K: Kernel> {
    globals: HashMap<Symbol, Object<K::Value>>,
    max_depth: usize,
    depth: usize,
    _kernel: PhantomData<K>,
}

impl<K: Kernel> Default for Evaluator<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Kernel> Evaluator<K> {
    pub fn new() -> Self {
        Self::with_max_depth(DEFAULT_MAX_DEPTH)
    }

    /// `max_depth` bounds the nesting of `eval` calls.
    pub fn with_max_depth(max_depth: usize) -> Self {
        Evaluator {
            globals: HashMap::new(),
            max_depth,
            depth: 0,
            _kernel: PhantomData,
        }
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn define(&mut self, name: Symbol, value: Object<K::Value>) {
        self.globals.insert(name, value);
    }

    pub fn global(&self, name: &Symbol) -> Option<&Object<K::Value>> {
        self.globals.get(name)
    }

    /// Runs a top-level form: `(DEFINE, NAME, e)` binds a global, anything
    /// else is evaluated in the empty environment.
    pub fn run_toplevel(&mut self, form: &K::Value) -> Result<TopLevel<K::Value>, RuntimeError> {
        if let Some(items) = K::elements(form) {
            if items
                .first()
                .and_then(K::as_symbol)
                .is_some_and(|s| s.as_str() == "DEFINE")
            {
                let [_, name, body] = items.as_slice() else {
                    return Err(malformed("DEFINE takes a name and an expression"));
                };
                let name = K::as_symbol(name)
                    .ok_or_else(|| malformed("DEFINE needs an atom as its name"))?
                    .clone();
                let value = self.eval(body, &Env::empty())?;
                self.define(name.clone(), value);
                return Ok(TopLevel::Defined(name));
            }
        }
        self.eval(form, &Env::empty()).map(TopLevel::Value)
    }

    /// Evaluates an F-expression by translating it first.
    pub fn eval_f(
        &mut self,
        e: &FExpr,
        env: &Env<K::Value>,
    ) -> Result<Object<K::Value>, crate::Error> {
        let s = translate(e)?;
        Ok(self.eval(&K::from_list(&s), env)?)
    }

    pub fn eval(
        &mut self,
        expr: &K::Value,
        env: &Env<K::Value>,
    ) -> Result<Object<K::Value>, RuntimeError> {
        if self.depth >= self.max_depth {
            let mut err = RuntimeError::new(
                RuntimeErrorKind::DepthExceeded,
                format!("evaluation nested deeper than {}", self.max_depth),
            );
            err.trace.push(expr.clone().into());
            return Err(err);
        }
        self.depth += 1;
        let result = stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || self.eval_form(expr, env));
        self.depth -= 1;
        result.map_err(|mut err| {
            if err.trace.len() < TRACE_LIMIT {
                err.trace.push(expr.clone().into());
            }
            err
        })
    }

    fn eval_form(
        &mut self,
        expr: &K::Value,
        env: &Env<K::Value>,
    ) -> Result<Object<K::Value>, RuntimeError> {
        if let Some(sym) = K::as_symbol(expr) {
            return self.lookup(sym, env);
        }
        let items = K::elements(expr).ok_or_else(|| malformed("a form must be a proper list"))?;
        let Some(head) = items.first() else {
            // the null list
            return Ok(Object::Data(expr.clone()));
        };
        if let Some(sym) = K::as_symbol(head) {
            match sym.as_str() {
                "QUOTE" => return self.eval_quote(&items),
                "COND" => return self.eval_cond(&items, env),
                "LAMBDA" => return self.make_closure(&items, env, None),
                "LABEL" => return self.eval_label(&items, env),
                "DEFINE" => return Err(malformed("DEFINE is only allowed at top level")),
                _ => {}
            }
        }
        let f = self.eval(head, env)?;
        let mut args = Vec::with_capacity(items.len() - 1);
        for a in &items[1..] {
            args.push(self.eval(a, env)?);
        }
        self.apply(&f, args)
    }

    fn lookup(&self, sym: &Symbol, env: &Env<K::Value>) -> Result<Object<K::Value>, RuntimeError> {
        if let Some(v) = env.lookup(sym).or_else(|| self.globals.get(sym)) {
            return Ok(v.clone());
        }
        if K::self_evaluating(sym) {
            return Ok(Object::Data(K::atom(sym.clone())));
        }
        Primitive::from_name(sym.as_str())
            .map(Object::Primitive)
            .ok_or_else(|| RuntimeError::new(RuntimeErrorKind::Unbound, sym.to_string()))
    }

    fn eval_quote(&mut self, items: &[K::Value]) -> Result<Object<K::Value>, RuntimeError> {
        match items {
            [_, quoted] => Ok(Object::Data(quoted.clone())),
            _ => Err(malformed("QUOTE takes exactly one operand")),
        }
    }

    fn eval_cond(
        &mut self,
        items: &[K::Value],
        env: &Env<K::Value>,
    ) -> Result<Object<K::Value>, RuntimeError> {
        for clause in &items[1..] {
            let parts = K::elements(clause).unwrap_or_default();
            let [test, result] = parts.as_slice() else {
                return Err(malformed(format!(
                    "COND clause {clause} is not a (test, result) pair"
                )));
            };
            let outcome = self.eval(test, env)?;
            match outcome.as_data().and_then(K::as_symbol).map(Symbol::as_str) {
                Some("T") => return self.eval(result, env),
                Some("F") => continue,
                _ => {
                    return Err(RuntimeError::new(
                        RuntimeErrorKind::TypeMismatch,
                        format!("COND test {test} yielded {outcome}, expected T or F"),
                    ))
                }
            }
        }
        Err(RuntimeError::new(RuntimeErrorKind::CondExhausted, ""))
    }

    fn make_closure(
        &mut self,
        items: &[K::Value],
        env: &Env<K::Value>,
        self_name: Option<Symbol>,
    ) -> Result<Object<K::Value>, RuntimeError> {
        let [_, params, body] = items else {
            return Err(malformed("LAMBDA takes a parameter list and a body"));
        };
        let params =
            K::elements(params).ok_or_else(|| malformed("LAMBDA parameters must be a list"))?;
        let mut names: Vec<Symbol> = Vec::with_capacity(params.len());
        for p in &params {
            let name = K::as_symbol(p)
                .ok_or_else(|| malformed(format!("parameter {p} is not an atom")))?;
            if names.contains(name) {
                return Err(malformed(format!("parameter {name} appears twice")));
            }
            names.push(name.clone());
        }
        Ok(Object::Closure(Arc::new(Closure {
            params: names,
            body: body.clone(),
            env: env.clone(),
            self_name,
        })))
    }

    fn eval_label(
        &mut self,
        items: &[K::Value],
        env: &Env<K::Value>,
    ) -> Result<Object<K::Value>, RuntimeError> {
        let [_, name, lambda] = items else {
            return Err(malformed("LABEL takes a name and a LAMBDA expression"));
        };
        let name =
            K::as_symbol(name).ok_or_else(|| malformed("LABEL needs an atom as its name"))?;
        let lambda_items = K::elements(lambda)
            .filter(|l| {
                l.first()
                    .and_then(K::as_symbol)
                    .is_some_and(|s| s.as_str() == "LAMBDA")
            })
            .ok_or_else(|| malformed("LABEL must name a LAMBDA expression"))?;
        self.make_closure(&lambda_items, env, Some(name.clone()))
    }

    /// Applies an evaluated function to evaluated arguments.
    pub fn apply(
        &mut self,
        f: &Object<K::Value>,
        args: Vec<Object<K::Value>>,
    ) -> Result<Object<K::Value>, RuntimeError> {
        match f {
            Object::Primitive(p) => {
                if args.len() != p.arity() {
                    return Err(RuntimeError::new(
                        RuntimeErrorKind::Arity,
                        format!(
                            "{} takes {} argument(s), got {}",
                            p.name(),
                            p.arity(),
                            args.len()
                        ),
                    ));
                }
                let data = args
                    .into_iter()
                    .map(|a| match a {
                        Object::Data(v) => Ok(v),
                        other => Err(RuntimeError::new(
                            RuntimeErrorKind::TypeMismatch,
                            format!("{} expects data, got {other}", p.name()),
                        )),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                K::apply_primitive(*p, &data)
                    .map(Object::Data)
                    .map_err(RuntimeError::kernel)
            }
            Object::Closure(c) => {
                if args.len() != c.params.len() {
                    return Err(RuntimeError::new(
                        RuntimeErrorKind::Arity,
                        format!(
                            "{f} takes {} argument(s), got {}",
                            c.params.len(),
                            args.len()
                        ),
                    ));
                }
                let mut env = c.env.clone();
                if let Some(name) = &c.self_name {
                    env = env.extend(name.clone(), Object::Closure(c.clone()));
                }
                for (p, a) in c.params.iter().zip(args) {
                    env = env.extend(p.clone(), a);
                }
                self.eval(&c.body, &env)
            }
            Object::Data(v) => Err(RuntimeError::new(
                RuntimeErrorKind::NotCallable,
                v.to_string(),
            )),
        }
    }
}

/// Evaluates `expr` in a fresh evaluator of the kernel matching its kind:
/// list values run under the list kernel, pair values under the pair kernel.
pub fn eval_s(expr: &Value) -> Result<Value, RuntimeError> {
    fn data<V: Into<Value>>(o: Object<V>) -> Result<Value, RuntimeError>
    where
        Object<V>: fmt::Display,
    {
        match o {
            Object::Data(v) => Ok(v.into()),
            other => Err(RuntimeError::new(
                RuntimeErrorKind::TypeMismatch,
                format!("result {other} is a function, not data"),
            )),
        }
    }
    match expr {
        Value::List(v) => data(Evaluator::<ListKernel>::new().eval(v, &Env::empty())?),
        Value::Pair(v) => data(Evaluator::<PairKernel>::new().eval(v, &Env::empty())?),
    }
}
