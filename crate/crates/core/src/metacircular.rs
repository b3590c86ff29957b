//! The universal function as an object-language program.
//!
//! `assets/universal.mexp` defines `meval`, `mapply`, `mevcon`, `massoc` and
//! `mpairup` against the list kernel. [`Universal`] loads the translated
//! definitions into a host [`Evaluator`] and runs closed S-language programs
//! through `meval` with an empty meta-environment.

use std::collections::HashSet;

use crate::eval::{
    Env, Evaluator, ListKernel, Object, Primitive, RuntimeError, RuntimeErrorKind, TopLevel,
};
use crate::mexpr::read_program;
use crate::translate::translate_items;
use crate::value::{ListValue, Symbol};
use crate::Error;

/// F-expression source of the meta-evaluator.
pub const UNIVERSAL_MEXP: &str = include_str!("../assets/universal.mexp");

/// Golden aim8 translation of [`UNIVERSAL_MEXP`], one definition per line.
pub const UNIVERSAL_SEXP: &str = include_str!("../assets/universal.sexp");

/// Names the meta-evaluator defines, in source order.
pub const UNIVERSAL_NAMES: [&str; 5] = ["MEVAL", "MAPPLY", "MEVCON", "MASSOC", "MPAIRUP"];

/// The translated definitions of the shipped asset: a list of
/// `(DEFINE, NAME, (LAMBDA, ...))` forms.
pub fn load_universal() -> Result<ListValue, Error> {
    load_universal_from(UNIVERSAL_MEXP)
}

/// Like [`load_universal`] for an alternative source text.
pub fn load_universal_from(source: &str) -> Result<ListValue, Error> {
    let items = read_program(source)?;
    Ok(ListValue::list(translate_items(&items)?))
}

/// A host evaluator with the meta-evaluator loaded.
pub struct Universal {
    host: Evaluator<ListKernel>,
}

impl Universal {
    pub fn new() -> Result<Self, Error> {
        Self::with_host(Evaluator::new())
    }

    pub fn with_host(mut host: Evaluator<ListKernel>) -> Result<Self, Error> {
        let defs = load_universal()?;
        for def in defs.as_list().expect("definitions list") {
            match host.run_toplevel(def)? {
                TopLevel::Defined(_) => {}
                TopLevel::Value(_) => unreachable!("the asset contains only definitions"),
            }
        }
        Ok(Universal { host })
    }

    /// Runs `expr` under the meta-evaluator: `meval[expr; ()]`.
    pub fn meta_eval(&mut self, expr: &ListValue) -> Result<ListValue, RuntimeError> {
        let call = ListValue::list([
            ListValue::atom("MEVAL"),
            ListValue::list([ListValue::atom("QUOTE"), expr.clone()]),
            ListValue::list([ListValue::atom("QUOTE"), ListValue::null()]),
        ]);
        match self.host.eval(&call, &Env::empty())? {
            Object::Data(v) => Ok(v),
            other => Err(RuntimeError::new(
                RuntimeErrorKind::TypeMismatch,
                format!("meta-evaluator returned {other}"),
            )),
        }
    }

    pub fn host(&mut self) -> &mut Evaluator<ListKernel> {
        &mut self.host
    }
}

/// Runs `expr` under a fresh meta-evaluator.
pub fn meta_eval(expr: &ListValue) -> Result<ListValue, Error> {
    Ok(Universal::new()?.meta_eval(expr)?)
}

/// Heads of application forms in `defs` that the meta-evaluator itself
/// would not recognize: anything other than a special form, a primitive,
/// a defined name or a bound parameter. Empty for a self-interpretable
/// program.
pub fn uninterpretable_heads(defs: &ListValue) -> Vec<Symbol> {
    let mut known: HashSet<String> = ["QUOTE", "COND", "LAMBDA", "LABEL"]
        .into_iter()
        .map(String::from)
        .chain(Primitive::ALL.iter().map(|p| p.name().to_string()))
        .collect();
    let mut bodies = Vec::new();
    for def in defs.as_list().into_iter().flatten() {
        let parts: Vec<&ListValue> = def
            .as_list()
            .map(|l| l.iter().collect())
            .unwrap_or_default();
        if let [_, name, body] = parts.as_slice() {
            if let Some(s) = name.as_symbol() {
                known.insert(s.to_string());
            }
            bodies.push(*body);
        }
    }
    let mut out = Vec::new();
    for body in bodies {
        scan(body, &known, &mut out);
    }
    out
}

fn scan(e: &ListValue, known: &HashSet<String>, out: &mut Vec<Symbol>) {
    let Some(items) = e.as_list() else { return };
    let items: Vec<&ListValue> = items.iter().collect();
    let Some(head) = items.first() else { return };
    match head.as_symbol().map(Symbol::as_str) {
        Some("QUOTE") => {}
        Some("LAMBDA") | Some("LABEL") => {
            let mut known = known.clone();
            let mut rest = &items[1..];
            if head.as_symbol().map(Symbol::as_str) == Some("LABEL") {
                if let Some(n) = items.get(1).and_then(|n| n.as_symbol()) {
                    known.insert(n.to_string());
                }
                rest = &items[2..];
                for e in rest {
                    scan(e, &known, out);
                }
                return;
            }
            if let Some(params) = rest.first().and_then(|p| p.as_list()) {
                known.extend(
                    params
                        .iter()
                        .filter_map(|p| p.as_symbol())
                        .map(|s| s.to_string()),
                );
                rest = &rest[1..];
            }
            for e in rest {
                scan(e, &known, out);
            }
        }
        Some("COND") => {
            for clause in &items[1..] {
                for part in clause.as_list().into_iter().flatten() {
                    scan(part, known, out);
                }
            }
        }
        Some(name) => {
            if !known.contains(name) {
                out.push(head.as_symbol().expect("atom head").clone());
            }
            for e in &items[1..] {
                scan(e, known, out);
            }
        }
        None => {
            for e in &items {
                scan(e, known, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Evaluator;
    use crate::kernel_pair::proper_at_every_depth;
    use crate::reader::{print_list, read_list};
    use crate::value::list_to_pair;

    fn s(src: &str) -> ListValue {
        read_list(src).unwrap()
    }

    fn host_eval(expr: &ListValue) -> ListValue {
        Evaluator::<ListKernel>::new()
            .eval(expr, &Env::empty())
            .unwrap()
            .into_data()
            .unwrap()
    }

    #[test]
    fn asset_has_five_definitions() {
        let defs = load_universal().unwrap();
        let list = defs.as_list().unwrap();
        assert_eq!(list.len(), 5);
        let names: Vec<String> = list
            .iter()
            .map(|d| d.as_list().unwrap().iter().nth(1).unwrap().to_string())
            .collect();
        assert_eq!(names, UNIVERSAL_NAMES);
    }

    #[test]
    fn asset_is_proper_at_every_depth() {
        assert!(proper_at_every_depth(&list_to_pair(
            &load_universal().unwrap()
        )));
    }

    #[test]
    fn golden_translation_matches() {
        let defs = load_universal().unwrap();
        let rendered: String = defs
            .as_list()
            .unwrap()
            .iter()
            .map(|d| print_list(d) + "\n")
            .collect();
        assert_eq!(rendered, UNIVERSAL_SEXP);
    }

    #[test]
    fn asset_syntax_error_has_position() {
        let broken = "meval[e; a] =\n  [atom[e] -> e;\n   null[e] => e]\n";
        match load_universal_from(broken) {
            Err(Error::Parse(e)) => assert_eq!((e.position.line, e.position.column), (3, 12)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn meta_evaluator_interprets_only_what_it_implements() {
        assert_eq!(uninterpretable_heads(&load_universal().unwrap()), vec![]);
        let foreign = s("((DEFINE, G, (LAMBDA, (X), (SETQ, X, X))))");
        assert_eq!(
            uninterpretable_heads(&foreign),
            vec![Symbol::new("SETQ").unwrap()]
        );
    }

    #[test]
    fn meta_eval_examples() {
        let mut u = Universal::new().unwrap();
        for (src, expected) in [
            ("(QUOTE, A)", "A"),
            ("((LAMBDA, (X), (FIRST, X)), (QUOTE, (A, B)))", "A"),
            (
                "((LABEL, F, (LAMBDA, (X), (COND, ((NULL, X), (QUOTE, ())), (T, (F, (REST, X)))))), (QUOTE, (A, B)))",
                "()",
            ),
        ] {
            let e = s(src);
            assert_eq!(u.meta_eval(&e).unwrap(), s(expected), "{src}");
            assert_eq!(host_eval(&e), s(expected), "{src}");
        }
    }

    #[test]
    fn meta_level_errors_surface_as_host_errors() {
        let err = meta_eval(&s("(FIRST, (QUOTE, ()))")).unwrap_err();
        match err {
            Error::Runtime(e) => assert_eq!(e.kind, RuntimeErrorKind::KernelFault),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn meta_over_meta_smoke() {
        // A tiny evaluator for QUOTE and FIRST, run by the meta-evaluator.
        let tiny = s("((LABEL, TINY, (LAMBDA, (E), (COND, \
                ((ATOM, E), E), \
                ((EQ, (FIRST, E), (QUOTE, QUOTE)), (FIRST, (REST, E))), \
                (T, (FIRST, (TINY, (FIRST, (REST, E)))))))), \
              (QUOTE, (FIRST, (QUOTE, (A, B)))))");
        assert_eq!(host_eval(&tiny), s("A"));
        assert_eq!(meta_eval(&tiny).unwrap(), s("A"));
    }
}
