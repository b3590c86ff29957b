//! Translation from F-expressions to S-expressions.
//!
//! | F-expression              | S-expression                         |
//! |---------------------------|--------------------------------------|
//! | `x`                       | `X`                                  |
//! | constant `s`              | `(QUOTE, s)`                         |
//! | `f[e1; ...; en]`          | `(F, e1*, ..., en*)`                 |
//! | `[p1 -> e1; ...]`         | `(COND, (p1*, e1*), ...)`            |
//! | `lambda[[x; y]; e]`       | `(LAMBDA, (X, Y), e*)`               |
//! | `label[f; e]`             | `(LABEL, F, e*)`                     |
//!
//! A program definition `name = e` becomes `(DEFINE, NAME, e*)`.

use std::collections::HashSet;

use thiserror::Error;

use crate::mexpr::{FExpr, Ident, Item};
use crate::value::{ListValue, Symbol};

/// Atoms that head special forms and so cannot name variables.
pub const RESERVED_HEADS: [&str; 5] = ["QUOTE", "COND", "LAMBDA", "LABEL", "DEFINE"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("variable {0} collides with the reserved atom {1}")]
    NameCollision(Ident, Symbol),
    #[error("{0} is defined twice")]
    DuplicateDefinition(Ident),
}

pub fn translate(e: &FExpr) -> Result<ListValue, TranslateError> {
    Ok(match e {
        FExpr::Var(v) => ListValue::Atom(upcase(v)?),
        FExpr::Const(c) => ListValue::list([ListValue::atom("QUOTE"), c.clone()]),
        FExpr::App(f, args) => {
            let mut items = Vec::with_capacity(args.len() + 1);
            items.push(translate(f)?);
            for a in args {
                items.push(translate(a)?);
            }
            ListValue::list(items)
        }
        FExpr::Cond(clauses) => {
            let mut items = Vec::with_capacity(clauses.len() + 1);
            items.push(ListValue::atom("COND"));
            for (p, r) in clauses {
                items.push(ListValue::list([translate(p)?, translate(r)?]));
            }
            ListValue::list(items)
        }
        FExpr::Lambda(params, body) => {
            let params = params
                .iter()
                .map(|p| upcase(p).map(ListValue::Atom))
                .collect::<Result<Vec<_>, _>>()?;
            ListValue::list([
                ListValue::atom("LAMBDA"),
                ListValue::list(params),
                translate(body)?,
            ])
        }
        FExpr::Label(name, body) => ListValue::list([
            ListValue::atom("LABEL"),
            ListValue::Atom(upcase(name)?),
            translate(body)?,
        ]),
    })
}

/// Translates a batch of named definitions, rejecting repeated names.
pub fn translate_program(
    defs: &[(Ident, FExpr)],
) -> Result<Vec<(Symbol, ListValue)>, TranslateError> {
    let mut seen = HashSet::new();
    defs.iter()
        .map(|(name, e)| {
            if !seen.insert(name) {
                return Err(TranslateError::DuplicateDefinition(name.clone()));
            }
            Ok((upcase(name)?, translate(e)?))
        })
        .collect()
}

/// Translates one program item: definitions become `(DEFINE, NAME, e*)`.
pub fn translate_item(item: &Item) -> Result<ListValue, TranslateError> {
    match item {
        Item::Define(name, e) => Ok(ListValue::list([
            ListValue::atom("DEFINE"),
            ListValue::Atom(upcase(name)?),
            translate(e)?,
        ])),
        Item::Expr(e) => translate(e),
    }
}

/// Translates every item of a program, rejecting repeated definitions.
pub fn translate_items(items: &[Item]) -> Result<Vec<ListValue>, TranslateError> {
    let mut seen = HashSet::new();
    items
        .iter()
        .map(|item| {
            if let Item::Define(name, _) = item {
                if !seen.insert(name) {
                    return Err(TranslateError::DuplicateDefinition(name.clone()));
                }
            }
            translate_item(item)
        })
        .collect()
}

fn upcase(v: &Ident) -> Result<Symbol, TranslateError> {
    let upper = v.as_str().to_ascii_uppercase();
    let sym = Symbol::new(&upper).expect("uppercased identifier is a valid atom");
    if RESERVED_HEADS.contains(&upper.as_str()) {
        return Err(TranslateError::NameCollision(v.clone(), sym));
    }
    Ok(sym)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mexpr::{read_f, read_program};
    use crate::reader::read_list;
    use proptest::prelude::*;

    fn t(src: &str) -> ListValue {
        translate(&read_f(src).unwrap()).unwrap()
    }

    fn s(src: &str) -> ListValue {
        read_list(src).unwrap()
    }

    #[test]
    fn rule_examples() {
        assert_eq!(t("first[x]"), s("(FIRST, X)"));
        assert_eq!(t("(A, B)"), s("(QUOTE, (A, B))"));
        assert_eq!(t("lambda[[x]; first[x]]"), s("(LAMBDA, (X), (FIRST, X))"));
        assert_eq!(
            t("[eq[x; A] -> x; T -> y]"),
            s("(COND, ((EQ, X, (QUOTE, A)), X), ((QUOTE, T), Y))")
        );
        assert_eq!(
            t("label[f; lambda[[x]; f[x]]]"),
            s("(LABEL, F, (LAMBDA, (X), (F, X)))")
        );
        assert_eq!(
            t("lambda[[x]; x][()]"),
            s("((LAMBDA, (X), X), (QUOTE, ()))")
        );
        assert_eq!(t("f[]"), s("(F)"));
    }

    #[test]
    fn name_collisions() {
        for name in ["quote", "cond", "define"] {
            let e = read_f(&format!("f[{name}]")).unwrap();
            assert!(
                matches!(translate(&e), Err(TranslateError::NameCollision(..))),
                "{name}"
            );
        }
        let e = read_f("lambda[[cond]; A]").unwrap();
        assert!(matches!(
            translate(&e),
            Err(TranslateError::NameCollision(..))
        ));
    }

    #[test]
    fn programs() {
        assert_eq!(translate_program(&[]).unwrap(), vec![]);
        let id = Ident::new("id").unwrap();
        let out =
            translate_program(&[(id.clone(), FExpr::lambda(&["x"], FExpr::var("x")))]).unwrap();
        assert_eq!(
            out,
            vec![(Symbol::new("ID").unwrap(), s("(LAMBDA, (X), X)"))]
        );
        let dup =
            translate_program(&[(id.clone(), FExpr::var("x")), (id.clone(), FExpr::var("y"))]);
        assert_eq!(dup, Err(TranslateError::DuplicateDefinition(id)));
    }

    #[test]
    fn program_items() {
        let items = read_program("id[x] = x\nid[A]").unwrap();
        let out = translate_items(&items).unwrap();
        assert_eq!(
            out,
            vec![s("(DEFINE, ID, (LAMBDA, (X), X))"), s("(ID, (QUOTE, A))")]
        );
        let items = read_program("f = A\nf = B").unwrap();
        assert!(matches!(
            translate_items(&items),
            Err(TranslateError::DuplicateDefinition(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

        #[test]
        fn output_is_a_readable_proper_list(e in crate::harness::fexpr(5)) {
            if let Ok(out) = translate(&e) {
                let printed = crate::reader::print_list(&out);
                prop_assert_eq!(read_list(&printed).unwrap(), out.clone());
                let p = crate::value::list_to_pair(&out);
                prop_assert!(crate::kernel_pair::proper_at_every_depth(&p));
            }
        }
    }
}
