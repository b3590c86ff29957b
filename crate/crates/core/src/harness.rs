//! Test support: proptest strategies and a corpus of closed programs.

use std::sync::Arc;

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::subsequence;

use crate::kernel_list;
use crate::mexpr::{FExpr, Ident};
use crate::value::{ListValue, PairValue};

const ATOMS: [&str; 6] = ["A", "B", "C", "D", "X1", "LONGER"];
const IDENTS: [&str; 6] = ["x", "y", "z", "f", "g", "ab1"];

pub fn atom() -> impl Strategy<Value = ListValue> {
    prop::sample::select(&ATOMS[..]).prop_map(ListValue::atom)
}

/// Atoms and proper lists nested at most `depth` levels, never the atom `NIL`.
pub fn list_value(depth: u32) -> impl Strategy<Value = ListValue> {
    atom().boxed().prop_recursive(depth, 64, 5, |inner| {
        vec(inner, 0..5).prop_map(ListValue::list)
    })
}

/// Like [`list_value`] but always a list at the top.
pub fn list_only(depth: u32) -> impl Strategy<Value = ListValue> {
    vec(list_value(depth.saturating_sub(1)), 0..5).prop_map(ListValue::list)
}

/// Arbitrary finite pair structures, improper ones included, with `NIL`
/// among the atoms.
pub fn pair_value(depth: u32) -> impl Strategy<Value = PairValue> {
    let leaf = prop_oneof![
        3 => prop::sample::select(&ATOMS[..]).prop_map(PairValue::atom),
        1 => Just(PairValue::nil()),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        (inner.clone(), inner).prop_map(|(h, t)| PairValue::cons(h, t))
    })
}

fn ident() -> impl Strategy<Value = Ident> {
    prop::sample::select(&IDENTS[..]).prop_map(|s| Ident::new(s).expect("valid identifier"))
}

/// Well-formed F-expressions: constants are never applied and lambda
/// parameters are distinct.
pub fn fexpr(depth: u32) -> impl Strategy<Value = FExpr> {
    let leaf = prop_oneof![
        2 => ident().prop_map(FExpr::Var),
        1 => list_value(2).prop_map(FExpr::Const),
    ];
    leaf.prop_recursive(depth, 48, 4, |inner| {
        let callee = inner.clone().prop_filter("constants cannot be applied", |e| !matches!(e, FExpr::Const(_)));
        prop_oneof![
            3 => (callee, vec(inner.clone(), 0..4)).prop_map(|(f, args)| FExpr::App(Box::new(f), args)),
            2 => vec((inner.clone(), inner.clone()), 1..4).prop_map(FExpr::Cond),
            2 => (subsequence(IDENTS.to_vec(), 0..4), inner.clone()).prop_map(|(ps, body)| {
                FExpr::Lambda(ps.into_iter().map(|p| Ident::new(p).expect("valid identifier")).collect(), Box::new(body))
            }),
            1 => (ident(), inner).prop_map(|(n, body)| FExpr::Label(n, Box::new(body))),
        ]
    })
}

/// Evaluates a closed, error-free F-expression directly, without translating
/// it or touching the S-expression evaluator. Panics on any error. Serves as
/// an independent oracle for translation and evaluation.
pub fn direct_eval(e: &FExpr) -> ListValue {
    data(direct(e, &[]))
}

#[derive(Clone)]
enum D {
    Data(ListValue),
    Fun(Arc<Fun>),
    Prim(&'static str),
}

struct Fun {
    params: Vec<String>,
    body: FExpr,
    env: Vec<(String, D)>,
    name: Option<String>,
}

fn lookup(env: &[(String, D)], name: &str) -> D {
    if let Some((_, d)) = env.iter().rev().find(|(n, _)| n == name) {
        return d.clone();
    }
    match name {
        "first" | "car" => D::Prim("first"),
        "rest" | "cdr" => D::Prim("rest"),
        "combine" | "cons" => D::Prim("combine"),
        "atom" => D::Prim("atom"),
        "eq" => D::Prim("eq"),
        "null" => D::Prim("null"),
        "t" => D::Data(ListValue::atom("T")),
        "f" => D::Data(ListValue::atom("F")),
        other => panic!("unbound {other}"),
    }
}

fn truth(b: bool) -> ListValue {
    ListValue::atom(if b { "T" } else { "F" })
}

fn data(d: D) -> ListValue {
    match d {
        D::Data(v) => v,
        _ => panic!("function used as data"),
    }
}

fn direct(e: &FExpr, env: &[(String, D)]) -> D {
    match e {
        FExpr::Var(v) => lookup(env, v.as_str()),
        FExpr::Const(c) => D::Data(c.clone()),
        FExpr::Cond(clauses) => {
            for (p, r) in clauses {
                if data(direct(p, env)) == truth(true) {
                    return direct(r, env);
                }
            }
            panic!("no clause applies")
        }
        FExpr::Lambda(ps, body) => D::Fun(Arc::new(Fun {
            params: ps.iter().map(|p| p.as_str().to_string()).collect(),
            body: (**body).clone(),
            env: env.to_vec(),
            name: None,
        })),
        FExpr::Label(n, body) => match direct(body, env) {
            D::Fun(f) => D::Fun(Arc::new(Fun {
                params: f.params.clone(),
                body: f.body.clone(),
                env: f.env.clone(),
                name: Some(n.as_str().to_string()),
            })),
            _ => panic!("label of a non-function"),
        },
        FExpr::App(f, args) => {
            let f = direct(f, env);
            let args: Vec<D> = args.iter().map(|a| direct(a, env)).collect();
            match f {
                D::Prim(p) => {
                    let a: Vec<ListValue> = args.into_iter().map(data).collect();
                    D::Data(match p {
                        "first" => kernel_list::first(&a[0]).unwrap(),
                        "rest" => kernel_list::rest(&a[0]).unwrap(),
                        "combine" => kernel_list::combine(&a[0], &a[1]).unwrap(),
                        "atom" => truth(kernel_list::atom_p(&a[0])),
                        "eq" => truth(kernel_list::eq_p(&a[0], &a[1]).unwrap()),
                        "null" => truth(kernel_list::null_p(&a[0])),
                        _ => unreachable!(),
                    })
                }
                D::Fun(fun) => {
                    let mut env = fun.env.clone();
                    if let Some(n) = &fun.name {
                        env.push((n.clone(), D::Fun(fun.clone())));
                    }
                    env.extend(fun.params.iter().cloned().zip(args));
                    direct(&fun.body, &env)
                }
                D::Data(v) => panic!("{v} is not callable"),
            }
        }
    }
}

/// Closed single-expression programs in F-expression syntax with their
/// expected values, printed in the aim8 dialect. Every program evaluates the
/// same way under both kernels and under the meta-evaluator.
pub const CORPUS: &[(&str, &str)] = &[
    ("first[(A, B, C)]", "A"),
    ("rest[(A, B, C)]", "(B, C)"),
    ("combine[A; (B, C)]", "(A, B, C)"),
    ("combine[(); ()]", "(())"),
    ("atom[A]", "T"),
    ("atom[(A)]", "F"),
    ("eq[A; A]", "T"),
    ("eq[A; B]", "F"),
    ("null[()]", "T"),
    ("null[(A)]", "F"),
    ("car[(A, B)]", "A"),
    ("cdr[(A, B)]", "(B)"),
    ("cons[A; ()]", "(A)"),
    ("((A, B), C)", "((A, B), C)"),
    ("combine[first[(A)]; rest[(A)]]", "(A)"),
    ("eq[first[(A, B)]; A]", "T"),
    ("[eq[A; B] -> X; T -> Y]", "Y"),
    ("[null[(A)] -> X; atom[A] -> Z; T -> Y]", "Z"),
    ("[lambda[[x]; null[x]][()] -> YES; T -> NO]", "YES"),
    ("lambda[[x]; first[x]][(A, B)]", "A"),
    ("lambda[[x; y]; combine[y; x]][(B); A]", "(A, B)"),
    ("lambda[[x]; lambda[[y]; combine[x; y]]][A][(B)]", "(A, B)"),
    ("lambda[[x]; lambda[[x]; x][B]][A]", "B"),
    (
        "label[append; lambda[[x; y]; [null[x] -> y; T -> combine[first[x]; append[rest[x]; y]]]]][(A, B); (C, D)]",
        "(A, B, C, D)",
    ),
    (
        "label[member; lambda[[a; x]; [null[x] -> F; eq[a; first[x]] -> T; T -> member[a; rest[x]]]]][C; (A, B, C)]",
        "T",
    ),
    (
        "label[member; lambda[[a; x]; [null[x] -> F; eq[a; first[x]] -> T; T -> member[a; rest[x]]]]][D; (A, B, C)]",
        "F",
    ),
    (
        "label[rev; lambda[[x; acc]; [null[x] -> acc; T -> rev[rest[x]; combine[first[x]; acc]]]]][(A, B, C); ()]",
        "(C, B, A)",
    ),
    ("label[last; lambda[[x]; [null[rest[x]] -> first[x]; T -> last[rest[x]]]]][(A, B, C)]", "C"),
    (
        "label[subst; lambda[[x; y; z]; [null[z] -> z; atom[z] -> [eq[z; y] -> x; T -> z]; \
         T -> combine[subst[x; y; first[z]]; subst[x; y; rest[z]]]]]][X; A; (A, (B, A), C)]",
        "(X, (B, X), C)",
    ),
    (
        "label[equal; lambda[[x; y]; [null[x] -> null[y]; null[y] -> F; atom[x] -> [atom[y] -> eq[x; y]; T -> F]; \
         atom[y] -> F; equal[first[x]; first[y]] -> equal[rest[x]; rest[y]]; T -> F]]][(A, (B)); (A, (B))]",
        "T",
    ),
    (
        "label[equal; lambda[[x; y]; [null[x] -> null[y]; null[y] -> F; atom[x] -> [atom[y] -> eq[x; y]; T -> F]; \
         atom[y] -> F; equal[first[x]; first[y]] -> equal[rest[x]; rest[y]]; T -> F]]][(A, (B)); (A, (C))]",
        "F",
    ),
    (
        "label[zip; lambda[[x; y]; [null[x] -> (); T -> combine[combine[first[x]; combine[first[y]; ()]]; \
         zip[rest[x]; rest[y]]]]]][(A, B); (C, D)]",
        "((A, C), (B, D))",
    ),
    (
        "label[walk; lambda[[x]; [null[x] -> (); T -> walk[rest[x]]]]]\
         [(A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P, Q, R, S, T, U, V, W, X, Y)]",
        "()",
    ),
    (
        "label[copy; lambda[[x]; [null[x] -> (); T -> combine[first[x]; copy[rest[x]]]]]]\
         [(A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P, Q, R, S, T, U, V, W, X)]",
        "(A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P, Q, R, S, T, U, V, W, X)",
    ),
    (
        "label[flat; lambda[[x; acc]; [null[x] -> acc; atom[x] -> combine[x; acc]; \
         T -> flat[first[x]; flat[rest[x]; acc]]]]][((A, B), C, ((D))); ()]",
        "(A, B, C, D)",
    ),
    (
        "label[map; lambda[[f; x]; [null[x] -> (); T -> combine[f[first[x]]; map[f; rest[x]]]]]][first; ((A, B), (C, D))]",
        "(A, C)",
    ),
    (
        "label[ev; lambda[[x]; [null[x] -> T; null[rest[x]] -> F; T -> ev[rest[rest[x]]]]]][(A, B, C, D)]",
        "T",
    ),
    (
        "label[outer; lambda[[x]; [null[x] -> (); T -> combine[label[inner; lambda[[y]; \
         [null[rest[y]] -> first[y]; T -> inner[rest[y]]]]][first[x]]; outer[rest[x]]]]]][((A, B), (C), (D, E, F))]",
        "(B, C, F)",
    ),
    (
        "label[dive; lambda[[x]; [atom[x] -> x; T -> dive[first[x]]]]][((((((((((((((((((((((A))))))))))))))))))))))]",
        "A",
    ),
    ("label[f; lambda[[x]; [null[x] -> (); T -> f[rest[x]]]]][(A, B)]", "()"),
    (
        "label[nth; lambda[[n; x]; [null[n] -> first[x]; T -> nth[rest[n]; rest[x]]]]][(I, I); (A, B, C)]",
        "C",
    ),
];
