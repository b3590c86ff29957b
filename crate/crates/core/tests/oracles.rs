//! Library functions written in the object language, checked exhaustively
//! against plain Rust implementations over small inputs.

use aim8_core::{
    list_to_pair, pair_to_list, read_program, translate_items, Env, Evaluator, Kernel, ListKernel,
    ListValue, PairKernel, TopLevel,
};

const LIBRARY: &str = "
append[x; y] = [null[x] -> y; T -> combine[first[x]; append[rest[x]; y]]]
member[a; x] = [null[x] -> F; eq[a; first[x]] -> T; T -> member[a; rest[x]]]
subst[x; y; z] = [null[z] -> z;
                  atom[z] -> [eq[z; y] -> x; T -> z];
                  T -> combine[subst[x; y; first[z]]; subst[x; y; rest[z]]]]
zip[x; y] = [null[x] -> (); T -> combine[combine[first[x]; combine[first[y]; ()]]; zip[rest[x]; rest[y]]]]
";

const ATOMS: [&str; 3] = ["A", "B", "C"];

fn loaded<K: Kernel>() -> Evaluator<K> {
    let mut ev = Evaluator::<K>::new();
    for form in translate_items(&read_program(LIBRARY).unwrap()).unwrap() {
        assert!(matches!(
            ev.run_toplevel(&K::from_list(&form)).unwrap(),
            TopLevel::Defined(_)
        ));
    }
    ev
}

fn call<K: Kernel>(ev: &mut Evaluator<K>, f: &str, args: &[ListValue]) -> ListValue {
    let mut form = vec![ListValue::atom(f)];
    form.extend(
        args.iter()
            .map(|a| ListValue::list([ListValue::atom("QUOTE"), a.clone()])),
    );
    let v = ev
        .eval(&K::from_list(&ListValue::list(form)), &Env::empty())
        .unwrap()
        .into_data()
        .unwrap();
    pair_to_list(&list_to_pair_any(v.into())).unwrap()
}

fn list_to_pair_any(v: aim8_core::Value) -> aim8_core::PairValue {
    match v {
        aim8_core::Value::List(l) => list_to_pair(&l),
        aim8_core::Value::Pair(p) => p,
    }
}

/// Every list over `ATOMS` of length at most `max`.
fn all_lists(max: usize) -> Vec<Vec<&'static str>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for l in &frontier {
            for a in ATOMS {
                let mut l2: Vec<&str> = l.clone();
                l2.push(a);
                next.push(l2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn lv(items: &[&str]) -> ListValue {
    ListValue::list(items.iter().map(|a| ListValue::atom(a)))
}

fn truth(b: bool) -> ListValue {
    ListValue::atom(if b { "T" } else { "F" })
}

fn check_kernel<K: Kernel>() {
    let mut ev = loaded::<K>();
    let lists = all_lists(4);
    assert_eq!(lists.len(), 121);

    for x in &lists {
        for y in &lists {
            let expected: Vec<&str> = x.iter().chain(y).copied().collect();
            assert_eq!(call(&mut ev, "APPEND", &[lv(x), lv(y)]), lv(&expected));
        }
        for a in ATOMS {
            assert_eq!(
                call(&mut ev, "MEMBER", &[ListValue::atom(a), lv(x)]),
                truth(x.contains(&a))
            );
            let replaced: Vec<ListValue> = x
                .iter()
                .map(|b| {
                    if *b == a {
                        lv(&["Z"])
                    } else {
                        ListValue::atom(b)
                    }
                })
                .collect();
            assert_eq!(
                call(&mut ev, "SUBST", &[lv(&["Z"]), ListValue::atom(a), lv(x)]),
                ListValue::list(replaced)
            );
        }
    }

    for x in lists.iter().filter(|l| l.len() <= 3) {
        for y in lists.iter().filter(|l| l.len() == x.len()) {
            let expected = ListValue::list(x.iter().zip(y).map(|(a, b)| lv(&[a, b])));
            assert_eq!(call(&mut ev, "ZIP", &[lv(x), lv(y)]), expected);
        }
    }
}

#[test]
fn library_matches_oracle_under_list_kernel() {
    check_kernel::<ListKernel>();
}

#[test]
fn library_matches_oracle_under_pair_kernel() {
    check_kernel::<PairKernel>();
}

#[test]
fn subst_reaches_nested_lists() {
    let mut ev = loaded::<ListKernel>();
    let z = aim8_core::read_list("(A, (B, (A)), ((A)))").unwrap();
    let expected = aim8_core::read_list("(X, (B, (X)), ((X)))").unwrap();
    assert_eq!(
        call(
            &mut ev,
            "SUBST",
            &[ListValue::atom("X"), ListValue::atom("A"), z]
        ),
        expected
    );
}
