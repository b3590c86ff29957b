use aim8_core::harness::{direct_eval, list_only, list_value, CORPUS};
use aim8_core::{
    list_to_pair, pair_to_list, print_f, print_list, read_f, read_list, translate, Env, Evaluator,
    FExpr, ListKernel, ListValue, PairKernel, Universal,
};
use proptest::prelude::*;

fn via_translation(e: &FExpr) -> ListValue {
    Evaluator::<ListKernel>::new()
        .eval(&translate(e).unwrap(), &Env::empty())
        .unwrap()
        .into_data()
        .unwrap()
}

fn via_pair_kernel(e: &FExpr) -> ListValue {
    let v = Evaluator::<PairKernel>::new()
        .eval(&list_to_pair(&translate(e).unwrap()), &Env::empty())
        .unwrap()
        .into_data()
        .unwrap();
    pair_to_list(&v).unwrap()
}

#[test]
fn translation_preserves_meaning_on_corpus() {
    for (src, expected) in CORPUS {
        let e = read_f(src).unwrap();
        let d = direct_eval(&e);
        assert_eq!(print_list(&d), *expected, "{src}");
        assert_eq!(via_translation(&e), d, "{src}");
    }
}

const TEMPLATES: [&str; 5] = [
    "label[append; lambda[[x; y]; [null[x] -> y; T -> combine[first[x]; append[rest[x]; y]]]]][{0}; {1}]",
    "label[rev; lambda[[x; acc]; [null[x] -> acc; T -> rev[rest[x]; combine[first[x]; acc]]]]][{0}; {1}]",
    "label[flat; lambda[[x; acc]; [null[x] -> acc; atom[x] -> combine[x; acc]; \
     T -> flat[first[x]; flat[rest[x]; acc]]]]][{0}; {1}]",
    "label[copy; lambda[[x]; [null[x] -> (); atom[x] -> x; T -> combine[copy[first[x]]; copy[rest[x]]]]]][{0}]",
    "lambda[[x; y]; [null[x] -> y; T -> combine[first[x]; combine[y; rest[x]]]]][{0}; {1}]",
];

fn instantiate(template: &str, x: &ListValue, y: &ListValue) -> FExpr {
    let src = template
        .replace("{0}", &print_list(x))
        .replace("{1}", &print_list(y));
    read_f(&src).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn translation_preserves_meaning(t in 0..TEMPLATES.len(), x in list_only(4), y in list_only(4)) {
        let e = instantiate(TEMPLATES[t], &x, &y);
        prop_assert_eq!(via_translation(&e), direct_eval(&e));
    }

    #[test]
    fn kernels_agree(t in 0..TEMPLATES.len(), x in list_only(4), y in list_only(4)) {
        let e = instantiate(TEMPLATES[t], &x, &y);
        prop_assert_eq!(via_pair_kernel(&e), via_translation(&e));
    }

    #[test]
    fn meta_evaluator_agrees(t in 0..TEMPLATES.len(), x in list_only(3), y in list_only(3)) {
        let e = instantiate(TEMPLATES[t], &x, &y);
        let meta = Universal::new().unwrap().meta_eval(&translate(&e).unwrap()).unwrap();
        prop_assert_eq!(meta, via_translation(&e));
    }

    #[test]
    fn primitives_agree_across_kernels(x in list_value(4), l in list_only(4)) {
        let src = format!("combine[{}; {}]", print_list(&x), print_list(&l));
        let e = read_f(&src).unwrap();
        prop_assert_eq!(via_pair_kernel(&e), via_translation(&e));
        if !l.is_null() {
            for op in ["first", "rest", "car", "cdr", "null"] {
                let e = read_f(&format!("{op}[{}]", print_list(&l))).unwrap();
                prop_assert_eq!(via_pair_kernel(&e), via_translation(&e));
            }
        }
    }

    #[test]
    fn printed_programs_reread_to_the_same_tree(t in 0..TEMPLATES.len(), x in list_only(3), y in list_only(3)) {
        let e = instantiate(TEMPLATES[t], &x, &y);
        prop_assert_eq!(read_f(&print_f(&e)).unwrap(), e.clone());
        let s = translate(&e).unwrap();
        prop_assert_eq!(read_list(&print_list(&s)).unwrap(), s);
    }
}
