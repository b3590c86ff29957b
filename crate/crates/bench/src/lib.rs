//! Criterion benchmarks for the reader, both kernels and the evaluators.

use std::hint::black_box;

use aim8_core::harness::CORPUS;
use aim8_core::{
    kernel_pair, list_to_pair, print_list, read_f, read_list, translate, Env, Evaluator,
    ListKernel, ListValue, PairKernel, PairValue, Universal,
};
use criterion::{BenchmarkId, Criterion};

const APPEND: &str =
    "label[append; lambda[[x; y]; [null[x] -> y; T -> combine[first[x]; append[rest[x]; y]]]]]";

/// `(A0, A1, ..., A{n-1})`.
pub fn atoms(n: usize) -> ListValue {
    ListValue::list((0..n).map(|i| ListValue::atom(&format!("A{i}"))))
}

/// A proper pair chain of `n` cells.
pub fn chain(n: usize) -> PairValue {
    list_to_pair(&atoms(n))
}

/// `append[l; l]` for a list of `n` atoms, translated.
pub fn append_program(n: usize) -> ListValue {
    let l = print_list(&atoms(n));
    translate(&read_f(&format!("{APPEND}[{l}; {l}]")).unwrap()).unwrap()
}

pub fn reader(c: &mut Criterion) {
    let text = print_list(&ListValue::list((0..64).map(|_| atoms(16))));
    c.bench_function("read 64x16 list", |b| {
        b.iter(|| read_list(black_box(&text)).unwrap())
    });
    c.bench_function("print 64x16 list", |b| {
        let v = read_list(&text).unwrap();
        b.iter(|| print_list(black_box(&v)))
    });
}

pub fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("proper_p");
    for n in [100, 10_000] {
        let v = chain(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &v, |b, v| {
            b.iter(|| kernel_pair::proper_p(black_box(v)))
        });
    }
    group.finish();
}

pub fn evaluators(c: &mut Criterion) {
    let mut group = c.benchmark_group("append");
    for n in [10, 100] {
        let program = append_program(n);
        group.bench_with_input(BenchmarkId::new("list kernel", n), &program, |b, p| {
            let mut ev = Evaluator::<ListKernel>::new();
            b.iter(|| ev.eval(black_box(p), &Env::empty()).unwrap())
        });
        let pair_program = list_to_pair(&program);
        group.bench_with_input(BenchmarkId::new("pair kernel", n), &pair_program, |b, p| {
            let mut ev = Evaluator::<PairKernel>::new();
            b.iter(|| ev.eval(black_box(p), &Env::empty()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("meta", n), &program, |b, p| {
            let mut u = Universal::new().unwrap();
            b.iter(|| u.meta_eval(black_box(p)).unwrap())
        });
    }
    group.finish();

    let corpus: Vec<ListValue> = CORPUS
        .iter()
        .map(|(src, _)| translate(&read_f(src).unwrap()).unwrap())
        .collect();
    c.bench_function("meta corpus", |b| {
        let mut u = Universal::new().unwrap();
        b.iter(|| {
            for p in &corpus {
                u.meta_eval(black_box(p)).unwrap();
            }
        })
    });
}

pub fn benchmarks(c: &mut Criterion) {
    reader(c);
    kernels(c);
    evaluators(c);
}
