use criterion::{black_box, criterion_group, criterion_main, Criterion};

use permkit_core::class::realize::realize;
use permkit_core::compose::layered_decomposition;
use permkit_core::merge::{is_merge_with, merge_classes_upto, split_witness_check};
use permkit_core::{ClassExpr, Meter, Permutation};

fn bench_contains(c: &mut Criterion) {
    let host: Permutation = "10,3,8,1,12,6,11,2,9,5,7,4".parse().unwrap();
    let pattern: Permutation = "2413".parse().unwrap();
    let absent: Permutation = "123456".parse().unwrap();
    c.bench_function("contains/hit len12 pat4", |b| {
        b.iter(|| black_box(&host).contains(black_box(&pattern)))
    });
    c.bench_function("contains/miss len12 pat6", |b| {
        b.iter(|| black_box(&host).contains(black_box(&absent)))
    });
}

fn bench_realize(c: &mut Criterion) {
    c.bench_function("realize/Av(132) cap 7", |b| {
        b.iter(|| realize(&ClassExpr::Av(vec!["132".parse().unwrap()]), 7).unwrap())
    });
    c.bench_function("realize/IDI cap 7", |b| {
        b.iter(|| realize(&ClassExpr::Idi, 7).unwrap())
    });
}

fn bench_merge(c: &mut Criterion) {
    let host: Permutation = "9,4,11,2,7,12,5,10,1,8,3,6".parse().unwrap();
    let a: Permutation = "632541".parse().unwrap();
    let b: Permutation = "415263".parse().unwrap();
    c.bench_function("is_merge/len12", |b_| {
        b_.iter(|| {
            let mut meter = Meter::unlimited();
            is_merge_with(black_box(&host), black_box(&a), black_box(&b), &mut meter).unwrap()
        })
    });

    let i = realize(&ClassExpr::I, 6).unwrap();
    c.bench_function("merge_classes/I,I cap 6", |b_| {
        b_.iter(|| {
            let mut meter = Meter::unlimited();
            merge_classes_upto(&[&i, &i], 6, &mut meter).unwrap()
        })
    });

    let sigma: Permutation = "462513".parse().unwrap();
    let pi: Permutation = "123".parse().unwrap();
    c.bench_function("split_witness_check/len6", |b_| {
        b_.iter(|| split_witness_check(black_box(&sigma), black_box(&pi), black_box(&pi)).unwrap())
    });
}

fn bench_decompose(c: &mut Criterion) {
    let members: Vec<Permutation> = realize(&ClassExpr::Idi, 7).unwrap().iter().cloned().collect();
    c.bench_function("layered_decomposition/IDI cap 7 sweep", |b| {
        b.iter(|| {
            for p in &members {
                black_box(layered_decomposition(p).unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_contains, bench_realize, bench_merge, bench_decompose);
criterion_main!(benches);
