use std::hint::black_box;

use blockpath::enumerate::tournament_codes;
use blockpath::pattern::contains;
use blockpath::{
    chromatic_number, find_p1k1, find_p1k1_via_origins, find_p1l1_at_least,
    find_three_block_decomposition, fixture, BlockPattern,
};
use blockpath_bench::hosts;
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn matcher(c: &mut Criterion) {
    let hs = hosts(64, 7, 9, 5, 3);
    let p = BlockPattern::p3(1, 2, 1).unwrap();
    c.bench_function("matcher/p121_x64", |b| {
        b.iter(|| hs.iter().filter(|g| contains(g, &p).is_some()).count())
    });
    let paley = fixture("paley7").unwrap();
    let anti = BlockPattern::new(vec![1; 6], blockpath::Direction::Forward).unwrap();
    c.bench_function("matcher/paley7_antidirected_absent", |b| {
        b.iter(|| contains(black_box(&paley), &anti))
    });
}

fn colouring(c: &mut Criterion) {
    let hs = hosts(64, 9, 12, 4, 5);
    c.bench_function("chromatic/n9_12_x64", |b| {
        b.iter(|| hs.iter().map(|g| chromatic_number(g).unwrap().chi).sum::<usize>())
    });
}

fn finders(c: &mut Criterion) {
    let hs5 = hosts(64, 6, 8, 5, 7);
    c.bench_function("finder/t33_k2_x64", |b| {
        b.iter(|| hs5.iter().filter(|g| find_p1k1(g, 2).is_ok()).count())
    });
    c.bench_function("finder/t31_k1_x64", |b| {
        b.iter(|| hs5.iter().filter(|g| find_p1l1_at_least(g, 1).is_ok()).count())
    });
    let hs7 = hosts(32, 7, 9, 7, 9);
    c.bench_function("finder/origins_k1_x32", |b| {
        b.iter(|| hs7.iter().filter(|g| find_p1k1_via_origins(g, 1).is_ok()).count())
    });
    let hs8 = hosts(16, 8, 9, 8, 11);
    c.bench_function("finder/l23_m5_i1_k1_x16", |b| {
        b.iter(|| hs8.iter().filter(|g| find_three_block_decomposition(g, 1, 1, 5).is_ok()).count())
    });
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    g.bench_function("tournaments_8", |b| {
        b.iter_batched(|| 8, |n| tournament_codes(n, 8).unwrap().len(), BatchSize::SmallInput)
    });
    g.finish();
}

criterion_group!(benches, matcher, colouring, finders, enumeration);
criterion_main!(benches);
