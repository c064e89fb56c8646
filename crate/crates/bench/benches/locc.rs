use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use schmidt_locc::suites::rank3_grid;
use schmidt_locc::{classify, entropy, family_sweep, find_partner, make_schmidt, SearchConfig};

fn entropy_and_order(c: &mut Criterion) {
    let psi = make_schmidt(&[0.45, 0.39, 0.16]).unwrap();
    let phi = make_schmidt(&[0.49, 0.33676028, 0.17323972]).unwrap();
    let wide = make_schmidt(&[1.0 / 64.0; 64]).unwrap();

    c.bench_function("entropy_rank3", |b| b.iter(|| entropy(black_box(&psi))));
    c.bench_function("entropy_rank64", |b| b.iter(|| entropy(black_box(&wide))));
    c.bench_function("classify_rank3", |b| {
        b.iter(|| classify(black_box(&psi), black_box(&phi), 1e-9))
    });

    let grid = rank3_grid(30);
    c.bench_function("classify_grid30_all_pairs", |b| {
        b.iter(|| {
            grid.iter()
                .flat_map(|a| grid.iter().map(move |b| classify(a, b, 1e-9).relation))
                .count()
        })
    });
}

fn search(c: &mut Criterion) {
    let psi = make_schmidt(&[0.45, 0.39, 0.16]).unwrap();
    let cfg = SearchConfig::default();
    c.bench_function("find_partner_reference", |b| {
        b.iter(|| find_partner(black_box(&psi), 0.49, &cfg).unwrap())
    });
    c.bench_function("family_sweep_31", |b| {
        b.iter(|| family_sweep(black_box(&psi), 0.46, 0.49, 31, &cfg).unwrap())
    });
}

criterion_group!(benches, entropy_and_order, search);
criterion_main!(benches);
