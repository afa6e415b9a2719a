use almost_abelian::carrier::build_x;
use almost_abelian::catalog::catalog_actions;
use almost_abelian::hopf::HopfStructure;
use almost_abelian::oracle::oracle_orders;
use almost_abelian::orbits::{classify, orbits};
use almost_abelian::section::section_search;
use almost_abelian::AbelianGroup;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for (orders, p) in [(vec![5u64, 5], 5u64), (vec![7, 7], 7), (vec![5, 5, 5], 5), (vec![25, 5], 5)] {
        let g = AbelianGroup::new(&orders).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(g.descriptor()), &g, |b, g| b.iter(|| classify(black_box(g), p).unwrap()));
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (orders, p) in [(vec![3u64, 3, 3], 3u64), (vec![9, 3], 3), (vec![2, 2, 2], 2)] {
        let g = AbelianGroup::new(&orders).unwrap();
        let classes = catalog_actions(&g, p).unwrap();
        let act = classes.last().unwrap().action.clone();
        group.bench_function(g.descriptor(), |b| b.iter(|| oracle_orders(black_box(&act)).unwrap()));
    }
    group.finish();
}

fn bench_hopf(c: &mut Criterion) {
    let mut group = c.benchmark_group("hopf");
    group.sample_size(10);
    for (orders, p) in [(vec![7u64, 7], 7u64), (vec![5, 5, 5], 5)] {
        let g = AbelianGroup::new(&orders).unwrap();
        let class = catalog_actions(&g, p).unwrap().pop().unwrap();
        let x = build_x(&class).unwrap();
        let rep = orbits(&x).orbits.into_iter().rev().find(|o| !o.cocommutative).unwrap().representative;
        group.bench_function(format!("build/{}", g.descriptor()), |b| b.iter(|| HopfStructure::build(black_box(&x), &rep).unwrap()));
        let h = HopfStructure::build(&x, &rep).unwrap();
        group.bench_function(format!("verify/{}", g.descriptor()), |b| b.iter(|| assert!(black_box(&h).verify_axioms().passed())));
    }
    group.finish();
}

fn bench_section(c: &mut Criterion) {
    c.bench_function("section_search/3", |b| b.iter(|| section_search(black_box(3)).unwrap()));
}

criterion_group!(benches, bench_classify, bench_oracle, bench_hopf, bench_section);
criterion_main!(benches);
