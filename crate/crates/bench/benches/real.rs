use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use polygrowth::{Ball, Precision, Rational};

fn elementary(c: &mut Criterion) {
    let mut g = c.benchmark_group("elementary");
    let x = Rational::new(677.into(), 676.into());
    for bits in [64u64, 256, 1024, 4096] {
        let p = Precision::new(bits).unwrap();
        let b = Ball::from_rational(&x, p);
        g.bench_with_input(BenchmarkId::new("log", bits), &b, |bn, b| bn.iter(|| black_box(b).log(p).unwrap()));
        g.bench_with_input(BenchmarkId::new("exp", bits), &b, |bn, b| bn.iter(|| black_box(b).exp(p).unwrap()));
        g.bench_with_input(BenchmarkId::new("sqrt", bits), &b, |bn, b| bn.iter(|| black_box(b).root(2, p).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, elementary);
criterion_main!(benches);
