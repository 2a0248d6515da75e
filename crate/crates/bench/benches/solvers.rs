use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eigenseq::eigen::{partition_orbit, revert_lex_search, solve_xor_special};
use eigenseq::{EigenProblem, Offset, Sequence, TransformExpr};
use std::hint::black_box;

fn eigen(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigen");
    g.sample_size(20);
    let cases = [
        ("R∘BINOMIAL", 20),
        ("R∘STIRLING", 20),
        ("M^-1∘EULER", 20),
        ("R∘INVERT", 20),
        ("N^-1∘EXP", 12),
    ];
    for (text, n) in cases {
        let e = TransformExpr::parse(text).expect("valid expression");
        let problem = EigenProblem::from_expr(&e).expect("eigen form");
        let offset = e.default_offset();
        g.bench_function(BenchmarkId::new(text, n), |b| {
            b.iter(|| problem.solve(black_box(n), offset))
        });
    }
    g.bench_function("XOR special/16", |b| {
        b.iter(|| solve_xor_special(black_box(16)))
    });
    g.finish();
}

fn searches(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("REVERT lex/10", |b| {
        b.iter(|| revert_lex_search(black_box(10), 1000))
    });
    let naturals = Sequence::from_ints(Offset::One, &(1..=12).collect::<Vec<_>>());
    g.bench_function("PARTITION orbit/12", |b| {
        b.iter(|| partition_orbit(black_box(&naturals), 12, 30))
    });
    g.finish();
}

criterion_group!(benches, eigen, searches);
criterion_main!(benches);
