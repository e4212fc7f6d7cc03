use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use riesz_bench::{books, formulas, steep_affine, tent};
use riesz_core::geometry::candidate_vertices;
use riesz_core::{check_coherent, minimum, synth_pwl, synth_trunc_affine, term_pwl, Budget};

fn term_functions(c: &mut Criterion) {
    let mut group = c.benchmark_group("term_pwl");
    for (name, f) in formulas() {
        let n = f.arity();
        group.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| b.iter(|| term_pwl(black_box(f), n)));
    }
    group.finish();
}

fn vertices(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("vertices");
    for (name, f) in formulas() {
        let pwl = term_pwl(&f, f.arity()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &pwl, |b, pwl| {
            b.iter(|| candidate_vertices(black_box(pwl), &budget))
        });
    }
    group.bench_function("minimum/three_vars", |b| {
        let f = &formulas()[2].1;
        b.iter(|| minimum(black_box(f), &budget))
    });
    group.finish();
}

fn synthesis(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("synthesis");
    for slope in [2, 8, 32] {
        let f = steep_affine(3, slope);
        group.bench_with_input(BenchmarkId::new("trunc_affine", slope), &f, |b, f| {
            b.iter(|| synth_trunc_affine(black_box(f)))
        });
    }
    for (groups, pieces) in [(2, 2), (4, 3)] {
        let f = tent(groups, pieces);
        group.bench_with_input(BenchmarkId::new("max_min", format!("{groups}x{pieces}")), &f, |b, f| {
            b.iter(|| synth_pwl(black_box(f), &budget))
        });
    }
    group.finish();
}

fn coherence(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("coherence");
    group.sample_size(20);
    for (name, book) in books() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &book, |b, book| {
            b.iter(|| check_coherent(black_box(book), &budget))
        });
    }
    group.finish();
}

criterion_group!(benches, term_functions, vertices, synthesis, coherence);
criterion_main!(benches);
