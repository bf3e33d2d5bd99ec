use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ternary_invariants::harmonic::harmonic_decompose;
use ternary_invariants::harmonic::slice_basis::build_slice_basis;
use ternary_invariants::harmonic::spanning::build_spanning_set;
use ternary_invariants::invariants::{evaluate_invariants, quad_invariants, reconstruct};
use ternary_invariants::rewrite::{rewrite_invariant, RationalExpr};
use ternary_invariants::{TernaryForm, DEFAULT_TOL};
use ternary_invariants_bench::{fixture_form, DEGREES};

fn quadratic(c: &mut Criterion) {
    let f = TernaryForm::parse("13*x^2 + 20*x*y - 20*x*z - 2*y^2 + 40*y*z - 2*z^2").unwrap();
    c.bench_function("quad_invariants", |b| {
        b.iter(|| quad_invariants(black_box(&f)).unwrap())
    });
}

fn evaluation(c: &mut Criterion) {
    let mut g = c.benchmark_group("evaluate_invariants");
    for n in DEGREES {
        let v = fixture_form(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &v, |b, v| {
            b.iter(|| evaluate_invariants(black_box(v), DEFAULT_TOL).unwrap())
        });
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut g = c.benchmark_group("harmonic_decompose");
    for n in DEGREES {
        let v = fixture_form(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &v, |b, v| {
            b.iter(|| harmonic_decompose(black_box(v)).unwrap())
        });
    }
    g.finish();
}

fn reconstruction(c: &mut Criterion) {
    let mut g = c.benchmark_group("reconstruct");
    for n in DEGREES {
        let mu = evaluate_invariants(&fixture_form(n), DEFAULT_TOL).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &mu, |b, mu| {
            b.iter(|| reconstruct(black_box(mu)).unwrap())
        });
    }
    g.finish();
}

fn bases(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis_construction");
    g.sample_size(10);
    for d in [2u32, 3, 4] {
        g.bench_with_input(BenchmarkId::new("spanning_set", 2 * d), &d, |b, &d| {
            b.iter(|| build_spanning_set(black_box(d)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("slice_basis", 2 * d), &d, |b, &d| {
            b.iter(|| build_slice_basis(black_box(d)).unwrap())
        });
    }
    g.finish();
}

fn rewriting(c: &mut Criterion) {
    let power_sum = RationalExpr::parse("a1^6 + a2^6 + a3^6").unwrap();
    let mixed = RationalExpr::parse(
        "a1^2 al[1][1] + a2^2 al[2][1] + a3^2 al[3][1] + al[1][3]^2 + al[2][3]^2 + al[3][3]^2",
    )
    .unwrap();
    let mut g = c.benchmark_group("rewrite_invariant");
    g.bench_function("power_sum", |b| {
        b.iter(|| rewrite_invariant(black_box(&power_sum), 2).unwrap())
    });
    g.bench_function("mixed_quartic", |b| {
        b.iter(|| rewrite_invariant(black_box(&mixed), 2).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    quadratic,
    evaluation,
    decomposition,
    reconstruction,
    bases,
    rewriting
);
criterion_main!(benches);
