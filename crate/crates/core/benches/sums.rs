use std::hint::black_box;

use charsum_core::characters::gauss_sum_with;
use charsum_core::charsums::partial_gauss_sum_with;
use charsum_core::energy::box_energy;
use charsum_core::{make_field, AddCharParam, BoxDomain, Execution, MultChar};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn partial_sums(c: &mut Criterion) {
    let f = make_field(1009, 2, None).unwrap();
    let chi = MultChar::new(&f, 12345);
    let psi = AddCharParam::new(&f, f.from_encoding(7 + 3 * 1009).unwrap()).unwrap();
    let bx = BoxDomain::new(&f, &[10, 20], &[400, 400], None).unwrap();
    let mut group = c.benchmark_group("partial_gauss_sum");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "1009^2, 400x400"), |b| {
            b.iter(|| partial_gauss_sum_with(exec, &f, &chi, &psi, black_box(&bx)))
        });
    }
    group.finish();
}

fn complete_sums(c: &mut Criterion) {
    let f = make_field(101, 3, None).unwrap();
    let chi = MultChar::new(&f, 77);
    let psi = AddCharParam::new(&f, f.x()).unwrap();
    let mut group = c.benchmark_group("gauss_sum");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "101^3"), |b| {
            b.iter(|| gauss_sum_with(exec, &f, black_box(&chi), &psi))
        });
    }
    group.finish();
}

fn energy(c: &mut Criterion) {
    let f = make_field(199, 2, None).unwrap();
    let bx = BoxDomain::new(&f, &[0, 0], &[40, 40], None).unwrap();
    let mut group = c.benchmark_group("box_energy");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "199^2, 40x40"), |b| {
            b.iter(|| box_energy(exec, &f, black_box(&bx)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, partial_sums, complete_sums, energy);
criterion_main!(benches);
