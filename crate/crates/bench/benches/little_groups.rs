use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use isotropy::oracle::detect::{detect_symmetry, DetectOptions};
use isotropy::oracle::projector::invariant_basis;
use isotropy::{massive_little_groups, subduce_trace, subgroups, GroupId, Irrep, Parity};
use isotropy_bench::dense_vector;

fn subduction(c: &mut Criterion) {
    let irrep = Irrep::o3(12, Parity::Odd);
    c.bench_function("trace Yh 12-", |b| b.iter(|| subduce_trace(black_box(GroupId::YH), &irrep)));
    c.bench_function("lattice O3 n<=13", |b| b.iter(|| subgroups(GroupId::O3, black_box(13))));
}

fn criteria(c: &mut Criterion) {
    for l in [4, 10] {
        let irrep = Irrep::so3(l);
        c.bench_function(&format!("massive SO3 {l}"), |b| {
            b.iter(|| massive_little_groups(black_box(&irrep), None))
        });
    }
    let irrep = Irrep::o3(6, Parity::Odd);
    c.bench_function("massive O3 6-", |b| b.iter(|| massive_little_groups(black_box(&irrep), None)));
}

fn oracle(c: &mut Criterion) {
    c.bench_function("projector Oh 6+", |b| {
        b.iter(|| invariant_basis(black_box(GroupId::OH), 6, Some(Parity::Even)))
    });
    let mut group = c.benchmark_group("detect");
    group.sample_size(10);
    for (l, p) in [(2, Parity::Even), (4, Parity::Odd)] {
        let a = dense_vector(l, Some(p));
        group.bench_function(format!("dense {l}{p}"), |b| {
            b.iter(|| detect_symmetry(black_box(&a), &DetectOptions::default()))
        });
    }
    group.finish();
}

criterion_group!(benches, subduction, criteria, oracle);
criterion_main!(benches);
