//! Compares the rayon batch layer against the sequential fallback on the
//! invariant-basis workload (one task per degree).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kleinian::grp::{build_group, GroupSpec};
use kleinian::par::{map, Mode};

fn invariant_bases(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariant_bases");
    group.sample_size(10);
    for name in ["BD3", "2T"] {
        let g = build_group(GroupSpec::parse(name).unwrap());
        for mode in [Mode::Sequential, Mode::Parallel] {
            group.bench_with_input(
                BenchmarkId::new(name, format!("{:?}", mode)),
                &mode,
                |b, &mode| {
                    b.iter(|| {
                        let degrees: Vec<u64> = (1..=12).collect();
                        let dims = map(mode, degrees, |d| g.invariant_basis(d).len());
                        std::hint::black_box(dims)
                    })
                },
            );
        }
    }
    group.finish();
}

criterion_group!(benches, invariant_bases);
criterion_main!(benches);
