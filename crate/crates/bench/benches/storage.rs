use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pairkit::{Int, PackedTriangular};
use pairkit_bench::PaddedSquare;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn lower_triangle(order: Int) -> Vec<(Int, Int)> {
    (0..order).flat_map(|r| (0..=r).map(move |c| (r, c))).collect()
}

fn access(c: &mut Criterion) {
    let mut group = c.benchmark_group("storage");
    for order in [256, 1024] {
        let f = |r: Int, c: Int| (r ^ c) as f64;
        let packed = PackedTriangular::from_fn(order, f);
        let padded = PaddedSquare::from_fn(order, f);
        let sequential = lower_triangle(order);
        let mut random = sequential.clone();
        let mut rng = StdRng::seed_from_u64(7);
        for i in (1..random.len()).rev() {
            random.swap(i, rng.gen_range(0..=i));
        }

        for (pattern, cells) in [("sequential", &sequential), ("random", &random)] {
            group.bench_with_input(BenchmarkId::new(format!("packed/{pattern}"), order), cells, |b, cells| {
                b.iter(|| cells.iter().map(|&(r, c)| *packed.get(r, c).unwrap()).sum::<f64>())
            });
            group.bench_with_input(BenchmarkId::new(format!("padded/{pattern}"), order), cells, |b, cells| {
                b.iter(|| cells.iter().map(|&(r, c)| *padded.get(r, c).unwrap()).sum::<f64>())
            });
        }
        group.bench_function(BenchmarkId::new("packed/build", order), |b| {
            b.iter(|| PackedTriangular::from_fn(black_box(order), f))
        });
        group.bench_function(BenchmarkId::new("padded/build", order), |b| {
            b.iter(|| PaddedSquare::from_fn(black_box(order), f))
        });
    }
    group.finish();
}

criterion_group!(benches, access);
criterion_main!(benches);
