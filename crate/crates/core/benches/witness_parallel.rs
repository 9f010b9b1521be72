//! Data-parallel vs sequential witness counting. The cut enumeration is the
//! hot inner loop of the growth engine; this compares the rayon kernel
//! against the single-threaded one on the same instances.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use stcut_core::graph::Graph;
use stcut_core::witness::{witness_stats_seq, WitnessParams};

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n, 0, n - 1).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn bench_witness_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness-count");
    for &n in &[14usize, 17, 20] {
        let g = random_graph(n, 0.4, 42);
        let f = (n as u64 - 1).min(8);
        let params = WitnessParams::new(f, f, f / 2).unwrap();
        group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, _| {
            b.iter(|| witness_stats_seq(&g, &params, 22).unwrap().count)
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, _| {
            b.iter(|| {
                stcut_core::witness::witness_stats_par(&g, &params, 22)
                    .unwrap()
                    .count
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_witness_count);
criterion_main!(benches);

