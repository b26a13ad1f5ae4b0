use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use chern_bench::model;
use chern_core::heat_kernel::{duhamel_coeff, heat_dense, heat_oracle, psi_chain, realize_phi, FrameModel};
use chern_core::sphere_chern::{bott, chern_number};

fn duhamel(c: &mut Criterion) {
    let mut g = c.benchmark_group("duhamel_coeff");
    for n in [1usize, 3, 6] {
        let nodes: Vec<f64> = (0..=n).map(|i| 0.3 * i as f64).collect();
        g.bench_with_input(BenchmarkId::from_parameter(n), &nodes, |b, nodes| {
            b.iter(|| duhamel_coeff(black_box(nodes), 1.0).unwrap())
        });
    }
    g.finish();
}

fn expansion(c: &mut Criterion) {
    let (cycle, r) = model(3, 3, 4, 1).unwrap();
    let fm = FrameModel::new(&cycle, &r).unwrap();
    let psi = psi_chain(3, 0.7, &fm.spectrum, false).unwrap();
    c.bench_function("realize_phi/n=3", |b| b.iter(|| realize_phi(black_box(&psi), &fm)));
    c.bench_function("heat_oracle/3x3,k=4", |b| b.iter(|| heat_oracle(&cycle, &r, 1.0, 0.7).unwrap()));
    c.bench_function("heat_dense/3x3,k=4", |b| b.iter(|| heat_dense(&cycle, &r, 1.0, 0.7).unwrap()));
}

fn sphere(c: &mut Criterion) {
    let p = bott();
    c.bench_function("chern_number/bott", |b| b.iter(|| chern_number(black_box(&p), 1).unwrap()));
}

criterion_group!(benches, duhamel, expansion, sphere);
criterion_main!(benches);
