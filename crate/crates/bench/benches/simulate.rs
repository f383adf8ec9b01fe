use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hexnc::engine::{run, RandomBits, RunConfig, SymbolicSources};
use hexnc::verify::verify_code;
use hexnc::{Bit, HexNetwork, LinComb};

fn bit_simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("bit_run");
    for k in [8u32, 16, 32] {
        let net = HexNetwork::new(k).unwrap();
        let horizon = 3 * i64::from(k);
        let bits = RandomBits::new(net.sessions(), horizon, 1);
        let behaviors = net.behaviors::<Bit>();
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| {
                run(
                    &net.topology,
                    &net.placements,
                    &behaviors,
                    &bits,
                    RunConfig::new(horizon),
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn symbolic_simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic_run");
    for k in [4u32, 8, 12] {
        let net = HexNetwork::new(k).unwrap();
        let horizon = 3 * i64::from(k);
        let behaviors = net.behaviors::<LinComb>();
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| {
                run(
                    &net.topology,
                    &net.placements,
                    &behaviors,
                    &SymbolicSources,
                    RunConfig::new(horizon),
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    c.bench_function("verify_code_k10", |b| {
        b.iter(|| verify_code(black_box(10), 30).unwrap())
    });
}

criterion_group!(benches, bit_simulation, symbolic_simulation, verification);
criterion_main!(benches);
