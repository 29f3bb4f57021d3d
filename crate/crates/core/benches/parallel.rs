//! Sequential against data-parallel execution of the hot loops.
//!
//! Without the `parallel` feature both variants run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use qcarlitz::identity::{Checker, IdentityParams};
use qcarlitz::padic::{volkenborn_approx, witt_check, IntegrandSpec, PadicSetup, VolkenbornJob};
use qcarlitz::{Exec, Rational};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn setup(level: u32, precision: u32) -> PadicSetup {
    PadicSetup::new(3, Rational::from_integer(4.into()), level, precision).unwrap()
}

fn bench_volkenborn(c: &mut Criterion) {
    let mut group = c.benchmark_group("volkenborn_sum");
    for level in [6, 8, 10] {
        let job = VolkenbornJob { setup: setup(level, level + 6), f: IntegrandSpec::power(3) };
        group.throughput(Throughput::Elements(3u64.pow(level)));
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, level), &job, |b, job| {
                b.iter(|| black_box(volkenborn_approx(job, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_witt(c: &mut Criterion) {
    let mut group = c.benchmark_group("witt_double_sum");
    group.sample_size(10);
    for level in [3, 4] {
        let s = setup(level, 2 * level + 2);
        group.throughput(Throughput::Elements(3u64.pow(2 * level)));
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, level), &s, |b, s| {
                b.iter(|| black_box(witt_check(2, 3, 2, 0, s, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn grid(n: u32) -> Vec<IdentityParams> {
    let mut out = Vec::new();
    for w1 in 1..=3 {
        for w2 in 1..=3 {
            for w3 in 1..=3 {
                out.push(IdentityParams::new(n, [w1, w2, w3], [1, 0, 1]));
            }
        }
    }
    out
}

fn bench_identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("identity_grid");
    group.sample_size(10);
    let params = grid(3);
    group.throughput(Throughput::Elements(params.len() as u64));
    for (name, exec) in STRATEGIES {
        let checker = Checker::new(exec);
        group.bench_function(BenchmarkId::new("thm1", name), |b| {
            b.iter(|| black_box(exec.map(&params, |p| checker.thm1(p).unwrap().verdict)))
        });
        group.bench_function(BenchmarkId::new("cross34", name), |b| {
            b.iter(|| black_box(exec.map(&params, |p| checker.cross34(p).unwrap().verdict)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_volkenborn, bench_witt, bench_identities);
criterion_main!(benches);
