use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use lrm_bench::{merton_strikes, nikkei_strikes};
use lrm_core::{lrm_sweep, radix2_fft, EvalMode, FftConfig};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    for sweep in [merton_strikes(), nikkei_strikes()] {
        for mode in [EvalMode::FftGrid, EvalMode::DirectSum] {
            group.bench_function(format!("{}/{}", sweep.name, mode.as_str()), |b| {
                b.iter(|| {
                    lrm_sweep(
                        &sweep.model,
                        sweep.t,
                        sweep.maturity,
                        sweep.spot,
                        black_box(&sweep.strikes),
                        &sweep.config,
                        mode,
                    )
                    .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn fft(c: &mut Criterion) {
    let n = FftConfig::reference().n;
    let input: Vec<Complex64> = (0..n).map(|j| Complex64::new((j as f64).sin(), (j as f64 * 0.5).cos())).collect();
    c.bench_function("radix2_fft/16384", |b| b.iter(|| radix2_fft(black_box(&input)).unwrap()));
}

criterion_group!(benches, sweeps, fft);
criterion_main!(benches);
