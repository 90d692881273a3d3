use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pwilab::connecting::{parametric_coefficients, ConnectingGraph};
use pwilab::embedding::{resonant_angles, xi_estimates};
use pwilab::experiments::{build_paper_3pwi, build_return_strip};
use pwilab::{Complex64, Permutation};
use pwilab_bench::{four_iet, golden_rotation};

fn iet_orbits(c: &mut Criterion) {
    let f = four_iet();
    let mut group = c.benchmark_group("iet_orbit");
    for n in [1_000usize, 100_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| f.orbit(black_box(0.0), n).unwrap())
        });
    }
    group.finish();
    c.bench_function("rauzy_step", |b| {
        b.iter(|| black_box(&f).rauzy_step().unwrap())
    });
}

fn pwi_orbits(c: &mut Criterion) {
    let three = build_paper_3pwi();
    let strip = build_return_strip();
    let mut group = c.benchmark_group("pwi_orbit_100k");
    group.sample_size(20);
    group.bench_function("three_atom", |b| {
        b.iter(|| {
            three
                .pwi
                .orbit(black_box(Complex64::new(0.0, 0.0)), 100_000, 0)
        })
    });
    group.bench_function("return_strip", |b| {
        b.iter(|| {
            strip
                .pwi
                .orbit(black_box(Complex64::new(0.0, 0.416)), 100_000, 0)
        })
    });
    group.finish();
}

fn ergodic_averages(c: &mut Criterion) {
    let f = golden_rotation();
    let theta = resonant_angles(&f);
    let mut group = c.benchmark_group("xi_estimates");
    for level in [8usize, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(level), &level, |b, &level| {
            b.iter(|| xi_estimates(&f, &theta, level, 10_000_000).unwrap())
        });
    }
    group.finish();
}

fn graph_sweep(c: &mut Criterion) {
    let perms: Vec<Permutation> = (2..=6)
        .flat_map(Permutation::all)
        .filter(Permutation::is_irreducible)
        .collect();
    c.bench_function("graph_sweep_d6", |b| {
        b.iter(|| {
            perms
                .iter()
                .filter(|p| ConnectingGraph::build(p).unwrap().is_connected())
                .map(|p| {
                    let theta = vec![0.3; p.d()];
                    parametric_coefficients(&theta, p, 0).unwrap().theta_sum
                })
                .sum::<f64>()
        })
    });
}

criterion_group!(
    benches,
    iet_orbits,
    pwi_orbits,
    ergodic_averages,
    graph_sweep
);
criterion_main!(benches);
