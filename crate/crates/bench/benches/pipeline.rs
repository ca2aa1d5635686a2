//! Benchmarks for the hot paths: the lattice distance, the merge search,
//! the geodesic realizer, and full construction planning.

use coneangles::angles::{d1_odd_lattice, AngleUnit, AngleVector, DefectVector};
use coneangles::holonomy::build_geodesic;
use coneangles::merging::{find_merge_bruteforce, find_merge_constructive};
use coneangles::planner::plan_sphere_n;
use coneangles::scalar::Scalar;
use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn strict_interior(rng: &mut ChaCha8Rng, n: usize) -> AngleVector {
    loop {
        let den = rng.gen_range(4..=20i64);
        let entries: Vec<Scalar> = (0..n)
            .map(|_| Scalar::ratio(rng.gen_range(1..=3 * den), den))
            .collect();
        if entries.iter().any(|e| e.is_integer(0.0)) {
            continue;
        }
        let Ok(theta) = AngleVector::new(entries, AngleUnit::TwoPi) else {
            continue;
        };
        let ok = coneangles::classify(&theta, 0.0)
            .map(|r| r.status == coneangles::AdmissibilityStatus::StrictInterior)
            .unwrap_or(false);
        if ok {
            return theta;
        }
    }
}

fn bench_d1(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let vectors: Vec<DefectVector> = (0..64)
        .map(|_| {
            let den = rng.gen_range(1..=50i64);
            DefectVector::new(
                (0..8)
                    .map(|_| Scalar::ratio(rng.gen_range(-3 * den..=3 * den), den))
                    .collect(),
            )
        })
        .collect();
    c.bench_function("d1_odd_lattice_n8_exact", |b| {
        let mut k = 0;
        b.iter(|| {
            k = (k + 1) % vectors.len();
            black_box(d1_odd_lattice(&vectors[k]).unwrap())
        })
    });
}

fn bench_merge(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let inputs: Vec<DefectVector> = (0..32).map(|_| strict_interior(&mut rng, 8).defects()).collect();
    c.bench_function("find_merge_constructive_n8", |b| {
        let mut k = 0;
        b.iter(|| {
            k = (k + 1) % inputs.len();
            black_box(find_merge_constructive(&inputs[k], 1e-9).unwrap())
        })
    });
    c.bench_function("find_merge_bruteforce_n8", |b| {
        let mut k = 0;
        b.iter(|| {
            k = (k + 1) % inputs.len();
            black_box(find_merge_bruteforce(&inputs[k], 1e-9).unwrap())
        })
    });
}

fn bench_realize(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let inputs: Vec<AngleVector> = (0..32).map(|_| strict_interior(&mut rng, 12)).collect();
    c.bench_function("build_geodesic_n12", |b| {
        let mut k = 0;
        b.iter(|| {
            k = (k + 1) % inputs.len();
            black_box(build_geodesic(&inputs[k], 0, 1e-9).unwrap())
        })
    });
}

fn bench_plan(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let inputs: Vec<AngleVector> = (0..16).map(|_| strict_interior(&mut rng, 8)).collect();
    c.bench_function("plan_sphere_n8", |b| {
        let mut k = 0;
        b.iter(|| {
            k = (k + 1) % inputs.len();
            black_box(plan_sphere_n(&inputs[k].entries).unwrap())
        })
    });
}

criterion_group!(benches, bench_d1, bench_merge, bench_realize, bench_plan);
criterion_main!(benches);
