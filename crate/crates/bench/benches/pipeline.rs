use criterion::{black_box, criterion_group, criterion_main, Criterion};
use quintic_flow::basins::{attractors_1d, render_1d, GridSpec};
use quintic_flow::equivariants::EquivariantMap;
use quintic_flow::maps1d::restricted_map;
use quintic_flow::param::{family_at, random_generic_v, random_vec4};
use quintic_flow::solver::{random_unit_disk_quintic, solve, SolveOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn maps(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let u = random_vec4(&mut rng);
    for m in [EquivariantMap::Phi6, EquivariantMap::H11] {
        c.bench_function(&format!("eval_{}", m.name()), |b| b.iter(|| m.eval_u(black_box(&u))));
    }
    let (_, _, pp) = family_at(&random_generic_v(&mut rng)).unwrap();
    c.bench_function("phi_k", |b| b.iter(|| pp.phi_k(black_box(&u))));
    c.bench_function("phi_k_precise", |b| b.iter(|| pp.phi_k_precise(black_box(&u))));
}

fn solving(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = random_unit_disk_quintic(&mut rng);
    c.bench_function("solve", |b| b.iter(|| solve(black_box(&p), &SolveOptions::default()).unwrap()));
}

fn rendering(c: &mut Criterion) {
    let m = restricted_map("oct5_conic").unwrap();
    let att = attractors_1d(&m, 4).unwrap();
    let grid = GridSpec::square((0.0, 0.0), 2.0, 128);
    let mut g = c.benchmark_group("render");
    g.sample_size(10);
    g.bench_function("oct5_conic_128", |b| b.iter(|| render_1d(&m, grid, &att, 60)));
    g.finish();
}

criterion_group!(benches, maps, solving, rendering);
criterion_main!(benches);
