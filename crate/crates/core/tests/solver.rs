use quintic_flow::geometry::{chordal, cx, re, C};
use quintic_flow::invariants::k_values;
use quintic_flow::param::{conjugated_five_points, family_at, random_generic_v, random_vec4, KParams};
use quintic_flow::solver::*;
use quintic_flow::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

fn depressed_from_k(k: &KParams, lambda: C) -> DepressedQuintic {
    let r = resolvent_rk(k).unwrap();
    DepressedQuintic {
        b2: r[3] * lambda.powu(2),
        b3: r[2] * lambda.powu(3),
        b4: r[1] * lambda.powu(4),
        b5: r[0] * lambda.powu(5),
        shift: C::new(0.0, 0.0),
    }
}

#[test]
fn reduction_round_trip_random_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let b = random_vec4(&mut rng);
        let q = DepressedQuintic { b2: b[0], b3: b[1], b4: b[2], b5: b[3], shift: C::new(0.0, 0.0) };
        let (k, l) = reduce_to_k(&q).unwrap();
        let back = depressed_from_k(&k, l);
        for (got, want) in [(back.b2, q.b2), (back.b3, q.b3), (back.b4, q.b4), (back.b5, q.b5)] {
            assert!(rel(got, want) < 1e-9);
        }
    }
}

#[test]
fn reduction_recovers_k_of_v() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let v = random_generic_v(&mut rng);
        let k = k_values(&v).unwrap();
        let q = depressed_from_k(&k, cx(0.8, -0.3));
        let (k2, _) = reduce_to_k(&q).unwrap();
        assert!(rel(k2.k1, k.k1) < 1e-9 && rel(k2.k2, k.k2) < 1e-9 && rel(k2.k3, k.k3) < 1e-9);
    }
}

#[test]
fn zero_b3_is_degenerate() {
    let q = DepressedQuintic { b2: re(1.0), b3: re(0.0), b4: re(2.0), b5: re(1.0), shift: re(0.0) };
    assert_eq!(reduce_to_k(&q), Err(Error::DegenerateReduction));
}

#[test]
fn iteration_lands_on_a_conjugated_five_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let v = random_generic_v(&mut rng);
    let (_, t, pp) = family_at(&v).unwrap();
    let fixed = conjugated_five_points(&t).unwrap();
    let opts = IterateOptions::default();
    let mut hits = 0;
    for seed in 0..100 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        if let Ok(out) = iterate_phi_k(&pp, &mut r, &opts) {
            if fixed.iter().any(|p| chordal(p, &out.w) < 1e-6) {
                hits += 1;
            }
            assert!(pp.root_selector(&out.w).is_ok());
        }
    }
    assert!(hits >= 95, "{hits}");
}

#[test]
fn start_at_fixed_point_stays() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let v = random_generic_v(&mut rng);
    let (_, t, pp) = family_at(&v).unwrap();
    let p = quintic_flow::geometry::normalize(&conjugated_five_points(&t).unwrap()[2]).unwrap();
    let opts = IterateOptions { tol: 1e-10, ..Default::default() };
    let (w, it) = run_phi_k(&pp, p, &opts).unwrap();
    assert_eq!(it, opts.consecutive);
    assert!(chordal(&w, &p) < 1e-10);
}

fn assert_roots(found: &[C; 5], want: &[f64], tol: f64) {
    for w in want {
        assert!(found.iter().any(|f| (f - re(*w)).norm() < tol), "missing {w}: {found:?}");
    }
}

#[test]
fn solves_known_integer_roots() {
    let want = [1.0, 2.0, 3.0, 4.0, 6.0];
    let p = Quintic::from_roots(&want.map(re));
    let rep = solve(&p, &SolveOptions::default()).unwrap();
    assert_roots(&rep.roots, &want, 1e-6);
    assert!(rep.residuals.iter().all(|&r| r < 1e-8));
    assert!(!rep.regularized);
    assert!(rep.selection_residual < 1e-6);
}

#[test]
fn degenerate_quintic_goes_through_mobius() {
    let want = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let p = Quintic::from_roots(&want.map(re));
    let rep = solve(&p, &SolveOptions { seed: 5, ..Default::default() }).unwrap();
    assert!(rep.regularized);
    assert_roots(&rep.roots, &want, 1e-6);
}

#[test]
fn regularized_roots_map_back() {
    let p = Quintic::from_roots(&[-2.0, -1.0, 0.0, 1.0, 2.0].map(re));
    let (pt, m) = mobius_regularize(&p, 9).unwrap();
    assert!(reduce_to_k(&depress(&pt)).is_ok());
    let rep = solve(&pt, &SolveOptions::default()).unwrap();
    for r in rep.roots {
        assert!(p.residual(m.inverse().apply(r)) < 1e-8);
    }
}

#[test]
fn random_unit_disk_batch() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut ok = 0;
    for seed in 0..100 {
        let p = random_unit_disk_quintic(&mut rng);
        if let Ok(rep) = solve(&p, &SolveOptions { seed, ..Default::default() }) {
            assert!(rep.residuals.iter().all(|&r| r < 1e-8), "{:?}", rep.residuals);
            assert!(!rep.polish_flagged);
            ok += 1;
        }
    }
    assert!(ok >= 95, "{ok}");
}

#[test]
fn solve_is_deterministic() {
    let p = Quintic::new([cx(0.3, 0.1), cx(-0.2, 0.5), re(0.7), cx(0.0, -0.4), cx(0.1, 0.1)]).unwrap();
    let o = SolveOptions { seed: 42, ..Default::default() };
    assert_eq!(solve(&p, &o).unwrap(), solve(&p, &o).unwrap());
}
