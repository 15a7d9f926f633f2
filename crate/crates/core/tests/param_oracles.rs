use quintic_flow::equivariants::phi6_u;
use quintic_flow::geometry::{chordal, cx, norm, u_of, Mat4, Vec4, C, ONE};
use quintic_flow::group::all_elements;
use quintic_flow::invariants::{k_values, phi, psi10, InvariantValues};
use quintic_flow::param::*;
use quintic_flow::solver::resolvent_rk;
use quintic_flow::poly::horner;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

fn rel_mat(a: &Mat4, b: &Mat4) -> f64 {
    a.sub(b).frobenius() / a.frobenius().max(b.frobenius())
}

fn setups(seed: u64, n: usize) -> Vec<(Vec4, KParams, TauMatrix, ParamPolys)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let v = random_generic_v(&mut rng);
            let (k, t, pp) = family_at(&v).unwrap();
            (v, k, t, pp)
        })
        .collect()
}

#[test]
fn phi2k_and_phi3k_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (v, _, t, pp) in setups(1, 20) {
        let p2v = phi(&v, 2);
        for _ in 0..50 {
            let w = random_vec4(&mut rng);
            let u = t.matrix.apply(&w);
            assert!(rel(phi(&u, 2), p2v.powu(6) * pp.phi2k(&w)) < 1e-8);
            assert!(rel(phi(&u, 3), p2v.powu(9) * pp.phi3k(&w)) < 1e-8);
        }
    }
}

#[test]
fn phi4k_and_phi5k_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (v, _, t, pp) in setups(2, 20) {
        let p2v = phi(&v, 2);
        let w = random_vec4(&mut rng);
        let u = t.matrix.apply(&w);
        let (p4, p5) = pp.phi45k_value_grad(&w);
        assert!(rel(phi(&u, 4), p2v.powu(12) * p4.value) < 1e-7);
        assert!(rel(phi(&u, 5), p2v.powu(15) * p5.value) < 1e-7);
    }
}

#[test]
fn t_matrix_and_determinant_oracles() {
    for (v, k, t, pp) in setups(3, 20) {
        let inv = InvariantValues::at(&v);
        let p2 = inv.phi2;
        let tt = t.matrix.repose() * t.matrix;
        assert!(rel_mat(&tt, &pp.tk_matrix.scaled(p2.powu(6))) < 1e-8);
        let d = t.matrix.det();
        assert!(rel(d * d, p2.powu(24) * k.t_k()) < 1e-8);
        assert!(rel(d, inv.phi2 * inv.phi3 * inv.phi4 * inv.phi5 * psi10(&v)) < 1e-8);
    }
}

#[test]
fn t_k_is_det_t_matrix_at_random_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let w = random_vec4(&mut rng);
        let k = KParams::new(w[0], w[1], w[2]);
        assert!(rel(k.t_matrix().det(), k.t_k()) < 1e-10);
    }
}

#[test]
fn tau_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = all_elements();
    for (v, _, t, _) in setups(5, 20) {
        let a = &g[rng.random_range(0..g.len())];
        let tav = tau(&a.apply_u(&v)).unwrap();
        let at = a.matrix_u * t.matrix;
        assert!(tav.matrix.sub(&at).frobenius() / t.matrix.frobenius() < 1e-9);
        let sign = if a.perm.is_even() { 1.0 } else { -1.0 };
        assert!(rel(tav.matrix.det(), t.matrix.det() * sign) < 1e-9);
    }
}

fn fd_gradient(f: impl Fn(&Vec4) -> C, w: &Vec4) -> Vec4 {
    let h = 1e-6 * norm(w);
    std::array::from_fn(|i| {
        let mut p = *w;
        let mut m = *w;
        p[i] += h;
        m[i] -= h;
        (f(&p) - f(&m)) / (2.0 * h)
    })
}

#[test]
fn phi45k_gradients_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (_, _, _, pp) in setups(6, 50) {
        let w = random_vec4(&mut rng);
        let (p4, p5) = pp.phi45k_value_grad(&w);
        // difference quotients of a double-double evaluation; Φ₄K cancels too
        // heavily for plain f64 values at h = 1e-6
        let fd4 = fd_gradient(|x| pp.invariants_precise(x).phi4.value, &w);
        let fd5 = fd_gradient(|x| pp.invariants_precise(x).phi5.value, &w);
        let err = |a: &Vec4, b: &Vec4| {
            let d: Vec<C> = (0..4).map(|i| a[i] - b[i]).collect();
            norm(&d) / norm(a)
        };
        assert!(err(&p4.gradient, &fd4) < 1e-5);
        assert!(err(&p5.gradient, &fd5) < 1e-5);
    }
}

#[test]
fn phi4k_homogeneity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (_, _, _, pp) in setups(7, 5) {
        let w = random_vec4(&mut rng);
        let l = cx(0.7, -1.3);
        let lw = w.map(|z| z * l);
        assert!(rel(pp.phi45k_value_grad(&lw).0.value, l.powu(4) * pp.phi45k_value_grad(&w).0.value) < 1e-10);
    }
}

#[test]
fn phi_k_is_conjugate_to_phi6() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (v, _, t, pp) in setups(8, 20) {
        let w = random_vec4(&mut rng);
        let lhs = phi6_u(&t.matrix.apply(&w));
        let rhs = t.matrix.apply(&pp.phi_k(&w));
        assert!(chordal(&lhs, &rhs) < 1e-7);
        let scaled = rhs.map(|z| z * phi(&v, 2).powu(15));
        let d: Vec<C> = (0..4).map(|i| lhs[i] - scaled[i]).collect();
        assert!(norm(&d) / norm(&lhs) < 1e-7);
    }
}

#[test]
fn phi_k_fixes_conjugated_five_points() {
    for (_, _, t, pp) in setups(9, 10) {
        for p in conjugated_five_points(&t).unwrap() {
            assert!(chordal(&pp.phi_k(&p), &p) < 1e-9);
        }
    }
}

#[test]
fn phi_k_commutes_with_conjugated_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let g = all_elements();
    for (_, _, t, pp) in setups(10, 10) {
        let inv = t.matrix.inverse().unwrap();
        for _ in 0..5 {
            let a = &g[rng.random_range(0..g.len())];
            let b = inv * a.matrix_u * t.matrix;
            let w = random_vec4(&mut rng);
            assert!(chordal(&pp.phi_k(&b.apply(&w)), &b.apply(&pp.phi_k(&w))) < 1e-7);
        }
    }
}

#[test]
fn root_selector_picks_s_values() {
    for (v, k, t, pp) in setups(13, 20) {
        let s = s_values(&v);
        let rk = resolvent_rk(&k).unwrap();
        let scale = rk.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (l, p) in conjugated_five_points(&t).unwrap().iter().enumerate() {
            let j = pp.root_selector(p).unwrap();
            assert!(rel(j, s[l]) < 1e-7, "l={l}");
            let lp = p.map(|z| z * cx(-2.0, 0.5));
            assert!(rel(pp.root_selector(&lp).unwrap(), j) < 1e-12);
        }
        for sk in s {
            let pow: f64 = (0..=5).map(|i| rk[i].norm() * sk.norm().powi(i as i32)).sum();
            assert!(horner(&rk, sk).norm() / pow.max(scale) < 1e-8);
        }
    }
}

#[test]
fn gamma_v_matches_gamma_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (v, _, t, pp) in setups(14, 20) {
        let inv = InvariantValues::at(&v);
        let w = random_vec4(&mut rng);
        assert!(rel(gamma_v(&t, &w), inv.phi2.powu(5) * inv.phi3 * pp.gamma_k(&w)) < 1e-7);
    }
}

#[test]
fn g_forms_vanish_at_other_five_points() {
    for l in 0..5 {
        let mut x = [ONE; 5];
        x[l] = cx(-4.0, 0.0);
        let g = g_forms(&u_of(&x));
        for (k, gk) in g.iter().enumerate() {
            if k == l {
                assert!(gk.norm() > 1.0);
            } else {
                assert!(gk.norm() < 1e-10);
            }
        }
    }
}

#[test]
fn singular_tau_and_degenerate_k() {
    let mut x = [ONE; 5];
    x[0] = cx(-4.0, 0.0);
    // Ψ₁₀ vanishes when two coordinates agree
    assert!(tau(&u_of(&x)).is_err());
    assert!(ParamPolys::build(KParams::new(ONE, cx(0.0, 0.0), ONE)).is_err());
    let v = u_of(&[cx(1.0, 0.2), cx(-0.3, 0.9), cx(0.4, -0.1), cx(-1.2, 0.3), cx(0.1, -1.3)]);
    assert!(k_values(&v).is_ok());
}
