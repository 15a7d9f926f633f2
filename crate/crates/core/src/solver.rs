//! Solving a general quintic: reduce to the resolvent R_K, iterate φ_K to one
//! of its five fixed points, read off a root with J_K, then ascend, deflate
//! and finish the quartic in closed form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{chordal, normalize, Vec4, C, ONE, ZERO};
use crate::param::{random_vec4, KParams, ParamPolys};
use crate::poly;

/// Monic `x⁵ + a₁x⁴ + a₂x³ + a₃x² + a₄x + a₅`, stored as `a = [a₁, …, a₅]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quintic {
    pub a: [C; 5],
}

impl Quintic {
    pub fn new(a: [C; 5]) -> Result<Self> {
        if a.iter().all(|z| z.is_finite()) {
            Ok(Quintic { a })
        } else {
            Err(Error::Degenerate)
        }
    }

    pub fn from_roots(r: &[C; 5]) -> Self {
        let c = r.iter().fold(vec![ONE], |acc, &z| poly::mul(&acc, &[-z, ONE]));
        Quintic { a: [c[4], c[3], c[2], c[1], c[0]] }
    }

    /// Ascending coefficients, `[a₅, a₄, a₃, a₂, a₁, 1]`.
    pub fn ascending(&self) -> Vec<C> {
        let a = &self.a;
        vec![a[4], a[3], a[2], a[1], a[0], ONE]
    }

    pub fn eval(&self, x: C) -> C {
        poly::horner(&self.ascending(), x)
    }

    /// `|p(x)|` with the evaluation carried in double-double arithmetic.
    pub fn residual(&self, x: C) -> f64 {
        poly::horner_compensated(&self.ascending(), x).norm()
    }
}

/// `y⁵ + b₂y³ + b₃y² + b₄y + b₅` with `x = y + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepressedQuintic {
    pub b2: C,
    pub b3: C,
    pub b4: C,
    pub b5: C,
    pub shift: C,
}

impl DepressedQuintic {
    pub fn ascending(&self) -> Vec<C> {
        vec![self.b5, self.b4, self.b3, self.b2, ZERO, ONE]
    }

    /// `ρ = max(|shift|, max |b_k|^{1/k})`, the root scale used for
    /// degeneracy tests. The shift counts because depressing a quintic whose
    /// roots cluster far from 0 leaves only cancellation noise in the `b_k`.
    pub fn scale(&self) -> f64 {
        [(self.b2, 2), (self.b3, 3), (self.b4, 4), (self.b5, 5)]
            .iter()
            .map(|(b, k)| b.norm().powf(1.0 / *k as f64))
            .fold(self.shift.norm(), f64::max)
    }
}

/// Coefficients of `p(x + s)` (ascending) by repeated synthetic division.
fn taylor_shift(c: &[C], s: C) -> Vec<C> {
    let mut c = c.to_vec();
    let n = c.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let t = c[k + 1] * s;
            c[k] += t;
        }
    }
    c
}

/// Removes the quartic term by `x = y + shift`, `shift = −a₁/5`.
pub fn depress(p: &Quintic) -> DepressedQuintic {
    let shift = -p.a[0] / 5.0;
    let c = taylor_shift(&p.ascending(), shift);
    DepressedQuintic { b2: c[3], b3: c[2], b4: c[1], b5: c[0], shift }
}

/// Relative size of `b₂` or `b₃` (against `ρ²`, `ρ³`) below which the
/// reduction is refused.
pub const REDUCTION_TOL: f64 = 1e-10;

/// `R_K(s) = s⁵ + C₂s³ + C₃s² + C₄s + C₅`, ascending coefficients.
pub fn resolvent_rk(k: &KParams) -> Result<[C; 6]> {
    if !(k.k2.norm() > 0.0) || !k.k2.is_finite() {
        return Err(Error::DegenerateK);
    }
    let s5 = 5f64.sqrt();
    let k2 = k.k2;
    let c2 = -125.0 / (k2 * 2.0);
    let c3 = 625.0 * s5 / (k2 * 3.0);
    let c4 = -(k.k1 * 2.0 - 1.0) * 15625.0 / (k2 * k2 * 8.0);
    let c5 = (k.k3 * 6.0 - 5.0) * 15625.0 * s5 / (k2 * k2 * 6.0);
    Ok([c5, c4, c3, c2, ZERO, ONE])
}

/// The scaling `s = y/λ` together with the parameters K of the resolvent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionData {
    pub k: KParams,
    pub lambda: C,
    pub shift: C,
    pub mobius: Option<Mobius>,
}

/// `K₁ = (b₂² − 2b₄)/(2b₂²)`, `K₂ = −9b₃²/(8b₂³)`, `K₃ = 5(b₂b₃ − b₅)/(6b₂b₃)`,
/// `λ = −3b₃/(10√5·b₂)`, so that `b_k = λᵏC_k(K)`.
pub fn reduce_to_k(q: &DepressedQuintic) -> Result<(KParams, C)> {
    let rho = q.scale();
    if rho == 0.0
        || !rho.is_finite()
        || q.b2.norm() <= REDUCTION_TOL * rho * rho
        || q.b3.norm() <= REDUCTION_TOL * rho * rho * rho
    {
        return Err(Error::DegenerateReduction);
    }
    let (b2, b3, b4, b5) = (q.b2, q.b3, q.b4, q.b5);
    let k = KParams {
        k1: (b2 * b2 - b4 * 2.0) / (b2 * b2 * 2.0),
        k2: b3 * b3 * -9.0 / (b2 * b2 * b2 * 8.0),
        k3: (b2 * b3 - b5) * 5.0 / (b2 * b3 * 6.0),
    };
    let lambda = b3 * -3.0 / (b2 * 10.0 * 5f64.sqrt());
    Ok((k, lambda))
}

/// `t ↦ (αt + β)/(γt + δ)`, acting on the roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub m: [[C; 2]; 2],
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius { m: [[ONE, ZERO], [ZERO, ONE]] }
    }

    pub fn apply(&self, t: C) -> C {
        let [[a, b], [c, d]] = self.m;
        (a * t + b) / (c * t + d)
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Mobius { m: [[d, -b], [-c, a]] }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let v = random_vec4(rng);
        let det = v[0] * v[3] - v[1] * v[2];
        let s = ONE / det.sqrt();
        Mobius { m: [[v[0] * s, v[1] * s], [v[2] * s, v[3] * s]] }
    }

    /// The monic quintic whose roots are the images of the roots of `p`:
    /// the numerator of `p∘M⁻¹`.
    pub fn transform(&self, p: &Quintic) -> Result<Quintic> {
        // M⁻¹(t) = (δt − β)/(−γt + α)
        let [[a, b], [c, d]] = self.m;
        let num = [-b, d];
        let den = [a, -c];
        let coeffs = p.ascending();
        let mut out = vec![ZERO; 6];
        for (k, &ck) in coeffs.iter().enumerate() {
            let mut term = vec![ck];
            for _ in 0..k {
                term = poly::mul(&term, &num);
            }
            for _ in k..5 {
                term = poly::mul(&term, &den);
            }
            for (i, t) in term.iter().enumerate() {
                out[i] += t;
            }
        }
        let lead = out[5];
        let big = out.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if lead.norm() <= 1e-12 * big {
            return Err(Error::Degenerate);
        }
        Quintic::new([out[4] / lead, out[3] / lead, out[2] / lead, out[1] / lead, out[0] / lead])
    }
}

/// Maximum number of random Möbius maps tried.
pub const MAX_REGULARIZE_ATTEMPTS: usize = 10;

/// Moves the roots by seeded random Möbius maps until the depressed quintic
/// reduces to some K.
pub fn mobius_regularize(p: &Quintic, seed: u64) -> Result<(Quintic, Mobius)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d6f_6269_7573);
    for _ in 0..MAX_REGULARIZE_ATTEMPTS {
        let m = Mobius::random(&mut rng);
        let Ok(pt) = m.transform(p) else { continue };
        let q = depress(&pt);
        if reduce_to_k(&q).is_ok() && ParamPolys::build(reduce_to_k(&q)?.0).is_ok() {
            return Ok((pt, m));
        }
    }
    Err(Error::RegularizationFailed(MAX_REGULARIZE_ATTEMPTS))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOptions {
    pub tol: f64,
    pub consecutive: usize,
    pub max_iter: usize,
    pub max_restarts: usize,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions { tol: 1e-13, consecutive: 3, max_iter: 500, max_restarts: 25 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOutcome {
    pub w: Vec4,
    /// Iterations of the successful run.
    pub iterations: usize,
    pub restarts: usize,
    /// Runs abandoned because they settled on `Φ₂K = 0`.
    pub quadric_restarts: usize,
}

/// Step size below which φ_K is evaluated in double-double arithmetic, so
/// that the final steps can fall under the convergence tolerance.
pub const PRECISE_SWITCH: f64 = 1e-9;

/// Below this step size a step that fails to halve also switches to
/// double-double: near a superattracting point only rounding stalls the
/// contraction, and when T_K is ill conditioned that floor sits far above
/// `PRECISE_SWITCH`.
pub const STALL_SWITCH: f64 = 1e-4;

/// One run of `w ↦ φ_K(w)` from `w`. Returns the limit and the step count,
/// or `None` if the run does not settle.
pub fn run_phi_k(pp: &ParamPolys, mut w: Vec4, opts: &IterateOptions) -> Option<(Vec4, usize)> {
    let mut calm = 0;
    let mut precise = false;
    let mut prev = f64::INFINITY;
    for it in 0..opts.max_iter {
        let image = if precise { pp.phi_k_precise(&w) } else { pp.phi_k(&w) };
        let next = normalize(&image).ok()?;
        if !next.iter().all(|z| z.is_finite()) {
            return None;
        }
        let d = chordal(&next, &w);
        w = next;
        precise |= d < PRECISE_SWITCH || (d < STALL_SWITCH && d > 0.5 * prev);
        prev = d;
        if d < opts.tol {
            calm += 1;
            if calm >= opts.consecutive {
                return Some((w, it + 1));
            }
        } else {
            calm = 0;
        }
    }
    None
}

/// Iterates φ_K from seeded random starts until a run converges to a point
/// off the quadric `Φ₂K = 0`.
pub fn iterate_phi_k<R: Rng + ?Sized>(pp: &ParamPolys, rng: &mut R, opts: &IterateOptions) -> Result<IterateOutcome> {
    let mut quadric_restarts = 0;
    for attempt in 0..=opts.max_restarts {
        let Ok(w0) = normalize(&random_vec4(rng)) else { continue };
        if let Some((w, iterations)) = run_phi_k(pp, w0, opts) {
            if pp.root_selector(&w).is_ok() {
                return Ok(IterateOutcome { w, iterations, restarts: attempt, quadric_restarts });
            }
            quadric_restarts += 1;
        }
    }
    Err(Error::NoConvergence { restarts: opts.max_restarts })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub seed: u64,
    pub iterate: IterateOptions,
    pub newton_steps: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 0, iterate: IterateOptions::default(), newton_steps: 10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub roots: [C; 5],
    pub residuals: [f64; 5],
    pub iterations: usize,
    pub restarts: usize,
    pub converged_point: Vec4,
    /// `J_K(w∞)`, a root of R_K before scaling back.
    pub selected_root_raw: C,
    /// `|R_K(S)|/‖R_K‖` for the raw selection.
    pub selection_residual: f64,
    pub regularized: bool,
    /// The Newton polish moved the dynamical root by more than `1e-4` relative.
    pub polish_flagged: bool,
    pub reduction: ReductionData,
}

/// Relative Newton correction beyond which the dynamical root is suspect.
pub const POLISH_FLAG_TOL: f64 = 1e-4;

/// Newton on the full quintic, at most `steps` steps.
fn polish(p: &Quintic, x: C, steps: usize) -> C {
    poly::newton(&p.ascending(), x, steps)
}

pub fn solve(p: &Quintic, opts: &SolveOptions) -> Result<SolveReport> {
    let (work, mobius) = match reduce_to_k(&depress(p)).and_then(|(k, _)| ParamPolys::build(k)) {
        Ok(_) => (*p, None),
        Err(_) => {
            let (pt, m) = mobius_regularize(p, opts.seed)?;
            (pt, Some(m))
        }
    };
    let q = depress(&work);
    let (k, lambda) = reduce_to_k(&q)?;
    let pp = ParamPolys::build(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let out = iterate_phi_k(&pp, &mut rng, &opts.iterate)?;
    let s = pp.root_selector(&out.w)?;
    let rk = resolvent_rk(&k)?;
    let rk_norm = rk.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let selection_residual = poly::horner(&rk, s).norm() / rk_norm;

    let mut x = s * lambda + q.shift;
    if let Some(m) = mobius {
        x = m.inverse().apply(x);
    }
    let raw = x;
    let x = polish(p, x, opts.newton_steps);
    let polish_flagged = (x - raw).norm() > POLISH_FLAG_TOL * x.norm().max(1.0);

    let quartic = poly::deflate(&p.ascending(), x);
    let rest = poly::quartic_roots(quartic[3], quartic[2], quartic[1], quartic[0]);
    let mut roots = [x, rest[0], rest[1], rest[2], rest[3]];
    for r in roots.iter_mut().skip(1) {
        *r = polish(p, *r, opts.newton_steps);
    }
    let residuals = roots.map(|r| p.residual(r));
    Ok(SolveReport {
        roots,
        residuals,
        iterations: out.iterations,
        restarts: out.restarts,
        converged_point: out.w,
        selected_root_raw: s,
        selection_residual,
        regularized: mobius.is_some(),
        polish_flagged,
        reduction: ReductionData { k, lambda, shift: q.shift, mobius },
    })
}

/// Seeded quintic with coefficients uniform in the unit disk.
pub fn random_unit_disk_quintic<R: Rng + ?Sized>(rng: &mut R) -> Quintic {
    let a = std::array::from_fn(|_| loop {
        let z = C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if z.norm() <= 1.0 {
            break z;
        }
    });
    Quintic { a }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::re;

    #[test]
    fn depress_known() {
        let p = Quintic::from_roots(&[-2.0, -1.0, 0.0, 1.0, 2.0].map(re));
        let q = depress(&p);
        assert_eq!(q.shift, ZERO);
        assert!((q.b2 + 5.0).norm() < 1e-14 && q.b3.norm() < 1e-14 && (q.b4 - 4.0).norm() < 1e-14);
        let p = Quintic::from_roots(&[1.0, 2.0, 3.0, 4.0, 6.0].map(re));
        let q = depress(&p);
        assert!((q.shift - 3.2).norm() < 1e-14);
        for r in [1.0, 2.0, 3.0, 4.0, 6.0] {
            assert!(poly::horner(&q.ascending(), re(r) - q.shift).norm() < 1e-10);
        }
    }

    #[test]
    fn resolvent_c2() {
        let r = resolvent_rk(&KParams::new(ONE, ONE, ONE)).unwrap();
        assert_eq!(r[3], re(-62.5));
        assert_eq!(r[4], ZERO);
    }

    #[test]
    fn reduction_round_trip() {
        let q = DepressedQuintic { b2: C::new(0.3, 1.0), b3: C::new(-2.0, 0.5), b4: re(0.7), b5: C::new(0.0, 3.0), shift: ZERO };
        let (k, l) = reduce_to_k(&q).unwrap();
        let r = resolvent_rk(&k).unwrap();
        let want = [q.b5, q.b4, q.b3, q.b2];
        for (i, w) in want.iter().enumerate() {
            let got = r[i] * l.powu(5 - i as u32);
            assert!((got - w).norm() < 1e-12 * w.norm(), "{i}");
        }
    }

    #[test]
    fn degenerate_reduction() {
        let p = Quintic::from_roots(&[-2.0, -1.0, 0.0, 1.0, 2.0].map(re));
        assert_eq!(reduce_to_k(&depress(&p)), Err(Error::DegenerateReduction));
    }

    #[test]
    fn quintuple_root_cannot_be_regularized() {
        for r in [0.0, 2.0, -1.5] {
            let p = Quintic::from_roots(&[re(r); 5]);
            assert_eq!(mobius_regularize(&p, 1), Err(Error::RegularizationFailed(MAX_REGULARIZE_ATTEMPTS)));
            assert_eq!(solve(&p, &SolveOptions::default()), Err(Error::RegularizationFailed(MAX_REGULARIZE_ATTEMPTS)));
        }
    }

    #[test]
    fn mobius_identity_and_back_map() {
        let p = Quintic::from_roots(&[1.0, 2.0, 3.0, 4.0, 6.0].map(re));
        let id = Mobius::identity().transform(&p).unwrap();
        assert_eq!(id, p);
        let (pt, m) = mobius_regularize(&p, 3).unwrap();
        for r in [1.0, 2.0, 3.0, 4.0, 6.0] {
            let t = m.apply(re(r));
            assert!(pt.eval(t).norm() < 1e-9 * (1.0 + t.norm()).powi(5));
        }
    }
}
