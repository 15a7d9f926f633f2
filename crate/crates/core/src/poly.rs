//! Univariate complex polynomials stored as ascending coefficient vectors
//! (`c[k]` multiplies `z^k`).

use crate::dd::Dd;
use crate::geometry::{C, ONE, ZERO};

pub fn horner(c: &[C], z: C) -> C {
    c.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
}

/// Value and first derivative.
pub fn horner_d(c: &[C], z: C) -> (C, C) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

pub fn derivative(c: &[C]) -> Vec<C> {
    c.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect()
}

pub fn mul(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn sub(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().max(b.len());
    (0..n).map(|k| a.get(k).copied().unwrap_or(ZERO) - b.get(k).copied().unwrap_or(ZERO)).collect()
}

/// Drops leading coefficients that are exactly zero or negligible relative to
/// the largest coefficient.
pub fn trim(c: &[C], rel: f64) -> Vec<C> {
    let big = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut v = c.to_vec();
    while v.len() > 1 && v.last().unwrap().norm() <= rel * big {
        v.pop();
    }
    v
}

/// Horner evaluation carried in double-double complex arithmetic, so the
/// residual of a well-polished root is not swamped by rounding.
pub fn horner_compensated(c: &[C], z: C) -> C {
    let (zr, zi) = (Dd(z.re, 0.0), Dd(z.im, 0.0));
    let (mut pr, mut pi) = (Dd(0.0, 0.0), Dd(0.0, 0.0));
    for &a in c.iter().rev() {
        let nr = pr.mul(zr).add(pi.mul(zi).neg()).add(Dd(a.re, 0.0));
        let ni = pr.mul(zi).add(pi.mul(zr)).add(Dd(a.im, 0.0));
        pr = nr;
        pi = ni;
    }
    C::new(pr.0 + pr.1, pi.0 + pi.1)
}

/// Synthetic division by `(z − r)`; returns the quotient (remainder dropped).
pub fn deflate(c: &[C], r: C) -> Vec<C> {
    let n = c.len() - 1;
    let mut q = vec![ZERO; n];
    let mut acc = ZERO;
    for k in (1..=n).rev() {
        acc = acc * r + c[k];
        q[k - 1] = acc;
    }
    q
}

/// Newton iteration from `z`, at most `steps` steps; stops once the update
/// stalls at rounding level.
pub fn newton(c: &[C], mut z: C, steps: usize) -> C {
    for _ in 0..steps {
        let (p, dp) = horner_d(c, z);
        if dp == ZERO {
            break;
        }
        let dz = p / dp;
        if !dz.is_finite() {
            break;
        }
        z -= dz;
        if dz.norm() <= 4.0 * f64::EPSILON * z.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    z
}

/// All roots by the Aberth–Ehrlich iteration. Leading zero coefficients are
/// trimmed first; the zero polynomial or a constant has no roots.
pub fn aberth(c: &[C]) -> Vec<C> {
    let c = trim(c, 0.0);
    let n = c.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = c[n];
    let monic: Vec<C> = c.iter().map(|&a| a / lead).collect();
    // Fujiwara-type radius for the initial circle
    let radius = (0..n).map(|k| monic[k].norm().powf(1.0 / (n - k) as f64)).fold(0.0, f64::max).max(1e-3);
    let mut z: Vec<C> = (0..n)
        .map(|k| C::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut done = true;
        for i in 0..n {
            let (p, dp) = horner_d(&monic, z[i]);
            if p == ZERO {
                continue;
            }
            let ratio = p / dp;
            let s: C = (0..n).filter(|&j| j != i).map(|j| ONE / (z[i] - z[j])).sum();
            let w = ratio / (ONE - ratio * s);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 1e-15 * z[i].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z.into_iter().map(|r| newton(&monic, r, 3)).collect()
}

/// Roots of the monic cubic `t³ + a t² + b t + c` by Cardano.
pub fn cubic_roots(a: C, b: C, c: C) -> [C; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = c - a * b / 3.0 + a * a * a * (2.0 / 27.0);
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let c1 = -q / 2.0 + disc;
    let c2 = -q / 2.0 - disc;
    let cube = if c1.norm() >= c2.norm() { c1 } else { c2 };
    let w = crate::geometry::omega(3, 1);
    if cube.norm() == 0.0 {
        return [-shift; 3];
    }
    let u0 = cube.powf(1.0 / 3.0);
    let poly = [c, b, a, ONE];
    [u0, u0 * w, u0 * w * w].map(|u| newton(&poly, u - p / (u * 3.0) - shift, 2))
}

/// Roots of the monic quartic `z⁴ + a z³ + b z² + c z + d` by Ferrari's method.
pub fn quartic_roots(a: C, b: C, c: C, d: C) -> [C; 4] {
    let shift = a / 4.0;
    // depressed: y⁴ + p y² + q y + r
    let p = b - a * a * (3.0 / 8.0);
    let q = c - a * b / 2.0 + a * a * a / 8.0;
    let r = d - a * c / 4.0 + a * a * b / 16.0 - a * a * a * a * (3.0 / 256.0);
    let ys: [C; 4] = if q.norm() <= 1e-14 * (p.norm() + r.norm().sqrt() + 1e-300) {
        // biquadratic
        let disc = (p * p - r * 4.0).sqrt();
        let t1 = (-p + disc) / 2.0;
        let t2 = (-p - disc) / 2.0;
        [t1.sqrt(), -t1.sqrt(), t2.sqrt(), -t2.sqrt()]
    } else {
        // 8m³ + 8p m² + (2p² − 8r) m − q² = 0
        let ms = cubic_roots(p, (p * p * 2.0 - r * 8.0) / 8.0, -q * q / 8.0);
        let m = ms.into_iter().max_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap();
        let s = (m * 2.0).sqrt();
        let quad = |sign: f64| {
            // y² − sign·s·y + p/2 + m + sign·q/(2s) = 0
            let bq = -s * sign;
            let cq = p / 2.0 + m + q / (s * 2.0) * sign;
            let disc = (bq * bq - cq * 4.0).sqrt();
            [(-bq + disc) / 2.0, (-bq - disc) / 2.0]
        };
        let [y1, y2] = quad(1.0);
        let [y3, y4] = quad(-1.0);
        [y1, y2, y3, y4]
    };
    let poly = [d, c, b, a, ONE];
    ys.map(|y| newton(&poly, y - shift, 3))
}
