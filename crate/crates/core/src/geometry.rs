//! Complex vectors and 4×4 matrices, the x ↔ u change of coordinates,
//! projective normalization, chordal distance and charts on lines/conics.

use std::f64::consts::PI;
use std::ops::{Index, IndexMut, Mul};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::dual::Scalar;
use crate::error::{Error, Result};

pub type C = Complex64;
pub type Vec4 = [C; 4];
pub type Vec5 = [C; 5];

pub const ZERO: C = C::new(0.0, 0.0);
pub const ONE: C = C::new(1.0, 0.0);
pub const I: C = C::new(0.0, 1.0);

/// Below this modulus a vector counts as zero.
pub const ZERO_TOL: f64 = 1e-300;
/// Relative slack when choosing the normalizing coordinate.
pub const TIE_TOL: f64 = 1e-12;
/// Collinearity slack for chart anchors.
pub const CHART_TOL: f64 = 1e-10;

pub fn cx(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn re(x: f64) -> C {
    C::new(x, 0.0)
}

/// `e^{2πik/n}`.
pub fn omega(n: u32, k: i64) -> C {
    C::from_polar(1.0, 2.0 * PI * (k.rem_euclid(n as i64)) as f64 / n as f64)
}

/// The 4×5 matrix with `H[r][c] = ω₅^{(r+1)c}/√5`; its rows are orthonormal.
pub fn h_matrix() -> &'static [[C; 5]; 4] {
    static H: OnceLock<[[C; 5]; 4]> = OnceLock::new();
    H.get_or_init(|| {
        let s = 5f64.sqrt();
        let mut h = [[ZERO; 5]; 4];
        for (r, row) in h.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = omega(5, ((r + 1) * c) as i64) / s;
            }
        }
        h
    })
}

/// `x = H̄ᵀ u`.
pub fn x_of<T: Scalar>(u: &[T; 4]) -> [T; 5] {
    let h = h_matrix();
    let mut x = [T::zero(); 5];
    for (c, xc) in x.iter_mut().enumerate() {
        for r in 0..4 {
            *xc += u[r].scale(h[r][c].conj());
        }
    }
    x
}

/// `u = H x`.
pub fn u_of<T: Scalar>(x: &[T; 5]) -> [T; 4] {
    let h = h_matrix();
    let mut u = [T::zero(); 4];
    for (r, ur) in u.iter_mut().enumerate() {
        for c in 0..5 {
            *ur += x[c].scale(h[r][c]);
        }
    }
    u
}

pub fn norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian inner product `Σ conj(a_i) b_i`.
pub fn inner(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Bilinear product `Σ a_i b_i` (no conjugation).
pub fn dot(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn scale<const N: usize>(v: &[C; N], s: C) -> [C; N] {
    v.map(|z| z * s)
}

pub fn add<const N: usize>(a: &[C; N], b: &[C; N]) -> [C; N] {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn sub<const N: usize>(a: &[C; N], b: &[C; N]) -> [C; N] {
    std::array::from_fn(|i| a[i] - b[i])
}

/// Scales so the largest-modulus coordinate is exactly 1. Ties go to the
/// lowest index within `TIE_TOL` (relative) of the maximum.
pub fn normalize_slice<const N: usize>(v: &[C; N]) -> Result<[C; N]> {
    let m = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(m >= ZERO_TOL) || !m.is_finite() {
        return Err(Error::ZeroVector);
    }
    let k = v.iter().position(|z| z.norm() >= m * (1.0 - TIE_TOL)).unwrap_or(0);
    let p = v[k];
    let mut out = v.map(|z| z / p);
    out[k] = ONE;
    Ok(out)
}

pub fn normalize(u: &Vec4) -> Result<Vec4> {
    normalize_slice(u)
}

/// Fubini–Study chordal distance `√(1 − |⟨p,q⟩|²/(‖p‖²‖q‖²))`, evaluated through
/// the Lagrange identity so that tiny distances keep full relative precision.
pub fn chordal(p: &[C], q: &[C]) -> f64 {
    let np = norm(p);
    let nq = norm(q);
    if np < ZERO_TOL || nq < ZERO_TOL {
        return f64::NAN;
    }
    let mut s = 0.0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            s += (p[i] / np * q[j] / nq - p[j] / np * q[i] / nq).norm_sqr();
        }
    }
    s.sqrt().min(1.0)
}

pub fn chordal_distance(p: &Vec4, q: &Vec4) -> Result<f64> {
    if norm(p) < ZERO_TOL || norm(q) < ZERO_TOL {
        return Err(Error::ZeroVector);
    }
    Ok(chordal(p, q))
}

/// A point of CP³ in hyperplane coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointU(pub Vec4);

/// A point of the hyperplane `Σx = 0` in permutation coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointX(pub Vec5);

impl PointU {
    pub fn new(u: Vec4) -> Result<Self> {
        if norm(&u) < ZERO_TOL {
            return Err(Error::ZeroVector);
        }
        Ok(PointU(u))
    }

    pub fn normalized(&self) -> Result<Self> {
        normalize(&self.0).map(PointU)
    }

    pub fn to_x(&self) -> PointX {
        PointX(x_of(&self.0))
    }
}

impl PointX {
    /// Accepts `x` only if its coordinates sum to zero (relative 1e-12).
    pub fn new(x: Vec5) -> Result<Self> {
        let n = norm(&x);
        if n < ZERO_TOL {
            return Err(Error::ZeroVector);
        }
        let s: C = x.iter().sum();
        if s.norm() > 1e-12 * n {
            return Err(Error::Degenerate);
        }
        Ok(PointX(x))
    }

    pub fn from_reals(x: [f64; 5]) -> Result<Self> {
        PointX::new(x.map(re))
    }

    pub fn to_u(&self) -> PointU {
        PointU(u_of(&self.0))
    }
}

pub fn x_to_u(p: &PointX) -> PointU {
    p.to_u()
}

pub fn u_to_x(p: &PointU) -> PointX {
    p.to_x()
}

/// Row-major complex 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C; 4]; 4]);

impl Index<(usize, usize)> for Mat4 {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.0[i][j]
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, o: Mat4) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = (0..4).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        m
    }
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    /// The reversed identity.
    pub fn reversed_identity() -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            m.0[i][3 - i] = ONE;
        }
        m
    }

    pub fn from_cols(cols: [Vec4; 4]) -> Self {
        let mut m = Mat4::zero();
        for j in 0..4 {
            for i in 0..4 {
                m.0[i][j] = cols[j][i];
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec4 {
        [0, 1, 2, 3].map(|i| self.0[i][j])
    }

    pub fn apply(&self, v: &Vec4) -> Vec4 {
        [0, 1, 2, 3].map(|i| (0..4).map(|k| self.0[i][k] * v[k]).sum())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = self.transpose();
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e = e.conj();
            }
        }
        m
    }

    /// Reflection through the reversed diagonal, `R Aᵀ R`.
    pub fn repose(&self) -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[3 - j][3 - i];
            }
        }
        m
    }

    pub fn scaled(&self, s: C) -> Self {
        Mat4(self.0.map(|r| r.map(|e| e * s)))
    }

    pub fn sub(&self, o: &Mat4) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= o.0[i][j];
            }
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn det(&self) -> C {
        det_n(self.0)
    }

    pub fn adjugate(&self) -> Self {
        Mat4(adjugate4(&self.0))
    }

    /// Inverse through the adjugate; `None` when the determinant is zero.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        Some(self.adjugate().scaled(ONE / d))
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_n<const N: usize>(mut a: [[C; N]; N]) -> C {
    let mut det = ONE;
    for k in 0..N {
        let p = (k..N)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .unwrap_or(k);
        if a[p][k].norm() == 0.0 {
            return ZERO;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..N {
            let f = a[i][k] / a[k][k];
            for j in k..N {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
    }
    det
}

fn det3(m: &[[C; 3]; 3]) -> C {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Adjugate by cofactors; exact structure even when the matrix is singular.
pub fn adjugate4(a: &[[C; 4]; 4]) -> [[C; 4]; 4] {
    let mut adj = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut minor = [[ZERO; 3]; 3];
            let mut r = 0;
            for (ii, row) in a.iter().enumerate() {
                if ii == i {
                    continue;
                }
                let mut c = 0;
                for (jj, e) in row.iter().enumerate() {
                    if jj == j {
                        continue;
                    }
                    minor[r][c] = *e;
                    c += 1;
                }
                r += 1;
            }
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            adj[j][i] = det3(&minor) * sign;
        }
    }
    adj
}

pub fn adjugate5(a: &[[C; 5]; 5]) -> [[C; 5]; 5] {
    let mut adj = [[ZERO; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            let mut minor = [[ZERO; 4]; 4];
            let mut r = 0;
            for (ii, row) in a.iter().enumerate() {
                if ii == i {
                    continue;
                }
                let mut c = 0;
                for (jj, e) in row.iter().enumerate() {
                    if jj == j {
                        continue;
                    }
                    minor[r][c] = *e;
                    c += 1;
                }
                r += 1;
            }
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            adj[j][i] = det_n(minor) * sign;
        }
    }
    adj
}

/// A vector spanning the kernel of `rows` (assumed one-dimensional), found by
/// elimination with full pivoting.
pub fn null_vector<const N: usize>(rows: &[[C; N]]) -> [C; N] {
    let mut a: Vec<[C; N]> = rows.to_vec();
    let mut cols: Vec<usize> = (0..N).collect();
    let mut rank = 0;
    for k in 0..N.min(a.len()) {
        let mut best = (0.0, k, k);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (jj, &j) in cols.iter().enumerate().skip(k) {
                if row[j].norm() > best.0 {
                    best = (row[j].norm(), i, jj);
                }
            }
        }
        if best.0 < 1e-13 {
            break;
        }
        a.swap(k, best.1);
        cols.swap(k, best.2);
        let pc = cols[k];
        let piv = a[k][pc];
        let pivot_row = a[k];
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[pc] / piv;
            for j in 0..N {
                row[j] -= f * pivot_row[j];
            }
        }
        rank += 1;
    }
    // free variable: first non-pivot column
    let free = cols[rank.min(N - 1)];
    let mut v = [ZERO; N];
    v[free] = ONE;
    for k in 0..rank {
        let pc = cols[k];
        v[pc] = -a[k][free] / a[k][pc];
    }
    v
}

/// A value on the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartValue {
    Finite(C),
    Infinity,
}

impl ChartValue {
    /// Homogeneous pair `[z, 1]` or `[1, 0]`.
    pub fn homogeneous(self) -> [C; 2] {
        match self {
            ChartValue::Finite(z) => [z, ONE],
            ChartValue::Infinity => [ONE, ZERO],
        }
    }

    pub fn from_homogeneous(h: [C; 2]) -> Self {
        let z = h[0] / h[1];
        if h[1] == ZERO || !z.is_finite() {
            ChartValue::Infinity
        } else {
            ChartValue::Finite(z)
        }
    }

    pub fn finite(self) -> Option<C> {
        match self {
            ChartValue::Finite(z) => Some(z),
            ChartValue::Infinity => None,
        }
    }
}

/// Affine coordinate `z ↦ base + z·direction` on a projective line; `∞ ↦ direction`.
/// Works in any ambient dimension (x- or u-coordinates).
#[derive(Debug, Clone, PartialEq)]
pub struct LineChart<const N: usize> {
    pub base: [C; N],
    pub direction: [C; N],
    pub anchors: Vec<(ChartValue, String)>,
}

impl<const N: usize> LineChart<N> {
    /// `anchor0` sits at 0, `anchor_inf` at ∞.
    pub fn new(anchor0: [C; N], anchor_inf: [C; N]) -> Result<Self> {
        if norm(&anchor0) < ZERO_TOL || norm(&anchor_inf) < ZERO_TOL {
            return Err(Error::ZeroVector);
        }
        if chordal(&anchor0, &anchor_inf) < CHART_TOL {
            return Err(Error::AnchorsCoincide);
        }
        Ok(LineChart {
            base: anchor0,
            direction: anchor_inf,
            anchors: vec![(ChartValue::Finite(ZERO), "0".into()), (ChartValue::Infinity, "inf".into())],
        })
    }

    /// Adds a third anchor placed at z = 1.
    pub fn with_unit(anchor0: [C; N], anchor_inf: [C; N], anchor1: [C; N]) -> Result<Self> {
        let mut ch = LineChart::new(anchor0, anchor_inf)?;
        let (z, res) = ch.invert_with_residual(&anchor1);
        if res > CHART_TOL {
            return Err(Error::AnchorsNotCollinear(res));
        }
        let z = z.finite().ok_or(Error::AnchorsCoincide)?;
        if z.norm() < CHART_TOL {
            return Err(Error::AnchorsCoincide);
        }
        ch.direction = scale(&ch.direction, z);
        ch.anchors.push((ChartValue::Finite(ONE), "1".into()));
        Ok(ch)
    }

    /// Symmetric convention: `plus` at 1 and `minus` required to land at −1.
    pub fn with_pair(anchor0: [C; N], anchor_inf: [C; N], plus: [C; N], minus: [C; N]) -> Result<Self> {
        let mut ch = LineChart::with_unit(anchor0, anchor_inf, plus)?;
        let (z, res) = ch.invert_with_residual(&minus);
        if res > CHART_TOL {
            return Err(Error::AnchorsNotCollinear(res));
        }
        match z {
            ChartValue::Finite(z) if (z + ONE).norm() < CHART_TOL => {}
            _ => return Err(Error::AnchorsNotCollinear((z.finite().unwrap_or(ZERO) + ONE).norm())),
        }
        ch.anchors.push((ChartValue::Finite(-ONE), "-1".into()));
        Ok(ch)
    }

    pub fn eval(&self, z: ChartValue) -> [C; N] {
        match z {
            ChartValue::Finite(z) => std::array::from_fn(|i| self.base[i] + z * self.direction[i]),
            ChartValue::Infinity => self.direction,
        }
    }

    /// Chart coordinate of `p` together with its relative distance from the line.
    pub fn invert_with_residual(&self, p: &[C; N]) -> (ChartValue, f64) {
        let (a, b) = (&self.base, &self.direction);
        let g = [[inner(a, a), inner(a, b)], [inner(b, a), inner(b, b)]];
        let r = [inner(a, p), inner(b, p)];
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let alpha = (r[0] * g[1][1] - g[0][1] * r[1]) / det;
        let beta = (g[0][0] * r[1] - g[1][0] * r[0]) / det;
        let fit: [C; N] = std::array::from_fn(|i| alpha * a[i] + beta * b[i]);
        let res = norm(&sub(p, &fit)) / norm(p);
        (ChartValue::from_homogeneous([beta, alpha]), res)
    }

    pub fn invert(&self, p: &[C; N]) -> ChartValue {
        self.invert_with_residual(p).0
    }
}

/// Quadratic parametrization `z ↦ A + zM + z²B` of a conic on the quadric
/// `Σx² = 0`, with the anchors `A` at 0 and `B` at ∞.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicChart {
    pub a: Vec5,
    pub m: Vec5,
    pub b: Vec5,
}

impl ConicChart {
    /// `plane_forms` are linear forms (besides `Σx`) cutting out the plane of the conic.
    pub fn on_quadric(a: Vec5, b: Vec5, plane_forms: &[Vec5]) -> Self {
        let mut rows: Vec<Vec5> = plane_forms.to_vec();
        rows.push([ONE; 5]);
        rows.push(a);
        rows.push(b);
        let m = null_vector(&rows);
        let s = (-dot(&a, &b) * 2.0 / dot(&m, &m)).sqrt();
        ConicChart { a, m: scale(&m, s), b }
    }

    pub fn eval(&self, z: ChartValue) -> Vec5 {
        match z {
            ChartValue::Finite(z) => std::array::from_fn(|i| self.a[i] + z * self.m[i] + z * z * self.b[i]),
            ChartValue::Infinity => self.b,
        }
    }

    pub fn invert(&self, p: &Vec5) -> ChartValue {
        // least squares in the basis (A, M, B)
        let basis = [self.a, self.m, self.b];
        let mut g = [[ZERO; 3]; 3];
        let mut r = [ZERO; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = inner(&basis[i], &basis[j]);
            }
            r[i] = inner(&basis[i], p);
        }
        let c = solve3(g, r);
        if c[0].norm() >= c[2].norm() {
            ChartValue::from_homogeneous([c[1], c[0]])
        } else {
            ChartValue::from_homogeneous([c[2], c[1]])
        }
    }
}

fn solve3(g: [[C; 3]; 3], r: [C; 3]) -> [C; 3] {
    let d = det3(&g);
    std::array::from_fn(|k| {
        let mut m = g;
        for i in 0..3 {
            m[i][k] = r[i];
        }
        det3(&m) / d
    })
}

/// Singular values of a 4×4 complex matrix (descending), by one-sided Jacobi.
pub fn singular_values(m: &Mat4) -> [f64; 4] {
    let mut cols: [Vec4; 4] = [0, 1, 2, 3].map(|j| m.col(j));
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..4 {
            for q in p + 1..4 {
                let alpha = cols[p].iter().map(|z| z.norm_sqr()).sum::<f64>();
                let beta = cols[q].iter().map(|z| z.norm_sqr()).sum::<f64>();
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= 1e-300 || g <= 1e-16 * (alpha * beta).sqrt() {
                    continue;
                }
                off = off.max(g / (alpha * beta).sqrt());
                // rotate column q so the coupling is real, then apply a real Jacobi rotation
                let phase = gamma.conj() / g;
                let cq = cols[q].map(|z| z * phase);
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..4 {
                    let (a, b) = (cols[p][i], cq[i]);
                    cols[p][i] = a * c - b * s;
                    cols[q][i] = a * s + b * c;
                }
            }
        }
        if off < 1e-15 {
            break;
        }
    }
    let mut sv = cols.map(|c| norm(&c));
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}
