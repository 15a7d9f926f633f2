//! S5-equivariant maps: the basic generators f_k/φ_k, the solver map φ₆,
//! the quadric maps h₁₁, g₁₁ and the octahedral 5-map, plus ruling coordinates
//! on the quadric Φ₂ = 0.

use crate::dual::{jacobian, Dual4, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{norm, normalize, re, u_of, x_of, Mat4, Vec4, C, ONE, ZERO, ZERO_TOL};
use crate::invariants::{phi_display, power_sum, NEAR_ZERO};
use crate::tables::PHI6_DISPLAY;

/// `f_k(x)_i = F_k − 5x_i^k`, the basic degree-k equivariant.
pub fn f_basic<T: Scalar>(x: &[T; 5], k: u32) -> [T; 5] {
    let p = x.map(|xi| xi.powu(k));
    let s = power_sum(x, k);
    p.map(|pi| s - pi.scale(re(5.0)))
}

/// `φ_k = H·f_k(H̄ᵀu)`, which equals `−5/(k+1)·∇ʳΦ_{k+1}`.
pub fn phi_basic<T: Scalar>(u: &[T; 4], k: u32) -> [T; 4] {
    u_of(&f_basic(&x_of(u), k))
}

/// `∇ʳΦ_{k+1}` computed from the explicit polynomial form of Φ_{k+1}; this is
/// the normalization in which `φ₁ = 2u`.
pub fn phi_basic_display(u: &Vec4, k: u32) -> Vec4 {
    let (_, j) = crate::dual::gradient(|w| phi_display(w, k + 1), u);
    [j[3], j[2], j[1], j[0]]
}

/// φ₆ in x-coordinates: `2(9F₂F₃ − 10F₅)f₁ − 2(F₂² − 5F₄)f₂ + 20F₃f₃ + 15F₂f₄`.
pub fn phi6_x<T: Scalar>(x: &[T; 5]) -> [T; 5] {
    let [f2, f3, f4, f5] = [2, 3, 4, 5].map(|k| power_sum(x, k));
    let c = |a: f64| T::cst(re(a));
    let w1 = c(2.0) * (c(9.0) * f2 * f3 - c(10.0) * f5);
    let w2 = c(-2.0) * (f2 * f2 - c(5.0) * f4);
    let w3 = c(20.0) * f3;
    let w4 = c(15.0) * f2;
    combine(x, [w1, w2, w3, w4])
}

/// `Σ w_k f_k(x)`, sharing the powers of x.
fn combine<T: Scalar>(x: &[T; 5], w: [T; 4]) -> [T; 5] {
    let mut pw = [[T::zero(); 5]; 4];
    let mut sums = [T::zero(); 4];
    for i in 0..5 {
        let mut p = x[i];
        for k in 0..4 {
            pw[k][i] = p;
            sums[k] += p;
            p = p * x[i];
        }
    }
    let mut out = [T::zero(); 5];
    for i in 0..5 {
        for k in 0..4 {
            out[i] += w[k] * (sums[k] - pw[k][i].scale(re(5.0)));
        }
    }
    out
}

/// φ₆ in u-coordinates through the invariant combination.
pub fn phi6_u<T: Scalar>(u: &[T; 4]) -> [T; 4] {
    u_of(&phi6_x(&x_of(u)))
}

fn eval_monomials<T: Scalar>(terms: &[(f64, [u8; 4])], u: &[T; 4]) -> T {
    let mut s = T::zero();
    for &(c, e) in terms {
        let mut m = T::cst(re(c));
        for i in 0..4 {
            if e[i] > 0 {
                m = m * u[i].powu(e[i] as u32);
            }
        }
        s += m;
    }
    s
}

/// φ₆ from its explicit sextic display in u. Equal to `phi6_u / (2√5)`.
pub fn phi6_display<T: Scalar>(u: &[T; 4]) -> [T; 4] {
    std::array::from_fn(|r| eval_monomials(PHI6_DISPLAY[r], u))
}

/// Ratio between the invariant-combination and explicit forms of φ₆.
pub fn phi6_display_ratio() -> f64 {
    2.0 * 5f64.sqrt()
}

/// The degree-11 map whose restriction to 10-lines is z ↦ −1/z²; it blows up
/// the 5-points and collapses the whole quadric.
pub fn h11_x<T: Scalar>(x: &[T; 5]) -> [T; 5] {
    let [f2, f3, f4, f5] = [2, 3, 4, 5].map(|k| power_sum(x, k));
    let c = |a: f64| T::cst(re(a));
    let w1 = c(-21.0) * f2.powu(5) + c(56.0) * f2 * f2 * f3 * f3 + c(66.0) * f2.powu(3) * f4 + c(48.0) * f3 * f3 * f4
        - c(48.0) * f2 * f4 * f4
        - c(96.0) * f2 * f3 * f5;
    let w2 = c(-24.0) * (c(4.0) * f3.powu(3) - c(9.0) * f2 * f3 * f4 + c(3.0) * f2 * f2 * f5);
    let w3 = c(12.0) * (c(5.0) * f2.powu(4) + c(8.0) * f2 * f3 * f3 - c(10.0) * f2 * f2 * f4);
    let w4 = c(-96.0) * f2 * f2 * f3;
    combine(x, [w1, w2, w3, w4])
}

/// Indices of the thirteen free coefficients α₁..α₂₀ of the ruling-preserving
/// family (the others are fixed).
pub const G11_ALPHA_INDICES: [usize; 13] = [1, 2, 3, 5, 6, 8, 10, 11, 13, 14, 15, 18, 20];

/// Free parameters of g₁₁, in the order of [`G11_ALPHA_INDICES`]. Every
/// parameter multiplies a term divisible by F₂, so none of them matters on Q.
pub type G11Alphas = [C; 13];

pub fn g11_x<T: Scalar>(x: &[T; 5], alphas: &G11Alphas) -> [T; 5] {
    let [f2, f3, f4, f5] = [2, 3, 4, 5].map(|k| power_sum(x, k));
    let c = |a: f64| T::cst(re(a));
    let a = |i: usize| {
        let pos = G11_ALPHA_INDICES.iter().position(|&j| j == i).expect("fixed coefficient");
        T::cst(alphas[pos] * 16.0)
    };
    let w1 = c(4.0)
        * (a(1) * f2.powu(5)
            + a(2) * f2 * f2 * f3 * f3
            + a(3) * f2.powu(3) * f4
            + c(67.0) * f3 * f3 * f4
            + a(5) * f2 * f4 * f4
            + a(6) * f2 * f3 * f5
            + c(45.0) * f5 * f5);
    let w2 = c(4.0)
        * (a(8) * f2.powu(3) * f3 + c(16.0) * f3.powu(3) + a(10) * f2 * f3 * f4 + a(11) * f2 * f2 * f5
            - c(135.0) * f4 * f5);
    let w3 = c(4.0) * (a(13) * f2.powu(4) + a(14) * f2 * f3 * f3 + a(15) * f2 * f2 * f4)
        + c(405.0) * f4 * f4
        - c(720.0) * f3 * f5;
    let w4 = c(4.0) * (a(18) * f2 * f2 * f3 - c(225.0) * f3 * f4 + a(20) * f2 * f5);
    combine(x, [w1, w2, w3, w4])
}

/// The octahedral quadric 5-map `F₄f₁ − 2F₃f₂`. It preserves Q, and
/// `−½F₃²(2F₃f₂ − F₄f₁)` is the degree-11 map that collapses onto it there.
pub fn oct5_x<T: Scalar>(x: &[T; 5]) -> [T; 5] {
    let f3 = power_sum(x, 3);
    let f4 = power_sum(x, 4);
    let z = T::zero();
    combine(x, [f4, f3.scale(re(-2.0)), z, z])
}

/// The equivariant maps that can be iterated on CP³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EquivariantMap {
    /// `φ_k = H f_k`, k = 1..4.
    Basic(u32),
    Phi6,
    H11,
    G11(G11Alphas),
    Oct5,
}

impl EquivariantMap {
    pub fn g11_default() -> Self {
        EquivariantMap::G11([ZERO; 13])
    }

    pub fn name(&self) -> String {
        match self {
            EquivariantMap::Basic(k) => format!("phi{k}"),
            EquivariantMap::Phi6 => "phi6".into(),
            EquivariantMap::H11 => "h11".into(),
            EquivariantMap::G11(_) => "g11".into(),
            EquivariantMap::Oct5 => "oct5".into(),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "phi1" => EquivariantMap::Basic(1),
            "phi2" => EquivariantMap::Basic(2),
            "phi3" => EquivariantMap::Basic(3),
            "phi4" => EquivariantMap::Basic(4),
            "phi6" | "f6" => EquivariantMap::Phi6,
            "h11" => EquivariantMap::H11,
            "g11" => EquivariantMap::g11_default(),
            "oct5" => EquivariantMap::Oct5,
            _ => return Err(Error::UnknownName(name.into())),
        })
    }

    pub fn degree(&self) -> u32 {
        match self {
            EquivariantMap::Basic(k) => *k,
            EquivariantMap::Phi6 => 6,
            EquivariantMap::H11 | EquivariantMap::G11(_) => 11,
            EquivariantMap::Oct5 => 5,
        }
    }

    pub fn eval_x<T: Scalar>(&self, x: &[T; 5]) -> [T; 5] {
        match self {
            EquivariantMap::Basic(k) => f_basic(x, *k),
            EquivariantMap::Phi6 => phi6_x(x),
            EquivariantMap::H11 => h11_x(x),
            EquivariantMap::G11(a) => g11_x(x, a),
            EquivariantMap::Oct5 => oct5_x(x),
        }
    }

    /// Raw homogeneous evaluation in u-coordinates (no normalization).
    pub fn eval_u<T: Scalar>(&self, u: &[T; 4]) -> [T; 4] {
        u_of(&self.eval_x(&x_of(u)))
    }

    /// Projective application: normalizes the input, evaluates and normalizes
    /// the image; fails where the map is undefined.
    pub fn apply(&self, u: &Vec4) -> Result<Vec4> {
        let n = normalize(u)?;
        let img = self.eval_u(&n);
        if norm(&img) < ZERO_TOL || img.iter().any(|z| !z.is_finite()) {
            return Err(Error::Indeterminate);
        }
        normalize(&img)
    }

    /// `‖f(p)‖/‖p‖^deg`; near zero at blown-up points.
    pub fn blowup_ratio(&self, u: &Vec4) -> f64 {
        norm(&self.eval_u(u)) / norm(u).powi(self.degree() as i32)
    }

    /// Value and u-Jacobian (row i holds the partials of output i).
    pub fn jacobian_u(&self, u: &Vec4) -> (Vec4, Mat4) {
        jacobian(|w: &[Dual4; 4]| self.eval_u(w), u)
    }
}

/// Homogeneous coordinates of the a-line and b-line through a point of Q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RulingCoords {
    pub a: [C; 2],
    pub b: [C; 2],
}

/// `U = [[u₁, −u₂], [u₃, u₄]]`; Φ₂ = 2 det U.
pub fn ruling_matrix(u: &Vec4) -> [[C; 2]; 2] {
    [[u[0], -u[1]], [u[2], u[3]]]
}

/// Kernels `aᵀU = 0` and `Ub = 0` of the rank-one matrix U at a quadric point.
pub fn ruling_coords(u: &Vec4) -> Result<RulingCoords> {
    let n = norm(u);
    if n < ZERO_TOL {
        return Err(Error::ZeroVector);
    }
    let m = ruling_matrix(u);
    if (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm() * 2.0 / (n * n) >= NEAR_ZERO {
        return Err(Error::NotOnQuadric);
    }
    let pick = |p: [C; 2], q: [C; 2]| if norm(&p) >= norm(&q) { p } else { q };
    // left kernel from either column, right kernel from either row
    let a = pick([m[1][0], -m[0][0]], [m[1][1], -m[0][1]]);
    let b = pick([m[0][1], -m[0][0]], [m[1][1], -m[1][0]]);
    if norm(&a) < ZERO_TOL || norm(&b) < ZERO_TOL {
        return Err(Error::RankZero);
    }
    Ok(RulingCoords { a, b })
}

/// The quadric point on the a-line `a` and the b-line `b`: `U = c dᵀ` with
/// `aᵀc = 0` and `dᵀb = 0`.
pub fn point_from_rulings(a: [C; 2], b: [C; 2]) -> Vec4 {
    [a[1] * b[1], a[1] * b[0], -(a[0] * b[1]), a[0] * b[0]]
}

/// Points of the a-line `a` (as `b` varies) or the b-line `b` (as `a` varies)
/// are linear in the free ruling coordinate; this returns the two spanning points.
pub fn ruling_line(fixed: [C; 2], is_a: bool) -> [Vec4; 2] {
    let e = [[ONE, ZERO], [ZERO, ONE]];
    if is_a {
        e.map(|b| point_from_rulings(fixed, b))
    } else {
        e.map(|a| point_from_rulings(a, fixed))
    }
}
