//! Power-sum invariants Φ₂..Φ₅, the Hessian forms G₄/G₅, the anti-invariant
//! Ψ₁₀ and the quotient map to K = (K₁, K₂, K₃).

use crate::dual::Scalar;
use crate::geometry::{det_n, h_matrix, norm, re, x_of, Mat4, Vec4, C, ZERO};
use crate::error::{Error, Result};

/// Relative threshold `|Φ|/‖u‖^deg` below which a point is on the quadric/cubic.
pub const NEAR_ZERO: f64 = 1e-10;

/// `Ψ₁₀ = c·Π_{i<j}(x_i − x_j)` with `c = −125√5`, the scalar for which
/// `det τ_v = Φ₂Φ₃Φ₄Φ₅Ψ₁₀`.
pub fn psi10_scale() -> C {
    re(-125.0 * 5f64.sqrt())
}

pub fn power_sum<T: Scalar>(x: &[T; 5], k: u32) -> T {
    let mut s = T::zero();
    for &xi in x {
        s += xi.powu(k);
    }
    s
}

/// `Φ_k(u) = F_k(H̄ᵀu)` for k = 2..5.
pub fn phi(u: &Vec4, k: u32) -> C {
    power_sum(&x_of(u), k)
}

/// Φ₂..Φ₅ at once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantValues {
    pub phi2: C,
    pub phi3: C,
    pub phi4: C,
    pub phi5: C,
}

impl InvariantValues {
    pub fn at(u: &Vec4) -> Self {
        let x = x_of(u);
        InvariantValues {
            phi2: power_sum(&x, 2),
            phi3: power_sum(&x, 3),
            phi4: power_sum(&x, 4),
            phi5: power_sum(&x, 5),
        }
    }

    pub fn get(&self, k: u32) -> C {
        match k {
            2 => self.phi2,
            3 => self.phi3,
            4 => self.phi4,
            5 => self.phi5,
            _ => panic!("invariant degree {k} out of range 2..5"),
        }
    }
}

/// Φ₂..Φ₅ written directly as polynomials in u.
pub fn phi_display<T: Scalar>(u: &[T; 4], k: u32) -> T {
    let [u1, u2, u3, u4] = *u;
    let s5 = 5f64.sqrt();
    let k2 = |a: f64| T::cst(re(a));
    match k {
        2 => (u1 * u4 + u2 * u3).scale(re(2.0)),
        3 => (u1 * u2 * u2 + u1 * u1 * u3 + u3 * u3 * u4 + u2 * u4 * u4).scale(re(3.0 / s5)),
        4 => (k2(2.0) * u1.powu(3) * u2
            + k2(3.0) * u2 * u2 * u3 * u3
            + k2(2.0) * u1 * u3.powu(3)
            + k2(2.0) * u2.powu(3) * u4
            + k2(12.0) * u1 * u2 * u3 * u4
            + k2(3.0) * u1 * u1 * u4 * u4
            + k2(2.0) * u3 * u4.powu(3))
        .scale(re(0.4)),
        5 => (u1.powu(5)
            + u2.powu(5)
            + k2(20.0) * u1 * u2.powu(3) * u3
            + k2(30.0) * u1 * u1 * u2 * u3 * u3
            + u3.powu(5)
            + k2(30.0) * u1 * u1 * u2 * u2 * u4
            + k2(20.0) * u1.powu(3) * u3 * u4
            + k2(20.0) * u2 * u3.powu(3) * u4
            + k2(30.0) * u2 * u2 * u3 * u4 * u4
            + k2(30.0) * u1 * u3 * u3 * u4 * u4
            + k2(20.0) * u1 * u2 * u4.powu(3)
            + u4.powu(5))
        .scale(re(1.0 / (5.0 * s5))),
        _ => panic!("invariant degree {k} out of range 2..5"),
    }
}

/// `∇_u Φ_k = k·(H̄ᵀ)ᵀ x^{k−1}`.
pub fn grad_phi(u: &Vec4, k: u32) -> Vec4 {
    let h = h_matrix();
    let x = x_of(u);
    let kf = re(k as f64);
    std::array::from_fn(|r| (0..5).map(|c| x[c].powu(k - 1) * h[r][c].conj()).sum::<C>() * kf)
}

/// Reversed gradient `R∇Φ_k`.
pub fn rgrad_phi(u: &Vec4, k: u32) -> Vec4 {
    let g = grad_phi(u, k);
    [g[3], g[2], g[1], g[0]]
}

pub fn grad_phi2(u: &Vec4) -> Vec4 {
    [u[3] * 2.0, u[2] * 2.0, u[1] * 2.0, u[0] * 2.0]
}

/// Hessian of Φ₃, read off from its second-derivative table.
pub fn hessian_phi3(u: &Vec4) -> Mat4 {
    let [u1, u2, u3, u4] = *u;
    let s = re(6.0 / 5f64.sqrt());
    Mat4([[u3, u2, u1, ZERO], [u2, u1, ZERO, u4], [u1, ZERO, u4, u3], [ZERO, u4, u3, u2]]).scaled(s)
}

/// `G₄ = det Hess(Φ₃)`.
pub fn hessian_form_g4(u: &Vec4) -> C {
    hessian_phi3(u).det()
}

/// `G₅ = det [[Hess Φ₃, ∇Φ₂], [∇Φ₂ᵀ, 0]]`.
pub fn bordered_form_g5(u: &Vec4) -> C {
    let h = hessian_phi3(u);
    let g = grad_phi2(u);
    let mut b = [[ZERO; 5]; 5];
    for i in 0..4 {
        for j in 0..4 {
            b[i][j] = h.0[i][j];
        }
        b[i][4] = g[i];
        b[4][i] = g[i];
    }
    det_n(b)
}

/// Φ₄ recovered from G₄: `(162Φ₂² − 5G₄)/324`.
pub fn phi4_from_g4(phi2: C, g4: C) -> C {
    (phi2 * phi2 * 162.0 - g4 * 5.0) / 324.0
}

/// Φ₅ recovered from G₅: `(720Φ₂Φ₃ + G₅)/864`.
pub fn phi5_from_g5(phi2: C, phi3: C, g5: C) -> C {
    (phi2 * phi3 * 720.0 + g5) / 864.0
}

/// Product of the ten linear forms `x_i − x_j`, scaled by `psi10_scale()`.
pub fn psi10(u: &Vec4) -> C {
    let x = x_of(u);
    let mut p = psi10_scale();
    for i in 0..5 {
        for j in i + 1..5 {
            p *= x[i] - x[j];
        }
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KPoint {
    pub k1: C,
    pub k2: C,
    pub k3: C,
}

/// `K₁ = Φ₄/Φ₂², K₂ = Φ₃²/Φ₂³, K₃ = Φ₅/(Φ₂Φ₃)`.
pub fn k_values(u: &Vec4) -> Result<KPoint> {
    let n = norm(u);
    if n < crate::geometry::ZERO_TOL {
        return Err(Error::ZeroVector);
    }
    let inv = InvariantValues::at(u);
    if inv.phi2.norm() / n.powi(2) < NEAR_ZERO {
        return Err(Error::OnQuadric);
    }
    if inv.phi3.norm() / n.powi(3) < NEAR_ZERO {
        return Err(Error::OnCubic);
    }
    Ok(KPoint {
        k1: inv.phi4 / (inv.phi2 * inv.phi2),
        k2: inv.phi3 * inv.phi3 / (inv.phi2 * inv.phi2 * inv.phi2),
        k3: inv.phi5 / (inv.phi2 * inv.phi3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{cx, ONE};

    #[test]
    fn power_sums_by_hand() {
        let x = [ONE, -ONE, ZERO, ZERO, ZERO];
        assert_eq!(power_sum(&x, 2), re(2.0));
        assert_eq!(power_sum(&x, 3), ZERO);
        let w = crate::geometry::omega(3, 1);
        assert!(power_sum(&[ZERO, ZERO, ONE, w, w * w], 2).norm() < 1e-15);
    }

    #[test]
    fn phi2_display_values() {
        assert_eq!(phi_display(&[ONE, ZERO, ZERO, ZERO], 2), ZERO);
        assert_eq!(phi_display(&[ONE, ZERO, ZERO, ONE], 2), re(2.0));
    }

    #[test]
    fn hessian_table_matches_x_route() {
        let u = [cx(0.3, 1.0), cx(-0.7, 0.2), cx(1.1, -0.4), cx(0.05, 0.9)];
        let h = h_matrix();
        let x = x_of(&u);
        let hm = hessian_phi3(&u);
        for a in 0..4 {
            for b in 0..4 {
                let want: C = (0..5).map(|c| x[c] * h[a][c].conj() * h[b][c].conj()).sum::<C>() * 6.0;
                assert!((hm.0[a][b] - want).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn quadric_point_is_rejected() {
        let w = crate::geometry::omega(3, 1);
        let u = crate::geometry::u_of(&[ZERO, ZERO, ONE, w, w * w]);
        assert_eq!(k_values(&u), Err(Error::OnQuadric));
    }
}
