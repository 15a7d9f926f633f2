//! The K-parametrized family: the change of coordinates τ_v, the reduced
//! invariants Φ_{kK}, the matrix T_K, the conjugated solver map φ_K and the
//! root selector J_K.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::equivariants::phi_basic;
use crate::error::{Error, Result};
use crate::geometry::{cx, norm, re, u_of, x_of, Mat4, Vec4, C, ONE, ZERO};
use crate::dd::Cdd;
use crate::dual::Scalar;
use crate::invariants::{k_values, psi10, InvariantValues, KPoint};
use crate::tables::{
    GAMMAK_SCALE, GAMMAK_TABLE, PHI2K_SCALE, PHI2K_TABLE, PHI3K_SCALE, PHI3K_TABLE, TK_POLY, TK_PREFACTOR,
};

/// The parameters `(K₁, K₂, K₃)`.
pub type KParams = KPoint;

impl KPoint {
    pub fn new(k1: C, k2: C, k3: C) -> Self {
        KPoint { k1, k2, k3 }
    }

    fn mono(&self, e: [u8; 3]) -> C {
        self.k1.powu(e[0] as u32) * self.k2.powu(e[1] as u32) * self.k3.powu(e[2] as u32)
    }

    fn poly(&self, terms: &[(f64, [u8; 3])]) -> C {
        terms.iter().map(|&(c, e)| self.mono(e) * c).sum()
    }

    /// `t_K`, the degree-48 invariant `|τ_v|²/Φ₂²⁴` in K. The expanded
    /// polynomial cancels badly near `Ψ₁₀ = 0`, so it is summed in
    /// double-double arithmetic.
    pub fn t_k(&self) -> C {
        let k = [self.k1, self.k2, self.k3].map(Cdd::from_c);
        let sum = TK_POLY.iter().fold(Cdd::zero(), |acc, &(c, e)| {
            acc + (k[0].powu(e[0] as u32) * k[1].powu(e[1] as u32) * k[2].powu(e[2] as u32)).scale(re(c))
        });
        self.mono([2, 2, 2]) * TK_PREFACTOR * sum.to_c()
    }

    /// `T_K = τ_vʳτ_v/Φ₂(v)⁶`.
    pub fn t_matrix(&self) -> Mat4 {
        let (k1, k2, k3) = (self.k1, self.k2, self.k3);
        let a = k2 * k3 * k3 * 240.0;
        let b = k1 * k2 * k3 * 240.0;
        let c = k1 * (k1 * 66.0 + k2 * 40.0 - 15.0) * 2.0;
        let d = k2 * (k1 * 46.0 + k3 * 84.0 - 35.0) * 2.0;
        let e = k1 * 60.0 + k1 * k1 * 12.0 + k2 * k3 * 128.0 - 15.0;
        let f = k1 * k2 * (k3 * 5.0 - 1.0) * 48.0;
        let g = k2 * (k1 * 90.0 + k2 * 16.0 - 15.0) * 2.0;
        let h = k1 * k1 * (k1 * 5.0 - 1.0) * 48.0;
        Mat4([[a, c, d, e], [b, f, g, d], [b, h, f, c], [a, b, b, a]]).scaled(re(5.0 / 48.0))
    }
}

/// `τ_v`, whose ℓ-th column is `Φ_{6−ℓ}(v)·φ_ℓ(v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauMatrix {
    pub matrix: Mat4,
    pub v: Vec4,
}

/// Relative size below which an invariant at v counts as vanishing.
pub const TAU_SINGULAR_TOL: f64 = 1e-10;

pub fn tau(v: &Vec4) -> Result<TauMatrix> {
    let n = norm(v);
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    let inv = InvariantValues::at(v);
    let small = |z: C, deg: i32| z.norm() / n.powi(deg) < TAU_SINGULAR_TOL;
    if small(inv.phi2, 2) || small(inv.phi3, 3) || small(inv.phi4, 4) || small(inv.phi5, 5) || small(psi10(v), 10) {
        return Err(Error::SingularTau);
    }
    let cols = [1u32, 2, 3, 4].map(|l| {
        let c = inv.get(6 - l);
        phi_basic(v, l).map(|z| z * c)
    });
    Ok(TauMatrix { matrix: Mat4::from_cols(cols), v: *v })
}

/// Symmetric coefficient tables in w for one value of K.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPolys {
    pub k: KParams,
    /// `Φ₂K(w) = wᵀ A w`.
    pub phi2k: [[C; 4]; 4],
    /// `Φ₃K(w) = Σ A_ijk w_i w_j w_k`.
    pub phi3k: [[[C; 4]; 4]; 4],
    /// `Γ_K(w) = wᵀ A w`.
    pub gammak: [[C; 4]; 4],
    pub tk: C,
    pub tk_matrix: Mat4,
    pub tk_inv: Mat4,
}

/// `Φ₄K`/`Φ₅K` with their w-gradients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueGrad {
    pub value: C,
    pub gradient: Vec4,
}

/// Everything φ_K needs at one point w.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KInvariants {
    pub phi2: ValueGrad,
    pub phi3: ValueGrad,
    pub phi4: ValueGrad,
    pub phi5: ValueGrad,
}

fn sym2(table: &[([u8; 4], &[(f64, [u8; 3])])], k: &KParams, scale: C) -> [[C; 4]; 4] {
    let mut a = [[ZERO; 4]; 4];
    for (e, terms) in table {
        let c = k.poly(terms) * scale;
        let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            a[i][i] += c;
        } else {
            a[i][j] += c / 2.0;
            a[j][i] += c / 2.0;
        }
    }
    a
}

fn sym3(table: &[([u8; 4], &[(f64, [u8; 3])])], k: &KParams, scale: C) -> [[[C; 4]; 4]; 4] {
    let mut a = [[[ZERO; 4]; 4]; 4];
    for (e, terms) in table {
        let c = k.poly(terms) * scale;
        let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let mut perms = Vec::new();
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let t = [idx[p[0]], idx[p[1]], idx[p[2]]];
            if !perms.contains(&t) {
                perms.push(t);
            }
        }
        let share = c / perms.len() as f64;
        for t in perms {
            a[t[0]][t[1]][t[2]] += share;
        }
    }
    a
}

/// Relative size of `det T_K` below which K is rejected.
pub const DEGENERATE_K_TOL: f64 = 1e-14;

impl ParamPolys {
    pub fn build(k: KParams) -> Result<Self> {
        if !(k.k1.is_finite() && k.k2.is_finite() && k.k3.is_finite()) {
            return Err(Error::DegenerateK);
        }
        let tk_matrix = k.t_matrix();
        let det = tk_matrix.det();
        let scale = tk_matrix.frobenius().powi(4);
        if !(det.norm() > DEGENERATE_K_TOL * scale) {
            return Err(Error::DegenerateK);
        }
        let tk_inv = tk_matrix.adjugate().scaled(ONE / det);
        Ok(ParamPolys {
            k,
            phi2k: sym2(PHI2K_TABLE, &k, re(PHI2K_SCALE)),
            phi3k: sym3(PHI3K_TABLE, &k, re(PHI3K_SCALE)),
            gammak: sym2(GAMMAK_TABLE, &k, re(GAMMAK_SCALE * 5f64.sqrt())),
            tk: k.t_k(),
            tk_matrix,
            tk_inv,
        })
    }

    pub fn phi2k(&self, w: &Vec4) -> C {
        quad(&self.phi2k, w)
    }

    pub fn phi3k(&self, w: &Vec4) -> C {
        let mut s = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    s += self.phi3k[i][j][k] * w[i] * w[j] * w[k];
                }
            }
        }
        s
    }

    pub fn gamma_k(&self, w: &Vec4) -> C {
        quad(&self.gammak, w)
    }

    /// Φ₂K..Φ₅K and their gradients at w. Φ₄K and Φ₅K come from the Hessian
    /// and bordered Hessian of Φ₃K, differentiated by the adjugate-trace rule.
    pub fn invariants(&self, w: &Vec4) -> KInvariants {
        let g = self.invariants_in::<C>(w);
        let vg = |(value, gradient): (C, Vec4)| ValueGrad { value, gradient };
        KInvariants { phi2: vg(g[0]), phi3: vg(g[1]), phi4: vg(g[2]), phi5: vg(g[3]) }
    }

    /// As [`ParamPolys::invariants`], evaluated in double-double arithmetic.
    pub fn invariants_precise(&self, w: &Vec4) -> KInvariants {
        let g = self.invariants_in::<Cdd>(w);
        let vg = |(value, gradient): (Cdd, [Cdd; 4])| ValueGrad { value: value.value(), gradient: gradient.map(|z| z.value()) };
        KInvariants { phi2: vg(g[0]), phi3: vg(g[1]), phi4: vg(g[2]), phi5: vg(g[3]) }
    }

    /// The same computation in any scalar type; determinants are expanded by
    /// cofactors so no division or pivoting is needed.
    fn invariants_in<T: Scalar>(&self, w: &Vec4) -> [(T, [T; 4]); 4] {
        let w = w.map(T::cst);
        let a2 = self.phi2k.map(|r| r.map(T::cst));
        let a3 = self.phi3k.map(|m| m.map(|r| r.map(T::cst)));
        let dot = |a: &[T; 4], b: &[T; 4]| (0..4).fold(T::zero(), |acc, i| acc + a[i] * b[i]);
        let g2: [T; 4] = std::array::from_fn(|i| dot(&a2[i], &w).scale(re(2.0)));
        let p2 = dot(&g2, &w).scale(re(0.5));
        // the Hessian of Φ₃K is 6·A(w, ·, ·)
        let h: [[T; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| dot(&a3[i][j], &w).scale(re(6.0))));
        let g3: [T; 4] = std::array::from_fn(|i| dot(&h[i], &w).scale(re(0.5)));
        let p3 = dot(&g3, &w).scale(re(1.0 / 3.0));

        let adj_h = adjugate4_in(&h);
        let det_h = (0..4).fold(T::zero(), |acc, j| acc + h[0][j] * adj_h[j][0]);
        let mut b = [[T::zero(); 5]; 5];
        for i in 0..4 {
            b[i][..4].copy_from_slice(&h[i]);
            b[i][4] = g2[i];
            b[4][i] = g2[i];
        }
        let adj_b = adjugate5_in(&b);
        let det_b = (0..5).fold(T::zero(), |acc, j| acc + b[0][j] * adj_b[j][0]);
        let inv_tk = ONE / self.tk;
        let mut d_det_h = [T::zero(); 4];
        let mut d_det_b = [T::zero(); 4];
        for m in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let dh = a3[i][j][m].scale(re(6.0));
                    d_det_h[m] += adj_h[j][i] * dh;
                    d_det_b[m] += adj_b[j][i] * dh;
                }
                let dg = a2[i][m].scale(re(2.0));
                d_det_b[m] += (adj_b[4][i] + adj_b[i][4]) * dg;
            }
        }
        let g4 = det_h.scale(inv_tk);
        let g5 = det_b.scale(inv_tk);
        let p4 = (p2 * p2).scale(re(0.5)) - g4.scale(re(5.0 / 324.0));
        let p5 = (p2 * p3).scale(re(720.0 / 864.0)) + g5.scale(re(1.0 / 864.0));
        let grad4 = std::array::from_fn(|m| p2 * g2[m] - d_det_h[m].scale(inv_tk * (5.0 / 324.0)));
        let grad5 = std::array::from_fn(|m| {
            (g2[m] * p3 + p2 * g3[m]).scale(re(720.0 / 864.0)) + d_det_b[m].scale(inv_tk / 864.0)
        });
        [(p2, g2), (p3, g3), (p4, grad4), (p5, grad5)]
    }

    pub fn phi45k_value_grad(&self, w: &Vec4) -> (ValueGrad, ValueGrad) {
        let k = self.invariants(w);
        (k.phi4, k.phi5)
    }

    /// The degree-6 map φ_K, conjugate to φ₆ through τ_v:
    /// `φ₆(τ_v w) = Φ₂(v)¹⁵ τ_v φ_K(w)`.
    pub fn phi_k(&self, w: &Vec4) -> Vec4 {
        self.phi_k_in::<C>(w)
    }

    /// φ_K evaluated in double-double arithmetic. Near a fixed point the
    /// plain evaluation stalls at a noise floor of roughly `cond(T_K)·ε`.
    pub fn phi_k_precise(&self, w: &Vec4) -> Vec4 {
        self.phi_k_in::<Cdd>(w)
    }

    fn phi_k_in<T: Scalar>(&self, w: &Vec4) -> Vec4 {
        let [(p2, g2), (p3, g3), (p4, g4), (p5, g5)] = self.invariants_in::<T>(w);
        // φ_ℓ = −5/(ℓ+1)·∇ʳΦ_{ℓ+1}
        let c1 = (p2 * p3).scale(re(9.0)) - p5.scale(re(10.0));
        let c1 = c1.scale(re(-5.0));
        let c2 = (p2 * p2 - p4.scale(re(5.0))).scale(re(10.0 / 3.0));
        let c3 = p3.scale(re(-25.0));
        let c4 = p2.scale(re(-15.0));
        let rhs: [T; 4] = std::array::from_fn(|i| {
            let r = 3 - i;
            c1 * g2[r] + c2 * g3[r] + c3 * g4[r] + c4 * g5[r]
        });
        let inv = self.tk_inv.0;
        std::array::from_fn(|i| (0..4).fold(T::zero(), |acc, j| acc + rhs[j].scale(inv[i][j])).value())
    }

    /// `J_K(w) = Γ_K(w)/(15Φ₂K(w))`, a degree-0 function.
    pub fn root_selector(&self, w: &Vec4) -> Result<C> {
        let p2 = self.phi2k(w);
        let n = norm(w);
        if p2.norm() / (n * n) < crate::invariants::NEAR_ZERO * self.phi2_scale() {
            return Err(Error::OnQuadricK);
        }
        Ok(self.gamma_k(w) / (p2 * 15.0))
    }

    fn phi2_scale(&self) -> f64 {
        self.phi2k.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn minor<T: Scalar, const N: usize, const M: usize>(a: &[[T; N]; N], row: usize, col: usize) -> [[T; M]; M] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i + (i >= row) as usize][j + (j >= col) as usize]))
}

fn det3_in<T: Scalar>(a: &[[T; 3]; 3]) -> T {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn det4_in<T: Scalar>(a: &[[T; 4]; 4]) -> T {
    (0..4).fold(T::zero(), |acc, j| {
        let m = det3_in(&minor::<T, 4, 3>(a, 0, j));
        if j % 2 == 0 {
            acc + a[0][j] * m
        } else {
            acc - a[0][j] * m
        }
    })
}

fn signed<T: Scalar>(x: T, i: usize, j: usize) -> T {
    if (i + j) % 2 == 0 {
        x
    } else {
        -x
    }
}

/// `adj(A)[j][i] = (−1)^{i+j} M_ij`.
fn adjugate4_in<T: Scalar>(a: &[[T; 4]; 4]) -> [[T; 4]; 4] {
    std::array::from_fn(|j| std::array::from_fn(|i| signed(det3_in(&minor::<T, 4, 3>(a, i, j)), i, j)))
}

fn adjugate5_in<T: Scalar>(a: &[[T; 5]; 5]) -> [[T; 5]; 5] {
    std::array::from_fn(|j| std::array::from_fn(|i| signed(det4_in(&minor::<T, 5, 4>(a, i, j)), i, j)))
}

fn quad(a: &[[C; 4]; 4], w: &Vec4) -> C {
    let mut s = ZERO;
    for i in 0..4 {
        for j in 0..4 {
            s += a[i][j] * w[i] * w[j];
        }
    }
    s
}

/// `α = Φ₂(p⁵)/G₁(p⁵) = 1/15`, the normalization of the root selector.
pub const SELECTOR_ALPHA: f64 = 1.0 / 15.0;

/// The five linear forms `L_k(v) = −5x_k`.
pub fn l_forms(v: &Vec4) -> [C; 5] {
    x_of(v).map(|x| x * -5.0)
}

/// `S_k(v) = √5·Φ₂(v)L_k(v)/Φ₃(v)`, the five roots of `R_{K(v)}`.
pub fn s_values(v: &Vec4) -> [C; 5] {
    let inv = InvariantValues::at(v);
    let f = inv.phi2 / inv.phi3 * 5f64.sqrt();
    l_forms(v).map(|l| l * f)
}

/// The quadratic forms `Q_k(u) = 20x_k² − F₂`; `Q_k` vanishes at the 5-points
/// other than `p⁵_k`.
pub fn q_forms(u: &Vec4) -> [C; 5] {
    let x = x_of(u);
    let f2: C = x.iter().map(|z| z * z).sum();
    x.map(|z| z * z * 20.0 - f2)
}

/// The selector quadrics `G_k`, which coincide with `Q_k`.
pub fn g_forms(u: &Vec4) -> [C; 5] {
    q_forms(u)
}

/// `Γ_v(w) = √5·Σ G_k(τ_v w)L_k(v)`.
pub fn gamma_v(t: &TauMatrix, w: &Vec4) -> C {
    let g = g_forms(&t.matrix.apply(w));
    let l = l_forms(&t.v);
    (0..5).map(|k| g[k] * l[k]).sum::<C>() * 5f64.sqrt()
}

/// The five fixed points `τ_v⁻¹u(p⁵_ℓ)` of φ_{K(v)}, ℓ = 1..5.
pub fn conjugated_five_points(t: &TauMatrix) -> Result<[Vec4; 5]> {
    let inv = t.matrix.inverse().ok_or(Error::SingularTau)?;
    Ok(std::array::from_fn(|l| {
        let mut x = [ONE; 5];
        x[l] = re(-4.0);
        inv.apply(&u_of(&x))
    }))
}

/// Standard complex Gaussian vector in C⁴.
pub fn random_vec4<R: Rng + ?Sized>(rng: &mut R) -> Vec4 {
    std::array::from_fn(|_| cx(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Relative threshold used when drawing v for oracles.
pub const GENERIC_V_TOL: f64 = 1e-6;

/// A random v at which Φ₂..Φ₅ and Ψ₁₀ are all comfortably nonzero.
pub fn random_generic_v<R: Rng + ?Sized>(rng: &mut R) -> Vec4 {
    loop {
        let v = random_vec4(rng);
        let n = norm(&v);
        let inv = InvariantValues::at(&v);
        let ok = [(inv.phi2, 2), (inv.phi3, 3), (inv.phi4, 4), (inv.phi5, 5), (psi10(&v), 10)]
            .iter()
            .all(|&(z, d)| z.norm() / n.powi(d) > GENERIC_V_TOL);
        if ok {
            return v;
        }
    }
}

/// K(v) together with τ_v and ParamPolys, for a generic v.
pub fn family_at(v: &Vec4) -> Result<(KParams, TauMatrix, ParamPolys)> {
    let k = k_values(v)?;
    let t = tau(v)?;
    let pp = ParamPolys::build(k)?;
    Ok((k, t, pp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn t_matrix_det_matches_t_k() {
        let k = KParams::new(cx(0.3, 0.1), cx(-0.7, 0.4), cx(1.1, -0.2));
        let d = k.t_matrix().det();
        assert!((d - k.t_k()).norm() < 1e-10 * d.norm());
    }

    #[test]
    fn phi2k_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = random_generic_v(&mut rng);
        let (_, t, pp) = family_at(&v).unwrap();
        let w = random_vec4(&mut rng);
        let lhs = crate::invariants::phi(&t.matrix.apply(&w), 2);
        let rhs = crate::invariants::phi(&v, 2).powu(6) * pp.phi2k(&w);
        assert!((lhs - rhs).norm() < 1e-9 * lhs.norm());
    }

    #[test]
    fn alpha_normalization() {
        let mut x = [ONE; 5];
        x[0] = re(-4.0);
        let u = u_of(&x);
        let r = crate::invariants::phi(&u, 2) / g_forms(&u)[0];
        assert!((r - SELECTOR_ALPHA).norm() < 1e-14);
    }
}
