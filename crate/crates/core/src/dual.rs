//! Forward-mode dual numbers over `Complex64`, enough to differentiate the
//! polynomial evaluators exactly.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::geometry::{Mat4, Vec4, C};

/// Arithmetic shared by plain complex numbers and dual numbers.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> + AddAssign
{
    fn cst(c: C) -> Self;
    fn scale(self, c: C) -> Self;
    fn value(self) -> C;

    fn zero() -> Self {
        Self::cst(C::new(0.0, 0.0))
    }

    fn powu(self, k: u32) -> Self {
        let mut acc = Self::cst(C::new(1.0, 0.0));
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for C {
    fn cst(c: C) -> Self {
        c
    }
    fn scale(self, c: C) -> Self {
        self * c
    }
    fn value(self) -> C {
        self
    }
}

/// Value plus four partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual4 {
    pub v: C,
    pub d: Vec4,
}

impl Dual4 {
    pub fn var(v: C, i: usize) -> Self {
        let mut d = [C::new(0.0, 0.0); 4];
        d[i] = C::new(1.0, 0.0);
        Dual4 { v, d }
    }
}

impl Add for Dual4 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(o.d) {
            *a += b;
        }
        Dual4 { v: self.v + o.v, d }
    }
}

impl AddAssign for Dual4 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Dual4 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Dual4 {
    type Output = Self;
    fn neg(self) -> Self {
        Dual4 { v: -self.v, d: self.d.map(|x| -x) }
    }
}

impl Mul for Dual4 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut d = [C::new(0.0, 0.0); 4];
        for i in 0..4 {
            d[i] = self.v * o.d[i] + self.d[i] * o.v;
        }
        Dual4 { v: self.v * o.v, d }
    }
}

impl Scalar for Dual4 {
    fn cst(c: C) -> Self {
        Dual4 { v: c, d: [C::new(0.0, 0.0); 4] }
    }
    fn scale(self, c: C) -> Self {
        Dual4 { v: self.v * c, d: self.d.map(|x| x * c) }
    }
    fn value(self) -> C {
        self.v
    }
}

/// Value and Jacobian of a map C⁴ → C⁴; row i holds the partials of output i.
pub fn jacobian<F>(f: F, u: &Vec4) -> (Vec4, Mat4)
where
    F: Fn(&[Dual4; 4]) -> [Dual4; 4],
{
    let args = [0, 1, 2, 3].map(|i| Dual4::var(u[i], i));
    let out = f(&args);
    let mut m = Mat4::zero();
    for i in 0..4 {
        m.0[i] = out[i].d;
    }
    (out.map(|o| o.v), m)
}

/// Value and gradient of a scalar function on C⁴.
pub fn gradient<F>(f: F, u: &Vec4) -> (C, Vec4)
where
    F: Fn(&[Dual4; 4]) -> Dual4,
{
    let args = [0, 1, 2, 3].map(|i| Dual4::var(u[i], i));
    let out = f(&args);
    (out.v, out.d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let u = [C::new(1.0, 2.0), C::new(-0.5, 0.1), C::new(0.3, 0.0), C::new(0.0, 1.0)];
        let (v, g) = gradient(|w| w[0] * w[1] * w[1] + w[3].powu(3), &u);
        assert!((v - (u[0] * u[1] * u[1] + u[3] * u[3] * u[3])).norm() < 1e-14);
        assert!((g[0] - u[1] * u[1]).norm() < 1e-14);
        assert!((g[1] - u[0] * u[1] * 2.0).norm() < 1e-14);
        assert!(g[2].norm() == 0.0);
        assert!((g[3] - u[3] * u[3] * 3.0).norm() < 1e-14);
    }
}
