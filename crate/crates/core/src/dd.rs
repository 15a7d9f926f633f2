//! Double-double arithmetic, real and complex, for evaluations whose
//! cancellation would otherwise sit above the tolerances we iterate to.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::dual::Scalar;
use crate::geometry::C;

/// `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd(pub f64, pub f64);

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd(s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd(p, a.mul_add(b, -p))
}

impl Dd {
    pub fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.0, o.0);
        let e = two_sum(self.1, o.1);
        let t = two_sum(s.0, s.1 + e.0);
        two_sum(t.0, t.1 + e.1)
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.0, o.0);
        let t = p.1 + self.0 * o.1 + self.1 * o.0;
        two_sum(p.0, t)
    }

    pub fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }

    pub fn to_f64(self) -> f64 {
        self.0 + self.1
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cdd(pub Dd, pub Dd);

impl Cdd {
    pub fn from_c(z: C) -> Self {
        Cdd(Dd(z.re, 0.0), Dd(z.im, 0.0))
    }

    pub fn to_c(self) -> C {
        C::new(self.0.to_f64(), self.1.to_f64())
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd(self.0.add(o.0), self.1.add(o.1))
    }
}

impl AddAssign for Cdd {
    fn add_assign(&mut self, o: Cdd) {
        *self = *self + o;
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd(self.0.neg(), self.1.neg())
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        self + (-o)
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd(self.0.mul(o.0).add(self.1.mul(o.1).neg()), self.0.mul(o.1).add(self.1.mul(o.0)))
    }
}

impl Scalar for Cdd {
    fn cst(c: C) -> Self {
        Cdd::from_c(c)
    }
    fn scale(self, c: C) -> Self {
        self * Cdd::from_c(c)
    }
    fn value(self) -> C {
        self.to_c()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_bits() {
        let a = Cdd::from_c(C::new(1.0, 0.0));
        let e = Cdd::from_c(C::new(1e-20, 0.0));
        let s = (a + e) - a;
        assert_eq!(s.to_c(), C::new(1e-20, 0.0));
        let sq = Cdd::from_c(C::new(1.0 + 2f64.powi(-30), 0.0));
        let d = sq * sq - Cdd::from_c(C::new(1.0 + 2f64.powi(-29), 0.0));
        assert_eq!(d.to_c().re, 2f64.powi(-60));
    }
}
