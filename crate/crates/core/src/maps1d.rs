//! Rational maps of the Riemann sphere obtained by restricting equivariant
//! maps to invariant lines and conics, and the affine form of the octahedral
//! quadric map.

use crate::error::{Error, Result};
use crate::geometry::{chordal, cx, ChartValue, C, I, ONE, ZERO};
use crate::poly;

/// `z ↦ N(z)/D(z)` with ascending coefficients, evaluated homogeneously so
/// that ∞ is an ordinary point.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedMap1D {
    pub name: &'static str,
    pub formula: &'static str,
    pub num: Vec<C>,
    pub den: Vec<C>,
}

/// Points closer than this (chordal) are treated as one point of a cycle.
pub const CYCLE_TOL: f64 = 1e-9;

impl RestrictedMap1D {
    pub fn new(name: &'static str, formula: &'static str, num: Vec<C>, den: Vec<C>) -> Self {
        RestrictedMap1D { name, formula, num, den }
    }

    pub fn degree(&self) -> usize {
        self.num.len().max(self.den.len()) - 1
    }

    fn padded(&self) -> (Vec<C>, Vec<C>) {
        let d = self.degree();
        let mut n = self.num.clone();
        let mut m = self.den.clone();
        n.resize(d + 1, ZERO);
        m.resize(d + 1, ZERO);
        (n, m)
    }

    /// Homogeneous image of `[a : b]` (meaning z = a/b), scaled to unit max-norm.
    pub fn eval_h(&self, h: [C; 2]) -> [C; 2] {
        let d = self.degree();
        let (a, b) = (h[0], h[1]);
        let (n, m) = if a.norm() <= b.norm() {
            let z = a / b;
            (poly::horner(&self.num, z), poly::horner(&self.den, z))
        } else {
            // a^d Σ c_k w^{d−k}, w = b/a
            let w = b / a;
            let rev = |c: &[C]| {
                let mut acc = ZERO;
                for k in 0..=d {
                    acc = acc * w + c.get(k).copied().unwrap_or(ZERO);
                }
                acc
            };
            (rev(&self.num), rev(&self.den))
        };
        let s = n.norm().max(m.norm());
        if s == 0.0 || !s.is_finite() {
            return [n, m];
        }
        [n / s, m / s]
    }

    pub fn eval(&self, z: ChartValue) -> ChartValue {
        ChartValue::from_homogeneous(self.eval_h(z.homogeneous()))
    }

    /// Affine value; ∞ for poles.
    pub fn eval_finite(&self, z: C) -> ChartValue {
        self.eval(ChartValue::Finite(z))
    }

    /// `d/dz (N/D)` at a finite non-pole point.
    pub fn derivative(&self, z: C) -> C {
        let (n, dn) = poly::horner_d(&self.num, z);
        let (m, dm) = poly::horner_d(&self.den, z);
        (dn * m - n * dm) / (m * m)
    }

    /// Critical points: zeros of the Wronskian `N'D − ND'`, with ∞ appended once
    /// for each unit its degree falls short of `2d − 2`.
    pub fn critical_points(&self) -> Vec<ChartValue> {
        let (n, m) = self.padded();
        let w = poly::sub(&poly::mul(&poly::derivative(&n), &m), &poly::mul(&n, &poly::derivative(&m)));
        let w = poly::trim(&w, 1e-14);
        let mut out: Vec<ChartValue> = poly::aberth(&w).into_iter().map(ChartValue::Finite).collect();
        let expected = 2 * self.degree() - 2;
        while out.len() < expected {
            out.push(ChartValue::Infinity);
        }
        out
    }

    /// Attracting cycles of period ≤ `max_period`, found as the limits of the
    /// critical orbits; each cycle is listed once.
    pub fn critical_limit_cycles(&self, max_period: usize) -> Vec<Vec<ChartValue>> {
        let mut cycles: Vec<Vec<[C; 2]>> = Vec::new();
        for c in self.critical_points() {
            let mut h = c.homogeneous();
            for _ in 0..400 {
                h = self.eval_h(h);
            }
            let mut orbit = vec![h];
            let mut period = None;
            for p in 1..=max_period {
                let next = self.eval_h(*orbit.last().unwrap());
                if chordal(&next, &orbit[0]) < CYCLE_TOL {
                    period = Some(p);
                    break;
                }
                orbit.push(next);
            }
            let Some(p) = period else { continue };
            orbit.truncate(p);
            let known = cycles.iter().any(|cy| cy.iter().any(|q| chordal(q, &orbit[0]) < 1e-7));
            if !known {
                cycles.push(orbit);
            }
        }
        cycles.into_iter().map(|cy| cy.into_iter().map(ChartValue::from_homogeneous).collect()).collect()
    }
}

pub const RESTRICTED_MAP_NAMES: [&str; 9] =
    ["dodeca11", "h11_l10", "h11_l15", "h11_l30", "h11_m15", "conic11", "oct5_conic", "f6_l10", "f6_l15"];

fn reals(c: &[f64]) -> Vec<C> {
    c.iter().map(|&x| cx(x, 0.0)).collect()
}

/// The registry of restricted maps, with the coefficients exactly as displayed.
pub fn restricted_map(name: &str) -> Result<RestrictedMap1D> {
    let s5 = 5f64.sqrt();
    Ok(match name {
        "dodeca11" => RestrictedMap1D::new(
            "dodeca11",
            "z(-z^10+66z^5+11)/(11z^10-66z^5-1)",
            reals(&[0.0, 11.0, 0.0, 0.0, 0.0, 0.0, 66.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
            reals(&[-1.0, 0.0, 0.0, 0.0, 0.0, -66.0, 0.0, 0.0, 0.0, 0.0, 11.0]),
        ),
        "h11_l10" => RestrictedMap1D::new("h11_l10", "-1/z^2", reals(&[-1.0]), reals(&[0.0, 0.0, 1.0])),
        "h11_l15" => RestrictedMap1D::new(
            "h11_l15",
            "(19z^2-9)/(z^2(9z^2-19))",
            reals(&[-9.0, 0.0, 19.0]),
            reals(&[0.0, 0.0, -19.0, 0.0, 9.0]),
        ),
        "h11_l30" => RestrictedMap1D::new(
            "h11_l30",
            "-(11z^2+9)/(z^2(9z^2+11))",
            reals(&[-9.0, 0.0, -11.0]),
            reals(&[0.0, 0.0, 11.0, 0.0, 9.0]),
        ),
        "h11_m15" => RestrictedMap1D::new(
            "h11_m15",
            "z(z^2+6)/(6z^2+1)",
            reals(&[0.0, 6.0, 0.0, 1.0]),
            reals(&[1.0, 0.0, 6.0]),
        ),
        "conic11" => RestrictedMap1D::new(
            "conic11",
            "(7sqrt5 z^3+5i)/(z^2(5i z^3+7sqrt5))",
            vec![I * 5.0, ZERO, ZERO, cx(7.0 * s5, 0.0)],
            vec![ZERO, ZERO, cx(7.0 * s5, 0.0), ZERO, ZERO, I * 5.0],
        ),
        "oct5_conic" => RestrictedMap1D::new(
            "oct5_conic",
            "(5z-z^5)/(5z^4-1)",
            reals(&[0.0, 5.0, 0.0, 0.0, 0.0, -1.0]),
            reals(&[-1.0, 0.0, 0.0, 0.0, 5.0]),
        ),
        "f6_l10" => RestrictedMap1D::new("f6_l10", "z^4", reals(&[0.0, 0.0, 0.0, 0.0, 1.0]), vec![ONE]),
        "f6_l15" => RestrictedMap1D::new(
            "f6_l15",
            "48z^5/(-3-z^2+35z^4+17z^6)",
            reals(&[0.0, 0.0, 0.0, 0.0, 0.0, 48.0]),
            reals(&[-3.0, 0.0, -1.0, 0.0, 35.0, 0.0, 17.0]),
        ),
        _ => return Err(Error::UnknownName(name.into())),
    })
}

/// The octahedral quadric map in affine coordinates `(x, y) = (u₂/u₁, u₃/u₁)`
/// on Q, as displayed:
/// `((x² + 3y − 2xy³)/(2x + 3x²y² − y³), (3x² + 2y + x³y²)/(1 + 2x³y − 3xy²))`.
pub fn quadric_affine_map(x: C, y: C) -> (C, C) {
    let a = (x * x + y * 3.0 - x * y * y * y * 2.0) / (x * 2.0 + x * x * y * y * 3.0 - y * y * y);
    let b = (x * x * 3.0 + y * 2.0 + x * x * x * y * y) / (ONE + x * x * x * y * 2.0 - x * y * y * 3.0);
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        for n in RESTRICTED_MAP_NAMES {
            assert_eq!(restricted_map(n).unwrap().name, n);
        }
        assert_eq!(restricted_map("nope"), Err(Error::UnknownName("nope".into())));
    }

    #[test]
    fn dodeca_fixes_origin_direction() {
        let m = restricted_map("dodeca11").unwrap();
        let h = m.eval_h([ONE, ZERO]);
        assert!(chordal(&h, &[ONE, ZERO]) < 1e-15);
    }

    #[test]
    fn h11_l15_swaps_zero_and_infinity() {
        let m = restricted_map("h11_l15").unwrap();
        assert_eq!(m.eval(ChartValue::Finite(ZERO)), ChartValue::Infinity);
        assert_eq!(m.eval(ChartValue::Infinity), ChartValue::Finite(ZERO));
    }

    #[test]
    fn z4_critical_points() {
        let m = restricted_map("f6_l10").unwrap();
        let cr = m.critical_points();
        assert_eq!(cr.len(), 6);
        assert_eq!(cr.iter().filter(|c| **c == ChartValue::Infinity).count(), 3);
    }
}
