//! Conformance of the equivariant maps with the displayed one-variable maps:
//! restrict to an invariant line or conic (or act on a ruling family), chart it
//! with two special points at 0 and ∞, fit the one remaining chart scale from a
//! single sample and check the fit on fresh samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equivariants::{point_from_rulings, ruling_coords, EquivariantMap};
use crate::error::{Error, Result};
use crate::geometry::{chordal, u_of, x_of, ChartValue, ConicChart, LineChart, Vec5, C, ONE, ZERO};
use crate::maps1d::{restricted_map, RestrictedMap1D};
use crate::poly;
use crate::special::{line, point};

/// An invariant curve with a coordinate on it, or the family of a-rulings of
/// the quadric with coordinate `a₂/a₁`.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Line(LineChart<5>),
    Conic(ConicChart),
    /// Each a-ruling is represented by its point on the fixed b-ruling `b`.
    Ruling { b: [C; 2] },
}

impl Curve {
    pub fn eval(&self, z: ChartValue) -> Vec5 {
        match self {
            Curve::Line(c) => c.eval(z),
            Curve::Conic(c) => c.eval(z),
            Curve::Ruling { b } => {
                let a = match z {
                    ChartValue::Finite(z) => [ONE, z],
                    ChartValue::Infinity => [ZERO, ONE],
                };
                x_of(&point_from_rulings(a, *b))
            }
        }
    }

    /// Chart value of `p` and how far `p` is from the curve (chordally, or
    /// 1 off the quadric for rulings).
    pub fn project(&self, p: &Vec5) -> (ChartValue, f64) {
        let w = match self {
            Curve::Line(c) => c.invert(p),
            Curve::Conic(c) => c.invert(p),
            Curve::Ruling { .. } => {
                let Ok(r) = ruling_coords(&u_of(p)) else { return (ChartValue::Infinity, 1.0) };
                let [a1, a2] = r.a;
                let w = if a1.norm() <= 1e-14 * a2.norm() {
                    ChartValue::Infinity
                } else {
                    ChartValue::Finite(a2 / a1)
                };
                return (w, 0.0);
            }
        };
        (w, chordal(&self.eval(w), p))
    }
}

/// One displayed restriction: which map, on which curve, and the target.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    pub name: &'static str,
    pub map: EquivariantMap,
    pub curve: Curve,
    pub target: RestrictedMap1D,
    /// Compare against `−R` instead of `R`.
    pub negate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conformance {
    /// Chart scale `c` with `R̃(z) = R(cz)/c`.
    pub scale: C,
    /// Largest relative error over the check samples.
    pub max_rel_err: f64,
    pub samples: usize,
}

fn sample_z<R: Rng>(rng: &mut R) -> C {
    let r = rng.random_range(0.5..2.0);
    C::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

fn rel_err(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// `±R(cz)/c` at a finite point, `None` at a pole.
fn conjugated(r: &Restriction, c: C, z: C) -> Option<C> {
    let sign = if r.negate { -1.0 } else { 1.0 };
    r.target.eval_finite(c * z).finite().map(|w| w * sign / c)
}

/// Images further than this (chordally) from the curve mean it is not invariant.
pub const CURVE_INVARIANCE_TOL: f64 = 1e-8;

/// Fits the scale from the first sample and checks `samples` further points.
pub fn check_restriction(r: &Restriction, samples: usize, seed: u64) -> Result<Conformance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut off_curve: f64 = 0.0;
    let mut restricted = |z: C| -> Option<C> {
        let img = r.map.eval_x(&r.curve.eval(ChartValue::Finite(z)));
        let (w, res) = r.curve.project(&img);
        off_curve = off_curve.max(res);
        w.finite()
    };
    let mut first = None;
    for _ in 0..20 {
        let z = sample_z(&mut rng);
        if let Some(w) = restricted(z) {
            first = Some((z, w));
            break;
        }
    }
    let checks: Vec<(C, C)> = (0..samples)
        .filter_map(|_| {
            let z = sample_z(&mut rng);
            restricted(z).map(|w| (z, w))
        })
        .collect();
    if off_curve > CURVE_INVARIANCE_TOL {
        return Err(Error::CurveNotInvariant(off_curve));
    }
    let (z0, w0) = first.ok_or(Error::Degenerate)?;
    // ±w₀·c·D(cz₀) − N(cz₀) = 0, a polynomial in c
    let t = &r.target;
    let w0 = if r.negate { -w0 } else { w0 };
    let mut pc = vec![ZERO; t.num.len().max(t.den.len() + 1)];
    for (k, &n) in t.num.iter().enumerate() {
        pc[k] -= n * z0.powu(k as u32);
    }
    for (k, &d) in t.den.iter().enumerate() {
        pc[k + 1] += d * z0.powu(k as u32) * w0;
    }
    let mut best: Option<Conformance> = None;
    for c in poly::aberth(&pc) {
        if c.norm() < 1e-8 {
            continue;
        }
        let c = poly::newton(&pc, c, 5);
        let mut worst: f64 = 0.0;
        for &(z, w) in &checks {
            worst = worst.max(conjugated(r, c, z).map_or(f64::INFINITY, |v| rel_err(v, w)));
        }
        if best.is_none_or(|b| worst < b.max_rel_err) {
            best = Some(Conformance { scale: c, max_rel_err: worst, samples: checks.len() });
        }
    }
    best.ok_or(Error::Degenerate)
}

fn xp(desc: &str) -> Vec5 {
    point(desc).expect("table descriptor").x
}

fn on_line(desc: &str, a0: Vec5, ainf: Vec5) -> Curve {
    let l = line(desc).expect("table line");
    assert!(l.contains(&a0) && l.contains(&ainf), "anchors off {desc}");
    Curve::Line(LineChart::new(a0, ainf).expect("distinct anchors"))
}

/// The conic cut from the quadric by `x_i = x_j` (or `x_i = 0` when `j` is
/// `None`), anchored at `a` and `b`.
fn on_conic(i: usize, j: Option<usize>, a: Vec5, b: Vec5) -> Curve {
    let mut form = [ZERO; 5];
    form[i] = ONE;
    if let Some(j) = j {
        form[j] = -ONE;
    }
    Curve::Conic(ConicChart::on_quadric(a, b, &[form]))
}

fn cplx(v: [(f64, f64); 5]) -> Vec5 {
    v.map(|(a, b)| C::new(a, b))
}

fn real(v: [f64; 5]) -> Vec5 {
    v.map(|x| C::new(x, 0.0))
}

/// The displayed restrictions with the charts used to check them. Anchors are
/// special points, exchanged by the stabilizer of the curve where possible.
pub fn restrictions() -> Vec<Restriction> {
    let s5 = 5f64.sqrt();
    let s2 = 2f64.sqrt();
    let q20 = (xp("q20_12_1"), xp("q20_12_2"));
    let (a, b) = (-2.0 / 3.0, s5 / 3.0);
    let q30_l15 = (
        cplx([(1.0, 0.0), (1.0, 0.0), (a, b), (a, b), (a, -2.0 * b)]),
        cplx([(a, b), (a, b), (1.0, 0.0), (1.0, 0.0), (a, -2.0 * b)]),
    );
    let q60_l30 = (
        cplx([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (-1.0, s2), (-1.0, -s2)]),
        cplx([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (-1.0, -s2), (-1.0, s2)]),
    );
    let q30_m15 = (
        cplx([(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (0.0, 0.0)]),
        cplx([(1.0, 0.0), (-1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (0.0, 0.0)]),
    );
    let entry = |name: &'static str, map, curve, negate| Restriction {
        name,
        map,
        curve,
        target: restricted_map(name).expect("registry"),
        negate,
    };
    use EquivariantMap::*;
    vec![
        entry("f6_l10", Phi6, on_line("M1_10_123", xp("p5_4"), xp("p5_5")), false),
        entry(
            "f6_l15",
            Phi6,
            on_line("L1_15_12_34", real([1.0, 1.0, 1.0, 1.0, -4.0]), real([1.0, 1.0, -1.0, -1.0, 0.0])),
            false,
        ),
        entry("h11_l10", H11, on_line("L1_10_12", q20.0, q20.1), false),
        entry("h11_l15", H11, on_line("L1_15_12_34", q30_l15.0, q30_l15.1), false),
        entry("h11_l30", H11, on_line("L1_30_1_23", q60_l30.0, q60_l30.1), false),
        entry("h11_m15", H11, on_line("M1_15_12_34", q30_m15.0, q30_m15.1), false),
        entry("dodeca11", EquivariantMap::g11_default(), Curve::Ruling { b: [C::new(0.3, 0.7), C::new(-1.1, 0.2)] }, false),
        entry("conic11", Oct5, on_conic(0, Some(1), q20.0, q20.1), true),
        entry("oct5_conic", Oct5, on_conic(0, None, xp("q30_1_24_1"), xp("q30_1_24_2")), false),
    ]
}

pub fn restriction(name: &str) -> Result<Restriction> {
    restrictions().into_iter().find(|r| r.name == name).ok_or_else(|| Error::UnknownName(name.into()))
}

/// The restrictions named in the acceptance list.
pub const CORE_RESTRICTIONS: [&str; 3] = ["f6_l10", "f6_l15", "h11_l10"];

/// Relative tolerance for the acceptance checks.
pub const CONFORMANCE_TOL: f64 = 1e-7;
