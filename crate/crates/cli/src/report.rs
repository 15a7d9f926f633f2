//! JSON shapes read and written by the CLI.

use quintic_flow::basins::AttractorStatistics;
use quintic_flow::solver::{Quintic, SolveReport};
use quintic_flow::C;
use serde::{Deserialize, Serialize};

pub type Pair = [f64; 2];

fn pair(z: C) -> Pair {
    [z.re, z.im]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveInput {
    /// `a₁..a₅` of the monic `x⁵ + a₁x⁴ + … + a₅`, each `[re, im]`.
    pub coefficients: Vec<Pair>,
}

impl SolveInput {
    pub fn quintic(&self) -> Result<Quintic, String> {
        let a: [Pair; 5] = self
            .coefficients
            .clone()
            .try_into()
            .map_err(|v: Vec<Pair>| format!("expected 5 coefficients, got {}", v.len()))?;
        Quintic::new(a.map(|[re, im]| C::new(re, im))).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Serialize)]
pub struct Reduction {
    pub k: [Pair; 3],
    pub lambda: Pair,
    pub shift: Pair,
    /// Row-major 2×2 matrix of the regularizing Möbius map, if one was used.
    pub mobius: Option<[[Pair; 2]; 2]>,
}

#[derive(Debug, Serialize)]
pub struct SolveOutput {
    pub roots: Vec<Pair>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
    pub restarts: usize,
    pub converged_point: Vec<Pair>,
    pub selected_root_raw: Pair,
    pub selection_residual: f64,
    pub regularized: bool,
    pub polish_flagged: bool,
    pub seed: u64,
    pub reduction: Reduction,
}

impl SolveOutput {
    pub fn new(r: &SolveReport, seed: u64) -> Self {
        let d = &r.reduction;
        SolveOutput {
            roots: r.roots.iter().map(|&z| pair(z)).collect(),
            residuals: r.residuals.to_vec(),
            iterations: r.iterations,
            restarts: r.restarts,
            converged_point: r.converged_point.iter().map(|&z| pair(z)).collect(),
            selected_root_raw: pair(r.selected_root_raw),
            selection_residual: r.selection_residual,
            regularized: r.regularized,
            polish_flagged: r.polish_flagged,
            seed,
            reduction: Reduction {
                k: [pair(d.k.k1), pair(d.k.k2), pair(d.k.k3)],
                lambda: pair(d.lambda),
                shift: pair(d.shift),
                mobius: d.mobius.map(|m| m.m.map(|row| row.map(pair))),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BasinStats {
    pub map: String,
    /// `[cx, cy, width, height]`.
    pub window: [f64; 4],
    pub resolution: [usize; 2],
    pub max_iter: usize,
    pub labels: Vec<String>,
    pub fractions: Vec<f64>,
    pub black_fraction: f64,
    pub mean_iterations: f64,
}

impl BasinStats {
    pub fn new(map: &str, window: [f64; 4], resolution: usize, max_iter: usize, s: &AttractorStatistics) -> Self {
        BasinStats {
            map: map.into(),
            window,
            resolution: [resolution, resolution],
            max_iter,
            labels: s.labels.clone(),
            fractions: s.fractions.clone(),
            black_fraction: s.black_fraction,
            mean_iterations: s.mean_iterations,
        }
    }
}
