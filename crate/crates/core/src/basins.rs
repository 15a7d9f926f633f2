//! Basin-of-attraction portraits for the restricted 1-D maps and for the full
//! maps on real invariant planes, with statistics and symmetry checks.

use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::equivariants::EquivariantMap;
use crate::error::{Error, Result};
use crate::geometry::{chordal, norm, re, ChartValue, Vec5, C, ZERO};
use crate::maps1d::{restricted_map, RestrictedMap1D};

/// A rectangular window sampled at cell centres; row 0 is the top edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub center: (f64, f64),
    pub width: f64,
    pub height: f64,
    pub resolution: (usize, usize),
}

pub const DEFAULT_RESOLUTION: usize = 720;

impl GridSpec {
    pub fn new(center: (f64, f64), width: f64, height: f64, resolution: (usize, usize)) -> Result<Self> {
        let ok = width > 0.0 && height > 0.0 && resolution.0 > 0 && resolution.1 > 0;
        if !ok || !(center.0.is_finite() && center.1.is_finite()) {
            return Err(Error::Degenerate);
        }
        Ok(GridSpec { center, width, height, resolution })
    }

    /// A square window `[cx − r, cx + r] × [cy − r, cy + r]`.
    pub fn square(center: (f64, f64), half: f64, res: usize) -> Self {
        GridSpec { center, width: 2.0 * half, height: 2.0 * half, resolution: (res, res) }
    }

    pub fn cell_center(&self, col: usize, row: usize) -> (f64, f64) {
        let (nx, ny) = self.resolution;
        let x = self.center.0 - self.width / 2.0 + (col as f64 + 0.5) * self.width / nx as f64;
        let y = self.center.1 + self.height / 2.0 - (row as f64 + 0.5) * self.height / ny as f64;
        (x, y)
    }

    /// The cell containing `(x, y)`, if inside the window.
    pub fn cell_of(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let (nx, ny) = self.resolution;
        let fx = (x - (self.center.0 - self.width / 2.0)) / self.width * nx as f64;
        let fy = ((self.center.1 + self.height / 2.0) - y) / self.height * ny as f64;
        if fx < 0.0 || fy < 0.0 || fx >= nx as f64 || fy >= ny as f64 {
            return None;
        }
        Some((fx as usize, fy as usize))
    }
}

/// An attracting point or cycle, stored as unit projective vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Attractor<const N: usize> {
    pub label: String,
    pub points: Vec<[C; N]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttractorSet<const N: usize> {
    pub entries: Vec<Attractor<N>>,
    /// Chordal capture radius.
    pub radius: f64,
}

pub const DEFAULT_CAPTURE_RADIUS: f64 = 1e-4;

fn unit<const N: usize>(p: [C; N]) -> [C; N] {
    let n = norm(&p);
    p.map(|z| z / n)
}

impl<const N: usize> AttractorSet<N> {
    /// Fails if two listed points sit within three capture radii of each other.
    pub fn new(entries: Vec<Attractor<N>>, radius: f64) -> Result<Self> {
        let entries: Vec<_> = entries
            .into_iter()
            .map(|a| Attractor { label: a.label, points: a.points.into_iter().map(unit).collect() })
            .collect();
        let all: Vec<&[C; N]> = entries.iter().flat_map(|a| a.points.iter()).collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if !(chordal(all[i], all[j]) > 3.0 * radius) {
                    return Err(Error::Degenerate);
                }
            }
        }
        Ok(AttractorSet { entries, radius })
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|a| a.label.clone()).collect()
    }

    fn nearest(&self, p: &[C; N]) -> Option<usize> {
        self.entries
            .iter()
            .position(|a| a.points.iter().any(|q| chordal(p, q) < self.radius))
    }
}

/// The attracting cycles of a restricted map, found from its critical orbits.
pub fn attractors_1d(map: &RestrictedMap1D, max_period: usize) -> Result<AttractorSet<2>> {
    let cycles = map.critical_limit_cycles(max_period);
    let entries = cycles
        .into_iter()
        .map(|cy| Attractor { label: cycle_label(&cy), points: cy.into_iter().map(|z| z.homogeneous()).collect() })
        .collect();
    AttractorSet::new(entries, DEFAULT_CAPTURE_RADIUS)
}

fn cycle_label(cy: &[ChartValue]) -> String {
    let parts: Vec<String> = cy
        .iter()
        .map(|z| match z {
            ChartValue::Infinity => "inf".into(),
            ChartValue::Finite(z) => format!("{:.4}{:+.4}i", z.re, z.im),
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Outcome for one cell: attractor index (`-1` unresolved) and the iteration
/// at which capture was confirmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Portrait {
    pub grid: GridSpec,
    pub labels: Vec<String>,
    pub index: Vec<i32>,
    pub iterations: Vec<u16>,
    pub max_iter: usize,
}

impl Portrait {
    pub fn at(&self, col: usize, row: usize) -> i32 {
        self.index[row * self.grid.resolution.0 + col]
    }
}

/// Follows an orbit for at most `max_iter` steps. A capture counts once two
/// consecutive iterates lie within the radius of the same attractor.
pub fn classify<const N: usize>(
    start: [C; N],
    step: impl Fn(&[C; N]) -> Option<[C; N]>,
    attractors: &AttractorSet<N>,
    max_iter: usize,
) -> (i32, usize) {
    let mut p = unit(start);
    let mut prev = attractors.nearest(&p);
    for it in 1..=max_iter {
        let Some(next) = step(&p) else { return (-1, it) };
        let n = norm(&next);
        if !(n > 0.0) || !n.is_finite() {
            return (-1, it);
        }
        p = next.map(|z| z / n);
        let cur = attractors.nearest(&p);
        if cur.is_some() && cur == prev {
            return (cur.unwrap() as i32, it);
        }
        prev = cur;
    }
    (-1, max_iter)
}

fn render<const N: usize>(
    grid: GridSpec,
    labels: Vec<String>,
    max_iter: usize,
    cell: impl Fn(f64, f64) -> (i32, usize) + Sync,
) -> Portrait {
    let (nx, ny) = grid.resolution;
    let mut index = vec![-1i32; nx * ny];
    let mut iterations = vec![0u16; nx * ny];
    const ROWS_PER_CHUNK: usize = 8;
    index
        .par_chunks_mut(nx * ROWS_PER_CHUNK)
        .zip(iterations.par_chunks_mut(nx * ROWS_PER_CHUNK))
        .enumerate()
        .for_each(|(chunk, (idx, its))| {
            for (k, (slot, it)) in idx.iter_mut().zip(its.iter_mut()).enumerate() {
                let (col, row) = (k % nx, chunk * ROWS_PER_CHUNK + k / nx);
                let (x, y) = grid.cell_center(col, row);
                let (a, n) = cell(x, y);
                *slot = a;
                *it = n.min(u16::MAX as usize) as u16;
            }
        });
    let _ = ny;
    Portrait { grid, labels, index, iterations, max_iter }
}

pub const DEFAULT_MAX_ITER: usize = 60;

/// Portrait of a map of the Riemann sphere on the window `x + iy`.
pub fn render_1d(map: &RestrictedMap1D, grid: GridSpec, attractors: &AttractorSet<2>, max_iter: usize) -> Portrait {
    render::<2>(grid, attractors.labels(), max_iter, |x, y| {
        classify([C::new(x, y), C::new(1.0, 0.0)], |h| Some(map.eval_h(*h)), attractors, max_iter)
    })
}

/// An affine chart `(X, Y) ↦ [origin + X·e₁ + Y·e₂]` on a real projective
/// plane inside `{Σx = 0}`, in permutation coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneChart {
    pub name: String,
    pub origin: [f64; 5],
    pub e1: [f64; 5],
    pub e2: [f64; 5],
}

impl PlaneChart {
    pub fn embed(&self, x: f64, y: f64) -> Vec5 {
        std::array::from_fn(|i| re(self.origin[i] + x * self.e1[i] + y * self.e2[i]))
    }

    /// Least-squares chart coordinates of a point and the relative distance
    /// of the point from the plane. `None` on the line at infinity.
    pub fn coordinates(&self, p: &Vec5) -> (Option<(f64, f64)>, f64) {
        // p ≈ a·origin + b·e₁ + c·e₂ with complex a, b, c
        let basis = [self.origin, self.e1, self.e2];
        let mut g = [[0.0; 3]; 3];
        let mut rhs = [ZERO; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = (0..5).map(|k| basis[i][k] * basis[j][k]).sum();
            }
            rhs[i] = (0..5).map(|k| p[k] * basis[i][k]).sum();
        }
        let sol = solve3(g, rhs);
        let fit: Vec5 = std::array::from_fn(|k| (0..3).map(|i| sol[i] * basis[i][k]).sum());
        let resid: Vec<C> = (0..5).map(|k| p[k] - fit[k]).collect();
        let rel = norm(&resid) / norm(p);
        let a = sol[0];
        if a.norm() < 1e-14 * norm(&sol) {
            return (None, rel);
        }
        ((Some(((sol[1] / a).re, (sol[2] / a).re))), rel)
    }

    /// The S3-symmetric chart of the plane `{x₁ = x₂}`, normalized by
    /// `x₁ = x₂ = 1`: the 10-point sits at the origin and the three 5-points at
    /// `(1, 0)` and `(−½, ±√3/2)`.
    pub fn s3_plane() -> Self {
        let r3 = 3f64.sqrt();
        PlaneChart {
            name: "L2_10_12".into(),
            origin: [1.0, 1.0, -2.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0],
            e1: [0.0, 0.0, -10.0 / 3.0, 5.0 / 3.0, 5.0 / 3.0],
            e2: [0.0, 0.0, 0.0, -5.0 / r3, 5.0 / r3],
        }
    }
}

fn solve3(mut g: [[f64; 3]; 3], mut r: [C; 3]) -> [C; 3] {
    for c in 0..3 {
        let piv = (c..3).max_by(|&a, &b| g[a][c].abs().total_cmp(&g[b][c].abs())).unwrap();
        g.swap(c, piv);
        r.swap(c, piv);
        for i in c + 1..3 {
            let f = g[i][c] / g[c][c];
            for j in c..3 {
                g[i][j] -= f * g[c][j];
            }
            r[i] = r[i] - r[c] * f;
        }
    }
    let mut x = [ZERO; 3];
    for i in (0..3).rev() {
        let s: C = (i + 1..3).map(|j| x[j] * g[i][j]).sum();
        x[i] = (r[i] - s) / g[i][i];
    }
    x
}

/// Largest allowed relative distance of an image from the plane.
pub const PLANE_INVARIANCE_TOL: f64 = 1e-8;

/// Samples the chart and checks that the map sends the plane into itself.
pub fn check_plane_invariance(chart: &PlaneChart, map: &EquivariantMap) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..7 {
        for j in 0..7 {
            let (x, y) = (-1.3 + 0.41 * i as f64, -1.1 + 0.37 * j as f64);
            let img = map.eval_x(&chart.embed(x, y));
            if norm(&img) == 0.0 {
                continue;
            }
            worst = worst.max(chart.coordinates(&img).1);
        }
    }
    if worst < PLANE_INVARIANCE_TOL {
        Ok(worst)
    } else {
        Err(Error::PlaneNotInvariant(worst))
    }
}

/// Portrait of an equivariant map on a real invariant plane.
pub fn render_plane(
    chart: &PlaneChart,
    map: &EquivariantMap,
    grid: GridSpec,
    attractors: &AttractorSet<5>,
    max_iter: usize,
) -> Result<Portrait> {
    check_plane_invariance(chart, map)?;
    Ok(render::<5>(grid, attractors.labels(), max_iter, |x, y| {
        classify(chart.embed(x, y), |p| Some(map.eval_x(p)), attractors, max_iter)
    }))
}

/// The three 5-points and the 10-point of the plane `{x₁ = x₂}`.
pub fn s3_plane_attractors() -> AttractorSet<5> {
    let five = |k: usize| {
        let mut x = [re(1.0); 5];
        x[k] = re(-4.0);
        x
    };
    let entries = vec![
        Attractor { label: "p5_3".into(), points: vec![five(2)] },
        Attractor { label: "p5_4".into(), points: vec![five(3)] },
        Attractor { label: "p5_5".into(), points: vec![five(4)] },
        Attractor { label: "p10_12_2".into(), points: vec![[-3.0, -3.0, 2.0, 2.0, 2.0].map(re)] },
    ];
    AttractorSet::new(entries, DEFAULT_CAPTURE_RADIUS).expect("separated")
}

/// Follows a real orbit on an invariant real projective line spanned by `a`
/// and `b`, binning the angle of each iterate into `bins` cells of `[0, π)`.
/// Returns the number of distinct cells visited and the largest relative
/// distance of an iterate from the line.
pub fn real_line_orbit_cells(
    map: &EquivariantMap,
    span: [[f64; 5]; 2],
    start_angle: f64,
    steps: usize,
    bins: usize,
) -> (usize, f64) {
    let [a, b] = span.map(|v| {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.map(|x| x / n)
    });
    let mut p: Vec5 = std::array::from_fn(|i| re(start_angle.cos() * a[i] + start_angle.sin() * b[i]));
    let mut seen = vec![false; bins];
    let mut off: f64 = 0.0;
    for _ in 0..steps {
        let q = map.eval_x(&p);
        let n = norm(&q);
        if !(n > 0.0) || !n.is_finite() {
            break;
        }
        p = q.map(|z| z / n);
        let ca: C = (0..5).map(|i| p[i] * a[i]).sum();
        let cb: C = (0..5).map(|i| p[i] * b[i]).sum();
        let resid: Vec<C> = (0..5).map(|i| p[i] - ca * a[i] - cb * b[i]).collect();
        off = off.max(norm(&resid));
        // remove the common phase so the coordinates are real
        let ph = if ca.norm() >= cb.norm() { ca.conj() / ca.norm() } else { cb.conj() / cb.norm() };
        let theta = (cb * ph).re.atan2((ca * ph).re).rem_euclid(std::f64::consts::PI);
        seen[((theta / std::f64::consts::PI * bins as f64) as usize).min(bins - 1)] = true;
    }
    (seen.iter().filter(|&&v| v).count(), off)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttractorStatistics {
    pub labels: Vec<String>,
    pub fractions: Vec<f64>,
    pub black_fraction: f64,
    pub mean_iterations: f64,
}

pub fn attractor_statistics(p: &Portrait) -> AttractorStatistics {
    attractor_statistics_within(p, |_, _| true)
}

/// Statistics over the cells whose centres satisfy `keep`. A square window
/// is not invariant under a rotation of order three, so symmetric comparisons
/// use an invariant region such as the inscribed disk.
pub fn attractor_statistics_within(p: &Portrait, keep: impl Fn(f64, f64) -> bool) -> AttractorStatistics {
    let nx = p.grid.resolution.0;
    let mut counts = vec![0usize; p.labels.len()];
    let (mut black, mut total, mut its) = (0usize, 0usize, 0.0);
    for (k, &i) in p.index.iter().enumerate() {
        let (x, y) = p.grid.cell_center(k % nx, k / nx);
        if !keep(x, y) {
            continue;
        }
        total += 1;
        its += p.iterations[k] as f64;
        if i < 0 {
            black += 1;
        } else {
            counts[i as usize] += 1;
        }
    }
    let total = total.max(1) as f64;
    let mean = its / total;
    AttractorStatistics {
        labels: p.labels.clone(),
        fractions: counts.iter().map(|&c| c as f64 / total).collect(),
        black_fraction: black as f64 / total,
        mean_iterations: mean,
    }
}

/// Fraction of interior cells whose label agrees with the label at the image
/// cell under a symmetry of the window. Cells on basin boundaries (a 4-neighbour
/// with another label) and cells mapped outside the window are skipped.
pub fn symmetry_agreement(p: &Portrait, sym: impl Fn(f64, f64) -> (f64, f64), relabel: &[usize]) -> f64 {
    let (nx, ny) = p.grid.resolution;
    let interior = |c: usize, r: usize| {
        let v = p.at(c, r);
        c > 0 && r > 0 && c + 1 < nx && r + 1 < ny && [(c - 1, r), (c + 1, r), (c, r - 1), (c, r + 1)].iter().all(|&(a, b)| p.at(a, b) == v)
    };
    let (mut agree, mut total) = (0usize, 0usize);
    for r in 0..ny {
        for c in 0..nx {
            if !interior(c, r) {
                continue;
            }
            let (x, y) = p.grid.cell_center(c, r);
            let (sx, sy) = sym(x, y);
            let Some((c2, r2)) = p.grid.cell_of(sx, sy) else { continue };
            if !interior(c2, r2) {
                continue;
            }
            total += 1;
            let a = p.at(c, r);
            let expect = if a < 0 { -1 } else { relabel[a as usize] as i32 };
            if p.at(c2, r2) == expect {
                agree += 1;
            }
        }
    }
    if total == 0 {
        return 1.0;
    }
    agree as f64 / total as f64
}

pub const MAX_BLACK_FRACTION: f64 = 0.05;
/// Largest allowed (max − min)/mean among basins related by symmetry.
pub const MAX_BASIN_SPREAD: f64 = 0.02;
pub const MIN_SYMMETRY_AGREEMENT: f64 = 0.98;

pub fn spread(fractions: &[f64]) -> f64 {
    let max = fractions.iter().cloned().fold(f64::MIN, f64::max);
    let min = fractions.iter().cloned().fold(f64::MAX, f64::min);
    (max - min) / (fractions.iter().sum::<f64>() / fractions.len() as f64)
}

/// A reference portrait together with the quantities its assertions read.
#[derive(Debug, Clone)]
pub struct PortraitCheck {
    pub name: &'static str,
    pub portrait: Portrait,
    pub stats: AttractorStatistics,
    pub expected_basins: usize,
    /// Spread of the basins that the symmetries permute.
    pub spread: f64,
    pub symmetry: Vec<f64>,
    pub elapsed: Duration,
}

impl PortraitCheck {
    pub fn passed(&self) -> bool {
        self.stats.black_fraction < MAX_BLACK_FRACTION
            && self.stats.fractions.len() == self.expected_basins
            && self.stats.fractions.iter().all(|&f| f > 0.0)
            && self.spread < MAX_BASIN_SPREAD
            && self.symmetry.iter().all(|&a| a >= MIN_SYMMETRY_AGREEMENT)
    }
}

/// The octahedral conic map on |Re|,|Im| ≤ 2: four 2-cycles permuted by z ↦ iz.
pub fn octahedral_portrait(resolution: usize, max_iter: usize) -> Result<PortraitCheck> {
    let start = Instant::now();
    let m = restricted_map("oct5_conic")?;
    let att = attractors_1d(&m, 4)?;
    let p = render_1d(&m, GridSpec::square((0.0, 0.0), 2.0, resolution), &att, max_iter);
    let stats = attractor_statistics(&p);
    let rotated = |h: [C; 2]| [h[0] * C::new(0.0, 1.0), h[1]];
    let relabel: Vec<usize> = att
        .entries
        .iter()
        .map(|a| {
            let r = rotated(a.points[0]);
            att.entries.iter().position(|b| b.points.iter().any(|q| chordal(q, &r) < 1e-6)).unwrap_or(usize::MAX)
        })
        .collect();
    let symmetry = if relabel.contains(&usize::MAX) { 0.0 } else { symmetry_agreement(&p, |x, y| (-y, x), &relabel) };
    Ok(PortraitCheck {
        name: "oct5_conic",
        spread: spread(&stats.fractions),
        stats,
        portrait: p,
        expected_basins: 4,
        symmetry: vec![symmetry],
        elapsed: start.elapsed(),
    })
}

/// φ₆ on the real S3-symmetric plane, |x|,|y| ≤ 1.5: three 5-point basins
/// permuted by the rotation and reflection of the triangle, plus the 10-point.
pub fn f6_plane_portrait(resolution: usize, max_iter: usize) -> Result<PortraitCheck> {
    let start = Instant::now();
    let half = 1.5;
    let p = render_plane(
        &PlaneChart::s3_plane(),
        &EquivariantMap::Phi6,
        GridSpec::square((0.0, 0.0), half, resolution),
        &s3_plane_attractors(),
        max_iter,
    )?;
    let stats = attractor_statistics(&p);
    let disk = attractor_statistics_within(&p, |x, y| x * x + y * y <= half * half);
    let r = 2.0 * std::f64::consts::PI / 3.0;
    let rot = |x: f64, y: f64| (x * r.cos() - y * r.sin(), x * r.sin() + y * r.cos());
    let symmetry = vec![symmetry_agreement(&p, rot, &[1, 2, 0, 3]), symmetry_agreement(&p, |x, y| (x, -y), &[0, 2, 1, 3])];
    Ok(PortraitCheck {
        name: "f6_plane",
        spread: spread(&disk.fractions[..3]),
        stats,
        portrait: p,
        expected_basins: 4,
        symmetry,
        elapsed: start.elapsed(),
    })
}

fn palette(i: usize) -> [u8; 3] {
    const P: [[u8; 3]; 8] = [
        [230, 57, 70],
        [69, 123, 157],
        [244, 162, 97],
        [42, 157, 143],
        [168, 218, 220],
        [131, 56, 236],
        [255, 190, 11],
        [106, 153, 78],
    ];
    P[i % P.len()]
}

/// Binary PPM: basin colour shaded by capture time, black if unresolved.
pub fn write_ppm(p: &Portrait, out: &mut impl Write) -> std::io::Result<()> {
    let (nx, ny) = p.grid.resolution;
    write!(out, "P6\n{nx} {ny}\n255\n")?;
    let mut buf = Vec::with_capacity(nx * ny * 3);
    for (k, &i) in p.index.iter().enumerate() {
        if i < 0 {
            buf.extend_from_slice(&[0, 0, 0]);
            continue;
        }
        let shade = 1.0 - 0.6 * (p.iterations[k] as f64 / p.max_iter.max(1) as f64).sqrt();
        buf.extend(palette(i as usize).map(|c| (c as f64 * shade) as u8));
    }
    out.write_all(&buf)
}
