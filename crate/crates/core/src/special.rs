//! Special points, lines and planes of the S5 action, addressed by
//! descriptors such as `p10_45_2`, `q30_1_24_1`, `L1_15_12_34` or `L2_5_1`.
//! Indices are 1-based.

use crate::equivariants::{point_from_rulings, ruling_coords};
use crate::error::{Error, Result};
use crate::geometry::{chordal, cx, inner, norm, omega, re, u_of, x_of, LineChart, Vec5, C, ONE, ZERO};
use crate::group::{all_elements, dedup_projective, DEDUP_TOL};

/// Incidence residuals below this count as membership.
pub const INCIDENCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialPoint {
    pub descriptor: String,
    pub x: Vec5,
    pub expected_orbit_size: usize,
    pub expected_stabilizer_order: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialLine {
    pub descriptor: String,
    /// Linear forms (besides `Σx`) whose common zero set is the line.
    pub forms: Vec<Vec5>,
    pub span: [Vec5; 2],
    pub expected_orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialPlane {
    pub descriptor: String,
    pub form: Vec5,
    pub expected_orbit_size: usize,
}

/// Table representatives, one per orbit, with orbit size and stabilizer order.
pub const POINT_TABLE: [(&str, usize, usize); 12] = [
    ("p5_1", 5, 24),
    ("p10_45_1", 10, 12),
    ("p10_45_2", 10, 12),
    ("p15_1_23", 15, 8),
    ("p20_1_345", 20, 6),
    ("p30_12_34", 30, 4),
    ("q20_12_1", 20, 6),
    ("q20_123_1", 20, 6),
    ("q24_1234", 24, 5),
    ("q30_1_24_1", 30, 4),
    ("q30_12_34_1", 30, 4),
    ("q60_1_23_1", 60, 2),
];

pub const LINE_TABLE: [(&str, usize); 5] =
    [("L1_10_12", 10), ("M1_10_123", 10), ("L1_15_12_34", 15), ("M1_15_12_34", 15), ("L1_30_1_23", 30)];

pub const PLANE_TABLE: [(&str, usize); 3] = [("L2_5_1", 5), ("L2_10_12", 10), ("M2_10_12", 10)];

pub fn alpha() -> C {
    cx(-1.5, 15f64.sqrt() / 2.0)
}

pub fn beta() -> C {
    cx(-2.0 / 3.0, 5f64.sqrt() / 3.0)
}

pub fn gamma() -> C {
    cx(-1.0, 2f64.sqrt())
}

fn parse_groups(desc: &str, kind_len: usize) -> Result<Vec<Vec<usize>>> {
    let parts: Vec<&str> = desc.split('_').skip(kind_len).collect();
    parts
        .iter()
        .map(|p| {
            if p.is_empty() {
                return Err(Error::UnknownDescriptor(desc.into()));
            }
            p.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::UnknownDescriptor(desc.into())))
                .collect()
        })
        .collect()
}

/// Checks that 1-based indices lie in 1..=5 and are pairwise distinct across groups.
fn check_indices(desc: &str, groups: &[&[usize]]) -> Result<()> {
    let mut seen = [false; 6];
    for g in groups {
        for &i in g.iter() {
            if !(1..=5).contains(&i) || seen[i] {
                return Err(Error::BadIndices(desc.into()));
            }
            seen[i] = true;
        }
    }
    Ok(())
}

/// The 0-based positions not mentioned in `used` (1-based), ascending.
fn rest(used: &[usize]) -> Vec<usize> {
    (1..=5).filter(|i| !used.contains(i)).map(|i| i - 1).collect()
}

fn branch(desc: &str, g: &[usize]) -> Result<bool> {
    match g {
        [1] => Ok(false),
        [2] => Ok(true),
        _ => Err(Error::UnknownDescriptor(desc.into())),
    }
}

/// Builds a special point from its descriptor.
pub fn point(desc: &str) -> Result<SpecialPoint> {
    let kind = desc.split('_').next().unwrap_or("");
    let g = parse_groups(desc, 1)?;
    let shape: Vec<usize> = g.iter().map(|v| v.len()).collect();
    let bad = || Error::UnknownDescriptor(desc.to_string());
    let mut x = [ZERO; 5];
    let (size, stab) = match (kind, shape.as_slice()) {
        ("p5", [1]) => {
            check_indices(desc, &[&g[0]])?;
            x = [ONE; 5];
            x[g[0][0] - 1] = re(-4.0);
            (5, 24)
        }
        ("p10", [2, 1]) => {
            check_indices(desc, &[&g[0]])?;
            let (i, j) = (g[0][0] - 1, g[0][1] - 1);
            if branch(desc, &g[1])? {
                x = [re(2.0); 5];
                x[i] = re(-3.0);
                x[j] = re(-3.0);
            } else {
                x[i] = ONE;
                x[j] = -ONE;
            }
            (10, 12)
        }
        ("p15", [1, 2]) => {
            check_indices(desc, &[&g[0], &g[1]])?;
            x = [-ONE; 5];
            x[g[0][0] - 1] = ZERO;
            for &j in &g[1] {
                x[j - 1] = ONE;
            }
            (15, 8)
        }
        ("p20", [1, 3]) => {
            check_indices(desc, &[&g[0], &g[1]])?;
            x = [re(-3.0); 5];
            x[g[0][0] - 1] = ZERO;
            for &j in &g[1] {
                x[j - 1] = ONE;
            }
            (20, 6)
        }
        ("p30", [2, 2]) => {
            check_indices(desc, &[&g[0], &g[1]])?;
            x = [re(-2.0); 5];
            for &j in &g[1] {
                x[j - 1] = ONE;
            }
            for &j in &g[0] {
                x[j - 1] = ZERO;
            }
            (30, 4)
        }
        ("q20", [2, 1]) => {
            check_indices(desc, &[&g[0]])?;
            let w = omega(3, if branch(desc, &g[1])? { 2 } else { 1 });
            for (k, p) in rest(&g[0]).into_iter().enumerate() {
                x[p] = w.powu(k as u32);
            }
            (20, 6)
        }
        ("q20", [3, 1]) => {
            check_indices(desc, &[&g[0]])?;
            let a = if branch(desc, &g[1])? { alpha().conj() } else { alpha() };
            for &j in &g[0] {
                x[j - 1] = ONE;
            }
            let r = rest(&g[0]);
            x[r[0]] = a;
            x[r[1]] = a.conj();
            (20, 6)
        }
        ("q24", [4]) => {
            let mut e = g[0].clone();
            e.sort_unstable();
            if e != [1, 2, 3, 4] {
                return Err(Error::BadIndices(desc.into()));
            }
            x[0] = ONE;
            for (k, &p) in g[0].iter().enumerate() {
                x[k + 1] = omega(5, p as i64);
            }
            (24, 5)
        }
        ("q30", [1, 2, 1]) => {
            check_indices(desc, &[&g[0], &g[1]])?;
            let s = if branch(desc, &g[2])? { -1.0 } else { 1.0 };
            x[g[1][0] - 1] = ONE;
            x[g[1][1] - 1] = -ONE;
            let used = [g[0][0], g[1][0], g[1][1]];
            let r = rest(&used);
            x[r[0]] = cx(0.0, s);
            x[r[1]] = cx(0.0, -s);
            (30, 4)
        }
        ("q30", [2, 2, 1]) => {
            check_indices(desc, &[&g[0], &g[1]])?;
            let b = if branch(desc, &g[2])? { beta().conj() } else { beta() };
            x = [-(ONE + b) * 2.0; 5];
            for &j in &g[0] {
                x[j - 1] = ONE;
            }
            for &j in &g[1] {
                x[j - 1] = b;
            }
            (30, 4)
        }
        ("q60", [1, 2, 1]) => {
            check_indices(desc, &[&g[0], &g[1]])?;
            let c = if branch(desc, &g[2])? { gamma().conj() } else { gamma() };
            for &j in &g[1] {
                x[j - 1] = ONE;
            }
            let used = [g[0][0], g[1][0], g[1][1]];
            let r = rest(&used);
            x[r[0]] = c;
            x[r[1]] = c.conj();
            (60, 2)
        }
        _ => return Err(bad()),
    };
    Ok(SpecialPoint { descriptor: desc.into(), x, expected_orbit_size: size, expected_stabilizer_order: stab })
}

fn unit(i: usize) -> Vec5 {
    let mut v = [ZERO; 5];
    v[i - 1] = ONE;
    v
}

fn form_diff(i: usize, j: usize, sign: f64) -> Vec5 {
    let mut v = unit(i);
    v[j - 1] = re(-sign);
    v
}

/// Basis of the common kernel of `rows` and `Σx` in C⁵.
fn kernel_basis(rows: &[Vec5]) -> Vec<Vec5> {
    let mut a: Vec<Vec5> = rows.to_vec();
    a.push([ONE; 5]);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..5 {
        let Some(p) = (r..a.len()).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm())) else { break };
        if a[p][c].norm() < 1e-12 {
            continue;
        }
        a.swap(r, p);
        let piv = a[r][c];
        for k in 0..5 {
            a[r][k] /= piv;
        }
        for i in 0..a.len() {
            if i != r {
                let f = a[i][c];
                for k in 0..5 {
                    let t = a[r][k];
                    a[i][k] -= f * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (0..5)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [ZERO; 5];
            v[free] = ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free];
            }
            v
        })
        .collect()
}

pub fn line(desc: &str) -> Result<SpecialLine> {
    let mut it = desc.splitn(3, '_');
    let kind = format!("{}_{}", it.next().unwrap_or(""), it.next().unwrap_or(""));
    let g = parse_groups(desc, 2)?;
    let shape: Vec<usize> = g.iter().map(|v| v.len()).collect();
    let (forms, size) = match (kind.as_str(), shape.as_slice()) {
        ("L1_10", [2]) => {
            check_indices(desc, &[&g[0]])?;
            (vec![unit(g[0][0]), unit(g[0][1])], 10)
        }
        ("M1_10", [3]) => {
            check_indices(desc, &[&g[0]])?;
            (vec![form_diff(g[0][0], g[0][1], 1.0), form_diff(g[0][1], g[0][2], 1.0)], 10)
        }
        ("L1_15", [2, 2]) | ("M1_15", [2, 2]) => {
            check_indices(desc, &[&g[0], &g[1]])?;
            let s = if kind.starts_with('L') { 1.0 } else { -1.0 };
            (vec![form_diff(g[0][0], g[0][1], s), form_diff(g[1][0], g[1][1], s)], 15)
        }
        ("L1_30", [1, 2]) => {
            check_indices(desc, &[&g[0], &g[1]])?;
            (vec![unit(g[0][0]), form_diff(g[1][0], g[1][1], 1.0)], 30)
        }
        _ => return Err(Error::UnknownDescriptor(desc.into())),
    };
    let k = kernel_basis(&forms);
    Ok(SpecialLine { descriptor: desc.into(), span: [k[0], k[1]], forms, expected_orbit_size: size })
}

pub fn plane(desc: &str) -> Result<SpecialPlane> {
    let mut it = desc.splitn(3, '_');
    let kind = format!("{}_{}", it.next().unwrap_or(""), it.next().unwrap_or(""));
    let g = parse_groups(desc, 2)?;
    let shape: Vec<usize> = g.iter().map(|v| v.len()).collect();
    let (form, size) = match (kind.as_str(), shape.as_slice()) {
        ("L2_5", [1]) => (unit(g[0][0]), 5),
        ("L2_10", [2]) => (form_diff(g[0][0], g[0][1], 1.0), 10),
        ("M2_10", [2]) => (form_diff(g[0][0], g[0][1], -1.0), 10),
        _ => return Err(Error::UnknownDescriptor(desc.into())),
    };
    check_indices(desc, &[&g[0]])?;
    Ok(SpecialPlane { descriptor: desc.into(), form, expected_orbit_size: size })
}

/// Scale-free residual `max |ℓ(x)|/(‖ℓ‖‖x‖)` over the given forms and `Σx`.
pub fn form_residual(forms: &[Vec5], x: &Vec5) -> f64 {
    let nx = norm(x);
    forms.iter().chain(std::iter::once(&[ONE; 5])).map(|f| inner(&f.map(|c| c.conj()), x).norm() / (norm(f) * nx)).fold(0.0, f64::max)
}

impl SpecialLine {
    pub fn contains(&self, x: &Vec5) -> bool {
        form_residual(&self.forms, x) < INCIDENCE_TOL
    }
}

impl SpecialPlane {
    pub fn contains(&self, x: &Vec5) -> bool {
        form_residual(&[self.form], x) < INCIDENCE_TOL
    }
}

/// Distance of `p` from the line spanned by `span`.
fn off_line(span: &[Vec5; 2], p: &Vec5) -> f64 {
    LineChart::new(span[0], span[1]).map(|c| c.invert_with_residual(p).1).unwrap_or(f64::INFINITY)
}

/// The distinct images of a line (given by two spanning points) under all 120 elements.
pub fn line_orbit(span: [Vec5; 2]) -> Vec<[Vec5; 2]> {
    let mut out: Vec<[Vec5; 2]> = Vec::new();
    for g in all_elements() {
        let img = [g.apply_x(&span[0]), g.apply_x(&span[1])];
        if !out.iter().any(|l| off_line(l, &img[0]) < 1e-9 && off_line(l, &img[1]) < 1e-9) {
            out.push(img);
        }
    }
    out
}

/// The orbit of a table representative in x-coordinates.
pub fn point_orbit(x: &Vec5) -> Vec<Vec5> {
    dedup_projective(all_elements().iter().map(|g| g.apply_x(x)), DEDUP_TOL)
}

/// Orbit of a named point, each member labelled with a descriptor of the same
/// family where one exists.
pub fn named_orbit(family: &str) -> Result<Vec<(String, Vec5)>> {
    let rep = POINT_TABLE
        .iter()
        .find(|(d, _, _)| d.starts_with(&format!("{family}_")) || *d == family)
        .or_else(|| POINT_TABLE.iter().find(|(d, _, _)| d.starts_with(family)))
        .ok_or_else(|| Error::UnknownName(family.into()))?;
    let base = point(rep.0)?;
    let orbit = point_orbit(&base.x);
    let labels = descriptors_like(rep.0);
    Ok(orbit
        .into_iter()
        .map(|x| {
            let label = labels
                .iter()
                .filter_map(|d| point(d).ok())
                .find(|p| chordal(&p.x, &x) < DEDUP_TOL)
                .map(|p| p.descriptor)
                .unwrap_or_else(|| rep.0.to_string());
            (label, x)
        })
        .collect())
}

/// All descriptors with the same shape as `desc`, over every index choice.
fn descriptors_like(desc: &str) -> Vec<String> {
    let parts: Vec<&str> = desc.split('_').collect();
    let kind = parts[0];
    let mut shape: Vec<usize> = parts[1..].iter().map(|p| p.len()).collect();
    let branched = kind.starts_with('q') && kind != "q24";
    if branched {
        shape.pop();
    }
    // the signed pair of q30_i_jk keeps its order
    let ordered = |gi: usize| kind == "q24" || (kind == "q30" && shape == [1, 2] && gi == 1);
    let mut out = Vec::new();
    let mut perm = [1usize, 2, 3, 4, 5];
    loop {
        let mut pos = 0;
        let mut groups = Vec::new();
        for (gi, &len) in shape.iter().enumerate() {
            let mut g = perm[pos..pos + len].to_vec();
            if !ordered(gi) {
                g.sort_unstable();
            }
            groups.push(g.iter().map(|d| d.to_string()).collect::<String>());
            pos += len;
        }
        let stem = format!("{kind}_{}", groups.join("_"));
        if branched {
            out.push(format!("{stem}_1"));
            out.push(format!("{stem}_2"));
        } else {
            out.push(stem);
        }
        if !next_perm(&mut perm) {
            break;
        }
    }
    out.sort();
    out.dedup();
    out.retain(|d| point(d).is_ok());
    out
}

fn next_perm(a: &mut [usize; 5]) -> bool {
    let Some(i) = (0..4).rev().find(|&i| a[i] < a[i + 1]) else { return false };
    let j = (i + 1..5).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// One incidence assertion of the configuration report.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn five_points() -> Vec<SpecialPoint> {
    (1..=5).map(|i| point(&format!("p5_{i}")).unwrap()).collect()
}

fn pairs() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=5 {
        for j in i + 1..=5 {
            v.push((i, j));
        }
    }
    v
}

/// All 15-lines `L1_15_ij_kl` with `{i,j}` and `{k,l}` disjoint, listed once.
pub fn fifteen_lines() -> Vec<SpecialLine> {
    let mut out = Vec::new();
    for (i, j) in pairs() {
        for (k, l) in pairs() {
            if (i, j) < (k, l) && ![k, l].contains(&i) && ![k, l].contains(&j) {
                out.push(line(&format!("L1_15_{i}{j}_{k}{l}")).unwrap());
            }
        }
    }
    out
}

/// The a-line through a quadric point, as two spanning points in x.
pub fn ruling_a_line(x: &Vec5) -> Result<[Vec5; 2]> {
    let r = ruling_coords(&u_of(x))?;
    Ok([[ONE, ZERO], [ZERO, ONE]].map(|b| x_of(&point_from_rulings(r.a, b))))
}

/// Checks the incidence structure of the 5-points, 10-points, 10-lines and
/// 15-lines, and the sizes of the special line orbits on the quadric.
pub fn verify_configuration() -> Vec<ConfigCheck> {
    let mut out = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| out.push(ConfigCheck { name: name.into(), passed, detail });
    let p5 = five_points();
    let fifteen = fifteen_lines();
    let ten_m: Vec<SpecialLine> = {
        let mut v = Vec::new();
        for i in 1..=5 {
            for j in i + 1..=5 {
                for k in j + 1..=5 {
                    v.push(line(&format!("M1_10_{i}{j}{k}")).unwrap());
                }
            }
        }
        v
    };
    let p10: Vec<SpecialPoint> = pairs().iter().map(|(i, j)| point(&format!("p10_{i}{j}_2")).unwrap()).collect();

    push("fifteen lines count", fifteen.len() == 15, format!("{} lines", fifteen.len()));

    let counts: Vec<usize> = p5.iter().map(|p| fifteen.iter().filter(|l| l.contains(&p.x)).count()).collect();
    push("three 15-lines at each 5-point", counts.iter().all(|&c| c == 3), format!("{counts:?}"));

    let counts: Vec<usize> = fifteen.iter().map(|l| p5.iter().filter(|p| l.contains(&p.x)).count()).collect();
    push("one 5-point on each 15-line", counts.iter().all(|&c| c == 1), format!("{counts:?}"));
    let right_one = fifteen.iter().all(|l| {
        let idx: Vec<usize> = parse_groups(&l.descriptor, 2).unwrap().concat();
        let missing = (1..=5).find(|i| !idx.contains(i)).unwrap();
        l.contains(&p5[missing - 1].x)
    });
    push("the 5-point on L1_15_jk_lm is p5_i with i outside jklm", right_one, String::new());

    let counts: Vec<usize> = p10.iter().map(|p| fifteen.iter().filter(|l| l.contains(&p.x)).count()).collect();
    push("three 15-lines at each 10-point of type 2", counts.iter().all(|&c| c == 3), format!("{counts:?}"));

    let ok = fifteen.iter().all(|l| {
        let g = parse_groups(&l.descriptor, 2).unwrap();
        let on: Vec<&SpecialPoint> = p10.iter().filter(|p| l.contains(&p.x)).collect();
        let want = [format!("p10_{}{}_2", g[0][0], g[0][1]), format!("p10_{}{}_2", g[1][0], g[1][1])];
        on.len() == 2 && on.iter().all(|p| want.contains(&p.descriptor))
    });
    push("two 10-points p10_ij_2, p10_kl_2 on L1_15_ij_kl", ok, String::new());

    let counts: Vec<usize> = ten_m.iter().map(|l| p5.iter().filter(|p| l.contains(&p.x)).count()).collect();
    let all_pairs = pairs().iter().all(|&(i, j)| ten_m.iter().filter(|l| l.contains(&p5[i - 1].x) && l.contains(&p5[j - 1].x)).count() == 1);
    push(
        "10-lines form a complete graph on the 5-points",
        counts.iter().all(|&c| c == 2) && all_pairs && ten_m.len() == 10,
        format!("{counts:?}"),
    );

    for (desc, want) in [("q20_12_1", 40), ("q24_1234", 24), ("q30_1_24_1", 60), ("q30_12_34_1", 60)] {
        let x = point(desc).unwrap().x;
        let got = ruling_a_line(&x).map(|s| line_orbit(s).len()).unwrap_or(0);
        push(&format!("ruling-line orbit through {desc} has size {want}"), got == want, format!("{got}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let p = point("p10_45_2").unwrap();
        assert_eq!(p.x, [2.0, 2.0, 2.0, -3.0, -3.0].map(re));
        let q = point("q30_1_24_1").unwrap();
        assert_eq!(q.x, [ZERO, ONE, cx(0.0, 1.0), -ONE, cx(0.0, -1.0)]);
        let q = point("q20_123_1").unwrap();
        assert_eq!(q.x, [ONE, ONE, ONE, alpha(), alpha().conj()]);
        assert!(chordal(&point("q30_1_24_1").unwrap().x, &point("q30_1_35_2").unwrap().x) < 1e-15);
    }

    #[test]
    fn bad_descriptors() {
        assert!(matches!(point("p7_1"), Err(Error::UnknownDescriptor(_))));
        assert!(matches!(point("p10_44_1"), Err(Error::BadIndices(_))));
        assert!(matches!(line("L1_15_12_23"), Err(Error::BadIndices(_))));
        assert!(matches!(plane("L2_7_1"), Err(Error::UnknownDescriptor(_))));
    }

    #[test]
    fn line_contents() {
        let l = line("L1_15_12_34").unwrap();
        let inside: Vec<usize> = (1..=5).filter(|&i| l.contains(&point(&format!("p5_{i}")).unwrap().x)).collect();
        assert_eq!(inside, vec![5]);
        let m = line("M1_10_123").unwrap();
        assert!(m.contains(&point("p5_4").unwrap().x) && m.contains(&point("p5_5").unwrap().x));
        assert_eq!(line_orbit(line("L1_30_1_23").unwrap().span).len(), 30);
    }

    #[test]
    fn named_orbit_labels() {
        let o = named_orbit("p5").unwrap();
        assert_eq!(o.len(), 5);
        let mut names: Vec<String> = o.into_iter().map(|(d, _)| d).collect();
        names.sort();
        assert_eq!(names, ["p5_1", "p5_2", "p5_3", "p5_4", "p5_5"]);
    }
}
