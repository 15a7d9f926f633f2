use quintic_flow::basins::*;
use quintic_flow::equivariants::EquivariantMap;
use quintic_flow::geometry::ChartValue;
use quintic_flow::maps1d::restricted_map;
use quintic_flow::Error;

#[test]
fn octahedral_conic_portrait() {
    let c = octahedral_portrait(720, 60).unwrap();
    assert_eq!(c.portrait.grid.resolution, (720, 720));
    assert!(c.stats.labels.len() == 4 && c.stats.black_fraction < 0.05);
    assert!(c.spread < 0.02, "{:?}", c.stats.fractions);
    assert!(c.symmetry[0] >= 0.98);
    assert!(c.passed());
}

#[test]
fn printed_conic_map_goes_to_zero_infinity_cycle() {
    let m = restricted_map("conic11").unwrap();
    let att = attractors_1d(&m, 4).unwrap();
    assert_eq!(att.entries.len(), 1);
    let p = render_1d(&m, GridSpec::square((0.0, 0.0), 2.0, 360), &att, 60);
    assert!(attractor_statistics(&p).fractions[0] >= 0.99);
}

#[test]
fn dodecahedral_vertices_are_critical_two_cycles() {
    let m = restricted_map("dodeca11").unwrap();
    let att = attractors_1d(&m, 4).unwrap();
    assert_eq!(att.entries.len(), 10);
    let mut n = 0;
    for a in &att.entries {
        assert_eq!(a.points.len(), 2);
        for h in &a.points {
            let z = ChartValue::from_homogeneous(*h).finite().unwrap();
            assert!(m.derivative(z).norm() < 1e-8);
            n += 1;
        }
    }
    assert_eq!(n, 20);
}

#[test]
fn f6_fifteen_line_critical_points_are_captured() {
    let m = restricted_map("f6_l15").unwrap();
    let att = attractors_1d(&m, 4).unwrap();
    assert_eq!(att.entries.len(), 3);
    for want in [-1.0, 0.0, 1.0] {
        let hit = att.entries.iter().any(|a| {
            ChartValue::from_homogeneous(a.points[0]).finite().is_some_and(|z| (z - want).norm() < 1e-9)
        });
        assert!(hit, "{want}");
    }
    let mut moving = 0;
    for c in m.critical_points() {
        let img = m.eval(c);
        if quintic_flow::geometry::chordal(&img.homogeneous(), &c.homogeneous()) < 1e-9 {
            continue;
        }
        moving += 1;
        let (i, _) = classify(c.homogeneous(), |h| Some(m.eval_h(*h)), &att, 200);
        assert!(i >= 0, "{c:?} unresolved");
    }
    assert_eq!(moving, 4);
}

#[test]
fn f6_s3_plane_portrait() {
    let c = f6_plane_portrait(720, 60).unwrap();
    assert!(c.stats.black_fraction < 0.05);
    assert!(c.stats.fractions.iter().all(|&f| f > 0.0));
    assert!(c.spread < 0.02, "{:?}", c.stats.fractions);
    assert!(c.symmetry.iter().all(|&a| a >= 0.98), "{:?}", c.symmetry);
    assert!(c.passed());
}

#[test]
fn f6_maps_small_circle_near_the_triangle() {
    let chart = PlaneChart::s3_plane();
    let h = 3f64.sqrt() / 2.0;
    let v = [(1.0, 0.0), (-0.5, h), (-0.5, -h)];
    let seg = |p: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
        ((p.0 - a.0 - t * dx).powi(2) + (p.1 - a.1 - t * dy).powi(2)).sqrt()
    };
    let mut worst: f64 = 0.0;
    for i in 0..360 {
        let th = (i as f64).to_radians();
        let img = EquivariantMap::Phi6.eval_x(&chart.embed(0.5 * th.cos(), 0.5 * th.sin()));
        let (c, off) = chart.coordinates(&img);
        assert!(off < 1e-10);
        let c = c.unwrap();
        worst = worst.max((0..3).map(|k| seg(c, v[k], v[(k + 1) % 3])).fold(f64::MAX, f64::min));
    }
    assert!(worst < 0.1, "{worst}");
}

#[test]
fn h11_has_a_chaotic_line_attractor_on_the_s3_plane() {
    let chart = PlaneChart::s3_plane();
    check_plane_invariance(&chart, &EquivariantMap::H11).unwrap();
    // the line at infinity of the chart, {x₁ = x₂ = 0}
    let (cells, off) = real_line_orbit_cells(&EquivariantMap::H11, [chart.e1, chart.e2], 0.4123, 2000, 720);
    assert!(off < 1e-8, "{off}");
    assert!(cells >= 100, "{cells}");
}

#[test]
fn non_invariant_plane_is_rejected() {
    let chart = PlaneChart {
        name: "tilted".into(),
        origin: [1.0, 0.5, -0.2, -0.6, -0.7],
        e1: [0.3, -1.0, 0.4, 0.1, 0.2],
        e2: [0.0, 0.2, 1.0, -0.5, -0.7],
    };
    let g = GridSpec::square((0.0, 0.0), 1.0, 4);
    let r = render_plane(&chart, &EquivariantMap::Phi6, g, &s3_plane_attractors(), 10);
    assert!(matches!(r, Err(Error::PlaneNotInvariant(_))));
}

#[test]
fn rendering_is_deterministic_and_ppm_sized() {
    let m = restricted_map("dodeca11").unwrap();
    let att = attractors_1d(&m, 4).unwrap();
    let g = GridSpec::square((0.0, 0.0), 2.0, 64);
    let a = render_1d(&m, g, &att, 60);
    assert_eq!(a, render_1d(&m, g, &att, 60));
    let mut buf = Vec::new();
    write_ppm(&a, &mut buf).unwrap();
    assert!(buf.starts_with(b"P6\n64 64\n255\n"));
    assert_eq!(buf.len(), b"P6\n64 64\n255\n".len() + 64 * 64 * 3);
}
