//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use quintic_flow::basins::{f6_plane_portrait, octahedral_portrait, PortraitCheck};
use quintic_flow::checks::{self, Check, CheckOptions};
use quintic_flow::conformance::CORE_RESTRICTIONS;
use quintic_flow::geometry::{chordal, normalize, re};
use quintic_flow::param::{conjugated_five_points, family_at, random_generic_v, random_vec4};
use quintic_flow::solver::{random_unit_disk_quintic, run_phi_k, solve, IterateOptions, Quintic, SolveOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    summary: String,
}

fn from_checks(checks: &[&Check], extra: Option<(bool, String)>) -> Outcome {
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
    let worst = checks.iter().map(|c| c.value).filter(|v| !v.is_nan()).fold(0.0, f64::max);
    let mut summary = format!("{} checks, worst err {worst:.2e}", checks.len());
    let mut passed = failed.is_empty() && !checks.is_empty();
    if let Some((ok, s)) = extra {
        passed &= ok;
        summary.push_str(&format!(", {s}"));
    }
    if !failed.is_empty() {
        summary.push_str(&format!("; failing: {}", failed.join(" | ")));
    }
    Outcome { passed, summary }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn group() -> Outcome {
    let (checks, dt) = timed(checks::group_checks);
    let refs: Vec<&Check> = checks.iter().collect();
    from_checks(&refs, Some((dt < Duration::from_secs(5), format!("{dt:.2?} (limit 5s)"))))
}

fn identities(opts: &CheckOptions) -> Outcome {
    let checks = checks::invariant_checks(opts);
    let refs: Vec<&Check> = checks.iter().filter(|c| c.name.ends_with("from_g4") || c.name.ends_with("from_g5")).collect();
    from_checks(&refs, Some((true, format!("{} points", checks::IDENTITY_POINTS))))
}

fn equivariance(opts: &CheckOptions) -> Outcome {
    let checks = checks::equivariance_checks(opts);
    let refs: Vec<&Check> = checks.iter().filter(|c| ["phi6", "h11", "g11"].contains(&c.name.as_str())).collect();
    let ok = refs.len() == 3;
    from_checks(&refs, Some((ok, "120 elements x 20 points".into())))
}

fn conformance(opts: &CheckOptions) -> Outcome {
    let checks = checks::conformance_checks(opts);
    let refs: Vec<&Check> = checks.iter().filter(|c| CORE_RESTRICTIONS.contains(&c.name.as_str())).collect();
    let ok = refs.len() == CORE_RESTRICTIONS.len();
    let others = checks.iter().filter(|c| c.passed).count();
    from_checks(&refs, Some((ok, format!("{others}/{} registry maps conform", checks.len()))))
}

fn oracles(opts: &CheckOptions) -> (Outcome, Outcome) {
    let (checks, dt) = timed(|| checks::param_checks(opts));
    let b: Vec<&Check> = checks
        .iter()
        .filter(|c| ["phi2", "phi3", "det_tau", "tau_gram", "gamma", "conjugacy", "family_construction"].contains(&c.name.as_str()))
        .collect();
    let s: Vec<&Check> = checks.iter().filter(|c| c.name.starts_with("selector")).collect();
    (
        from_checks(&b, Some((dt < Duration::from_secs(30), format!("{} samples, {dt:.2?} (limit 30s)", checks::ORACLE_SAMPLES)))),
        from_checks(&s, Some((true, format!("{} random v", checks::ORACLE_SAMPLES)))),
    )
}

fn solving() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut times = Vec::new();
    let (mut ok, mut worst, mut regularized) = (0, 0.0f64, 0);
    for seed in 0..100 {
        let p = random_unit_disk_quintic(&mut rng);
        let (rep, dt) = timed(|| solve(&p, &SolveOptions { seed, ..Default::default() }));
        times.push(dt);
        if let Ok(rep) = rep {
            ok += 1;
            regularized += rep.regularized as usize;
            worst = rep.residuals.iter().cloned().fold(worst, f64::max);
        }
    }
    times.sort();
    let median = times[times.len() / 2];
    let want = [1.0, 2.0, 3.0, 4.0, 6.0];
    let known = solve(&Quintic::from_roots(&want.map(re)), &SolveOptions::default());
    let known_ok = known.as_ref().is_ok_and(|r| want.iter().all(|w| r.roots.iter().any(|z| (z - re(*w)).norm() < 1e-6)));
    Outcome {
        passed: ok >= 95 && worst < 1e-8 && median < Duration::from_secs(1) && known_ok,
        summary: format!(
            "{ok}/100 solved ({regularized} regularized), worst residual {worst:.2e}, median {median:.2?}, roots 1,2,3,4,6 {}",
            if known_ok { "recovered" } else { "NOT recovered" }
        ),
    }
}

fn dynamics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let opts = IterateOptions { max_iter: 500, ..Default::default() };
    let mut per_k = Vec::new();
    let mut hit = [false; 5];
    let mut failures = 0;
    while per_k.len() < 10 {
        let v = random_generic_v(&mut rng);
        let Ok((_, t, pp)) = family_at(&v) else {
            failures += 1;
            continue;
        };
        let fixed = conjugated_five_points(&t).unwrap();
        let mut good = 0;
        for _ in 0..100 {
            let Ok(w) = normalize(&random_vec4(&mut rng)) else { continue };
            if let Some((limit, _)) = run_phi_k(&pp, w, &opts) {
                if let Some(l) = fixed.iter().position(|p| chordal(p, &limit) < 1e-6) {
                    good += 1;
                    hit[l] = true;
                }
            }
        }
        per_k.push(good);
    }
    let total: usize = per_k.iter().sum();
    let min = *per_k.iter().min().unwrap();
    Outcome {
        passed: min >= 95 && hit.iter().all(|&h| h),
        summary: format!(
            "{total}/1000 starts converged, per K {per_k:?} (min {min}), fixed points hit {}/5, {failures} K draws rejected",
            hit.iter().filter(|&&h| h).count()
        ),
    }
}

fn portraits() -> Outcome {
    let describe = |c: &PortraitCheck| {
        format!(
            "{}: black {:.4}, basins {}, spread {:.4}, symmetry {:?}, {:.2?}",
            c.name,
            c.stats.black_fraction,
            c.stats.fractions.len(),
            c.spread,
            c.symmetry.iter().map(|a| (a * 1e4).round() / 1e4).collect::<Vec<_>>(),
            c.elapsed
        )
    };
    let mut passed = true;
    let mut parts = Vec::new();
    for r in [octahedral_portrait(720, 60), f6_plane_portrait(720, 60)] {
        match r {
            Ok(c) => {
                passed &= c.passed() && c.elapsed < Duration::from_secs(60) && c.portrait.grid.resolution == (720, 720);
                parts.push(describe(&c));
            }
            Err(e) => {
                passed = false;
                parts.push(e.to_string());
            }
        }
    }
    Outcome { passed, summary: parts.join("; ") }
}

fn main() {
    let opts = CheckOptions::default();
    let (b, selector) = oracles(&opts);
    let results = [
        ("1 group and orbit tables", group()),
        ("2 invariant identities", identities(&opts)),
        ("3 equivariance", equivariance(&opts)),
        ("4 restricted-map conformance", conformance(&opts)),
        ("5 parametrized-family oracles", b),
        ("6 root selector", selector),
        ("7 end-to-end solve", solving()),
        ("8 dynamics statistics", dynamics()),
        ("9 basin portraits", portraits()),
    ];
    let mut all = true;
    for (name, o) in &results {
        all &= o.passed;
        println!("{} criterion {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.summary);
    }
    if !all {
        std::process::exit(1);
    }
}
