//! Acceptance suite: one criterion per section, each printed as a single
//! pass/fail line with its measured runtime against the pinned budget.
//! All comparisons are exact integer equalities.

use std::process::Command;
use std::time::{Duration, Instant};
use strathom::coeff::Int;
use strathom::fixtures;
use strathom::perversity::Perversity;
use strathom::verify::{
    check_blowup_formula, check_cone_formula, check_duality, run_suite, HarnessConfig, Suite,
};

struct Criterion {
    name: &'static str,
    budget: Duration,
    passed: bool,
    elapsed: Duration,
    detail: String,
}

fn finish(
    name: &'static str,
    budget_secs: u64,
    started: Instant,
    passed: bool,
    detail: String,
) -> Criterion {
    Criterion {
        name,
        budget: Duration::from_secs(budget_secs),
        passed,
        elapsed: started.elapsed(),
        detail,
    }
}

/// 1. Cone formula with torsion on S^1, the 2-sphere, the torus and the
///    projective plane, over every apex value in range.
fn criterion_cone(config: &HarnessConfig) -> Criterion {
    let started = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for name in ["circle", "sphere", "torus", "rp2"] {
        let s = fixtures::fixture(name).unwrap();
        let p = Perversity::zero(&s);
        let apex_codim = s.n() as i64 + 1;
        for a in 0..=apex_codim - 2 {
            let r =
                check_cone_formula(name, &s, &p, "zero", a, config.cone_subdivisions).unwrap();
            if !r.pass {
                ok = false;
                detail = format!("{name} apex={a} fails");
            }
            if name == "rp2" {
                // pinned torsion behavior: Z/2 in degree 1 at apex value 0,
                // nothing at apex value 1
                let row = &r.rows[1];
                let expected = if a == 0 { "0+Z/2" } else { "0" };
                if row.computed != expected {
                    ok = false;
                    detail = format!("rp2 apex={a}: degree 1 is {}", row.computed);
                }
            }
        }
    }
    finish("1 cone formula", 30, started, ok, detail)
}

/// 2. The projection X × I → X induces isomorphisms on IH for every
///    fixture and both extreme perversities.
fn criterion_product(config: &HarnessConfig) -> Criterion {
    let started = Instant::now();
    let reports = run_suite(Suite::Product, config, None).unwrap();
    let ok = !reports.is_empty() && reports.iter().all(|r| r.pass);
    let detail = format!("{} product checks", reports.len());
    finish("2 product invariance", 60, started, ok, detail)
}

/// 3. Dual-perversity rank symmetry on the suspended torus for both pole
///    values in range.
fn criterion_duality(config: &HarnessConfig) -> Criterion {
    let started = Instant::now();
    let s = fixtures::fixture("sigma-t2").unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for (p_name, p) in [
        ("zero", Perversity::zero(&s)),
        ("top", Perversity::top(&s)),
    ] {
        let r =
            check_duality("sigma-t2", &s, &p, p_name, config.duality_subdivisions).unwrap();
        if !r.pass {
            ok = false;
            detail = format!("{p_name} fails");
        }
    }
    finish("3 duality on sigma-t2", 60, started, ok, detail)
}

/// 4. Blow-up boundary formula, exhaustive over the decompositions of
///    simplices of dimension up to five, with exact-rational spot checks.
fn criterion_blowup(config: &HarnessConfig) -> Criterion {
    let started = Instant::now();
    let r = check_blowup_formula(5, config.samples, config.seed).unwrap();
    finish(
        "4 blow-up boundary formula",
        30,
        started,
        r.pass,
        format!("{} rows", r.rows.len()),
    )
}

/// 5. Finite-quotient invariants: antipodal octahedron and the torus
///    rotation for ordinary homology, the pole swap for IH.
fn criterion_quotient(config: &HarnessConfig) -> Criterion {
    let started = Instant::now();
    let reports = run_suite(Suite::Quotient, config, None).unwrap();
    let ok = reports.len() == 5 && reports.iter().all(|r| r.pass);
    finish(
        "5 quotient invariants",
        120,
        started,
        ok,
        format!("{} actions checked", reports.len()),
    )
}

/// 6. Monotonicity of IC in the perversity and agreement with ordinary
///    homology for very large perversities.
fn criterion_extremes(config: &HarnessConfig) -> Criterion {
    let started = Instant::now();
    let reports = run_suite(Suite::Extremes, config, None).unwrap();
    let ok = !reports.is_empty() && reports.iter().all(|r| r.pass);
    finish(
        "6 monotonicity and extremes",
        30,
        started,
        ok,
        format!("{} fixtures", reports.len()),
    )
}

/// 7. IH identical between two and three barycentric subdivisions on
///    every fixture.
fn criterion_subdivision(config: &HarnessConfig) -> Criterion {
    let started = Instant::now();
    let reports = run_suite(Suite::Subdivision, config, None).unwrap();
    let ok = !reports.is_empty() && reports.iter().all(|r| r.pass);
    finish(
        "7 subdivision stability",
        120,
        started,
        ok,
        format!("{} fixture/perversity pairs", reports.len()),
    )
}

/// 8. Well-formedness: randomized boundary-of-boundary, integer Betti
///    numbers equal rational ranks, and byte-identical CLI output.
fn criterion_wellformed(config: &HarnessConfig) -> Criterion {
    let started = Instant::now();
    let reports = run_suite(Suite::Wellformed, config, None).unwrap();
    let mut ok = !reports.is_empty() && reports.iter().all(|r| r.pass);
    let mut detail = format!("{} fixtures", reports.len());

    let exe = env!("CARGO_BIN_EXE_strathom");
    let invocations: [&[&str]; 4] = [
        &["compute", "--fixture", "cone-rp2", "--perversity", "zero", "--json"],
        &["verify", "cone"],
        &["construct", "cone", "--fixture", "circle", "--apex", "w"],
        &["fixtures", "list"],
    ];
    for args in invocations {
        let run = |()| {
            Command::new(exe)
                .args(args)
                .output()
                .expect("binary runs")
        };
        let a = run(());
        let b = run(());
        if !a.status.success() || a.stdout != b.stdout {
            ok = false;
            detail = format!("non-deterministic output for {args:?}");
        }
    }

    // torsion-free checks already asserted per fixture; record one explicit
    // integer-vs-rational comparison on the projective plane
    let s = fixtures::fixture("rp2").unwrap();
    let p = Perversity::zero(&s);
    let hz = strathom::ih::intersection_homology(&s, &p, 0, false);
    let hq = strathom::ih::intersection_homology(&s, &p, 0, true);
    if hz.betti() != hq.betti() || hz.degrees[1].torsion != vec![Int::from(2)] {
        ok = false;
        detail = "rp2 torsion mismatch".into();
    }
    finish("8 well-formedness", 60, started, ok, detail)
}

#[test]
fn acceptance() {
    let config = HarnessConfig::default();
    let criteria = [
        criterion_cone(&config),
        criterion_product(&config),
        criterion_duality(&config),
        criterion_blowup(&config),
        criterion_quotient(&config),
        criterion_extremes(&config),
        criterion_subdivision(&config),
        criterion_wellformed(&config),
    ];
    let mut all_ok = true;
    for c in &criteria {
        let in_budget = c.elapsed <= c.budget;
        let verdict = if c.passed && in_budget { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] criterion {}: {:.2}s of {}s budget{}{}",
            c.name,
            c.elapsed.as_secs_f64(),
            c.budget.as_secs(),
            if c.detail.is_empty() { "" } else { " — " },
            c.detail
        );
        if !(c.passed && in_budget) {
            all_ok = false;
        }
    }
    assert!(all_ok, "acceptance criteria failed");
}
