//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_1_PI, PI};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use posreg::experiments::brute::BRUTE_FORCE_MAX_MODES;
use posreg::experiments::{
    brute_force_norms, lemma22_lower_bound, lemma23_row, properties, psi_plus_dual_norm,
    series_report, SeriesConfig, SeriesExponents, SpaceTimeGrid,
};
use posreg::families::{make_default_bump, TestFunctions};
use posreg::fem1d::{FemOperators, MassMode, Mesh1D, NodalFunction};
use posreg::parabolic::suite::{manufactured_error, observed_orders, positivity_suite};
use posreg::parabolic::{ibp_check, FieldFns};

const SEED: u64 = 20_240_601;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> posreg::Result<Verdict> {
    Ok(Verdict { pass, detail })
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ops_for_mode(n: usize) -> FemOperators {
    FemOperators::assemble(&Arc::new(Mesh1D::for_mode(n, 64).unwrap()))
}

fn cosine_norms() -> posreg::Result<Verdict> {
    let mut worst: f64 = 0.0;
    for n in [1, 2, 4, 8, 16, 32] {
        let ops = ops_for_mode(n);
        let psi = NodalFunction::interpolate(ops.mesh(), |x| (n as f64 * PI * x).cos())?;
        let k2 = (n as f64 * PI).powi(2);
        worst = worst
            .max(rel(ops.norm_v(&psi)?, ((k2 + 1.0) / 2.0).sqrt()))
            .max(rel(ops.norm_h(&psi)?, 0.5f64.sqrt()))
            .max(rel(
                ops.dual_norm_value(&psi)?,
                1.0 / (2.0 * (k2 + 1.0)).sqrt(),
            ));
    }
    verdict(
        worst <= 1e-3,
        format!("worst relative error {worst:.3e} (tol 1e-3)"),
    )
}

fn positive_part_bounds() -> posreg::Result<Verdict> {
    let mut min_pairing = f64::INFINITY;
    let mut min_dual = f64::INFINITY;
    let mut far_dev: f64 = 0.0;
    for n in 1..=128 {
        let ops = ops_for_mode(n);
        // Independent pairing: interpolate both factors directly.
        let tf = TestFunctions;
        let plus = NodalFunction::interpolate(ops.mesh(), |x| (n as f64 * PI * x).cos().max(0.0))?;
        let ve = NodalFunction::interpolate(ops.mesh(), |x| tf.v_e(x))?;
        let pairing = ops.inner_h(&plus, &ve)?;
        let library = lemma22_lower_bound(n, &ops)?.pairing;
        if rel(pairing, library) > 1e-12 {
            return verdict(
                false,
                format!("pairing mismatch at n = {n}: {pairing} vs {library}"),
            );
        }
        let dual = psi_plus_dual_norm(n, &ops)?;
        min_pairing = min_pairing.min(pairing);
        min_dual = min_dual.min(dual);
        if n >= 64 {
            far_dev = far_dev.max(rel(dual, FRAC_1_PI));
        }
    }
    verdict(
        min_pairing >= 0.029 && min_dual >= 0.01 && far_dev <= 0.02,
        format!(
            "min pairing {min_pairing:.5} (>= 0.029), min dual {min_dual:.5} (>= 0.01), max |dual - 1/pi|/(1/pi) for n >= 64 {far_dev:.3e} (<= 0.02)"
        ),
    )
}

fn bump_scalings() -> posreg::Result<Verdict> {
    let bump = make_default_bump();
    let mut worst: f64 = 0.0;
    let mut supports = true;
    for n in 1..=64usize {
        let k = (n * (n + 1)) as f64;
        let row = lemma23_row(&bump, n)?;
        let q = row.quadrature;
        let exact = [
            0.5,
            2.0 * k,
            k.sqrt() * (3.0f64 / 8.0).sqrt(),
            k.powf(1.5) * PI / 2f64.sqrt(),
        ];
        for (got, want) in [q.l1, q.deriv_l1, q.l2, q.deriv_l2].into_iter().zip(exact) {
            worst = worst.max(rel(got, want));
        }
        let (lo, hi) = row.support;
        supports &= rel(lo, 1.0 / (n + 1) as f64) < 1e-15
            && rel(hi, 1.0 / n as f64) < 1e-15
            && row.support_ok;
    }
    verdict(
        worst <= 1e-4 && supports,
        format!("worst relative error {worst:.3e} (tol 1e-4), supports inside (1/(n+1), 1/n): {supports}"),
    )
}

fn series_signature() -> posreg::Result<(Verdict, Verdict)> {
    let start = Instant::now();
    let report = series_report(128, &make_default_bump(), &SeriesConfig::default())?;
    let secs = start.elapsed().as_secs_f64();
    let v = report.verdict;
    let incs: Vec<f64> = report.octaves.iter().map(|o| o.increment).collect();
    let ks: Vec<usize> = report.octaves.iter().map(|o| o.k).collect();
    let shape = verdict(
        v.v_cauchy && v.dual_cauchy && v.plus_harmonic && ks == [8, 16, 32, 64] && secs < 300.0,
        format!(
            "last-octave share S_V {:.3e}, S_dual {:.3e} (<= 0.05); S_plus increments {incs:.4?} spread {:.3e} (<= 0.25); {secs:.1}s",
            v.v_last_octave, v.dual_last_octave, v.plus_octave_spread
        ),
    )?;
    let growth = report.plus_growth(8, 128);
    let ratio = verdict(
        growth >= 1.8,
        format!("S_plus(128)/S_plus(8) = {growth:.4} (>= 1.8)"),
    )?;
    Ok((shape, ratio))
}

fn brute_force_agreement() -> posreg::Result<Verdict> {
    let bump = make_default_bump();
    let cfg = SeriesConfig::default();
    let report = series_report(BRUTE_FORCE_MAX_MODES, &bump, &cfg)?;
    let mut worst: f64 = 0.0;
    for n in [1, 2, 4, 8] {
        let grid = SpaceTimeGrid::for_modes(n, 16)?;
        let b = brute_force_norms(n, &bump, &SeriesExponents::default(), &grid)?;
        let (sv, sd, sp) = report.partial_sums(n);
        worst = worst
            .max(rel(b.s_v, sv))
            .max(rel(b.s_dual, sd))
            .max(rel(b.s_plus, sp));
    }
    verdict(
        worst <= 0.01,
        format!("worst relative difference {worst:.3e} (tol 1e-2)"),
    )
}

fn ibp_ramp() -> posreg::Result<Verdict> {
    let ops = FemOperators::assemble(&Arc::new(Mesh1D::new(16)?));
    let field = FieldFns(|t: f64, _x: f64| 2.0 * t - 1.0, |_t: f64, _x: f64| 2.0);
    let at = ibp_check(&field, &ops, 1e-4, 1.0, MassMode::Lumped)?
        .residual
        .abs();
    let taus: Vec<f64> = [101, 1001, 10001].iter().map(|&c| 1.0 / c as f64).collect();
    let residuals = taus
        .iter()
        .map(|&t| ibp_check(&field, &ops, t, 1.0, MassMode::Lumped).map(|r| r.residual.abs()))
        .collect::<posreg::Result<Vec<_>>>()?;
    // Oracle: the midpoint rule misses exactly the triangle τ²/2 around the
    // kink of (2t − 1)⁺ when t = 1/2 is a cell midpoint.
    for (t, r) in taus.iter().zip(&residuals) {
        if rel(*r, t * t / 2.0) > 1e-6 {
            return verdict(
                false,
                format!("residual {r:e} at tau {t:e} differs from tau^2/2"),
            );
        }
    }
    let order = residuals
        .windows(2)
        .zip(taus.windows(2))
        .map(|(r, t)| (r[0] / r[1]).ln() / (t[0] / t[1]).ln())
        .fold(f64::INFINITY, f64::min);
    verdict(
        at <= 1e-6 && order >= 0.9,
        format!("residual at tau = 1e-4 {at:.3e} (<= 1e-6), observed order {order:.3} (>= 0.9)"),
    )
}

fn positivity() -> posreg::Result<Verdict> {
    let runs = positivity_suite(SEED, 20, 1.0, MassMode::Lumped)?;
    let min = runs
        .iter()
        .map(|r| r.min_value)
        .fold(f64::INFINITY, f64::min);
    let ledger = runs.iter().map(|r| r.ledger_max).fold(0.0, f64::max);
    verdict(
        runs.len() == 20 && min >= -1e-12 && ledger <= 1e-20,
        format!(
            "{} instances, min nodal {min:.3e} (>= -1e-12), max ledger {ledger:.3e} (<= 1e-20)",
            runs.len()
        ),
    )
}

fn manufactured() -> posreg::Result<Verdict> {
    let temporal = [10, 20, 40]
        .iter()
        .map(|&s| manufactured_error(512, s, 0.1, 1.0, MassMode::Lumped))
        .collect::<posreg::Result<Vec<_>>>()?;
    let spatial = [8, 16, 32]
        .iter()
        .map(|&m| manufactured_error(m, 50_000, 0.1, 1.0, MassMode::Lumped))
        .collect::<posreg::Result<Vec<_>>>()?;
    let t = observed_orders(&temporal)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let s = observed_orders(&spatial)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    verdict(
        t >= 0.9 && s >= 1.8,
        format!("temporal order {t:.3} (>= 0.9), spatial order {s:.3} (>= 1.8)"),
    )
}

fn property_suites() -> posreg::Result<Verdict> {
    let outcomes = properties::run_all(SEED, 100)?;
    let names = [
        "duality_ordering",
        "clamp_stiffness_monotone",
        "clamp_lumped_nonexpansive",
        "mass_conservation",
        "determinism",
    ];
    let covered = names.iter().all(|n| outcomes.iter().any(|o| o.name == *n));
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.holds || o.cases < 100)
        .map(|o| o.name)
        .collect();
    verdict(
        covered && failed.is_empty(),
        format!("{} suites x 100 cases; failing: {failed:?}", outcomes.len()),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, posreg::Result<Verdict>)> = vec![
        ("1 cosine mode norms", cosine_norms()),
        (
            "2 positive-part pairing and dual norm",
            positive_part_bounds(),
        ),
        ("3 rescaled bump scalings", bump_scalings()),
    ];
    match series_signature() {
        Ok((shape, ratio)) => {
            results.push(("4a series convergence and harmonic increments", Ok(shape)));
            results.push(("4b S_plus growth ratio", Ok(ratio)));
        }
        Err(e) => results.push(("4 series signature", Err(e))),
    }
    results.push(("5 brute force vs ledger", brute_force_agreement()));
    results.push(("6 integration by parts", ibp_ramp()));
    results.push(("7 positivity suite", positivity()));
    results.push(("8 manufactured solution orders", manufactured()));
    results.push(("9 property suites", property_suites()));

    let mut failures = 0;
    for (name, r) in &results {
        let (pass, detail) = match r {
            Ok(v) => (v.pass, v.detail.clone()),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {name}: {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        results.len() - failures,
        results.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
