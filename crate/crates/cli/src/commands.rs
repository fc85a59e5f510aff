//! The four sub-commands and their report assembly.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use threeballs_core::field::{eigen_residual, laplacian_identity_residual, sample_ball};
use threeballs_core::frequency::{
    hprime_residual_five_point, hprime_residual_from_values, monotonicity_from_profile,
    profile_from_values, radius_grid, require_eigen, FrequencyEngine,
};
use threeballs_core::theorem::{
    check_h_bounds, check_mean_value, check_three_balls_l2, check_three_balls_linf_eigen,
    check_three_balls_linf_monogenic, moser_fit,
};
use threeballs_core::{
    DriftPolynomial, FrequencyConfig, FrequencyProfile, InequalityReport, Point, TheoremConfig,
};

use crate::config::{NamedField, RunConfig};
use crate::report::{describe, write_csv, write_json, write_profile_csv, ReportRow};
use crate::{CliError, ExitStatus};

/// Where and how to write results.
#[derive(Clone, Debug, Default)]
pub struct OutputOptions {
    pub out: Option<PathBuf>,
    pub json: bool,
    pub csv: bool,
    /// Print one line per row to stdout.
    pub verbose: bool,
}

/// Rows and profiles produced by a command.
#[derive(Debug, Default)]
pub struct Outcome {
    pub rows: Vec<ReportRow>,
    pub profiles: Vec<(String, FrequencyProfile<f64>)>,
    /// `(job, error)` for jobs that could not complete.
    pub errors: Vec<(String, CliError)>,
}

impl Outcome {
    pub fn status(&self) -> ExitStatus {
        let mut s = ExitStatus::Pass;
        if self.rows.iter().any(ReportRow::fails) {
            s = ExitStatus::CheckFailed;
        }
        for (_, e) in &self.errors {
            s = s.worst(e.status());
        }
        s
    }

    fn absorb(&mut self, other: Outcome) {
        self.rows.extend(other.rows);
        self.profiles.extend(other.profiles);
        self.errors.extend(other.errors);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyEigen,
    FrequencyScan,
    ThreeBalls,
    Suite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyEigen => "verify-eigen",
            Command::FrequencyScan => "frequency-scan",
            Command::ThreeBalls => "three-balls",
            Command::Suite => "suite",
        }
    }
}

/// Runs a command, writes its outputs and returns the exit status.
pub fn run(command: Command, cfg: &RunConfig, opts: &OutputOptions) -> ExitStatus {
    match run_inner(command, cfg, opts) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            e.status()
        }
    }
}

fn run_inner(
    command: Command,
    cfg: &RunConfig,
    opts: &OutputOptions,
) -> Result<ExitStatus, CliError> {
    cfg.validate()?;
    let out = opts.out.clone().or_else(|| cfg.out.clone());
    if let Some(dir) = &out {
        if !dir.is_dir() {
            return Err(CliError::Config(format!(
                "output directory {} does not exist",
                dir.display()
            )));
        }
    }
    let outcome = match command {
        Command::VerifyEigen => cmd_verify_eigen(cfg)?,
        Command::FrequencyScan => cmd_frequency_scan(cfg)?,
        Command::ThreeBalls => cmd_three_balls(cfg)?,
        Command::Suite => cmd_suite(cfg)?,
    };
    if let Some(dir) = &out {
        let (json, csv) = if opts.json || opts.csv {
            (opts.json, opts.csv)
        } else {
            (true, true)
        };
        let stem = command.name().replace('-', "_");
        if csv {
            write_csv(&dir.join(format!("{stem}.csv")), &outcome.rows)?;
            for (name, profile) in &outcome.profiles {
                write_profile_csv(&dir.join(format!("profile_{name}.csv")), profile)?;
            }
        }
        if json {
            write_json(&dir.join(format!("{stem}.json")), &outcome.rows)?;
        }
    }
    if opts.verbose {
        for row in &outcome.rows {
            println!("{}", describe(row));
        }
    }
    for (job, e) in &outcome.errors {
        eprintln!("error in {job}: {e}");
    }
    let failed = outcome.rows.iter().filter(|r| r.fails()).count();
    let status = outcome.status();
    println!(
        "{}: {} checks, {} failed, {} errors, exit {}",
        command.name(),
        outcome.rows.len(),
        failed,
        outcome.errors.len(),
        status.code()
    );
    Ok(status)
}

/// Runs one job per field, in parallel unless `deterministic`, and
/// concatenates the outcomes in field order.
fn per_field(
    cfg: &RunConfig,
    fields: &[NamedField],
    job: impl Fn(usize, &NamedField) -> Result<Outcome, CliError> + Sync,
) -> Outcome {
    let run = |(i, f): (usize, &NamedField)| match job(i, f) {
        Ok(o) => o,
        Err(e) => Outcome {
            errors: vec![(f.name.clone(), e)],
            ..Outcome::default()
        },
    };
    let parts: Vec<Outcome> = if cfg.deterministic {
        fields.iter().enumerate().map(run).collect()
    } else {
        fields.par_iter().enumerate().map(run).collect()
    };
    let mut all = Outcome::default();
    for p in parts {
        all.absorb(p);
    }
    all
}

/// A per-field RNG independent of scheduling order.
fn field_rng(cfg: &RunConfig, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn bound_report(label: &str, value: f64, tolerance: f64) -> InequalityReport {
    InequalityReport::new(label, value, tolerance, 0.0, 0.0)
}

fn eigen_rows(cfg: &RunConfig, index: usize, f: &NamedField) -> Result<Vec<ReportRow>, CliError> {
    let mut rng = field_rng(cfg, index);
    let pts = sample_ball(f.n(), cfg.samples, 1.0, &mut rng);
    let res = eigen_residual(&f.field, f.spec, &pts)?;
    let lap = laplacian_identity_residual(&f.field, f.spec, &pts)?;
    let tol = cfg.tolerances.residual;
    Ok(vec![
        ReportRow::from_report(
            &bound_report("eigen_residual", res, tol),
            f,
            cfg.alpha,
            None,
        ),
        ReportRow::from_report(
            &bound_report("laplacian_identity", lap, tol),
            f,
            cfg.alpha,
            None,
        ),
    ])
}

/// Residuals `|Du - λu|` and of the componentwise Laplacian identity.
pub fn cmd_verify_eigen(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fields = cfg.fields()?;
    Ok(per_field(cfg, &fields, |i, f| {
        Ok(Outcome {
            rows: eigen_rows(cfg, i, f)?,
            ..Outcome::default()
        })
    }))
}

fn frequency_config(
    cfg: &RunConfig,
    f: &NamedField,
    radii: Vec<f64>,
) -> Result<FrequencyConfig<f64>, CliError> {
    Ok(FrequencyConfig::new(f.n(), cfg.alpha, f.spec, radii)?
        .with_orders(cfg.orders)
        .with_tolerance(cfg.tolerances.quadrature))
}

fn grid(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    Ok(radius_grid(
        cfg.grid.min,
        cfg.grid.max,
        cfg.grid.count,
        cfg.grid.spacing,
    )?)
}

/// Profile plus monotonicity, divergence identity and (for homogeneous
/// monogenic fields) constancy of `N`.
fn frequency_rows(cfg: &RunConfig, f: &NamedField, extended: bool) -> Result<Outcome, CliError> {
    let radii = grid(cfg)?;
    let fcfg = frequency_config(cfg, f, radii.clone())?;
    require_eigen(&f.field, f.spec, *radii.last().expect("grid is nonempty"))?;
    let engine = FrequencyEngine::from_config(&f.field, &fcfg)?;
    let vals = engine.over(&radii)?;
    let profile = profile_from_values(&vals, &fcfg)?;
    let report = monotonicity_from_profile(profile.clone());

    let mut rows = Vec::new();
    let (worst, _) = report
        .increments
        .iter()
        .zip(&report.slacks)
        .enumerate()
        .map(|(i, (inc, s))| (i, -inc - s))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let (decrease, slack) = match report.increments.get(worst) {
        Some(inc) => (-inc, report.slacks[worst]),
        None => (0.0, 0.0),
    };
    let mut mono = InequalityReport::new("monotonicity", decrease, slack, 0.0, 0.0)
        .with_constant("min_increment", report.min_increment)
        .with_constant("violations", report.violations.len() as f64)
        .with_constant("worst_r", profile.rows.get(worst).map_or(0.0, |r| r.r));
    if let Some(p) = &profile.drift {
        mono = mono
            .with_constant("a", p.a)
            .with_constant("b", p.b)
            .with_constant("c", p.c);
    }
    if let Some(m) = report.theorem_variant_min_increment {
        mono = mono.with_constant("theorem_variant_min_increment", m);
    }
    rows.push(ReportRow::from_report(&mono, f, cfg.alpha, None));

    if extended {
        let div = vals
            .iter()
            .map(|v| {
                let d = (v.i - v.div).abs();
                if d == 0.0 {
                    0.0
                } else {
                    d / v.i.abs().max(v.h * f64::EPSILON)
                }
            })
            .fold(0.0, f64::max);
        rows.push(ReportRow::from_report(
            &bound_report("divergence_identity", div, cfg.tolerances.divergence),
            f,
            cfg.alpha,
            None,
        ));
        if f.lambda() == 0.0 {
            if let Some(k) = f.field.homogeneous_degree() {
                let target = 2.0 * (cfg.alpha + 1.0) * k as f64;
                let dev = profile
                    .rows
                    .iter()
                    .map(|r| (r.n - target).abs() / target.max(1.0))
                    .fold(0.0, f64::max);
                let rep = bound_report("frequency_constant", dev, cfg.tolerances.frequency)
                    .with_constant("expected_N", target)
                    .with_constant("degree", k as f64);
                rows.push(ReportRow::from_report(&rep, f, cfg.alpha, None));
            }
        }
    }
    Ok(Outcome {
        rows,
        profiles: vec![(f.name.clone(), profile)],
        errors: Vec::new(),
    })
}

/// Frequency profiles and the monotonicity verdict per field.
pub fn cmd_frequency_scan(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fields = cfg.fields()?;
    Ok(per_field(cfg, &fields, |_, f| {
        frequency_rows(cfg, f, false)
    }))
}

fn theorem_config(cfg: &RunConfig) -> Result<TheoremConfig<f64>, CliError> {
    let mut t = TheoremConfig::new(cfg.alpha)?;
    t.base_orders = cfg.orders;
    t.rel_tol = cfg.tolerances.quadrature;
    t.sup_density = cfg.sup_density;
    Ok(t)
}

/// Applies the `constant_scale` test hook to a three-balls report.
fn scaled(mut rep: InequalityReport, scale: Option<f64>) -> InequalityReport {
    if let Some(s) = scale {
        let fresh = InequalityReport::new(
            rep.label.clone(),
            rep.lhs,
            rep.rhs * s,
            rep.slack,
            rep.quad_error,
        );
        rep.rhs = fresh.rhs;
        rep.margin = fresh.margin;
        rep.pass = if rep.informational {
            rep.pass
        } else {
            fresh.pass
        };
        rep.constants.insert("constant_scale".into(), s);
    }
    rep
}

fn three_balls_rows(cfg: &RunConfig, f: &NamedField) -> Result<Vec<ReportRow>, CliError> {
    let tcfg = theorem_config(cfg)?;
    let mut rows = Vec::new();
    for t in cfg.triples() {
        let rep = check_three_balls_l2(&f.field, f.spec, t, &tcfg)?;
        rows.push(ReportRow::from_report(
            &scaled(rep, cfg.constant_scale),
            f,
            cfg.alpha,
            Some(t),
        ));
        if f.lambda() == 0.0 {
            for rep in check_three_balls_linf_monogenic(&f.field, t, &tcfg)? {
                rows.push(ReportRow::from_report(
                    &scaled(rep, cfg.constant_scale),
                    f,
                    cfg.alpha,
                    Some(t),
                ));
            }
        }
    }
    if f.lambda() != 0.0 {
        let t = cfg.unit_triple();
        let rep = check_three_balls_linf_eigen(&f.field, f.spec, t, &tcfg)?;
        rows.push(ReportRow::from_report(&rep, f, cfg.alpha, Some(t)));
    }
    Ok(rows)
}

/// Three-balls inequalities (L², and `L∞` variants) for every field and triple.
pub fn cmd_three_balls(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fields = cfg.fields()?;
    Ok(per_field(cfg, &fields, |_, f| {
        Ok(Outcome {
            rows: three_balls_rows(cfg, f)?,
            ..Outcome::default()
        })
    }))
}

fn hprime_rows(cfg: &RunConfig, f: &NamedField) -> Result<Vec<ReportRow>, CliError> {
    let step = cfg.hprime_step;
    let n1 = f.n() + 1;
    let (mut five, mut fine, mut coarse) = (0.0f64, 0.0f64, 0.0f64);
    for &r in &cfg.hprime_radii {
        let radii: Vec<f64> = (-2..=2).map(|k| r + k as f64 * step).collect();
        let fcfg = frequency_config(cfg, f, radii.clone())?;
        let vals = FrequencyEngine::from_config(&f.field, &fcfg)?.over(&radii)?;
        five = five.max(hprime_residual_five_point(&vals, cfg.alpha, n1)?);
        fine = fine.max(hprime_residual_from_values(&vals[1..4], cfg.alpha, n1));
        let wide = [vals[0], vals[2], vals[4]];
        coarse = coarse.max(hprime_residual_from_values(&wide, cfg.alpha, n1));
    }
    let main = bound_report("hprime_identity", five, cfg.tolerances.hprime)
        .with_constant("step", step)
        .with_constant("central_residual", fine);
    // Central differences converge at second order: halving the step should
    // divide the residual by about 4.
    let ratio = if fine > 0.0 { coarse / fine } else { f64::NAN };
    let mut order = InequalityReport::new("hprime_order", ratio, 4.0, 0.0, 0.0)
        .with_constant("residual_step", fine)
        .with_constant("residual_double_step", coarse)
        .informational();
    order.pass = ratio.is_finite() && (2.5..6.5).contains(&ratio);
    Ok(vec![
        ReportRow::from_report(&main, f, cfg.alpha, None),
        ReportRow::from_report(&order, f, cfg.alpha, None),
    ])
}

fn drift_rows(cfg: &RunConfig, f: &NamedField) -> Result<Vec<ReportRow>, CliError> {
    if f.lambda() == 0.0 {
        return Ok(Vec::new());
    }
    let p = DriftPolynomial::new(f.spec, cfg.alpha, f.n() + 1)?;
    let res = [0.3, 1.0, 2.0]
        .iter()
        .map(|&r| p.ode_residual(r))
        .fold(0.0, f64::max);
    let rep = bound_report("drift_ode", res, cfg.tolerances.drift)
        .with_constant("a", p.a)
        .with_constant("b", p.b)
        .with_constant("c", p.c);
    Ok(vec![ReportRow::from_report(&rep, f, cfg.alpha, None)])
}

fn section4_rows(
    cfg: &RunConfig,
    index: usize,
    f: &NamedField,
) -> Result<Vec<ReportRow>, CliError> {
    let tcfg = theorem_config(cfg)?;
    let mut rows = Vec::new();
    for &r in &cfg.h_radii {
        for rep in check_h_bounds(&f.field, r, &tcfg)? {
            rows.push(ReportRow::from_report(&rep, f, cfg.alpha, None));
        }
    }
    if f.lambda() == 0.0 && cfg.mean_value_centers > 0 {
        let mut rng = field_rng(cfg, index);
        let _ = rng.gen::<u64>();
        let radius = cfg.mean_value_radius;
        let centers = sample_ball(f.n(), cfg.mean_value_centers, 1.0 - radius, &mut rng);
        let mut worst: Option<(InequalityReport, Point<f64>)> = None;
        for c in centers {
            let rep = check_mean_value(&f.field, &c, radius, &tcfg)?;
            if worst.as_ref().is_none_or(|(w, _)| rep.margin < w.margin) {
                worst = Some((rep, c));
            }
        }
        if let Some((mut rep, c)) = worst {
            rep.constants
                .insert("centers".into(), cfg.mean_value_centers as f64);
            for (j, x) in c.coords().iter().enumerate() {
                rep.constants.insert(format!("worst_x{j}"), *x);
            }
            rows.push(ReportRow::from_report(&rep, f, cfg.alpha, None));
        }
    }
    let pairs: Vec<(f64, f64)> = cfg.moser_pairs.iter().map(|p| (p[0], p[1])).collect();
    if !pairs.is_empty() {
        let m = moser_fit(&f.field, f.spec, &pairs, &tcfg)?;
        let mut rep = InequalityReport::new("moser_fit", m, m, 0.0, 0.0).informational();
        rep.pass = m.is_finite() && m > 0.0;
        rows.push(ReportRow::from_report(&rep, f, cfg.alpha, None));
    }
    Ok(rows)
}

/// Everything: residuals, identities, monotonicity, `h` bounds, mean value,
/// three-balls inequalities and the Moser fit.
pub fn cmd_suite(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fields = cfg.fields()?;
    Ok(per_field(cfg, &fields, |i, f| {
        let mut out = Outcome {
            rows: eigen_rows(cfg, i, f)?,
            ..Outcome::default()
        };
        out.rows.extend(drift_rows(cfg, f)?);
        out.absorb(frequency_rows(cfg, f, true)?);
        out.rows.extend(hprime_rows(cfg, f)?);
        out.rows.extend(section4_rows(cfg, i, f)?);
        out.rows.extend(three_balls_rows(cfg, f)?);
        Ok(out)
    }))
}
