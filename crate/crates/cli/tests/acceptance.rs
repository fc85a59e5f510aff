//! Acceptance criteria 1-13, one line each. Exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::beta::beta;
use statrs::function::gamma::gamma;
use threeballs_cli::commands::{cmd_frequency_scan, cmd_suite, cmd_three_balls, cmd_verify_eigen};
use threeballs_cli::config::RunConfig;
use threeballs_cli::report::ReportRow;
use threeballs_core::field::families;
use threeballs_core::frequency::{compute_n, hprime_identity_residual};
use threeballs_core::theorem::{check_mean_value, check_three_balls_linf_eigen, moser_fit};
use threeballs_core::{
    BladeIndex, DriftPolynomial, EigenSpec, FrequencyConfig, Multivector, Point, QuadOrders,
    RadiiTriple, TheoremConfig, UnitBallRule,
};

struct Criterion {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    f: impl FnOnce() -> (bool, String),
) -> Criterion {
    let start = Instant::now();
    let (ok, mut detail) = f();
    let elapsed = start.elapsed();
    let mut pass = ok;
    if let Some(limit) = limit {
        if elapsed > limit {
            pass = false;
            detail.push_str(&format!("; exceeded {} s", limit.as_secs()));
        }
    }
    Criterion {
        id,
        name,
        pass,
        detail,
        elapsed,
    }
}

/// Like [`timed`], charging `setup` (shared work done beforehand) to the criterion.
fn timed_after(
    setup: Duration,
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    f: impl FnOnce() -> (bool, String),
) -> Criterion {
    let mut c = timed(id, name, None, f);
    c.elapsed += setup;
    if let Some(limit) = limit {
        if c.elapsed > limit {
            c.pass = false;
            c.detail
                .push_str(&format!("; exceeded {} s", limit.as_secs()));
        }
    }
    c
}

fn word_product(a: &[usize], b: &[usize]) -> (i64, Vec<usize>) {
    let mut w: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let mut out = Vec::new();
    let mut k = 0;
    while k < w.len() {
        if k + 1 < w.len() && w[k] == w[k + 1] {
            sign = -sign;
            k += 2;
        } else {
            out.push(w[k]);
            k += 1;
        }
    }
    (sign, out)
}

fn clifford() -> (bool, String) {
    let mut ok = true;
    for n in 1..=6 {
        for i in 1..=n {
            for j in 1..=n {
                let ei = Multivector::<i64>::basis(n, i).unwrap();
                let ej = Multivector::<i64>::basis(n, j).unwrap();
                let s = ei
                    .geometric_product(&ej)
                    .unwrap()
                    .try_add(&ej.geometric_product(&ei).unwrap())
                    .unwrap();
                ok &= s == Multivector::scalar(n, if i == j { -2 } else { 0 });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6usize);
        let mut random = || {
            let terms: Vec<(BladeIndex, i64)> = (0..rng.gen_range(1..8))
                .map(|_| {
                    (
                        BladeIndex::from_bits(rng.gen_range(0..1u16 << n)),
                        rng.gen_range(-9..=9),
                    )
                })
                .collect();
            Multivector::from_terms(n, terms).unwrap()
        };
        let (x, y) = (random(), random());
        let mut oracle = Vec::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let (s, w) = word_product(
                    &a.generators().collect::<Vec<_>>(),
                    &b.generators().collect::<Vec<_>>(),
                );
                oracle.push((BladeIndex::from_generators(&w, n).unwrap(), s * ca * cb));
            }
        }
        if x.geometric_product(&y).unwrap() != Multivector::from_terms(n, oracle).unwrap() {
            mismatches += 1;
        }
    }
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let coords: Vec<f64> = (0..rng.gen_range(2..=7))
            .map(|_| rng.gen_range(-3.0..3.0))
            .collect();
        let x = Multivector::paravector(&coords).unwrap();
        let p = x
            .geometric_product(&x.paravector_inverse().unwrap())
            .unwrap();
        worst = worst.max(p.max_abs_diff(&Multivector::one(x.dim())));
    }
    let pass = ok && mismatches == 0 && worst <= 1e-12;
    (pass, format!("relations exact: {ok}, oracle mismatches: {mismatches}/1000, inverse residual {worst:.1e}"))
}

fn rows<'a>(rows: &'a [ReportRow], check: &str) -> impl Iterator<Item = &'a ReportRow> + 'a {
    let check = check.to_string();
    rows.iter().filter(move |r| r.check == check)
}

fn worst_lhs(rows: &[ReportRow], check: &str) -> f64 {
    self::rows(rows, check).map(|r| r.lhs).fold(0.0, f64::max)
}

fn min_margin(rows: &[ReportRow], check: &str) -> (f64, usize, bool) {
    let sel: Vec<_> = self::rows(rows, check).collect();
    let min = sel.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    (min, sel.len(), sel.iter().all(|r| r.pass))
}

fn quadrature() -> (bool, String) {
    let mut worst = 0.0f64;
    for n1 in [3u32, 4] {
        for alpha in [2u32, 3] {
            let rule =
                UnitBallRule::<f64>::new(n1 as usize, QuadOrders::uniform(alpha as usize + 4))
                    .unwrap();
            for r in [0.5, 1.0, 2.0] {
                let center = vec![0.0; n1 as usize];
                let got = rule
                    .on_ball(&center, r)
                    .unwrap()
                    .integrate(|x| {
                        (r * r - x.iter().map(|v| v * v).sum::<f64>()).powi(alpha as i32)
                    })
                    .unwrap();
                let sigma =
                    2.0 * std::f64::consts::PI.powf(n1 as f64 / 2.0) / gamma(n1 as f64 / 2.0);
                let want = sigma
                    * r.powi(2 * alpha as i32 + n1 as i32)
                    * beta(n1 as f64 / 2.0, alpha as f64 + 1.0)
                    / 2.0;
                worst = worst.max((got - want).abs() / want);
            }
        }
    }
    (worst <= 1e-10, format!("max relative error {worst:.1e}"))
}

fn hprime() -> (bool, String) {
    let fields = [
        (families::constant(Multivector::one(2)), 0.0),
        (families::fueter(2, 1).unwrap(), 0.0),
        (
            families::exp_constant(1.0, Multivector::one(2)).unwrap(),
            1.0,
        ),
    ];
    let mut worst = 0.0f64;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for (u, lambda) in fields {
        for r in [0.5, 1.0] {
            let res = |h: f64| {
                let cfg = FrequencyConfig::new(
                    2,
                    2.0,
                    EigenSpec::new(lambda).unwrap(),
                    vec![r - h, r, r + h],
                )
                .unwrap();
                hprime_identity_residual(&u, &cfg).unwrap()
            };
            let fine = res(1e-3);
            let ratio = res(2e-3) / fine;
            worst = worst.max(fine);
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    let pass = worst <= 1e-4 && lo > 3.5 && hi < 4.5;
    (
        pass,
        format!("max residual {worst:.2e} at dr = 1e-3, halving ratio in [{lo:.3}, {hi:.3}]"),
    )
}

fn frequency_values() -> (bool, String) {
    let fields = [
        (families::fueter(2, 1).unwrap(), 1),
        (families::fueter(3, 3).unwrap(), 1),
        (families::fueter_symmetric(2, &[1, 2]).unwrap(), 2),
        (families::fueter_symmetric(3, &[2, 3]).unwrap(), 2),
        (families::fueter_symmetric(2, &[1, 1, 2]).unwrap(), 3),
        (families::fueter_symmetric(3, &[1, 2, 3]).unwrap(), 3),
    ];
    let mut worst = 0.0f64;
    for (u, k) in &fields {
        let cfg = FrequencyConfig::new(u.n(), 2.0, EigenSpec::monogenic(), vec![1.0]).unwrap();
        for r in [0.1, 0.5, 1.0, 2.0] {
            let n = compute_n(u, r, &cfg).unwrap();
            let want = 6.0 * *k as f64;
            worst = worst.max((n - want).abs() / want);
        }
    }
    let z1 = families::fueter(2, 1).unwrap();
    let cfg = FrequencyConfig::new(2, 2.0, EigenSpec::monogenic(), vec![1.0]).unwrap();
    let n: f64 = compute_n(&z1, 0.7, &cfg).unwrap();
    let pass = worst <= 1e-8 && (n - 6.0).abs() <= 1e-8;
    (
        pass,
        format!("max relative deviation from 2(a+1)k {worst:.1e}; N(z1) = {n:.12}"),
    )
}

fn drift() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let lambda = rng.gen_range(0.05..5.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let alpha: f64 = rng.gen_range(2.0..6.0);
        let n1 = rng.gen_range(2..=5usize);
        let p = DriftPolynomial::new(EigenSpec::new(lambda).unwrap(), alpha, n1).unwrap();
        let l = f64::abs(lambda);
        for r in [0.0, 0.5, 1.0, 2.0] {
            let lhs = 2.0 * p.a * r + p.b + 6.0 * l * p.eval(r);
            let rhs = 10.0 * (alpha + 1.0) * l * l * r
                + (4.0 * l * l * l + 2.0 * l * l) * r * r
                + 4.0 * (alpha + 1.0) * (alpha + n1 as f64) * l;
            worst = worst.max((lhs - rhs).abs() / rhs);
        }
    }
    (
        worst <= 1e-12,
        format!("max relative residual {worst:.1e} over 50 draws"),
    )
}

fn section4(suite: &[ReportRow]) -> (bool, String) {
    let (hu, nu, pu) = min_margin(suite, "h_upper");
    let (hl, nl, pl) = min_margin(suite, "h_lower");
    let (mv, nm, pm) = min_margin(suite, "mean_value");
    let cfg = TheoremConfig::new(2.0).unwrap();
    let mut eq = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [2, 3] {
        let c = Multivector::from_terms(
            n,
            [
                (BladeIndex::SCALAR, 1.0),
                (BladeIndex::from_bits(0b11), -0.5),
            ],
        )
        .unwrap();
        let u = families::constant(c);
        for _ in 0..5 {
            let x = Point::new((0..=n).map(|_| rng.gen_range(-0.3..0.3)).collect()).unwrap();
            eq = eq.max((check_mean_value(&u, &x, 0.4, &cfg).unwrap().margin - 1.0).abs());
        }
    }
    let pass = pu && pl && pm && hu >= 1.0 - 1e-11 && hl >= 1.0 - 1e-11 && eq <= 1e-10 && nm > 0;
    (
        pass,
        format!("h1 min margin {hu:.3} ({nu}), h2 {hl:.3} ({nl}), mean value {mv:.6} ({nm} fields x 20 centres), constants |margin-1| {eq:.1e}"),
    )
}

fn fitted_constants() -> (bool, String) {
    let cfg = TheoremConfig::new(2.0).unwrap();
    let t = RadiiTriple::new(0.2, 0.3, 0.9).unwrap();
    let pairs = [(0.25, 0.5), (0.4, 0.8), (0.5, 0.9)];
    let fields = RunConfig::desk().fields().unwrap();
    let mut worst = 0.0f64;
    let mut finite = true;
    let mut count = 0;
    for f in fields.iter().filter(|f| f.lambda() != 0.0) {
        for c in [1e3, -0.5] {
            let v = f.field.scale(c);
            let a = check_three_balls_linf_eigen(&f.field, f.spec, t, &cfg)
                .unwrap()
                .constants["fitted_M"];
            let b = check_three_balls_linf_eigen(&v, f.spec, t, &cfg)
                .unwrap()
                .constants["fitted_M"];
            let m = moser_fit(&f.field, f.spec, &pairs, &cfg).unwrap();
            let mc = moser_fit(&v, f.spec, &pairs, &cfg).unwrap();
            finite &= a.is_finite() && a > 0.0 && m.is_finite() && m > 0.0;
            worst = worst.max((a - b).abs() / a).max((m - mc).abs() / m);
        }
        count += 1;
    }
    (
        finite && worst <= 1e-10,
        format!(
            "{count} eigenfields, finite: {finite}, max relative change under u -> cu {worst:.1e}"
        ),
    )
}

fn end_to_end() -> (bool, String) {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut codes = Vec::new();
    let mut times = Vec::new();
    for d in &dirs {
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_threeballs"))
            .args([
                "suite",
                "--deterministic",
                "--out",
                d.path().to_str().unwrap(),
            ])
            .output()
            .expect("binary runs")
            .status;
        times.push(start.elapsed().as_secs_f64());
        codes.push(status.code());
    }
    let mut identical = true;
    let mut files = 0;
    for entry in std::fs::read_dir(dirs[0].path()).unwrap() {
        let name = entry.unwrap().file_name();
        let a = std::fs::read(dirs[0].path().join(&name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(&name)).ok();
        identical &= b.as_deref() == Some(&a[..]);
        files += 1;
    }
    let slowest = times.iter().copied().fold(0.0, f64::max);
    let pass = codes.iter().all(|&c| c == Some(0)) && identical && files > 0 && slowest < 300.0;
    (pass, format!("exit codes {codes:?}, {files} files byte-identical: {identical}, slowest run {slowest:.1} s"))
}

fn main() {
    let desk = RunConfig::desk();
    let mut results = Vec::new();
    results.push(timed(
        1,
        "Clifford correctness",
        Some(Duration::from_secs(5)),
        clifford,
    ));
    results.push(timed(
        2,
        "eigenfunction residuals",
        Some(Duration::from_secs(10)),
        || {
            let out = cmd_verify_eigen(&desk).unwrap();
            let (e, l) = (
                worst_lhs(&out.rows, "eigen_residual"),
                worst_lhs(&out.rows, "laplacian_identity"),
            );
            let n = rows(&out.rows, "eigen_residual").count();
            (
                e <= 1e-10 && l <= 1e-10 && out.errors.is_empty(),
                format!("{n} fields, max |Du - lu| {e:.1e}, Laplacian identity {l:.1e}"),
            )
        },
    ));
    results.push(timed(
        3,
        "quadrature closed form",
        Some(Duration::from_secs(5)),
        quadrature,
    ));
    results.push(timed(4, "H' identity", None, hprime));
    let start = Instant::now();
    let suite = cmd_suite(&desk).unwrap();
    let suite_time = start.elapsed();
    let suite_ok = suite.errors.is_empty();
    results.push(timed_after(
        suite_time,
        5,
        "divergence identity",
        None,
        || {
            let w = worst_lhs(&suite.rows, "divergence_identity");
            (
                suite_ok && w <= 1e-8,
                format!("max relative residual {w:.1e}"),
            )
        },
    ));
    results.push(timed(6, "frequency values", None, frequency_values));
    results.push(timed(
        7,
        "monotonicity",
        Some(Duration::from_secs(120)),
        || {
            let out = cmd_frequency_scan(&desk).unwrap();
            let sel: Vec<_> = rows(&out.rows, "monotonicity").collect();
            let violations: f64 = sel.iter().map(|r| r.constants["violations"]).sum();
            let ok = out.errors.is_empty() && sel.iter().all(|r| r.pass) && violations == 0.0;
            (
                ok,
                format!(
                    "{} fields x {} radii, {violations} violations",
                    sel.len(),
                    desk.grid.count
                ),
            )
        },
    ));
    results.push(timed(8, "drift polynomial ODE", None, drift));
    let start = Instant::now();
    let balls = cmd_three_balls(&desk).unwrap();
    let balls_time = start.elapsed();
    results.push(timed_after(balls_time, 9, "three balls L2", None, || {
        let (m4, n4, p4) = min_margin(&balls.rows, "three_balls_l2_c4");
        let (m3, n3, p3) = min_margin(&balls.rows, "three_balls_l2_c3");
        (
            balls.errors.is_empty() && p4 && p3,
            format!("min margin C4 {m4:.3} ({n4} rows), C3 {m3:.3} ({n3} rows)"),
        )
    }));
    results.push(timed_after(
        suite_time,
        10,
        "h bounds and mean value",
        None,
        || section4(&suite.rows),
    ));
    results.push(timed_after(balls_time, 11, "three balls Linf", None, || {
        let (m, n, p) = min_margin(&balls.rows, "three_balls_linf");
        let (mp, np, _) = min_margin(&balls.rows, "three_balls_linf_nominal");
        (p && n > 0, format!("min margin derived {m:.3} ({n} rows); nominal constant {mp:.3} ({np} rows, informational)"))
    }));
    results.push(timed(12, "fitted constants", None, fitted_constants));
    results.push(timed(
        13,
        "end-to-end suite",
        Some(Duration::from_secs(300)),
        end_to_end,
    ));

    for c in &results {
        println!(
            "criterion {:2} {} {:26} {:>8.2} s  {}",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.elapsed.as_secs_f64(),
            c.detail
        );
    }
    let failed = results.iter().filter(|c| !c.pass).count();
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
