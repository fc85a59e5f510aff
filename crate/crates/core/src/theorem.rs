//! Explicit three-balls constants and numerical certification of the
//! three-balls inequalities, the `h`/`H` comparisons, the mean-value
//! inequality and the `L∞` corollaries.
//!
//! With `h(r) = ∫_{B_r} |u|²`, the L² statement reads
//! `h(r2) <= C · h(r1)^{w1} · h(r3)^{w2}` where `w_i = C_i / (C1 + C2)` and
//! `C = C3` for `λ ≠ 0`, `C = C4` for monogenic `u`.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::field::{EigenSpec, ExpPolyField, FieldBundle, Point};
use crate::frequency::{require_eigen, FrequencyEngine};
use crate::quadrature::{ball_volume, OrderPlan, QuadOrders, RuleLadder};
use crate::scalar::Real;

/// Radii `0 < r1 < r2` with `2 r2 < r3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct RadiiTriple<T> {
    pub r1: T,
    pub r2: T,
    pub r3: T,
}

impl<T: Real> RadiiTriple<T> {
    pub fn new(r1: T, r2: T, r3: T) -> Result<Self> {
        let ok = r1 > T::zero() && r1 < r2 && r2 + r2 < r3 && r3.is_finite();
        if !ok {
            return domain(format!(
                "radii must satisfy 0 < r1 < r2 < 2 r2 < r3, got ({r1}, {r2}, {r3})"
            ));
        }
        Ok(RadiiTriple { r1, r2, r3 })
    }

    /// The additional `r3 < 1` restriction of the eigenfunction `L∞` bound.
    pub fn require_unit(self) -> Result<Self> {
        if !(self.r3 < T::one()) {
            return domain(format!("this bound needs r3 < 1, got {}", self.r3));
        }
        Ok(self)
    }

    /// The middle radius `(r3 + r2) / 3` used by the `L∞` corollaries.
    pub fn primed_middle(&self) -> T {
        (self.r3 + self.r2) / T::lit(3.0)
    }

    pub fn as_f64(&self) -> [f64; 3] {
        [self.r1.as_f64(), self.r2.as_f64(), self.r3.as_f64()]
    }
}

/// Constants of the L² three-balls inequality and its `L∞` corollaries.
///
/// Primed constants use the radii `(r1, (r3 + r2)/3, r3)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TheoremConstants<T> {
    pub c1: T,
    pub c2: T,
    pub w1: T,
    pub w2: T,
    /// `None` for `λ = 0`.
    pub c3: Option<T>,
    pub c4: T,
    pub c1p: T,
    pub c2p: T,
    pub w1p: T,
    pub w2p: T,
    /// The `L∞` eigenfunction constant, `None` for `λ = 0`.
    pub c3p: Option<T>,
    /// `C4` at the primed radii: `3^α r1^{2α w1'} r3^{2α w2'} / (r3 + r2)^{2α}`.
    pub c4p: T,
    /// The nominal variant `3^α r1^{2α w1'} r3^{2α w2'} / (4^α (r3 + r2)^{2α})`.
    pub c4p_nominal: T,
}

fn log_weights<T: Real>(r1: T, r2: T, r3: T) -> (T, T, T, T) {
    let two = T::lit(2.0);
    let c1 = T::one() / (two * r2 / r1).ln();
    let c2 = T::one() / (r3 / (two * r2)).ln();
    (c1, c2, c1 / (c1 + c2), c2 / (c1 + c2))
}

/// `r1^{2α w1} r3^{2α w2} / (3^α r2^{2α})`.
fn c4_at<T: Real>(r1: T, r2: T, r3: T, alpha: T, w1: T, w2: T) -> T {
    let ta = alpha + alpha;
    r1.powf(ta * w1) * r3.powf(ta * w2) / (T::lit(3.0).powf(alpha) * r2.powf(ta))
}

/// Exponent of the `λ`-dependent factor of `C3` at radii `(r1, m, r3)`.
#[allow(clippy::too_many_arguments)]
fn c3_exponent<T: Real>(a: T, b: T, alpha: T, r1: T, m: T, r3: T, c1: T, c2: T) -> T {
    let half = T::lit(0.5);
    let m2 = m + m;
    let a1 = alpha + T::one();
    let outer = half * a * (r3 * r3 - m2 * m2) + b * (r3 - m2);
    let inner = half * a * (m2 * m2 - r1 * r1) + b * (m2 - r1);
    outer / (a1 * c2 * (c1 + c2)) - inner / (a1 * c1 * (c1 + c2))
}

/// `(a, b)` of the drift polynomial, defined for every `λ`.
fn drift_ab<T: Real>(lambda: T, alpha: T) -> (T, T) {
    let l = lambda.abs();
    let a = (T::lit(2.0) * l * l + l) / T::lit(3.0);
    let b = T::lit(5.0) * (alpha + T::one()) * l / T::lit(3.0)
        - (T::lit(2.0) * l + T::one()) / T::lit(9.0);
    (a, b)
}

/// `exp` of the `C3` exponent at radii `(r1, r2, r3)`; well defined even for
/// `λ = 0`, where it reports the residual `b = -1/9` contribution.
pub fn c3_factor<T: Real>(radii: RadiiTriple<T>, lambda: T, alpha: T) -> T {
    let (c1, c2, _, _) = log_weights(radii.r1, radii.r2, radii.r3);
    let (a, b) = drift_ab(lambda, alpha);
    c3_exponent(a, b, alpha, radii.r1, radii.r2, radii.r3, c1, c2).exp()
}

pub fn constants_l2<T: Real>(
    radii: RadiiTriple<T>,
    spec: EigenSpec<T>,
    alpha: T,
) -> Result<TheoremConstants<T>> {
    let RadiiTriple { r1, r2, r3 } = RadiiTriple::new(radii.r1, radii.r2, radii.r3)?;
    if !(alpha > T::zero()) {
        return domain("alpha must be positive");
    }
    let (c1, c2, w1, w2) = log_weights(r1, r2, r3);
    let c4 = c4_at(r1, r2, r3, alpha, w1, w2);

    let m = radii.primed_middle();
    let (c1p, c2p, w1p, w2p) = log_weights(r1, m, r3);
    let c4p = c4_at(r1, m, r3, alpha, w1p, w2p);
    let c4p_nominal = c4p / T::lit(4.0).powf(alpha);

    let (c3, c3p) = if spec.lambda == T::zero() {
        (None, None)
    } else {
        let (a, b) = drift_ab(spec.lambda, alpha);
        let c3 = c4 * c3_exponent(a, b, alpha, r1, r2, r3, c1, c2).exp();
        let c3p = c4p_nominal * c3_exponent(a, b, alpha, r1, m, r3, c1p, c2p).exp();
        (Some(c3), Some(c3p))
    };
    let k = TheoremConstants {
        c1,
        c2,
        w1,
        w2,
        c3,
        c4,
        c1p,
        c2p,
        w1p,
        w2p,
        c3p,
        c4p,
        c4p_nominal,
    };
    let all = [
        Some(c1),
        Some(c2),
        c3,
        Some(c4),
        Some(c1p),
        Some(c2p),
        c3p,
        Some(c4p),
        Some(c4p_nominal),
    ];
    if all
        .iter()
        .flatten()
        .any(|v| !(v.is_finite() && *v > T::zero()))
    {
        return Err(Error::Numeric(format!(
            "three-balls constants not finite and positive: {k:?}"
        )));
    }
    Ok(k)
}

impl<T: Real> TheoremConstants<T> {
    fn entries(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<T>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v.as_f64());
            }
        };
        put("C1", Some(self.c1));
        put("C2", Some(self.c2));
        put("C3", self.c3);
        put("C4", Some(self.c4));
        put("C1p", Some(self.c1p));
        put("C2p", Some(self.c2p));
        put("C3p", self.c3p);
        put("C4p", Some(self.c4p));
        put("C4p_nominal", Some(self.c4p_nominal));
        m
    }
}

fn ser_real<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&v.to_string())
    }
}

/// Outcome of one inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs / lhs`; `1` when both vanish, `inf` when only `lhs` does.
    #[serde(serialize_with = "ser_real")]
    pub margin: f64,
    /// Relative numeric slack: passes iff `margin >= 1 - slack`.
    pub slack: f64,
    pub pass: bool,
    /// Absolute quadrature error estimate of the integrals involved.
    pub quad_error: f64,
    /// Informational reports do not count towards pass/fail.
    pub informational: bool,
    pub constants: BTreeMap<String, f64>,
}

/// Floor on the relative slack, covering summation rounding.
const SLACK_FLOOR: f64 = 1e-11;

impl InequalityReport {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64, slack: f64, quad_error: f64) -> Self {
        let margin = if lhs > 0.0 {
            rhs / lhs
        } else if rhs > 0.0 {
            f64::INFINITY
        } else {
            1.0
        };
        let slack = slack.max(0.0) + SLACK_FLOOR;
        InequalityReport {
            label: label.into(),
            lhs,
            rhs,
            margin,
            slack,
            pass: margin >= 1.0 - slack,
            quad_error,
            informational: false,
            constants: BTreeMap::new(),
        }
    }

    pub fn with_constants(mut self, constants: BTreeMap<String, f64>) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_constant(mut self, key: &str, value: f64) -> Self {
        self.constants.insert(key.to_string(), value);
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

/// Settings shared by the checks.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremConfig<T> {
    pub alpha: T,
    pub base_orders: QuadOrders,
    pub rel_tol: T,
    /// Lattice points per axis for sup-norm estimates (capped per dimension).
    pub sup_density: usize,
}

impl<T: Real> TheoremConfig<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if !(alpha >= T::lit(2.0)) || !alpha.is_finite() {
            return domain(format!("alpha must be at least 2, got {alpha}"));
        }
        Ok(TheoremConfig {
            alpha,
            base_orders: QuadOrders {
                radial: 16,
                polar: 16,
                transverse: 8,
            },
            rel_tol: T::lit(1e-9),
            sup_density: 61,
        })
    }
}

/// Plan for `∫ |u|²`: exact polar/transverse factors for polynomials, exact
/// radial factor as well.
fn mass_plan<T: Real>(u: &ExpPolyField<T>, base: QuadOrders) -> OrderPlan {
    let n1 = u.n() + 1;
    let d = u.degree() as usize;
    let mut orders = QuadOrders {
        radial: base.radial,
        polar: base.polar,
        transverse: u.transverse_degree() as usize + 1,
    };
    let mut polar_exact = false;
    if !u.has_exponentials() {
        orders.polar = (d + 1).max(2);
        orders.radial = (2 * d + n1).div_ceil(2).max(2);
        polar_exact = true;
    }
    OrderPlan {
        base: orders,
        polar_exact,
    }
}

/// `∫_{B_r(c)} |u|²` on arbitrary balls.
pub struct MassEngine<T> {
    bundle: FieldBundle<T>,
    ladder: RuleLadder<T>,
    rel_tol: T,
}

impl<T: Real> MassEngine<T> {
    pub fn new(u: &ExpPolyField<T>, base: QuadOrders, rel_tol: T) -> Result<Self> {
        let bundle = FieldBundle::new(&[u])?;
        let ladder = RuleLadder::new(u.n() + 1, mass_plan(u, base))?;
        Ok(MassEngine {
            bundle,
            ladder,
            rel_tol,
        })
    }

    /// `(value, error estimate)`.
    pub fn mass(&self, center: &[T], r: T) -> Result<(T, T)> {
        let mut scratch = self.bundle.scratch();
        let mut vals = vec![T::zero(); self.bundle.output_len()];
        let f = |x: &[T], out: &mut [T]| {
            self.bundle.eval(x, &mut scratch, &mut vals);
            out[0] = vals.iter().map(|&v| v * v).sum();
        };
        let tol = self.rel_tol;
        let res = self
            .ladder
            .integrate_adaptive(center, r, 1, f, |v, e| e[0] <= tol * v[0].abs())?;
        Ok((res.values[0], res.errors[0]))
    }

    pub fn origin_mass(&self, r: T) -> Result<(T, T)> {
        self.mass(&vec![T::zero(); self.bundle.n1()], r)
    }
}

/// `h(r) = ∫_{B_r} |u|²` over the origin-centred ball.
pub fn ball_l2_mass<T: Real>(u: &ExpPolyField<T>, r: T, cfg: &TheoremConfig<T>) -> Result<T> {
    Ok(MassEngine::new(u, cfg.base_orders, cfg.rel_tol)?
        .origin_mass(r)?
        .0)
}

/// The comparisons `H(r) <= r^{2α} h(r)` and `3^α r^{2α} h(r) <= H(2r)`.
pub fn check_h_bounds<T: Real>(
    u: &ExpPolyField<T>,
    r: T,
    cfg: &TheoremConfig<T>,
) -> Result<[InequalityReport; 2]> {
    if !(r > T::zero()) {
        return domain("radius must be positive");
    }
    let alpha = cfg.alpha;
    let freq = FrequencyEngine::new(u, alpha, cfg.base_orders, cfg.rel_tol)?;
    let mass = MassEngine::new(u, cfg.base_orders, cfg.rel_tol)?;
    let h_r = freq.at(r)?;
    let h_2r = freq.at(r + r)?;
    let (m, em) = mass.origin_mass(r)?;
    let r2a = r.powf(alpha + alpha);
    let k = T::lit(3.0).powf(alpha) * r2a;
    let rel = |e: T, v: T| if v > T::zero() { (e / v).as_f64() } else { 0.0 };

    let upper = InequalityReport::new(
        "h_upper",
        h_r.h.as_f64(),
        (r2a * m).as_f64(),
        rel(h_r.err_h, h_r.h) + rel(em, m),
        (h_r.err_h + r2a * em).as_f64(),
    )
    .with_constant("r", r.as_f64())
    .with_constant("alpha", alpha.as_f64());
    let lower = InequalityReport::new(
        "h_lower",
        (k * m).as_f64(),
        h_2r.h.as_f64(),
        rel(h_2r.err_h, h_2r.h) + rel(em, m),
        (h_2r.err_h + k * em).as_f64(),
    )
    .with_constant("r", r.as_f64())
    .with_constant("alpha", alpha.as_f64());
    Ok([upper, lower])
}

/// The L² three-balls inequality with `C3` (`λ ≠ 0`) or `C4` (`λ = 0`).
pub fn check_three_balls_l2<T: Real>(
    u: &ExpPolyField<T>,
    spec: EigenSpec<T>,
    radii: RadiiTriple<T>,
    cfg: &TheoremConfig<T>,
) -> Result<InequalityReport> {
    let radii = RadiiTriple::new(radii.r1, radii.r2, radii.r3)?;
    require_eigen(u, spec, radii.r3)?;
    let k = constants_l2(radii, spec, cfg.alpha)?;
    let mass = MassEngine::new(u, cfg.base_orders, cfg.rel_tol)?;
    let (h1, e1) = mass.origin_mass(radii.r1)?;
    let (h2, e2) = mass.origin_mass(radii.r2)?;
    let (h3, e3) = mass.origin_mass(radii.r3)?;
    if !(h1 > T::zero()) {
        return Err(Error::DegenerateField(format!("h(r1) = {h1:e} vanishes")));
    }
    let (c, label) = match k.c3 {
        Some(c3) => (c3, "three_balls_l2_c3"),
        None => (k.c4, "three_balls_l2_c4"),
    };
    let rhs = c * h1.powf(k.w1) * h3.powf(k.w2);
    let slack = e2 / h2.max(T::min_positive_value()) + k.w1 * e1 / h1 + k.w2 * e3 / h3;
    Ok(InequalityReport::new(
        label,
        h2.as_f64(),
        rhs.as_f64(),
        slack.as_f64(),
        (e1 + e2 + e3).as_f64(),
    )
    .with_constants(k.entries()))
}

/// A lower estimate of `sup_{B_r} |u|` from a lattice search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupEstimate<T> {
    /// Best value after local refinement.
    pub value: T,
    /// Best value on the coarse lattice.
    pub coarse: T,
    /// `value - coarse`, a proxy for the distance to the true sup.
    pub gap: T,
    pub argmax: Vec<T>,
}

impl<T: Real> SupEstimate<T> {
    /// `value + gap`, used where an over-estimate is the conservative side.
    pub fn upper(&self) -> T {
        self.value + self.gap
    }
}

/// Largest lattice size per axis whose total stays near 2^18 points.
fn effective_density(requested: usize, n1: usize) -> usize {
    let cap = (2f64.powi(18)).powf(1.0 / n1 as f64).floor() as usize;
    let d = requested.clamp(3, cap.max(3));
    if d.is_multiple_of(2) {
        d - 1
    } else {
        d
    }
}

/// Visits the points of a `k^{n1}` lattice on `[lo, hi]` per axis, projected
/// radially onto `B_r(0)` when outside it.
fn lattice<T: Real>(lo: &[T], hi: &[T], k: usize, r: T, mut visit: impl FnMut(&[T])) {
    let n1 = lo.len();
    let mut idx = vec![0usize; n1];
    let mut x = vec![T::zero(); n1];
    let last = T::from_count(k - 1);
    loop {
        for j in 0..n1 {
            x[j] = lo[j] + (hi[j] - lo[j]) * T::from_count(idx[j]) / last;
        }
        let rho = x.iter().map(|&c| c * c).sum::<T>().sqrt();
        if rho > r {
            let s = r / rho;
            x.iter_mut().for_each(|c| *c = *c * s);
        }
        visit(&x);
        let mut j = 0;
        loop {
            if j == n1 {
                return;
            }
            idx[j] += 1;
            if idx[j] < k {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Lattice search for `sup_{B_r(0)} |u|`, then one refinement on a finer
/// lattice around the best point.
pub fn sup_estimate<T: Real>(
    u: &ExpPolyField<T>,
    r: T,
    grid_density: usize,
) -> Result<SupEstimate<T>> {
    if !(r > T::zero()) {
        return domain("radius must be positive");
    }
    let n1 = u.n() + 1;
    let bundle = FieldBundle::new(&[u])?;
    let mut scratch = bundle.scratch();
    let mut vals = vec![T::zero(); bundle.output_len()];
    let mut best = (T::neg_infinity(), vec![T::zero(); n1]);
    let mut norm_at = |x: &[T], best: &mut (T, Vec<T>)| {
        bundle.eval(x, &mut scratch, &mut vals);
        let v = vals.iter().map(|&c| c * c).sum::<T>().sqrt();
        if v > best.0 {
            best.0 = v;
            best.1.copy_from_slice(x);
        }
    };
    let k = effective_density(grid_density, n1);
    let lo = vec![-r; n1];
    let hi = vec![r; n1];
    lattice(&lo, &hi, k, r, |x| norm_at(x, &mut best));
    let coarse = best.0;
    let step = (r + r) / T::from_count(k - 1);
    let c = best.1.clone();
    let lo: Vec<T> = c.iter().map(|&v| v - step).collect();
    let hi: Vec<T> = c.iter().map(|&v| v + step).collect();
    lattice(&lo, &hi, effective_density(9, n1), r, |x| {
        norm_at(x, &mut best)
    });
    if !best.0.is_finite() {
        return Err(Error::Numeric(
            "non-finite field value in sup search".into(),
        ));
    }
    Ok(SupEstimate {
        value: best.0,
        coarse,
        gap: best.0 - coarse,
        argmax: best.1,
    })
}

/// `|u(x)|² <= |B_r|^{-1} ∫_{B_r(x)} |u|²` for monogenic `u`.
pub fn check_mean_value<T: Real>(
    u: &ExpPolyField<T>,
    x: &Point<T>,
    r: T,
    cfg: &TheoremConfig<T>,
) -> Result<InequalityReport> {
    if !(r > T::zero()) {
        return domain("radius must be positive");
    }
    require_eigen(u, EigenSpec::monogenic(), x.norm() + r)?;
    let n1 = u.n() + 1;
    let lhs = u.evaluate(x)?.norm_sqr();
    let (m, e) = MassEngine::new(u, cfg.base_orders, cfg.rel_tol)?.mass(x.coords(), r)?;
    let vol = ball_volume(n1, r);
    let rhs = m / vol;
    let slack = if m > T::zero() { e / m } else { T::zero() };
    Ok(InequalityReport::new(
        "mean_value",
        lhs.as_f64(),
        rhs.as_f64(),
        slack.as_f64(),
        (e / vol).as_f64(),
    )
    .with_constant("r", r.as_f64()))
}

fn sup_constants<T: Real>(
    s1: &SupEstimate<T>,
    s2: &SupEstimate<T>,
    s3: &SupEstimate<T>,
) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    m.insert("sup_r1".into(), s1.value.as_f64());
    m.insert("sup_r2".into(), s2.value.as_f64());
    m.insert("sup_r3".into(), s3.value.as_f64());
    m.insert("gap_r2".into(), s2.gap.as_f64());
    m
}

/// The `L∞` three-balls bound for monogenic `u`, twice:
///
/// * with `3^{n₁/2} (r3 - 2 r2)^{-n₁/2} r3^{n₁/2} √C4'`, the constant that
///   the mean-value estimate combined with the L² bound actually yields
///   (checked), and
/// * with the nominal constant `3^{n/2} C4'_nominal (r3 - 2 r2)^{-n/2} r3^{n/2}`
///   (informational).
///
/// The left side uses the refined sup plus its gap, the right side the
/// refined (lower-bound) sups.
pub fn check_three_balls_linf_monogenic<T: Real>(
    u: &ExpPolyField<T>,
    radii: RadiiTriple<T>,
    cfg: &TheoremConfig<T>,
) -> Result<[InequalityReport; 2]> {
    let radii = RadiiTriple::new(radii.r1, radii.r2, radii.r3)?;
    require_eigen(u, EigenSpec::monogenic(), radii.r3)?;
    let k = constants_l2(radii, EigenSpec::monogenic(), cfg.alpha)?;
    let s1 = sup_estimate(u, radii.r1, cfg.sup_density)?;
    let s2 = sup_estimate(u, radii.r2, cfg.sup_density)?;
    let s3 = sup_estimate(u, radii.r3, cfg.sup_density)?;
    let lhs = s2.upper();
    let prod = s1.value.powf(k.w1p) * s3.value.powf(k.w2p);
    let gap = radii.r3 - radii.r2 - radii.r2;
    let geom = |d: T| (T::lit(3.0) * radii.r3 / gap).powf(d / T::lit(2.0));
    let n1 = T::from_count(u.n() + 1);
    let n = T::from_count(u.n());
    let k_re = geom(n1) * k.c4p.sqrt();
    let k_pr = geom(n) * k.c4p_nominal;
    let consts = {
        let mut m = k.entries();
        m.extend(sup_constants(&s1, &s2, &s3));
        m
    };
    let derived = InequalityReport::new(
        "three_balls_linf",
        lhs.as_f64(),
        (k_re * prod).as_f64(),
        0.0,
        0.0,
    )
    .with_constants(consts.clone())
    .with_constant("K", k_re.as_f64());
    let nominal = InequalityReport::new(
        "three_balls_linf_nominal",
        lhs.as_f64(),
        (k_pr * prod).as_f64(),
        0.0,
        0.0,
    )
    .with_constants(consts)
    .with_constant("K", k_pr.as_f64())
    .informational();
    Ok([derived, nominal])
}

/// Empirical constant `max sup_{B_r}|u| · (R - r)^{n₁/2} / ‖u‖_{L²(B_R)}` over
/// the pairs `(r, R)`.
pub fn moser_fit<T: Real>(
    u: &ExpPolyField<T>,
    spec: EigenSpec<T>,
    pairs: &[(T, T)],
    cfg: &TheoremConfig<T>,
) -> Result<T> {
    if pairs.is_empty() {
        return domain("Moser fit needs at least one radius pair");
    }
    for &(r, big) in pairs {
        if !(r > T::zero() && r < big && big < T::one()) {
            return domain(format!("radius pairs need 0 < r < R < 1, got ({r}, {big})"));
        }
    }
    let rmax = pairs.iter().map(|p| p.1).fold(T::zero(), T::max);
    require_eigen(u, spec, rmax)?;
    let mass = MassEngine::new(u, cfg.base_orders, cfg.rel_tol)?;
    let half_n1 = T::from_count(u.n() + 1) / T::lit(2.0);
    let mut best = T::zero();
    for &(r, big) in pairs {
        let (h, _) = mass.origin_mass(big)?;
        if !(h > T::zero()) {
            return Err(Error::DegenerateField(format!("u vanishes on B_{big}")));
        }
        let s = sup_estimate(u, r, cfg.sup_density)?.value;
        best = best.max(s * (big - r).powf(half_n1) / h.sqrt());
    }
    Ok(best)
}

/// The eigenfunction `L∞` bound with its unquantified constant `M'`: reports
/// `rhs` without `M'` and the fitted `M' = lhs / rhs` under the constant
/// `fitted_M`. Informational; fails only if the fit is not finite and positive.
pub fn check_three_balls_linf_eigen<T: Real>(
    u: &ExpPolyField<T>,
    spec: EigenSpec<T>,
    radii: RadiiTriple<T>,
    cfg: &TheoremConfig<T>,
) -> Result<InequalityReport> {
    if spec.lambda == T::zero() {
        return domain("the eigenfunction L-infinity bound needs lambda != 0");
    }
    let radii = RadiiTriple::new(radii.r1, radii.r2, radii.r3)?.require_unit()?;
    require_eigen(u, spec, radii.r3)?;
    let k = constants_l2(radii, spec, cfg.alpha)?;
    let c3p = k.c3p.expect("lambda != 0");
    let s1 = sup_estimate(u, radii.r1, cfg.sup_density)?;
    let s2 = sup_estimate(u, radii.r2, cfg.sup_density)?;
    let s3 = sup_estimate(u, radii.r3, cfg.sup_density)?;
    let half_n = T::from_count(u.n()) / T::lit(2.0);
    let gap = radii.r3 - radii.r2 - radii.r2;
    let rhs = c3p
        * gap.powf(-half_n)
        * radii.r3.powf(half_n)
        * s1.value.powf(k.w1p)
        * s3.value.powf(k.w2p);
    let lhs = s2.upper();
    let fitted = lhs / rhs;
    let mut rep = InequalityReport::new(
        "three_balls_linf_eigen",
        lhs.as_f64(),
        rhs.as_f64(),
        0.0,
        0.0,
    )
    .with_constants(k.entries())
    .with_constant("fitted_M", fitted.as_f64())
    .informational();
    rep.constants.extend(sup_constants(&s1, &s2, &s3));
    rep.pass = fitted.is_finite() && fitted > T::zero();
    Ok(rep)
}
