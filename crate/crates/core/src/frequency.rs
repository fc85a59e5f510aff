//! The weighted frequency function of an eigenfield and its monotonicity.
//!
//! With `w = r² - |x|²` and `α >= 2`:
//!
//! * `H(r) = ∫_{B_r} |u|² w^α`
//! * `I(r) = ∫_{B_r} (|∇u|² + Σ_A u_A Δu_A) w^{α+1}`
//! * `N(r) = I(r) / H(r)`
//!
//! For `D u = λ u` with `λ ≠ 0` the quantity `e^{6|λ|r}(N(r) + p(r))` is
//! nondecreasing, where `p` is the [`DriftPolynomial`]; for `λ = 0`, `N`
//! itself is.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::field::{eigen_residual, probe_points, EigenSpec, ExpPolyField, FieldBundle};
use crate::quadrature::{OrderPlan, QuadOrders, RuleLadder};
use crate::scalar::Real;

/// Smallest `H` for which `N = I/H` is reported.
pub const H_FLOOR: f64 = 1e-300;

/// Spacing of a generated radius grid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridSpacing {
    Linear,
    #[default]
    Log,
}

/// `count` radii from `min` to `max` inclusive.
pub fn radius_grid<T: Real>(min: T, max: T, count: usize, spacing: GridSpacing) -> Result<Vec<T>> {
    if !(min > T::zero()) || !(max > min) || !max.is_finite() {
        return domain(format!(
            "radius grid needs 0 < min < max, got [{min}, {max}]"
        ));
    }
    if count < 2 {
        return domain("radius grid needs at least two points");
    }
    let last = T::from_count(count - 1);
    Ok((0..count)
        .map(|i| {
            let t = T::from_count(i) / last;
            match spacing {
                GridSpacing::Linear => min + (max - min) * t,
                GridSpacing::Log => (min.ln() + (max.ln() - min.ln()) * t).exp(),
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyConfig<T> {
    pub n: usize,
    pub alpha: T,
    pub spec: EigenSpec<T>,
    /// Strictly increasing positive radii.
    pub radii: Vec<T>,
    /// Starting orders; factors that are exact for the field are lowered.
    pub base_orders: QuadOrders,
    /// Accepted relative change between refinement levels.
    pub rel_tol: T,
}

impl<T: Real> FrequencyConfig<T> {
    pub fn new(n: usize, alpha: T, spec: EigenSpec<T>, radii: Vec<T>) -> Result<Self> {
        let cfg = FrequencyConfig {
            n,
            alpha,
            spec,
            radii,
            base_orders: QuadOrders {
                radial: 16,
                polar: 16,
                transverse: 8,
            },
            rel_tol: T::lit(1e-9),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_orders(mut self, orders: QuadOrders) -> Self {
        self.base_orders = orders;
        self
    }

    pub fn with_tolerance(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_radii(mut self, radii: Vec<T>) -> Self {
        self.radii = radii;
        self
    }

    pub fn n1(&self) -> usize {
        self.n + 1
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= T::lit(2.0)) || !self.alpha.is_finite() {
            return domain(format!("alpha must be at least 2, got {}", self.alpha));
        }
        if !self.spec.lambda.is_finite() {
            return Err(Error::Numeric("eigenvalue must be finite".into()));
        }
        if self
            .radii
            .iter()
            .any(|&r| !(r > T::zero()) || !r.is_finite())
        {
            return domain("radii must be positive and finite");
        }
        if self.radii.windows(2).any(|w| !(w[1] > w[0])) {
            return domain("radius grid must be strictly increasing");
        }
        if !(self.rel_tol > T::zero()) {
            return domain("quadrature tolerance must be positive");
        }
        Ok(())
    }
}

/// `p(r) = a r² + b r + c`, the drift term of the monotone quantity
/// `e^{6|λ|r}(N(r) + p(r))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftPolynomial<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub lambda: T,
    pub alpha: T,
    /// The dimension entering `c` through `(α + dim)`.
    pub dim: T,
}

impl<T: Real> DriftPolynomial<T> {
    /// The drift polynomial with `(α + n₁)` in `c`.
    pub fn new(spec: EigenSpec<T>, alpha: T, n1: usize) -> Result<Self> {
        Self::with_dim(spec, alpha, T::from_count(n1))
    }

    /// The variant with `(α + n)`, `n = n₁ - 1`, in `c`.
    pub fn theorem_variant(spec: EigenSpec<T>, alpha: T, n1: usize) -> Result<Self> {
        Self::with_dim(spec, alpha, T::from_count(n1) - T::one())
    }

    fn with_dim(spec: EigenSpec<T>, alpha: T, dim: T) -> Result<Self> {
        let l = spec.lambda.abs();
        if !(l > T::zero()) {
            return domain("drift polynomial needs lambda != 0");
        }
        let one = T::one();
        let two = T::lit(2.0);
        let a1 = alpha + one;
        let a = (two * l * l + l) / T::lit(3.0);
        let b = T::lit(5.0) * a1 * l / T::lit(3.0) - (two * l + one) / T::lit(9.0);
        let c = two * a1 * (alpha + dim) / T::lit(3.0) - T::lit(5.0) * a1 / T::lit(18.0)
            + (two * l + one) / (T::lit(54.0) * l);
        Ok(DriftPolynomial {
            a,
            b,
            c,
            lambda: spec.lambda,
            alpha,
            dim,
        })
    }

    pub fn eval(&self, r: T) -> T {
        (self.a * r + self.b) * r + self.c
    }

    pub fn derivative(&self, r: T) -> T {
        T::lit(2.0) * self.a * r + self.b
    }

    /// Relative residual of
    /// `p' + 6|λ|p = 10(α+1)λ² r + (4|λ|³ + 2λ²) r² + 4(α+1)(α+dim)|λ|`.
    pub fn ode_residual(&self, r: T) -> T {
        let l = self.lambda.abs();
        let a1 = self.alpha + T::one();
        let lhs = self.derivative(r) + T::lit(6.0) * l * self.eval(r);
        let rhs = T::lit(10.0) * a1 * l * l * r
            + (T::lit(4.0) * l * l * l + T::lit(2.0) * l * l) * r * r
            + T::lit(4.0) * a1 * (self.alpha + self.dim) * l;
        (lhs - rhs).abs() / rhs.abs().max(T::min_positive_value())
    }
}

/// `drift_poly(spec, α, n₁)`: see [`DriftPolynomial::new`].
pub fn drift_poly<T: Real>(spec: EigenSpec<T>, alpha: T, n1: usize) -> Result<DriftPolynomial<T>> {
    DriftPolynomial::new(spec, alpha, n1)
}

/// Quadrature orders suited to `u` and the weights `w^α`, `w^{α+1}`.
///
/// The transverse factor is always exact (the integrands are polynomial in
/// `x_1..x_n`). Without exponentials the polar factor is exact too, and for
/// integer `α` so is the radial factor.
pub fn field_plan<T: Real>(u: &ExpPolyField<T>, alpha: T, base: QuadOrders) -> OrderPlan {
    let n1 = u.n() + 1;
    let d = u.degree() as usize;
    let td = u.transverse_degree() as usize;
    let mut orders = QuadOrders {
        radial: base.radial,
        polar: base.polar,
        transverse: td + 1,
    };
    let mut polar_exact = false;
    if !u.has_exponentials() {
        orders.polar = (d + 1).max(2);
        polar_exact = true;
        if alpha.fract() == T::zero() {
            let a = alpha.to_usize().unwrap_or(0);
            orders.radial = (2 * d + 2 * a + 2 + n1).div_ceil(2).max(2);
        }
    }
    OrderPlan {
        base: orders,
        polar_exact,
    }
}

/// Quadrature values at one radius, with refinement error estimates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusValues<T> {
    pub r: T,
    pub h: T,
    pub i: T,
    /// `2(α+1) Σ_A ∫ ⟨x, ∇u_A⟩ u_A w^α`, equal to `I` by the divergence theorem.
    pub div: T,
    pub err_h: T,
    pub err_i: T,
    pub err_div: T,
}

/// Evaluates `H`, `I` and the divergence form of `I` for one field on
/// origin-centred balls.
pub struct FrequencyEngine<T> {
    bundle: FieldBundle<T>,
    ladder: RuleLadder<T>,
    alpha: T,
    rel_tol: T,
}

impl<T: Real> FrequencyEngine<T> {
    pub fn new(u: &ExpPolyField<T>, alpha: T, base: QuadOrders, rel_tol: T) -> Result<Self> {
        let n = u.n();
        let mut fields = vec![u.clone()];
        for j in 0..=n {
            fields.push(u.partial(j)?);
        }
        fields.push(u.laplacian());
        let refs: Vec<&ExpPolyField<T>> = fields.iter().collect();
        let bundle = FieldBundle::new(&refs)?;
        let ladder = RuleLadder::new(n + 1, field_plan(u, alpha, base))?;
        Ok(FrequencyEngine {
            bundle,
            ladder,
            alpha,
            rel_tol,
        })
    }

    pub fn from_config(u: &ExpPolyField<T>, cfg: &FrequencyConfig<T>) -> Result<Self> {
        cfg.validate()?;
        if u.n() != cfg.n {
            return Err(Error::DimensionMismatch {
                expected: cfg.n,
                found: u.n(),
            });
        }
        Self::new(u, cfg.alpha, cfg.base_orders, cfg.rel_tol)
    }

    pub fn plan(&self) -> OrderPlan {
        self.ladder.plan()
    }

    pub fn at(&self, r: T) -> Result<RadiusValues<T>> {
        let n1 = self.bundle.n1();
        let nb = self.bundle.blades().len();
        let alpha = self.alpha;
        let a1 = alpha + T::one();
        let two_a1 = a1 + a1;
        let int_alpha = if alpha.fract() == T::zero() {
            alpha.to_i32()
        } else {
            None
        };
        let r2 = r * r;
        let mut scratch = self.bundle.scratch();
        let mut vals = vec![T::zero(); self.bundle.output_len()];
        let integrand = |x: &[T], out: &mut [T]| {
            self.bundle.eval(x, &mut scratch, &mut vals);
            let rho2: T = x.iter().map(|&c| c * c).sum();
            let w = (r2 - rho2).max(T::zero());
            let wa = match int_alpha {
                Some(k) => w.powi(k),
                None => w.powf(alpha),
            };
            let u = &vals[..nb];
            let lap = &vals[(n1 + 1) * nb..(n1 + 2) * nb];
            let mut u2 = T::zero();
            let mut grad2 = T::zero();
            let mut ulap = T::zero();
            let mut radial = T::zero();
            for a in 0..nb {
                let ua = u[a];
                u2 = u2 + ua * ua;
                ulap = ulap + ua * lap[a];
                let mut xdu = T::zero();
                for j in 0..n1 {
                    let d = vals[(1 + j) * nb + a];
                    grad2 = grad2 + d * d;
                    xdu = xdu + x[j] * d;
                }
                radial = radial + xdu * ua;
            }
            out[0] = u2 * wa;
            out[1] = (grad2 + ulap) * wa * w;
            out[2] = two_a1 * radial * wa;
        };
        let tol = self.rel_tol;
        let accept = |v: &[T], e: &[T]| {
            let h = v[0].abs();
            e[0] <= tol * h && e[1] <= tol * v[1].abs().max(h) && e[2] <= tol * v[2].abs().max(h)
        };
        let origin = vec![T::zero(); n1];
        let res = self
            .ladder
            .integrate_adaptive(&origin, r, 3, integrand, accept)?;
        Ok(RadiusValues {
            r,
            h: res.values[0],
            i: res.values[1],
            div: res.values[2],
            err_h: res.errors[0],
            err_i: res.errors[1],
            err_div: res.errors[2],
        })
    }

    /// Values at every radius, in grid order.
    pub fn over(&self, radii: &[T]) -> Result<Vec<RadiusValues<T>>> {
        radii.par_iter().map(|&r| self.at(r)).collect()
    }
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if !(r > T::zero()) || !r.is_finite() {
        return domain(format!("radius must be positive and finite, got {r}"));
    }
    Ok(())
}

pub fn compute_h<T: Real>(u: &ExpPolyField<T>, r: T, cfg: &FrequencyConfig<T>) -> Result<T> {
    check_radius(r)?;
    Ok(FrequencyEngine::from_config(u, cfg)?.at(r)?.h)
}

pub fn compute_i<T: Real>(u: &ExpPolyField<T>, r: T, cfg: &FrequencyConfig<T>) -> Result<T> {
    check_radius(r)?;
    Ok(FrequencyEngine::from_config(u, cfg)?.at(r)?.i)
}

pub fn compute_n<T: Real>(u: &ExpPolyField<T>, r: T, cfg: &FrequencyConfig<T>) -> Result<T> {
    check_radius(r)?;
    let v = FrequencyEngine::from_config(u, cfg)?.at(r)?;
    frequency_ratio(&v)
}

fn frequency_ratio<T: Real>(v: &RadiusValues<T>) -> Result<T> {
    if !(v.h > T::lit(H_FLOOR)) {
        return Err(Error::DegenerateField(format!(
            "H({}) = {:e} vanishes",
            v.r, v.h
        )));
    }
    Ok(v.i / v.h)
}

/// Relative residual `|I - 2(α+1) Σ_A ∫⟨x,∇u_A⟩u_A w^α| / max(|I|, ε)`.
pub fn divergence_identity_residual<T: Real>(
    u: &ExpPolyField<T>,
    r: T,
    cfg: &FrequencyConfig<T>,
) -> Result<T> {
    check_radius(r)?;
    let v = FrequencyEngine::from_config(u, cfg)?.at(r)?;
    Ok(relative_gap(v.i, v.div))
}

fn relative_gap<T: Real>(a: T, b: T) -> T {
    let d = (a - b).abs();
    if d == T::zero() {
        T::zero()
    } else {
        d / a.abs().max(T::min_positive_value())
    }
}

/// Largest relative residual of `H' = (2α+n₁)H/r + I/(r(α+1))` over the
/// interior radii of `cfg.radii`, with `H'` from the three-point difference
/// on the (possibly non-uniform) grid.
pub fn hprime_identity_residual<T: Real>(
    u: &ExpPolyField<T>,
    cfg: &FrequencyConfig<T>,
) -> Result<T> {
    if cfg.radii.len() < 3 {
        return domain("derivative identity needs at least three radii");
    }
    let vals = FrequencyEngine::from_config(u, cfg)?.over(&cfg.radii)?;
    Ok(hprime_residual_from_values(&vals, cfg.alpha, cfg.n1()))
}

/// [`hprime_identity_residual`] on precomputed values (ascending radii).
pub fn hprime_residual_from_values<T: Real>(vals: &[RadiusValues<T>], alpha: T, n1: usize) -> T {
    let a1 = alpha + T::one();
    let k = T::lit(2.0) * alpha + T::from_count(n1);
    let mut worst = T::zero();
    for w in vals.windows(3) {
        let (p, c, q) = (&w[0], &w[1], &w[2]);
        let h1 = c.r - p.r;
        let h2 = q.r - c.r;
        let fd = -h2 / (h1 * (h1 + h2)) * p.h
            + (h2 - h1) / (h1 * h2) * c.h
            + h1 / (h2 * (h1 + h2)) * q.h;
        let rhs = k * c.h / c.r + c.i / (c.r * a1);
        worst = worst.max(relative_gap(rhs, fd));
    }
    worst
}

/// Like [`hprime_residual_from_values`] with the fourth-order five-point
/// difference; `vals` holds `r - 2h, r - h, r, r + h, r + 2h`.
pub fn hprime_residual_five_point<T: Real>(
    vals: &[RadiusValues<T>],
    alpha: T,
    n1: usize,
) -> Result<T> {
    if vals.len() != 5 {
        return domain("five-point difference needs exactly five radii");
    }
    let h = vals[3].r - vals[2].r;
    let c = &vals[2];
    let fd = (T::lit(8.0) * (vals[3].h - vals[1].h) - (vals[4].h - vals[0].h)) / (T::lit(12.0) * h);
    let rhs =
        (T::lit(2.0) * alpha + T::from_count(n1)) * c.h / c.r + c.i / (c.r * (alpha + T::one()));
    Ok(relative_gap(rhs, fd))
}

/// One grid point of a frequency profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow<T> {
    pub r: T,
    pub h: T,
    pub i: T,
    pub n: T,
    /// `N` for `λ = 0`, else `e^{6|λ|r}(N + p(r))`.
    pub g: T,
    pub err_h: T,
    pub err_i: T,
    pub err_n: T,
    pub err_g: T,
    /// `G` with the `(α + n)` drift polynomial, for comparison.
    pub g_theorem: Option<T>,
}

impl<T: Real> ProfileRow<T> {
    pub const CSV_HEADER: [&'static str; 7] = ["r", "H", "I", "N", "G", "err_H", "err_I"];

    pub fn csv_values(&self) -> [T; 7] {
        [
            self.r, self.h, self.i, self.n, self.g, self.err_h, self.err_i,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyProfile<T> {
    pub n: usize,
    pub alpha: T,
    pub lambda: T,
    pub drift: Option<DriftPolynomial<T>>,
    pub rows: Vec<ProfileRow<T>>,
}

/// `H`, `I`, `N` and `G` over `cfg.radii`.
pub fn frequency_profile<T: Real>(
    u: &ExpPolyField<T>,
    cfg: &FrequencyConfig<T>,
) -> Result<FrequencyProfile<T>> {
    if u.is_zero() {
        return Err(Error::DegenerateField(
            "the zero field has no frequency".into(),
        ));
    }
    let engine = FrequencyEngine::from_config(u, cfg)?;
    let vals = engine.over(&cfg.radii)?;
    profile_from_values(&vals, cfg)
}

/// Assembles a profile from precomputed values.
pub fn profile_from_values<T: Real>(
    vals: &[RadiusValues<T>],
    cfg: &FrequencyConfig<T>,
) -> Result<FrequencyProfile<T>> {
    let lam = cfg.spec.lambda;
    let (drift, drift_th) = if lam == T::zero() {
        (None, None)
    } else {
        (
            Some(DriftPolynomial::new(cfg.spec, cfg.alpha, cfg.n1())?),
            Some(DriftPolynomial::theorem_variant(
                cfg.spec,
                cfg.alpha,
                cfg.n1(),
            )?),
        )
    };
    let six_l = T::lit(6.0) * lam.abs();
    let mut rows = Vec::with_capacity(vals.len());
    for v in vals {
        let n = frequency_ratio(v)?;
        let err_n = (v.err_i + n.abs() * v.err_h) / v.h;
        let growth = (six_l * v.r).exp();
        let (g, g_theorem) = match (&drift, &drift_th) {
            (Some(p), Some(q)) => (growth * (n + p.eval(v.r)), Some(growth * (n + q.eval(v.r)))),
            _ => (n, None),
        };
        let row = ProfileRow {
            r: v.r,
            h: v.h,
            i: v.i,
            n,
            g,
            err_h: v.err_h,
            err_i: v.err_i,
            err_n,
            err_g: growth * err_n,
            g_theorem,
        };
        if row.csv_values().iter().any(|x| !x.is_finite()) {
            return Err(Error::Numeric(format!(
                "non-finite frequency data at r = {}",
                v.r
            )));
        }
        rows.push(row);
    }
    Ok(FrequencyProfile {
        n: cfg.n,
        alpha: cfg.alpha,
        lambda: lam,
        drift,
        rows,
    })
}

/// Fails unless `|D u - λ u| <= 1e-10 · max(1, |u|)` on probe points of the
/// ball of the given radius.
pub fn require_eigen<T: Real>(u: &ExpPolyField<T>, spec: EigenSpec<T>, radius: T) -> Result<T> {
    let probes = probe_points(u.n(), 32, radius);
    let res = eigen_residual(u, spec, &probes)?;
    let mut scale = T::one();
    for p in &probes {
        scale = scale.max(u.evaluate(p)?.norm());
    }
    if res > T::lit(1e-10) * scale {
        return domain(format!(
            "field is not an eigenfield for lambda = {} (residual {res:e})",
            spec.lambda
        ));
    }
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport<T> {
    pub profile: FrequencyProfile<T>,
    /// `G(r_{i+1}) - G(r_i)`.
    pub increments: Vec<T>,
    /// Allowed decrease per step.
    pub slacks: Vec<T>,
    pub min_increment: T,
    /// Indices `i` with `G(r_{i+1}) < G(r_i) - slack_i`.
    pub violations: Vec<usize>,
    pub passed: bool,
    /// Smallest increment of the `(α + n)` variant of `G` (informational).
    pub theorem_variant_min_increment: Option<T>,
}

/// Checks `G(r_{i+1}) >= G(r_i) - slack_i` with
/// `slack_i = 1e-8 · max(1, |G(r_i)|) + err_G(r_i) + err_G(r_{i+1})`.
pub fn monotonicity_scan<T: Real>(
    u: &ExpPolyField<T>,
    cfg: &FrequencyConfig<T>,
) -> Result<MonotonicityReport<T>> {
    cfg.validate()?;
    let rmax = cfg.radii.last().copied().unwrap_or(T::one());
    require_eigen(u, cfg.spec, rmax)?;
    let profile = frequency_profile(u, cfg)?;
    Ok(monotonicity_from_profile(profile))
}

/// The monotonicity verdict for an already computed profile.
pub fn monotonicity_from_profile<T: Real>(profile: FrequencyProfile<T>) -> MonotonicityReport<T> {
    let rows = &profile.rows;
    let mut increments = Vec::new();
    let mut slacks = Vec::new();
    let mut violations = Vec::new();
    let mut min_th: Option<T> = None;
    for (i, w) in rows.windows(2).enumerate() {
        let inc = w[1].g - w[0].g;
        let slack = T::lit(1e-8) * w[0].g.abs().max(T::one()) + w[0].err_g + w[1].err_g;
        if inc < -slack {
            violations.push(i);
        }
        if let (Some(a), Some(b)) = (w[0].g_theorem, w[1].g_theorem) {
            min_th = Some(min_th.map_or(b - a, |m: T| m.min(b - a)));
        }
        increments.push(inc);
        slacks.push(slack);
    }
    let min_increment = increments.iter().copied().fold(T::infinity(), T::min);
    let min_increment = if increments.is_empty() {
        T::zero()
    } else {
        min_increment
    };
    let passed = violations.is_empty();
    MonotonicityReport {
        profile,
        increments,
        slacks,
        min_increment,
        violations,
        passed,
        theorem_variant_min_increment: min_th,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Multivector;
    use crate::field::families;
    use std::f64::consts::PI;

    fn cfg(n: usize, lambda: f64, radii: Vec<f64>) -> FrequencyConfig<f64> {
        FrequencyConfig::new(n, 2.0, EigenSpec::new(lambda).unwrap(), radii).unwrap()
    }

    #[test]
    fn config_validation() {
        let spec = EigenSpec::monogenic();
        assert!(FrequencyConfig::new(2, 1.5, spec, vec![0.5, 1.0]).is_err());
        assert!(FrequencyConfig::new(2, 2.0, spec, vec![1.0, 0.5]).is_err());
        assert!(FrequencyConfig::new(2, 2.0, spec, vec![0.0, 0.5]).is_err());
        assert!(FrequencyConfig::new(2, 2.0, spec, vec![0.5, 1.0]).is_ok());
    }

    #[test]
    fn radius_grids() {
        let g: Vec<f64> = radius_grid(0.1, 2.0, 5, GridSpacing::Log).unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[0] - 0.1).abs() < 1e-15 && (g[4] - 2.0).abs() < 1e-14);
        assert!((g[1] / g[0] - g[4] / g[3]).abs() < 1e-12);
        let l = radius_grid(1.0, 2.0, 3, GridSpacing::Linear).unwrap();
        assert_eq!(l, vec![1.0, 1.5, 2.0]);
        assert!(radius_grid(0.0, 1.0, 3, GridSpacing::Log).is_err());
        assert!(radius_grid(1.0, 2.0, 1, GridSpacing::Log).is_err());
    }

    #[test]
    fn h_of_constant() {
        let one = families::constant(Multivector::<f64>::one(2));
        let h = compute_h(&one, 1.0, &cfg(2, 0.0, vec![1.0])).unwrap();
        assert!((h - 32.0 * PI / 105.0).abs() < 1e-13);
        let two = one.scale(2.0);
        let h2 = compute_h(&two, 1.0, &cfg(2, 0.0, vec![1.0])).unwrap();
        assert!((h2 - 4.0 * h).abs() < 1e-13);
        assert_eq!(compute_i(&one, 0.7, &cfg(2, 0.0, vec![1.0])).unwrap(), 0.0);
    }

    #[test]
    fn n_of_fueter_is_six() {
        let z1 = families::fueter::<f64>(2, 1).unwrap();
        for r in [0.3, 1.0, 1.7] {
            let n = compute_n(&z1, r, &cfg(2, 0.0, vec![1.0])).unwrap();
            assert!((n - 6.0).abs() < 1e-12, "N({r}) = {n}");
        }
    }

    #[test]
    fn zero_field_is_degenerate() {
        let z = ExpPolyField::<f64>::zero(2);
        assert!(matches!(
            compute_n(&z, 1.0, &cfg(2, 0.0, vec![1.0])),
            Err(Error::DegenerateField(_))
        ));
        assert!(matches!(
            frequency_profile(&z, &cfg(2, 0.0, vec![1.0])),
            Err(Error::DegenerateField(_))
        ));
    }

    #[test]
    fn drift_examples() {
        let p = drift_poly(EigenSpec::<f64>::new(1.0).unwrap(), 2.0, 3).unwrap();
        assert!((p.a - 1.0).abs() < 1e-15);
        assert!((p.b - 14.0 / 3.0).abs() < 1e-14);
        assert!((p.c - 83.0 / 9.0).abs() < 1e-14);
        for r in [0.3, 1.0, 2.0] {
            assert!(p.ode_residual(r) < 1e-12);
        }
        assert!(drift_poly(EigenSpec::<f64>::monogenic(), 2.0, 3).is_err());
        let q =
            DriftPolynomial::theorem_variant(EigenSpec::<f64>::new(1.0).unwrap(), 2.0, 3).unwrap();
        assert!((p.c - q.c - 2.0).abs() < 1e-13);
    }

    #[test]
    fn divergence_identity_examples() {
        let c = cfg(2, 0.0, vec![1.0]);
        let one = families::constant(Multivector::<f64>::one(2));
        assert_eq!(divergence_identity_residual(&one, 1.0, &c).unwrap(), 0.0);
        let z1 = families::fueter::<f64>(2, 1).unwrap();
        assert!(divergence_identity_residual(&z1, 0.8, &c).unwrap() < 1e-8);
        let e = families::exp_constant(1.0, Multivector::<f64>::one(2)).unwrap();
        assert!(divergence_identity_residual(&e, 0.8, &cfg(2, 1.0, vec![1.0])).unwrap() < 1e-8);
    }

    #[test]
    fn hprime_identity_converges_at_second_order() {
        let z1 = families::fueter::<f64>(2, 1).unwrap();
        let fine = hprime_identity_residual(&z1, &cfg(2, 0.0, vec![0.999, 1.0, 1.001])).unwrap();
        let coarse = hprime_identity_residual(&z1, &cfg(2, 0.0, vec![0.99, 1.0, 1.01])).unwrap();
        assert!(fine < 1e-4, "fine residual {fine}");
        let ratio = coarse / fine;
        assert!((50.0..200.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn planar_eigenfield_is_monotone() {
        let u = families::exp_planar::<f64>(2, 1.0).unwrap();
        let radii = radius_grid(0.1, 2.0, 20, GridSpacing::Log).unwrap();
        let rep = monotonicity_scan(&u, &cfg(2, 1.0, radii)).unwrap();
        assert!(rep.passed, "violations {:?}", rep.violations);
        assert!(rep.min_increment > 0.0);
    }

    #[test]
    fn scan_rejects_non_eigenfields() {
        let x0 = ExpPolyField::<f64>::coordinate(2, 0).unwrap();
        assert!(matches!(
            monotonicity_scan(&x0, &cfg(2, 0.0, vec![0.5, 1.0])),
            Err(Error::Domain(_))
        ));
    }
}
