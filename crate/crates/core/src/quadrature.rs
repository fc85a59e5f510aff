//! Product quadrature on balls `B_r(c) ⊂ ℝ^{n₁}`.
//!
//! A ball rule is the tensor product of a radial Gauss–Legendre rule on
//! `[0, 1]` (with the `s^{n₁-1}` volume factor folded into its weights) and a
//! rule on the unit sphere. The sphere rule is built recursively with `x_0`
//! as the polar axis: `x = (t, √(1-t²) ω)` with `t` integrated by a
//! Gauss–Gegenbauer rule for the weight `(1-t²)^{(d-3)/2}` and `ω` by the
//! rule one dimension down, ending in the trapezoid rule on the circle.
//!
//! The polar and transverse orders are independent so that fields of low
//! degree in `x_1..x_n` but exponential in `x_0` stay cheap.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Smallest and largest supported ambient dimension `n₁ = n + 1`.
pub const MIN_N1: usize = 2;
pub const MAX_N1: usize = 5;

/// Largest order `refine_until` will try.
pub const MAX_ORDER: usize = 256;

/// Largest number of nodes a single rule may have.
pub const NODE_BUDGET: usize = 1 << 25;

/// Summation strategy for [`BallRule::integrate_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    /// Fixed-order sequential summation; bitwise reproducible.
    #[default]
    Deterministic,
    /// Parallel partial sums over radial shells.
    Parallel,
}

/// Orders of the three factor rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadOrders {
    /// Gauss–Legendre points in the radius.
    pub radial: usize,
    /// Gauss–Gegenbauer points along the `x_0` axis.
    pub polar: usize,
    /// Points per factor on the transverse sphere (the circle gets twice this).
    pub transverse: usize,
}

impl QuadOrders {
    pub fn uniform(order: usize) -> Self {
        QuadOrders {
            radial: order,
            polar: order,
            transverse: order,
        }
    }

    /// Doubles the radial and polar orders, and the transverse order unless
    /// `transverse_exact`.
    pub fn refined(self, transverse_exact: bool) -> Self {
        QuadOrders {
            radial: 2 * self.radial,
            polar: 2 * self.polar,
            transverse: if transverse_exact {
                self.transverse
            } else {
                2 * self.transverse
            },
        }
    }

    fn validate(self) -> Result<()> {
        if self.radial < 2 || self.polar < 2 || self.transverse < 1 {
            return domain(format!("quadrature orders too small: {self:?}"));
        }
        if self.radial.max(self.polar).max(self.transverse) > 4 * MAX_ORDER {
            return domain(format!("quadrature orders too large: {self:?}"));
        }
        Ok(())
    }

    /// Number of nodes of the ball rule in dimension `n1`.
    pub fn node_count(self, n1: usize) -> usize {
        self.radial.saturating_mul(sphere_node_count(n1, self))
    }

    /// Largest total degree integrated exactly over a ball in dimension `n1`.
    pub fn exact_degree(self, n1: usize) -> usize {
        let radial = (2 * self.radial).saturating_sub(n1);
        let sphere = if n1 == 2 {
            2 * self.polar.max(self.transverse) - 1
        } else {
            (2 * self.polar - 1).min(2 * self.transverse - 1)
        };
        radial.min(sphere)
    }
}

fn sphere_node_count(n1: usize, orders: QuadOrders) -> usize {
    match n1 {
        2 => 2 * orders.polar.max(orders.transverse),
        3 => orders.polar.saturating_mul(2 * orders.transverse),
        _ => orders
            .polar
            .saturating_mul(orders.transverse.saturating_pow((n1 - 3) as u32))
            .saturating_mul(2 * orders.transverse),
    }
}

fn check_n1(n1: usize) -> Result<()> {
    if !(MIN_N1..=MAX_N1).contains(&n1) {
        return domain(format!(
            "unsupported dimension n+1 = {n1} (supported {MIN_N1}..={MAX_N1})"
        ));
    }
    Ok(())
}

/// Volume of the unit ball in `ℝ^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / d as f64 * unit_ball_volume(d - 2),
    }
}

/// Surface area `σ_{d-1}` of the unit sphere in `ℝ^d`.
pub fn unit_sphere_area(d: usize) -> f64 {
    d as f64 * unit_ball_volume(d)
}

/// `vol(B_r) = π^{d/2} r^d / Γ(d/2 + 1)`.
pub fn ball_volume<T: Real>(d: usize, r: T) -> T {
    T::lit(unit_ball_volume(d)) * r.powi(d as i32)
}

/// Gauss rule for the weight `(1-t²)^β` on `[-1, 1]` with `m` points,
/// `β = (d-3)/2` for a sphere in `ℝ^d`, returned in `f64`.
///
/// Nodes come from the Golub–Welsch eigenproblem and are then polished by
/// Newton steps on the orthonormal recurrence; weights are the Christoffel
/// numbers at the polished nodes, so they are positive by construction.
pub fn gauss_gegenbauer(m: usize, two_beta: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let beta = two_beta as f64 / 2.0;
    // ∫(1-t²)^β dt = σ_{d-1}/σ_{d-2} with d = 2β + 3.
    let d = two_beta + 3;
    let mu0 = unit_sphere_area(d) / unit_sphere_area(d - 1);
    let b = |k: usize| {
        let k = k as f64;
        (k * (k + 2.0 * beta) / ((2.0 * k + 2.0 * beta + 1.0) * (2.0 * k + 2.0 * beta - 1.0)))
            .sqrt()
    };
    let off: Vec<f64> = (1..m).map(b).collect();
    let mut nodes = symmetric_tridiagonal_eigenvalues(&off);
    nodes.sort_by(|a, b| a.total_cmp(b));

    // Orthonormal p_0..p_m and p_m' at t.
    let eval = |t: f64| {
        let mut p_prev = 0.0;
        let mut p = 1.0 / mu0.sqrt();
        let mut dp_prev = 0.0;
        let mut dp = 0.0;
        let mut christoffel = p * p;
        for k in 0..m {
            let bk = if k == 0 { 0.0 } else { b(k) };
            let bk1 = b(k + 1);
            let p_next = (t * p - bk * p_prev) / bk1;
            let dp_next = (p + t * dp - bk * dp_prev) / bk1;
            p_prev = p;
            p = p_next;
            dp_prev = dp;
            dp = dp_next;
            if k + 1 < m {
                christoffel += p * p;
            }
        }
        (p, dp, christoffel)
    };
    let mut weights = Vec::with_capacity(m);
    for t in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = eval(*t);
            if dp != 0.0 {
                *t -= p / dp;
            }
        }
        weights.push(1.0 / eval(*t).2);
    }
    // Enforce exact symmetry.
    for i in 0..m / 2 {
        let j = m - 1 - i;
        let t = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -t;
        nodes[j] = t;
        weights[i] = w;
        weights[j] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    (nodes, weights)
}

/// Eigenvalues of the symmetric tridiagonal matrix with zero diagonal and the
/// given off-diagonal (implicit QL with Wilkinson shifts).
fn symmetric_tridiagonal_eigenvalues(off: &[f64]) -> Vec<f64> {
    let n = off.len() + 1;
    let mut d = vec![0.0f64; n];
    let mut e: Vec<f64> = off.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 100, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d
}

/// Gauss–Legendre rule on `[0, 1]` for `∫_0^1 g(s) s^{n₁-1} ds`; the weights
/// carry the `s^{n₁-1}` factor and sum to `1/n₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> RadialRule<T> {
    pub fn new(order: usize, n1: usize) -> Result<Self> {
        if order < 2 {
            return domain("radial order must be at least 2");
        }
        let (t, w) = gauss_gegenbauer(order, 0);
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for (ti, wi) in t.into_iter().zip(w) {
            let s = 0.5 * (ti + 1.0);
            nodes.push(T::lit(s));
            weights.push(T::lit(0.5 * wi * s.powi(n1 as i32 - 1)));
        }
        Ok(RadialRule { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes in `(0, 1)`; scale by `r` for a ball of radius `r`.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// Weights summing to `1/n₁`; multiply by `r^{n₁}` for radius `r`.
    pub fn weights(&self) -> &[T] {
        &self.weights
    }
}

/// Positive-weight rule on the unit sphere `S^{n₁-1} ⊂ ℝ^{n₁}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereRule<T> {
    n1: usize,
    /// Flattened, `n1` coordinates per node.
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> SphereRule<T> {
    pub fn new(n1: usize, polar: usize, transverse: usize) -> Result<Self> {
        check_n1(n1)?;
        if polar < 2 || transverse < 1 {
            return domain("sphere orders too small");
        }
        let (nodes, weights) = sphere_f64(n1, polar, transverse);
        Ok(SphereRule {
            n1,
            nodes: nodes.into_iter().map(T::lit).collect(),
            weights: weights.into_iter().map(T::lit).collect(),
        })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[T] {
        &self.nodes[i * self.n1..(i + 1) * self.n1]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }
}

fn circle(points: usize) -> (Vec<f64>, Vec<f64>) {
    let w = 2.0 * std::f64::consts::PI / points as f64;
    let mut nodes = Vec::with_capacity(2 * points);
    for k in 0..points {
        let phi = w * k as f64;
        nodes.push(phi.cos());
        nodes.push(phi.sin());
    }
    (nodes, vec![w; points])
}

fn sphere_f64(d: usize, polar: usize, transverse: usize) -> (Vec<f64>, Vec<f64>) {
    if d == 2 {
        return circle(2 * polar.max(transverse));
    }
    let (inner_nodes, inner_weights) = if d == 3 {
        circle(2 * transverse)
    } else {
        sphere_f64(d - 1, transverse, transverse)
    };
    let (t, wt) = gauss_gegenbauer(polar, d - 3);
    let inner_len = inner_weights.len();
    let mut nodes = Vec::with_capacity(polar * inner_len * d);
    let mut weights = Vec::with_capacity(polar * inner_len);
    for (&ti, &wi) in t.iter().zip(&wt) {
        let s = (1.0 - ti * ti).max(0.0).sqrt();
        for k in 0..inner_len {
            nodes.push(ti);
            nodes.extend(
                inner_nodes[k * (d - 1)..(k + 1) * (d - 1)]
                    .iter()
                    .map(|&w| s * w),
            );
            weights.push(wi * inner_weights[k]);
        }
    }
    (nodes, weights)
}

/// Quadrature on the unit ball centred at the origin. Cheap to rescale and
/// translate, so one instance serves every radius of a profile.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitBallRule<T> {
    n1: usize,
    orders: QuadOrders,
    radial: RadialRule<T>,
    sphere: SphereRule<T>,
}

impl<T: Real> UnitBallRule<T> {
    pub fn new(n1: usize, orders: QuadOrders) -> Result<Self> {
        check_n1(n1)?;
        orders.validate()?;
        let count = orders.node_count(n1);
        if count > NODE_BUDGET {
            return Err(Error::Convergence(format!(
                "rule with orders {orders:?} needs {count} nodes (budget {NODE_BUDGET})"
            )));
        }
        Ok(UnitBallRule {
            n1,
            orders,
            radial: RadialRule::new(orders.radial, n1)?,
            sphere: SphereRule::new(n1, orders.polar, orders.transverse)?,
        })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn orders(&self) -> QuadOrders {
        self.orders
    }

    pub fn radial(&self) -> &RadialRule<T> {
        &self.radial
    }

    pub fn sphere(&self) -> &SphereRule<T> {
        &self.sphere
    }

    pub fn node_count(&self) -> usize {
        self.radial.order() * self.sphere.len()
    }

    pub fn exact_degree(&self) -> usize {
        self.orders.exact_degree(self.n1)
    }

    /// The rule on `B_r(center)`.
    pub fn on_ball(&self, center: &[T], r: T) -> Result<BallRule<'_, T>> {
        if center.len() != self.n1 {
            return Err(Error::DimensionMismatch {
                expected: self.n1,
                found: center.len(),
            });
        }
        if !(r > T::zero()) || !r.is_finite() {
            return domain(format!("ball radius must be positive and finite, got {r}"));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::Numeric(
                "ball centre has non-finite coordinates".into(),
            ));
        }
        Ok(BallRule {
            unit: self,
            center: center.to_vec(),
            radius: r,
        })
    }
}

/// A unit rule mapped to `B_r(center)`.
#[derive(Clone, Debug)]
pub struct BallRule<'a, T> {
    unit: &'a UnitBallRule<T>,
    center: Vec<T>,
    radius: T,
}

impl<T: Real> BallRule<'_, T> {
    pub fn center(&self) -> &[T] {
        &self.center
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn exact_degree(&self) -> usize {
        self.unit.exact_degree()
    }

    pub fn unit(&self) -> &UnitBallRule<T> {
        self.unit
    }

    /// Visits the nodes of radial shell `i` in fixed order.
    fn shell(&self, i: usize, buf: &mut [T], mut visit: impl FnMut(&[T], T)) {
        let n1 = self.unit.n1;
        let s = self.unit.radial.nodes[i] * self.radius;
        let ws = self.unit.radial.weights[i] * self.radius.powi(n1 as i32);
        let sphere = &self.unit.sphere;
        for k in 0..sphere.len() {
            let dir = sphere.node(k);
            for j in 0..n1 {
                buf[j] = self.center[j] + s * dir[j];
            }
            visit(buf, ws * sphere.weights[k]);
        }
    }

    /// Calls `visit(x, w)` for every node in a fixed order.
    pub fn for_each_node(&self, mut visit: impl FnMut(&[T], T)) {
        let mut buf = vec![T::zero(); self.unit.n1];
        for i in 0..self.unit.radial.order() {
            self.shell(i, &mut buf, &mut visit);
        }
    }

    /// `Σ w_i f(x_i)` in fixed order.
    pub fn integrate(&self, f: impl Fn(&[T]) -> T) -> Result<T> {
        let mut acc = T::zero();
        self.for_each_node(|x, w| acc = acc + w * f(x));
        finite(acc)
    }

    pub fn integrate_with<F>(&self, f: F, reduction: Reduction) -> Result<T>
    where
        F: Fn(&[T]) -> T + Sync,
    {
        match reduction {
            Reduction::Deterministic => self.integrate(f),
            Reduction::Parallel => {
                let acc: T = (0..self.unit.radial.order())
                    .into_par_iter()
                    .map(|i| {
                        let mut buf = vec![T::zero(); self.unit.n1];
                        let mut acc = T::zero();
                        self.shell(i, &mut buf, |x, w| acc = acc + w * f(x));
                        acc
                    })
                    .sum();
                finite(acc)
            }
        }
    }

    /// Integrates `k` integrands at once: `f(x, out)` writes their values at
    /// `x` into `out`.
    pub fn integrate_vec(&self, k: usize, mut f: impl FnMut(&[T], &mut [T])) -> Result<Vec<T>> {
        let mut vals = vec![T::zero(); k];
        let mut acc = vec![T::zero(); k];
        self.for_each_node(|x, w| {
            f(x, &mut vals);
            for (a, &v) in acc.iter_mut().zip(&vals) {
                *a = *a + w * v;
            }
        });
        if acc.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite value in quadrature sum".into()));
        }
        Ok(acc)
    }
}

fn finite<T: Real>(v: T) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric("non-finite value in quadrature sum".into()))
    }
}

/// Builds the rule on `B_r(center)` with uniform sphere orders and evaluates
/// `∫ f`. Convenience for one-off integrals.
pub fn integrate_ball<T: Real>(
    n1: usize,
    center: &[T],
    r: T,
    radial_order: usize,
    sphere_order: usize,
    f: impl Fn(&[T]) -> T,
) -> Result<T> {
    let orders = QuadOrders {
        radial: radial_order,
        polar: sphere_order,
        transverse: sphere_order,
    };
    UnitBallRule::new(n1, orders)?
        .on_ball(center, r)?
        .integrate(f)
}

/// Result of [`refine_until`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Refined<T> {
    pub value: T,
    /// `|value(order) - value(order/2)|` at the accepted order.
    pub error: T,
    pub orders: QuadOrders,
}

/// Doubles all orders from 8 until two successive values differ by less
/// than `rel_tol · max(|value|, floor)`, where `floor` is the smallest
/// magnitude considered non-negligible.
pub fn refine_until<T: Real>(
    f: impl Fn(&[T]) -> T,
    n1: usize,
    center: &[T],
    r: T,
    rel_tol: T,
) -> Result<Refined<T>> {
    if !(rel_tol > T::zero()) {
        return domain("relative tolerance must be positive");
    }
    let mut orders = QuadOrders::uniform(8);
    let mut prev = UnitBallRule::new(n1, orders)?
        .on_ball(center, r)?
        .integrate(&f)?;
    loop {
        let next_orders = orders.refined(false);
        if next_orders.radial > MAX_ORDER || next_orders.node_count(n1) > NODE_BUDGET {
            return Err(Error::Convergence(format!(
                "ball integral not converged to {rel_tol:e} at orders {orders:?}"
            )));
        }
        let value = UnitBallRule::new(n1, next_orders)?
            .on_ball(center, r)?
            .integrate(&f)?;
        let error = (value - prev).abs();
        let floor = T::min_positive_value().sqrt();
        if error <= rel_tol * value.abs().max(floor) {
            return Ok(Refined {
                value,
                error,
                orders: next_orders,
            });
        }
        prev = value;
        orders = next_orders;
    }
}

/// How orders grow under refinement: factors known to be exact for the
/// integrand keep their order, the others double per level. The radial
/// order always doubles so that every estimate sees at least one changed
/// factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderPlan {
    pub base: QuadOrders,
    pub polar_exact: bool,
}

impl OrderPlan {
    pub fn new(base: QuadOrders) -> Self {
        OrderPlan {
            base,
            polar_exact: false,
        }
    }

    pub fn level(self, k: u32) -> QuadOrders {
        let f = 1usize << k;
        QuadOrders {
            radial: self.base.radial * f,
            polar: if self.polar_exact {
                self.base.polar
            } else {
                self.base.polar * f
            },
            transverse: self.base.transverse,
        }
    }
}

/// Lazily built unit-ball rules for successive refinement levels of a plan,
/// shareable across threads.
#[derive(Debug)]
pub struct RuleLadder<T> {
    n1: usize,
    plan: OrderPlan,
    levels: Vec<OnceLock<std::result::Result<UnitBallRule<T>, Error>>>,
}

/// Deepest refinement level a ladder will try.
const MAX_LEVEL: u32 = 6;

impl<T: Real> RuleLadder<T> {
    pub fn new(n1: usize, plan: OrderPlan) -> Result<Self> {
        check_n1(n1)?;
        plan.base.validate()?;
        Ok(RuleLadder {
            n1,
            plan,
            levels: (0..=MAX_LEVEL).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn plan(&self) -> OrderPlan {
        self.plan
    }

    pub fn level(&self, k: u32) -> Result<&UnitBallRule<T>> {
        let Some(slot) = self.levels.get(k as usize) else {
            return Err(Error::Convergence(format!(
                "refinement level {k} beyond the maximum {MAX_LEVEL}"
            )));
        };
        let orders = self.plan.level(k);
        slot.get_or_init(|| {
            if orders.radial > MAX_ORDER.max(self.plan.base.radial)
                || orders.polar > MAX_ORDER.max(self.plan.base.polar)
            {
                return Err(Error::Convergence(format!(
                    "orders {orders:?} exceed the maximum {MAX_ORDER}"
                )));
            }
            UnitBallRule::new(self.n1, orders)
        })
        .as_ref()
        .map_err(Clone::clone)
    }

    /// Integrates `k` integrands over `B_r(center)` at successive levels
    /// until `accept(values, errors)` holds, where `errors` are differences
    /// between the last two levels. Returns the finer values.
    pub fn integrate_adaptive(
        &self,
        center: &[T],
        r: T,
        k: usize,
        mut f: impl FnMut(&[T], &mut [T]),
        accept: impl Fn(&[T], &[T]) -> bool,
    ) -> Result<Adaptive<T>> {
        let mut coarse = self
            .level(0)?
            .on_ball(center, r)?
            .integrate_vec(k, &mut f)?;
        let mut level = 1;
        loop {
            let fine = self
                .level(level)?
                .on_ball(center, r)?
                .integrate_vec(k, &mut f)?;
            let errors: Vec<T> = fine
                .iter()
                .zip(&coarse)
                .map(|(a, b)| (*a - *b).abs())
                .collect();
            if accept(&fine, &errors) {
                return Ok(Adaptive {
                    values: fine,
                    errors,
                    orders: self.plan.level(level),
                });
            }
            if level >= MAX_LEVEL {
                return Err(Error::Convergence(format!(
                    "ball integral on radius {r} not converged at orders {:?} (differences {errors:?})",
                    self.plan.level(level)
                )));
            }
            coarse = fine;
            level += 1;
        }
    }
}

/// Result of [`RuleLadder::integrate_adaptive`].
#[derive(Clone, Debug, PartialEq)]
pub struct Adaptive<T> {
    pub values: Vec<T>,
    pub errors: Vec<T>,
    pub orders: QuadOrders,
}
