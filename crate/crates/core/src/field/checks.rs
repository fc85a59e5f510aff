//! Residual checks, sampling and the finite-difference derivative oracle.

use rand::Rng;

use super::{EigenSpec, ExpPolyField, Point};
use crate::clifford::Multivector;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

fn max_norm_over<T: Real>(v: &ExpPolyField<T>, samples: &[Point<T>]) -> Result<T> {
    if samples.is_empty() {
        return domain("residual needs at least one sample point");
    }
    let mut worst = T::zero();
    for x in samples {
        worst = worst.max(v.evaluate(x)?.norm());
    }
    Ok(worst)
}

fn max_component_over<T: Real>(v: &ExpPolyField<T>, samples: &[Point<T>]) -> Result<T> {
    if samples.is_empty() {
        return domain("residual needs at least one sample point");
    }
    let mut worst = T::zero();
    for x in samples {
        for (_, c) in v.evaluate(x)?.iter() {
            worst = worst.max(c.abs());
        }
    }
    Ok(worst)
}

/// `max_x |D u(x) - λ u(x)|` over the samples.
pub fn eigen_residual<T: Real>(
    u: &ExpPolyField<T>,
    spec: EigenSpec<T>,
    samples: &[Point<T>],
) -> Result<T> {
    max_norm_over(&(&u.dirac() - &u.scale(spec.lambda)), samples)
}

/// `max_x |∂̲ f(x)|` over the samples.
pub fn underline_residual<T: Real>(f: &ExpPolyField<T>, samples: &[Point<T>]) -> Result<T> {
    max_norm_over(&f.underline_dirac(), samples)
}

/// Largest componentwise residual of `Δu_A = λ(2∂_0 u_A - λ u_A)`.
pub fn laplacian_identity_residual<T: Real>(
    u: &ExpPolyField<T>,
    spec: EigenSpec<T>,
    samples: &[Point<T>],
) -> Result<T> {
    let lam = spec.lambda;
    let rhs = &u.partial(0)?.scale(lam + lam) - &u.scale(lam * lam);
    max_component_over(&(&u.laplacian() - &rhs), samples)
}

/// Central difference `(u(x + h e_j) - u(x - h e_j)) / 2h`.
pub fn fd_partial_oracle<T: Real>(
    u: &ExpPolyField<T>,
    j: usize,
    x: &Point<T>,
    h: T,
) -> Result<Multivector<T>> {
    if !(h > T::zero()) {
        return Err(Error::Domain(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    if j > u.n() {
        return domain(format!("coordinate index {j} outside 0..={}", u.n()));
    }
    let plus = u.evaluate(&x.shifted(j, h))?;
    let minus = u.evaluate(&x.shifted(j, -h))?;
    Ok((&plus - &minus).scale(T::one() / (h + h)))
}

/// Uniform samples from the closed ball of the given radius about the origin
/// of `ℝ^{n+1}` (rejection from the enclosing cube).
pub fn sample_ball<T: Real, R: Rng + ?Sized>(
    n: usize,
    count: usize,
    radius: T,
    rng: &mut R,
) -> Vec<Point<T>> {
    let mut out = Vec::with_capacity(count);
    let mut coords = vec![T::zero(); n + 1];
    while out.len() < count {
        for c in coords.iter_mut() {
            *c = T::lit(rng.gen_range(-1.0..=1.0));
        }
        if coords.iter().map(|&c| c * c).sum::<T>() <= T::one() {
            out.push(Point(coords.iter().map(|&c| c * radius).collect()));
        }
    }
    out
}

/// Fixed, well-spread probe points inside the ball of the given radius.
pub fn probe_points<T: Real>(n: usize, count: usize, radius: T) -> Vec<Point<T>> {
    let scale = 0.9 / ((n + 1) as f64).sqrt();
    (0..count)
        .map(|i| {
            let coords = (0..=n)
                .map(|j| {
                    let t = (i as f64 + 1.0) * 1.618_033_988_749_895
                        + (j as f64 + 1.0) * 0.754_877_666_246_693;
                    radius * T::lit(scale * (2.0 * (t * 2.399_963).sin() - 1.0).clamp(-1.0, 1.0))
                })
                .collect();
            Point(coords)
        })
        .collect()
}
