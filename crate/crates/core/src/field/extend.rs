//! Constructions of monogenic and eigen fields from initial data.

use super::checks::{probe_points, underline_residual};
use super::{EigenSpec, ExpPolyField};
use crate::clifford::Multivector;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

fn require_no_x0<T: Real>(f: &ExpPolyField<T>, what: &str) -> Result<()> {
    if f.depends_on(0) {
        return domain(format!("{what} must not depend on x_0"));
    }
    Ok(())
}

/// Cauchy–Kovalevskaya extension of `f(x_1, ..., x_n)`:
/// `u = Σ_k (-x_0)^k / k! · ∂̲^k f`, the unique monogenic field with
/// `u|_{x_0 = 0} = f`.
pub fn ck_extend<T: Real>(f: &ExpPolyField<T>) -> Result<ExpPolyField<T>> {
    require_no_x0(f, "CK initial data")?;
    let n = f.n();
    let mut x0 = vec![0u32; n + 1];
    let mut u = ExpPolyField::zero(n);
    let mut power = f.clone();
    let mut k = 0u32;
    let mut coef = T::one();
    while !power.is_zero() {
        x0[0] = k;
        u = &u + &power.mul_monomial(&x0, coef);
        power = power.underline_dirac();
        k += 1;
        coef = -coef / T::from_count(k as usize);
    }
    Ok(u)
}

/// Extends `g(x_2, ..., x_n)` to `f(x_1, ..., x_n)` with `∂̲ f = 0` and
/// `f|_{x_1 = 0} = g`, via `f = Σ_k x_1^k / k! · (e_1 ∂̲')^k g` where
/// `∂̲' = Σ_{j>=2} e_j ∂_j`.
pub fn underline_extend<T: Real>(g: &ExpPolyField<T>) -> Result<ExpPolyField<T>> {
    let n = g.n();
    if n < 2 {
        return domain("underline extension needs n >= 2");
    }
    require_no_x0(g, "extension data")?;
    if g.depends_on(1) {
        return domain("extension data must not depend on x_1");
    }
    let e1 = Multivector::basis(n, 1)?;
    let mut x1 = vec![0u32; n + 1];
    let mut f = ExpPolyField::zero(n);
    let mut power = g.clone();
    let mut k = 0u32;
    let mut coef = T::one();
    while !power.is_zero() {
        x1[1] = k;
        f = &f + &power.mul_monomial(&x1, coef);
        power = power.spatial_dirac_from(2).left_mul(&e1)?;
        k += 1;
        coef = coef / T::from_count(k as usize);
    }
    Ok(f)
}

/// `u = e^{λ x_0} f` for `f` independent of `x_0` with `∂̲ f = 0`; then
/// `D u = λ u`.
pub fn make_eigenfield<T: Real>(
    spec: EigenSpec<T>,
    f: &ExpPolyField<T>,
) -> Result<ExpPolyField<T>> {
    require_no_x0(f, "eigenfield profile")?;
    let probes = probe_points::<T>(f.n(), 16, T::one());
    let res = underline_residual(f, &probes)?;
    let tol = T::lit(1e-12) * (T::one() + f.max_coeff());
    if res > tol {
        return Err(Error::Domain(format!(
            "profile is not underline-monogenic (residual {res:e})"
        )));
    }
    Ok(f.mul_exp(spec.lambda))
}
