//! Named test families of monogenic and eigen fields.

use super::{ck_extend, make_eigenfield, underline_extend, EigenSpec, ExpPolyField, ExpTerm};
use crate::clifford::Multivector;
use crate::error::{domain, Result};
use crate::scalar::Real;

/// The constant field `c`.
pub fn constant<T: Real>(c: Multivector<T>) -> ExpPolyField<T> {
    ExpPolyField::constant(c)
}

/// Fueter variable `z_j = x_j - x_0 e_j`, `1 <= j <= n`.
pub fn fueter<T: Real>(n: usize, j: usize) -> Result<ExpPolyField<T>> {
    if j == 0 || j > n {
        return domain(format!("Fueter index {j} outside 1..={n}"));
    }
    let e = Multivector::basis(n, j)?;
    let x0 = ExpPolyField::coordinate(n, 0)?;
    Ok(&ExpPolyField::coordinate(n, j)? - &x0.left_mul(&e)?)
}

/// Symmetrised product `(1/k!) Σ_σ z_{l_σ(1)} ··· z_{l_σ(k)}`, which is
/// monogenic and homogeneous of degree `k`.
pub fn fueter_symmetric<T: Real>(n: usize, indices: &[usize]) -> Result<ExpPolyField<T>> {
    if indices.is_empty() {
        return Ok(ExpPolyField::constant(Multivector::one(n)));
    }
    if indices.len() > 6 {
        return domain("symmetrised Fueter products are limited to degree 6");
    }
    let z: Vec<ExpPolyField<T>> = indices
        .iter()
        .map(|&j| fueter(n, j))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..z.len()).collect();
    let mut acc = ExpPolyField::zero(n);
    let mut count = 0usize;
    permute(&mut order, 0, &mut |perm| {
        let mut prod = z[perm[0]].clone();
        for &i in &perm[1..] {
            prod = prod.product(&z[i]).expect("same dimension");
        }
        acc = &acc + &prod;
        count += 1;
    });
    Ok(acc.scale(T::one() / T::from_count(count)))
}

fn permute(v: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Scalar polynomial in `x_1, ..., x_n` from `(coefficient, exponents)` pairs;
/// each exponent vector has `n` entries (no `x_0`).
pub fn spatial_polynomial<T: Real>(n: usize, terms: &[(T, Vec<u32>)]) -> Result<ExpPolyField<T>> {
    let terms = terms
        .iter()
        .map(|(c, k)| {
            if k.len() != n {
                return domain(format!("expected {n} spatial exponents, found {}", k.len()));
            }
            let mut exponents = vec![0];
            exponents.extend_from_slice(k);
            Ok(ExpTerm {
                exponents,
                rate: T::zero(),
                coeff: Multivector::scalar(n, *c),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ExpPolyField::from_terms(n, terms)
}

/// Monogenic CK extension of a spatial polynomial.
pub fn ck<T: Real>(n: usize, terms: &[(T, Vec<u32>)]) -> Result<ExpPolyField<T>> {
    ck_extend(&spatial_polynomial(n, terms)?)
}

/// `e^{λ x_0} c`, an eigenfield for every constant `c`.
pub fn exp_constant<T: Real>(lambda: T, c: Multivector<T>) -> Result<ExpPolyField<T>> {
    make_eigenfield(EigenSpec::new(lambda)?, &ExpPolyField::constant(c))
}

/// `e^{λ x_0} f` where `f` is the underline extension of a polynomial in
/// `x_2, ..., x_n` (exponent vectors have `n - 1` entries).
pub fn underline_exp<T: Real>(
    n: usize,
    lambda: T,
    terms: &[(T, Vec<u32>)],
) -> Result<ExpPolyField<T>> {
    if n < 2 {
        return domain("underline-exp family needs n >= 2");
    }
    let lifted: Vec<(T, Vec<u32>)> = terms
        .iter()
        .map(|(c, k)| {
            let mut e = vec![0];
            e.extend_from_slice(k);
            (*c, e)
        })
        .collect();
    let g = spatial_polynomial(n, &lifted)?;
    make_eigenfield(EigenSpec::new(lambda)?, &underline_extend(&g)?)
}

/// `e^{λ x_0} (x_1 e_1 - x_2 e_2)`.
pub fn exp_planar<T: Real>(n: usize, lambda: T) -> Result<ExpPolyField<T>> {
    if n < 2 {
        return domain("planar eigenfield needs n >= 2");
    }
    let x1e1 = ExpPolyField::coordinate(n, 1)?.left_mul(&Multivector::basis(n, 1)?)?;
    let x2e2 = ExpPolyField::coordinate(n, 2)?.left_mul(&Multivector::basis(n, 2)?)?;
    make_eigenfield(EigenSpec::new(lambda)?, &(&x1e1 - &x2e2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fueter_symmetric_is_monogenic_and_homogeneous() {
        for n in [2, 3] {
            for idx in [vec![1, 2], vec![1, 1, 2], vec![1, 2, 2, 1]] {
                let u = fueter_symmetric::<f64>(n, &idx).unwrap();
                assert_eq!(u.homogeneous_degree(), Some(idx.len() as u32));
                let max = u.dirac().max_coeff();
                assert!(max < 1e-14, "n={n} idx={idx:?} residual {max}");
            }
        }
    }

    #[test]
    fn fueter_rejects_bad_index() {
        assert!(fueter::<f64>(3, 0).is_err());
        assert!(fueter::<f64>(3, 4).is_err());
    }

    #[test]
    fn ck_example_x1_squared() {
        let n = 2;
        let u = ck::<f64>(n, &[(1.0, vec![2, 0])]).unwrap();
        let x = |j| ExpPolyField::<f64>::coordinate(n, j).unwrap();
        let e1 = Multivector::basis(n, 1).unwrap();
        let expected = &(&x(1).product(&x(1)).unwrap() - &x(0).product(&x(0)).unwrap())
            - &x(0)
                .product(&x(1))
                .unwrap()
                .left_mul(&e1.scale(2.0))
                .unwrap();
        assert_eq!(u, expected);
    }

    #[test]
    fn eigen_families_satisfy_equation() {
        for lam in [-1.0, 1.0, 2.0] {
            for u in [
                exp_constant(lam, Multivector::one(3)).unwrap(),
                exp_planar(3, lam).unwrap(),
                underline_exp(3, lam, &[(1.0, vec![1, 0]), (0.5, vec![0, 2])]).unwrap(),
            ] {
                let r = &u.dirac() - &u.scale(lam);
                assert!(r.max_coeff() < 1e-13);
            }
        }
    }
}
