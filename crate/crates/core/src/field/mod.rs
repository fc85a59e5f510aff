//! Multivector-valued exponential-polynomial fields on `ℝ^{n+1}`.
//!
//! A field is a finite sum of terms `c · x_0^{k_0} ··· x_n^{k_n} · e^{μ x_0}`
//! with multivector coefficients `c`. The class is closed under every partial
//! derivative, so the Dirac operator, its conjugate and the Laplacian are
//! computed exactly by rewriting terms.

mod checks;
mod eval;
mod extend;
pub mod families;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::clifford::{check_dim, BladeIndex, Multivector};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

pub use checks::{
    eigen_residual, fd_partial_oracle, laplacian_identity_residual, probe_points, sample_ball,
    underline_residual,
};
pub use eval::{BundleScratch, FieldBundle};
pub use extend::{ck_extend, make_eigenfield, underline_extend};

/// A point `x = x_0 + x_1 e_1 + ... + x_n e_n` of `ℝ^{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<T>(Vec<T>);

impl<T: Real> Point<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return domain("a point needs at least the coordinates x_0 and x_1");
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Numeric("point has non-finite coordinates".into()));
        }
        Ok(Point(coords))
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![T::zero(); n + 1])
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    /// Generator count `n` (the point lives in `ℝ^{n+1}`).
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn norm(&self) -> T {
        self.0.iter().map(|&c| c * c).sum::<T>().sqrt()
    }

    /// Copy with coordinate `j` shifted by `h`.
    pub fn shifted(&self, j: usize, h: T) -> Self {
        let mut c = self.0.clone();
        c[j] = c[j] + h;
        Point(c)
    }
}

/// Parameter of the eigen-equation `D u = λ u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSpec<T> {
    pub lambda: T,
}

impl<T: Real> EigenSpec<T> {
    pub fn new(lambda: T) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::Numeric("eigenvalue must be finite".into()));
        }
        Ok(EigenSpec { lambda })
    }

    pub fn monogenic() -> Self {
        EigenSpec { lambda: T::zero() }
    }
}

/// One term `coeff · x^exponents · e^{rate · x_0}`.
#[derive(Clone, PartialEq)]
pub struct ExpTerm<T> {
    pub exponents: Vec<u32>,
    pub rate: T,
    pub coeff: Multivector<T>,
}

impl<T: Real> ExpTerm<T> {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.rate
            .partial_cmp(&other.rate)
            .unwrap_or(Ordering::Equal)
            .then_with(|| self.exponents.cmp(&other.exponents))
    }

    fn same_key(&self, other: &Self) -> bool {
        self.rate == other.rate && self.exponents == other.exponents
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// Canonical exponential-polynomial field: terms sorted by `(rate, exponents)`,
/// no repeated keys, no zero coefficients.
#[derive(Clone, PartialEq)]
pub struct ExpPolyField<T> {
    n: usize,
    terms: Vec<ExpTerm<T>>,
}

impl<T: Real> ExpPolyField<T> {
    pub fn zero(n: usize) -> Self {
        // Validates n through the multivector constructor.
        let _ = Multivector::<T>::zero(n);
        ExpPolyField {
            n,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Multivector<T>) -> Self {
        let n = c.dim();
        Self::from_raw(
            n,
            vec![ExpTerm {
                exponents: vec![0; n + 1],
                rate: T::zero(),
                coeff: c,
            }],
        )
    }

    /// The scalar coordinate function `x_j`, `0 <= j <= n`.
    pub fn coordinate(n: usize, j: usize) -> Result<Self> {
        check_dim(n)?;
        if j > n {
            return domain(format!("coordinate index {j} outside 0..={n}"));
        }
        let mut exponents = vec![0; n + 1];
        exponents[j] = 1;
        Ok(Self::from_raw(
            n,
            vec![ExpTerm {
                exponents,
                rate: T::zero(),
                coeff: Multivector::one(n),
            }],
        ))
    }

    pub fn monomial(exponents: Vec<u32>, rate: T, coeff: Multivector<T>) -> Result<Self> {
        let n = coeff.dim();
        Self::from_terms(
            n,
            vec![ExpTerm {
                exponents,
                rate,
                coeff,
            }],
        )
    }

    /// Validates and canonicalises a term list.
    pub fn from_terms(n: usize, terms: Vec<ExpTerm<T>>) -> Result<Self> {
        check_dim(n)?;
        for t in &terms {
            if t.exponents.len() != n + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: t.exponents.len(),
                });
            }
            if t.coeff.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: t.coeff.dim(),
                });
            }
            if !t.rate.is_finite() || !t.coeff.is_finite() {
                return Err(Error::Numeric(
                    "field term has non-finite rate or coefficient".into(),
                ));
            }
        }
        Ok(Self::from_raw(n, terms))
    }

    fn from_raw(n: usize, mut terms: Vec<ExpTerm<T>>) -> Self {
        terms.sort_by(|a, b| a.key_cmp(b));
        let mut merged: Vec<ExpTerm<T>> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.same_key(&t) => last.coeff = &last.coeff + &t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        ExpPolyField { n, terms: merged }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[ExpTerm<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total polynomial degree.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest degree in `x_0` alone.
    pub fn polar_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exponents[0]).max().unwrap_or(0)
    }

    /// Largest total degree in `x_1, ..., x_n`.
    pub fn transverse_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.exponents[1..].iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn has_exponentials(&self) -> bool {
        self.terms.iter().any(|t| t.rate != T::zero())
    }

    /// `Some(k)` when every term is a degree-`k` monomial without exponential.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.has_exponentials() {
            return None;
        }
        let k = self.terms.first()?.total_degree();
        self.terms
            .iter()
            .all(|t| t.total_degree() == k)
            .then_some(k)
    }

    /// Whether the field depends on coordinate `j`.
    pub fn depends_on(&self, j: usize) -> bool {
        self.terms
            .iter()
            .any(|t| t.exponents[j] > 0 || (j == 0 && t.rate != T::zero()))
    }

    /// Largest coefficient magnitude over all terms and blades.
    pub fn max_coeff(&self) -> T {
        self.terms
            .iter()
            .flat_map(|t| t.coeff.iter().map(|(_, c)| c.abs()))
            .fold(T::zero(), T::max)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .cloned()
            .collect();
        Ok(Self::from_raw(self.n, terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, s: T) -> Self {
        self.map_terms(|t| ExpTerm {
            coeff: t.coeff.scale(s),
            ..t.clone()
        })
    }

    /// `c · u` (left multiplication by a constant multivector).
    pub fn left_mul(&self, c: &Multivector<T>) -> Result<Self> {
        if c.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: c.dim(),
            });
        }
        Ok(self.map_terms(|t| ExpTerm {
            coeff: c * &t.coeff,
            ..t.clone()
        }))
    }

    /// `u · c` (right multiplication by a constant multivector).
    pub fn right_mul(&self, c: &Multivector<T>) -> Result<Self> {
        if c.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: c.dim(),
            });
        }
        Ok(self.map_terms(|t| ExpTerm {
            coeff: &t.coeff * c,
            ..t.clone()
        }))
    }

    /// Pointwise geometric product `u(x) v(x)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ExpTerm {
                    exponents: a
                        .exponents
                        .iter()
                        .zip(&b.exponents)
                        .map(|(x, y)| x + y)
                        .collect(),
                    rate: a.rate + b.rate,
                    coeff: &a.coeff * &b.coeff,
                });
            }
        }
        Ok(Self::from_raw(self.n, terms))
    }

    /// Multiplies by `factor · x^exponents`.
    pub fn mul_monomial(&self, exponents: &[u32], factor: T) -> Self {
        self.map_terms(|t| ExpTerm {
            exponents: t
                .exponents
                .iter()
                .zip(exponents)
                .map(|(a, b)| a + b)
                .collect(),
            rate: t.rate,
            coeff: t.coeff.scale(factor),
        })
    }

    /// Multiplies by `e^{μ x_0}`.
    pub fn mul_exp(&self, mu: T) -> Self {
        self.map_terms(|t| ExpTerm {
            rate: t.rate + mu,
            ..t.clone()
        })
    }

    /// The dilated field `x ↦ u(s x)`.
    pub fn dilate(&self, s: T) -> Self {
        self.map_terms(|t| ExpTerm {
            exponents: t.exponents.clone(),
            rate: t.rate * s,
            coeff: t.coeff.scale(s.powi(t.total_degree() as i32)),
        })
    }

    fn map_terms(&self, f: impl Fn(&ExpTerm<T>) -> ExpTerm<T>) -> Self {
        Self::from_raw(self.n, self.terms.iter().map(f).collect())
    }

    pub fn evaluate(&self, x: &Point<T>) -> Result<Multivector<T>> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.n(),
            });
        }
        let c = x.coords();
        let mut out = Multivector::zero(self.n);
        for t in &self.terms {
            let mut s = (t.rate * c[0]).exp();
            for (xj, &k) in c.iter().zip(&t.exponents) {
                if k > 0 {
                    s = s * xj.powi(k as i32);
                }
            }
            for (b, v) in t.coeff.iter() {
                out.add_to(b, v * s);
            }
        }
        Ok(out)
    }

    /// Exact `∂_j u`, `0 <= j <= n`.
    pub fn partial(&self, j: usize) -> Result<Self> {
        if j > self.n {
            return domain(format!("coordinate index {j} outside 0..={}", self.n));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * 2);
        for t in &self.terms {
            let k = t.exponents[j];
            if k > 0 {
                let mut exponents = t.exponents.clone();
                exponents[j] = k - 1;
                terms.push(ExpTerm {
                    exponents,
                    rate: t.rate,
                    coeff: t.coeff.scale(T::from_count(k as usize)),
                });
            }
            if j == 0 && t.rate != T::zero() {
                terms.push(ExpTerm {
                    exponents: t.exponents.clone(),
                    rate: t.rate,
                    coeff: t.coeff.scale(t.rate),
                });
            }
        }
        Ok(Self::from_raw(self.n, terms))
    }

    fn partial_unchecked(&self, j: usize) -> Self {
        self.partial(j).expect("coordinate index within range")
    }

    /// `Σ_{j=1}^n e_j ∂_j u`.
    pub fn underline_dirac(&self) -> Self {
        self.spatial_dirac_from(1)
    }

    /// `Σ_{j=first}^n e_j ∂_j u`.
    pub(crate) fn spatial_dirac_from(&self, first: usize) -> Self {
        let mut acc = Self::zero(self.n);
        for j in first..=self.n {
            let e = Multivector::basis(self.n, j).expect("generator within range");
            let d = self
                .partial_unchecked(j)
                .left_mul(&e)
                .expect("same dimension");
            acc = &acc + &d;
        }
        acc
    }

    /// `D u = ∂_0 u + Σ_j e_j ∂_j u`.
    pub fn dirac(&self) -> Self {
        &self.partial_unchecked(0) + &self.underline_dirac()
    }

    /// `D̄ u = ∂_0 u - Σ_j e_j ∂_j u`.
    pub fn dirac_bar(&self) -> Self {
        &self.partial_unchecked(0) - &self.underline_dirac()
    }

    /// `Σ_{j=0}^n ∂_j² u`, componentwise.
    pub fn laplacian(&self) -> Self {
        (0..=self.n).fold(Self::zero(self.n), |acc, j| {
            &acc + &self.partial_unchecked(j).partial_unchecked(j)
        })
    }

    /// Scalar component field `u_A`, as a field with scalar coefficients.
    pub fn component(&self, blade: BladeIndex) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| ExpTerm {
                exponents: t.exponents.clone(),
                rate: t.rate,
                coeff: Multivector::scalar(self.n, t.coeff.coeff(blade)),
            })
            .collect();
        Self::from_raw(self.n, terms)
    }

    /// Blades carrying a nonzero coefficient in some term.
    pub fn support(&self) -> Vec<BladeIndex> {
        let mut blades: Vec<BladeIndex> = self
            .terms
            .iter()
            .flat_map(|t| t.coeff.iter().map(|(b, _)| b))
            .collect();
        blades.sort();
        blades.dedup();
        blades
    }
}

impl<T: Real> fmt::Debug for ExpTerm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExpTerm({:?}, rate={}, {})",
            self.exponents, self.rate, self.coeff
        )
    }
}

impl<T: Real> fmt::Debug for ExpPolyField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPolyField(n={}; {self})", self.n)
    }
}

impl<T: Real> fmt::Display for ExpPolyField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            for (j, &k) in t.exponents.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·x{j}")?,
                    _ => write!(f, "·x{j}^{k}")?,
                }
            }
            if t.rate != T::zero() {
                write!(f, "·exp({}x0)", t.rate)?;
            }
        }
        Ok(())
    }
}

impl<T: Real> Neg for &ExpPolyField<T> {
    type Output = ExpPolyField<T>;

    fn neg(self) -> ExpPolyField<T> {
        self.scale(-T::one())
    }
}

impl<T: Real> Add for &ExpPolyField<T> {
    type Output = ExpPolyField<T>;

    fn add(self, rhs: Self) -> ExpPolyField<T> {
        self.try_add(rhs).expect("field dimensions differ")
    }
}

impl<T: Real> Sub for &ExpPolyField<T> {
    type Output = ExpPolyField<T>;

    fn sub(self, rhs: Self) -> ExpPolyField<T> {
        self.try_sub(rhs).expect("field dimensions differ")
    }
}
