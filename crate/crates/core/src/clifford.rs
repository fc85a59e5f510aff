//! The real Clifford algebra generated by `e_1, ..., e_n` with
//! `e_j e_k + e_k e_j = -2 δ_jk`.
//!
//! Basis blades are subsets of `{1..n}` stored as bit masks (bit `j-1` for
//! `e_j`). Multivectors keep a sparse map from blade to coefficient and never
//! store exact zeros.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Error, Result};
use crate::scalar::{Real, Scalar};

/// Largest supported generator count (4096 blades).
pub const MAX_DIM: usize = 12;

/// A basis blade `e_A`, `A ⊆ {1..n}` in ascending order. The empty set is the
/// identity `e_0 = 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BladeIndex(u16);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    pub fn from_bits(bits: u16) -> Self {
        BladeIndex(bits)
    }

    /// Single generator `e_j`, `1 <= j <= MAX_DIM`.
    pub fn generator(j: usize) -> Result<Self> {
        if j == 0 || j > MAX_DIM {
            return domain(format!("generator index {j} outside 1..={MAX_DIM}"));
        }
        Ok(BladeIndex(1 << (j - 1)))
    }

    /// Builds a blade from a set of generator indices valid for `n`.
    /// Order does not matter; repeated indices are rejected.
    pub fn from_generators(gens: &[usize], n: usize) -> Result<Self> {
        check_dim(n)?;
        let mut bits = 0u16;
        for &j in gens {
            if j == 0 || j > n {
                return domain(format!("generator index {j} outside 1..={n}"));
            }
            let bit = 1u16 << (j - 1);
            if bits & bit != 0 {
                return domain(format!("generator e{j} repeated in blade"));
            }
            bits |= bit;
        }
        Ok(BladeIndex(bits))
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_scalar(self) -> bool {
        self.0 == 0
    }

    /// Generator indices in ascending order.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..16).filter(move |b| bits & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn is_valid_for(self, n: usize) -> bool {
        n <= MAX_DIM && (self.0 as u32) >> n == 0
    }

    /// `+1` or `-1`: the sign picked up by `e_A` under conjugation,
    /// `(-1)^{|A|(|A|+1)/2}`.
    pub fn conjugation_sign(self) -> i8 {
        let k = self.grade();
        if (k * (k + 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_scalar() {
            return write!(f, "1");
        }
        write!(f, "e")?;
        let many = self.generators().any(|j| j > 9);
        for (i, j) in self.generators().enumerate() {
            if many && i > 0 {
                write!(f, "_")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return domain(format!("generator count {n} outside 1..={MAX_DIM}"));
    }
    Ok(())
}

/// Product of two blades without validity checks: returns whether the sign
/// is negative, and the resulting blade (symmetric difference).
#[inline]
pub(crate) fn blade_mul_raw(a: u16, b: u16) -> (bool, u16) {
    // Transpositions needed to move each generator of `b` past the larger
    // generators of `a`.
    let mut swaps = 0u32;
    let mut s = a >> 1;
    while s != 0 {
        swaps += (s & b).count_ones();
        s >>= 1;
    }
    // Every shared generator squares to -1.
    swaps += (a & b).count_ones();
    (swaps % 2 == 1, a ^ b)
}

/// `e_A e_B = sign · e_C` with `C` the symmetric difference of `A` and `B`.
pub fn blade_product(a: BladeIndex, b: BladeIndex, n: usize) -> Result<(i8, BladeIndex)> {
    check_dim(n)?;
    for blade in [a, b] {
        if !blade.is_valid_for(n) {
            return domain(format!("blade {blade} not valid for n = {n}"));
        }
    }
    let (neg, c) = blade_mul_raw(a.0, b.0);
    Ok((if neg { -1 } else { 1 }, BladeIndex(c)))
}

/// Element of the Clifford algebra with `dim` generators.
#[derive(Clone, PartialEq)]
pub struct Multivector<T> {
    dim: usize,
    coeffs: BTreeMap<BladeIndex, T>,
}

impl<T: Scalar> Multivector<T> {
    /// # Panics
    ///
    /// If `dim` is not in `1..=MAX_DIM`. Use [`check_dim`]-validated input
    /// (for example [`Multivector::from_terms`]) for untrusted dimensions.
    pub fn zero(dim: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "generator count {dim} outside 1..={MAX_DIM}"
        );
        Multivector {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, value: T) -> Self {
        let mut m = Self::zero(dim);
        m.set(BladeIndex::SCALAR, value);
        m
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, T::one())
    }

    /// The generator `e_j`.
    pub fn basis(dim: usize, j: usize) -> Result<Self> {
        Self::blade(dim, BladeIndex::from_generators(&[j], dim)?, T::one())
    }

    pub fn blade(dim: usize, blade: BladeIndex, value: T) -> Result<Self> {
        check_dim(dim)?;
        if !blade.is_valid_for(dim) {
            return domain(format!("blade {blade} not valid for n = {dim}"));
        }
        let mut m = Self::zero(dim);
        m.set(blade, value);
        Ok(m)
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BladeIndex, T)>,
    {
        check_dim(dim)?;
        let mut m = Self::zero(dim);
        for (blade, value) in terms {
            if !blade.is_valid_for(dim) {
                return domain(format!("blade {blade} not valid for n = {dim}"));
            }
            m.add_to(blade, value);
        }
        Ok(m)
    }

    /// Paravector `x_0 + x_1 e_1 + ... + x_n e_n` from `n + 1` coordinates.
    pub fn paravector(coords: &[T]) -> Result<Self> {
        let dim = coords.len().saturating_sub(1);
        check_dim(dim)?;
        let mut m = Self::scalar(dim, coords[0]);
        for (j, &c) in coords.iter().enumerate().skip(1) {
            m.add_to(BladeIndex(1 << (j - 1)), c);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, blade: BladeIndex) -> T {
        self.coeffs.get(&blade).copied().unwrap_or_else(T::zero)
    }

    /// Nonzero coefficients in ascending blade order.
    pub fn iter(&self) -> impl Iterator<Item = (BladeIndex, T)> + '_ {
        self.coeffs.iter().map(|(&b, &c)| (b, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn set(&mut self, blade: BladeIndex, value: T) {
        if value == T::zero() {
            self.coeffs.remove(&blade);
        } else {
            self.coeffs.insert(blade, value);
        }
    }

    pub(crate) fn add_to(&mut self, blade: BladeIndex, value: T) {
        let next = self.coeff(blade) + value;
        self.set(blade, next);
    }

    /// `Sc(x)`, the coefficient of the identity blade.
    pub fn scalar_part(&self) -> T {
        self.coeff(BladeIndex::SCALAR)
    }

    /// Everything but the scalar part.
    pub fn non_scalar_part(&self) -> Self {
        let mut m = self.clone();
        m.coeffs.remove(&BladeIndex::SCALAR);
        m
    }

    pub fn is_paravector(&self) -> bool {
        self.coeffs.keys().all(|b| b.grade() <= 1)
    }

    /// Clifford conjugation: `ē_j = -e_j` extended as an anti-automorphism.
    pub fn conjugate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&b, &c)| (b, if b.conjugation_sign() < 0 { -c } else { c }))
            .collect();
        Multivector {
            dim: self.dim,
            coeffs,
        }
    }

    pub fn scale(&self, s: T) -> Self {
        let mut m = Self::zero(self.dim);
        for (&b, &c) in &self.coeffs {
            m.set(b, c * s);
        }
        m
    }

    /// `Σ_A x_A²`.
    pub fn norm_sqr(&self) -> T {
        self.coeffs.values().fold(T::zero(), |acc, &c| acc + c * c)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut m = self.clone();
        for (&b, &c) in &other.coeffs {
            m.add_to(b, c);
        }
        Ok(m)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Bilinear extension of [`blade_product`].
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut m = Self::zero(self.dim);
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                let (neg, c) = blade_mul_raw(a.0, b.0);
                let v = ca * cb;
                m.add_to(BladeIndex(c), if neg { -v } else { v });
            }
        }
        Ok(m)
    }

    /// `x^{-1} = x̄ / |x|²` for a nonzero paravector.
    pub fn paravector_inverse(&self) -> Result<Self> {
        if !self.is_paravector() {
            return domain("inverse formula only applies to paravectors");
        }
        let n2 = self.norm_sqr();
        if n2 == T::zero() {
            return Err(Error::Singular("zero paravector has no inverse".into()));
        }
        let conj = self.conjugate();
        let mut m = Self::zero(self.dim);
        for (&b, &c) in &conj.coeffs {
            m.set(b, c / n2);
        }
        Ok(m)
    }

    /// Maps coefficients into another scalar type.
    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Multivector<U> {
        let mut m = Multivector::zero(self.dim);
        for (&b, &c) in &self.coeffs {
            m.set(b, f(c));
        }
        m
    }
}

impl<T: Real> Multivector<T> {
    /// `|x| = (Sc(x̄ x))^{1/2} = (Σ_A x_A²)^{1/2}`.
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for b in self.coeffs.keys().chain(other.coeffs.keys()) {
            worst = worst.max((self.coeff(*b) - other.coeff(*b)).abs());
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.values().all(|c| c.is_finite())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if b.is_scalar() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}{b}")?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl<T: Scalar> Neg for &Multivector<T> {
    type Output = Multivector<T>;

    fn neg(self) -> Multivector<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Neg for Multivector<T> {
    type Output = Multivector<T>;

    fn neg(self) -> Multivector<T> {
        -&self
    }
}

// Operator forms panic on dimension mismatch, like shape errors in array
// libraries; the `try_*` methods report it instead.
impl<T: Scalar> Add for &Multivector<T> {
    type Output = Multivector<T>;

    fn add(self, rhs: Self) -> Multivector<T> {
        self.try_add(rhs).expect("multivector dimensions differ")
    }
}

impl<T: Scalar> Add for Multivector<T> {
    type Output = Multivector<T>;

    fn add(self, rhs: Self) -> Multivector<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for &Multivector<T> {
    type Output = Multivector<T>;

    fn sub(self, rhs: Self) -> Multivector<T> {
        self.try_sub(rhs).expect("multivector dimensions differ")
    }
}

impl<T: Scalar> Sub for Multivector<T> {
    type Output = Multivector<T>;

    fn sub(self, rhs: Self) -> Multivector<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for &Multivector<T> {
    type Output = Multivector<T>;

    fn mul(self, rhs: Self) -> Multivector<T> {
        self.geometric_product(rhs)
            .expect("multivector dimensions differ")
    }
}

impl<T: Scalar> Mul for Multivector<T> {
    type Output = Multivector<T>;

    fn mul(self, rhs: Self) -> Multivector<T> {
        &self * &rhs
    }
}
