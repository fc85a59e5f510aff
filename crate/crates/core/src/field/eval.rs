//! Compiled evaluation of several fields at once.
//!
//! Quadrature evaluates the same handful of fields (a field, its partials,
//! its Laplacian) at millions of nodes. A [`FieldBundle`] merges their terms
//! by monomial so each power product and exponential is computed once per
//! node, and lays the blade components out densely.

use std::collections::BTreeMap;

use super::ExpPolyField;
use crate::clifford::BladeIndex;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug)]
struct Monomial<T> {
    exponents: Vec<u32>,
    rate: usize,
    /// `(output slot, coefficient)` contributions.
    contribs: Vec<(usize, T)>,
}

#[derive(Clone, Debug)]
pub struct FieldBundle<T> {
    n1: usize,
    fields: usize,
    blades: Vec<BladeIndex>,
    pow_offsets: Vec<usize>,
    pow_len: usize,
    rates: Vec<T>,
    monomials: Vec<Monomial<T>>,
}

/// Per-thread buffers for [`FieldBundle::eval`].
#[derive(Clone, Debug)]
pub struct BundleScratch<T> {
    pows: Vec<T>,
    exps: Vec<T>,
}

impl<T: Real> FieldBundle<T> {
    /// Compiles the fields; all must share the dimension `n`.
    pub fn new(fields: &[&ExpPolyField<T>]) -> Result<Self> {
        let Some(first) = fields.first() else {
            return domain("field bundle needs at least one field");
        };
        let n = first.n();
        if let Some(bad) = fields.iter().find(|f| f.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        let n1 = n + 1;

        let mut blades: Vec<BladeIndex> = fields.iter().flat_map(|f| f.support()).collect();
        blades.sort();
        blades.dedup();
        if blades.is_empty() {
            blades.push(BladeIndex::SCALAR);
        }
        let slot: BTreeMap<BladeIndex, usize> =
            blades.iter().enumerate().map(|(i, &b)| (b, i)).collect();

        let mut rates: Vec<T> = Vec::new();
        let mut max_pow = vec![0u32; n1];
        // (rate index, exponents) -> [(output slot, coefficient)]
        let mut merged: BTreeMap<_, Vec<(usize, T)>> = BTreeMap::new();
        for (fi, f) in fields.iter().enumerate() {
            for t in f.terms() {
                let rate = match rates.iter().position(|&r| r == t.rate) {
                    Some(i) => i,
                    None => {
                        rates.push(t.rate);
                        rates.len() - 1
                    }
                };
                for (m, &k) in max_pow.iter_mut().zip(&t.exponents) {
                    *m = (*m).max(k);
                }
                let entry = merged.entry((rate, t.exponents.clone())).or_default();
                for (b, c) in t.coeff.iter() {
                    entry.push((fi * blades.len() + slot[&b], c));
                }
            }
        }
        let monomials = merged
            .into_iter()
            .map(|((rate, exponents), contribs)| Monomial {
                exponents,
                rate,
                contribs,
            })
            .collect();

        let mut pow_offsets = Vec::with_capacity(n1);
        let mut pow_len = 0;
        for &m in &max_pow {
            pow_offsets.push(pow_len);
            pow_len += m as usize + 1;
        }
        Ok(FieldBundle {
            n1,
            fields: fields.len(),
            blades,
            pow_offsets,
            pow_len,
            rates,
            monomials,
        })
    }

    /// Number of coordinates `n + 1`.
    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn field_count(&self) -> usize {
        self.fields
    }

    /// Blades present in any field; output slot `i` of each field holds the
    /// coefficient of `blades()[i]`.
    pub fn blades(&self) -> &[BladeIndex] {
        &self.blades
    }

    /// Length of the output buffer: `field_count() * blades().len()`.
    pub fn output_len(&self) -> usize {
        self.fields * self.blades.len()
    }

    pub fn scratch(&self) -> BundleScratch<T> {
        BundleScratch {
            pows: vec![T::zero(); self.pow_len],
            exps: vec![T::zero(); self.rates.len()],
        }
    }

    /// Writes every field's blade components at `x` into `out`, field-major.
    ///
    /// `x` must have `n1()` coordinates and `out` must hold `output_len()`
    /// values; both are checked only in debug builds.
    pub fn eval(&self, x: &[T], scratch: &mut BundleScratch<T>, out: &mut [T]) {
        debug_assert_eq!(x.len(), self.n1);
        debug_assert_eq!(out.len(), self.output_len());
        for (j, &xj) in x.iter().enumerate() {
            let start = self.pow_offsets[j];
            let end = self.pow_offsets.get(j + 1).copied().unwrap_or(self.pow_len);
            let mut p = T::one();
            for slot in &mut scratch.pows[start..end] {
                *slot = p;
                p = p * xj;
            }
        }
        for (e, &r) in scratch.exps.iter_mut().zip(&self.rates) {
            *e = (r * x[0]).exp();
        }
        out.iter_mut().for_each(|v| *v = T::zero());
        for m in &self.monomials {
            let mut v = scratch.exps[m.rate];
            for (j, &k) in m.exponents.iter().enumerate() {
                if k > 0 {
                    v = v * scratch.pows[self.pow_offsets[j] + k as usize];
                }
            }
            for &(i, c) in &m.contribs {
                out[i] = out[i] + c * v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Multivector;
    use crate::field::{sample_ball, Point};
    use rand::SeedableRng;

    #[test]
    fn bundle_matches_direct_evaluation() {
        let n = 3;
        let e1 = Multivector::<f64>::basis(n, 1).unwrap();
        let e23 = Multivector::blade(n, BladeIndex::from_bits(0b110), 0.5).unwrap();
        let x = |j| ExpPolyField::<f64>::coordinate(n, j).unwrap();
        let u = &x(1).product(&x(2)).unwrap().left_mul(&e1).unwrap()
            + &x(3).mul_exp(-1.2).left_mul(&e23).unwrap();
        let v = u.partial(0).unwrap();
        let w = ExpPolyField::constant(Multivector::scalar(n, 2.0));
        let bundle = FieldBundle::new(&[&u, &v, &w]).unwrap();
        let mut scratch = bundle.scratch();
        let mut out = vec![0.0; bundle.output_len()];
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for p in sample_ball::<f64, _>(n, 20, 1.5, &mut rng) {
            bundle.eval(p.coords(), &mut scratch, &mut out);
            for (fi, f) in [&u, &v, &w].iter().enumerate() {
                let direct = f
                    .evaluate(&Point::new(p.coords().to_vec()).unwrap())
                    .unwrap();
                for (s, &b) in bundle.blades().iter().enumerate() {
                    let got = out[fi * bundle.blades().len() + s];
                    assert!((got - direct.coeff(b)).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn bundle_rejects_mixed_dimensions() {
        let a = ExpPolyField::<f64>::coordinate(2, 1).unwrap();
        let b = ExpPolyField::<f64>::coordinate(3, 1).unwrap();
        assert!(matches!(
            FieldBundle::new(&[&a, &b]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(FieldBundle::<f64>::new(&[]).is_err());
    }
}
