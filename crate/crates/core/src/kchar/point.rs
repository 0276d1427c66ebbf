use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::monomial::{Monomial, Var};
use crate::error::{Error, Result};

/// Redraw budget for seeded evaluation points.
pub const MAX_POINT_RETRIES: usize = 100;

/// Bounds for the numerator and denominator of sampled coordinates.
pub const SAMPLE_MIN: i64 = 2;
pub const SAMPLE_MAX: i64 = 97;

/// Exact nonzero rational values for a set of variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointAssignment {
    values: BTreeMap<Var, BigRational>,
}

impl PointAssignment {
    pub fn new() -> Self {
        PointAssignment::default()
    }

    /// Panics on a zero value: torus coordinates are units.
    pub fn set(&mut self, v: Var, value: BigRational) {
        assert!(!value.is_zero(), "point coordinate for {v} must be nonzero");
        self.values.insert(v, value);
    }

    pub fn with(mut self, v: Var, value: BigRational) -> Self {
        self.set(v, value);
        self
    }

    /// Convenience for integer or `p/q` literals in tests and examples.
    pub fn with_ratio(self, v: Var, num: i64, den: i64) -> Self {
        self.with(v, BigRational::new(num.into(), den.into()))
    }

    pub fn get(&self, v: Var) -> Result<&BigRational> {
        self.values.get(&v).ok_or(Error::UnassignedVariable(v))
    }

    pub fn contains(&self, v: Var) -> bool {
        self.values.contains_key(&v)
    }

    pub fn remove(&mut self, v: Var) -> Option<BigRational> {
        self.values.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &BigRational)> {
        self.values.iter().map(|(&v, q)| (v, q))
    }

    /// The point with every coordinate raised to the `k`-th power (Adams operation).
    pub fn power(&self, k: u32) -> PointAssignment {
        PointAssignment {
            values: self
                .values
                .iter()
                .map(|(&v, q)| (v, q.pow(k as i32)))
                .collect(),
        }
    }

    /// Multiplies every framing coordinate by `lambda`.
    pub fn scale_framing(&self, lambda: &BigRational) -> PointAssignment {
        PointAssignment {
            values: self
                .values
                .iter()
                .map(|(&v, q)| {
                    let q = if v.is_framing() { q * lambda } else { q.clone() };
                    (v, q)
                })
                .collect(),
        }
    }

    /// Exact value of a Laurent monomial.
    pub fn monomial(&self, m: &Monomial) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for &(v, e) in m.exponents() {
            let x = self.get(v)?;
            acc *= x.pow(e);
        }
        Ok(acc)
    }

    /// Dot product of the monomial's exponent vector with the coordinates,
    /// i.e. the value of the linear form attached to the weight.
    pub fn linear_form(&self, m: &Monomial) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for &(v, e) in m.exponents() {
            acc += self.get(v)? * BigRational::from_integer(BigInt::from(e));
        }
        Ok(acc)
    }
}

/// Deterministic stream of sample points, keyed by a 64-bit seed.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A rational `a/b` with `2 <= a, b <= 97` and `a != b`.
    pub fn value(&mut self) -> BigRational {
        loop {
            let a = self.rng.gen_range(SAMPLE_MIN..=SAMPLE_MAX);
            let b = self.rng.gen_range(SAMPLE_MIN..=SAMPLE_MAX);
            if a != b {
                return BigRational::new(a.into(), b.into());
            }
        }
    }

    pub fn point(&mut self, vars: &[Var]) -> PointAssignment {
        let mut p = PointAssignment::new();
        for &v in vars {
            p.set(v, self.value());
        }
        p
    }
}

/// Runs `f` at freshly drawn points until it succeeds, redrawing whenever the
/// failure is a pole or a vanishing denominator.
pub fn with_fresh_points<T>(
    seed: u64,
    vars: &[Var],
    mut f: impl FnMut(&PointAssignment) -> Result<T>,
) -> Result<(PointAssignment, T)> {
    let mut sampler = PointSampler::new(seed);
    for _ in 0..MAX_POINT_RETRIES {
        let p = sampler.point(vars);
        match f(&p) {
            Ok(v) => return Ok((p, v)),
            Err(e) if e.is_point_failure() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted(MAX_POINT_RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic_and_in_range() {
        let vars = [Var::T1, Var::T2, Var::W(1, 1)];
        let a = PointSampler::new(42).point(&vars);
        let b = PointSampler::new(42).point(&vars);
        assert_eq!(a, b);
        assert_ne!(a, PointSampler::new(43).point(&vars));

        let mut s = PointSampler::new(7);
        for _ in 0..500 {
            let q = s.value();
            assert!(!q.is_one());
            // numerator/denominator may share a factor, but the reduced value stays in range
            let lo = BigRational::new(SAMPLE_MIN.into(), SAMPLE_MAX.into());
            let hi = BigRational::new(SAMPLE_MAX.into(), SAMPLE_MIN.into());
            assert!(q >= lo && q <= hi);
        }
    }

    #[test]
    fn monomial_and_linear_form_values() {
        let p = PointAssignment::new()
            .with_ratio(Var::T1, 2, 1)
            .with_ratio(Var::T2, 3, 1);
        let m = Monomial::from_exponents([(Var::T1, 2), (Var::T2, -1)]);
        assert_eq!(p.monomial(&m).unwrap(), BigRational::new(4.into(), 3.into()));
        assert_eq!(p.linear_form(&m).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(
            p.monomial(&Monomial::var(Var::W(1, 1))),
            Err(Error::UnassignedVariable(Var::W(1, 1)))
        );
    }

    #[test]
    fn retries_are_bounded() {
        let r: Result<(PointAssignment, ())> =
            with_fresh_points(1, &[Var::T1], |_| Err(Error::ZeroDenominator));
        assert_eq!(r.unwrap_err(), Error::RetriesExhausted(MAX_POINT_RETRIES));

        let mut calls = 0;
        let (_, v) = with_fresh_points(1, &[Var::T1], |_| {
            calls += 1;
            if calls < 3 {
                Err(Error::PoleAtPoint(Monomial::one()))
            } else {
                Ok(calls)
            }
        })
        .unwrap();
        assert_eq!(v, 3);
    }
}
