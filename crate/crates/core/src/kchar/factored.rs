use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::character::Character;
use super::monomial::{Monomial, Var};
use super::point::PointAssignment;
use super::univar::{Poly, UnivarRatFun};
use crate::error::{Error, Result};

/// Product `prod (1 - m)^c` over nontrivial weights `m`, or the zero element.
///
/// This is the image of the K-theoretic Euler operator. Numerators and
/// denominators are never expanded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredForm {
    factors: BTreeMap<Monomial, i64>,
    zero: bool,
}

impl FactoredForm {
    pub fn one() -> Self {
        FactoredForm::default()
    }

    pub fn zero() -> Self {
        FactoredForm {
            factors: BTreeMap::new(),
            zero: true,
        }
    }

    /// `(1 - m)^mult`; panics on the trivial weight, which has no factor form.
    pub fn factor(m: Monomial, mult: i64) -> Self {
        assert!(!m.is_one(), "factor (1 - 1) is not representable");
        let mut f = FactoredForm::one();
        f.push(m, mult);
        f
    }

    fn push(&mut self, m: Monomial, mult: i64) {
        use std::collections::btree_map::Entry;
        if mult == 0 {
            return;
        }
        match self.factors.entry(m) {
            Entry::Vacant(v) => {
                v.insert(mult);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn is_one(&self) -> bool {
        !self.zero && self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.factors.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn mul(&self, other: &FactoredForm) -> FactoredForm {
        if self.zero || other.zero {
            return FactoredForm::zero();
        }
        let mut out = self.clone();
        for (m, &c) in &other.factors {
            out.push(m.clone(), c);
        }
        out
    }

    /// Multiplicative inverse; `None` for the zero element.
    pub fn inverse(&self) -> Option<FactoredForm> {
        if self.zero {
            return None;
        }
        Some(FactoredForm {
            factors: self.factors.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
            zero: false,
        })
    }

    /// Exact value at a point.
    pub fn eval_point(&self, p: &PointAssignment) -> Result<BigRational> {
        if self.zero {
            return Ok(BigRational::zero());
        }
        let mut num = BigRational::one();
        let mut den = BigRational::one();
        let mut vanishes = false;
        for (m, &c) in &self.factors {
            let v = BigRational::one() - p.monomial(m)?;
            if v.is_zero() {
                if c < 0 {
                    return Err(Error::PoleAtPoint(m.clone()));
                }
                vanishes = true;
                continue;
            }
            let pw = v.pow(c.unsigned_abs() as i32);
            if c > 0 {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        if vanishes {
            return Ok(BigRational::zero());
        }
        Ok(num / den)
    }

    /// Specialises every variable except `free` and returns the canonical
    /// rational function in `free`.
    pub fn eval_univar(&self, free: Var, rest: &PointAssignment) -> Result<UnivarRatFun> {
        sum_univar(std::slice::from_ref(self), free, rest)
    }

    /// `scalar * x^xpow * prod (1 - c x^e)^k` with every `e > 0`, or `None`
    /// for the zero function.
    fn split_univar(&self, free: Var, rest: &PointAssignment) -> Result<Option<UnivarTerm>> {
        if self.zero {
            return Ok(None);
        }
        let mut t = UnivarTerm {
            scalar: BigRational::one(),
            xpow: 0,
            binomials: BTreeMap::new(),
        };
        for (m, &k) in &self.factors {
            let e = m.exponent(free);
            let c = rest.monomial(&m.restrict(|v| v != free))?;
            if e == 0 {
                let v = BigRational::one() - c;
                if v.is_zero() {
                    if k > 0 {
                        return Ok(None);
                    }
                    return Err(Error::ZeroDenominator);
                }
                t.scalar *= v.pow(k as i32);
                continue;
            }
            let (d, key) = if e > 0 {
                (e as usize, c)
            } else {
                // 1 - c x^-d = (-c) x^-d (1 - x^d / c)
                let d = e.unsigned_abs() as usize;
                t.scalar *= (-&c).pow(k as i32);
                t.xpow -= d as i64 * k;
                (d, c.recip())
            };
            let slot = t.binomials.entry((d, key)).or_insert(0);
            *slot += k;
        }
        t.binomials.retain(|_, k| *k != 0);
        Ok(Some(t))
    }
}

struct UnivarTerm {
    scalar: BigRational,
    xpow: i64,
    binomials: BTreeMap<(usize, BigRational), i64>,
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn binomial_poly(d: usize, c: &BigRational) -> Poly {
    &Poly::constant(BigRational::one()) - &Poly::monomial(c.clone(), d)
}

/// Canonical rational function in `free` of a sum of factored forms.
///
/// The terms are put over the common denominator assembled from their binomial
/// factors, so the final reduction only runs gcds against those factors.
pub fn sum_univar(forms: &[FactoredForm], free: Var, rest: &PointAssignment) -> Result<UnivarRatFun> {
    let mut terms = Vec::with_capacity(forms.len());
    for f in forms {
        if let Some(t) = f.split_univar(free, rest)? {
            terms.push(t);
        }
    }
    let mut den_pow: BTreeMap<(usize, BigRational), i64> = BTreeMap::new();
    let mut x_den = 0i64;
    for t in &terms {
        x_den = x_den.max(-t.xpow);
        for (key, &k) in &t.binomials {
            let slot = den_pow.entry(key.clone()).or_insert(0);
            *slot = (*slot).max(-k);
        }
    }
    // each term as an integer polynomial times a rational scalar
    let mut num = Poly::zero();
    for t in &terms {
        let mut scalar = t.scalar.clone();
        let mut p = vec![BigInt::zero(); (t.xpow + x_den) as usize];
        p.push(BigInt::one());
        for (key, &d) in &den_pow {
            let k = t.binomials.get(key).copied().unwrap_or(0) + d;
            if k <= 0 {
                continue;
            }
            let (e, c) = key;
            // 1 - (a/b) x^e = (b - a x^e) / b
            let mut b = vec![BigInt::zero(); e + 1];
            b[0] = c.denom().clone();
            b[*e] = -c.numer();
            for _ in 0..k {
                p = int_mul(&p, &b);
            }
            scalar /= BigRational::from_integer(c.denom().pow(k as u32));
        }
        num = &num + &Poly::from_integers(p).scale(&scalar);
    }
    let mut den: Vec<(Poly, u32)> = den_pow
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|((e, c), &d)| (binomial_poly(*e, c), d as u32))
        .collect();
    if x_den > 0 {
        den.push((Poly::monomial(BigRational::one(), 1), x_den as u32));
    }
    UnivarRatFun::over_product(num, &den)
}

impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (m, c)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *c == 1 {
                write!(f, "(1 - {m})")?;
            } else {
                write!(f, "(1 - {m})^{c}")?;
            }
        }
        Ok(())
    }
}

/// K-theoretic Euler operator: `sum t^mu - sum t^nu` maps to
/// `prod (1 - t^-mu) / prod (1 - t^-nu)`.
///
/// A trivial weight with positive coefficient gives the zero element; with
/// negative coefficient it is `TrivialDenominator`.
pub fn efrak(c: &Character) -> Result<FactoredForm> {
    let triv = c.constant_term();
    if triv < 0 {
        return Err(Error::TrivialDenominator);
    }
    if triv > 0 {
        return Ok(FactoredForm::zero());
    }
    let mut out = FactoredForm::one();
    for (m, k) in c.iter() {
        out.push(m.inv(), k);
    }
    Ok(out)
}

/// Realises `t_i^{1/2}` by renaming `t_i -> u_i^2`, keeping exponents integral.
pub fn substitute_halfweights(c: &Character) -> Character {
    c.map_monomials(|m| {
        m.map_vars(|v, e| match v {
            Var::T1 => (Var::U1, 2 * e),
            Var::T2 => (Var::U2, 2 * e),
            other => (other, e),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }
    fn mono(pairs: &[(Var, i32)]) -> Monomial {
        Monomial::from_exponents(pairs.iter().copied())
    }

    #[test]
    fn efrak_examples() {
        let t1 = Character::var(Var::T1);
        let t2 = Character::var(Var::T2);
        assert_eq!(
            efrak(&t1).unwrap(),
            FactoredForm::factor(Monomial::power(Var::T1, -1), 1)
        );
        let expected = FactoredForm::factor(Monomial::power(Var::T1, -1), 1)
            .mul(&FactoredForm::factor(Monomial::power(Var::T2, -1), -1));
        assert_eq!(efrak(&(&t1 - &t2)).unwrap(), expected);
        assert!(efrak(&(&Character::one() + &t1)).unwrap().is_zero());
        assert_eq!(efrak(&-Character::one()), Err(Error::TrivialDenominator));
    }

    #[test]
    fn eval_point_examples() {
        let p = PointAssignment::new()
            .with_ratio(Var::T1, 2, 1)
            .with_ratio(Var::T2, 3, 1);
        let f = FactoredForm::factor(Monomial::power(Var::T1, -1), 1);
        assert_eq!(f.eval_point(&p).unwrap(), q(1, 2));

        let g = FactoredForm::factor(mono(&[(Var::T1, 1), (Var::T2, 1)]), 1)
            .mul(&FactoredForm::factor(Monomial::var(Var::T2), -1));
        assert_eq!(g.eval_point(&p).unwrap(), q(5, 2));

        let pole = FactoredForm::factor(Monomial::var(Var::T2), -1);
        let p1 = PointAssignment::new().with_ratio(Var::T2, 1, 1);
        assert!(matches!(pole.eval_point(&p1), Err(Error::PoleAtPoint(_))));
        assert_eq!(FactoredForm::zero().eval_point(&p).unwrap(), q(0, 1));
    }

    #[test]
    fn eval_univar_examples() {
        let t1t2 = mono(&[(Var::T1, 1), (Var::T2, 1)]);
        let f = FactoredForm::factor(t1t2.clone(), 1);
        let rest = PointAssignment::new().with_ratio(Var::T2, 3, 1);
        let got = f.eval_univar(Var::T1, &rest).unwrap();
        let want = UnivarRatFun::from_poly(Poly::new(vec![q(1, 1), q(-3, 1)]));
        assert_eq!(got, want);

        // (1 - x t2)/(1 - x) at t2 = 1 reduces to 1
        let g = f.mul(&FactoredForm::factor(Monomial::var(Var::T1), -1));
        let rest1 = PointAssignment::new().with_ratio(Var::T2, 1, 1);
        assert_eq!(g.eval_univar(Var::T1, &rest1).unwrap(), UnivarRatFun::one());

        // a denominator factor that is identically zero
        let bad = FactoredForm::factor(Monomial::var(Var::T2), -1);
        assert_eq!(bad.eval_univar(Var::T1, &rest1), Err(Error::ZeroDenominator));
    }

    #[test]
    fn eval_univar_handles_negative_powers() {
        // (1 - t1^-2 t2) with t2 = 5 is (x^2 - 5)/x^2
        let f = FactoredForm::factor(mono(&[(Var::T1, -2), (Var::T2, 1)]), 1);
        let rest = PointAssignment::new().with_ratio(Var::T2, 5, 1);
        let g = f.eval_univar(Var::T1, &rest).unwrap();
        for k in [2i64, 3, 7] {
            let x = q(k, 1);
            let full = rest.clone().with(Var::T1, x.clone());
            assert_eq!(g.eval(&x).unwrap(), f.eval_point(&full).unwrap());
        }
    }

    #[test]
    fn halfweight_substitution() {
        let c = Character::monomial(mono(&[(Var::T1, 1), (Var::T2, -1)]));
        assert_eq!(
            substitute_halfweights(&c),
            Character::monomial(mono(&[(Var::U1, 2), (Var::U2, -2)]))
        );
        // (t1^2 t2)^3 -> u1^12 u2^6
        let d = Character::monomial(mono(&[(Var::T1, 6), (Var::T2, 3)]));
        assert_eq!(
            substitute_halfweights(&d),
            Character::monomial(mono(&[(Var::U1, 12), (Var::U2, 6)]))
        );
    }
}
