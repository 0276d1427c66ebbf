use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::character::Character;
use super::monomial::Monomial;
use super::point::PointAssignment;
use crate::error::{Error, Result};

/// Product of linear forms `prod (mu . s)^k`, each form keyed by the weight
/// `t^mu` it linearises. Points assign `s1, s2, v_{ia}` through the variable
/// ids `T1, T2, W(i, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearFactored {
    factors: BTreeMap<Monomial, i64>,
}

impl LinearFactored {
    pub fn one() -> Self {
        LinearFactored::default()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.factors.iter().map(|(m, &k)| (m, k))
    }

    pub fn inverse(&self) -> LinearFactored {
        LinearFactored {
            factors: self.factors.iter().map(|(m, &k)| (m.clone(), -k)).collect(),
        }
    }

    pub fn eval(&self, p: &PointAssignment) -> Result<BigRational> {
        let mut num = BigRational::one();
        let mut den = BigRational::one();
        let mut vanishes = false;
        for (m, &k) in &self.factors {
            let v = p.linear_form(m)?;
            if v.is_zero() {
                if k < 0 {
                    return Err(Error::PoleAtPoint(m.clone()));
                }
                vanishes = true;
                continue;
            }
            let pw = v.pow(k.unsigned_abs() as i32);
            if k > 0 {
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
}

impl fmt::Display for LinearFactored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (m, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "e({m})^{k}")?;
        }
        Ok(())
    }
}

/// Cohomological Euler class: a weight `t^mu` maps to the linear form
/// `mu . s`, extended multiplicatively.
pub fn ecoh(c: &Character) -> Result<LinearFactored> {
    if c.constant_term() != 0 {
        return Err(Error::TrivialWeight);
    }
    Ok(LinearFactored {
        factors: c.iter().map(|(m, k)| (m.clone(), k)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kchar::Var;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_form_of_a_weight() {
        // e(t1^2 t2 w11^-1) = 2 s1 + s2 - v11
        let m = Monomial::from_exponents([(Var::T1, 2), (Var::T2, 1), (Var::W(1, 1), -1)]);
        let e = ecoh(&Character::monomial(m)).unwrap();
        let p = PointAssignment::new()
            .with_ratio(Var::T1, 5, 1)
            .with_ratio(Var::T2, 7, 1)
            .with_ratio(Var::W(1, 1), 11, 1);
        assert_eq!(e.eval(&p).unwrap(), q(2 * 5 + 7 - 11, 1));
    }

    #[test]
    fn multiplicativity() {
        // e(t1 - t2) = s1 / s2
        let c = &Character::var(Var::T1) - &Character::var(Var::T2);
        let p = PointAssignment::new()
            .with_ratio(Var::T1, 3, 1)
            .with_ratio(Var::T2, 4, 1);
        assert_eq!(ecoh(&c).unwrap().eval(&p).unwrap(), q(3, 4));
        assert_eq!(ecoh(&-c).unwrap().eval(&p).unwrap(), q(4, 3));
    }

    #[test]
    fn trivial_weight_rejected() {
        assert_eq!(ecoh(&Character::one()), Err(Error::TrivialWeight));
    }

    #[test]
    fn vanishing_denominator_is_a_pole() {
        // 1 / e(t1 t2^-1) at s1 = s2
        let c = -Character::monomial(Monomial::from_exponents([(Var::T1, 1), (Var::T2, -1)]));
        let p = PointAssignment::new()
            .with_ratio(Var::T1, 3, 1)
            .with_ratio(Var::T2, 3, 1);
        assert!(matches!(ecoh(&c).unwrap().eval(&p), Err(Error::PoleAtPoint(_))));
    }
}
