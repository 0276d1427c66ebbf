use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, Var};

/// Virtual torus representation: integer combination of weights.
///
/// Zero coefficients are never stored, so two characters are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Character {
    terms: BTreeMap<Monomial, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    pub fn one() -> Self {
        Character::monomial(Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Character::term(m, 1)
    }

    pub fn var(v: Var) -> Self {
        Character::monomial(Monomial::var(v))
    }

    pub fn term(m: Monomial, coeff: i64) -> Self {
        let mut c = Character::zero();
        c.add_term(m, coeff);
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(terms: I) -> Self {
        let mut c = Character::zero();
        for (m, k) in terms {
            c.add_term(m, k);
        }
        c
    }

    pub fn add_term(&mut self, m: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Coefficient of the trivial weight.
    pub fn constant_term(&self) -> i64 {
        self.coeff(&Monomial::one())
    }

    /// Virtual dimension: the sum of the coefficients.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &k)| (m, k))
    }

    /// The involution `t^mu -> t^{-mu}`.
    pub fn bar(&self) -> Character {
        Character {
            terms: self.terms.iter().map(|(m, &k)| (m.inv(), k)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Character {
        if k == 0 {
            return Character::zero();
        }
        Character {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn shift(&self, m: &Monomial) -> Character {
        Character {
            terms: self.terms.iter().map(|(n, &c)| (n.mul(m), c)).collect(),
        }
    }

    /// Determinant line: the product of weights raised to their coefficients.
    pub fn det(&self) -> Monomial {
        self.terms
            .iter()
            .fold(Monomial::one(), |acc, (m, &k)| acc.mul(&m.pow(k as i32)))
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Character {
        Character::from_terms(self.terms.iter().map(|(m, &k)| (f(m), k)))
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (m, &k) in &rhs.terms {
            out.add_term(m.clone(), k);
        }
        out
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (m, &k) in &rhs.terms {
            out.add_term(m.clone(), -k);
        }
        out
    }
}

impl Mul for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        let mut out = Character::zero();
        for (a, &j) in &self.terms {
            for (b, &k) in &rhs.terms {
                out.add_term(a.mul(b), j * k);
            }
        }
        out
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Character {
            type Output = Character;
            fn $f(self, rhs: Character) -> Character {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Character> for Character {
            type Output = Character;
            fn $f(self, rhs: &Character) -> Character {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl std::iter::Sum for Character {
    fn sum<I: Iterator<Item = Character>>(iter: I) -> Character {
        iter.fold(Character::zero(), |acc, c| acc + c)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                write!(f, " ")?;
            }
            let a = c.abs();
            if a == 1 {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> Character {
        Character::var(Var::T1)
    }
    fn t2() -> Character {
        Character::var(Var::T2)
    }

    #[test]
    fn bar_examples() {
        assert_eq!(Character::one().bar(), Character::one());
        assert_eq!(t1().bar(), Character::monomial(Monomial::power(Var::T1, -1)));

        let w = Character::var(Var::W(1, 1));
        let c = (&t1() * &t2()).scale(2) - &w;
        let expected = Character::from_terms([
            (Monomial::from_exponents([(Var::T1, -1), (Var::T2, -1)]), 2),
            (Monomial::power(Var::W(1, 1), -1), -1),
        ]);
        assert_eq!(c.bar(), expected);
    }

    #[test]
    fn cancellation_removes_terms() {
        let c = &(&t1() + &t2()) - &t1();
        assert_eq!(c, t2());
        assert!((&t1() - &t1()).is_zero());
    }

    #[test]
    fn det_of_zero_is_trivial() {
        assert!(Character::zero().det().is_one());
    }

    #[test]
    fn rank_is_additive_and_multiplicative() {
        let a = &(&t1() + &t2()) - &Character::one().scale(3);
        let b = &t1().scale(4) + &t2().bar();
        assert_eq!((&a + &b).rank(), a.rank() + b.rank());
        assert_eq!((&a * &b).rank(), a.rank() * b.rank());
    }
}
