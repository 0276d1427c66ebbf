//! Dense univariate polynomials over `Q` and their fraction field in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `c * x^e`.
    pub fn monomial(c: BigRational, e: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn from_integers(coeffs: Vec<BigInt>) -> Self {
        Poly::new(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    /// `(k, p)` with `self = k p`, `p` integral with content one and a
    /// positive leading coefficient. The zero polynomial gives `(1, 0)`.
    pub fn primitive_split(&self) -> (BigRational, Poly) {
        let Some(lead) = self.leading() else {
            return (BigRational::one(), Poly::zero());
        };
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if lead.is_negative() {
            g = -g;
        }
        let prim = ints.into_iter().map(|c| c / &g).collect();
        (BigRational::new(g, l), Poly::from_integers(prim))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(BigRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            let shift = top - dd;
            if !c.is_zero() {
                for (k, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + k] -= &c * dc;
                }
            }
            quo[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Element of `Q(x)` with coprime numerator and monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnivarRatFun {
    num: Poly,
    den: Poly,
}

impl UnivarRatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(UnivarRatFun::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero denominator").recip();
        Ok(UnivarRatFun {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    /// `num / prod f^k`. Cancels common factors one denominator factor at a
    /// time, which is much cheaper than a full gcd when the factors are small.
    pub fn over_product(num: Poly, factors: &[(Poly, u32)]) -> Result<Self> {
        if factors.iter().any(|(f, _)| f.is_zero()) {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(UnivarRatFun::zero());
        }
        // integral primitive parts keep coefficient heights down; quotients by
        // primitive divisors stay integral
        let (mut k, mut num) = num.primitive_split();
        let mut den = Poly::constant(BigRational::one());
        for (f, mult) in factors {
            let (kf, fp) = f.primitive_split();
            for _ in 0..*mult {
                k /= &kf;
                let mut left = fp.clone();
                loop {
                    let g = Poly::gcd(&num, &left);
                    if g.degree() == Some(0) {
                        break;
                    }
                    let (_, gp) = g.primitive_split();
                    num = num.div_rem(&gp).0;
                    left = left.div_rem(&gp).0;
                }
                den = &den * &left;
            }
        }
        let lead = den.leading().expect("nonzero denominator").recip();
        Ok(UnivarRatFun {
            num: num.scale(&(k * &lead)),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        UnivarRatFun {
            num: p,
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        UnivarRatFun::from_poly(Poly::constant(c))
    }

    /// The free variable `x`.
    pub fn x() -> Self {
        UnivarRatFun::from_poly(Poly::monomial(BigRational::one(), 1))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn recip(&self) -> Result<Self> {
        UnivarRatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(UnivarRatFun {
                num: self.num.pow(k as u32),
                den: self.den.pow(k as u32),
            })
        } else {
            self.recip()?.pow(-k)
        }
    }

    /// Value at `x`; a pole of the canonical form is `PoleAtPoint`.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(crate::kchar::Monomial::one()));
        }
        Ok(self.num.eval(x) / d)
    }
}

impl Zero for UnivarRatFun {
    fn zero() -> Self {
        UnivarRatFun::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for UnivarRatFun {
    fn one() -> Self {
        UnivarRatFun::constant(BigRational::one())
    }
}

impl Add for UnivarRatFun {
    type Output = UnivarRatFun;
    fn add(self, rhs: UnivarRatFun) -> UnivarRatFun {
        &self + &rhs
    }
}

impl Add for &UnivarRatFun {
    type Output = UnivarRatFun;
    fn add(self, rhs: &UnivarRatFun) -> UnivarRatFun {
        if self.den == rhs.den {
            return UnivarRatFun::new(&self.num + &rhs.num, self.den.clone())
                .expect("denominator is nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        UnivarRatFun::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl Neg for UnivarRatFun {
    type Output = UnivarRatFun;
    fn neg(self) -> UnivarRatFun {
        UnivarRatFun {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Sub for UnivarRatFun {
    type Output = UnivarRatFun;
    fn sub(self, rhs: UnivarRatFun) -> UnivarRatFun {
        &self + &(-rhs)
    }
}

impl Mul for UnivarRatFun {
    type Output = UnivarRatFun;
    fn mul(self, rhs: UnivarRatFun) -> UnivarRatFun {
        &self * &rhs
    }
}

impl Mul for &UnivarRatFun {
    type Output = UnivarRatFun;
    fn mul(self, rhs: &UnivarRatFun) -> UnivarRatFun {
        UnivarRatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

/// Panics on division by zero, like the rational field it extends.
impl Div for UnivarRatFun {
    type Output = UnivarRatFun;
    fn div(self, rhs: UnivarRatFun) -> UnivarRatFun {
        let inv = rhs.recip().expect("division by the zero rational function");
        &self * &inv
    }
}

impl fmt::Display for UnivarRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}
