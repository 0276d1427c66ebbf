//! Truncated q-series over exact scalars and the partition functions built on them.
//!
//! Every partition function here is a [`QSeries`] of exact rationals, obtained
//! by evaluating rational functions of the equivariant parameters at a seeded
//! point. Localized sums and closed formulas are computed by unrelated routes
//! so that coefficientwise equality is a meaningful check.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kchar::{
    ecoh, efrak, substitute_halfweights, sum_univar, FactoredForm, Monomial, PointAssignment, UnivarRatFun,
    Var,
};
use crate::vertex::{contribution, fixed_points, smooth_tangent, vertex_term, Ranks};

/// Exact field elements usable as series coefficients.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn from_rational(q: BigRational) -> Self;
}

impl Coefficient for BigRational {
    fn from_rational(q: BigRational) -> Self {
        q
    }
}

impl Coefficient for UnivarRatFun {
    fn from_rational(q: BigRational) -> Self {
        UnivarRatFun::constant(q)
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Power series truncated after `q^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Coefficient> QSeries<S> {
    /// Series with the given coefficients `c_0, ..., c_N`; panics when empty.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least q^0");
        QSeries { coeffs }
    }

    pub fn zero(order: u32) -> Self {
        QSeries {
            coeffs: vec![S::zero(); order as usize + 1],
        }
    }

    pub fn one(order: u32) -> Self {
        let mut s = QSeries::zero(order);
        s.coeffs[0] = S::one();
        s
    }

    /// `c * q^k`, or zero if `k` exceeds the order.
    pub fn monomial(order: u32, c: S, k: u32) -> Self {
        let mut s = QSeries::zero(order);
        if k <= order {
            s.coeffs[k as usize] = c;
        }
        s
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, n: u32) -> &S {
        &self.coeffs[n as usize]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series truncated at different orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.coeffs.len();
        let mut out = vec![S::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        QSeries { coeffs: out }
    }

    pub fn scale(&self, c: &S) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// The substitution `q -> c q`.
    pub fn rescale_q(&self, c: &S) -> Self {
        let mut pow = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pow.clone());
            pow = pow * c.clone();
        }
        QSeries { coeffs: out }
    }

    /// The substitution `q -> q^k`, truncated at the same order.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1);
        let mut out = QSeries::zero(self.order());
        for (n, a) in self.coeffs.iter().enumerate() {
            let e = n * k as usize;
            if e < out.coeffs.len() {
                out.coeffs[e] = a.clone();
            }
        }
        out
    }

    /// `exp(g)` for `g` with vanishing constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "exp needs a series without constant term".into(),
            ));
        }
        // n E_n = sum_{k=1}^n k g_k E_{n-k}
        let n_max = self.coeffs.len();
        let mut e: Vec<S> = Vec::with_capacity(n_max);
        e.push(S::one());
        for n in 1..n_max {
            let mut acc = S::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let kk = S::from_rational(rational(k as i64));
                acc = acc + kk * self.coeffs[k].clone() * e[n - k].clone();
            }
            e.push(acc / S::from_rational(rational(n as i64)));
        }
        Ok(QSeries { coeffs: e })
    }
}

impl<S: Coefficient + fmt::Display> fmt::Display for QSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| format!("({c})*q^{n}"))
            .collect();
        write!(f, "{} + O(q^{})", parts.join(" + "), self.coeffs.len())
    }
}

/// Plethystic exponential `exp(sum_k f(p^k; q^k) / k)`, truncated at `order`.
///
/// `adams(k)` must return `f` with every equivariant parameter raised to the
/// `k`-th power, as a series in `q` (not yet substituted `q -> q^k`).
pub fn plethystic_exp<S: Coefficient>(
    order: u32,
    mut adams: impl FnMut(u32) -> Result<QSeries<S>>,
) -> Result<QSeries<S>> {
    let mut log = QSeries::zero(order);
    for k in 1..=order {
        let fk = adams(k)?;
        if fk.order() != order {
            return Err(Error::Precondition(format!(
                "plethystic argument truncated at {} instead of {order}",
                fk.order()
            )));
        }
        if !fk.coeff(0).is_zero() {
            return Err(Error::Precondition(
                "plethystic argument must vanish at q = 0".into(),
            ));
        }
        let inv_k = S::from_rational(BigRational::new(BigInt::one(), BigInt::from(k)));
        log = log.add(&fk.substitute_power(k).scale(&inv_k));
    }
    log.exp()
}

/// `(1 - q)^{-c}`: coefficient of `q^n` is `c (c+1) ... (c+n-1) / n!`.
pub fn binom_series(c: &BigRational, order: u32) -> QSeries<BigRational> {
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    let mut cur = BigRational::one();
    coeffs.push(cur.clone());
    for n in 1..=order as i64 {
        cur = cur * (c + rational(n - 1)) / rational(n);
        coeffs.push(cur.clone());
    }
    QSeries::new(coeffs)
}

/// Evaluation point, the seed it was drawn from, and the truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalContext {
    pub point: PointAssignment,
    pub seed: u64,
    pub order: u32,
}

impl EvalContext {
    pub fn new(point: PointAssignment, seed: u64, order: u32) -> Self {
        EvalContext { point, seed, order }
    }
}

fn t12() -> Monomial {
    Monomial::from_exponents([(Var::T1, 1), (Var::T2, 1)])
}

fn det_ranks(ranks: Ranks) -> Monomial {
    Monomial::from_exponents([(Var::T1, ranks.r1 as i32), (Var::T2, ranks.r2 as i32)])
}

/// Localized partition function: coefficient `n` sums `e(-T^vir)` over fixed points of size `n`.
pub fn z_localized(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    localized_sum(ranks, ctx.order, |bn| {
        contribution(bn)?.eval_point(&ctx.point)
    })
}

pub(crate) fn localized_sum(
    ranks: Ranks,
    order: u32,
    weight: impl Fn(&crate::vertex::FixedPoint) -> Result<BigRational> + Sync,
) -> Result<QSeries<BigRational>> {
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    coeffs.push(BigRational::one());
    for n in 1..=order {
        let pts = fixed_points(ranks, n);
        let terms: Vec<BigRational> = pts.par_iter().map(&weight).collect::<Result<_>>()?;
        coeffs.push(terms.into_iter().fold(BigRational::zero(), |a, b| a + b));
    }
    Ok(QSeries::new(coeffs))
}

/// `(1 - t1 t2)(1 - t1^{r1} t2^{r2}) / ((1 - t1)(1 - t2))` in factored form.
pub fn closed_single_particle(ranks: Ranks) -> FactoredForm {
    FactoredForm::factor(t12(), 1)
        .mul(&FactoredForm::factor(det_ranks(ranks), 1))
        .mul(&FactoredForm::factor(Monomial::var(Var::T1), -1))
        .mul(&FactoredForm::factor(Monomial::var(Var::T2), -1))
}

/// Closed formula `Exp(q (1 - t1 t2)(1 - t1^{r1} t2^{r2}) / ((1 - t1)(1 - t2)))`.
pub fn z_closed(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    let g = closed_single_particle(ranks);
    plethystic_exp(ctx.order, |k| {
        let v = g.eval_point(&ctx.point.power(k))?;
        Ok(QSeries::monomial(ctx.order, v, 1))
    })
}

/// Rank-one series as `sum_n q^n prod_{a=1}^n (1 - t1 t2^a) / (1 - t2^a)`.
pub fn z_rank1_product(ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    let t1 = ctx.point.get(Var::T1)?;
    let t2 = ctx.point.get(Var::T2)?;
    let mut coeffs = vec![BigRational::one()];
    let mut cur = BigRational::one();
    let mut t2a = BigRational::one();
    for _ in 1..=ctx.order {
        t2a *= t2;
        let den = BigRational::one() - &t2a;
        if den.is_zero() {
            return Err(Error::PoleAtPoint(Monomial::var(Var::T2)));
        }
        cur = cur * (BigRational::one() - t1 * &t2a) / den;
        coeffs.push(cur.clone());
    }
    Ok(QSeries::new(coeffs))
}

/// Product of shifted rank-one closed forms:
/// `prod_{a <= r1} Z1(q t1^{r1-a} t2^{r2}) * prod_{a <= r2} Z2(q t2^{r2-a})`.
pub fn z_factorized(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    let z1 = z_closed(Ranks { r1: 1, r2: 0 }, ctx)?;
    let z2 = z_closed(Ranks { r1: 0, r2: 1 }, ctx)?;
    let mut out = QSeries::one(ctx.order);
    for alpha in 1..=ranks.r1 as i32 {
        let shift = Monomial::from_exponents([
            (Var::T1, ranks.r1 as i32 - alpha),
            (Var::T2, ranks.r2 as i32),
        ]);
        out = out.mul(&z1.rescale_q(&ctx.point.monomial(&shift)?));
    }
    for alpha in 1..=ranks.r2 as i32 {
        let shift = Monomial::power(Var::T2, ranks.r2 as i32 - alpha);
        out = out.mul(&z2.rescale_q(&ctx.point.monomial(&shift)?));
    }
    Ok(out)
}

/// Square root of the inverse determinant twist at size `n`, in half-weights:
/// `(t1^{r1} t2^{r2})^{-n/2} = u1^{-r1 n} u2^{-r2 n}`.
pub fn twist_monomial(ranks: Ranks, n: u32) -> Monomial {
    Monomial::from_exponents([
        (Var::U1, -((ranks.r1 * n) as i32)),
        (Var::U2, -((ranks.r2 * n) as i32)),
    ])
}

/// Twisted localized series in half-weights `u_i = t_i^{1/2}`.
pub fn zhat_localized(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    localized_sum(ranks, ctx.order, |bn| {
        let t = substitute_halfweights(&vertex_term(bn)?);
        let v = efrak(&-t)?.eval_point(&ctx.point)?;
        Ok(v * ctx.point.monomial(&twist_monomial(ranks, bn.size()))?)
    })
}

/// `[x] = x^{1/2} - x^{-1/2}` for `x^{1/2}` given as a half-weight monomial.
fn bracket(sqrt: &Monomial, p: &PointAssignment) -> Result<BigRational> {
    let v = p.monomial(sqrt)?;
    Ok(&v - v.recip())
}

/// Twisted closed formula `Exp(q [t1 t2][t1^{r1} t2^{r2}] / ([t1][t2]))` in half-weights.
pub fn zhat_closed(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    let u1 = Monomial::var(Var::U1);
    let u2 = Monomial::var(Var::U2);
    let u12 = u1.mul(&u2);
    let u_det = Monomial::from_exponents([(Var::U1, ranks.r1 as i32), (Var::U2, ranks.r2 as i32)]);
    plethystic_exp(ctx.order, |k| {
        let p = ctx.point.power(k);
        let den = bracket(&u1, &p)? * bracket(&u2, &p)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint(u12.clone()));
        }
        let v = bracket(&u12, &p)? * bracket(&u_det, &p)? / den;
        Ok(QSeries::monomial(ctx.order, v, 1))
    })
}

/// Cohomological localized series: coefficient `n` sums `1 / e(T^vir)`.
/// The point assigns `s1, s2, v_{ia}` through `T1, T2, W(i, a)`.
pub fn zcoh_localized(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    localized_sum(ranks, ctx.order, |bn| {
        let e = ecoh(&vertex_term(bn)?)?;
        e.inverse().eval(&ctx.point)
    })
}

/// Exponent `(s1 + s2)(r1 s1 + r2 s2) / (s1 s2)` of the cohomological closed form.
pub fn zcoh_exponent(ranks: Ranks, p: &PointAssignment) -> Result<BigRational> {
    let s1 = p.get(Var::T1)?;
    let s2 = p.get(Var::T2)?;
    let num = (s1 + s2) * (s1 * rational(ranks.r1 as i64) + s2 * rational(ranks.r2 as i64));
    Ok(num / (s1 * s2))
}

/// `(1 - q)^{-(s1 + s2)(r1 s1 + r2 s2)/(s1 s2)}`.
pub fn zcoh_closed(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    Ok(binom_series(&zcoh_exponent(ranks, &ctx.point)?, ctx.order))
}

/// Euler characteristics of the moduli spaces: `(1 - q)^{-(r1 + r2)}`.
pub fn euler_char_series(ranks: Ranks, order: u32) -> QSeries<BigRational> {
    let r = ranks.total() as u64;
    let coeffs = (0..=order as u64)
        .map(|n| BigRational::from_integer(binomial(BigInt::from(n + r - 1), BigInt::from(r - 1))))
        .collect();
    QSeries::new(coeffs)
}

/// Smooth case `r1 = 0` as a `chi_{-y}` genus with `y = t2`: coefficient `n`
/// sums `prod_m (1 - t2 m^{-1}) / (1 - m^{-1})` over the weights `m` of the
/// smooth tangent space.
pub fn z_chi_y(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    let y = ctx.point.get(Var::T2)?.clone();
    localized_sum(ranks, ctx.order, |bn| {
        let tangent = smooth_tangent(bn)?;
        let mut acc = BigRational::one();
        for (m, k) in tangent.iter() {
            if m.is_one() {
                return Err(Error::TrivialWeight);
            }
            let inv = ctx.point.monomial(&m.inv())?;
            let den = BigRational::one() - &inv;
            if den.is_zero() {
                return Err(Error::PoleAtPoint(m.clone()));
            }
            let factor = (BigRational::one() - &y * &inv) / den;
            if factor.is_zero() && k < 0 {
                return Err(Error::PoleAtPoint(m.clone()));
            }
            acc *= factor.pow(k as i32);
        }
        Ok(acc)
    })
}

/// The size-`n` coefficient restricted to `t1 = x`, all other parameters seeded.
#[derive(Clone, Debug, PartialEq)]
pub struct CyCertificate {
    pub ranks: Ranks,
    pub n: u32,
    pub function: UnivarRatFun,
    pub rest: PointAssignment,
}

impl CyCertificate {
    /// Value at `x = 1/t2`; a pole of the canonical form there is an error.
    pub fn value_on_cy_locus(&self) -> Result<BigRational> {
        let t2 = self.rest.get(Var::T2)?;
        self.function.eval(&t2.recip())
    }
}

/// Builds the canonical rational function in `t1` of the size-`n` coefficient.
/// Size zero is the constant `1`.
pub fn cy_vanishing_certificate(ranks: Ranks, n: u32, seed: u64) -> Result<CyCertificate> {
    let mut vars = vec![Var::T2];
    vars.extend(ranks.framing_vars());
    let (rest, function) = crate::kchar::with_fresh_points(seed, &vars, |rest| {
        if n == 0 {
            return Ok(UnivarRatFun::one());
        }
        let forms: Vec<FactoredForm> = fixed_points(ranks, n)
            .par_iter()
            .map(contribution)
            .collect::<Result<_>>()?;
        sum_univar(&forms, Var::T1, rest)
    })?;
    Ok(CyCertificate {
        ranks,
        n,
        function,
        rest,
    })
}
