//! Framing limits `w_{ia} = L^{N_{ia}}`, `L -> infinity`.
//!
//! The speeds are never instantiated: a strict hierarchy of exponents is
//! encoded as lexicographic dominance, with later indices in the order
//! `(1,1) < ... < (1,r1) < (2,1) < ... < (2,r2)` dominating earlier ones.
//! A factor `1 - m` tends to `1` when `m` decays, to `-m` when `m` grows,
//! and is kept when `m` carries no framing weight.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kchar::{efrak, FactoredForm, Monomial, PointAssignment, Var};
use crate::series::{localized_sum, EvalContext, QSeries};
use crate::vertex::{contribution, vertex_block, FixedPoint, Ranks, Slot};

/// Hierarchy of framing speeds for fixed ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpeedOrder {
    slots: Vec<Slot>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    Growing,
    Decaying,
    Neutral,
}

impl SpeedOrder {
    pub fn new(ranks: Ranks) -> Self {
        SpeedOrder {
            slots: ranks.slots(),
        }
    }

    /// Slots from slowest to fastest.
    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Framing exponents of `m`, fastest slot first.
    pub fn degree(&self, m: &Monomial) -> Vec<i32> {
        self.slots.iter().rev().map(|s| m.exponent(s.w())).collect()
    }

    pub fn growth(&self, m: &Monomial) -> Growth {
        match self.degree(m).into_iter().find(|&e| e != 0) {
            Some(e) if e > 0 => Growth::Growing,
            Some(_) => Growth::Decaying,
            None => Growth::Neutral,
        }
    }

    /// Integer speeds `N` realising the hierarchy for monomials with at most
    /// one positive and one negative framing exponent, as in the blocks.
    pub fn concrete_speeds(&self) -> Vec<(Var, u32)> {
        self.slots
            .iter()
            .enumerate()
            .map(|(k, s)| (s.w(), k as u32 + 1))
            .collect()
    }

    /// `t`-point extended by `w = L^N`.
    pub fn speed_point(&self, t_point: &PointAssignment, l: &BigRational) -> PointAssignment {
        let mut p = t_point.clone();
        for (v, n) in self.concrete_speeds() {
            p.set(v, l.pow(n as i32));
        }
        p
    }
}

/// Free function form of [`SpeedOrder::degree`].
pub fn l_degree(m: &Monomial, ord: &SpeedOrder) -> Vec<i32> {
    ord.degree(m)
}

/// `sign * monomial * factors` over the torus variables only, or zero.
///
/// Every factor `1 - m` is stored with `m` lexicographically positive, so
/// equal rational functions have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitForm {
    negative: bool,
    monomial: Monomial,
    factors: FactoredForm,
}

fn lex_positive(m: &Monomial) -> bool {
    m.exponents().first().map_or(true, |&(_, e)| e > 0)
}

impl LimitForm {
    pub fn one() -> Self {
        LimitForm {
            negative: false,
            monomial: Monomial::one(),
            factors: FactoredForm::one(),
        }
    }

    pub fn zero() -> Self {
        LimitForm {
            negative: false,
            monomial: Monomial::one(),
            factors: FactoredForm::zero(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        LimitForm {
            monomial: m,
            ..LimitForm::one()
        }
    }

    /// Canonical form of `(-1)^negative * m * f`.
    pub fn new(negative: bool, m: Monomial, f: &FactoredForm) -> Self {
        if f.is_zero() {
            return LimitForm::zero();
        }
        let mut negative = negative;
        let mut monomial = m;
        let mut factors = FactoredForm::one();
        for (w, c) in f.factors() {
            if lex_positive(w) {
                factors = factors.mul(&FactoredForm::factor(w.clone(), c));
            } else {
                // 1 - w = (-w)(1 - w^{-1})
                negative ^= c % 2 != 0;
                monomial = monomial.mul(&w.pow(c as i32));
                factors = factors.mul(&FactoredForm::factor(w.inv(), c));
            }
        }
        LimitForm {
            negative,
            monomial,
            factors,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_zero()
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.monomial.is_one() && self.factors.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.monomial
    }

    pub fn factors(&self) -> &FactoredForm {
        &self.factors
    }

    pub fn mul(&self, other: &LimitForm) -> LimitForm {
        if self.is_zero() || other.is_zero() {
            return LimitForm::zero();
        }
        LimitForm::new(
            self.negative ^ other.negative,
            self.monomial.mul(&other.monomial),
            &self.factors.mul(&other.factors),
        )
    }

    pub fn eval_point(&self, p: &PointAssignment) -> Result<BigRational> {
        let v = self.factors.eval_point(p)?;
        if v.is_zero() {
            return Ok(v);
        }
        let v = v * p.monomial(&self.monomial)?;
        Ok(if self.negative { -v } else { v })
    }
}

impl fmt::Display for LimitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", self.monomial)?;
        for (m, c) in self.factors.factors() {
            write!(f, " (1 - {m})^{c}")?;
        }
        Ok(())
    }
}

/// `lim_{L -> infinity}` of a factored form under the speed hierarchy.
pub fn framing_limit(f: &FactoredForm, ord: &SpeedOrder) -> Result<LimitForm> {
    if f.is_zero() {
        return Ok(LimitForm::zero());
    }
    let mut negative = false;
    let mut grown = Monomial::one();
    let mut kept = FactoredForm::one();
    for (m, c) in f.factors() {
        match ord.growth(m) {
            Growth::Decaying => {}
            Growth::Growing => {
                negative ^= c % 2 != 0;
                grown = grown.mul(&m.pow(c as i32));
            }
            Growth::Neutral => {
                if !m.framing_part().is_one() {
                    return Err(Error::Precondition(format!(
                        "weight {m} involves framing variables outside the speed order"
                    )));
                }
                kept = kept.mul(&FactoredForm::factor(m.clone(), c));
            }
        }
    }
    let w = grown.framing_part();
    if !w.is_one() {
        return Err(Error::DivergentLimit(w));
    }
    Ok(LimitForm::new(negative, grown, &kept))
}

/// Product over all ordered pairs of slots of the limits of `e(-v^{(ij,ab)})`.
pub fn block_limits(bn: &FixedPoint) -> Result<LimitForm> {
    let ord = SpeedOrder::new(bn.ranks());
    let slots = bn.ranks().slots();
    let mut out = LimitForm::one();
    for &from in &slots {
        for &to in &slots {
            let f = efrak(&-vertex_block(bn, from, to))?;
            out = out.mul(&framing_limit(&f, &ord)?);
        }
    }
    Ok(out)
}

/// Limit of the whole contribution `e(-T^vir)` at once.
pub fn contribution_limit(bn: &FixedPoint) -> Result<LimitForm> {
    framing_limit(&contribution(bn)?, &SpeedOrder::new(bn.ranks()))
}

/// `prod_{(i,a) < (j,b)} t_j^{n_{ia}}`.
pub fn crossing_monomial(bn: &FixedPoint) -> Monomial {
    let slots = bn.ranks().slots();
    let mut out = Monomial::one();
    for (k, &from) in slots.iter().enumerate() {
        for &to in &slots[k + 1..] {
            out = out.mul(&Monomial::power(Var::t(to.line), bn.part(from) as i32));
        }
    }
    out
}

/// `prod_a (t1^{r1-a} t2^{r2})^{n_{1a}} prod_a t2^{(r2-a) n_{2a}}`.
pub fn shift_monomial(bn: &FixedPoint) -> Monomial {
    let ranks = bn.ranks();
    let (r1, r2) = (ranks.r1 as i32, ranks.r2 as i32);
    let mut out = Monomial::one();
    for (s, n) in bn.entries() {
        let n = n as i32;
        let a = s.alpha as i32;
        let m = if s.line == 1 {
            Monomial::from_exponents([(Var::T1, (r1 - a) * n), (Var::T2, r2 * n)])
        } else {
            Monomial::power(Var::T2, (r2 - a) * n)
        };
        out = out.mul(&m);
    }
    out
}

/// Partition function evaluated through block-by-block framing limits.
pub fn z_via_limits(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    localized_sum(ranks, ctx.order, |bn| {
        block_limits(bn)?.eval_point(&ctx.point)
    })
}

/// Values of `e(-v)` at `w = L^N` for each `L`, next to the symbolic limit.
pub fn limit_approach(
    f: &FactoredForm,
    ord: &SpeedOrder,
    t_point: &PointAssignment,
    ls: &[BigRational],
) -> Result<(BigRational, Vec<BigRational>)> {
    let lim = framing_limit(f, ord)?.eval_point(t_point)?;
    let vals = ls
        .par_iter()
        .map(|l| f.eval_point(&ord.speed_point(t_point, l)))
        .collect::<Result<Vec<_>>>()?;
    Ok((lim, vals))
}
