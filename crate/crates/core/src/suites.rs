//! Named verification suites.
//!
//! Each suite compares two independent computations at seeded points (or
//! symbolically) and stops at the first disagreement.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::ser::{Serialize, SerializeMap, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::error::{Error, Result};
use crate::kchar::{efrak, with_fresh_points, Monomial, PointAssignment, Var};
use crate::limits::{crossing_monomial, framing_limit, shift_monomial, z_via_limits, LimitForm, SpeedOrder};
use crate::oracle::z_oracle;
use crate::series::{
    cy_vanishing_certificate, euler_char_series, z_chi_y, z_closed, z_factorized, z_localized,
    zcoh_closed, zcoh_localized, zhat_closed, zhat_localized, EvalContext, QSeries,
};
use crate::vertex::{fixed_points, smooth_tangent, vertex_block, vertex_term, FixedPoint, Ranks};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    ClosedForm,
    Framing,
    Factorization,
    Limits,
    Oracle,
    Cohomological,
    NoTwist,
    CyVanishing,
    EulerCount,
    SmoothChiY,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::ClosedForm,
        Suite::Framing,
        Suite::Factorization,
        Suite::Limits,
        Suite::Oracle,
        Suite::Cohomological,
        Suite::NoTwist,
        Suite::CyVanishing,
        Suite::EulerCount,
        Suite::SmoothChiY,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedForm => "closed-form",
            Suite::Framing => "framing",
            Suite::Factorization => "factorization",
            Suite::Limits => "limits",
            Suite::Oracle => "oracle",
            Suite::Cohomological => "cohomological",
            Suite::NoTwist => "no-twist",
            Suite::CyVanishing => "cy-vanishing",
            Suite::EulerCount => "euler-count",
            Suite::SmoothChiY => "smooth-chi-y",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub ranks: Ranks,
    pub order: u32,
    pub seed: u64,
    pub num_points: u32,
}

/// `"p/q"`, with the denominator always written.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Point values in assignment order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointRecord(pub Vec<(String, String)>);

impl PointRecord {
    pub fn from_point(p: &PointAssignment) -> Self {
        PointRecord(
            p.iter()
                .map(|(v, q)| (v.to_string(), rational_string(q)))
                .collect(),
        )
    }
}

impl Serialize for PointRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct Counterexample {
    pub label: String,
    pub point: PointRecord,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
}

struct Tally {
    checks: u64,
    failure: Option<Counterexample>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failure: None,
        }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }

    fn check(&mut self, ok: bool, fail: impl FnOnce() -> Counterexample) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(fail());
        }
    }

    fn series(&mut self, p: &PointAssignment, lhs: &QSeries<BigRational>, rhs: &QSeries<BigRational>) {
        for n in 0..=lhs.order().min(rhs.order()) {
            let (a, b) = (lhs.coeff(n), rhs.coeff(n));
            self.check(a == b, || Counterexample {
                label: format!("q^{n}"),
                point: PointRecord::from_point(p),
                lhs: rational_string(a),
                rhs: rational_string(b),
            });
            if self.done() {
                return;
            }
        }
    }

    fn symbolic(&mut self, ok: bool, label: impl FnOnce() -> String, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.check(ok, || Counterexample {
            label: label(),
            point: PointRecord::default(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    fn finish(self, suite: Suite) -> SuiteOutcome {
        SuiteOutcome {
            suite: suite.name().to_string(),
            passed: self.failure.is_none(),
            checks: self.checks,
            counterexample: self.failure,
        }
    }
}

/// Seed of the `k`-th point of a run.
pub fn point_seed(seed: u64, k: u32) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(k as u64)
}

fn u_vars(ranks: Ranks) -> Vec<Var> {
    let mut v = vec![Var::U1, Var::U2];
    v.extend(ranks.framing_vars());
    v
}

const T_VARS: [Var; 2] = [Var::T1, Var::T2];

type Pair = (QSeries<BigRational>, QSeries<BigRational>);

/// Draws `num_points` points and compares two series at each.
fn compare_at_points(
    cfg: &SuiteConfig,
    vars: &[Var],
    tally: &mut Tally,
    f: impl Fn(&EvalContext) -> Result<Pair>,
) -> Result<()> {
    for k in 0..cfg.num_points {
        let seed = point_seed(cfg.seed, k);
        let (p, (a, b)) =
            with_fresh_points(seed, vars, |p| f(&EvalContext::new(p.clone(), seed, cfg.order)))?;
        tally.series(&p, &a, &b);
        if tally.done() {
            break;
        }
    }
    Ok(())
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let ranks = cfg.ranks;
    let mut tally = Tally::new();
    match suite {
        Suite::ClosedForm => {
            compare_at_points(cfg, &ranks.torus_vars(), &mut tally, |ctx| {
                Ok((z_localized(ranks, ctx)?, z_closed(ranks, ctx)?))
            })?;
        }
        Suite::Factorization => {
            compare_at_points(cfg, &ranks.torus_vars(), &mut tally, |ctx| {
                Ok((z_localized(ranks, ctx)?, z_factorized(ranks, ctx)?))
            })?;
        }
        Suite::Oracle => {
            compare_at_points(cfg, &ranks.torus_vars(), &mut tally, |ctx| {
                Ok((z_oracle(ranks, ctx)?, z_localized(ranks, ctx)?))
            })?;
        }
        Suite::Cohomological => {
            compare_at_points(cfg, &ranks.torus_vars(), &mut tally, |ctx| {
                Ok((zcoh_localized(ranks, ctx)?, zcoh_closed(ranks, ctx)?))
            })?;
        }
        Suite::NoTwist => {
            compare_at_points(cfg, &u_vars(ranks), &mut tally, |ctx| {
                Ok((zhat_localized(ranks, ctx)?, zhat_closed(ranks, ctx)?))
            })?;
        }
        Suite::SmoothChiY => {
            if ranks.r1 != 0 {
                return Err(Error::Precondition(format!(
                    "smooth-chi-y needs r1 = 0, got ranks {ranks}"
                )));
            }
            smooth_identities(cfg, &mut tally)?;
            if !tally.done() {
                compare_at_points(cfg, &ranks.torus_vars(), &mut tally, |ctx| {
                    Ok((z_localized(ranks, ctx)?, z_chi_y(ranks, ctx)?))
                })?;
            }
        }
        Suite::Framing => framing(cfg, &mut tally)?,
        Suite::Limits => {
            limit_identities(cfg, &mut tally)?;
            if !tally.done() {
                compare_at_points(cfg, &T_VARS, &mut tally, |ctx| {
                    Ok((z_via_limits(ranks, ctx)?, z_closed(ranks, ctx)?))
                })?;
            }
        }
        Suite::CyVanishing => {
            'outer: for k in 0..cfg.num_points {
                for n in 1..=cfg.order {
                    let cert = cy_vanishing_certificate(ranks, n, point_seed(cfg.seed, k))?;
                    let v = cert.value_on_cy_locus()?;
                    tally.check(num_traits::Zero::is_zero(&v), || Counterexample {
                        label: format!("q^{n} at t1 = 1/t2"),
                        point: PointRecord::from_point(&cert.rest),
                        lhs: rational_string(&v),
                        rhs: "0/1".to_string(),
                    });
                    if tally.done() {
                        break 'outer;
                    }
                }
            }
        }
        Suite::EulerCount => {
            let series = euler_char_series(ranks, cfg.order);
            for n in 0..=cfg.order {
                let count = BigRational::from_integer(fixed_points(ranks, n).len().into());
                let want = series.coeff(n);
                tally.check(&count == want, || Counterexample {
                    label: format!("q^{n}"),
                    point: PointRecord::default(),
                    lhs: rational_string(&count),
                    rhs: rational_string(want),
                });
                if tally.done() {
                    break;
                }
            }
        }
    }
    Ok(tally.finish(suite))
}

/// Same `t`, several framing assignments: the coefficient vectors must agree.
fn framing(cfg: &SuiteConfig, tally: &mut Tally) -> Result<()> {
    let ranks = cfg.ranks;
    let (tp, _) = with_fresh_points(cfg.seed, &T_VARS, |p| {
        z_closed(ranks, &EvalContext::new(p.clone(), cfg.seed, cfg.order))
    })?;
    let framing = ranks.framing_vars();
    let mut first: Option<QSeries<BigRational>> = None;
    for k in 0..cfg.num_points.max(2) {
        let seed = point_seed(cfg.seed, k + 1);
        let (wp, z) = with_fresh_points(seed, &framing, |wp| {
            let mut p = tp.clone();
            for (v, q) in wp.iter() {
                p.set(v, q.clone());
            }
            z_localized(ranks, &EvalContext::new(p, seed, cfg.order))
        })?;
        match &first {
            None => first = Some(z),
            Some(z0) => {
                let mut p = tp.clone();
                for (v, q) in wp.iter() {
                    p.set(v, q.clone());
                }
                tally.series(&p, &z, z0);
                if tally.done() {
                    break;
                }
            }
        }
    }
    Ok(())
}

/// Both block limits for every ordered pair of slots, and the exponent identity.
fn limit_identities(cfg: &SuiteConfig, tally: &mut Tally) -> Result<()> {
    let ranks = cfg.ranks;
    let ord = SpeedOrder::new(ranks);
    for n in 0..=cfg.order {
        for bn in fixed_points(ranks, n) {
            check_block_limits(&bn, &ord, tally)?;
            let (a, b) = (crossing_monomial(&bn), shift_monomial(&bn));
            tally.symbolic(a == b, || format!("exponents at {bn}"), &a, &b);
            if tally.done() {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Checks `lim e(-v^{(ij,ab)}) = 1` and `lim e(-v^{(ji,ba)}) = t_j^{n_{ia}}` for
/// every pair `(i,a) < (j,b)` at `bn`.
pub fn check_block_limits(bn: &FixedPoint, ord: &SpeedOrder, tally_out: &mut impl BlockTally) -> Result<()> {
    let slots = bn.ranks().slots();
    for (k, &lo) in slots.iter().enumerate() {
        for &hi in &slots[k + 1..] {
            let fwd = framing_limit(&efrak(&-vertex_block(bn, lo, hi))?, ord)?;
            tally_out.record(fwd.is_one(), || format!("forward limit {lo:?}->{hi:?} at {bn}"), &fwd, &LimitForm::one());
            let want = LimitForm::monomial(Monomial::power(Var::t(hi.line), bn.part(lo) as i32));
            let back = framing_limit(&efrak(&-vertex_block(bn, hi, lo))?, ord)?;
            tally_out.record(back == want, || format!("backward limit {hi:?}->{lo:?} at {bn}"), &back, &want);
        }
    }
    Ok(())
}

/// Sink for symbolic checks; lets tests count block-limit checks directly.
pub trait BlockTally {
    fn record(&mut self, ok: bool, label: impl FnOnce() -> String, lhs: &LimitForm, rhs: &LimitForm);
}

impl BlockTally for Tally {
    fn record(&mut self, ok: bool, label: impl FnOnce() -> String, lhs: &LimitForm, rhs: &LimitForm) {
        self.symbolic(ok, label, lhs, rhs);
    }
}

/// Plain counter of passed and failed checks.
#[derive(Debug, Default)]
pub struct CountingTally {
    pub passed: u64,
    pub failed: Vec<String>,
}

impl BlockTally for CountingTally {
    fn record(&mut self, ok: bool, label: impl FnOnce() -> String, lhs: &LimitForm, rhs: &LimitForm) {
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(format!("{}: {lhs} != {rhs}", label()));
        }
    }
}

/// `T^vir = T - t2^{-1} T` at every fixed point up to the order.
fn smooth_identities(cfg: &SuiteConfig, tally: &mut Tally) -> Result<()> {
    let t2inv = Monomial::power(Var::T2, -1);
    for n in 0..=cfg.order {
        for bn in fixed_points(cfg.ranks, n) {
            let t = smooth_tangent(&bn)?;
            let want = &t - &t.shift(&t2inv);
            let got = vertex_term(&bn)?;
            tally.symbolic(got == want, || format!("tangent at {bn}"), &got, &want);
            if tally.done() {
                return Ok(());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(r1: u32, r2: u32, order: u32) -> SuiteConfig {
        SuiteConfig {
            ranks: Ranks::new(r1, r2).unwrap(),
            order,
            seed: 7,
            num_points: 2,
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn rationals_always_carry_a_denominator() {
        assert_eq!(rational_string(&BigRational::from_integer(3.into())), "3/1");
        assert_eq!(rational_string(&BigRational::new((-2).into(), 6.into())), "-1/3");
    }

    #[test]
    fn every_suite_passes_small() {
        for s in Suite::ALL {
            let c = if s == Suite::SmoothChiY { cfg(0, 2, 3) } else { cfg(1, 1, 3) };
            let out = run_suite(s, &c).unwrap();
            assert!(out.passed, "{s}: {:?}", out.counterexample);
            assert!(out.checks > 0, "{s}");
        }
    }

    #[test]
    fn smooth_suite_rejects_two_lines() {
        assert!(matches!(
            run_suite(Suite::SmoothChiY, &cfg(1, 1, 2)),
            Err(Error::Precondition(_))
        ));
    }
}
