//! Independent recomputation on the Quot scheme of the affine plane.
//!
//! Torus fixed points there are tuples of Young diagrams. The broken-lines
//! moduli space is cut out by a section of the tautological bundle, so its
//! invariants equal `sum e(taut) e(-T^vir_plane)` over all tuples. Tuples not
//! supported on the two lines pick up a trivial weight in the tautological
//! character and drop out.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kchar::{efrak, Character, FactoredForm, Monomial, Var};
use crate::series::{EvalContext, QSeries};
use crate::vertex::Ranks;

/// Weakly decreasing positive parts. Part `b` (0-based) is the row at height
/// `b`; box `(a, b)` with `a < parts[b]` carries weight `t1^a t2^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(b, &len)| (0..len).map(move |a| (a, b as u32)))
    }

    /// `sum_{(a,b)} t1^a t2^b`.
    pub fn character(&self) -> Character {
        Character::from_terms(self.boxes().map(|(a, b)| {
            (
                Monomial::from_exponents([(Var::T1, a as i32), (Var::T2, b as i32)]),
                1,
            )
        }))
    }

    /// All boxes lie on the axis `x_{line} = 0`.
    pub fn lies_on_line(&self, line: u8) -> bool {
        match line {
            // column along the x2-axis
            1 => self.parts.iter().all(|&p| p == 1),
            // row along the x1-axis
            2 => self.parts.len() <= 1,
            _ => false,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// One Young diagram per framing summand, in slot order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionTuple {
    ranks: Ranks,
    diagrams: Vec<Partition>,
}

impl PartitionTuple {
    pub fn new(ranks: Ranks, diagrams: Vec<Partition>) -> Result<Self> {
        if diagrams.len() != ranks.total() as usize {
            return Err(Error::Precondition(format!(
                "tuple for ranks {ranks} needs {} diagrams, got {}",
                ranks.total(),
                diagrams.len()
            )));
        }
        Ok(PartitionTuple { ranks, diagrams })
    }

    pub fn ranks(&self) -> Ranks {
        self.ranks
    }

    pub fn diagrams(&self) -> &[Partition] {
        &self.diagrams
    }

    pub fn size(&self) -> u32 {
        self.diagrams.iter().map(Partition::size).sum()
    }

    /// Whether the tuple is a fixed point of the broken-lines moduli space.
    pub fn is_supported_on_lines(&self) -> bool {
        self.ranks
            .slots()
            .iter()
            .zip(&self.diagrams)
            .all(|(s, d)| d.lies_on_line(s.line))
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.diagrams.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All tuples of `r1 + r2` partitions with total size `n`.
pub fn partition_tuples(ranks: Ranks, n: u32) -> Vec<PartitionTuple> {
    let by_size: Vec<Vec<Partition>> = (0..=n).map(partitions).collect();
    let slots = ranks.total() as usize;
    let mut out = Vec::new();
    let mut current: Vec<Partition> = Vec::with_capacity(slots);

    fn rec(
        slots: usize,
        n: u32,
        by_size: &[Vec<Partition>],
        current: &mut Vec<Partition>,
        ranks: Ranks,
        out: &mut Vec<PartitionTuple>,
    ) {
        if slots == 1 {
            for p in &by_size[n as usize] {
                current.push(p.clone());
                out.push(PartitionTuple {
                    ranks,
                    diagrams: current.clone(),
                });
                current.pop();
            }
            return;
        }
        for k in (0..=n).rev() {
            for p in &by_size[k as usize] {
                current.push(p.clone());
                rec(slots - 1, n - k, by_size, current, ranks, out);
                current.pop();
            }
        }
    }
    rec(slots, n, &by_size, &mut current, ranks, &mut out);
    out
}

/// `Q = sum_{(i,a)} w_{ia} sum_{boxes} t1^a t2^b`.
pub fn plane_q_char(t: &PartitionTuple) -> Character {
    t.ranks
        .slots()
        .iter()
        .zip(&t.diagrams)
        .map(|(s, d)| d.character().shift(&Monomial::var(s.w())))
        .sum()
}

/// Virtual tangent character of the plane Quot scheme:
/// `bar(K) Q + (t1^{-1} + t2^{-1} - 1 - t1^{-1} t2^{-1}) Q bar(Q)`.
pub fn plane_tvir(t: &PartitionTuple) -> Result<Character> {
    let q = plane_q_char(t);
    let k: Character = t.ranks.framing_vars().into_iter().map(Character::var).sum();
    let mix = Character::from_terms([
        (Monomial::power(Var::T1, -1), 1),
        (Monomial::power(Var::T2, -1), 1),
        (Monomial::one(), -1),
        (Monomial::from_exponents([(Var::T1, -1), (Var::T2, -1)]), -1),
    ]);
    let tv = &(&k.bar() * &q) + &(&mix * &(&q * &q.bar()));
    match tv.constant_term() {
        0 => Ok(tv),
        c => Err(Error::MovabilityViolation(c)),
    }
}

/// Tautological insertion `sum_{(i,a)} w_{ia}^{-1} t_i^{-1} Q`.
pub fn taut_char(t: &PartitionTuple) -> Character {
    let section: Character = t
        .ranks
        .slots()
        .into_iter()
        .map(|s| {
            Character::monomial(Monomial::from_exponents([
                (s.w(), -1),
                (Var::t(s.line), -1),
            ]))
        })
        .sum();
    &section * &plane_q_char(t)
}

/// `e(taut) e(-T^vir_plane)`; the zero element off the lines.
pub fn oracle_contribution(t: &PartitionTuple) -> Result<FactoredForm> {
    let ins = efrak(&taut_char(t))?;
    if ins.is_zero() {
        return Ok(ins);
    }
    Ok(ins.mul(&efrak(&-plane_tvir(t)?)?))
}

/// Partition function recomputed on the plane Quot scheme.
pub fn z_oracle(ranks: Ranks, ctx: &EvalContext) -> Result<QSeries<BigRational>> {
    let mut coeffs = vec![BigRational::one()];
    for n in 1..=ctx.order {
        let tuples = partition_tuples(ranks, n);
        let terms: Vec<BigRational> = tuples
            .par_iter()
            .map(|t| oracle_contribution(t)?.eval_point(&ctx.point))
            .collect::<Result<_>>()?;
        coeffs.push(terms.into_iter().fold(BigRational::zero(), |a, b| a + b));
    }
    Ok(QSeries::new(coeffs))
}
