//! Torus fixed points of the broken-lines Quot scheme and their characters.
//!
//! A fixed point is a tuple `n_{ia}` of lengths, one per framing summand
//! `(i, a)`. The summand on line `i` contributes `w_{ia} Z_{n_{ia}}` to the
//! quotient, where `Z_m = 1 + t_j + ... + t_j^{m-1}` runs along the other axis
//! `j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kchar::{efrak, Character, FactoredForm, Monomial, Var};

/// Framing ranks `(r1, r2)` with `r1 + r2 >= 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ranks {
    pub r1: u32,
    pub r2: u32,
}

impl Ranks {
    pub fn new(r1: u32, r2: u32) -> Result<Self> {
        if r1 + r2 == 0 {
            return Err(Error::InvalidRanks(r1, r2));
        }
        Ok(Ranks { r1, r2 })
    }

    pub fn total(&self) -> u32 {
        self.r1 + self.r2
    }

    pub fn on_line(&self, line: u8) -> u32 {
        match line {
            1 => self.r1,
            2 => self.r2,
            _ => 0,
        }
    }

    /// Framing summands in lexicographic order `(1,1) < ... < (1,r1) < (2,1) < ... < (2,r2)`.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for line in 1..=2u8 {
            for alpha in 1..=self.on_line(line) {
                out.push(Slot::new(line, alpha as u16));
            }
        }
        out
    }

    pub fn framing_vars(&self) -> Vec<Var> {
        self.slots().into_iter().map(Slot::w).collect()
    }

    /// `t1, t2` followed by every framing variable.
    pub fn torus_vars(&self) -> Vec<Var> {
        let mut v = vec![Var::T1, Var::T2];
        v.extend(self.framing_vars());
        v
    }

    /// Exchanges the roles of the two lines.
    pub fn swapped(&self) -> Ranks {
        Ranks {
            r1: self.r2,
            r2: self.r1,
        }
    }
}

impl fmt::Display for Ranks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r1, self.r2)
    }
}

/// Framing index `(i, a)`; the derived order is the lexicographic one.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub line: u8,
    pub alpha: u16,
}

impl Slot {
    pub fn new(line: u8, alpha: u16) -> Self {
        assert!(line == 1 || line == 2, "line must be 1 or 2");
        assert!(alpha >= 1, "framing index is 1-based");
        Slot { line, alpha }
    }

    pub fn w(self) -> Var {
        Var::W(self.line, self.alpha)
    }

    /// The axis along which boxes of this summand stack.
    pub fn other_axis(self) -> u8 {
        3 - self.line
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.line, self.alpha)
    }
}

/// Fixed point: one length per framing summand, in slot order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    ranks: Ranks,
    parts: Vec<u32>,
}

impl FixedPoint {
    pub fn new(ranks: Ranks, parts: Vec<u32>) -> Result<Self> {
        if parts.len() != ranks.total() as usize {
            return Err(Error::Precondition(format!(
                "fixed point for ranks {ranks} needs {} parts, got {}",
                ranks.total(),
                parts.len()
            )));
        }
        Ok(FixedPoint { ranks, parts })
    }

    pub fn ranks(&self) -> Ranks {
        self.ranks
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn part(&self, slot: Slot) -> u32 {
        self.entries()
            .find(|&(s, _)| s == slot)
            .map(|(_, n)| n)
            .unwrap_or_else(|| panic!("slot {slot} not present for ranks {}", self.ranks))
    }

    pub fn entries(&self) -> impl Iterator<Item = (Slot, u32)> + '_ {
        self.ranks.slots().into_iter().zip(self.parts.iter().copied())
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r1 = self.ranks.r1 as usize;
        let join = |xs: &[u32]| {
            xs.iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({}|{})", join(&self.parts[..r1]), join(&self.parts[r1..]))
    }
}

/// All compositions of `n` into `r1 + r2` labelled parts, first part descending.
pub fn fixed_points(ranks: Ranks, n: u32) -> Vec<FixedPoint> {
    fn rec(slots: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=n).rev() {
            prefix.push(first);
            rec(slots - 1, n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(ranks.total() as usize, n, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|parts| FixedPoint { ranks, parts })
        .collect()
}

/// `sum_{a < m} t_j^a` where `j` is the axis other than `line`.
pub fn box_char(m: u32, line: u8) -> Character {
    let axis = Var::t(3 - line);
    Character::from_terms((0..m as i32).map(|a| (Monomial::power(axis, a), 1)))
}

pub fn q_char(bn: &FixedPoint) -> Character {
    bn.entries()
        .map(|(s, n)| box_char(n, s.line).shift(&Monomial::var(s.w())))
        .sum()
}

/// `1 - t_i^{-1}`.
fn one_minus_inv(line: u8) -> Character {
    &Character::one() - &Character::monomial(Monomial::power(Var::t(line), -1))
}

/// `(1 - t1^{-1})(1 - t2^{-1})`.
fn plane_factor() -> Character {
    &one_minus_inv(1) * &one_minus_inv(2)
}

/// `K_i = sum_a w_{ia}`.
fn framing_char(ranks: Ranks, line: u8) -> Character {
    ranks
        .slots()
        .into_iter()
        .filter(|s| s.line == line)
        .map(|s| Character::var(s.w()))
        .sum()
}

fn vertex_term_raw(bn: &FixedPoint) -> Character {
    let q = q_char(bn);
    let ranks = bn.ranks();
    let mut t = Character::zero();
    for line in 1..=2u8 {
        let k = framing_char(ranks, line);
        if k.is_zero() {
            continue;
        }
        t = &t + &(&(&k.bar() * &one_minus_inv(line)) * &q);
    }
    &t - &(&plane_factor() * &(&q * &q.bar()))
}

fn check_movable(c: Character) -> Result<Character> {
    match c.constant_term() {
        0 => Ok(c),
        k => Err(Error::MovabilityViolation(k)),
    }
}

/// Virtual tangent character at `bn`:
/// `sum_i bar(K_i)(1 - t_i^{-1}) Q - (1 - t1^{-1})(1 - t2^{-1}) Q bar(Q)`.
pub fn vertex_term(bn: &FixedPoint) -> Result<Character> {
    check_movable(vertex_term_raw(bn))
}

/// Block `v^{(ij, ab)}` pairing summand `from = (i, a)` with `to = (j, b)`:
/// `w_{ia}^{-1} w_{jb} ((1 - t_i^{-1}) Z_{n_{jb}} - (1 - t1^{-1})(1 - t2^{-1}) bar(Z_{n_{ia}}) Z_{n_{jb}})`.
pub fn vertex_block(bn: &FixedPoint, from: Slot, to: Slot) -> Character {
    let z_from = box_char(bn.part(from), from.line);
    let z_to = box_char(bn.part(to), to.line);
    let inner = &(&one_minus_inv(from.line) * &z_to) - &(&plane_factor() * &(&z_from.bar() * &z_to));
    let w = Monomial::from_exponents([(from.w(), -1), (to.w(), 1)]);
    inner.shift(&w)
}

/// The vertex term rebuilt block by block.
pub fn vertex_term_from_blocks(bn: &FixedPoint) -> Result<Character> {
    let slots = bn.ranks().slots();
    let mut total = Character::zero();
    for &from in &slots {
        for &to in &slots {
            total = &total + &vertex_block(bn, from, to);
        }
    }
    check_movable(total)
}

pub fn det_char(c: &Character) -> Monomial {
    c.det()
}

/// Tangent character of the smooth Quot scheme of line 2 (`r1 = 0`):
/// `bar(K_2) Q - (1 - t1^{-1}) Q bar(Q)`.
pub fn smooth_tangent(bn: &FixedPoint) -> Result<Character> {
    let ranks = bn.ranks();
    if ranks.r1 != 0 {
        return Err(Error::Precondition(format!(
            "smooth tangent needs r1 = 0, got ranks {ranks}"
        )));
    }
    let q = q_char(bn);
    let k2 = framing_char(ranks, 2);
    Ok(&(&k2.bar() * &q) - &(&one_minus_inv(1) * &(&q * &q.bar())))
}

/// Localization weight `e(-T^vir)` of a fixed point.
pub fn contribution(bn: &FixedPoint) -> Result<FactoredForm> {
    let t = vertex_term(bn)?;
    efrak(&-t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(Var, i32)]) -> Monomial {
        Monomial::from_exponents(pairs.iter().copied())
    }
    fn ch(terms: &[(&[(Var, i32)], i64)]) -> Character {
        Character::from_terms(terms.iter().map(|(p, k)| (m(p), *k)))
    }
    fn fp(r1: u32, r2: u32, parts: &[u32]) -> FixedPoint {
        FixedPoint::new(Ranks::new(r1, r2).unwrap(), parts.to_vec()).unwrap()
    }

    #[test]
    fn invalid_ranks() {
        assert_eq!(Ranks::new(0, 0), Err(Error::InvalidRanks(0, 0)));
    }

    #[test]
    fn fixed_point_enumeration() {
        let pts = fixed_points(Ranks::new(1, 1).unwrap(), 2);
        let parts: Vec<_> = pts.iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(parts, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(pts[1].to_string(), "(1|1)");
        assert_eq!(fixed_points(Ranks::new(0, 1).unwrap(), 5).len(), 1);
        assert_eq!(fixed_points(Ranks::new(2, 1).unwrap(), 3).len(), 10);
        assert_eq!(fixed_points(Ranks::new(2, 1).unwrap(), 0).len(), 1);
    }

    #[test]
    fn box_characters() {
        assert!(box_char(0, 1).is_zero());
        assert_eq!(box_char(2, 1), ch(&[(&[], 1), (&[(Var::T2, 1)], 1)]));
        assert_eq!(
            box_char(3, 2),
            ch(&[(&[], 1), (&[(Var::T1, 1)], 1), (&[(Var::T1, 2)], 1)])
        );
    }

    #[test]
    fn quotient_characters() {
        let w11 = Var::W(1, 1);
        let w21 = Var::W(2, 1);
        assert_eq!(q_char(&fp(1, 1, &[1, 0])), Character::var(w11));
        assert_eq!(
            q_char(&fp(1, 1, &[2, 1])),
            ch(&[(&[(w11, 1)], 1), (&[(w11, 1), (Var::T2, 1)], 1), (&[(w21, 1)], 1)])
        );
        assert!(q_char(&fp(1, 1, &[0, 0])).is_zero());
    }

    #[test]
    fn rank_one_vertex_terms() {
        // (1,0), n = 1: t2^-1 - t1^-1 t2^-1
        let a = vertex_term(&fp(1, 0, &[1])).unwrap();
        assert_eq!(a, ch(&[(&[(Var::T2, -1)], 1), (&[(Var::T1, -1), (Var::T2, -1)], -1)]));
        // (0,1), n = 1: t1^-1 - t1^-1 t2^-1
        let b = vertex_term(&fp(0, 1, &[1])).unwrap();
        assert_eq!(b, ch(&[(&[(Var::T1, -1)], 1), (&[(Var::T1, -1), (Var::T2, -1)], -1)]));
        assert!(vertex_term(&fp(2, 1, &[0, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn blocks() {
        // diagonal, line 1, n = 2: (1 - t1^-1)(t2^-1 + t2^-2)
        let bn = fp(1, 0, &[2]);
        let s = Slot::new(1, 1);
        let want = &one_minus_inv(1) * &ch(&[(&[(Var::T2, -1)], 1), (&[(Var::T2, -2)], 1)]);
        assert_eq!(vertex_block(&bn, s, s), want);

        assert!(vertex_block(&fp(2, 0, &[0, 3]), s, s).is_zero());

        // off-diagonal (11) -> (21), both of length one
        let bn = fp(1, 1, &[1, 1]);
        let got = vertex_block(&bn, Slot::new(1, 1), Slot::new(2, 1));
        let want = ch(&[
            (&[(Var::W(1, 1), -1), (Var::W(2, 1), 1), (Var::T2, -1)], 1),
            (&[(Var::W(1, 1), -1), (Var::W(2, 1), 1), (Var::T1, -1), (Var::T2, -1)], -1),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn determinants() {
        let a = vertex_term(&fp(1, 0, &[1])).unwrap();
        assert_eq!(det_char(&a), Monomial::var(Var::T1));
        assert!(det_char(&Character::zero()).is_one());
        for bn in fixed_points(Ranks::new(2, 1).unwrap(), 2) {
            let d = det_char(&vertex_term(&bn).unwrap());
            assert_eq!(d, m(&[(Var::T1, 4), (Var::T2, 2)]), "at {bn}");
        }
    }

    #[test]
    fn smooth_case() {
        let bn = fp(0, 1, &[1]);
        let t = smooth_tangent(&bn).unwrap();
        assert_eq!(t, Character::monomial(Monomial::power(Var::T1, -1)));
        let shifted = t.shift(&Monomial::power(Var::T2, -1));
        assert_eq!(&t - &shifted, vertex_term(&bn).unwrap());
        assert!(smooth_tangent(&fp(0, 2, &[0, 0])).unwrap().is_zero());
        assert!(matches!(
            smooth_tangent(&fp(1, 1, &[1, 0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn contributions() {
        let a = contribution(&fp(1, 0, &[1])).unwrap();
        let want = FactoredForm::factor(m(&[(Var::T1, 1), (Var::T2, 1)]), 1)
            .mul(&FactoredForm::factor(Monomial::var(Var::T2), -1));
        assert_eq!(a, want);

        let b = contribution(&fp(0, 1, &[1])).unwrap();
        let want = FactoredForm::factor(m(&[(Var::T1, 1), (Var::T2, 1)]), 1)
            .mul(&FactoredForm::factor(Monomial::var(Var::T1), -1));
        assert_eq!(b, want);

        assert!(contribution(&fp(3, 0, &[0, 0, 0])).unwrap().is_one());
    }
}
