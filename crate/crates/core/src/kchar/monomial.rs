use std::fmt;

use serde::{Deserialize, Serialize};

/// Torus coordinate. `W(i, alpha)` is the framing weight of the `alpha`-th
/// summand supported on line `i` (both 1-based). `U1`, `U2` are square roots
/// of `T1`, `T2`.
///
/// The same identifiers key the cohomological variables: `T1, T2, W(i, a)`
/// stand for `s1, s2, v_{ia}` when a point is used for the Chow-theoretic
/// Euler class.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    T1,
    T2,
    U1,
    U2,
    W(u8, u16),
}

impl Var {
    /// `t_i` for `i` in {1, 2}.
    pub fn t(i: u8) -> Var {
        match i {
            1 => Var::T1,
            2 => Var::T2,
            _ => panic!("torus axis must be 1 or 2, got {i}"),
        }
    }

    pub fn is_framing(self) -> bool {
        matches!(self, Var::W(..))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T1 => write!(f, "t1"),
            Var::T2 => write!(f, "t2"),
            Var::U1 => write!(f, "u1"),
            Var::U2 => write!(f, "u2"),
            Var::W(i, a) => write!(f, "w{i}_{a}"),
        }
    }
}

/// Laurent monomial: sorted `(variable, exponent)` pairs, zero exponents never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<(Var, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial::power(v, 1)
    }

    pub fn power(v: Var, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_exponents<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut exps: Vec<(Var, i32)> = pairs.into_iter().collect();
        exps.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, i32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((w, acc)) if *w == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[(Var, i32)] {
        &self.exps
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    /// The dual weight `t^{-mu}`.
    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Keeps only the variables selected by `keep`.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Monomial {
        Monomial {
            exps: self.exps.iter().copied().filter(|&(v, _)| keep(v)).collect(),
        }
    }

    pub fn framing_part(&self) -> Monomial {
        self.restrict(Var::is_framing)
    }

    pub fn torus_part(&self) -> Monomial {
        self.restrict(|v| !v.is_framing())
    }

    /// Applies a variable renaming with exponent scaling, e.g. `t_i -> u_i^2`.
    pub fn map_vars(&self, f: impl Fn(Var, i32) -> (Var, i32)) -> Monomial {
        Monomial::from_exponents(self.exps.iter().map(|&(v, e)| f(v, e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zero_exponents() {
        let m = Monomial::from_exponents([(Var::T1, 2), (Var::T2, 1), (Var::T1, -2)]);
        assert_eq!(m, Monomial::var(Var::T2));
        assert_eq!(m.exponent(Var::T1), 0);
        assert!(Monomial::power(Var::T1, 0).is_one());
    }

    #[test]
    fn multiplication_cancels() {
        let a = Monomial::from_exponents([(Var::T1, 1), (Var::W(1, 1), -1)]);
        let b = Monomial::from_exponents([(Var::W(1, 1), 1), (Var::T2, 3)]);
        assert_eq!(
            a.mul(&b),
            Monomial::from_exponents([(Var::T1, 1), (Var::T2, 3)])
        );
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn display() {
        let m = Monomial::from_exponents([(Var::T1, 1), (Var::T2, -2), (Var::W(2, 1), 1)]);
        assert_eq!(m.to_string(), "t1*t2^-2*w2_1");
        assert_eq!(Monomial::one().to_string(), "1");
    }
}
