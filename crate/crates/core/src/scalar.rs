//! The universal coefficient ring: polynomials in the formal coupling `b`
//! and an optional formal particle-count symbol `N`, over exact rationals.
//!
//! Every displayed coefficient in the model is polynomial in the coupling,
//! so no rational-function arithmetic is needed. The second symbol is used
//! only for operator-level identities where the particle count stays formal;
//! it never mixes with a concrete variable count.
//!
//! Invariants: no zero coefficients are stored and equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;

use crate::rat::{is_zero, rat_display, rat_int, Rat};

/// Monomial key `(b^i, N^j)` in the coefficient ring.
type Key = (u32, u32);

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BetaScalar {
    terms: BTreeMap<Key, Rat>,
}

impl BetaScalar {
    pub fn zero() -> Self {
        BetaScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        BetaScalar::from_rat(rat_int(1))
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut s = BetaScalar::zero();
        if !is_zero(&r) {
            s.terms.insert((0, 0), r);
        }
        s
    }

    pub fn from_int(n: i64) -> Self {
        BetaScalar::from_rat(rat_int(n))
    }

    /// The coupling symbol `b`.
    pub fn beta() -> Self {
        BetaScalar::monomial(rat_int(1), 1, 0)
    }

    /// The formal particle-count symbol `N`.
    pub fn formal_n() -> Self {
        BetaScalar::monomial(rat_int(1), 0, 1)
    }

    pub fn monomial(c: Rat, b_pow: u32, n_pow: u32) -> Self {
        let mut s = BetaScalar::zero();
        if !is_zero(&c) {
            s.terms.insert((b_pow, n_pow), c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| *c == rat_int(1))
                .unwrap_or(false)
    }

    /// True when the value is a plain rational (no `b`, no `N`).
    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add_term(&mut self, key: Key, c: Rat) {
        if is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if is_zero(entry) {
            self.terms.remove(&key);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Rat)> {
        self.terms.iter()
    }

    /// Substitute a concrete integer for the formal symbol `N`.
    pub fn eval_n(&self, n: i64) -> BetaScalar {
        let mut out = BetaScalar::zero();
        for ((b, np), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..*np {
                v *= rat_int(n);
            }
            out.add_term((*b, 0), v);
        }
        out
    }

    /// Substitute a concrete rational for the coupling `b`.
    pub fn eval_beta(&self, beta: &Rat) -> BetaScalar {
        let mut out = BetaScalar::zero();
        for ((b, np), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..*b {
                v *= beta.clone();
            }
            out.add_term((0, *np), v);
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> BetaScalar {
        let mut out = BetaScalar::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.clone() * r.clone());
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> BetaScalar {
        self.scale_rat(&rat_int(n))
    }

    /// Multiply by `N^pow` (formal).
    pub fn mul_formal_n_pow(&self, pow: u32) -> BetaScalar {
        let mut out = BetaScalar::zero();
        for ((b, np), c) in &self.terms {
            out.add_term((*b, np + pow), c.clone());
        }
        out
    }

    /// Degree in the formal symbol `N`.
    pub fn n_degree(&self) -> u32 {
        self.terms.keys().map(|(_, np)| *np).max().unwrap_or(0)
    }

    pub fn contains_formal_n(&self) -> bool {
        self.terms.keys().any(|(_, np)| *np > 0)
    }
}

impl Add for &BetaScalar {
    type Output = BetaScalar;
    fn add(self, rhs: &BetaScalar) -> BetaScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &BetaScalar {
    type Output = BetaScalar;
    fn sub(self, rhs: &BetaScalar) -> BetaScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &BetaScalar {
    type Output = BetaScalar;
    fn mul(self, rhs: &BetaScalar) -> BetaScalar {
        let mut out = BetaScalar::zero();
        for ((b1, n1), c1) in &self.terms {
            for ((b2, n2), c2) in &rhs.terms {
                out.add_term((b1 + b2, n1 + n2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl Neg for &BetaScalar {
    type Output = BetaScalar;
    fn neg(self) -> BetaScalar {
        let mut out = BetaScalar::zero();
        for (k, c) in &self.terms {
            out.terms.insert(*k, -c.clone());
        }
        out
    }
}

impl fmt::Display for BetaScalar {
    /// Deterministic normal form, ascending in `(b-degree, N-degree)`:
    /// `1 + 2*b`, `-1/2*b^2*N`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((b, np), c) in &self.terms {
            let neg = crate::rat::rat_is_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let trivial_coeff = mag == rat_int(1) && (*b > 0 || *np > 0);
            if !trivial_coeff {
                factors.push(rat_display(&mag));
            }
            if *b > 0 {
                factors.push(if *b == 1 {
                    "b".to_string()
                } else {
                    format!("b^{}", b)
                });
            }
            if *np > 0 {
                factors.push(if *np == 1 {
                    "N".to_string()
                } else {
                    format!("N^{}", np)
                });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Short form for scalar polynomials in `b` only: coefficients by ascending
/// degree, e.g. `bpoly(&[1, 2])` is `1 + 2b`.
pub fn bpoly(coeffs: &[i64]) -> BetaScalar {
    let mut s = BetaScalar::zero();
    for (i, c) in coeffs.iter().enumerate() {
        s.add_term((i as u32, 0), rat_int(*c));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn arithmetic_and_normal_form() {
        let b = BetaScalar::beta();
        let one = BetaScalar::one();
        let s = &(&b + &one) * &(&b + &one);
        assert_eq!(s.to_string(), "1 + 2*b + b^2");
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn formal_n_evaluation() {
        // (1 + 2b) * (N^2 - N) / 2 at N = 2 is 1 + 2b.
        let half = BetaScalar::from_rat(rat(1, 2));
        let n = BetaScalar::formal_n();
        let nn = &(&n * &n) - &n;
        let c = &(&bpoly(&[1, 2]) * &nn) * &half;
        assert_eq!(c.eval_n(2), bpoly(&[1, 2]));
        assert_eq!(c.eval_n(1), BetaScalar::zero());
    }

    #[test]
    fn display_signs() {
        let s = &BetaScalar::from_int(-1) - &BetaScalar::beta();
        assert_eq!(s.to_string(), "-1 - b");
    }
}
