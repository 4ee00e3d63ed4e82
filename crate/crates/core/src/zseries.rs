//! Windowed Laurent expansions in one distinguished variable.
//!
//! Every series carries a window `[lo, hi]`: `hi` is a hard support bound
//! (all exponents above it are known to be zero), while coefficients below
//! `lo` are unknown unless the series is flagged exact. This matches the
//! expansions that actually occur here: multiplication operators expand in
//! descending powers and are cut below, while polynomial factors are exact.
//!
//! Window propagation is conservative. For a product of windows `[a, b]` and
//! `[c, d]` the result is exact on `[max(a + d, b + c), b + d]`; an exact
//! factor drops its own constraint.

use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::ppoly::PPoly;
use crate::xpoly::XPoly;

/// Coefficient ring interface for series entries.
pub trait Coeff: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coeff for PPoly {
    fn is_zero(&self) -> bool {
        PPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coeff for XPoly {
    fn is_zero(&self) -> bool {
        XPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct ZSeries<C: Coeff> {
    /// Template zero coefficient, returned for absent exponents.
    zero: C,
    terms: BTreeMap<i64, C>,
    lo: i64,
    hi: i64,
    /// When set, coefficients below `lo` are known zero as well: the series
    /// is an honest Laurent polynomial.
    exact: bool,
}

impl<C: Coeff> ZSeries<C> {
    pub fn new(zero: C, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        ZSeries {
            zero,
            terms: BTreeMap::new(),
            lo,
            hi,
            exact: false,
        }
    }

    /// An exact (fully known) series; the window tracks the support.
    pub fn exact_zero(zero: C) -> Self {
        ZSeries {
            zero,
            terms: BTreeMap::new(),
            lo: 0,
            hi: 0,
            exact: true,
        }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn set_coeff(&mut self, k: i64, c: C) {
        if self.exact {
            self.lo = self.lo.min(k);
            self.hi = self.hi.max(k);
        } else {
            assert!(k >= self.lo && k <= self.hi, "coefficient outside window");
        }
        if c.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, c);
        }
    }

    pub fn add_coeff(&mut self, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.get(&k);
        let next = match cur {
            Some(v) => v.add(&c),
            None => c,
        };
        self.set_coeff(k, next);
    }

    /// Coefficient of `z^k`. Exponents above the support bound are exactly
    /// zero; below the window the value is unknown and the caller must widen.
    pub fn coeff(&self, k: i64) -> Result<C> {
        if k > self.hi || (self.exact && k < self.lo) {
            return Ok(self.zero.clone());
        }
        if k < self.lo {
            return Err(CoreError::WindowTooNarrow {
                needed: k,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(self.terms.get(&k).cloned().unwrap_or_else(|| self.zero.clone()))
    }

    /// The coefficient of `z^-1`, the residue of `f(z) dz` at infinity.
    pub fn residue(&self) -> Result<C> {
        self.coeff(-1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn shift(&self, d: i64) -> ZSeries<C> {
        let mut out = ZSeries {
            zero: self.zero.clone(),
            terms: BTreeMap::new(),
            lo: self.lo + d,
            hi: self.hi + d,
            exact: self.exact,
        };
        for (k, c) in &self.terms {
            out.terms.insert(k + d, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> ZSeries<C> {
        let mut out = ZSeries {
            zero: self.zero.clone(),
            terms: BTreeMap::new(),
            lo: self.lo,
            hi: self.hi,
            exact: self.exact,
        };
        for (k, v) in &self.terms {
            let w = v.mul(c);
            if !w.is_zero() {
                out.terms.insert(*k, w);
            }
        }
        out
    }

    pub fn add(&self, other: &ZSeries<C>) -> ZSeries<C> {
        let exact = self.exact && other.exact;
        let lo = if exact {
            self.lo.min(other.lo)
        } else if self.exact {
            other.lo
        } else if other.exact {
            self.lo
        } else {
            self.lo.max(other.lo)
        };
        let hi = self.hi.max(other.hi);
        let mut out = ZSeries {
            zero: self.zero.clone(),
            terms: BTreeMap::new(),
            lo,
            hi,
            exact,
        };
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            if *k >= lo || exact {
                out.add_coeff(*k, c.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &ZSeries<C>) -> ZSeries<C> {
        let hi = self.hi + other.hi;
        let (lo, exact) = match (self.exact, other.exact) {
            (true, true) => (self.lo + other.lo, true),
            (true, false) => (self.hi + other.lo, false),
            (false, true) => (self.lo + other.hi, false),
            (false, false) => ((self.lo + other.hi).max(self.hi + other.lo), false),
        };
        let mut out = ZSeries {
            zero: self.zero.clone(),
            terms: BTreeMap::new(),
            lo: lo.min(hi),
            hi,
            exact,
        };
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let k = k1 + k2;
                if k >= out.lo || exact {
                    out.add_coeff(k, c1.mul(c2));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BetaScalar;

    fn c(v: i64) -> PPoly {
        PPoly::constant(BetaScalar::from_int(v))
    }

    #[test]
    fn residue_picks_minus_one() {
        // z^-1 * 5 on window [-2, 0]
        let mut s = ZSeries::new(PPoly::zero(), -2, 0);
        s.set_coeff(-1, c(5));
        assert_eq!(s.residue().unwrap(), c(5));

        // z^3 + z on window [-1, 3]: no z^-1 term
        let mut t = ZSeries::new(PPoly::zero(), -1, 3);
        t.set_coeff(3, c(1));
        t.set_coeff(1, c(1));
        assert_eq!(t.residue().unwrap(), PPoly::zero());
    }

    #[test]
    fn residue_window_too_narrow() {
        let s: ZSeries<PPoly> = ZSeries::new(PPoly::zero(), 0, 3);
        assert!(matches!(
            s.residue(),
            Err(CoreError::WindowTooNarrow { needed: -1, .. })
        ));
    }

    #[test]
    fn above_support_is_known_zero() {
        let mut s = ZSeries::new(PPoly::zero(), -5, -3);
        s.set_coeff(-3, c(2));
        // -1 lies above the support bound: the residue is exactly zero.
        assert_eq!(s.residue().unwrap(), PPoly::zero());
    }

    #[test]
    fn product_window_rule() {
        // exact polynomial of degree 2 times a cut series on [-4, -1]
        let mut f = ZSeries::exact_zero(PPoly::zero());
        f.set_coeff(0, c(1));
        f.set_coeff(2, c(1));
        let mut g = ZSeries::new(PPoly::zero(), -4, -1);
        for k in -4..=-1 {
            g.set_coeff(k, c(k + 10));
        }
        let prod = f.mul(&g);
        assert_eq!(prod.window(), (-2, 1));
        // coefficient at -2: f0*g(-2) + f2*g(-4)
        assert_eq!(prod.coeff(-2).unwrap(), c(8 + 6));
        assert!(prod.coeff(-3).is_err());
    }
}
