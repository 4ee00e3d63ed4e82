//! Sparse polynomials in the coordinate variables `x1..xN` with `BetaScalar`
//! coefficients.
//!
//! Monomials are exponent vectors of fixed length `N` ordered graded-lex, so
//! every polynomial has a deterministic normal form. The zero polynomial is
//! the empty map. Exponents are signed: the wedge alternants may produce
//! Laurent monomials, while all other constructors keep exponents
//! non-negative.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{CoreError, Result};
use crate::rat::Rat;
use crate::scalar::BetaScalar;

/// Exponent vector with graded-lex ordering (total degree first, then lex).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XMono(pub Vec<i32>);

impl XMono {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|e| *e as i64).sum()
    }
}

impl Ord for XMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for XMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XPoly {
    /// Number of variables; every key has exactly this length.
    nvars: usize,
    terms: BTreeMap<XMono, BetaScalar>,
}

impl XPoly {
    pub fn zero(nvars: usize) -> Self {
        XPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        XPoly::constant(nvars, BetaScalar::one())
    }

    pub fn constant(nvars: usize, c: BetaScalar) -> Self {
        let mut p = XPoly::zero(nvars);
        p.add_term(XMono(vec![0; nvars]), c);
        p
    }

    /// The variable `x_i`, 1-indexed.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        let mut p = XPoly::zero(nvars);
        p.add_term(XMono(exps), BetaScalar::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, c: BetaScalar) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = XPoly::zero(nvars);
        p.add_term(XMono(exps), c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: XMono, c: BetaScalar) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = &*e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&XMono, &BetaScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &XMono) -> BetaScalar {
        self.terms.get(m).cloned().unwrap_or_else(BetaScalar::zero)
    }

    /// Leading monomial in graded-lex order, if nonzero.
    pub fn leading(&self) -> Option<(&XMono, &BetaScalar)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BetaScalar) -> XPoly {
        let mut out = XPoly::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> XPoly {
        self.scale(&BetaScalar::from_rat(r.clone()))
    }

    /// Swap the variables `x_i` and `x_j` (1-indexed).
    pub fn exchange(&self, i: usize, j: usize) -> XPoly {
        assert!(i >= 1 && j >= 1 && i <= self.nvars && j <= self.nvars);
        let mut out = XPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i - 1, j - 1);
            out.add_term(XMono(e), c.clone());
        }
        out
    }

    /// Euler-type derivative `x_i d/dx_i` (1-indexed).
    pub fn theta(&self, i: usize) -> XPoly {
        let mut out = XPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i - 1];
            if e != 0 {
                out.add_term(m.clone(), c * &BetaScalar::from_int(e as i64));
            }
        }
        out
    }

    /// Substitute `x_i -> 0` (1-indexed), keeping the variable slot.
    pub fn set_var_zero(&self, i: usize) -> XPoly {
        let mut out = XPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[i - 1] == 0 {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Drop the last variable slot; every term must have exponent zero there.
    pub fn drop_last_var(&self) -> XPoly {
        let mut out = XPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            assert_eq!(
                m.0[self.nvars - 1],
                0,
                "cannot drop a variable that still occurs"
            );
            out.add_term(XMono(m.0[..self.nvars - 1].to_vec()), c.clone());
        }
        out
    }

    /// Exact division: returns `q` with `self = q * g`.
    ///
    /// Errors with `NonzeroRemainder` if `g` does not divide `self`; upstream
    /// that signals a broken antisymmetry assumption.
    pub fn divide_exact(&self, g: &XPoly) -> Result<XPoly> {
        assert_eq!(self.nvars, g.nvars);
        assert!(!g.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = XPoly::zero(self.nvars);
        let (gm, gc) = g.leading().expect("nonzero divisor");
        let gc_rat = gc
            .as_rat()
            .filter(|r| !crate::rat::is_zero(r));
        while let Some((rm, rc)) = rem.leading() {
            let mut e = Vec::with_capacity(self.nvars);
            let mut ok = true;
            for (a, b) in rm.0.iter().zip(gm.0.iter()) {
                let d = a - b;
                if d < 0 {
                    ok = false;
                }
                e.push(d);
            }
            if !ok {
                return Err(CoreError::NonzeroRemainder);
            }
            // Divide leading coefficients. Coefficients live in a polynomial
            // ring, so this only succeeds directly when the divisor's leading
            // coefficient is a plain rational; that covers every divisor used
            // by the kernels (differences of variables, Vandermonde factors).
            let q_coeff = match &gc_rat {
                Some(r) => {
                    let inv = Rat::new(r.denom().clone(), r.numer().clone());
                    rc.iter().fold(BetaScalar::zero(), |mut acc, (k, c)| {
                        acc.add_term(*k, c.clone() * inv.clone());
                        acc
                    })
                }
                None => return Err(CoreError::NonzeroRemainder),
            };
            let mono = XMono(e);
            let mut piece = XPoly::zero(self.nvars);
            piece.add_term(mono.clone(), q_coeff.clone());
            rem = &rem - &(&piece * g);
            quot.add_term(mono, q_coeff);
        }
        Ok(quot)
    }

    /// True when the polynomial changes sign under every adjacent
    /// transposition of variables.
    pub fn is_antisymmetric(&self) -> bool {
        for i in 1..self.nvars {
            if self.exchange(i, i + 1) != -self {
                return false;
            }
        }
        true
    }

    /// True when the polynomial is invariant under every adjacent
    /// transposition of variables.
    pub fn is_symmetric(&self) -> bool {
        for i in 1..self.nvars {
            if self.exchange(i, i + 1) != *self {
                return false;
            }
        }
        true
    }

    /// Substitute `b -> beta` numerically in every coefficient (test helper).
    pub fn eval_beta(&self, beta: &Rat) -> XPoly {
        let mut out = XPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.eval_beta(beta));
        }
        out
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        let mut out = XPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = XPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e: Vec<i32> = m1.0.iter().zip(m2.0.iter()).map(|(a, b)| a + b).collect();
                out.add_term(XMono(e), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for XPoly {
    /// Deterministic normal form, leading term first:
    /// `x1^2*x2 - (1 + 2*b)*x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::printer::fmt_terms(
            f,
            self.terms.iter().rev().map(|(m, c)| {
                let factors: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e != 0)
                    .map(|(i, e)| {
                        if *e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, e)
                        }
                    })
                    .collect();
                (c.clone(), factors.join("*"))
            }),
        )
    }
}

/// Determinant of a square matrix of polynomials by Leibniz expansion.
/// Matrix sizes here stay small (bounded by the particle number).
pub fn determinant(mat: &[Vec<XPoly>]) -> XPoly {
    let n = mat.len();
    assert!(n > 0);
    let nvars = mat[0][0].nvars();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = XPoly::zero(nvars);
    permute(&mut perm, 0, &mut |p, sign| {
        let mut prod = XPoly::one(nvars);
        for (i, &j) in p.iter().enumerate() {
            prod = &prod * &mat[i][j];
        }
        if sign {
            out = &out - &prod;
        } else {
            out = &out + &prod;
        }
    });
    out
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], bool)) {
    let n = perm.len();
    if k == n {
        let mut sign = false;
        for i in 0..n {
            for j in (i + 1)..n {
                if perm[i] > perm[j] {
                    sign = !sign;
                }
            }
        }
        f(perm, sign);
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::bpoly;

    fn x(n: usize, i: usize) -> XPoly {
        XPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let f = &(&x(2, 1) * &x(2, 1)) - &(&x(2, 2) * &x(2, 2));
        let g = &x(2, 1) - &x(2, 2);
        let q = f.divide_exact(&g).unwrap();
        assert_eq!(q, &x(2, 1) + &x(2, 2));
    }

    #[test]
    fn divide_by_one_is_identity() {
        let f = &(&x(2, 1) * &x(2, 2)) + &x(2, 1);
        assert_eq!(f.divide_exact(&XPoly::one(2)).unwrap(), f);
    }

    #[test]
    fn divided_difference_example() {
        // (1 - K12) x1^2 x2 = x1^2 x2 - x2^2 x1, divisible by x1 - x2.
        let m = &(&x(2, 1) * &x(2, 1)) * &x(2, 2);
        let num = &m - &m.exchange(1, 2);
        let q = num.divide_exact(&(&x(2, 1) - &x(2, 2))).unwrap();
        assert_eq!(q, &x(2, 1) * &x(2, 2));
    }

    #[test]
    fn nonzero_remainder_detected() {
        let f = &x(2, 1) + &XPoly::one(2);
        let g = &x(2, 1) - &x(2, 2);
        assert_eq!(f.divide_exact(&g), Err(CoreError::NonzeroRemainder));
    }

    #[test]
    fn symmetry_checks() {
        let sym = &x(2, 1) + &x(2, 2);
        let anti = &x(2, 1) - &x(2, 2);
        assert!(sym.is_symmetric() && !sym.is_antisymmetric());
        assert!(anti.is_antisymmetric() && !anti.is_symmetric());
    }

    #[test]
    fn display_form() {
        let p = &x(2, 1).scale(&bpoly(&[1, 2])) - &x(2, 2);
        assert_eq!(p.to_string(), "(1 + 2*b)*x1 - x2");
    }

    #[test]
    fn determinant_two_by_two() {
        let mat = vec![
            vec![x(2, 1), XPoly::one(2)],
            vec![x(2, 2), XPoly::one(2)],
        ];
        assert_eq!(determinant(&mat), &x(2, 1) - &x(2, 2));
    }
}
