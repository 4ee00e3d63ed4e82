//! Polynomials in the Fock-space generators `p0, p1, p2, ...`.
//!
//! A monomial is a finite multiset of generator indices; its grade is the sum
//! of the indices, so `p0` carries grade zero and `p3*p1^2` has grade 5. The
//! grading drives every truncation bound in the vertex-operator calculus.
//! Keys are ordered graded-lex, zero coefficients are never stored, and
//! equality is structural equality of normal forms.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rat::{rat_int, Rat};
use crate::scalar::BetaScalar;

/// Multiset of generator indices stored as sorted `(index, multiplicity)`
/// pairs with positive multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PMono(pub Vec<(u32, u32)>);

impl PMono {
    pub fn one() -> Self {
        PMono(Vec::new())
    }

    pub fn single(idx: u32) -> Self {
        PMono(vec![(idx, 1)])
    }

    pub fn from_parts(parts: &[u32]) -> Self {
        let mut m = PMono::one();
        for &p in parts {
            m = m.mul_gen(p, 1);
        }
        m
    }

    pub fn grade(&self) -> u32 {
        self.0.iter().map(|(i, m)| i * m).sum()
    }

    pub fn mul(&self, other: &PMono) -> PMono {
        let mut out = self.clone();
        for (i, m) in &other.0 {
            out = out.mul_gen(*i, *m);
        }
        out
    }

    pub fn mul_gen(&self, idx: u32, mult: u32) -> PMono {
        if mult == 0 {
            return self.clone();
        }
        let mut v = self.0.clone();
        match v.binary_search_by_key(&idx, |(i, _)| *i) {
            Ok(pos) => v[pos].1 += mult,
            Err(pos) => v.insert(pos, (idx, mult)),
        }
        PMono(v)
    }

    pub fn power_of(&self, idx: u32) -> u32 {
        self.0
            .iter()
            .find(|(i, _)| *i == idx)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Remove one factor of `p_idx`; `None` if absent.
    pub fn div_gen(&self, idx: u32) -> Option<PMono> {
        let mut v = self.0.clone();
        match v.binary_search_by_key(&idx, |(i, _)| *i) {
            Ok(pos) => {
                if v[pos].1 == 1 {
                    v.remove(pos);
                } else {
                    v[pos].1 -= 1;
                }
                Some(PMono(v))
            }
            Err(_) => None,
        }
    }

    /// Strip `p0` factors, returning the rest and the stripped power.
    pub fn split_p0(&self) -> (PMono, u32) {
        let mut v = self.0.clone();
        let mut p0 = 0;
        if let Ok(pos) = v.binary_search_by_key(&0, |(i, _)| *i) {
            p0 = v[pos].1;
            v.remove(pos);
        }
        (PMono(v), p0)
    }
}

impl Ord for PMono {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded order; within a grade, products of lower generators rank
        // higher so p1^2 prints before p2.
        self.grade()
            .cmp(&other.grade())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for PMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PPoly {
    terms: BTreeMap<PMono, BetaScalar>,
}

impl PPoly {
    pub fn zero() -> Self {
        PPoly::default()
    }

    pub fn one() -> Self {
        PPoly::constant(BetaScalar::one())
    }

    pub fn constant(c: BetaScalar) -> Self {
        let mut p = PPoly::zero();
        p.add_term(PMono::one(), c);
        p
    }

    pub fn from_rat(r: Rat) -> Self {
        PPoly::constant(BetaScalar::from_rat(r))
    }

    /// The generator `p_idx`.
    pub fn gen(idx: u32) -> Self {
        let mut p = PPoly::zero();
        p.add_term(PMono::single(idx), BetaScalar::one());
        p
    }

    pub fn monomial(m: PMono, c: BetaScalar) -> Self {
        let mut p = PPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: PMono, c: BetaScalar) {
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

    pub fn iter(&self) -> impl Iterator<Item = (&PMono, &BetaScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PMono) -> BetaScalar {
        self.terms.get(m).cloned().unwrap_or_else(BetaScalar::zero)
    }

    pub fn scale(&self, c: &BetaScalar) -> PPoly {
        let mut out = PPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> PPoly {
        self.scale(&BetaScalar::from_rat(r.clone()))
    }

    pub fn mul_mono(&self, m: &PMono) -> PPoly {
        let mut out = PPoly::zero();
        for (k, v) in &self.terms {
            out.add_term(k.mul(m), v.clone());
        }
        out
    }

    pub fn max_grade(&self) -> u32 {
        self.terms.keys().map(|m| m.grade()).max().unwrap_or(0)
    }

    pub fn max_p0_power(&self) -> u32 {
        self.terms.keys().map(|m| m.power_of(0)).max().unwrap_or(0)
    }

    pub fn contains_p0(&self) -> bool {
        self.terms.keys().any(|m| m.power_of(0) > 0)
    }

    /// Split into homogeneous components `(grade, part)`, ascending in grade.
    /// Re-summing the parts reproduces the input exactly.
    pub fn grade_components(&self) -> Vec<(u32, PPoly)> {
        let mut map: BTreeMap<u32, PPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            map.entry(m.grade())
                .or_insert_with(PPoly::zero)
                .add_term(m.clone(), c.clone());
        }
        map.into_iter().collect()
    }

    /// Formal partial derivative with respect to `p_idx`.
    pub fn diff(&self, idx: u32) -> PPoly {
        let mut out = PPoly::zero();
        for (m, c) in &self.terms {
            let mult = m.power_of(idx);
            if mult > 0 {
                let reduced = m.div_gen(idx).unwrap();
                out.add_term(reduced, c * &BetaScalar::from_int(mult as i64));
            }
        }
        out
    }

    /// Substitute `p0 -> value` for a scalar value (an integer count or the
    /// formal symbol `N`).
    pub fn subst_p0_scalar(&self, value: &BetaScalar) -> PPoly {
        let mut out = PPoly::zero();
        for (m, c) in &self.terms {
            let (rest, p0) = m.split_p0();
            let mut coeff = c.clone();
            for _ in 0..p0 {
                coeff = &coeff * value;
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Substitute `p0 -> p0 + delta`, the charge-shift of the vertex
    /// operators acting on states.
    pub fn shift_p0(&self, delta: i64) -> PPoly {
        let mut out = PPoly::zero();
        for (m, c) in &self.terms {
            let (rest, p0) = m.split_p0();
            // binomial expansion of (p0 + delta)^p0_power
            for j in 0..=p0 {
                let coeff = crate::rat::binomial(p0, j);
                let mut d = rat_int(1);
                for _ in 0..(p0 - j) {
                    d *= rat_int(delta);
                }
                let mono = rest.mul_gen(0, j);
                out.add_term(mono, c * &BetaScalar::from_rat(coeff * d));
            }
        }
        out
    }

    /// Substitute `b -> beta` numerically in every coefficient (test helper).
    pub fn eval_beta(&self, beta: &Rat) -> PPoly {
        let mut out = PPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.eval_beta(beta));
        }
        out
    }
}

impl Add for &PPoly {
    type Output = PPoly;
    fn add(self, rhs: &PPoly) -> PPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PPoly {
    type Output = PPoly;
    fn sub(self, rhs: &PPoly) -> PPoly {
        self + &(-rhs)
    }
}

impl Neg for &PPoly {
    type Output = PPoly;
    fn neg(self) -> PPoly {
        let mut out = PPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }
}

impl Mul for &PPoly {
    type Output = PPoly;
    fn mul(self, rhs: &PPoly) -> PPoly {
        let mut out = PPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

pub fn pmono_string(m: &PMono) -> String {
    m.0.iter()
        .map(|(i, mult)| {
            if *mult == 1 {
                format!("p{}", i)
            } else {
                format!("p{}^{}", i, mult)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::printer::fmt_terms(
            f,
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| (c.clone(), pmono_string(m))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn grading() {
        // p2 + p1^2 is homogeneous of grade 2; p0^3 sits in grade 0.
        let p = &PPoly::gen(2) + &(&PPoly::gen(1) * &PPoly::gen(1));
        let comps = p.grade_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].0, 2);
        assert_eq!(comps[0].1, p);

        let cube = &(&PPoly::gen(0) * &PPoly::gen(0)) * &PPoly::gen(0);
        assert_eq!(cube.grade_components(), vec![(0, cube.clone())]);

        let mixed = &PPoly::gen(1) + &PPoly::gen(3);
        let comps = mixed.grade_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], (1, PPoly::gen(1)));
        assert_eq!(comps[1], (3, PPoly::gen(3)));
    }

    #[test]
    fn derivative_and_shift() {
        let p = PPoly::monomial(PMono::from_parts(&[1, 1, 2]), BetaScalar::one());
        assert_eq!(p.diff(1), PPoly::gen(1).mul_mono(&PMono::single(2)).scale_rat(&rat(2, 1)));
        // (p0 + 1)^2 = p0^2 + 2 p0 + 1
        let sq = PPoly::monomial(PMono::from_parts(&[0, 0]), BetaScalar::one());
        let shifted = sq.shift_p0(1);
        let expect = &(&sq + &PPoly::gen(0).scale_rat(&rat(2, 1))) + &PPoly::one();
        assert_eq!(shifted, expect);
    }

    #[test]
    fn display_form() {
        let e2 = &(&PPoly::gen(1) * &PPoly::gen(1)) - &PPoly::gen(2);
        assert_eq!(e2.scale_rat(&rat(1, 2)).to_string(), "1/2*p1^2 - 1/2*p2");
    }
}
