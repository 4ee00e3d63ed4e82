//! Normal-ordered polynomial differential operators in the Fock generators.
//!
//! A term is `coefficient * p0^a * (monomial in p1, p2, ...) * (monomial in
//! d1, d2, ...)` with every derivative to the right of every multiplication.
//! There are no `d0` factors: charge shifts never appear at the operator
//! level, only inside the vertex machinery as substitutions on states.
//! Equality is structural equality of normal forms; the canonical term order
//! is `(p0 power, p-monomial, d-monomial)` graded-lex.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::ppoly::{pmono_string, PMono, PPoly};
use crate::rat::{binomial, factorial, rat_int};
use crate::scalar::BetaScalar;

/// What to substitute for the zero-mode generator when restoring a finite
/// operator from the limit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NSubst {
    Int(i64),
    Formal,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct OpKey {
    pub p0_pow: u32,
    /// Multiplication monomial over indices >= 1.
    pub pmono: PMono,
    /// Derivative monomial over indices >= 1.
    pub dmono: PMono,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PDiffOp {
    terms: BTreeMap<OpKey, BetaScalar>,
}

impl PDiffOp {
    pub fn zero() -> Self {
        PDiffOp::default()
    }

    /// Multiplication by one (the identity operator).
    pub fn identity() -> Self {
        PDiffOp::scalar(BetaScalar::one())
    }

    /// Multiplication by a scalar.
    pub fn scalar(c: BetaScalar) -> Self {
        let mut op = PDiffOp::zero();
        op.add_term(
            OpKey {
                p0_pow: 0,
                pmono: PMono::one(),
                dmono: PMono::one(),
            },
            c,
        );
        op
    }

    /// Multiplication by a polynomial in the generators (p0 included).
    pub fn mult_by(f: &PPoly) -> Self {
        let mut op = PDiffOp::zero();
        for (m, c) in f.iter() {
            let (rest, p0) = m.split_p0();
            op.add_term(
                OpKey {
                    p0_pow: p0,
                    pmono: rest,
                    dmono: PMono::one(),
                },
                c.clone(),
            );
        }
        op
    }

    /// Single normal-ordered term `c * p0^a * pmono * dmono`.
    pub fn term(c: BetaScalar, p0_pow: u32, pmono: PMono, dmono: PMono) -> Self {
        debug_assert!(pmono.power_of(0) == 0 && dmono.power_of(0) == 0);
        let mut op = PDiffOp::zero();
        op.add_term(
            OpKey {
                p0_pow,
                pmono,
                dmono,
            },
            c,
        );
        op
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, key: OpKey, c: BetaScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn iter(&self) -> impl Iterator<Item = (&OpKey, &BetaScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &PDiffOp) -> PDiffOp {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PDiffOp) -> PDiffOp {
        self.add(&other.scale(&BetaScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &BetaScalar) -> PDiffOp {
        let mut out = PDiffOp::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Operator product with normal ordering. Each derivative factor is
    /// commuted past the right factor's multiplications with the product
    /// rule `d^a p^b = sum_j j! C(a,j) C(b,j) p^(b-j) d^(a-j)` per index.
    pub fn mul(&self, other: &PDiffOp) -> PDiffOp {
        let mut out = PDiffOp::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                // indices where reordering happens
                let mut contractions: Vec<Vec<(u32, u32, u32, BetaScalar)>> = Vec::new();
                for (idx, a) in &k1.dmono.0 {
                    let b = k2.pmono.power_of(*idx);
                    let mut choices = Vec::new();
                    let top = (*a).min(b);
                    for j in 0..=top {
                        let coeff = factorial(j) * binomial(*a, j) * binomial(b, j);
                        choices.push((*idx, b - j, a - j, BetaScalar::from_rat(coeff)));
                    }
                    contractions.push(choices);
                }
                // cartesian product over the contraction choices
                let mut stack: Vec<(usize, PMono, PMono, BetaScalar)> =
                    vec![(0, PMono::one(), PMono::one(), &(c1 * c2) * &BetaScalar::one())];
                while let Some((pos, pacc, dacc, cacc)) = stack.pop() {
                    if pos == contractions.len() {
                        // untouched multiplications of the right factor
                        let mut p_rest = PMono::one();
                        for (idx, b) in &k2.pmono.0 {
                            if k1.dmono.power_of(*idx) == 0 {
                                p_rest = p_rest.mul_gen(*idx, *b);
                            }
                        }
                        let key = OpKey {
                            p0_pow: k1.p0_pow + k2.p0_pow,
                            pmono: k1.pmono.mul(&pacc).mul(&p_rest),
                            dmono: dacc.mul(&k2.dmono),
                        };
                        out.add_term(key, cacc);
                        continue;
                    }
                    for (idx, pb, da, coeff) in &contractions[pos] {
                        stack.push((
                            pos + 1,
                            pacc.mul_gen(*idx, *pb),
                            dacc.mul_gen(*idx, *da),
                            &cacc * coeff,
                        ));
                    }
                }
            }
        }
        out
    }

    /// Apply the operator to a state.
    pub fn apply(&self, v: &PPoly) -> PPoly {
        let mut out = PPoly::zero();
        for (k, c) in &self.terms {
            let mut w = v.clone();
            for (idx, mult) in &k.dmono.0 {
                for _ in 0..*mult {
                    w = w.diff(*idx);
                    if w.is_zero() {
                        break;
                    }
                }
                if w.is_zero() {
                    break;
                }
            }
            if w.is_zero() {
                continue;
            }
            let mono = k.pmono.mul_gen(0, k.p0_pow);
            out = &out + &w.mul_mono(&mono).scale(c);
        }
        out
    }

    /// Replace every `p0` factor by a number or by the formal symbol `N`.
    pub fn restore_finite(&self, n: NSubst) -> PDiffOp {
        let mut out = PDiffOp::zero();
        for (k, c) in &self.terms {
            let coeff = match n {
                NSubst::Int(v) => {
                    let mut f = rat_int(1);
                    for _ in 0..k.p0_pow {
                        f *= rat_int(v);
                    }
                    c * &BetaScalar::from_rat(f)
                }
                NSubst::Formal => c.mul_formal_n_pow(k.p0_pow),
            };
            out.add_term(
                OpKey {
                    p0_pow: 0,
                    pmono: k.pmono.clone(),
                    dmono: k.dmono.clone(),
                },
                coeff,
            );
        }
        out
    }

    /// Commutator `[self, other]` as abstract normal forms.
    pub fn commutator(&self, other: &PDiffOp) -> PDiffOp {
        self.mul(other).sub(&other.mul(self))
    }
}

impl fmt::Display for PDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::printer::fmt_terms(
            f,
            self.terms.iter().rev().map(|(k, c)| {
                let mut parts: Vec<String> = Vec::new();
                if k.p0_pow > 0 {
                    parts.push(if k.p0_pow == 1 {
                        "p0".into()
                    } else {
                        format!("p0^{}", k.p0_pow)
                    });
                }
                let pm = pmono_string(&k.pmono);
                if !pm.is_empty() {
                    parts.push(pm);
                }
                let dm: Vec<String> =
                    k.dmono
                        .0
                        .iter()
                        .map(|(i, m)| {
                            if *m == 1 {
                                format!("d{}", i)
                            } else {
                                format!("d{}^{}", i, m)
                            }
                        })
                        .collect();
                if !dm.is_empty() {
                    parts.push(dm.join("*"));
                }
                (c.clone(), parts.join("*"))
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> PMono {
        PMono::single(i)
    }

    #[test]
    fn weyl_relation() {
        // d1 * p1 = p1 d1 + 1
        let d1 = PDiffOp::term(BetaScalar::one(), 0, PMono::one(), p(1));
        let p1 = PDiffOp::term(BetaScalar::one(), 0, p(1), PMono::one());
        let prod = d1.mul(&p1);
        let expect = p1.mul(&d1).add(&PDiffOp::identity());
        assert_eq!(prod, expect);
    }

    #[test]
    fn higher_contraction() {
        // d1^2 p1^2 = p1^2 d1^2 + 4 p1 d1 + 2
        let d2 = PDiffOp::term(BetaScalar::one(), 0, PMono::one(), PMono(vec![(1, 2)]));
        let p2 = PDiffOp::term(BetaScalar::one(), 0, PMono(vec![(1, 2)]), PMono::one());
        let prod = d2.mul(&p2);
        let expect = p2
            .mul(&d2)
            .add(&PDiffOp::term(BetaScalar::from_int(4), 0, p(1), p(1)))
            .add(&PDiffOp::scalar(BetaScalar::from_int(2)));
        assert_eq!(prod, expect);
    }

    #[test]
    fn apply_acts_by_leibniz() {
        // (p2 d1) applied to p1^2 gives 2 p1 p2
        let op = PDiffOp::term(BetaScalar::one(), 0, p(2), p(1));
        let v = &PPoly::gen(1) * &PPoly::gen(1);
        let got = op.apply(&v);
        let expect = (&PPoly::gen(1) * &PPoly::gen(2)).scale_rat(&rat_int(2));
        assert_eq!(got, expect);
        // p0 multiplies as a generator
        let op0 = PDiffOp::term(BetaScalar::one(), 1, PMono::one(), PMono::one());
        assert_eq!(op0.apply(&PPoly::gen(2)), &PPoly::gen(0) * &PPoly::gen(2));
    }

    #[test]
    fn restore_replaces_p0() {
        let op = PDiffOp::term(BetaScalar::one(), 2, p(1), p(1));
        let at4 = op.restore_finite(NSubst::Int(4));
        assert_eq!(
            at4,
            PDiffOp::term(BetaScalar::from_int(16), 0, p(1), p(1))
        );
        let formal = op.restore_finite(NSubst::Formal);
        assert_eq!(
            formal,
            PDiffOp::term(BetaScalar::formal_n().mul_formal_n_pow(1), 0, p(1), p(1))
        );
    }

    #[test]
    fn display_form() {
        let op = PDiffOp::term(BetaScalar::beta(), 1, p(2), PMono(vec![(1, 2)]));
        assert_eq!(op.to_string(), "b*p0*p2*d1^2");
    }
}
