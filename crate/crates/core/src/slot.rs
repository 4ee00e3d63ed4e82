//! Polynomials in one distinguished slot variable with coefficients in the
//! Fock generators, and their two-variable companions.
//!
//! A `MixedPoly` models an element of `C[x_i] (x) Lambda` where the
//! generators refer to the remaining particles; the `pvars` tag records how
//! many variables the generators currently stand for. The tag is pure
//! bookkeeping over the free generators, but every operator application
//! updates it and the evaluation maps consume it.
//!
//! Laurent exponents are allowed in the slot so that charge bookkeeping can
//! pass through; whether an element is an honest polynomial is observable.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::ppoly::{pmono_string, PPoly};
use crate::rat::binomial;
use crate::scalar::BetaScalar;

#[derive(Clone, PartialEq, Debug)]
pub struct MixedPoly {
    /// Coefficient of each slot power; no zero entries.
    coeffs: BTreeMap<i64, PPoly>,
    /// How many variables the generator coefficients refer to.
    pub pvars: u32,
}

impl MixedPoly {
    pub fn zero(pvars: u32) -> Self {
        MixedPoly {
            coeffs: BTreeMap::new(),
            pvars,
        }
    }

    pub fn from_ppoly(f: &PPoly, pvars: u32) -> Self {
        let mut m = MixedPoly::zero(pvars);
        m.add_coeff(0, f.clone());
        m
    }

    pub fn slot_pow(k: i64, pvars: u32) -> Self {
        let mut m = MixedPoly::zero(pvars);
        m.add_coeff(k, PPoly::one());
        m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_coeff(&mut self, k: i64, c: PPoly) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(k) {
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

    pub fn coeff(&self, k: i64) -> PPoly {
        self.coeffs.get(&k).cloned().unwrap_or_else(PPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &PPoly)> {
        self.coeffs.iter()
    }

    pub fn slot_degree(&self) -> i64 {
        self.coeffs.keys().max().copied().unwrap_or(0)
    }

    pub fn min_slot_exp(&self) -> i64 {
        self.coeffs.keys().min().copied().unwrap_or(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_slot_exp() >= 0
    }

    pub fn max_p_grade(&self) -> u32 {
        self.coeffs.values().map(|c| c.max_grade()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &MixedPoly) -> MixedPoly {
        debug_assert_eq!(self.pvars, other.pvars);
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_coeff(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MixedPoly) -> MixedPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MixedPoly {
        let mut out = MixedPoly::zero(self.pvars);
        for (k, c) in &self.coeffs {
            out.coeffs.insert(*k, -c);
        }
        out
    }

    pub fn mul(&self, other: &MixedPoly) -> MixedPoly {
        debug_assert_eq!(self.pvars, other.pvars);
        let mut out = MixedPoly::zero(self.pvars);
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &other.coeffs {
                out.add_coeff(k1 + k2, c1 * c2);
            }
        }
        out
    }

    pub fn scale_ppoly(&self, f: &PPoly) -> MixedPoly {
        let mut out = MixedPoly::zero(self.pvars);
        for (k, c) in &self.coeffs {
            out.add_coeff(*k, c * f);
        }
        out
    }

    pub fn scale(&self, s: &BetaScalar) -> MixedPoly {
        let mut out = MixedPoly::zero(self.pvars);
        for (k, c) in &self.coeffs {
            out.add_coeff(*k, c.scale(s));
        }
        out
    }

    /// Multiply by `slot^d`.
    pub fn shift_slot(&self, d: i64) -> MixedPoly {
        let mut out = MixedPoly::zero(self.pvars);
        for (k, c) in &self.coeffs {
            out.coeffs.insert(k + d, c.clone());
        }
        out
    }

    /// The Euler derivative `t d/dt` in the slot variable.
    pub fn theta_slot(&self) -> MixedPoly {
        let mut out = MixedPoly::zero(self.pvars);
        for (k, c) in &self.coeffs {
            if *k != 0 {
                out.add_coeff(*k, c.scale(&BetaScalar::from_int(*k)));
            }
        }
        out
    }

    pub fn map_coeffs(&self, pvars: u32, f: impl Fn(&PPoly) -> PPoly) -> MixedPoly {
        let mut out = MixedPoly::zero(pvars);
        for (k, c) in &self.coeffs {
            out.add_coeff(*k, f(c));
        }
        out
    }
}

impl fmt::Display for MixedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(BetaScalar, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().rev() {
            let tpow = match *k {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{}", e),
            };
            for (m, s) in c.iter() {
                let ms = pmono_string(m);
                let mono = match (tpow.is_empty(), ms.is_empty()) {
                    (true, true) => String::new(),
                    (true, false) => ms,
                    (false, true) => tpow.clone(),
                    (false, false) => format!("{}*{}", tpow, ms),
                };
                terms.push((s.clone(), mono));
            }
        }
        crate::printer::fmt_terms(f, terms.into_iter())
    }
}

/// Substitute `p_k -> p_k + sign * t^k` for every `k >= 1`, the Taylor-shift
/// action of the vertex factors. `p0` is left untouched.
pub fn taylor_shift(f: &PPoly, sign: i64, pvars_out: u32) -> MixedPoly {
    let mut out = MixedPoly::zero(pvars_out);
    for (k, c) in taylor_shift_map(f, sign) {
        out.add_coeff(k, c);
    }
    out
}

/// Same substitution as [`taylor_shift`], returned as a plain exponent map
/// for callers that do not track a variable count.
pub fn taylor_shift_map(f: &PPoly, sign: i64) -> BTreeMap<i64, PPoly> {
    let out = taylor_shift_inner(f, sign, 0);
    out.coeffs
}

fn taylor_shift_inner(f: &PPoly, sign: i64, pvars_out: u32) -> MixedPoly {
    let mut out = MixedPoly::zero(pvars_out);
    for (m, c) in f.iter() {
        // expand each factor (p_i + sign t^i)^mult binomially
        let mut acc = MixedPoly::from_ppoly(&PPoly::constant(c.clone()), pvars_out);
        for (idx, mult) in &m.0 {
            if *idx == 0 {
                let p0_pow = PPoly::monomial(
                    crate::ppoly::PMono(vec![(0, *mult)]),
                    BetaScalar::one(),
                );
                acc = acc.scale_ppoly(&p0_pow);
                continue;
            }
            let mut factor = MixedPoly::zero(pvars_out);
            for j in 0..=*mult {
                let mut s = crate::rat::rat_int(1);
                for _ in 0..(*mult - j) {
                    s *= crate::rat::rat_int(sign);
                }
                let coeff = binomial(*mult, j) * s;
                let mono = crate::ppoly::PMono(if j > 0 { vec![(*idx, j)] } else { vec![] });
                factor.add_coeff(
                    (*idx as i64) * ((*mult - j) as i64),
                    PPoly::monomial(mono, BetaScalar::from_rat(coeff)),
                );
            }
            acc = acc.mul(&factor);
        }
        out = out.add(&acc);
    }
    out
}

/// Two-variable companion used inside the Dunkl kernels: polynomials in the
/// slot variable and one auxiliary variable with generator coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly {
    coeffs: BTreeMap<(i64, i64), PPoly>,
    pub pvars: u32,
}

impl BiPoly {
    pub fn zero(pvars: u32) -> Self {
        BiPoly {
            coeffs: BTreeMap::new(),
            pvars,
        }
    }

    pub fn add_coeff(&mut self, k: (i64, i64), c: PPoly) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(k) {
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

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &PPoly)> {
        self.coeffs.iter()
    }

    /// Insert a `MixedPoly` whose slot becomes the first variable, at second
    /// variable power zero.
    pub fn from_first(m: &MixedPoly) -> BiPoly {
        let mut out = BiPoly::zero(m.pvars);
        for (k, c) in m.iter() {
            out.add_coeff((*k, 0), c.clone());
        }
        out
    }

    /// Swap the two variables.
    pub fn swap_vars(&self) -> BiPoly {
        let mut out = BiPoly::zero(self.pvars);
        for ((a, b), c) in &self.coeffs {
            out.add_coeff((*b, *a), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        debug_assert_eq!(self.pvars, other.pvars);
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_coeff(*k, -c);
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        debug_assert_eq!(self.pvars, other.pvars);
        let mut out = BiPoly::zero(self.pvars);
        for ((a1, b1), c1) in &self.coeffs {
            for ((a2, b2), c2) in &other.coeffs {
                out.add_coeff((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    /// Exact division by `(first - second)`; panics if the difference does
    /// not vanish on the diagonal, which would break the exchange symmetry
    /// this kernel relies on.
    pub fn divide_by_var_difference(&self) -> BiPoly {
        // synthetic division treating the value as a polynomial in the first
        // variable over the second
        let mut by_first: BTreeMap<i64, BTreeMap<i64, PPoly>> = BTreeMap::new();
        for ((a, b), c) in &self.coeffs {
            by_first
                .entry(*a)
                .or_default()
                .insert(*b, c.clone());
        }
        let deg = match by_first.keys().next_back() {
            Some(d) => *d,
            None => return BiPoly::zero(self.pvars),
        };
        let min = *by_first.keys().next().unwrap();
        assert!(min >= 0, "division expects polynomial input");
        let mut quot = BiPoly::zero(self.pvars);
        // carry = coefficient map (in second variable) for the current power
        let mut carry: BTreeMap<i64, PPoly> = BTreeMap::new();
        for a in (0..=deg).rev() {
            let mut cur = carry;
            if let Some(row) = by_first.get(&a) {
                for (b, c) in row {
                    let e = cur.entry(*b).or_insert_with(PPoly::zero);
                    *e = &*e + c;
                }
            }
            cur.retain(|_, v| !v.is_zero());
            if a == 0 {
                assert!(
                    cur.is_empty(),
                    "difference not divisible by the variable difference"
                );
                break;
            }
            // quotient coefficient at first-power a-1 is cur; carry = cur * second
            let mut next: BTreeMap<i64, PPoly> = BTreeMap::new();
            for (b, c) in &cur {
                quot.add_coeff((a - 1, *b), c.clone());
                next.insert(b + 1, c.clone());
            }
            carry = next;
        }
        quot
    }

    /// Apply `p_k -> p_k + sign * z^k` (second variable) to every coefficient.
    pub fn taylor_shift_second(&self, sign: i64, pvars_out: u32) -> BiPoly {
        let mut out = BiPoly::zero(pvars_out);
        for ((a, b), c) in &self.coeffs {
            let shifted = taylor_shift(c, sign, pvars_out);
            for (z, cc) in shifted.iter() {
                out.add_coeff((*a, b + z), cc.clone());
            }
        }
        out
    }

    /// Collect the coefficient of each second-variable power as a
    /// `MixedPoly` in the first variable.
    pub fn second_var_coefficients(&self) -> BTreeMap<i64, MixedPoly> {
        let mut map: BTreeMap<i64, MixedPoly> = BTreeMap::new();
        for ((a, b), c) in &self.coeffs {
            map.entry(*b)
                .or_insert_with(|| MixedPoly::zero(self.pvars))
                .add_coeff(*a, c.clone());
        }
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn taylor_shift_single_generator() {
        // p2 -> p2 + t^2
        let s = taylor_shift(&PPoly::gen(2), 1, 1);
        assert_eq!(s.coeff(0), PPoly::gen(2));
        assert_eq!(s.coeff(2), PPoly::one());
        // p1^2 -> p1^2 + 2 t p1 + t^2
        let f = &PPoly::gen(1) * &PPoly::gen(1);
        let s = taylor_shift(&f, 1, 1);
        assert_eq!(s.coeff(0), f);
        assert_eq!(s.coeff(1), PPoly::gen(1).scale_rat(&rat_int(2)));
        assert_eq!(s.coeff(2), PPoly::one());
        // sign -1 flips the odd cross terms
        let s = taylor_shift(&f, -1, 1);
        assert_eq!(s.coeff(1), PPoly::gen(1).scale_rat(&rat_int(-2)));
    }

    #[test]
    fn divide_by_difference() {
        // t^2 - z^2 = (t - z)(t + z)
        let mut p = BiPoly::zero(0);
        p.add_coeff((2, 0), PPoly::one());
        p.add_coeff((0, 2), -&PPoly::one());
        let q = p.divide_by_var_difference();
        let mut expect = BiPoly::zero(0);
        expect.add_coeff((1, 0), PPoly::one());
        expect.add_coeff((0, 1), PPoly::one());
        assert_eq!(q, expect);
    }

    #[test]
    #[should_panic(expected = "not divisible")]
    fn indivisible_difference_panics() {
        let mut p = BiPoly::zero(0);
        p.add_coeff((0, 0), PPoly::one());
        p.divide_by_var_difference();
    }
}
