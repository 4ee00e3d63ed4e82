//! The fermionic side: semi-infinite wedges encoded as charged partitions,
//! the Clifford-algebra action, bosonic modes built from fermion bilinears,
//! charge shifts, cutting to finite wedges, and the dictionary back to the
//! generator polynomials.
//!
//! A basis wedge with charge `c` and partition `l` stands for the ordered
//! exponent sequence `l_j + c - j` (one-indexed, eventually the consecutive
//! tail `c - j`). Operators act by toggling exponents with the sign of the
//! transposition that sorts the result, so everything stays finite and
//! canonical; distinct `(l, c)` are independent basis vectors.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CoreError, Result};
use crate::partition::Partition;
use crate::ppoly::PPoly;
use crate::scalar::BetaScalar;
use crate::symfun::schur_in_p;
use crate::xpoly::{XMono, XPoly};

/// Basis wedge: charge plus partition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Wedge {
    pub charge: i64,
    pub lambda: Partition,
}

impl Wedge {
    pub fn vacuum(charge: i64) -> Self {
        Wedge {
            charge,
            lambda: Partition::empty(),
        }
    }

    pub fn new(lambda: Partition, charge: i64) -> Self {
        Wedge { charge, lambda }
    }

    /// Exponent of the `j`-th factor (0-indexed): `l_(j+1) + c - (j+1)`.
    pub fn exponent(&self, j: usize) -> i64 {
        self.lambda.part_or_zero(j) as i64 + self.charge - (j as i64 + 1)
    }

    /// True when `k` occurs among the exponents. The tail contains every
    /// integer at most `c - len - 1`.
    pub fn contains(&self, k: i64) -> bool {
        let len = self.lambda.len();
        if k <= self.charge - (len as i64) - 1 {
            return true;
        }
        (0..len).any(|j| self.exponent(j) == k)
    }

    /// Number of exponents strictly greater than `k` (the position `k`
    /// would occupy).
    fn count_above(&self, k: i64) -> usize {
        let len = self.lambda.len();
        let head = (0..len).filter(|&j| self.exponent(j) > k).count();
        // tail exponents c - j - 1 for j >= len
        let tail = (self.charge - 1 - k - len as i64).max(0) as usize;
        head + tail
    }

    /// Rebuild a wedge from the leading entries of a strictly decreasing
    /// exponent sequence; entries must continue into the charge tail.
    fn from_exponents(exps: &[i64], charge: i64) -> Wedge {
        let mut parts = Vec::new();
        for (j, e) in exps.iter().enumerate() {
            let p = e + (j as i64 + 1) - charge;
            assert!(p >= 0, "exponent sequence does not match the charge");
            if p > 0 {
                parts.push(p as u32);
            } else {
                break;
            }
        }
        Wedge {
            charge,
            lambda: Partition::new(parts),
        }
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{};{}>", self.lambda, self.charge)
    }
}

/// Finite formal combination of basis wedges over the coefficient ring.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct WedgeSum {
    terms: BTreeMap<Wedge, BetaScalar>,
}

impl WedgeSum {
    pub fn zero() -> Self {
        WedgeSum::default()
    }

    pub fn basis(w: Wedge) -> Self {
        let mut s = WedgeSum::zero();
        s.add_term(w, BetaScalar::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Wedge, c: BetaScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn iter(&self) -> impl Iterator<Item = (&Wedge, &BetaScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &WedgeSum) -> WedgeSum {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WedgeSum) -> WedgeSum {
        self.add(&other.scale(&BetaScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &BetaScalar) -> WedgeSum {
        let mut out = WedgeSum::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Pairing in the orthonormal wedge basis; distinct sectors are
    /// orthogonal.
    pub fn pair(&self, other: &WedgeSum) -> BetaScalar {
        let mut acc = BetaScalar::zero();
        for (w, c) in &self.terms {
            if let Some(d) = other.terms.get(w) {
                acc = &acc + &(c * d);
            }
        }
        acc
    }
}

/// Annihilation: remove the factor with exponent `k`, with the sign of its
/// position; `None` when absent.
pub fn psi_wedge(w: &Wedge, k: i64) -> Option<(Wedge, i64)> {
    if !w.contains(k) {
        return None;
    }
    let pos = w.count_above(k);
    let take = pos + w.lambda.len() + 2;
    let exps: Vec<i64> = (0..=take)
        .map(|j| w.exponent(j))
        .filter(|e| *e != k)
        .collect();
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((Wedge::from_exponents(&exps, w.charge - 1), sign))
}

/// Creation: prepend the factor `k` and sort it into place, with the sign
/// of the transposition; `None` when already present.
pub fn psi_star_wedge(w: &Wedge, k: i64) -> Option<(Wedge, i64)> {
    if w.contains(k) {
        return None;
    }
    let pos = w.count_above(k);
    let take = pos + w.lambda.len() + 2;
    let mut exps: Vec<i64> = (0..=take).map(|j| w.exponent(j)).collect();
    exps.push(k);
    exps.sort_unstable_by(|a, b| b.cmp(a));
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((Wedge::from_exponents(&exps, w.charge + 1), sign))
}

pub fn psi_apply_sum(v: &WedgeSum, k: i64) -> WedgeSum {
    let mut out = WedgeSum::zero();
    for (w, c) in v.iter() {
        if let Some((w2, sign)) = psi_wedge(w, k) {
            out.add_term(w2, c.scale_int(sign));
        }
    }
    out
}

pub fn psi_star_apply_sum(v: &WedgeSum, k: i64) -> WedgeSum {
    let mut out = WedgeSum::zero();
    for (w, c) in v.iter() {
        if let Some((w2, sign)) = psi_star_wedge(w, k) {
            out.add_term(w2, c.scale_int(sign));
        }
    }
    out
}

/// Bosonic mode as the normal-ordered fermion bilinear. For nonzero modes
/// only finitely many toggles survive on a basis wedge; the zero mode acts
/// as the charge.
pub fn a_apply(v: &WedgeSum, n: i64) -> WedgeSum {
    let mut out = WedgeSum::zero();
    for (w, c) in v.iter() {
        if n == 0 {
            out.add_term(w.clone(), c.scale_int(w.charge));
            continue;
        }
        let len = w.lambda.len() as i64;
        let lo = w.charge - len - 1 - n.abs() - 1;
        let hi = w.exponent(0).max(w.charge) + n.abs() + 1;
        for j in lo..=hi {
            if let Some((w1, s1)) = psi_wedge(w, j + n) {
                if let Some((w2, s2)) = psi_star_wedge(&w1, j) {
                    out.add_term(w2, c.scale_int(s1 * s2));
                }
            }
        }
    }
    out
}

/// Charge-shift conjugator: shift every exponent by `s`, moving the charge
/// by `s`, with no sign.
pub fn charge_shift(v: &WedgeSum, s: i64) -> WedgeSum {
    let mut out = WedgeSum::zero();
    for (w, c) in v.iter() {
        out.add_term(Wedge::new(w.lambda.clone(), w.charge + s), c.clone());
    }
    out
}

/// Strictly decreasing exponent list of a finite wedge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteWedge(pub Vec<i64>);

impl FiniteWedge {
    pub fn new(exps: Vec<i64>) -> Self {
        assert!(
            exps.windows(2).all(|w| w[0] > w[1]),
            "finite wedge exponents must strictly decrease"
        );
        FiniteWedge(exps)
    }
}

impl fmt::Display for FiniteWedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Cut a basis wedge to its first `n` factors: `None` unless the charge is
/// exactly `n`. The padded exponent formula needs the partition to fit
/// inside the cut.
pub fn omega_cut(w: &Wedge, n: usize) -> Result<Option<FiniteWedge>> {
    if w.charge != n as i64 {
        return Ok(None);
    }
    if w.lambda.len() > n {
        return Err(CoreError::PartitionTooLong {
            len: w.lambda.len(),
            cut: n,
        });
    }
    let exps: Vec<i64> = (0..n).map(|j| w.exponent(j)).collect();
    Ok(Some(FiniteWedge::new(exps)))
}

/// The alternant identified with a finite wedge: `det(x_i^(k_j))`.
pub fn finite_wedge_to_poly(fw: &FiniteWedge) -> XPoly {
    let n = fw.0.len();
    assert!(n >= 1);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = XPoly::zero(n);
    fn rec(perm: &mut Vec<usize>, k: usize, fw: &FiniteWedge, out: &mut XPoly) {
        let n = perm.len();
        if k == n {
            let mut sign = 1i64;
            for i in 0..n {
                for j in (i + 1)..n {
                    if perm[i] > perm[j] {
                        sign = -sign;
                    }
                }
            }
            let mut exps = vec![0i32; n];
            for (i, &j) in perm.iter().enumerate() {
                exps[i] = fw.0[j] as i32;
            }
            out.add_term(XMono(exps), BetaScalar::from_int(sign));
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            rec(perm, k + 1, fw, out);
            perm.swap(k, i);
        }
    }
    rec(&mut perm, 0, fw, &mut out);
    out
}

/// Dictionary to the bosonic side: a basis wedge maps to the Schur function
/// of its partition in the sector of its charge.
pub fn to_boson(w: &Wedge) -> (i64, PPoly) {
    (w.charge, schur_in_p(&w.lambda))
}

/// Evaluation of a charged bosonic state with `n` particles: nonzero only
/// in the sector of charge `n`, where it is the alternant times the
/// substituted generator polynomial.
pub fn pi_n_sector(charge: i64, f: &PPoly, n: usize) -> XPoly {
    if charge != n as i64 {
        return XPoly::zero(n);
    }
    crate::symfun::alpha_n(f, n)
}

/// Both routes around the cutting square: cut-then-identify equals
/// map-to-bosons-then-evaluate.
pub fn cutting_square_commutes(lambda: &Partition, charge: i64, n: usize) -> Result<bool> {
    let w = Wedge::new(lambda.clone(), charge);
    let via_fermion = match omega_cut(&w, n)? {
        Some(fw) => finite_wedge_to_poly(&fw),
        None => XPoly::zero(n),
    };
    let (c, f) = to_boson(&w);
    let via_boson = pi_n_sector(c, &f, n);
    Ok(via_fermion == via_boson)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_up_to;
    use crate::rat::rat;
    use crate::symfun::vandermonde;

    fn vac() -> Wedge {
        Wedge::vacuum(0)
    }

    #[test]
    fn vacuum_annihilation_pattern() {
        for n in 0..5i64 {
            assert!(psi_wedge(&vac(), n).is_none());
            assert!(psi_star_wedge(&vac(), n).is_some());
        }
        for n in -5..0i64 {
            assert!(psi_wedge(&vac(), n).is_some());
            assert!(psi_star_wedge(&vac(), n).is_none());
        }
        // creating exponent zero gives the charge-one vacuum with sign +
        let (w, sign) = psi_star_wedge(&vac(), 0).unwrap();
        assert_eq!(sign, 1);
        assert_eq!(w, Wedge::vacuum(1));
    }

    #[test]
    fn shifted_vacuum_product() {
        // |c> = psi*_(c-1) ... psi*_1 psi*_0 |0>
        let mut v = WedgeSum::basis(vac());
        for k in 0..3i64 {
            v = psi_star_apply_sum(&v, k);
        }
        assert_eq!(v, WedgeSum::basis(Wedge::vacuum(3)));
    }

    #[test]
    fn toggle_round_trip() {
        // removing a tail exponent and putting it back restores the wedge
        for l in partitions_up_to(4) {
            let w = Wedge::new(l.clone(), 0);
            for k in -6..=4i64 {
                if let Some((w1, s1)) = psi_wedge(&w, k) {
                    let (w2, s2) = psi_star_wedge(&w1, k).expect("slot freed");
                    assert_eq!(w2, w, "k = {} lambda = {}", k, l);
                    assert_eq!(s1 * s2, 1);
                }
            }
        }
    }

    #[test]
    fn clifford_anticommutators() {
        let mut states = Vec::new();
        for l in partitions_up_to(5) {
            for c in -2..=2i64 {
                states.push(Wedge::new(l.clone(), c));
            }
        }
        for w in &states {
            let v = WedgeSum::basis(w.clone());
            for i in -6..=6i64 {
                for j in -6..=6i64 {
                    let ac = psi_apply_sum(&psi_star_apply_sum(&v, j), i)
                        .add(&psi_star_apply_sum(&psi_apply_sum(&v, i), j));
                    if i == j {
                        assert_eq!(ac, v, "psi_{} psi*_{} on {}", i, j, w);
                    } else {
                        assert!(ac.is_zero(), "psi_{} psi*_{} on {}", i, j, w);
                    }
                }
            }
            // plain anticommutators vanish on a spot-check grid
            for i in -3..=3i64 {
                for j in -3..=3i64 {
                    let aa = psi_apply_sum(&psi_apply_sum(&v, j), i)
                        .add(&psi_apply_sum(&psi_apply_sum(&v, i), j));
                    assert!(aa.is_zero(), "psi_{} psi_{} on {}", i, j, w);
                    let cc = psi_star_apply_sum(&psi_star_apply_sum(&v, j), i)
                        .add(&psi_star_apply_sum(&psi_star_apply_sum(&v, i), j));
                    assert!(cc.is_zero(), "psi*_{} psi*_{} on {}", i, j, w);
                }
            }
        }
    }

    #[test]
    fn charge_operator_and_boson_commutator() {
        for l in partitions_up_to(4) {
            for c in -2..=2i64 {
                let v = WedgeSum::basis(Wedge::new(l.clone(), c));
                assert_eq!(a_apply(&v, 0), v.scale(&BetaScalar::from_int(c)));
                let lhs = a_apply(&a_apply(&v, -1), 1).sub(&a_apply(&a_apply(&v, 1), -1));
                assert_eq!(lhs, v, "lambda = {} c = {}", l, c);
            }
        }
    }

    #[test]
    fn boson_commutators_general() {
        for l in partitions_up_to(4) {
            let v = WedgeSum::basis(Wedge::new(l.clone(), 0));
            for k in -4..=4i64 {
                for m in -4..=4i64 {
                    let comm = a_apply(&a_apply(&v, m), k).sub(&a_apply(&a_apply(&v, k), m));
                    if k + m == 0 {
                        assert_eq!(
                            comm,
                            v.scale(&BetaScalar::from_int(k)),
                            "k = {} l = {} on {}",
                            k,
                            m,
                            l
                        );
                    } else {
                        assert!(comm.is_zero(), "k = {} l = {} on {}", k, m, l);
                    }
                }
            }
        }
    }

    #[test]
    fn charge_shift_conjugation() {
        for l in partitions_up_to(4) {
            let v = WedgeSum::basis(Wedge::new(l.clone(), 0));
            for n in -3..=3i64 {
                let lhs = charge_shift(&psi_apply_sum(&charge_shift(&v, -1), n), 1);
                let rhs = psi_apply_sum(&v, n + 1);
                assert_eq!(lhs, rhs, "n = {} lambda = {}", n, l);
            }
        }
        let v = WedgeSum::basis(vac());
        assert_eq!(charge_shift(&charge_shift(&v, 1), 1), charge_shift(&v, 2));
        assert_eq!(charge_shift(&v, 1), WedgeSum::basis(Wedge::vacuum(1)));
    }

    #[test]
    fn lowering_mode_matches_dictionary() {
        let v = WedgeSum::basis(vac());
        assert_eq!(
            a_apply(&v, -1),
            WedgeSum::basis(Wedge::new(Partition::new(vec![1]), 0))
        );
        // a_(-n) acts as multiplication by p_n on dictionary images
        for l in partitions_up_to(4) {
            for n in 1..=4i64 {
                let w = Wedge::new(l.clone(), 0);
                let moved = a_apply(&WedgeSum::basis(w.clone()), -n);
                let mut boson = PPoly::zero();
                for (w2, c2) in moved.iter() {
                    let (ch, f) = to_boson(w2);
                    assert_eq!(ch, 0);
                    boson = &boson + &f.scale(c2);
                }
                let direct = &PPoly::gen(n as u32) * &to_boson(&w).1;
                assert_eq!(boson, direct, "n = {} lambda = {}", n, l);
            }
        }
    }

    #[test]
    fn biorthogonal_sectors() {
        for n in -2..=2i64 {
            for m in -2..=2i64 {
                let vn = WedgeSum::basis(Wedge::vacuum(n));
                let vm = WedgeSum::basis(Wedge::vacuum(m));
                let expect = if n == m {
                    BetaScalar::one()
                } else {
                    BetaScalar::zero()
                };
                assert_eq!(vn.pair(&vm), expect);
            }
        }
    }

    #[test]
    fn cut_examples() {
        let w = Wedge::new(Partition::new(vec![1]), 3);
        assert_eq!(omega_cut(&w, 2).unwrap(), None);

        let w = Wedge::vacuum(2);
        let fw = omega_cut(&w, 2).unwrap().unwrap();
        assert_eq!(fw, FiniteWedge::new(vec![1, 0]));
        assert_eq!(finite_wedge_to_poly(&fw), vandermonde(2));

        let w = Wedge::new(Partition::new(vec![1]), 2);
        let fw = omega_cut(&w, 2).unwrap().unwrap();
        assert_eq!(fw, FiniteWedge::new(vec![2, 0]));
        let x = |i| XPoly::var(2, i);
        assert_eq!(
            finite_wedge_to_poly(&fw),
            &(&x(1) * &x(1)) - &(&x(2) * &x(2))
        );

        let w = Wedge::new(Partition::new(vec![1, 1, 1]), 2);
        assert_eq!(
            omega_cut(&w, 2),
            Err(CoreError::PartitionTooLong { len: 3, cut: 2 })
        );
    }

    #[test]
    fn finite_wedge_alternants() {
        let fw = FiniteWedge::new(vec![2, 1, 0]);
        assert_eq!(finite_wedge_to_poly(&fw), vandermonde(3));
        let lam = Partition::new(vec![2, 1]);
        let fw = FiniteWedge::new(vec![4, 2, 0]);
        let expect = &vandermonde(3) * &crate::symfun::schur_in_x(&lam, 3);
        assert_eq!(finite_wedge_to_poly(&fw), expect);
    }

    #[test]
    fn dictionary_examples() {
        assert_eq!(to_boson(&Wedge::vacuum(5)), (5, PPoly::one()));
        assert_eq!(
            to_boson(&Wedge::new(Partition::new(vec![1]), 0)),
            (0, PPoly::gen(1))
        );
        let h2 = (&(&PPoly::gen(1) * &PPoly::gen(1)) + &PPoly::gen(2)).scale_rat(&rat(1, 2));
        assert_eq!(to_boson(&Wedge::new(Partition::new(vec![2]), 0)), (0, h2));
    }

    #[test]
    fn cutting_square_small_grid() {
        assert!(cutting_square_commutes(&Partition::new(vec![1]), 3, 2).unwrap());
        for n in 2..=3usize {
            for l in partitions_up_to(4) {
                if l.len() > n {
                    continue;
                }
                assert!(
                    cutting_square_commutes(&l, n as i64, n).unwrap(),
                    "lambda = {} n = {}",
                    l,
                    n
                );
            }
        }
    }
}
