//! The finite model: exchange and Dunkl operators on coordinate
//! polynomials, the commuting Hamiltonians, and the same operators rewritten
//! on slot forms (a distinguished variable with generator coefficients).
//!
//! The slot route computes the embedding with a multiplication operator that
//! is an honest polynomial (the product of differences with the remaining
//! variables), performs the divided differences by exact bivariate division,
//! and finishes with a residue against the descending series whose
//! coefficients are the complete homogeneous functions. All steps are exact;
//! the residue window is derived from the degrees involved.

use crate::error::{CoreError, Result};
use crate::pdiffop::{NSubst, PDiffOp};
use crate::ppoly::{PMono, PPoly};
use crate::rat::{rat, rat_int, Rat};
use crate::scalar::{bpoly, BetaScalar};
use crate::slot::{taylor_shift, BiPoly, MixedPoly};
use crate::symfun::{
    homogeneous_in_p_or_zero, power_sums_substitute_subset, vandermonde_subset,
};
use crate::xpoly::XPoly;
use crate::zseries::ZSeries;

/// Dunkl operator in coordinates: `x_i d_i + b sum_{j != i} x_i (1 - K_ij) /
/// (x_i - x_j)` applied to `f`.
pub fn dunkl(f: &XPoly, i: usize, n: usize) -> Result<XPoly> {
    assert_eq!(f.nvars(), n);
    assert!(i >= 1 && i <= n);
    let mut acc = f.theta(i);
    let xi = XPoly::var(n, i);
    for j in 1..=n {
        if j == i {
            continue;
        }
        let num = &(f - &f.exchange(i, j)) * &xi;
        let den = &xi - &XPoly::var(n, j);
        let q = num.divide_exact(&den)?;
        acc = &acc + &q.scale(&BetaScalar::beta());
    }
    Ok(acc)
}

/// The conjugated Hamiltonian on all polynomials. The two interaction
/// fractions are combined per pair so the division is exact.
pub fn hamiltonian_full(f: &XPoly, n: usize) -> Result<XPoly> {
    assert_eq!(f.nvars(), n);
    let mut acc = XPoly::zero(n);
    for i in 1..=n {
        acc = &acc + &f.theta(i).theta(i);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let xi = XPoly::var(n, i);
            let xj = XPoly::var(n, j);
            let diff = &xi - &xj;
            let grad = &f.theta(i) - &f.theta(j);
            let term1 = &(&(&xi + &xj) * &grad) * &diff;
            let term2 = (&(&xi * &xj) * &(f - &f.exchange(i, j))).scale_rat(&rat_int(2));
            let q = (&term1 - &term2).divide_exact(&(&diff * &diff))?;
            acc = &acc + &q.scale(&BetaScalar::beta());
        }
    }
    Ok(acc)
}

/// The Hamiltonian restricted to antisymmetric polynomials.
pub fn hamiltonian_antisym(g: &XPoly, n: usize) -> Result<XPoly> {
    assert_eq!(g.nvars(), n);
    if !g.is_antisymmetric() {
        return Err(CoreError::NotAntisymmetric);
    }
    let mut acc = XPoly::zero(n);
    for i in 1..=n {
        acc = &acc + &g.theta(i).theta(i);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let xi = XPoly::var(n, i);
            let xj = XPoly::var(n, j);
            let diff = &xi - &xj;
            let grad = &g.theta(i) - &g.theta(j);
            let term1 = &(&(&xi + &xj) * &grad) * &diff;
            let term2 = (&(&xi * &xj) * g).scale_rat(&rat_int(4));
            let q = (&term1 - &term2).divide_exact(&(&diff * &diff))?;
            acc = &acc + &q.scale(&BetaScalar::beta());
        }
    }
    Ok(acc)
}

/// `sum_i D_i^k` restricted to antisymmetric polynomials. The output is
/// asserted antisymmetric; a failure would be an implementation bug.
pub fn hbar_k(g: &XPoly, k: u32, n: usize) -> Result<XPoly> {
    assert_eq!(g.nvars(), n);
    if !g.is_antisymmetric() {
        return Err(CoreError::NotAntisymmetric);
    }
    let mut acc = XPoly::zero(n);
    for i in 1..=n {
        let mut w = g.clone();
        for _ in 0..k {
            w = dunkl(&w, i, n)?;
        }
        acc = &acc + &w;
    }
    if !acc.is_antisymmetric() {
        return Err(CoreError::NotAntisymmetric);
    }
    Ok(acc)
}

/// Multiplication by the product of differences with `mvars` remaining
/// variables, written in the generators: `sum_{j<=mvars} (-1)^j e_j
/// t^(mvars-j)`.
pub fn vminus_mixed(mvars: u32) -> MixedPoly {
    let mut out = MixedPoly::zero(mvars);
    for j in 0..=mvars {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.add_coeff(
            (mvars - j) as i64,
            crate::symfun::elementary_in_p(j as usize).scale_rat(&rat_int(sign)),
        );
    }
    out
}

/// Embed a generator polynomial over `n` variables as a slot form over
/// `n - 1`: Taylor-shift every generator by the slot variable, then multiply
/// by the product of differences.
pub fn slot_embed(f: &PPoly, n: usize) -> MixedPoly {
    assert!(n >= 1);
    assert!(!f.contains_p0(), "finite slot forms carry no p0");
    let m = (n - 1) as u32;
    vminus_mixed(m).mul(&taylor_shift(f, 1, m))
}

/// Total antisymmetrization of a slot form over `n - 1` variables into a
/// generator polynomial over `n` variables, computed as the residue of the
/// descending series against the shifted slot form.
pub fn slot_antisymmetrize(h: &MixedPoly, n: usize) -> Result<PPoly> {
    assert_eq!(h.pvars as usize, n - 1, "slot form variable count mismatch");
    assert!(h.is_polynomial(), "slot form must be polynomial");
    if h.is_zero() {
        return Ok(PPoly::zero());
    }
    // p_k -> p_k - t^k, now over n variables
    let mut g = MixedPoly::zero(n as u32);
    for (k, c) in h.iter() {
        let sh = taylor_shift(c, -1, n as u32);
        for (m, cc) in sh.iter() {
            g.add_coeff(k + m, cc.clone());
        }
    }
    let deg = g.slot_degree();
    let mut gz = ZSeries::exact_zero(PPoly::zero());
    for (k, c) in g.iter() {
        gz.set_coeff(*k, c.clone());
    }
    // descending series with support bound -n, cut where nothing can reach
    // the residue slot against a polynomial of degree `deg`
    let hi = -(n as i64);
    let lo = (-1 - deg).min(hi);
    let mut vm = ZSeries::new(PPoly::zero(), lo, hi);
    let mut j = 0i64;
    while -j - (n as i64) >= lo {
        vm.set_coeff(-j - n as i64, homogeneous_in_p_or_zero(j));
        j += 1;
    }
    vm.mul(&gz).residue()
}

/// Dunkl operator on slot forms over `n - 1` variables.
pub fn dunkl_slot(h: &MixedPoly, n: usize) -> MixedPoly {
    let m = (n - 1) as u32;
    assert_eq!(h.pvars, m, "slot form variable count mismatch");
    assert!(n >= 2, "need at least two particles");
    let inner = m - 1;

    // A(t, z): embed every slot coefficient in the auxiliary variable
    let vminus = vminus_mixed(inner);
    let mut a = BiPoly::zero(inner);
    for (s, c) in h.iter() {
        let emb = vminus.mul(&taylor_shift(c, 1, inner));
        for (z, cc) in emb.iter() {
            a.add_coeff((*s, *z), cc.clone());
        }
    }
    let b = a.swap_vars();
    // the divided difference is exact: the two orientations agree on the
    // diagonal by construction
    let q = a.sub(&b).divide_by_var_difference();
    let r = q.taylor_shift_second(-1, m);

    let mut s_acc = MixedPoly::zero(m);
    for (zdeg, rm) in r.second_var_coefficients() {
        let hk = homogeneous_in_p_or_zero(zdeg + 1 - m as i64);
        if !hk.is_zero() {
            s_acc = s_acc.add(&rm.map_coeffs(m, |c| c * &hk));
        }
    }
    h.theta_slot()
        .add(&s_acc.shift_slot(1).scale(&BetaScalar::beta()))
}

/// The Hamiltonian family through the slot pipeline: embed, apply the slot
/// Dunkl operator `k` times, antisymmetrize.
pub fn hamiltonian_p(k: u32, n: usize, f: &PPoly) -> Result<PPoly> {
    let mut m = slot_embed(f, n);
    for _ in 0..k {
        m = dunkl_slot(&m, n);
    }
    slot_antisymmetrize(&m, n)
}

/// Closed forms of the first Hamiltonians on generator polynomials, with the
/// particle count either numeric or formal. Terms are instantiated for
/// states of grade up to `max_grade`.
pub fn hamiltonian_p_closed(k: u32, n: NSubst, max_grade: u32) -> PDiffOp {
    assert!(k <= 2, "closed forms exist for k <= 2");
    match k {
        0 => PDiffOp::scalar(count_poly(n, &[rat_int(0), rat_int(1)])),
        1 => {
            let mut op = diagonal_degree_op(max_grade);
            // (1 + 2b)(N^2 - N)/2
            let c = &bpoly(&[1, 2]) * &count_poly(n, &[rat_int(0), rat(-1, 2), rat(1, 2)]);
            op = op.add(&PDiffOp::scalar(c));
            op
        }
        _ => {
            let mut op = two_particle_terms(max_grade);
            // -b sum n^2 p_n d_n - (1+2b) sum n p_n d_n + (3b+2) N sum n p_n d_n
            for nn in 1..=max_grade {
                let mut c = BetaScalar::zero();
                c = &c - &BetaScalar::beta().scale_int(nn as i64 * nn as i64);
                c = &c - &bpoly(&[1, 2]).scale_int(nn as i64);
                let cross = &bpoly(&[2, 3]) * &count_poly(n, &[rat_int(0), rat_int(1)]);
                c = &c + &cross.scale_int(nn as i64);
                op = op.add(&PDiffOp::term(
                    c,
                    0,
                    PMono::single(nn),
                    PMono::single(nn),
                ));
            }
            // constants: (2N^3 - 3N^2 + N)/6 + b(7N^3 - 12N^2 + 5N)/6
            //            + b^2 (N^3 - 2N^2 + N)
            let c0 = count_poly(n, &[rat_int(0), rat(1, 6), rat(-3, 6), rat(2, 6)]);
            let c1 = &BetaScalar::beta()
                * &count_poly(n, &[rat_int(0), rat(5, 6), rat(-12, 6), rat(7, 6)]);
            let b2 = &BetaScalar::beta() * &BetaScalar::beta();
            let c2 = &b2 * &count_poly(n, &[rat_int(0), rat_int(1), rat_int(-2), rat_int(1)]);
            op.add(&PDiffOp::scalar(&(&c0 + &c1) + &c2))
        }
    }
}

/// `sum_{n>0} n p_n d_n` truncated to indices up to `max_grade`.
pub fn diagonal_degree_op(max_grade: u32) -> PDiffOp {
    let mut op = PDiffOp::zero();
    for nn in 1..=max_grade {
        op = op.add(&PDiffOp::term(
            BetaScalar::from_int(nn as i64),
            0,
            PMono::single(nn),
            PMono::single(nn),
        ));
    }
    op
}

/// The two double sums shared by the second Hamiltonian and its limit:
/// `sum nk p_{n+k} d_n d_k + (1 + b) sum (n+k) p_n p_k d_{n+k}` over
/// positive indices.
pub(crate) fn two_particle_terms(max_grade: u32) -> PDiffOp {
    let mut op = PDiffOp::zero();
    for nn in 1..max_grade.max(1) {
        for kk in 1..=(max_grade - nn) {
            op = op.add(&PDiffOp::term(
                BetaScalar::from_int((nn * kk) as i64),
                0,
                PMono::single(nn + kk),
                PMono::single(nn).mul(&PMono::single(kk)),
            ));
            op = op.add(&PDiffOp::term(
                bpoly(&[1, 1]).scale_int((nn + kk) as i64),
                0,
                PMono::single(nn).mul(&PMono::single(kk)),
                PMono::single(nn + kk),
            ));
        }
    }
    op
}

/// Polynomial in the particle count: `sum coeffs[k] * N^k`, either evaluated
/// or kept formal.
pub fn count_poly(n: NSubst, coeffs: &[Rat]) -> BetaScalar {
    let mut out = BetaScalar::zero();
    for (k, c) in coeffs.iter().enumerate() {
        match n {
            NSubst::Int(v) => {
                let mut f = c.clone();
                for _ in 0..k {
                    f *= rat_int(v);
                }
                out = &out + &BetaScalar::from_rat(f);
            }
            NSubst::Formal => {
                out = &out + &BetaScalar::monomial(c.clone(), 0, k as u32);
            }
        }
    }
    out
}

/// Evaluate a slot form at the coordinate `x_i`: substitute the slot
/// variable, read the generators as power sums of the other variables, and
/// attach the sign and the alternant of the remaining coordinates.
///
/// Negative slot powers may be present from charge bookkeeping; their
/// coefficients must vanish under the substitution (that is membership in
/// the auxiliary subspace, checked extensionally here).
pub fn assemble_slot(h: &MixedPoly, n: usize, i: usize) -> XPoly {
    let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
    let mut acc = XPoly::zero(n);
    for (s, c) in h.iter() {
        let sub = power_sums_substitute_subset(c, n, &others);
        if *s < 0 {
            assert!(
                sub.is_zero(),
                "negative slot power with nonvanishing coefficient: not in the auxiliary subspace"
            );
            continue;
        }
        let mut e = vec![0i32; n];
        e[i - 1] = *s as i32;
        let mono = XPoly::monomial(n, e, BetaScalar::one());
        acc = &acc + &(&mono * &sub);
    }
    let sign = if i % 2 == 1 { 1 } else { -1 };
    (&vandermonde_subset(n, &others) * &acc).scale_rat(&rat_int(sign))
}

/// Extensional membership test for the auxiliary subspace: every negative
/// slot power must die under the substitution with `n - 1` variables.
pub fn slot_form_is_polynomial(h: &MixedPoly, n: usize, i: usize) -> bool {
    let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
    h.iter().all(|(s, c)| {
        *s >= 0 || power_sums_substitute_subset(c, n, &others).is_zero()
    })
}

/// Direct alternating-sum antisymmetrization in coordinates, the oracle for
/// the residue route.
pub fn antisymmetrize_by_slots(h: &MixedPoly, n: usize) -> XPoly {
    let mut acc = XPoly::zero(n);
    for i in 1..=n {
        acc = &acc + &assemble_slot(h, n, i);
    }
    acc
}
