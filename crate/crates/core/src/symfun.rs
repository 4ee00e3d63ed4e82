//! Symmetric-function combinatorics: Newton-basis conversions, alternants,
//! Schur polynomials, and the passage between coordinate polynomials and
//! expressions in the power-sum generators.
//!
//! The Newton-basis expressions for the elementary and complete homogeneous
//! families do not depend on a variable count, so they are computed once and
//! memoized by index.

use std::sync::{Mutex, OnceLock};

use crate::error::{CoreError, Result};
use crate::partition::Partition;
use crate::ppoly::{PMono, PPoly};
use crate::rat::{rat, rat_int};
use crate::scalar::BetaScalar;
use crate::xpoly::{determinant, XMono, XPoly};

static E_CACHE: OnceLock<Mutex<Vec<PPoly>>> = OnceLock::new();
static H_CACHE: OnceLock<Mutex<Vec<PPoly>>> = OnceLock::new();

fn cache_get(
    cache: &'static OnceLock<Mutex<Vec<PPoly>>>,
    k: usize,
    extend: impl Fn(&[PPoly], usize) -> PPoly,
) -> PPoly {
    let m = cache.get_or_init(|| Mutex::new(vec![PPoly::one()]));
    let mut guard = m.lock().expect("basis cache poisoned");
    while guard.len() <= k {
        let next = extend(&guard, guard.len());
        guard.push(next);
    }
    guard[k].clone()
}

/// Elementary symmetric function `e_k` in the Newton basis: homogeneous of
/// grade `k`, with `k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i`.
pub fn elementary_in_p(k: usize) -> PPoly {
    cache_get(&E_CACHE, k, |prev, k| {
        let mut acc = PPoly::zero();
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let term = prev[k - i].mul_mono(&PMono::single(i as u32));
            acc = &acc + &term.scale_rat(&rat(sign, k as i64));
        }
        acc
    })
}

/// Complete homogeneous symmetric function `h_k` in the Newton basis:
/// `k h_k = sum_{i=1..k} h_{k-i} p_i`.
pub fn homogeneous_in_p(k: usize) -> PPoly {
    cache_get(&H_CACHE, k, |prev, k| {
        let mut acc = PPoly::zero();
        for i in 1..=k {
            let term = prev[k - i].mul_mono(&PMono::single(i as u32));
            acc = &acc + &term.scale_rat(&rat(1, k as i64));
        }
        acc
    })
}

/// `h_k` with negative indices reading as zero.
pub fn homogeneous_in_p_or_zero(k: i64) -> PPoly {
    if k < 0 {
        PPoly::zero()
    } else {
        homogeneous_in_p(k as usize)
    }
}

/// Substitute concrete power sums of `n` variables: `p0 -> n` and
/// `p_k -> x1^k + ... + xn^k`.
pub fn power_sums_substitute(f: &PPoly, n: usize) -> XPoly {
    let vars: Vec<usize> = (1..=n).collect();
    power_sums_substitute_subset(f, n, &vars)
}

/// Substitution over a subset of the variables of an `nvars`-variable
/// polynomial ring: `p0 -> |vars|`, `p_k -> sum_{i in vars} x_i^k`.
pub fn power_sums_substitute_subset(f: &PPoly, nvars: usize, vars: &[usize]) -> XPoly {
    let mut out = XPoly::zero(nvars);
    for (m, c) in f.iter() {
        let mut term = XPoly::constant(nvars, c.clone());
        for (idx, mult) in &m.0 {
            let factor = if *idx == 0 {
                XPoly::constant(nvars, BetaScalar::from_int(vars.len() as i64))
            } else {
                let mut s = XPoly::zero(nvars);
                for &v in vars {
                    let mut e = vec![0; nvars];
                    e[v - 1] = *idx as i32;
                    s.add_term(XMono(e), BetaScalar::one());
                }
                s
            };
            for _ in 0..*mult {
                term = &term * &factor;
            }
        }
        out = &out + &term;
    }
    out
}

/// The Vandermonde alternant `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(n: usize) -> XPoly {
    let vars: Vec<usize> = (1..=n).collect();
    vandermonde_subset(n, &vars)
}

/// Vandermonde over a subset of variables (ascending order of appearance).
pub fn vandermonde_subset(nvars: usize, vars: &[usize]) -> XPoly {
    let mut out = XPoly::one(nvars);
    for i in 0..vars.len() {
        for j in (i + 1)..vars.len() {
            let d = &XPoly::var(nvars, vars[i]) - &XPoly::var(nvars, vars[j]);
            out = &out * &d;
        }
    }
    out
}

/// Schur polynomial by the alternant formula: the determinant of
/// `x_i^{lambda_j + n - j}` divided exactly by the Vandermonde.
pub fn schur_in_x(lambda: &Partition, n: usize) -> XPoly {
    assert!(lambda.len() <= n, "partition longer than variable count");
    let mut mat = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            let pow = lambda.part_or_zero(j - 1) as i32 + (n - j) as i32;
            let mut e = vec![0; n];
            e[i - 1] = pow;
            row.push(XPoly::monomial(n, e, BetaScalar::one()));
        }
        mat.push(row);
    }
    let alt = determinant(&mat);
    alt.divide_exact(&vandermonde(n))
        .expect("alternant is always divisible by the Vandermonde")
}

/// Schur function in the Newton basis via the Jacobi-Trudi determinant
/// `det(h_{lambda_i - i + j})`.
pub fn schur_in_p(lambda: &Partition) -> PPoly {
    let n = lambda.len();
    if n == 0 {
        return PPoly::one();
    }
    // Leibniz expansion over permutations; partition lengths stay small.
    let mut out = PPoly::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(perm: &mut Vec<usize>, k: usize, lambda: &Partition, out: &mut PPoly) {
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
            let mut prod = PPoly::from_rat(rat_int(sign));
            for (i, &j) in perm.iter().enumerate() {
                let idx = lambda.part_or_zero(i) as i64 - i as i64 + j as i64;
                prod = &prod * &homogeneous_in_p_or_zero(idx);
                if prod.is_zero() {
                    break;
                }
            }
            *out = &*out + &prod;
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            rec(perm, k + 1, lambda, out);
            perm.swap(k, i);
        }
    }
    rec(&mut perm, 0, lambda, &mut out);
    out
}

/// The canonical isomorphism onto antisymmetric polynomials: multiply the
/// substituted symmetric polynomial by the Vandermonde.
pub fn alpha_n(f: &PPoly, n: usize) -> XPoly {
    assert!(
        !f.contains_p0(),
        "substitute p0 before applying the isomorphism"
    );
    &vandermonde(n) * &power_sums_substitute(f, n)
}

/// Inverse of the power-sum substitution on symmetric polynomials: rewrite
/// `g` in the elementary basis by leading-monomial elimination, then replace
/// each elementary factor by its Newton-basis expression.
///
/// The result is the unique preimage using generators `p1..pn` only.
pub fn symmetric_to_p(g: &XPoly, n: usize) -> Result<PPoly> {
    if !g.is_symmetric() {
        return Err(CoreError::NotSymmetric);
    }
    let mut rem = g.clone();
    let mut acc = PPoly::zero();
    while let Some((lambda, coeff)) = rem.leading().map(|(m, c)| (m.0.clone(), c.clone())) {
        debug_assert!(
            lambda.windows(2).all(|w| w[0] >= w[1]),
            "leading monomial of a symmetric polynomial is weakly decreasing"
        );
        // exponent differences give the elementary-basis multiplicities
        let mut ex = XPoly::constant(n, coeff.clone());
        let mut ep = PPoly::constant(coeff);
        for i in 0..n {
            let next = if i + 1 < n { lambda[i + 1] } else { 0 };
            let mult = (lambda[i] - next) as usize;
            for _ in 0..mult {
                ex = &ex * &elementary_in_x(i + 1, n);
                ep = &ep * &elementary_in_p(i + 1);
            }
        }
        rem = &rem - &ex;
        acc = &acc + &ep;
    }
    Ok(acc)
}

/// Direct monomial expansion of `e_k(x1..xn)`.
pub fn elementary_in_x(k: usize, n: usize) -> XPoly {
    let mut out = XPoly::zero(n);
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0; n];
        for &i in &idx {
            e[i] = 1;
        }
        out.add_term(XMono(e), BetaScalar::one());
        // next k-subset of {0..n-1}
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in (i + 1)..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Direct monomial expansion of `h_k(x1..xn)`.
pub fn homogeneous_in_x(k: usize, n: usize) -> XPoly {
    let mut out = XPoly::zero(n);
    // multisets of size k from n variables = compositions of k into n parts
    fn rec(out: &mut XPoly, e: &mut Vec<i32>, pos: usize, rem: usize, n: usize) {
        if pos == n - 1 {
            e[pos] = rem as i32;
            out.add_term(XMono(e.clone()), BetaScalar::one());
            e[pos] = 0;
            return;
        }
        for take in 0..=rem {
            e[pos] = take as i32;
            rec(out, e, pos + 1, rem - take, n);
            e[pos] = 0;
        }
    }
    if n == 0 {
        if k == 0 {
            return XPoly::one(0);
        }
        return out;
    }
    let mut e = vec![0; n];
    rec(&mut out, &mut e, 0, k, n);
    out
}

/// Projection dropping the last particle: set `x_{n+1} = 0`, then divide
/// exactly by `x1 * ... * xn`. On alternants this is the identity on the
/// generator coordinates.
pub fn lambda_project(g: &XPoly) -> Result<XPoly> {
    let n1 = g.nvars();
    assert!(n1 >= 2, "need at least two variables to project");
    let n = n1 - 1;
    let at_zero = g.set_var_zero(n1).drop_last_var();
    let mut prod = XPoly::one(n);
    for i in 1..=n {
        prod = &prod * &XPoly::var(n, i);
    }
    at_zero.divide_exact(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_basis_small_cases() {
        assert_eq!(elementary_in_p(0), PPoly::one());
        assert_eq!(elementary_in_p(1), PPoly::gen(1));
        // e2 = (p1^2 - p2)/2
        let e2 = &(&PPoly::gen(1) * &PPoly::gen(1)) - &PPoly::gen(2);
        assert_eq!(elementary_in_p(2), e2.scale_rat(&rat(1, 2)));
        // h2 = (p1^2 + p2)/2
        let h2 = &(&PPoly::gen(1) * &PPoly::gen(1)) + &PPoly::gen(2);
        assert_eq!(homogeneous_in_p(2), h2.scale_rat(&rat(1, 2)));
    }

    #[test]
    fn newton_duality() {
        // sum_{k=0..m} (-1)^k e_k h_{m-k} = 0 for m >= 1, exactly.
        for m in 1..=10usize {
            let mut acc = PPoly::zero();
            for k in 0..=m {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let term = &elementary_in_p(k) * &homogeneous_in_p(m - k);
                acc = &acc + &term.scale_rat(&rat_int(sign));
            }
            assert!(acc.is_zero(), "duality fails at m = {}", m);
        }
    }

    #[test]
    fn substitution_basics() {
        assert_eq!(
            power_sums_substitute(&PPoly::one(), 3),
            XPoly::one(3)
        );
        assert_eq!(
            power_sums_substitute(&PPoly::gen(1), 2),
            &XPoly::var(2, 1) + &XPoly::var(2, 2)
        );
        // p0 * p2 at n = 2 gives 2 (x1^2 + x2^2)
        let f = PPoly::gen(0).mul_mono(&PMono::single(2));
        let sq = |i| &XPoly::var(2, i) * &XPoly::var(2, i);
        let expect = (&sq(1) + &sq(2)).scale_rat(&rat_int(2));
        assert_eq!(power_sums_substitute(&f, 2), expect);
    }

    #[test]
    fn elementary_matches_direct_expansion() {
        for n in 1..=6usize {
            for k in 0..=6usize {
                let via_p = power_sums_substitute(&elementary_in_p(k), n);
                assert_eq!(via_p, elementary_in_x(k, n), "e_{} at n = {}", k, n);
            }
        }
    }

    #[test]
    fn vandermonde_shapes() {
        assert_eq!(vandermonde(1), XPoly::one(1));
        assert_eq!(vandermonde(2), &XPoly::var(2, 1) - &XPoly::var(2, 2));
        let v3 = vandermonde(3);
        assert_eq!(v3.num_terms(), 6);
        assert!(v3.is_antisymmetric());
        let (lead, _) = v3.leading().unwrap();
        assert_eq!(lead.0, vec![2, 1, 0]);
    }

    #[test]
    fn schur_small_cases() {
        assert_eq!(schur_in_x(&Partition::empty(), 2), XPoly::one(2));
        assert_eq!(
            schur_in_x(&Partition::new(vec![1]), 2),
            &XPoly::var(2, 1) + &XPoly::var(2, 2)
        );
        // single-row Schur equals the complete homogeneous polynomial
        assert_eq!(
            schur_in_x(&Partition::new(vec![2]), 3),
            homogeneous_in_x(2, 3)
        );
    }

    #[test]
    fn jacobi_trudi_matches_alternant() {
        for lambda in crate::partition::partitions_up_to(4) {
            if lambda.len() > 3 {
                continue;
            }
            let via_p = power_sums_substitute(&schur_in_p(&lambda), 3);
            assert_eq!(via_p, schur_in_x(&lambda, 3), "lambda = {}", lambda);
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_n(&PPoly::one(), 2), vandermonde(2));
        let a = alpha_n(&PPoly::gen(1), 2);
        let x = |i| XPoly::var(2, i);
        assert_eq!(a, &(&x(1) * &x(1)) - &(&x(2) * &x(2)));
        assert!(alpha_n(&PPoly::gen(2), 3).is_antisymmetric());
    }

    #[test]
    fn symmetric_to_p_inverts_substitution() {
        let g = &XPoly::var(2, 1) + &XPoly::var(2, 2);
        assert_eq!(symmetric_to_p(&g, 2).unwrap(), PPoly::gen(1));

        let e2x = &XPoly::var(2, 1) * &XPoly::var(2, 2);
        assert_eq!(symmetric_to_p(&e2x, 2).unwrap(), elementary_in_p(2));

        let f = &PPoly::gen(1) * &PPoly::gen(2);
        let round = symmetric_to_p(&power_sums_substitute(&f, 3), 3).unwrap();
        assert_eq!(round, f);

        let bad = XPoly::var(2, 1);
        assert_eq!(symmetric_to_p(&bad, 2), Err(CoreError::NotSymmetric));
    }

    #[test]
    fn projection_examples() {
        // the three-variable alternant projects to the two-variable one
        assert_eq!(lambda_project(&vandermonde(3)).unwrap(), vandermonde(2));
        // and commutes with the isomorphism on generator coordinates
        let f = PPoly::gen(2);
        assert_eq!(lambda_project(&alpha_n(&f, 3)).unwrap(), alpha_n(&f, 2));
    }

    #[test]
    fn projection_transport_through_grades() {
        for f in [
            PPoly::gen(1),
            &PPoly::gen(2) * &PPoly::gen(2),
            PPoly::gen(1).mul_mono(&PMono::from_parts(&[1, 1])),
            homogeneous_in_p(4),
        ] {
            assert_eq!(
                lambda_project(&alpha_n(&f, 3)).unwrap(),
                alpha_n(&f, 2),
                "f = {}",
                f
            );
        }
    }
}
