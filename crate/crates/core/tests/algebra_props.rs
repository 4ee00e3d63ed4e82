//! Property tests for the exact-algebra substrate: ring axioms, exact
//! division round trips, grading, and window soundness.

use cslim_core::ppoly::{PMono, PPoly};
use cslim_core::rat::rat_int;
use cslim_core::scalar::BetaScalar;
use cslim_core::symfun;
use cslim_core::xpoly::{XMono, XPoly};
use cslim_core::zseries::ZSeries;

use proptest::prelude::*;

const NVARS: usize = 3;

fn arb_xpoly() -> impl Strategy<Value = XPoly> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0..4i32, NVARS),
            -6..=6i64,
            0..=2u32,
        ),
        0..6,
    )
    .prop_map(|terms| {
        let mut p = XPoly::zero(NVARS);
        for (exps, num, bpow) in terms {
            p.add_term(XMono(exps), BetaScalar::monomial(rat_int(num), bpow, 0));
        }
        p
    })
}

fn arb_ppoly() -> impl Strategy<Value = PPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(0..5u32, 0..4), -6..=6i64, 0..=2u32),
        0..6,
    )
    .prop_map(|terms| {
        let mut p = PPoly::zero();
        for (parts, num, bpow) in terms {
            p.add_term(
                PMono::from_parts(&parts),
                BetaScalar::monomial(rat_int(num), bpow, 0),
            );
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn xpoly_ring_axioms(a in arb_xpoly(), b in arb_xpoly(), c in arb_xpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn ppoly_ring_axioms(a in arb_ppoly(), b in arb_ppoly(), c in arb_ppoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn division_round_trip(f in arb_xpoly(), g in arb_xpoly()) {
        prop_assume!(!g.is_zero());
        // divisor must have a rational leading coefficient for the exact
        // division; scrub the coupling out of it
        let g = g.eval_beta(&cslim_core::rat::rat_int(1));
        prop_assume!(!g.is_zero());
        let prod = &f * &g;
        let q = prod.divide_exact(&g).unwrap();
        prop_assert_eq!(q, f);
    }

    #[test]
    fn grade_components_resum(v in arb_ppoly()) {
        let mut acc = PPoly::zero();
        for (g, part) in v.grade_components() {
            for (m, _) in part.iter() {
                prop_assert_eq!(m.grade(), g);
            }
            acc = &acc + &part;
        }
        prop_assert_eq!(acc, v);
    }
}

#[test]
fn descending_series_matches_geometric_closed_form() {
    // the lowering series with coordinate coefficients equals the product
    // of geometric expansions of 1/(1 - x_i/z), coefficient by coefficient
    // inside the propagated window
    for n in 1..=3usize {
        let lo = -8i64;
        // product of per-variable geometric series x_i^m z^(-m)
        let mut prod = ZSeries::exact_zero(XPoly::zero(n));
        prod.set_coeff(0, XPoly::one(n));
        for i in 1..=n {
            let mut geo = ZSeries::new(XPoly::zero(n), lo, 0);
            let mut m = 0i64;
            while -m >= lo {
                let mut pow = XPoly::one(n);
                for _ in 0..m {
                    pow = &pow * &XPoly::var(n, i);
                }
                geo.set_coeff(-m, pow);
                m += 1;
            }
            prod = prod.mul(&geo);
        }
        let shifted = prod.shift(-(n as i64));
        // closed form: h_k at exponent -k-n
        let (plo, phi) = shifted.window();
        assert!(phi == -(n as i64));
        let mut k = 0i64;
        while -k - (n as i64) >= plo {
            let expect = symfun::homogeneous_in_x(k as usize, n);
            assert_eq!(
                shifted.coeff(-k - n as i64).unwrap(),
                expect,
                "n = {} k = {}",
                n,
                k
            );
            k += 1;
        }
    }
}

#[test]
fn newton_duality_sweep() {
    for m in 0..=10usize {
        let mut acc = PPoly::zero();
        for k in 0..=m {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let term = &symfun::elementary_in_p(k) * &symfun::homogeneous_in_p(m - k);
            acc = &acc + &term.scale_rat(&rat_int(sign));
        }
        if m == 0 {
            assert_eq!(acc, PPoly::one());
        } else {
            assert!(acc.is_zero(), "duality fails at m = {}", m);
        }
    }
}

#[test]
fn schur_alternant_division_is_exact() {
    use cslim_core::partition::partitions_up_to;
    for n in 1..=4usize {
        for lambda in partitions_up_to(6) {
            if lambda.len() > n {
                continue;
            }
            let s = symfun::schur_in_x(&lambda, n);
            assert!(s.is_symmetric(), "lambda = {} n = {}", lambda, n);
            assert_eq!(s.total_degree(), lambda.weight() as i64);
        }
    }
}

#[test]
fn alternant_antisymmetry_and_projection() {
    for f in [
        PPoly::gen(1),
        PPoly::gen(2),
        &PPoly::gen(1) * &PPoly::gen(2),
        symfun::homogeneous_in_p(4),
        symfun::elementary_in_p(3),
    ] {
        for n in 2..=4usize {
            let a = symfun::alpha_n(&f, n);
            assert!(a.is_antisymmetric());
        }
    }
    // projection compatibility on all monomials of grade at most six
    for lambda in cslim_core::partition::partitions_up_to(6) {
        let f = PPoly::monomial(PMono::from_parts(lambda.parts()), BetaScalar::one());
        for n in 2..=3usize {
            let lhs = symfun::lambda_project(&symfun::alpha_n(&f, n + 1)).unwrap();
            assert_eq!(lhs, symfun::alpha_n(&f, n), "lambda = {} n = {}", lambda, n);
        }
    }
}
