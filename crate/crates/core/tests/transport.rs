//! Cross-module transport checks with deterministic pseudo-random inputs:
//! the coordinate model and the slot/charged reformulations must agree
//! under the evaluation maps, exactly.

use cslim_core::dunkl::{
    antisymmetrize_by_slots, assemble_slot, dunkl, dunkl_slot, hamiltonian_antisym,
    hamiltonian_p, hbar_k, slot_antisymmetrize, slot_embed,
};
use cslim_core::fock::{
    antisymmetrize_charged, charged_polynomial_lift, charged_to_slot, dunkl_charged,
    hamiltonian_limit, hamiltonian_limit_closed, iota_limit, pi_n_closed, pi_n_minus1,
    ChargedSeries,
};
use cslim_core::ppoly::{PMono, PPoly};
use cslim_core::rat::{rat, rat_int};
use cslim_core::scalar::BetaScalar;
use cslim_core::slot::MixedPoly;
use cslim_core::symfun::{alpha_n, power_sums_substitute, vandermonde};
use cslim_core::xpoly::XPoly;

/// Minimal deterministic generator for reproducible test inputs.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn coeff(&mut self) -> BetaScalar {
        let num = self.below(9) as i64 - 4;
        let bpow = self.below(2) as u32;
        BetaScalar::monomial(rat_int(if num == 0 { 1 } else { num }), bpow, 0)
    }

    fn ppoly(&mut self, max_grade: u32, terms: usize) -> PPoly {
        let mut p = PPoly::zero();
        for _ in 0..terms {
            let mut parts = Vec::new();
            let mut left = self.below(max_grade as u64 + 1) as u32;
            while left > 0 {
                let part = self.below(left as u64) as u32 + 1;
                parts.push(part);
                left -= part;
            }
            p.add_term(PMono::from_parts(&parts), self.coeff());
        }
        p
    }

    fn mixed(&mut self, pvars: u32, max_slot: i64, max_grade: u32) -> MixedPoly {
        let mut m = MixedPoly::zero(pvars);
        for s in 0..=max_slot {
            m.add_coeff(s, self.ppoly(max_grade, 2));
        }
        m
    }
}

#[test]
fn alternating_sum_reduction_identity() {
    // the alternating sum of slot powers against smaller alternants reduces
    // to the full alternant times a complete homogeneous polynomial
    for n in 2..=5usize {
        for k in 0..=(2 * n) {
            let h = MixedPoly::slot_pow(k as i64, (n - 1) as u32);
            let lhs = antisymmetrize_by_slots(&h, n);
            let expect = if k + 1 >= n {
                &vandermonde(n)
                    * &cslim_core::symfun::homogeneous_in_x(k + 1 - n, n)
            } else {
                XPoly::zero(n)
            };
            assert_eq!(lhs, expect, "n = {} k = {}", n, k);
        }
    }
}

#[test]
fn embedding_matches_alternant_expansion() {
    let mut rng = Rng(0x5EED_0001);
    for n in 2..=4usize {
        for _ in 0..6 {
            let f = rng.ppoly(5, 2);
            let e = slot_embed(&f, n);
            let target = alpha_n(&f, n);
            for i in 1..=n {
                assert_eq!(assemble_slot(&e, n, i), target, "n = {} i = {}", n, i);
            }
        }
    }
}

#[test]
fn residue_antisymmetrization_matches_alternating_sum() {
    let mut rng = Rng(0x5EED_0002);
    for n in 2..=4usize {
        for _ in 0..6 {
            let h = rng.mixed((n - 1) as u32, 3, 3);
            let via_residue = slot_antisymmetrize(&h, n).unwrap();
            let direct = antisymmetrize_by_slots(&h, n);
            assert_eq!(
                &vandermonde(n) * &power_sums_substitute(&via_residue, n),
                direct,
                "n = {}",
                n
            );
        }
    }
}

#[test]
fn slot_dunkl_matches_coordinate_dunkl() {
    let mut rng = Rng(0x5EED_0003);
    for n in 2..=4usize {
        for _ in 0..5 {
            let h = rng.mixed((n - 1) as u32, 2, 3);
            let d = dunkl_slot(&h, n);
            for i in 1..=n {
                let lhs = assemble_slot(&d, n, i);
                let rhs = dunkl(&assemble_slot(&h, n, i), i, n).unwrap();
                assert_eq!(lhs, rhs, "n = {} i = {}", n, i);
            }
        }
    }
}

#[test]
fn integral_combination_identity() {
    let mut rng = Rng(0x5EED_0004);
    for n in 2..=4usize {
        for _ in 0..4 {
            let g = &vandermonde(n) * &power_sums_substitute(&rng.ppoly(3, 2), n);
            let h2 = hbar_k(&g, 2, n).unwrap();
            let h1 = hbar_k(&g, 1, n).unwrap();
            let b = BetaScalar::beta();
            let b2 = &b * &b;
            let n1 = (n - 1) as i64;
            let rhs = &(&h2 - &h1.scale(&b.scale_int(2 * n1)))
                + &g.scale(&b2.scale_int(n as i64 * n1 * n1));
            assert_eq!(hamiltonian_antisym(&g, n).unwrap(), rhs, "n = {}", n);
        }
    }
}

#[test]
fn integrals_commute_on_antisymmetric_states() {
    let mut rng = Rng(0x5EED_0005);
    for n in 2..=3usize {
        for _ in 0..2 {
            let g = &vandermonde(n) * &power_sums_substitute(&rng.ppoly(2, 2), n);
            for k in 0..=2u32 {
                for l in (k + 1)..=3u32 {
                    let kl = hbar_k(&hbar_k(&g, k, n).unwrap(), l, n).unwrap();
                    let lk = hbar_k(&hbar_k(&g, l, n).unwrap(), k, n).unwrap();
                    assert_eq!(kl, lk, "n = {} k = {} l = {}", n, k, l);
                }
            }
        }
    }
}

#[test]
fn charged_diagrams_on_random_states() {
    let mut rng = Rng(0x5EED_0006);
    for n in 2..=3usize {
        for _ in 0..4 {
            let v = rng.ppoly(3, 2);
            let lo = -(n as i64) - v.max_grade() as i64 - 2;
            let f = iota_limit(&v, lo);
            // inclusion square
            for i in 1..=n {
                assert_eq!(pi_n_minus1(&f, n, i), pi_n_closed(&v, n), "n = {}", n);
            }
            // antisymmetrization square on single charged terms
            let k = rng.below(4) as i64 + 1 - n as i64;
            let w = rng.ppoly(3, 2);
            let term = ChargedSeries::single(k, w);
            let lhs = pi_n_closed(&antisymmetrize_charged(&term), n);
            let rhs = antisymmetrize_by_slots(&charged_to_slot(&term, n), n);
            assert_eq!(lhs, rhs, "n = {} k = {}", n, k);
            // the operator square through the canonical lift
            let lift = charged_polynomial_lift(&f, n);
            let d = dunkl_charged(&lift, lift.window().0 - 2, n);
            for i in 1..=n {
                let lhs = pi_n_minus1(&d, n, i);
                let rhs = dunkl(&pi_n_minus1(&f, n, i), i, n).unwrap();
                assert_eq!(lhs, rhs, "n = {} i = {}", n, i);
            }
        }
    }
}

#[test]
fn limit_action_transports_to_coordinates() {
    let mut rng = Rng(0x5EED_0007);
    for n in 2..=3usize {
        for _ in 0..2 {
            let mut v = rng.ppoly(3, 2);
            // sprinkle a zero-mode factor
            v = &v + &rng.ppoly(2, 1).mul_mono(&PMono::single(0));
            for k in 0..=2u32 {
                let op = hamiltonian_limit_closed(k, v.max_grade());
                let lhs = pi_n_closed(&op.apply(&v), n);
                let vx = pi_n_closed(&v, n);
                let rhs = hbar_k(&vx, k, n).unwrap();
                assert_eq!(lhs, rhs, "k = {} n = {}", k, n);
            }
        }
    }
}

#[test]
fn composed_action_matches_closed_forms() {
    let mut rng = Rng(0x5EED_0008);
    for _ in 0..3 {
        let v = rng.ppoly(3, 2);
        for k in 0..=2u32 {
            let composed = hamiltonian_limit(k, &v).unwrap();
            let closed = hamiltonian_limit_closed(k, v.max_grade()).apply(&v);
            assert_eq!(composed, closed, "k = {} v = {}", k, v);
        }
    }
}

#[test]
fn third_integral_transport() {
    // the composed action has no printed closed form at order three; check
    // it against the coordinate model
    let v = PPoly::gen(1);
    let h3 = hamiltonian_limit(3, &v).unwrap();
    for n in 2..=3usize {
        let lhs = pi_n_closed(&h3, n);
        let rhs = hbar_k(&pi_n_closed(&v, n), 3, n).unwrap();
        assert_eq!(lhs, rhs, "n = {}", n);
    }
}

#[test]
fn finite_pipeline_against_coordinates_with_scaled_inputs() {
    // scaled and mixed inputs to the pipeline, transported
    let f = &PPoly::gen(2).scale_rat(&rat(3, 2)) - &(&PPoly::gen(1) * &PPoly::gen(1));
    for n in 2..=3usize {
        for k in 0..=2u32 {
            let lhs = alpha_n(&hamiltonian_p(k, n, &f).unwrap(), n);
            let rhs = hbar_k(&alpha_n(&f, n), k, n).unwrap();
            assert_eq!(lhs, rhs, "k = {} n = {}", k, n);
        }
    }
}
