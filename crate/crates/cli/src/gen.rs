//! Seeded random inputs for the verification suites. Every draw goes
//! through one chacha stream per suite so the case list is a pure function
//! of (suite, seed, grid).

use cslim_core::ppoly::{PMono, PPoly};
use cslim_core::rat::rat_int;
use cslim_core::scalar::BetaScalar;
use cslim_core::slot::MixedPoly;
use cslim_core::symfun::{power_sums_substitute, vandermonde};
use cslim_core::xpoly::XPoly;
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64, suite: &str) -> Self {
        // fold the suite name into the stream so suites draw independently
        let mut s = seed;
        for b in suite.bytes() {
            s = s.wrapping_mul(0x100000001B3).wrapping_add(b as u64);
        }
        Gen {
            rng: ChaCha8Rng::seed_from_u64(s),
        }
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    pub fn coeff(&mut self) -> BetaScalar {
        let num: i64 = self.rng.gen_range(-4..=4);
        let num = if num == 0 { 1 } else { num };
        let bpow: u32 = self.rng.gen_range(0..=1);
        BetaScalar::monomial(rat_int(num), bpow, 0)
    }

    /// Generator polynomial of grade at most `max_grade` (no zero mode).
    pub fn ppoly(&mut self, max_grade: u32, terms: usize) -> PPoly {
        let mut p = PPoly::zero();
        for _ in 0..terms {
            let mut parts = Vec::new();
            let mut left = self.rng.gen_range(0..=max_grade);
            while left > 0 {
                let part = self.rng.gen_range(1..=left);
                parts.push(part);
                left -= part;
            }
            p.add_term(PMono::from_parts(&parts), self.coeff());
        }
        p
    }

    /// State in the extended ring: a generator polynomial with zero-mode
    /// powers mixed in.
    pub fn state(&mut self, max_grade: u32, max_p0: u32, terms: usize) -> PPoly {
        let mut p = PPoly::zero();
        for _ in 0..terms {
            let mut parts = Vec::new();
            let mut left = self.rng.gen_range(0..=max_grade);
            while left > 0 {
                let part = self.rng.gen_range(1..=left);
                parts.push(part);
                left -= part;
            }
            let p0 = self.rng.gen_range(0..=max_p0);
            p.add_term(
                PMono::from_parts(&parts).mul_gen(0, p0),
                self.coeff(),
            );
        }
        p
    }

    /// Antisymmetric coordinate polynomial: alternant times a substituted
    /// symmetric part.
    pub fn antisym(&mut self, n: usize, max_grade: u32) -> XPoly {
        let f = self.ppoly(max_grade, 2);
        let f = if f.is_zero() { PPoly::one() } else { f };
        &vandermonde(n) * &power_sums_substitute(&f, n)
    }

    /// Slot form over `pvars` generators.
    pub fn mixed(&mut self, pvars: u32, max_slot: i64, max_grade: u32) -> MixedPoly {
        let mut m = MixedPoly::zero(pvars);
        for s in 0..=max_slot {
            m.add_coeff(s, self.ppoly(max_grade, 2));
        }
        if m.is_zero() {
            m.add_coeff(0, PPoly::one());
        }
        m
    }
}
