use cslim_core::dunkl::*;
use cslim_core::partition::partitions_up_to;
use cslim_core::pdiffop::NSubst;
use cslim_core::ppoly::{PMono, PPoly};
use cslim_core::scalar::BetaScalar;

fn main() {
    for n in 2..=7usize {
        for k in 1..=2u32 {
            let op = hamiltonian_p_closed(k, NSubst::Int(n as i64), 7);
            let mut worst: Option<u32> = None;
            for lam in partitions_up_to(7) {
                let f = PPoly::monomial(PMono::from_parts(lam.parts()), BetaScalar::one());
                let a = op.apply(&f);
                let b = hamiltonian_p(k, n, &f).unwrap();
                if a != b {
                    let g = lam.weight();
                    worst = Some(worst.map_or(g, |w: u32| w.min(g)));
                }
            }
            match worst {
                Some(g) => println!("n={} k={}: first mismatch at grade {}", n, k, g),
                None => println!("n={} k={}: agree up to grade 7", n, k),
            }
        }
    }
}
