//! Named verification suites. Each suite targets one identity of the model
//! and runs an exact check over a parameter grid; the default grids match
//! the acceptance criteria. Cases are generated deterministically from the
//! seed, evaluated in parallel, and reported in generation order.

use std::fmt::Display;

use cslim_core::dunkl::{
    antisymmetrize_by_slots, assemble_slot, count_poly, dunkl, dunkl_slot,
    hamiltonian_antisym, hamiltonian_p, hamiltonian_p_closed, hbar_k,
    slot_antisymmetrize, slot_embed, slot_form_is_polynomial,
};
use cslim_core::fock::{
    antisymmetrize_charged, charged_polynomial_lift, charged_to_slot,
    collapse_onto_second, dunkl_charged, hamiltonian_combined,
    hamiltonian_combined_displayed, hamiltonian_limit, hamiltonian_limit_closed,
    iota_limit, mul_w_minus_z, pi_n_closed, pi_n_minus1, psi_psi,
    psi_psi_normal_ordered, psi_psi_star, psi_psi_star_normal_ordered, Charged2,
    ChargedSeries,
};
use cslim_core::fermion::{
    a_apply, charge_shift, cutting_square_commutes, psi_apply_sum, psi_star_apply_sum,
    to_boson, Wedge, WedgeSum,
};
use cslim_core::partition::{partitions_up_to, partitions_up_to_bounded};
use cslim_core::pdiffop::NSubst;
use cslim_core::ppoly::{PMono, PPoly};
use cslim_core::rat::{rat, rat_int};
use cslim_core::scalar::{bpoly, BetaScalar};
use cslim_core::slot::MixedPoly;
use cslim_core::symfun::{
    homogeneous_in_x, lambda_project, power_sums_substitute, vandermonde,
};
use cslim_core::xpoly::XPoly;

use crate::gen::Gen;
use crate::report::{CaseResult, SuiteReport};

pub const CATALOG: &[&str] = &[
    "lemma1",
    "prop1",
    "prop2",
    "prop3",
    "eq5",
    "sec38-vs-eq23",
    "hbar-commute",
    "lemma2",
    "lemma3",
    "diagram35",
    "diagram37",
    "limit-commute",
    "restore-finite",
    "h-combination",
    "projective",
    "clifford",
    "boson-relations",
    "prop6",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub ns: Option<Vec<usize>>,
    pub grade: Option<u32>,
    pub kmax: Option<u32>,
    pub trials: Option<usize>,
    pub workers: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            ns: None,
            grade: None,
            kmax: None,
            trials: None,
            workers: 0,
        }
    }
}

type Check = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

fn eq_check<T: PartialEq + Display>(input: String, lhs: T, rhs: T) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("input: {}\nlhs:   {}\nrhs:   {}", input, lhs, rhs))
    }
}

fn run_cases(report: SuiteReport, cases: Vec<(String, Check)>, workers: usize) -> SuiteReport {
    let eval = |cases: Vec<(String, Check)>| -> Vec<CaseResult> {
        use rayon::prelude::*;
        cases
            .into_par_iter()
            .map(|(id, check)| CaseResult::from_check(id, check()))
            .collect()
    };
    let results = if workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("worker pool")
            .install(|| eval(cases))
    } else {
        eval(cases)
    };
    report.finish(results)
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<SuiteReport> {
    match name {
        "lemma1" => Some(lemma1(cfg)),
        "prop1" => Some(prop1(cfg)),
        "prop2" => Some(prop2(cfg)),
        "prop3" => Some(prop3(cfg)),
        "eq5" => Some(eq5(cfg)),
        "sec38-vs-eq23" => Some(sec38_vs_eq23(cfg)),
        "hbar-commute" => Some(hbar_commute(cfg)),
        "lemma2" => Some(lemma2(cfg)),
        "lemma3" => Some(lemma3(cfg)),
        "diagram35" => Some(diagram35(cfg)),
        "diagram37" => Some(diagram37(cfg)),
        "limit-commute" => Some(limit_commute(cfg)),
        "restore-finite" => Some(restore_finite_suite(cfg)),
        "h-combination" => Some(h_combination(cfg)),
        "projective" => Some(projective(cfg)),
        "clifford" => Some(clifford(cfg)),
        "boson-relations" => Some(boson_relations(cfg)),
        "prop6" => Some(prop6(cfg)),
        _ => None,
    }
}

fn ns_or(cfg: &SuiteConfig, default: &[usize]) -> Vec<usize> {
    cfg.ns.clone().unwrap_or_else(|| default.to_vec())
}

/// Alternating sums of slot powers against smaller alternants reduce to the
/// full alternant times a complete homogeneous polynomial, or vanish.
fn lemma1(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3, 4, 5]);
    let report = SuiteReport::new("lemma1", cfg.seed, format!("n in {:?}, k <= 2n", ns));
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        let kmax = cfg.kmax.unwrap_or(2 * n as u32);
        for k in 0..=kmax {
            cases.push((
                format!("n={} k={}", n, k),
                Box::new(move || {
                    let h = MixedPoly::slot_pow(k as i64, (n - 1) as u32);
                    let lhs = antisymmetrize_by_slots(&h, n);
                    let rhs = if k as usize + 1 >= n {
                        &vandermonde(n) * &homogeneous_in_x(k as usize + 1 - n, n)
                    } else {
                        XPoly::zero(n)
                    };
                    eq_check(format!("slot power {}", k), lhs, rhs)
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// The embedding through the raising pair expands the alternant over any
/// chosen slot.
fn prop1(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3, 4]);
    let grade = cfg.grade.unwrap_or(6);
    let trials = cfg.trials.unwrap_or(20);
    let report = SuiteReport::new(
        "prop1",
        cfg.seed,
        format!("n in {:?}, grade <= {}, {} trials", ns, grade, trials),
    );
    let mut g = Gen::new(cfg.seed, "prop1");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for t in 0..trials {
            let f = g.ppoly(grade, 3);
            cases.push((
                format!("n={} trial={}", n, t),
                Box::new(move || {
                    let target = cslim_core::symfun::alpha_n(&f, n);
                    let e = slot_embed(&f, n);
                    for i in 1..=n {
                        eq_check(
                            format!("f = {} slot {}", f, i),
                            assemble_slot(&e, n, i),
                            target.clone(),
                        )?;
                    }
                    Ok(())
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// Residue antisymmetrization equals the direct alternating sum.
fn prop2(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3, 4]);
    let trials = cfg.trials.unwrap_or(20);
    let grade = cfg.grade.unwrap_or(4);
    let report = SuiteReport::new(
        "prop2",
        cfg.seed,
        format!("n in {:?}, {} trials, grade <= {}", ns, trials, grade),
    );
    let mut g = Gen::new(cfg.seed, "prop2");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for t in 0..trials {
            let h = g.mixed((n - 1) as u32, 3, grade);
            cases.push((
                format!("n={} trial={}", n, t),
                Box::new(move || {
                    let via_residue = slot_antisymmetrize(&h, n)
                        .map_err(|e| format!("residue route failed: {}", e))?;
                    let lhs =
                        &vandermonde(n) * &power_sums_substitute(&via_residue, n);
                    let rhs = antisymmetrize_by_slots(&h, n);
                    eq_check(format!("h = {}", h), lhs, rhs)
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// The slot operator matches the coordinate Dunkl operator on every slot.
fn prop3(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3, 4]);
    let trials = cfg.trials.unwrap_or(20);
    let grade = cfg.grade.unwrap_or(3);
    let report = SuiteReport::new(
        "prop3",
        cfg.seed,
        format!("n in {:?}, {} trials, grade <= {}", ns, trials, grade),
    );
    let mut g = Gen::new(cfg.seed, "prop3");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for t in 0..trials {
            let h = g.mixed((n - 1) as u32, 2, grade);
            cases.push((
                format!("n={} trial={}", n, t),
                Box::new(move || {
                    let d = dunkl_slot(&h, n);
                    for i in 1..=n {
                        let lhs = assemble_slot(&d, n, i);
                        let rhs = dunkl(&assemble_slot(&h, n, i), i, n)
                            .map_err(|e| format!("coordinate route failed: {}", e))?;
                        eq_check(format!("h = {} slot {}", h, i), lhs, rhs)?;
                    }
                    Ok(())
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// The Hamiltonian is the stated combination of the first two integrals.
fn eq5(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3, 4]);
    let trials = cfg.trials.unwrap_or(10);
    let grade = cfg.grade.unwrap_or(3);
    let report = SuiteReport::new(
        "eq5",
        cfg.seed,
        format!("n in {:?}, {} trials, grade <= {}", ns, trials, grade),
    );
    let mut g = Gen::new(cfg.seed, "eq5");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for t in 0..trials {
            let gpoly = g.antisym(n, grade);
            cases.push((
                format!("n={} trial={}", n, t),
                Box::new(move || {
                    let h2 = hbar_k(&gpoly, 2, n).map_err(|e| e.to_string())?;
                    let h1 = hbar_k(&gpoly, 1, n).map_err(|e| e.to_string())?;
                    let b = BetaScalar::beta();
                    let b2 = &b * &b;
                    let n1 = (n - 1) as i64;
                    let rhs = &(&h2 - &h1.scale(&b.scale_int(2 * n1)))
                        + &gpoly.scale(&b2.scale_int(n as i64 * n1 * n1));
                    let lhs = hamiltonian_antisym(&gpoly, n).map_err(|e| e.to_string())?;
                    eq_check(format!("g = {}", gpoly), lhs, rhs)
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// The closed forms of the first two Hamiltonians against the embedding
/// pipeline: free normal forms agree up to grade n, evaluated operators
/// agree on the whole grid.
fn sec38_vs_eq23(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3, 4]);
    let grade = cfg.grade.unwrap_or(6);
    let kmax = cfg.kmax.unwrap_or(2).min(2);
    let report = SuiteReport::new(
        "sec38-vs-eq23",
        cfg.seed,
        format!(
            "n in {:?}, monomials of grade <= {}, k <= {} (free forms compared up to grade n)",
            ns, grade, kmax
        ),
    );
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for k in 0..=kmax {
            for lambda in partitions_up_to(grade) {
                let mono =
                    PPoly::monomial(PMono::from_parts(lambda.parts()), BetaScalar::one());
                cases.push((
                    format!("n={} k={} monomial={}", n, k, mono),
                    Box::new(move || {
                        let closed = hamiltonian_p_closed(k, NSubst::Int(n as i64), grade)
                            .apply(&mono);
                        let pipe =
                            hamiltonian_p(k, n, &mono).map_err(|e| e.to_string())?;
                        if mono.max_grade() as usize <= n {
                            eq_check(
                                format!("free forms, {}", mono),
                                closed.clone(),
                                pipe.clone(),
                            )?;
                        }
                        eq_check(
                            format!("evaluated with {} variables, {}", n, mono),
                            power_sums_substitute(&closed, n),
                            power_sums_substitute(&pipe, n),
                        )
                    }),
                ));
            }
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// The integrals commute on antisymmetric states.
fn hbar_commute(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3, 4]);
    let kmax = cfg.kmax.unwrap_or(3);
    let trials = cfg.trials.unwrap_or(3);
    let grade = cfg.grade.unwrap_or(2);
    let report = SuiteReport::new(
        "hbar-commute",
        cfg.seed,
        format!("n in {:?}, k < l <= {}, {} trials", ns, kmax, trials),
    );
    let mut g = Gen::new(cfg.seed, "hbar-commute");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for t in 0..trials {
            let gpoly = g.antisym(n, grade);
            for k in 0..kmax {
                for l in (k + 1)..=kmax {
                    let gp = gpoly.clone();
                    cases.push((
                        format!("n={} k={} l={} trial={}", n, k, l, t),
                        Box::new(move || {
                            let kl = hbar_k(&hbar_k(&gp, k, n).map_err(|e| e.to_string())?, l, n)
                                .map_err(|e| e.to_string())?;
                            let lk = hbar_k(&hbar_k(&gp, l, n).map_err(|e| e.to_string())?, k, n)
                                .map_err(|e| e.to_string())?;
                            eq_check(format!("g = {}", gp), kl, lk)
                        }),
                    ));
                }
            }
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// Inclusion square: evaluating the charged inclusion reproduces the
/// evaluation map, and inclusion images pass the subspace membership check.
fn lemma2(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3]);
    let trials = cfg.trials.unwrap_or(10);
    let grade = cfg.grade.unwrap_or(3);
    let report = SuiteReport::new(
        "lemma2",
        cfg.seed,
        format!("n in {:?}, {} trials, grade <= {}", ns, trials, grade),
    );
    let mut g = Gen::new(cfg.seed, "lemma2");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for t in 0..trials {
            let v = g.state(grade, 1, 3);
            cases.push((
                format!("n={} trial={}", n, t),
                Box::new(move || {
                    let f = iota_limit(&v, -(n as i64) - v.max_grade() as i64 - 2);
                    let slot = charged_to_slot(&f, n);
                    for i in 1..=n {
                        if !slot_form_is_polynomial(&slot, n, i) {
                            return Err(format!(
                                "inclusion image left the auxiliary subspace: v = {}",
                                v
                            ));
                        }
                        eq_check(
                            format!("v = {} slot {}", v, i),
                            pi_n_minus1(&f, n, i),
                            pi_n_closed(&v, n),
                        )?;
                    }
                    Ok(())
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// Antisymmetrization square: termwise on charged terms in the polynomial
/// domain, and through the regularized composition on inclusion images.
fn lemma3(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3]);
    let trials = cfg.trials.unwrap_or(10);
    let grade = cfg.grade.unwrap_or(3);
    let report = SuiteReport::new(
        "lemma3",
        cfg.seed,
        format!("n in {:?}, {} trials, grade <= {}", ns, trials, grade),
    );
    let mut g = Gen::new(cfg.seed, "lemma3");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for t in 0..trials {
            let v = g.state(grade, 1, 2);
            let k = g.below(4) as i64 + 1 - n as i64;
            cases.push((
                format!("n={} trial={} term", n, t),
                Box::new(move || {
                    let term = ChargedSeries::single(k, v.clone());
                    let lhs = pi_n_closed(&antisymmetrize_charged(&term), n);
                    let rhs = antisymmetrize_by_slots(&charged_to_slot(&term, n), n);
                    eq_check(format!("offset {} state {}", k, v), lhs, rhs)
                }),
            ));
            let v2 = g.state(grade, 0, 2);
            cases.push((
                format!("n={} trial={} inclusion", n, t),
                Box::new(move || {
                    let f = iota_limit(&v2, -(n as i64) - v2.max_grade() as i64 - 2);
                    let composed =
                        hamiltonian_limit(0, &v2).map_err(|e| e.to_string())?;
                    let lhs = pi_n_closed(&composed, n);
                    let rhs = antisymmetrize_by_slots(&charged_to_slot(&f, n), n);
                    eq_check(format!("v = {}", v2), lhs, rhs)
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// The limiting operator square against the coordinate Dunkl operator, on
/// canonical representatives of inclusion images.
fn diagram35(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3]);
    let trials = cfg.trials.unwrap_or(10);
    let grade = cfg.grade.unwrap_or(3);
    let report = SuiteReport::new(
        "diagram35",
        cfg.seed,
        format!("n in {:?}, {} trials, grade <= {}", ns, trials, grade),
    );
    let mut g = Gen::new(cfg.seed, "diagram35");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for t in 0..trials {
            let v = g.state(grade, 0, 2);
            cases.push((
                format!("n={} trial={}", n, t),
                Box::new(move || {
                    let f = iota_limit(&v, -(n as i64) - v.max_grade() as i64 - 2);
                    let lift = charged_polynomial_lift(&f, n);
                    let d = dunkl_charged(&lift, lift.window().0 - 2, n);
                    for i in 1..=n {
                        let lhs = pi_n_minus1(&d, n, i);
                        let rhs = dunkl(&pi_n_minus1(&f, n, i), i, n)
                            .map_err(|e| e.to_string())?;
                        eq_check(format!("v = {} slot {}", v, i), lhs, rhs)?;
                    }
                    Ok(())
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// Evaluation square for the Hamiltonians: closed forms at orders up to
/// two, the composed pipeline at order three.
fn diagram37(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3]);
    let grade = cfg.grade.unwrap_or(5);
    let kmax = cfg.kmax.unwrap_or(3);
    let trials = cfg.trials.unwrap_or(5);
    let report = SuiteReport::new(
        "diagram37",
        cfg.seed,
        format!(
            "n in {:?}, states of grade <= {}, k <= {} (closed forms to 2, pipeline at 3)",
            ns, grade, kmax
        ),
    );
    let mut g = Gen::new(cfg.seed, "diagram37");
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns.clone() {
        for t in 0..trials {
            let v = g.state(grade, 1, 2);
            for k in 0..=kmax.min(2) {
                let vv = v.clone();
                cases.push((
                    format!("n={} k={} trial={}", n, k, t),
                    Box::new(move || {
                        let act = hamiltonian_limit_closed(k, vv.max_grade()).apply(&vv);
                        let lhs = pi_n_closed(&act, n);
                        let rhs = hbar_k(&pi_n_closed(&vv, n), k, n)
                            .map_err(|e| e.to_string())?;
                        eq_check(format!("v = {}", vv), lhs, rhs)
                    }),
                ));
            }
        }
    }
    if kmax >= 3 {
        // order three has no printed closed form: use the composed action
        // on monomial states (linearity covers general states)
        let pipeline_grade = grade.min(5);
        for lambda in partitions_up_to_bounded(pipeline_grade, 3) {
            let mono = PPoly::monomial(PMono::from_parts(lambda.parts()), BetaScalar::one());
            let ns2 = ns.clone();
            cases.push((
                format!("k=3 monomial={}", mono),
                Box::new(move || {
                    let act = hamiltonian_limit(3, &mono).map_err(|e| e.to_string())?;
                    for n in ns2.clone() {
                        let lhs = pi_n_closed(&act, n);
                        let rhs = hbar_k(&pi_n_closed(&mono, n), 3, n)
                            .map_err(|e| e.to_string())?;
                        eq_check(format!("n = {} monomial = {}", n, mono), lhs, rhs)?;
                    }
                    Ok(())
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// The first two limiting Hamiltonians commute, with the coupling and the
/// zero mode fully symbolic.
fn limit_commute(cfg: &SuiteConfig) -> SuiteReport {
    let grade = cfg.grade.unwrap_or(6);
    let p0max = 2;
    let report = SuiteReport::new(
        "limit-commute",
        cfg.seed,
        format!("monomials of grade <= {}, zero-mode power <= {}", grade, p0max),
    );
    let h1 = hamiltonian_limit_closed(1, grade);
    let h2 = hamiltonian_limit_closed(2, grade);
    let mut cases: Vec<(String, Check)> = Vec::new();
    for lambda in partitions_up_to(grade) {
        for p0 in 0..=p0max {
            let m = PMono::from_parts(lambda.parts()).mul_gen(0, p0);
            let v = PPoly::monomial(m, BetaScalar::one());
            let (a, b) = (h1.clone(), h2.clone());
            cases.push((
                format!("monomial={}", v),
                Box::new(move || {
                    let ab = a.apply(&b.apply(&v));
                    let ba = b.apply(&a.apply(&v));
                    eq_check(format!("v = {}", v), ab, ba)
                }),
            ));
        }
    }
    run_cases(report, cases, cfg.workers)
}

/// Replacing the zero mode by the formal count restores the finite closed
/// forms, structurally.
fn restore_finite_suite(cfg: &SuiteConfig) -> SuiteReport {
    let grade = cfg.grade.unwrap_or(6);
    let report = SuiteReport::new(
        "restore-finite",
        cfg.seed,
        format!("operators instantiated to grade {}", grade),
    );
    let mut cases: Vec<(String, Check)> = Vec::new();
    for k in 0..=2u32 {
        cases.push((
            format!("k={}", k),
            Box::new(move || {
                let restored =
                    hamiltonian_limit_closed(k, grade).restore_finite(NSubst::Formal);
                let finite = hamiltonian_p_closed(k, NSubst::Formal, grade);
                eq_check(format!("order {}", k), restored, finite)
            }),
        ));
    }
    run_cases(report, cases, cfg.workers)
}

/// The combined Hamiltonian normal-orders to its displayed expansion.
fn h_combination(cfg: &SuiteConfig) -> SuiteReport {
    let grade = cfg.grade.unwrap_or(6);
    let report = SuiteReport::new(
        "h-combination",
        cfg.seed,
        format!("operators instantiated to grade {}", grade),
    );
    let mut cases: Vec<(String, Check)> = Vec::new();
    cases.push((
        "normal form".to_string(),
        Box::new(move || {
            eq_check(
                format!("grade {}", grade),
                hamiltonian_combined(grade),
                hamiltonian_combined_displayed(grade),
            )
        }),
    ));
    cases.push((
        "coupling off".to_string(),
        Box::new(move || {
            let zero = rat_int(0);
            let mut lhs = cslim_core::pdiffop::PDiffOp::zero();
            for (key, c) in hamiltonian_combined(grade).iter() {
                lhs.add_term(key.clone(), c.eval_beta(&zero));
            }
            let mut rhs = cslim_core::pdiffop::PDiffOp::zero();
            for (key, c) in hamiltonian_combined_displayed(grade).iter() {
                rhs.add_term(key.clone(), c.eval_beta(&zero));
            }
            eq_check("coupling evaluated to zero".to_string(), lhs, rhs)
        }),
    ));
    run_cases(report, cases, cfg.workers)
}

/// Which correction variant is compatible with dropping a particle: the
/// suite passes when exactly one variant is consistent, and names it.
fn projective(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3]);
    let trials = cfg.trials.unwrap_or(5);
    let grade = cfg.grade.unwrap_or(3);
    let report = SuiteReport::new(
        "projective",
        cfg.seed,
        format!("n in {:?}, {} trials, grade <= {}", ns, trials, grade),
    );
    let mut g = Gen::new(cfg.seed, "projective");

    // coordinate-space corrected operators
    fn pr1(gp: &XPoly, n: usize) -> Result<XPoly, String> {
        let h1 = hbar_k(gp, 1, n).map_err(|e| e.to_string())?;
        let c = &bpoly(&[1, 2])
            * &count_poly(
                NSubst::Int(n as i64),
                &[rat_int(0), rat(-1, 2), rat(1, 2)],
            );
        Ok(&h1 - &gp.scale(&c))
    }
    fn pr2(gp: &XPoly, n: usize, as_printed: bool) -> Result<XPoly, String> {
        let h2 = hbar_k(gp, 2, n).map_err(|e| e.to_string())?;
        let p1 = pr1(gp, n)?;
        let nn = NSubst::Int(n as i64);
        let mult = if as_printed {
            &BetaScalar::beta().scale_int(3) * &count_poly(nn, &[rat_int(0), rat_int(1)])
        } else {
            &bpoly(&[2, 3]) * &count_poly(nn, &[rat_int(0), rat_int(1)])
        };
        let c0 = count_poly(nn, &[rat_int(0), rat(1, 6), rat(-3, 6), rat(2, 6)]);
        let c1 = &BetaScalar::beta()
            * &count_poly(nn, &[rat_int(0), rat(5, 6), rat(-12, 6), rat(7, 6)]);
        let b2 = &BetaScalar::beta() * &BetaScalar::beta();
        let c2 = &b2 * &count_poly(nn, &[rat_int(0), rat_int(1), rat_int(-2), rat_int(1)]);
        let consts = &(&c0 + &c1) + &c2;
        Ok(&(&h2 - &p1.scale(&mult)) - &gp.scale(&consts))
    }

    let mut cases: Vec<(String, Check)> = Vec::new();
    let mut printed_failures_expected = 0usize;
    for n in ns {
        for t in 0..trials {
            let f = g.ppoly(grade, 2);
            let f = if f.is_zero() { PPoly::gen(1) } else { f };
            // first correction: compatible by the degree argument
            let f1 = f.clone();
            cases.push((
                format!("k=1 n={} trial={}", n, t),
                Box::new(move || {
                    let big = cslim_core::symfun::alpha_n(&f1, n + 1);
                    let lhs = lambda_project(&pr1(&big, n + 1)?).map_err(|e| e.to_string())?;
                    let rhs = pr1(&cslim_core::symfun::alpha_n(&f1, n), n)?;
                    eq_check(format!("f = {}", f1), lhs, rhs)
                }),
            ));
            // second correction, subtraction rule: expected compatible
            let f2 = f.clone();
            cases.push((
                format!("k=2 zero-mode-subtraction n={} trial={}", n, t),
                Box::new(move || {
                    let big = cslim_core::symfun::alpha_n(&f2, n + 1);
                    let lhs =
                        lambda_project(&pr2(&big, n + 1, false)?).map_err(|e| e.to_string())?;
                    let rhs = pr2(&cslim_core::symfun::alpha_n(&f2, n), n, false)?;
                    eq_check(format!("f = {}", f2), lhs, rhs)
                }),
            ));
            // second correction, printed variant: expected incompatible;
            // the case passes when the mismatch is observed
            let f3 = f.clone();
            printed_failures_expected += 1;
            cases.push((
                format!("k=2 as-printed n={} trial={} (expect mismatch)", n, t),
                Box::new(move || {
                    let big = cslim_core::symfun::alpha_n(&f3, n + 1);
                    let lhs =
                        lambda_project(&pr2(&big, n + 1, true)?).map_err(|e| e.to_string())?;
                    let rhs = pr2(&cslim_core::symfun::alpha_n(&f3, n), n, true)?;
                    if lhs == rhs {
                        Err(format!(
                            "printed variant unexpectedly compatible on f = {}",
                            f3
                        ))
                    } else {
                        Ok(())
                    }
                }),
            ));
        }
    }
    let mut report = run_cases(report, cases, cfg.workers);
    if report.all_passed() {
        report.note = Some(format!(
            "exactly one variant is compatible with dropping a particle: the \
             zero-mode-subtraction rule (coefficient (3b+2)N); the printed \
             -3bN variant failed compatibility in all {} probes, the two \
             differ by 2N times the degree operator",
            printed_failures_expected
        ));
    }
    report
}

/// Clifford relations, vacuum patterns, and charge-shift conjugation on the
/// wedge basis.
fn clifford(cfg: &SuiteConfig) -> SuiteReport {
    let weight = cfg.grade.unwrap_or(5);
    let report = SuiteReport::new(
        "clifford",
        cfg.seed,
        format!("weights <= {}, charges |c| <= 2, indices |i|,|j| <= 6", weight),
    );
    let mut cases: Vec<(String, Check)> = Vec::new();
    cases.push((
        "vacuum annihilation".into(),
        Box::new(|| {
            let vac = Wedge::vacuum(0);
            for k in 0..5i64 {
                if cslim_core::fermion::psi_wedge(&vac, k).is_some() {
                    return Err(format!("psi_{} does not kill the vacuum", k));
                }
            }
            for k in -5..0i64 {
                if cslim_core::fermion::psi_star_wedge(&vac, k).is_some() {
                    return Err(format!("psi*_{} does not kill the vacuum", k));
                }
            }
            Ok(())
        }),
    ));
    for lambda in partitions_up_to(weight) {
        for c in -2..=2i64 {
            let w = Wedge::new(lambda.clone(), c);
            cases.push((
                format!("anticommutators on {}", w),
                Box::new(move || {
                    let v = WedgeSum::basis(w.clone());
                    for i in -6..=6i64 {
                        for j in -6..=6i64 {
                            let ac = psi_apply_sum(&psi_star_apply_sum(&v, j), i)
                                .add(&psi_star_apply_sum(&psi_apply_sum(&v, i), j));
                            let expect = if i == j { v.clone() } else { WedgeSum::zero() };
                            if ac != expect {
                                return Err(format!(
                                    "mixed anticommutator at i={} j={} on {}",
                                    i, j, w
                                ));
                            }
                        }
                    }
                    for i in -4..=4i64 {
                        for j in -4..=4i64 {
                            let aa = psi_apply_sum(&psi_apply_sum(&v, j), i)
                                .add(&psi_apply_sum(&psi_apply_sum(&v, i), j));
                            if !aa.is_zero() {
                                return Err(format!(
                                    "annihilator anticommutator at i={} j={} on {}",
                                    i, j, w
                                ));
                            }
                        }
                    }
                    Ok(())
                }),
            ));
        }
    }
    for lambda in partitions_up_to(weight.min(4)) {
        let w = Wedge::new(lambda.clone(), 0);
        cases.push((
            format!("charge-shift conjugation on {}", w),
            Box::new(move || {
                let v = WedgeSum::basis(w.clone());
                for nn in -3..=3i64 {
                    let lhs = charge_shift(&psi_apply_sum(&charge_shift(&v, -1), nn), 1);
                    let rhs = psi_apply_sum(&v, nn + 1);
                    if lhs != rhs {
                        return Err(format!("conjugation at n = {} on {}", nn, w));
                    }
                }
                Ok(())
            }),
        ));
    }
    run_cases(report, cases, cfg.workers)
}

/// Bosonic commutators of the fermion bilinears, the dictionary action, and
/// the vertex-operator product identities.
fn boson_relations(cfg: &SuiteConfig) -> SuiteReport {
    let weight = cfg.grade.unwrap_or(4);
    let report = SuiteReport::new(
        "boson-relations",
        cfg.seed,
        format!(
            "weights <= {}, mode indices |k| <= 4; product identities on states of grade <= 3",
            weight
        ),
    );
    let mut cases: Vec<(String, Check)> = Vec::new();
    for lambda in partitions_up_to(weight) {
        let w = Wedge::new(lambda.clone(), 0);
        cases.push((
            format!("mode commutators on {}", w),
            Box::new(move || {
                let v = WedgeSum::basis(w.clone());
                for k in -4..=4i64 {
                    for m in -4..=4i64 {
                        let comm =
                            a_apply(&a_apply(&v, m), k).sub(&a_apply(&a_apply(&v, k), m));
                        let expect = if k + m == 0 {
                            v.scale(&BetaScalar::from_int(k))
                        } else {
                            WedgeSum::zero()
                        };
                        if comm != expect {
                            return Err(format!("[a_{}, a_{}] on {}", k, m, w));
                        }
                    }
                }
                Ok(())
            }),
        ));
        let w2 = Wedge::new(lambda.clone(), 0);
        cases.push((
            format!("dictionary on {}", w2),
            Box::new(move || {
                for nn in 1..=4i64 {
                    let moved = a_apply(&WedgeSum::basis(w2.clone()), -nn);
                    let mut boson = PPoly::zero();
                    for (wb, cb) in moved.iter() {
                        let (ch, f) = to_boson(wb);
                        if ch != 0 {
                            return Err("lowering mode changed the charge".into());
                        }
                        boson = &boson + &f.scale(cb);
                    }
                    let direct = &PPoly::gen(nn as u32) * &to_boson(&w2).1;
                    if boson != direct {
                        return Err(format!("a_(-{}) vs multiplication on {}", nn, w2));
                    }
                }
                Ok(())
            }),
        ));
    }
    // vertex-operator product identities on small states
    for v in [PPoly::one(), PPoly::gen(1), PPoly::gen(2), PPoly::gen(3)] {
        let v1 = v.clone();
        cases.push((
            format!("raising product factor on {}", v1),
            Box::new(move || {
                let lo = (-5i64, -5i64);
                let lhs = psi_psi(&v1, lo.0, lo.1);
                let rhs = mul_w_minus_z(&psi_psi_normal_ordered(&v1, lo.0 - 1, lo.1 - 1));
                let hi = (v1.max_grade() as i64 + 1, v1.max_grade() as i64 + 2);
                let l = (lo.0 + 1, lo.1 + 1);
                if lhs.restrict(l, hi) != rhs.restrict(l, hi) {
                    return Err(format!("product factor mismatch on {}", v1));
                }
                Ok(())
            }),
        ));
        let v2 = v.clone();
        cases.push((
            format!("contraction and unit residue on {}", v2),
            Box::new(move || {
                let g = v2.max_grade() as i64;
                let r = -2 - g;
                let lhs = psi_psi_star(&v2, r, r);
                let no = psi_psi_star_normal_ordered(&v2, r, 2 * r - g);
                let mut rhs = Charged2::new((r, r));
                for ((kz, kw), c) in no.iter() {
                    for m in 0..=((g + 1 - kw).max(0)) {
                        rhs.add_slot((kz - 1 - m, kw + m), c.clone());
                    }
                }
                let l = (r, r);
                let hi = (g + 1, g + 1);
                if lhs.restrict(l, hi) != rhs.restrict(l, hi) {
                    return Err(format!("contraction kernel mismatch on {}", v2));
                }
                let collapsed = collapse_onto_second(&no, r + g + 1);
                for (c, val) in &collapsed {
                    let expect = if *c == 0 { v2.clone() } else { PPoly::zero() };
                    if *val != expect {
                        return Err(format!(
                            "unit residue left {} at offset {} on {}",
                            val, c, v2
                        ));
                    }
                }
                if collapsed.get(&0) != Some(&v2) {
                    return Err(format!("unit residue missed the state {}", v2));
                }
                Ok(())
            }),
        ));
    }
    run_cases(report, cases, cfg.workers)
}

/// The cutting square: cut-then-identify equals dictionary-then-evaluate,
/// including charge-mismatch zeros.
fn prop6(cfg: &SuiteConfig) -> SuiteReport {
    let ns = ns_or(cfg, &[2, 3, 4]);
    let weight = cfg.grade.unwrap_or(6);
    let report = SuiteReport::new(
        "prop6",
        cfg.seed,
        format!("weights <= {}, charges = n in {:?}, plus mismatches", weight, ns),
    );
    let mut cases: Vec<(String, Check)> = Vec::new();
    for n in ns {
        for lambda in partitions_up_to_bounded(weight, n) {
            let l = lambda.clone();
            cases.push((
                format!("n={} lambda={}", n, l),
                Box::new(move || {
                    match cutting_square_commutes(&l, n as i64, n) {
                        Ok(true) => Ok(()),
                        Ok(false) => Err(format!(
                            "square does not commute at lambda = {}, n = {}",
                            l, n
                        )),
                        Err(e) => Err(e.to_string()),
                    }
                }),
            ));
        }
        // charge mismatch maps to zero on both routes
        cases.push((
            format!("n={} charge mismatch", n),
            Box::new(move || {
                for c in [n as i64 - 1, n as i64 + 1, n as i64 + 2] {
                    match cutting_square_commutes(
                        &cslim_core::Partition::new(vec![1]),
                        c,
                        n,
                    ) {
                        Ok(true) => {}
                        Ok(false) => {
                            return Err(format!("mismatch case failed at c = {}", c))
                        }
                        Err(e) => return Err(e.to_string()),
                    }
                }
                Ok(())
            }),
        ));
    }
    run_cases(report, cases, cfg.workers)
}
