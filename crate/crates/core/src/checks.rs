//! Verification suites. Each returns named [`Check`]s; exact identities report
//! the number of mismatches as the residual, numeric ones the deviation.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::Zero;

use crate::spectrum::{
    blocks_of_label, case_v_mixed_eigenvalue, decompose, eigenvalue_formula, norm_ratio_operator_norms,
    norm_route_eigenvalue, operator_norm_squares, spectrum_slice, Eigenvalue,
};
use crate::torsion::{
    cancellation_check, kappa_closed, kappa_closed_derivative, kappa_reduced, KernelConvention, ReducedMode,
};
use crate::weights::{gt_pattern_count, label_to_weight, labels_up_to, special_dimension, weyl_dimension, LabelCase};
use crate::zeta::{c_coefficients, sigma, vanishing_correction_check, DimensionPolynomial, ZetaEngine};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
}

impl Check {
    fn exact(name: impl Into<String>, mismatches: u64) -> Self {
        Self {
            name: name.into(),
            passed: mismatches == 0,
            residual: mismatches as f64,
        }
    }

    fn within(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: residual <= tolerance,
            residual,
        }
    }
}

fn lift(r: Ratio<i128>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Closed-form `μ` against `(‖∂_b‖² + ‖∂̄_b‖²)²` on Case II/V labels and the
/// middle-degree computation on Case V labels.
pub fn eigenvalue_routes(n: u32, max: u32) -> Vec<Check> {
    let (mut norm_bad, mut mixed_bad, mut identity_bad, mut ratio_bad, mut lift_bad) = (0, 0, 0, 0, 0);
    for l in labels_up_to(n, max) {
        let mu = eigenvalue_formula(&l);
        match l.case() {
            LabelCase::II | LabelCase::V => {
                if norm_route_eigenvalue(&l).ok() != Some(mu) {
                    norm_bad += 1;
                }
                let ops = operator_norm_squares(&l).expect("Case II/V");
                let (a, b) = norm_ratio_operator_norms(&l);
                if a.is_some_and(|a| a != lift(ops.holomorphic)) || b.is_some_and(|b| b != lift(ops.antiholomorphic)) {
                    ratio_bad += 1;
                }
                if l.case() == LabelCase::V {
                    let route = case_v_mixed_eigenvalue(&l).expect("Case V");
                    if route.eigenvalue != mu {
                        mixed_bad += 1;
                    }
                    if route.identity_value != lift(mu.ratio()) {
                        identity_bad += 1;
                    }
                }
            }
            LabelCase::III | LabelCase::IV => {
                // ‖∂_b‖² = (p+i)/2 on III and ‖∂̄_b‖² = (q+j)/2 on IV; μ is its square.
                let (a, b) = norm_ratio_operator_norms(&l);
                let side = if l.case() == LabelCase::III { a } else { b };
                if side.map(|x| &x * &x) != Some(lift(mu.ratio())) {
                    lift_bad += 1;
                }
            }
            _ => {}
        }
    }
    alloc::vec![
        Check::exact("eigenvalue_formula == norm_route_eigenvalue", norm_bad),
        Check::exact("eigenvalue_formula == case_v_mixed_eigenvalue", mixed_bad),
        Check::exact("case V expanded identity == eigenvalue", identity_bad),
        Check::exact("norm ratios == operator norms", ratio_bad),
        Check::exact("boundary norm ratios squared == eigenvalue", lift_bad),
    ]
}

/// Weyl against Gelfand–Tsetlin on labels with `p, q ≤ gt_max`, and the
/// special-weight closed form and polynomial against Weyl for `p ≤ max`.
pub fn dimension_oracles(n: u32, gt_max: u32, max: u32) -> Vec<Check> {
    let mut gt_bad = 0;
    for l in labels_up_to(n, gt_max) {
        let w = label_to_weight(&l);
        let gt = gt_pattern_count(&w).map(BigUint::from);
        if gt.as_ref() != Ok(&weyl_dimension(&w)) {
            gt_bad += 1;
        }
    }
    let (mut special_bad, mut poly_bad) = (0, 0);
    for i in 0..=n {
        let poly = DimensionPolynomial::new(n, i);
        for p in 1..=i64::from(max) {
            let special = special_dimension(n, i, p).expect("valid special weight");
            let mut entries = alloc::vec![0i64; (n - i) as usize];
            entries.extend(core::iter::repeat(-1).take(i as usize));
            entries.push(-p);
            let w = crate::weights::HighestWeight::new(entries).expect("dominant");
            if special != weyl_dimension(&w) {
                special_bad += 1;
            }
            if poly.eval(p) != BigRational::from_integer(BigInt::from(special)) {
                poly_bad += 1;
            }
        }
    }
    alloc::vec![
        Check::exact("weyl_dimension == gt_pattern_count", gt_bad),
        Check::exact("special_dimension == weyl_dimension", special_bad),
        Check::exact("dimension polynomial == special_dimension", poly_bad),
    ]
}

/// `c_1 = (n+1)!`, `c_l = 0` otherwise, `σ(k) = (n+1)! k` for `k ≤ max_k`,
/// and the vanishing correction for every `i ≤ n`.
pub fn coefficient_identities(n: u32, max_k: u64) -> Vec<Check> {
    let fact: BigInt = (2..=n + 1).map(BigInt::from).product();
    let c = c_coefficients(n);
    let c_bad = c
        .iter()
        .enumerate()
        .filter(|(idx, v)| if *idx == 0 { **v != fact } else { !v.is_zero() })
        .count() as u64;
    let sigma_bad = (0..=max_k).filter(|&k| sigma(n, k) != &fact * k).count() as u64;
    let vanish_bad = (0..=n)
        .filter(|&i| !vanishing_correction_check(n, i, &[-1.5, 0.75, 2.5]))
        .count() as u64;
    alloc::vec![
        Check::exact("c_1 == (n+1)! and c_l == 0 for l > 1", c_bad),
        Check::exact("sigma(k) == (n+1)! k", sigma_bad),
        Check::exact("vanishing correction", vanish_bad),
    ]
}

/// Blocks listed per bidegree reproduce the blocks listed per label.
pub fn decomposition_consistency(n: u32, max: u32) -> Check {
    let mut by_bidegree = BTreeSet::new();
    let mut duplicates = 0u64;
    for k in 0..=n {
        for s in 0..=k {
            for fam in decompose(n, s, k - s).expect("s + t <= n") {
                for l in fam.labels(max) {
                    if !by_bidegree.insert((l, fam.bidegree)) {
                        duplicates += 1;
                    }
                }
            }
        }
    }
    let labels: BTreeSet<_> = by_bidegree.iter().map(|(l, _)| *l).collect();
    let by_label: BTreeSet<_> = labels
        .iter()
        .flat_map(|l| blocks_of_label(l).into_iter().map(move |b| (*l, b)))
        .collect();
    let mismatch = by_bidegree.symmetric_difference(&by_label).count() as u64;
    Check::exact("decompose agrees with blocks_of_label", duplicates + mismatch)
}

/// Mirror symmetry of every degree and a one-dimensional kernel in degrees
/// `0` and `2n+1` only.
pub fn mirror_and_kernel(n: u32, truncation: u32) -> Vec<Check> {
    let (mut mirror_bad, mut kernel_bad) = (0, 0);
    for k in 0..=2 * n + 1 {
        let a = spectrum_slice(n, k, truncation).expect("degree in range");
        let b = spectrum_slice(n, 2 * n + 1 - k, truncation).expect("degree in range");
        if !a.same_spectrum(&b) {
            mirror_bad += 1;
        }
        let kernel = a.multiplicity(&Eigenvalue::ZERO);
        let want = if k == 0 || k == 2 * n + 1 { 1u32 } else { 0 };
        if kernel != BigUint::from(want) {
            kernel_bad += 1;
        }
    }
    alloc::vec![
        Check::exact("spectrum_slice(k) == spectrum_slice(2n+1-k)", mirror_bad),
        Check::exact("kernel only in degrees 0 and 2n+1, dimension 1", kernel_bad),
    ]
}

pub fn cancellation(n: u32, max: u32) -> Check {
    let report = cancellation_check(n, max, max);
    Check::exact("case II/V cancellation", report.failures.len() as u64 + u64::from(report.labels_checked == 0))
}

/// Closed-form torsion values at `s = 0` and the continuation route.
pub fn torsion_values(engine: &ZetaEngine, n: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let k0 = kappa_closed(engine, n, 0.0, KernelConvention::Include).map(|k| k.to_f64());
    out.push(Check::within("kappa(0) == 0", k0.map_or(f64::INFINITY, f64::abs), 1e-12));

    let four_pi = 4.0 * core::f64::consts::PI;
    let fact: f64 = (2..=n).map(f64::from).product();
    let t = kappa_closed_derivative(engine, n, 0.0).map(|d| libm::exp(d.to_f64() / 2.0));
    let t_rel = t.as_ref().map_or(f64::INFINITY, |t| (t / libm::pow(four_pi, f64::from(n + 1)) - 1.0).abs());
    out.push(Check::within("exp(kappa'(0)/2) == (4 pi)^(n+1)", t_rel, 1e-10));
    let t_rs = libm::pow(four_pi, f64::from(n + 1)) / fact;
    let ratio_rel = t.map_or(f64::INFINITY, |t| (t / t_rs / fact - 1.0).abs());
    out.push(Check::within("T / T_ray_singer == n!", ratio_rel, 1e-10));

    let mut worst = 0.0f64;
    for &s in &[-2.0, -0.5, 0.0, 0.3, 2.0, 4.0] {
        let closed = kappa_closed(engine, n, s, KernelConvention::Include).map(|k| k.to_f64());
        let cont = kappa_reduced(engine, n, s, ReducedMode::Continuation, KernelConvention::Include).map(|k| k.value);
        let d = match (closed, cont) {
            (Ok(a), Ok(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        };
        worst = worst.max(d);
    }
    out.push(Check::within("kappa_reduced(continuation) == kappa_closed", worst, 1e-12));
    out
}

/// Every suite, sized for a command-line `verify` run.
///
/// The Gelfand–Tsetlin oracle enumerates patterns one by one, so it runs only
/// for `n ≤ 4` and labels with `p, q ≤ min(max, 4)`.
pub fn verify_all(engine: &ZetaEngine, n: u32, max: u32) -> Vec<Check> {
    let gt_max = if n <= 4 { max.min(4) } else { 0 };
    let mut out = Vec::new();
    out.push(cancellation(n, max));
    out.extend(coefficient_identities(n, 10));
    out.extend(eigenvalue_routes(n, max));
    out.extend(dimension_oracles(n, gt_max, max));
    out.push(decomposition_consistency(n, max.min(8)));
    out.extend(mirror_and_kernel(n, max.min(20)));
    out.extend(torsion_values(engine, n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_small_spheres() {
        let engine = ZetaEngine::default();
        for n in 1..=3 {
            for check in verify_all(&engine, n, 6) {
                assert!(check.passed, "n={n}: {check:?}");
            }
        }
    }
}
