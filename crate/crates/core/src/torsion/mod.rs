//! The contact analytic torsion function
//! `κ(s) = Σ_{k=0}^{n} (-1)^{k+1} (n+1-k) ζ(Δ^k)(s)` on `S^{2n+1}`, three ways:
//!
//! - [`kappa_direct`]: the truncated spectral sum itself, with a rigorous
//!   bound on the discarded tail;
//! - [`kappa_reduced`]: `κ1 + 2κ2`, which keeps only the Case III/IV/VI/VII
//!   families after the Case II/V blocks cancel;
//! - [`kappa_closed`]: `-(n+1)(1 + 2^{2s+1} ζ(2s))`.
//!
//! The per-degree zeta is `ζ(Δ^k)(s) = dim Ker Δ^k + Σ_{μ>0} mult(μ) μ^{-s}`
//! under [`KernelConvention::Include`].

mod tail;

pub use tail::{family_tail_bound, power_tail, reduced_tail_bound};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::real::{self, RM};
use crate::spectrum::{self, blocks_of_label, eigenvalue_formula, families_in_degree, IrrepBlock};
use crate::weights::{dimension_to_f64, label_to_weight, special_dimension, weyl_dimension, LabelCase};
use crate::zeta::{c_coefficients, shifted_range, elementary_symmetric, ZetaEngine, ZetaError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorsionError {
    #[error("sphere index n must be at least 1")]
    InvalidSphere,
    #[error("truncation level must be at least 1")]
    InvalidTruncation,
    #[error("pole at s = {s}")]
    Pole { s: f64 },
    #[error("direct sum diverges: need 2s > n + 1 (n = {n}, s = {s})")]
    Divergent { n: u32, s: f64 },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Spectrum(#[from] spectrum::SpectrumError),
}

/// How the kernel enters the per-degree spectral zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KernelConvention {
    /// `ζ(Δ^k)(s) = dim Ker Δ^k + Σ_{μ>0} …`
    #[default]
    Include,
    /// `ζ(Δ^k)(s) = Σ_{μ>0} …`; shifts `κ` by `n + 1`.
    Exclude,
}

impl KernelConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelConvention::Include => "kernel-included",
            KernelConvention::Exclude => "kernel-excluded",
        }
    }

    /// `Σ_k w_k · dim Ker Δ^k` under this convention.
    pub fn kappa_one(self, n: u32) -> i64 {
        match self {
            KernelConvention::Include => degree_weight(n, 0),
            KernelConvention::Exclude => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeWeight {
    pub k: u32,
    pub w: i64,
}

/// `(-1)^{k+1} (n+1-k)`.
pub fn degree_weight(n: u32, k: u32) -> i64 {
    let magnitude = i64::from(n) + 1 - i64::from(k);
    if k % 2 == 0 {
        -magnitude
    } else {
        magnitude
    }
}

pub fn degree_weights(n: u32) -> Vec<DegreeWeight> {
    (0..=n)
        .map(|k| DegreeWeight {
            k,
            w: degree_weight(n, k),
        })
        .collect()
}

/// A high-precision value of `κ` or `κ'` with a bound on its numerical error.
#[derive(Debug, Clone)]
pub struct KappaValue {
    pub value: BigFloat,
    pub error_bound: f64,
}

impl KappaValue {
    pub fn to_f64(&self) -> f64 {
        real::to_f64(&self.value)
    }
}

fn two_pow(x: f64, p: usize) -> BigFloat {
    let mut cc = real::consts();
    let ln2 = cc.ln_2(p, RM);
    BigFloat::from_f64(x, p).mul(&ln2, p, RM).exp(p, RM, &mut cc)
}

fn check_sphere(n: u32) -> Result<(), TorsionError> {
    if n == 0 {
        Err(TorsionError::InvalidSphere)
    } else {
        Ok(())
    }
}

/// `-(n+1)(1 + 2^{2s+1} ζ(2s))`, shifted by `n+1` under the excluded convention.
pub fn kappa_closed(
    engine: &ZetaEngine,
    n: u32,
    s: f64,
    convention: KernelConvention,
) -> Result<KappaValue, TorsionError> {
    check_sphere(n)?;
    if 2.0 * s == 1.0 {
        return Err(TorsionError::Pole { s });
    }
    let p = engine.arithmetic_bits();
    let z = engine.riemann(2.0 * s)?;
    let scale = two_pow(2.0 * s + 1.0, p);
    let m = BigFloat::from_u64(u64::from(n) + 1, p);
    let core = scale.mul(&z.value, p, RM).mul(&m, p, RM).neg();
    let kappa_one = BigFloat::from_i64(convention.kappa_one(n), p);
    let value = core.add(&kappa_one, p, RM);
    let error_bound = real::to_f64(&scale) * f64::from(n + 1) * z.error_f64() * (1.0 + 1e-9)
        + real::to_f64(&value).abs() * libm::ldexp(1.0, -(p as i32 - 8));
    Ok(KappaValue { value, error_bound })
}

/// `κ'(s) = -(n+1) 2^{2s+2} (log 2 · ζ(2s) + ζ'(2s))`; independent of the convention.
pub fn kappa_closed_derivative(engine: &ZetaEngine, n: u32, s: f64) -> Result<KappaValue, TorsionError> {
    check_sphere(n)?;
    if 2.0 * s == 1.0 {
        return Err(TorsionError::Pole { s });
    }
    let p = engine.arithmetic_bits();
    let pair = engine.hurwitz_pair(2.0 * s, 1.0, engine.working_bits())?;
    let ln2 = real::consts().ln_2(p, RM);
    let scale = two_pow(2.0 * s + 2.0, p);
    let m = BigFloat::from_u64(u64::from(n) + 1, p);
    let inner = ln2.mul(&pair.value.value, p, RM).add(&pair.derivative.value, p, RM);
    let value = scale.mul(&inner, p, RM).mul(&m, p, RM).neg();
    let error_bound = real::to_f64(&scale)
        * f64::from(n + 1)
        * (core::f64::consts::LN_2 * pair.value.error_f64() + pair.derivative.error_f64())
        * (1.0 + 1e-9)
        + real::to_f64(&value).abs() * libm::ldexp(1.0, -(p as i32 - 8));
    Ok(KappaValue { value, error_bound })
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
    magnitude: f64,
    count: u64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
        self.magnitude += x.abs();
        self.count += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// `Σ |x|` over everything added.
    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

/// The truncated spectral zeta of one degree `k ≤ n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSum {
    pub k: u32,
    /// `dim Ker Δ^k`
    pub kernel: u64,
    /// `Σ_{μ>0} mult(μ) μ^{-s}` over the families truncated at `N`
    pub sum: CompensatedSum,
    /// bound on the omitted labels with a free parameter above `N`
    pub tail_bound: f64,
}

/// `Σ_{μ>0} dim · μ^{-s}` over degree `k`, iterating families in
/// decomposition order and labels with `q` outermost.
pub fn degree_sum(n: u32, k: u32, s: f64, truncation: u32) -> Result<DegreeSum, TorsionError> {
    check_sphere(n)?;
    if truncation == 0 {
        return Err(TorsionError::InvalidTruncation);
    }
    if 2.0 * s <= f64::from(n) + 1.0 {
        return Err(TorsionError::Divergent { n, s });
    }
    let mut sum = CompensatedSum::default();
    let mut kernel = 0u64;
    let mut tail_bound = 0.0;
    for fam in families_in_degree(n, k)? {
        tail_bound += family_tail_bound(&fam, s, truncation);
        for label in fam.labels(truncation) {
            let mu = eigenvalue_formula(&label);
            let dim = weyl_dimension(&label_to_weight(&label));
            if mu.is_zero() {
                kernel += dim.to_u64().unwrap_or(u64::MAX);
            } else {
                sum.add(dimension_to_f64(&dim) * libm::pow(mu.to_f64(), -s));
            }
        }
    }
    Ok(DegreeSum {
        k,
        kernel,
        sum,
        tail_bound,
    })
}

/// A truncated route to `κ(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedKappa {
    pub value: f64,
    /// rigorous bound on `|κ(s) - value|` from the discarded labels
    pub tail_bound: f64,
    /// bound on the floating-point error of the partial sum
    pub rounding_bound: f64,
}

/// Combine per-degree sums (in increasing `k`) into `κ`; the result depends
/// only on the inputs, not on how they were produced.
pub fn combine_degree_sums(n: u32, degrees: &[DegreeSum], convention: KernelConvention) -> TruncatedKappa {
    let mut total = CompensatedSum::default();
    let mut tail_bound = 0.0;
    let mut magnitude = 0.0;
    for d in degrees {
        let w = degree_weight(n, d.k) as f64;
        if convention == KernelConvention::Include {
            total.add(w * d.kernel as f64);
        }
        total.add(w * d.sum.value());
        tail_bound += w.abs() * d.tail_bound;
        magnitude += w.abs() * d.sum.magnitude();
    }
    TruncatedKappa {
        value: total.value(),
        tail_bound,
        rounding_bound: 8.0 * f64::EPSILON * magnitude,
    }
}

/// The defining sum truncated at free parameters `≤ N`; needs `2s > n + 1`.
pub fn kappa_direct(
    n: u32,
    s: f64,
    truncation: u32,
    convention: KernelConvention,
) -> Result<TruncatedKappa, TorsionError> {
    let degrees = (0..=n)
        .map(|k| degree_sum(n, k, s, truncation))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(combine_degree_sums(n, &degrees, convention))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducedMode {
    /// `κ2` summed over `p ≤ N`.
    Truncated(u32),
    /// `κ2(s) = -(2^{2s}/n!) Σ_l c_l ζ(2s-l+1)` over the nonzero `c_l`.
    Continuation,
    /// `κ2` through `Σ_{p≥1} (p+i)^{-x} = ζ(x, i+1)` before any cancellation
    /// between the `i`-terms; poles wherever some `2s - l + 1 = 1`.
    ShiftedHurwitz,
}

#[derive(Debug, Clone)]
pub struct ReducedKappa {
    pub value: f64,
    pub precise: Option<BigFloat>,
    pub kappa_one: i64,
    pub kappa_two: f64,
    pub tail_bound: f64,
    pub error_bound: f64,
}

/// `κ1 + 2κ2` with `κ2 = 2^{2s} Σ_i (-1)^{i+1} Σ_p dim V(0_{n-i}, -1_i, -p) (p+i)^{-2s}`.
pub fn kappa_reduced(
    engine: &ZetaEngine,
    n: u32,
    s: f64,
    mode: ReducedMode,
    convention: KernelConvention,
) -> Result<ReducedKappa, TorsionError> {
    check_sphere(n)?;
    let kappa_one = convention.kappa_one(n);
    match mode {
        ReducedMode::Truncated(truncation) => {
            if truncation == 0 {
                return Err(TorsionError::InvalidTruncation);
            }
            if 2.0 * s <= f64::from(n) + 1.0 {
                return Err(TorsionError::Divergent { n, s });
            }
            let mut sum = CompensatedSum::default();
            for i in 0..=n {
                let sign = if i % 2 == 0 { -1.0 } else { 1.0 };
                for p in 1..=i64::from(truncation) {
                    let dim = special_dimension(n, i, p).expect("valid special weight");
                    let x = (p + i64::from(i)) as f64;
                    sum.add(sign * dimension_to_f64(&dim) * libm::pow(x, -2.0 * s));
                }
            }
            let scale = libm::pow(2.0, 2.0 * s);
            let kappa_two = scale * sum.value();
            Ok(ReducedKappa {
                value: kappa_one as f64 + 2.0 * kappa_two,
                precise: None,
                kappa_one,
                kappa_two,
                tail_bound: reduced_tail_bound(n, s, truncation),
                error_bound: 16.0 * f64::EPSILON * scale * sum.magnitude(),
            })
        }
        ReducedMode::Continuation => {
            if 2.0 * s == 1.0 {
                return Err(TorsionError::Pole { s });
            }
            let p = engine.arithmetic_bits();
            let fact = (2..=u64::from(n)).product::<u64>() as f64;
            let mut acc = BigFloat::from_word(0, p);
            let mut err = 0.0;
            for (idx, c) in c_coefficients(n).into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let l = idx as f64 + 1.0;
                let z = engine.riemann(2.0 * s - l + 1.0)?;
                let cf = real::from_bigint(&c, p);
                acc = acc.add(&cf.mul(&z.value, p, RM), p, RM);
                err += c.to_f64().unwrap_or(f64::INFINITY).abs() * z.error_f64();
            }
            self::finish_continuation(engine, n, s, acc, err / fact, kappa_one)
        }
        ReducedMode::ShiftedHurwitz => {
            let p = engine.arithmetic_bits();
            let fact = (2..=u64::from(n)).product::<u64>() as f64;
            let mut acc = BigFloat::from_word(0, p);
            let mut err = 0.0;
            for i in 0..=n {
                let values = shifted_range(n, i);
                let b = BigInt::from(binomial(u64::from(n), u64::from(i)));
                for l in 1..=n as usize + 1 {
                    let e = elementary_symmetric(&values, n as usize + 1 - l);
                    if e.is_zero() {
                        continue;
                    }
                    let x = 2.0 * s - l as f64 + 1.0;
                    if x == 1.0 {
                        return Err(TorsionError::Pole { s });
                    }
                    let z = engine.hurwitz(x, f64::from(i) + 1.0)?;
                    // Σ_i (-1)^i C(n,i) e · ζ(x, i+1); the overall sign is applied below.
                    let coef = BigRational::from_integer(b.clone()) * e;
                    let coef = if i % 2 == 0 { coef } else { -coef };
                    let cf = real::from_rational(&coef, p);
                    acc = acc.add(&cf.mul(&z.value, p, RM), p, RM);
                    err += coef.to_f64().unwrap_or(f64::INFINITY).abs() * z.error_f64();
                }
            }
            self::finish_continuation(engine, n, s, acc, err / fact, kappa_one)
        }
    }
}

// κ = κ1 + 2κ2 with κ2 = -(2^{2s}/n!) · acc.
fn finish_continuation(
    engine: &ZetaEngine,
    n: u32,
    s: f64,
    acc: BigFloat,
    acc_err_over_fact: f64,
    kappa_one: i64,
) -> Result<ReducedKappa, TorsionError> {
    let p = engine.arithmetic_bits();
    let fact = (2..=u64::from(n)).fold(BigFloat::from_word(1, p), |f, k| {
        f.mul(&BigFloat::from_u64(k, p), p, RM)
    });
    let scale = two_pow(2.0 * s, p);
    let kappa_two = scale.mul(&acc, p, RM).div(&fact, p, RM).neg();
    let two = BigFloat::from_word(2, p);
    let value = BigFloat::from_i64(kappa_one, p).add(&two.mul(&kappa_two, p, RM), p, RM);
    let scale_f = real::to_f64(&scale);
    Ok(ReducedKappa {
        value: real::to_f64(&value),
        kappa_one,
        kappa_two: real::to_f64(&kappa_two),
        tail_bound: 0.0,
        error_bound: 2.0 * scale_f * acc_err_over_fact * (1.0 + 1e-9)
            + real::to_f64(&value).abs() * libm::ldexp(1.0, -(p as i32 - 8)),
        precise: Some(value),
    })
}

/// Outcome of [`cancellation_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationReport {
    pub labels_checked: u64,
    pub failures: Vec<String>,
}

impl CancellationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.labels_checked > 0
    }
}

/// Every Case II/V label with `p ≤ p_max`, `q ≤ q_max` contributes
/// `Σ_{blocks} w_{deg} · dim · μ^{-s} = 0` to `κ`.
///
/// Blocks are collected from the bidegree decomposition and grouped by label;
/// each group must carry one eigenvalue and one dimension, and its degree
/// weights must sum to zero as integers.
pub fn cancellation_check(n: u32, p_max: u32, q_max: u32) -> CancellationReport {
    let mut groups: BTreeMap<_, Vec<IrrepBlock>> = BTreeMap::new();
    let max = p_max.max(q_max);
    for k in 0..=n {
        for fam in families_in_degree(n, k).expect("n >= 1") {
            if !matches!(fam.label_case, LabelCase::II | LabelCase::V) {
                continue;
            }
            for label in fam.labels(max) {
                if label.p() > i64::from(p_max) || label.q() > i64::from(q_max) {
                    continue;
                }
                groups
                    .entry(label)
                    .or_default()
                    .push(IrrepBlock::new(label, fam.bidegree));
            }
        }
    }

    let mut failures = Vec::new();
    for (label, blocks) in &groups {
        let expected = blocks_of_label(label);
        let mut found: Vec<_> = blocks.iter().map(|b| b.bidegree).collect();
        found.sort();
        let mut want = expected.clone();
        want.sort();
        let uniform = blocks
            .iter()
            .all(|b| b.eigenvalue == blocks[0].eigenvalue && b.dimension == blocks[0].dimension);
        let weight: i64 = blocks.iter().map(|b| degree_weight(n, b.degree())).sum();
        if found != want || !uniform || weight != 0 {
            failures.push(alloc::format!("{label}: blocks {found:?}, weight sum {weight}"));
        }
    }
    CancellationReport {
        labels_checked: groups.len() as u64,
        failures,
    }
}

/// Where the direct route is compared with the closed form in a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePoint {
    pub s: f64,
    pub truncation: u32,
}

impl ReferencePoint {
    /// `s = n/2 + 2`, `N = 100`.
    pub fn default_for(n: u32) -> Self {
        Self {
            s: f64::from(n) / 2.0 + 2.0,
            truncation: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionReport {
    pub n: u32,
    pub convention: KernelConvention,
    pub kappa_at_0: f64,
    pub kappa_prime_at_0: f64,
    /// `exp(κ'(0)/2)`
    pub t: f64,
    /// `(4π)^{n+1} / n!`
    pub t_ray_singer: f64,
    pub ratio: f64,
    /// `n!`, the expected value of `ratio`
    pub expected_ratio: u64,
    pub route_residuals: BTreeMap<String, f64>,
    pub reference: ReferencePoint,
    pub kappa_prime_at_0_decimal: String,
    pub t_decimal: String,
}

/// Closed-form values at `s = 0` plus route residuals at `reference`.
///
/// `degrees` supplies the per-degree direct sums at the reference point, so a
/// caller may compute them in parallel; `None` computes them serially.
pub fn torsion_report(
    engine: &ZetaEngine,
    n: u32,
    convention: KernelConvention,
    reference: ReferencePoint,
    degrees: Option<Vec<DegreeSum>>,
) -> Result<TorsionReport, TorsionError> {
    check_sphere(n)?;
    let p = engine.arithmetic_bits();
    let mut cc = real::consts();

    let k0 = kappa_closed(engine, n, 0.0, convention)?;
    let kp = kappa_closed_derivative(engine, n, 0.0)?;
    let t = kp
        .value
        .div(&BigFloat::from_word(2, p), p, RM)
        .exp(p, RM, &mut cc);
    let four_pi = cc.pi(p, RM).mul(&BigFloat::from_word(4, p), p, RM);
    let four_pi_pow = four_pi.powi(n as usize + 1, p, RM);
    let n_fact: u64 = (2..=u64::from(n)).product();
    let t_rs = four_pi_pow.div(&BigFloat::from_u64(n_fact, p), p, RM);
    let ratio = t.div(&t_rs, p, RM);

    let mut residuals = BTreeMap::new();
    let closed_vs_4pi = real::to_f64(&t.div(&four_pi_pow, p, RM)) - 1.0;
    residuals.insert(String::from("T_over_4pi_power_minus_1"), closed_vs_4pi.abs());

    let closed_ref = kappa_closed(engine, n, reference.s, convention)?.to_f64();
    let degrees = match degrees {
        Some(d) => d,
        None => (0..=n)
            .map(|k| degree_sum(n, k, reference.s, reference.truncation))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let direct = combine_degree_sums(n, &degrees, convention);
    residuals.insert(String::from("direct"), (direct.value - closed_ref).abs());
    residuals.insert(String::from("direct_tail_bound"), direct.tail_bound);
    let reduced = kappa_reduced(
        engine,
        n,
        reference.s,
        ReducedMode::Truncated(reference.truncation),
        convention,
    )?;
    residuals.insert(String::from("reduced_truncated"), (reduced.value - closed_ref).abs());
    let cont = kappa_reduced(engine, n, reference.s, ReducedMode::Continuation, convention)?;
    residuals.insert(String::from("reduced_continuation"), (cont.value - closed_ref).abs());

    Ok(TorsionReport {
        n,
        convention,
        kappa_at_0: k0.to_f64(),
        kappa_prime_at_0: kp.to_f64(),
        t: real::to_f64(&t),
        t_ray_singer: real::to_f64(&t_rs),
        ratio: real::to_f64(&ratio),
        expected_ratio: n_fact,
        route_residuals: residuals,
        reference,
        kappa_prime_at_0_decimal: real::to_decimal_string(&kp.value, &mut cc),
        t_decimal: real::to_decimal_string(&t, &mut cc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> ZetaEngine {
        ZetaEngine::default()
    }

    #[test]
    fn weights_alternate() {
        let w: Vec<i64> = degree_weights(2).iter().map(|d| d.w).collect();
        assert_eq!(w, alloc::vec![-3, 2, -1]);
        assert_eq!(degree_weights(1).iter().map(|d| d.w).collect::<Vec<_>>(), alloc::vec![-2, 1]);
    }

    #[test]
    fn closed_form_at_zero() {
        for n in 1..=6 {
            let k = kappa_closed(&engine(), n, 0.0, KernelConvention::Include).unwrap();
            assert!(k.to_f64().abs() < 1e-30);
            let k = kappa_closed(&engine(), n, 0.0, KernelConvention::Exclude).unwrap();
            assert!((k.to_f64() - f64::from(n + 1)).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_at_two() {
        let k = kappa_closed(&engine(), 1, 2.0, KernelConvention::Include).unwrap();
        let pi4 = core::f64::consts::PI.powi(4);
        let want = -2.0 * (1.0 + 32.0 * pi4 / 90.0);
        assert!((k.to_f64() - want).abs() < 1e-12 * want.abs());
    }

    #[test]
    fn derivative_at_zero() {
        let four_pi = 4.0 * core::f64::consts::PI;
        for n in 1..=6u32 {
            let d = kappa_closed_derivative(&engine(), n, 0.0).unwrap();
            let want = 2.0 * f64::from(n + 1) * four_pi.ln();
            assert!((d.to_f64() - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn pole_at_half() {
        assert!(matches!(
            kappa_closed(&engine(), 2, 0.5, KernelConvention::Include),
            Err(TorsionError::Pole { .. })
        ));
    }

    #[test]
    fn direct_requires_convergence() {
        assert!(matches!(
            kappa_direct(2, 1.5, 10, KernelConvention::Include),
            Err(TorsionError::Divergent { .. })
        ));
    }

    #[test]
    fn direct_small_truncation_is_contained() {
        let closed = kappa_closed(&engine(), 1, 3.0, KernelConvention::Include).unwrap().to_f64();
        let d = kappa_direct(1, 3.0, 1, KernelConvention::Include).unwrap();
        assert!((d.value - closed).abs() < d.tail_bound);
    }

    #[test]
    fn reduced_routes_agree_with_closed_form() {
        for n in 1..=5 {
            for &s in &[-2.0, -1.0, -0.5, 0.0, 0.25, 0.3, 2.0, 4.0] {
                let closed = kappa_closed(&engine(), n, s, KernelConvention::Include).unwrap().to_f64();
                let cont = kappa_reduced(&engine(), n, s, ReducedMode::Continuation, KernelConvention::Include)
                    .unwrap();
                assert!((cont.value - closed).abs() < 1e-12 * closed.abs().max(1.0), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn shifted_hurwitz_route_matches_away_from_poles() {
        for n in 1..=4 {
            for &s in &[-1.25, 0.25, 2.25] {
                let closed = kappa_closed(&engine(), n, s, KernelConvention::Include).unwrap().to_f64();
                let h = kappa_reduced(&engine(), n, s, ReducedMode::ShiftedHurwitz, KernelConvention::Include)
                    .unwrap();
                assert!((h.value - closed).abs() < 1e-10 * closed.abs().max(1.0), "n={n} s={s}: {} vs {closed}", h.value);
            }
        }
        assert!(kappa_reduced(&engine(), 3, 1.0, ReducedMode::ShiftedHurwitz, KernelConvention::Include).is_err());
    }

    #[test]
    fn kappa_one_term() {
        for n in 1..=4 {
            assert_eq!(KernelConvention::Include.kappa_one(n), -(i64::from(n) + 1));
        }
    }

    #[test]
    fn cancellation_examples() {
        assert_eq!(degree_weight(2, 0) + 2 * degree_weight(2, 1) + degree_weight(2, 2), 0);
        assert_eq!(degree_weight(1, 0) + 2 * degree_weight(1, 1), 0);
        for n in 1..=4 {
            let r = cancellation_check(n, 6, 6);
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn report_small_sphere() {
        let r = torsion_report(
            &engine(),
            1,
            KernelConvention::Include,
            ReferencePoint { s: 2.5, truncation: 40 },
            None,
        )
        .unwrap();
        let pi = core::f64::consts::PI;
        assert!((r.t / (16.0 * pi * pi) - 1.0).abs() < 1e-12);
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert!(r.kappa_at_0.abs() < 1e-12);
        assert!(r.route_residuals["direct"] < r.route_residuals["direct_tail_bound"] + 1e-8);
    }
}
