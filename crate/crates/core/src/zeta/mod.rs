//! Riemann and Hurwitz zeta values and `s`-derivatives on the real line.
//!
//! Evaluation uses the Euler–Maclaurin form
//!
//! ```text
//! ζ(s,a) = Σ_{k<K} (k+a)^{-s} + X^{1-s}/(s-1) + X^{-s}/2
//!        + Σ_{j=1}^{M} B_{2j}/(2j)! · (s)_{2j-1} · X^{-s-2j+1} + R_M,   X = K + a,
//! ```
//!
//! which continues to every real `s ≠ 1` once `s + 2M - 1 > 0`. `K` and `M` are
//! chosen so that the remainder bound
//! `|R_M| ≤ |B_{2M}|/(2M)! · |(s)_{2M}| · X^{1-s-2M}/(s+2M-1)` falls below the
//! requested precision. The derivative is the same expansion differentiated
//! term by term, with the differentiated remainder bounded the same way.
//! Reported error bounds add an allowance for floating-point rounding.

mod bernoulli;
mod symmetric;

pub use bernoulli::bernoulli_even;
pub use symmetric::{
    c_coefficients, correction_polynomial, elementary_symmetric, shifted_range, sigma,
    vanishing_correction_check, DimensionPolynomial,
};

use astro_float::{BigFloat, Consts};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::real::{self, RM};

pub const DEFAULT_WORKING_BITS: usize = 128;
const GUARD_BITS: usize = 32;
const MAX_TERMS: usize = bernoulli::MAX_INDEX - 8;
const MAX_CUTOFF: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ZetaError {
    #[error("pole at s = {s}")]
    Pole { s: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("requested {requested} bits but the working precision is {working}")]
    PrecisionUnreachable { requested: usize, working: usize },
    #[error("no admissible Euler-Maclaurin cutoff for s = {s}")]
    NotConverged { s: f64 },
}

/// A value together with a rigorous bound on its distance to the true value.
#[derive(Debug, Clone)]
pub struct ZetaValue {
    pub value: BigFloat,
    pub error_bound: BigFloat,
    pub precision_bits: usize,
}

impl ZetaValue {
    pub fn to_f64(&self) -> f64 {
        real::to_f64(&self.value)
    }

    pub fn error_f64(&self) -> f64 {
        real::to_f64(&self.error_bound)
    }

    /// `|value - x|` rounded to `f64`.
    pub fn distance_to(&self, x: &BigFloat) -> f64 {
        let p = self.precision_bits + GUARD_BITS;
        real::to_f64(&self.value.sub(x, p, RM).abs())
    }
}

/// `ζ(s,a)` and `∂_s ζ(s,a)` from the same expansion.
#[derive(Debug, Clone)]
pub struct ZetaPair {
    pub value: ZetaValue,
    pub derivative: ZetaValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZetaEngine {
    working_bits: usize,
}

impl Default for ZetaEngine {
    fn default() -> Self {
        Self::new(DEFAULT_WORKING_BITS)
    }
}

impl ZetaEngine {
    pub fn new(working_bits: usize) -> Self {
        Self {
            working_bits: working_bits.max(16),
        }
    }

    pub fn working_bits(&self) -> usize {
        self.working_bits
    }

    /// Precision at which arithmetic is carried out.
    pub fn arithmetic_bits(&self) -> usize {
        self.working_bits + GUARD_BITS
    }

    pub fn hurwitz(&self, s: f64, a: f64) -> Result<ZetaValue, ZetaError> {
        self.hurwitz_pair(s, a, self.working_bits).map(|pair| pair.value)
    }

    pub fn hurwitz_with_precision(&self, s: f64, a: f64, bits: usize) -> Result<ZetaValue, ZetaError> {
        self.hurwitz_pair(s, a, bits).map(|pair| pair.value)
    }

    pub fn hurwitz_deriv(&self, s: f64, a: f64) -> Result<ZetaValue, ZetaError> {
        self.hurwitz_pair(s, a, self.working_bits)
            .map(|pair| pair.derivative)
    }

    pub fn riemann(&self, s: f64) -> Result<ZetaValue, ZetaError> {
        self.hurwitz(s, 1.0)
    }

    pub fn riemann_deriv(&self, s: f64) -> Result<ZetaValue, ZetaError> {
        self.hurwitz_deriv(s, 1.0)
    }

    pub fn hurwitz_pair(&self, s: f64, a: f64, bits: usize) -> Result<ZetaPair, ZetaError> {
        if !s.is_finite() {
            return Err(ZetaError::InvalidArgument("s must be finite"));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(ZetaError::InvalidArgument("a must be finite and positive"));
        }
        if s == 1.0 {
            return Err(ZetaError::Pole { s });
        }
        if bits == 0 {
            return Err(ZetaError::InvalidArgument("precision must be positive"));
        }
        if bits > self.working_bits {
            return Err(ZetaError::PrecisionUnreachable {
                requested: bits,
                working: self.working_bits,
            });
        }

        // Absolute target, scaled by the leading term so large values are not
        // asked for more relative accuracy than the arithmetic carries.
        let scale = libm::pow(a, -s).max(1.0);
        let log_target = libm::log(scale) - bits as f64 * core::f64::consts::LN_2;

        let mut cutoff = ((libm::ceil(s.abs()) as u64) + 10).max(10);
        let plan = loop {
            if let Some(plan) = plan_terms(s, cutoff as f64 + a, log_target) {
                break plan;
            }
            cutoff *= 2;
            if cutoff > MAX_CUTOFF {
                return Err(ZetaError::NotConverged { s });
            }
        };
        Ok(self.evaluate(s, a, cutoff, plan))
    }

    fn evaluate(&self, s: f64, a: f64, cutoff: u64, plan: Plan) -> ZetaPair {
        let p = self.arithmetic_bits();
        let mut cc: Consts = real::consts();
        let sb = BigFloat::from_f64(s, p);
        let ab = BigFloat::from_f64(a, p);
        let neg_s = sb.neg();

        let mut value = BigFloat::from_word(0, p);
        let mut deriv = BigFloat::from_word(0, p);
        let (mut mag_v, mut mag_d) = (0.0f64, 0.0f64);

        for k in 0..cutoff {
            let t = ab.add(&BigFloat::from_u64(k, p), p, RM);
            let lt = t.ln(p, RM, &mut cc);
            let pw = neg_s.mul(&lt, p, RM).exp(p, RM, &mut cc);
            let dt = lt.mul(&pw, p, RM);
            mag_v += real::to_f64(&pw).abs();
            mag_d += real::to_f64(&dt).abs();
            value = value.add(&pw, p, RM);
            deriv = deriv.sub(&dt, p, RM);
        }

        let x = ab.add(&BigFloat::from_u64(cutoff, p), p, RM);
        let lx = x.ln(p, RM, &mut cc);
        let xs = neg_s.mul(&lx, p, RM).exp(p, RM, &mut cc);
        let one = BigFloat::from_word(1, p);
        let sm1 = sb.sub(&one, p, RM);

        // X^{1-s}/(s-1) and its s-derivative
        let head = x.mul(&xs, p, RM).div(&sm1, p, RM);
        let head_d = lx
            .mul(&head, p, RM)
            .neg()
            .sub(&head.div(&sm1, p, RM), p, RM);
        // X^{-s}/2
        let half = xs.div(&BigFloat::from_word(2, p), p, RM);
        let half_d = lx.mul(&half, p, RM).neg();
        for (v, d) in [(&head, &head_d), (&half, &half_d)] {
            mag_v += real::to_f64(v).abs();
            mag_d += real::to_f64(d).abs();
            value = value.add(v, p, RM);
            deriv = deriv.add(d, p, RM);
        }

        // Rising factorial (s)_m and its derivative, starting at m = 1.
        let mut rise = sb.clone();
        let mut rise_d = one.clone();
        let x2 = x.mul(&x, p, RM);
        let mut pw = xs.div(&x, p, RM);
        for j in 1..=plan.terms {
            let coef = real::from_rational(&em_coefficient(j), p);
            let cp = coef.mul(&pw, p, RM);
            let term = cp.mul(&rise, p, RM);
            let term_d = cp.mul(&rise_d.sub(&rise.mul(&lx, p, RM), p, RM), p, RM);
            mag_v += real::to_f64(&term).abs();
            mag_d += real::to_f64(&term_d).abs();
            value = value.add(&term, p, RM);
            deriv = deriv.add(&term_d, p, RM);

            for shift in [2 * j - 1, 2 * j] {
                let f = sb.add(&BigFloat::from_u64(shift as u64, p), p, RM);
                rise_d = rise_d.mul(&f, p, RM).add(&rise, p, RM);
                rise = rise.mul(&f, p, RM);
            }
            pw = pw.div(&x2, p, RM);
        }

        // Each term carries a few rounding errors, amplified by |s ln X| in the
        // exponential; a relative 2^{-(p-8)} per operation covers the chain.
        let ops = (cutoff as f64) + 6.0 * plan.terms as f64 + 24.0;
        let amp = 4.0 + s.abs() * libm::log(cutoff as f64 + a).max(1.0);
        let unit = libm::ldexp(1.0, -(p as i32 - 8));
        let round_v = ops * amp * unit * mag_v;
        let round_d = ops * (amp + 1.0) * unit * mag_d;

        let bound = |x: f64| BigFloat::from_f64(x * (1.0 + 1e-6), p);
        ZetaPair {
            value: ZetaValue {
                value,
                error_bound: bound(plan.value_bound + round_v),
                precision_bits: self.working_bits,
            },
            derivative: ZetaValue {
                value: deriv,
                error_bound: bound(plan.deriv_bound + round_d),
                precision_bits: self.working_bits,
            },
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Plan {
    terms: usize,
    value_bound: f64,
    deriv_bound: f64,
}

fn em_coefficient(j: usize) -> BigRational {
    let fact = (2..=2 * j as u64).fold(BigUint::one(), |acc, k| acc * k);
    bernoulli_even(j) / BigRational::from_integer(BigInt::from(fact))
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 960 {
        return libm::log(x.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

fn ln_abs_rational(x: &BigRational) -> f64 {
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

// ln(|B_{2M}|/(2M)!) for M = 1..=MAX_TERMS.
fn ln_remainder_coefficient(m: usize) -> f64 {
    ln_abs_rational(bernoulli_even(m)) - libm::lgamma(2.0 * m as f64 + 1.0)
}

/// Smallest `M` whose remainder bounds (value and derivative) at `X` are
/// below `exp(log_target)`.
fn plan_terms(s: f64, x: f64, log_target: f64) -> Option<Plan> {
    let lx = libm::log(x);
    // Running log|(s)_{2M}| split around an exactly vanishing factor.
    let mut ln_prod = 0.0f64;
    let mut ln_prod_without_zero: Option<f64> = None;
    let mut inv_sum = 0.0f64;

    for r in 0..2 * MAX_TERMS {
        let f = s + r as f64;
        if f == 0.0 && ln_prod_without_zero.is_none() {
            ln_prod_without_zero = Some(ln_prod);
        } else if let Some(w) = ln_prod_without_zero.as_mut() {
            *w += libm::log(f.abs());
        } else {
            ln_prod += libm::log(f.abs());
            inv_sum += 1.0 / f.abs();
        }
        if r % 2 == 0 {
            continue;
        }
        let m = r.div_ceil(2);
        let sigma = s + 2.0 * m as f64 - 1.0;
        if sigma <= 0.0 {
            continue;
        }
        let (ln_p, ln_pd) = match ln_prod_without_zero {
            Some(w) => (f64::NEG_INFINITY, w),
            None => (ln_prod, ln_prod + libm::log(inv_sum)),
        };
        let base = ln_remainder_coefficient(m) - sigma * lx;
        let value_bound = libm::exp(base + ln_p - libm::log(sigma));
        let deriv_bound = libm::exp(base + ln_pd - libm::log(sigma))
            + libm::exp(base + ln_p) * (lx / sigma + 1.0 / (sigma * sigma));
        let target = libm::exp(log_target);
        if value_bound <= target && deriv_bound <= target {
            return Some(Plan {
                terms: m,
                value_bound,
                deriv_bound,
            });
        }
    }
    None
}

/// `true` when `x` lies within `value ± error_bound`, widened by `slack`.
pub fn within_bound(z: &ZetaValue, x: &BigFloat, slack: f64) -> bool {
    z.distance_to(x) <= z.error_f64() + slack
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> ZetaEngine {
        ZetaEngine::default()
    }

    fn pi(p: usize) -> BigFloat {
        real::consts().pi(p, RM)
    }

    fn check(z: &ZetaValue, want: &BigFloat, abs_tol: f64) {
        let d = z.distance_to(want);
        assert!(d <= z.error_f64(), "distance {d:e} exceeds bound {:e}", z.error_f64());
        assert!(d <= abs_tol, "distance {d:e} exceeds {abs_tol:e}");
        assert!(z.error_f64() <= abs_tol, "bound {:e} too loose", z.error_f64());
    }

    #[test]
    fn zeta_two_and_four() {
        let p = 192;
        let pi = pi(p);
        let pi2 = pi.mul(&pi, p, RM);
        check(&engine().riemann(2.0).unwrap(), &pi2.div(&BigFloat::from_word(6, p), p, RM), 1e-30);
        let pi4 = pi2.mul(&pi2, p, RM);
        check(&engine().riemann(4.0).unwrap(), &pi4.div(&BigFloat::from_word(90, p), p, RM), 1e-30);
    }

    #[test]
    fn zeta_at_zero() {
        let p = 192;
        let z = engine().riemann(0.0).unwrap();
        check(&z, &BigFloat::from_f64(-0.5, p), 1e-30);
        let mut cc = real::consts();
        let want = pi(p)
            .mul(&BigFloat::from_word(2, p), p, RM)
            .ln(p, RM, &mut cc)
            .div(&BigFloat::from_word(2, p), p, RM)
            .neg();
        check(&engine().riemann_deriv(0.0).unwrap(), &want, 1e-30);
    }

    #[test]
    fn hurwitz_at_zero_is_half_minus_a() {
        for &a in &[0.25, 1.0, 3.5, 17.125] {
            let z = engine().hurwitz(0.0, a).unwrap();
            check(&z, &BigFloat::from_f64(0.5 - a, 192), 1e-30);
        }
    }

    #[test]
    fn negative_one_against_high_precision_run() {
        let low = engine().riemann(-1.0).unwrap();
        let high = ZetaEngine::new(256).riemann(-1.0).unwrap();
        check(&low, &high.value, 1e-30);
        let twelfth = BigFloat::from_word(1, 300).div(&BigFloat::from_word(12, 300), 300, RM).neg();
        check(&high, &twelfth, 1e-70);
    }

    #[test]
    fn riemann_is_hurwitz_at_one() {
        for &s in &[-3.0, -1.0, 0.5, 2.0, 3.0, 6.0] {
            let r = engine().riemann(s).unwrap();
            let h = engine().hurwitz(s, 1.0).unwrap();
            assert_eq!(r.distance_to(&h.value), 0.0);
        }
    }

    #[test]
    fn shift_identity() {
        let p = engine().arithmetic_bits();
        let mut cc = real::consts();
        // dyadic a keeps a + 1 exact in f64
        for &(s, a) in &[(2.5, 0.375), (-1.7, 2.25), (0.4, 5.0), (7.25, 0.875), (-4.5, 1.5)] {
            let lhs = engine().hurwitz(s, a).unwrap();
            let rhs = engine().hurwitz(s, a + 1.0).unwrap();
            let ab = BigFloat::from_f64(a, p);
            let pw = BigFloat::from_f64(-s, p)
                .mul(&ab.ln(p, RM, &mut cc), p, RM)
                .exp(p, RM, &mut cc);
            let sum = pw.add(&rhs.value, p, RM);
            let d = lhs.distance_to(&sum);
            assert!(d <= lhs.error_f64() + rhs.error_f64(), "s={s} a={a}: {d:e} vs {:e} + {:e}", lhs.error_f64(), rhs.error_f64());
        }
    }

    #[test]
    fn doubling_precision_stays_inside_bound() {
        for &(s, a) in &[(3.0, 1.0), (-2.5, 0.75), (0.5, 2.0)] {
            let low = ZetaEngine::new(64).hurwitz(s, a).unwrap();
            let high = ZetaEngine::new(128).hurwitz(s, a).unwrap();
            assert!(low.distance_to(&high.value) <= low.error_f64());
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(engine().riemann(1.0), Err(ZetaError::Pole { .. })));
        assert!(matches!(
            engine().hurwitz(2.0, 0.0),
            Err(ZetaError::InvalidArgument(_))
        ));
        assert!(matches!(
            engine().hurwitz_with_precision(2.0, 1.0, 256),
            Err(ZetaError::PrecisionUnreachable { requested: 256, working: 128 })
        ));
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let e = ZetaEngine::new(192);
        for &s in &[-2.5, 0.3, 2.0, 5.0] {
            let h = 1e-6;
            let plus = e.hurwitz(s + h, 1.3).unwrap().to_f64();
            let minus = e.hurwitz(s - h, 1.3).unwrap().to_f64();
            let d = e.hurwitz_deriv(s, 1.3).unwrap().to_f64();
            let fd = (plus - minus) / (2.0 * h);
            assert!((d - fd).abs() <= 1e-7 * d.abs().max(1.0), "s={s}: {d} vs {fd}");
        }
    }
}
