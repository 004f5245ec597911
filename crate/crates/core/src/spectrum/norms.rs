//! Squared L² norms of the explicit Rumin forms spanning each block, and the
//! routes to the eigenvalue that go through them.
//!
//! Norms are returned as the exact coefficient of `π^{n+1}`.

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use super::{Bidegree, Eigenvalue, SpectrumError};
use crate::weights::{LabelCase, RuminLabel};

fn factorial(m: u64) -> BigUint {
    (2..=m).fold(BigUint::one(), |acc, k| acc * k)
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn pow2(e: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

/// The two families of normalising constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormConstants {
    pub n: u32,
    /// `2^{n+1} (q-1)! (p-1)! / (q+p+n)!`
    pub c: BigRational,
    /// `2^{n+1} (q-1)! / (q+n)!`
    pub d_q: BigRational,
    /// `2^{n+1} (p-1)! / (p+n)!`
    pub d_p: BigRational,
}

/// Constants for `p, q ≥ 1`; panics otherwise.
pub fn norm_constants(n: u32, q: i64, p: i64) -> NormConstants {
    assert!(q >= 1 && p >= 1, "norm constants need p, q >= 1");
    let (q, p, nn) = (q as u64, p as u64, u64::from(n));
    let two = BigInt::one() << (n + 1);
    let ratio = |num: BigUint, den: BigUint| {
        BigRational::new(&two * BigInt::from(num), BigInt::from(den))
    };
    NormConstants {
        n,
        c: ratio(factorial(q - 1) * factorial(p - 1), factorial(q + p + nn)),
        d_q: ratio(factorial(q - 1), factorial(q + nn)),
        d_p: ratio(factorial(p - 1), factorial(p + nn)),
    }
}

/// `‖ψ^{(s,t)}_{label}‖² / π^{n+1}` wherever a closed formula is known.
pub fn squared_norm(label: &RuminLabel, bidegree: Bidegree) -> Result<BigRational, SpectrumError> {
    let out_of_range = || SpectrumError::NormOutOfRange {
        label: *label,
        bidegree,
    };
    let n = label.n();
    let (q, j, i, p) = (label.q(), label.j(), label.i(), label.p());
    let (ni, nj) = (i64::from(n), i64::from(j));
    let ii = i64::from(i);
    let b = (bidegree.s, bidegree.t);

    match label.case() {
        LabelCase::II | LabelCase::V => {
            let c = norm_constants(n, q, p).c;
            let e = i + j;
            if b == (i, j) {
                Ok(c * int(q + nj) * int(p + ii) / pow2(e))
            } else if b == (i + 1, j) && j > 0 {
                Ok(c * int(q + nj) * int(q + ni - ii) / pow2(e + 1))
            } else if b == (i, j + 1) && i > 0 {
                Ok(c * int(p + ii) * int(p + ni - nj) / pow2(e + 1))
            } else if b == (i + 1, j + 1) && i > 0 && j > 0 && label.case() == LabelCase::II {
                let d = ni - ii - nj;
                Ok(c * int(q + ni - ii) * int(p + ni - nj) * int(d - 1) / (pow2(e + 2) * int(d)))
            } else {
                Err(out_of_range())
            }
        }
        LabelCase::III => {
            let d = norm_constants(n, 1, p).d_p;
            if b == (i, 0) {
                Ok(d * int(p + ii) / pow2(i))
            } else if b == (i + 1, 0) {
                Ok(d * int(ni - ii) / pow2(i + 1))
            } else {
                Err(out_of_range())
            }
        }
        LabelCase::IV => {
            let d = norm_constants(n, q, 1).d_q;
            if b == (0, j) {
                Ok(d * int(q + nj) / pow2(j))
            } else if b == (0, j + 1) {
                Ok(d * int(ni - nj) / pow2(j + 1))
            } else {
                Err(out_of_range())
            }
        }
        _ => Err(out_of_range()),
    }
}

/// `‖∂_b‖²` and `‖∂̄_b‖²` on `Ψ^{(i,j)}` for a Case II/V label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorNormSquares {
    pub holomorphic: Ratio<i128>,
    pub antiholomorphic: Ratio<i128>,
}

fn split_parts(label: &RuminLabel) -> (i128, i128, i128, i128, i128) {
    (
        i128::from(label.n()),
        i128::from(label.q()),
        i128::from(label.j()),
        i128::from(label.i()),
        i128::from(label.p()),
    )
}

pub fn operator_norm_squares(label: &RuminLabel) -> Result<OperatorNormSquares, SpectrumError> {
    if !matches!(label.case(), LabelCase::II | LabelCase::V) {
        return Err(SpectrumError::NotCaseIIOrV(*label));
    }
    let (n, q, j, i, p) = split_parts(label);
    let d = 2 * (n - i - j);
    Ok(OperatorNormSquares {
        holomorphic: Ratio::new((p + i) * (q + n - i), d),
        antiholomorphic: Ratio::new((q + j) * (p + n - j), d),
    })
}

/// `(‖∂_b‖² + ‖∂̄_b‖²)²`.
pub fn norm_route_eigenvalue(label: &RuminLabel) -> Result<Eigenvalue, SpectrumError> {
    let ops = operator_norm_squares(label)?;
    let sum = ops.holomorphic + ops.antiholomorphic;
    Ok(Eigenvalue::new(sum * sum))
}

/// The middle-degree computation for a Case V label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedRoute {
    pub eigenvalue: Eigenvalue,
    /// `(q+j-i-p)²/4 + (p+i)(q+n-i)(q+j)(p+n-j)`, the expanded form of the
    /// same quantity.
    pub identity_value: BigRational,
}

pub fn case_v_mixed_eigenvalue(label: &RuminLabel) -> Result<MixedRoute, SpectrumError> {
    if label.case() != LabelCase::V {
        return Err(SpectrumError::NotCaseV(*label));
    }
    let ops = operator_norm_squares(label)?;
    let big = |r: Ratio<i128>| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
    let (a2, b2) = (big(ops.holomorphic), big(ops.antiholomorphic));
    let (n, q, j, i, p) = split_parts(label);

    let c = BigRational::new(BigInt::from(p + i - j - q), BigInt::from(2));
    let two = int(2);
    let a = &c - &two * &a2;
    let b = &c + &two * &b2;
    let value = (&a * &a * &b2 + &b * &b * &a2) / (&a2 + &b2);

    let lie = BigInt::from(q + j - i - p);
    let identity_value = BigRational::new(&lie * &lie, BigInt::from(4))
        + BigRational::from_integer(BigInt::from((p + i) * (q + n - i)) * BigInt::from((q + j) * (p + n - j)));

    let eigenvalue = Eigenvalue::new(Ratio::new(
        value.numer().to_i128().expect("eigenvalue fits in i128"),
        value.denom().to_i128().expect("eigenvalue fits in i128"),
    ));
    Ok(MixedRoute {
        eigenvalue,
        identity_value,
    })
}

/// Scalar by which `L_T` acts on `Ψ_{(q,j,i,p)}`.
pub fn lie_derivative_eigenvalue(label: &RuminLabel) -> i64 {
    label.p() + i64::from(label.i()) - i64::from(label.j()) - label.q()
}

/// Operator norms recovered from ratios of neighbouring block norms:
/// `‖∂_b‖² = (p+i)²/(n-i-j) · ‖ψ^{(i+1,j)}‖²/‖ψ^{(i,j)}‖²` and its conjugate.
///
/// A side is `None` when one of its norms has no formula.
pub fn norm_ratio_operator_norms(
    label: &RuminLabel,
) -> (Option<BigRational>, Option<BigRational>) {
    let (n, q, j, i, p) = (label.n(), label.q(), label.j(), label.i(), label.p());
    let d = int(i64::from(n) - i64::from(i) - i64::from(j));
    if d.is_zero() {
        return (None, None);
    }
    let base = match squared_norm(label, Bidegree::new(i, j)) {
        Ok(b) => b,
        Err(_) => return (None, None),
    };
    let side = |target: Bidegree, weight: i64| {
        squared_norm(label, target)
            .ok()
            .map(|num| int(weight) * int(weight) / &d * num / &base)
    };
    let a = side(Bidegree::new(i + 1, j), p + i64::from(i));
    let b = side(Bidegree::new(i, j + 1), q + i64::from(j));
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::eigenvalue_formula;

    fn label(n: u32, q: i64, j: u32, i: u32, p: i64) -> RuminLabel {
        RuminLabel::new(n, q, j, i, p).unwrap()
    }

    fn r(num: i128, den: i128) -> Ratio<i128> {
        Ratio::new(num, den)
    }

    fn big(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn base_norm_example() {
        let l = label(1, 1, 0, 0, 1);
        assert_eq!(squared_norm(&l, Bidegree::new(0, 0)).unwrap(), big(2, 3));
    }

    #[test]
    fn side_condition_on_holomorphic_step() {
        let l = label(3, 2, 0, 1, 2);
        assert!(squared_norm(&l, Bidegree::new(2, 0)).is_err());
        let l = label(3, 2, 1, 1, 2);
        let ratio = squared_norm(&l, Bidegree::new(2, 1)).unwrap()
            / squared_norm(&l, Bidegree::new(1, 1)).unwrap();
        // (q+n-i) / (2(p+i))
        assert_eq!(ratio, big(4, 6));
    }

    #[test]
    fn operator_norm_examples() {
        let ops = operator_norm_squares(&label(1, 1, 0, 0, 1)).unwrap();
        assert_eq!((ops.holomorphic, ops.antiholomorphic), (r(1, 1), r(1, 1)));
        let ops = operator_norm_squares(&label(2, 2, 1, 0, 1)).unwrap();
        assert_eq!((ops.holomorphic, ops.antiholomorphic), (r(2, 1), r(3, 1)));
        assert_eq!(
            norm_route_eigenvalue(&label(2, 2, 1, 0, 1)).unwrap(),
            eigenvalue_formula(&label(2, 2, 1, 0, 1))
        );
        assert!(operator_norm_squares(&label(1, 0, 0, 0, 1)).is_err());
    }

    #[test]
    fn mixed_route_example() {
        let route = case_v_mixed_eigenvalue(&label(1, 3, 0, 0, 2)).unwrap();
        assert_eq!(route.eigenvalue, Eigenvalue::new(r(289, 4)));
        assert_eq!(route.identity_value, big(289, 4));
        assert!(case_v_mixed_eigenvalue(&label(2, 1, 0, 0, 1)).is_err());
    }

    #[test]
    fn lie_derivative_example() {
        assert_eq!(lie_derivative_eigenvalue(&label(2, 1, 0, 1, 3)), 3);
    }

    #[test]
    fn ratio_route_matches_operator_norms() {
        for n in 1..=5u32 {
            for i in 0..n {
                for j in 0..n - i {
                    for q in 1..=4 {
                        for p in 1..=4 {
                            let l = label(n, q, j, i, p);
                            let ops = operator_norm_squares(&l).unwrap();
                            let lift = |x: Ratio<i128>| {
                                BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
                            };
                            let (a, b) = norm_ratio_operator_norms(&l);
                            assert_eq!(a.is_some(), j > 0);
                            assert_eq!(b.is_some(), i > 0);
                            if let Some(a) = a {
                                assert_eq!(a, lift(ops.holomorphic));
                            }
                            if let Some(b) = b {
                                assert_eq!(b, lift(ops.antiholomorphic));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_ratio_gives_half_weight() {
        let l = label(3, 0, 0, 1, 4);
        let (a, b) = norm_ratio_operator_norms(&l);
        assert_eq!(a, Some(big(5, 2)));
        assert!(b.is_none());
        let l = label(3, 2, 2, 0, 0);
        let (a, b) = norm_ratio_operator_norms(&l);
        assert!(a.is_none());
        assert_eq!(b, Some(big(4, 2)));
    }
}
