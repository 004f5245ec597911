//! Elementary symmetric polynomials of the shifted ranges `(n-i, …, -i)` and
//! the polynomial identities used to continue the torsion function.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

/// `e_l(values)`; zero when `l` exceeds the number of values.
pub fn elementary_symmetric(values: &[BigRational], l: usize) -> BigRational {
    if l > values.len() {
        return BigRational::zero();
    }
    // e[k] after processing a prefix of the values
    let mut e = alloc::vec![BigRational::zero(); l + 1];
    e[0] = BigRational::one();
    for x in values {
        for k in (1..=l).rev() {
            let term = &e[k - 1] * x;
            e[k] += term;
        }
    }
    e.swap_remove(l)
}

/// `(n-i, n-i-1, …, -i)`.
pub fn shifted_range(n: u32, i: u32) -> Vec<BigRational> {
    let (n, i) = (i64::from(n), i64::from(i));
    (0..=n)
        .map(|r| BigRational::from_integer(BigInt::from(n - i - r)))
        .collect()
}

fn shifted_range_int(n: u32, i: u32) -> Vec<BigInt> {
    let (n, i) = (i64::from(n), i64::from(i));
    (0..=n).map(|r| BigInt::from(n - i - r)).collect()
}

fn elementary_symmetric_int(values: &[BigInt], l: usize) -> BigInt {
    if l > values.len() {
        return BigInt::zero();
    }
    let mut e = alloc::vec![BigInt::zero(); l + 1];
    e[0] = BigInt::one();
    for x in values {
        for k in (1..=l).rev() {
            let term = &e[k - 1] * x;
            e[k] += term;
        }
    }
    e.swap_remove(l)
}

fn factorial(m: u32) -> BigInt {
    (2..=m).fold(BigInt::one(), |acc, k| acc * k)
}

/// `dim V(0_{n-i}, -1_i, -p)` as a polynomial in `x = p + i`:
/// `C(n,i)/n! · Σ_{l=1}^{n+1} e_{n+1-l}(n-i, …, -i) x^{l-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionPolynomial {
    pub n: u32,
    pub i: u32,
    /// Coefficient of `x^{l-1}` at index `l-1`.
    pub coefficients: Vec<BigRational>,
}

impl DimensionPolynomial {
    pub fn new(n: u32, i: u32) -> Self {
        assert!(i <= n, "i must lie in 0..=n");
        let values = shifted_range(n, i);
        let scale = BigRational::new(
            BigInt::from(binomial(BigUint::from(n), BigUint::from(i))),
            factorial(n),
        );
        let coefficients = (1..=n as usize + 1)
            .map(|l| &scale * elementary_symmetric(&values, n as usize + 1 - l))
            .collect();
        Self { n, i, coefficients }
    }

    pub fn eval(&self, p: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(p + i64::from(self.i)));
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }
}

/// `c_l = Σ_i (-1)^i C(n,i) e_{n+1-l}(n-i, …, -i)` for `l = 1..=n+1`.
pub fn c_coefficients(n: u32) -> Vec<BigInt> {
    let ranges: Vec<Vec<BigInt>> = (0..=n).map(|i| shifted_range_int(n, i)).collect();
    (1..=n as usize + 1)
        .map(|l| {
            ranges
                .iter()
                .enumerate()
                .map(|(i, values)| {
                    let b = BigInt::from(binomial(u64::from(n), i as u64));
                    let e = elementary_symmetric_int(values, n as usize + 1 - l);
                    if i % 2 == 0 {
                        b * e
                    } else {
                        -(b * e)
                    }
                })
                .sum()
        })
        .collect()
}

/// `Σ_l c_l k^l`.
pub fn sigma(n: u32, k: u64) -> BigInt {
    let k = BigInt::from(k);
    c_coefficients(n)
        .into_iter()
        .enumerate()
        .map(|(idx, c)| c * Pow::pow(&k, idx as u32 + 1))
        .sum()
}

/// `Σ_{l=1}^{n+1} e_{n+1-l}(n-i, …, -i) k^l` at integer `k`.
pub fn correction_polynomial(n: u32, i: u32, k: i64) -> BigInt {
    let values = shifted_range_int(n, i);
    let k = BigInt::from(k);
    (1..=n as usize + 1)
        .map(|l| elementary_symmetric_int(&values, n as usize + 1 - l) * Pow::pow(&k, l as u32))
        .sum()
}

/// The partial-sum correction `Σ_{k=1}^{i} Σ_l e_{n+1-l} k^{-(2s-l+1)}` vanishes.
///
/// The polynomial identity is checked exactly for `k = 1..=i`; each `s` in
/// `s_samples` is also checked numerically against a relative tolerance.
pub fn vanishing_correction_check(n: u32, i: u32, s_samples: &[f64]) -> bool {
    assert!(i <= n, "i must lie in 0..=n");
    let exact = (1..=i64::from(i)).all(|k| correction_polynomial(n, i, k).is_zero());
    let values: Vec<f64> = shifted_range_int(n, i)
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::NAN))
        .collect();
    let numeric = s_samples.iter().all(|&s| {
        let (mut total, mut scale) = (0.0f64, 0.0f64);
        for k in 1..=i {
            let kf = f64::from(k);
            for l in 1..=n as usize + 1 {
                let e = elementary_symmetric_f64(&values, n as usize + 1 - l);
                let term = e * libm::pow(kf, -(2.0 * s - l as f64 + 1.0));
                total += term;
                scale += term.abs();
            }
        }
        total.abs() <= 1e-9 * scale.max(1.0)
    });
    exact && numeric
}

fn elementary_symmetric_f64(values: &[f64], l: usize) -> f64 {
    let mut e = alloc::vec![0.0; l + 1];
    e[0] = 1.0;
    for x in values {
        for k in (1..=l).rev() {
            e[k] += e[k - 1] * x;
        }
    }
    e[l]
}
