//! Even Bernoulli numbers from tangent numbers, computed once and cached.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::race::OnceBox;

/// Largest `j` for which `B_{2j}` is cached.
pub const MAX_INDEX: usize = 128;

static TABLE: OnceBox<Vec<BigRational>> = OnceBox::new();

// Brent–Zimmermann: integer-only tangent numbers T_1..T_m, then
// B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1)).
fn compute(m: usize) -> Vec<BigRational> {
    let mut t: Vec<BigUint> = alloc::vec![BigUint::zero(); m + 1];
    if m >= 1 {
        t[1] = BigUint::one();
    }
    for k in 2..=m {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=m {
        for j in k..=m {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }

    let mut out = Vec::with_capacity(m + 1);
    out.push(BigRational::one());
    for (k, tk) in t.into_iter().enumerate().skip(1) {
        let four_k = BigInt::one() << (2 * k);
        let num = BigInt::from(tk) * (2 * k);
        let b = BigRational::new(num, &four_k * (&four_k - 1u8));
        out.push(if k % 2 == 1 { b } else { -b });
    }
    out
}

fn table() -> &'static [BigRational] {
    TABLE.get_or_init(|| Box::new(compute(MAX_INDEX)))
}

/// `B_{2j}` for `0 ≤ j ≤ MAX_INDEX`.
pub fn bernoulli_even(j: usize) -> &'static BigRational {
    &table()[j]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    // B_m from Σ_{k<m+1} C(m+1,k) B_k = 0, all indices.
    fn recurrence(m: usize) -> Vec<BigRational> {
        let mut b = alloc::vec![BigRational::one()];
        for n in 1..=m {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * (n + 1 - k) / (k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b
    }

    #[test]
    fn known_values() {
        let want = [q(1, 6), q(-1, 30), q(1, 42), q(-1, 30), q(5, 66), q(-691, 2730)];
        for (j, w) in want.iter().enumerate() {
            assert_eq!(bernoulli_even(j + 1), w);
        }
    }

    #[test]
    fn tangent_numbers_match_recurrence() {
        let r = recurrence(80);
        for j in 1..=40 {
            assert_eq!(bernoulli_even(j), &r[2 * j], "B_{}", 2 * j);
        }
    }

    #[test]
    fn concurrent_first_use() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| bernoulli_even(MAX_INDEX).clone()))
            .collect();
        let values: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }
}
