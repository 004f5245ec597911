//! Thin helpers around [`astro_float::BigFloat`]: exact conversions in and out
//! of the big-integer types and rounding to `f64`.

use alloc::string::String;

use astro_float::{BigFloat, Consts, Exponent, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;

pub const RM: RoundingMode = RoundingMode::ToEven;

const WORD_BITS: usize = Word::BITS as usize;

/// A constant cache. Only fails if allocation fails.
pub fn consts() -> Consts {
    Consts::new().expect("allocating the constant cache")
}

pub fn int(x: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(x, p)
}

/// Exact for integers whose bit length is at most `p`, otherwise rounded to `p` bits.
pub fn from_biguint(x: &BigUint, p: usize) -> BigFloat {
    #[cfg(target_pointer_width = "64")]
    let words: alloc::vec::Vec<Word> = x.to_u64_digits();
    #[cfg(not(target_pointer_width = "64"))]
    let words: alloc::vec::Vec<Word> = x.to_u32_digits();

    if words.is_empty() {
        return BigFloat::from_word(0, p);
    }
    let e = (words.len() * WORD_BITS) as Exponent;
    let mut out = BigFloat::from_words(&words, Sign::Pos, e);
    if out.mantissa_max_bit_len().unwrap_or(0) != p {
        out.set_precision(p, RM).expect("positive precision");
    }
    out
}

pub fn from_bigint(x: &BigInt, p: usize) -> BigFloat {
    let magnitude = from_biguint(x.magnitude(), p);
    if x.is_negative() {
        magnitude.neg()
    } else {
        magnitude
    }
}

pub fn from_rational(x: &BigRational, p: usize) -> BigFloat {
    from_bigint(x.numer(), p).div(&from_bigint(x.denom(), p), p, RM)
}

/// Nearest `f64` (up to one extra rounding of the top word).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let Some(&top) = words.last() else {
        return 0.0;
    };
    if top == 0 {
        return 0.0;
    }
    // The mantissa is 0.b₁b₂… with the most significant word last.
    let mut v = libm::ldexp(top as f64, e - WORD_BITS as i32);
    if words.len() > 1 {
        let next = words[words.len() - 2];
        v += libm::ldexp(next as f64, e - 2 * WORD_BITS as i32);
    }
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Decimal rendering with every digit the mantissa supports.
pub fn to_decimal_string(x: &BigFloat, cc: &mut Consts) -> String {
    x.format(Radix::Dec, RM, cc)
        .unwrap_or_else(|_| String::from("NaN"))
}

/// `2^e` at precision `p`.
pub fn pow2(e: i32, p: usize) -> BigFloat {
    let m = pow2_unsigned(e.unsigned_abs(), p);
    if e >= 0 {
        m
    } else {
        BigFloat::from_word(1, p).div(&m, p, RM)
    }
}

fn pow2_unsigned(e: u32, p: usize) -> BigFloat {
    from_biguint(&(BigUint::from(1u8) << e), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Num;

    #[test]
    fn round_trip_small_values() {
        for &x in &[0.0, 1.0, -2.5, 0.1, 1e-300, 6.02e23, -7.0 / 3.0] {
            assert_eq!(to_f64(&BigFloat::from_f64(x, 128)), x);
        }
    }

    #[test]
    fn big_integers_are_exact() {
        let x = BigUint::from_str_radix("123456789012345678901234567890123456789", 10).unwrap();
        let f = from_biguint(&x, 256);
        let back = f.sub(&from_biguint(&(x - 1u8), 256), 256, RM);
        assert_eq!(to_f64(&back), 1.0);
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(BigInt::from(-1), BigInt::from(3));
        assert_eq!(to_f64(&from_rational(&r, 128)), -1.0 / 3.0);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(to_f64(&pow2(10, 64)), 1024.0);
        assert_eq!(to_f64(&pow2(-3, 64)), 0.125);
    }

    #[test]
    fn decimal_string_has_many_digits() {
        let mut cc = consts();
        let pi = cc.pi(256, RM);
        let s = to_decimal_string(&pi, &mut cc);
        assert!(s.contains("14159265358979323846264338327950288"), "{s}");
    }
}
