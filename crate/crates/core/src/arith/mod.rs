//! Exact integer and rational substrate: primality, factorization and p-adic valuations.
//!
//! Integers and rationals are the `num` big-number types. Nothing in this crate ever
//! rounds; every value is exact.

mod primes;
mod valuation;

pub use primes::{factor, factor_u64, is_prime, is_prime_u64, Factorization};
pub use valuation::{int_val, val_p, val_p_unchecked, ExtVal};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * Int::from(i))
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// `ceil((d - 2) / 2)`, the largest canonical `k` for degree `d`.
pub fn canonical_k_bound(d: u64) -> u64 {
    d.saturating_sub(2).div_ceil(2)
}

/// Parses `"n"` or `"n/d"` into an exact rational.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let s = s.trim();
    let bad = || crate::Error::Domain(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats a rational as `"n"` or `"n/d"`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serde adapters that write exact numbers as decimal or `"n/d"` strings.
pub mod exact_serde {
    use super::{fmt_rat, Int, Rat};
    use serde::Serializer;

    pub fn rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn rats<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(fmt_rat))
    }

    pub fn int<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: u128) -> Option<u128> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// `gcd` of the numerators divided by `lcm` of the denominators: the positive
/// rational `g` with `x_i / g` integral and coprime.
pub fn rat_content<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Rat {
    let mut num = Int::zero();
    let mut den = Int::one();
    for x in xs {
        num = num.gcd(x.numer());
        den = den.lcm(x.denom());
    }
    if num.is_zero() {
        Rat::one()
    } else {
        Rat::new(num.abs(), den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(factorial(0), Int::one());
        assert_eq!(factorial(6), Int::from(720));
        assert_eq!(binomial(7, 5), Int::from(21));
        assert_eq!(binomial(7, 4), Int::from(35));
        assert_eq!(binomial(3, 5), Int::zero());
    }

    #[test]
    fn canonical_bound() {
        assert_eq!(canonical_k_bound(3), 1);
        assert_eq!(canonical_k_bound(10), 4);
        assert_eq!(canonical_k_bound(27), 13);
        assert_eq!(canonical_k_bound(7), 3);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("12").unwrap(), rat(12, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rat(&rat(4, 2)), "2");
    }

    #[test]
    fn content_of_rationals() {
        let xs = [rat(2, 3), rat(4, 9), rat(-6, 1)];
        assert_eq!(rat_content(xs.iter()), rat(2, 9));
    }
}
