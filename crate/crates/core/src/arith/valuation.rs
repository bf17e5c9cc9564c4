use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{fmt_rat, is_prime, parse_rat, Int, Rat};
use crate::{Error, Result};

/// Extended valuation: a finite rational value or `Infinity` (the valuation of zero).
///
/// The derived order puts `Infinity` above every finite value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtVal {
    Finite(Rat),
    Infinity,
}

impl ExtVal {
    pub fn int(v: i64) -> Self {
        ExtVal::Finite(Rat::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        ExtVal::int(0)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtVal::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtVal::Finite(v) => Some(v),
            ExtVal::Infinity => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtVal::Finite(v) if *v < Rat::zero())
    }

    pub fn is_positive(&self) -> bool {
        match self {
            ExtVal::Finite(v) => *v > Rat::zero(),
            ExtVal::Infinity => true,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtVal::Finite(v) if v.is_zero())
    }

    /// `n * self` for a positive integer multiplier.
    pub fn times(&self, n: u64) -> ExtVal {
        match self {
            ExtVal::Finite(v) => ExtVal::Finite(v * Rat::from_integer(n.into())),
            ExtVal::Infinity => ExtVal::Infinity,
        }
    }
}

impl From<Rat> for ExtVal {
    fn from(v: Rat) -> Self {
        ExtVal::Finite(v)
    }
}

impl Add for &ExtVal {
    type Output = ExtVal;
    fn add(self, rhs: &ExtVal) -> ExtVal {
        match (self, rhs) {
            (ExtVal::Finite(a), ExtVal::Finite(b)) => ExtVal::Finite(a + b),
            _ => ExtVal::Infinity,
        }
    }
}

impl Add for ExtVal {
    type Output = ExtVal;
    fn add(self, rhs: ExtVal) -> ExtVal {
        &self + &rhs
    }
}

impl Mul<u64> for &ExtVal {
    type Output = ExtVal;
    fn mul(self, n: u64) -> ExtVal {
        self.times(n)
    }
}

impl fmt::Display for ExtVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtVal::Finite(v) => f.write_str(&fmt_rat(v)),
            ExtVal::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtVal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" | "\u{221e}" => Ok(ExtVal::Infinity),
            other => parse_rat(other).map(ExtVal::Finite),
        }
    }
}

impl Serialize for ExtVal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtVal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exponent of `p` in the nonzero integer `n`; `None` for `n = 0`.
///
/// Strips `p, p^2, p^4, ...` and then walks back down, so large valuations cost
/// a logarithmic number of divisions.
pub fn int_val(n: &Int, p: &Int) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.clone();
    let mut pows = vec![p.clone()];
    let mut v = 0u64;
    loop {
        let top = pows.last().expect("nonempty");
        let (q, r) = m.div_rem(top);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1 << (pows.len() - 1);
        let sq = top * top;
        pows.push(sq);
    }
    for i in (0..pows.len() - 1).rev() {
        let (q, r) = m.div_rem(&pows[i]);
        if r.is_zero() {
            m = q;
            v += 1 << i;
        }
    }
    Some(v)
}

/// `v_p(x)` without checking that `p` is prime.
pub fn val_p_unchecked(x: &Rat, p: &Int) -> ExtVal {
    match int_val(x.numer(), p) {
        None => ExtVal::Infinity,
        Some(vn) => {
            let vd = int_val(x.denom(), p).unwrap_or(0);
            ExtVal::int(vn as i64 - vd as i64)
        }
    }
}

/// Normalized p-adic valuation of a rational; `v_p(0) = Infinity`.
pub fn val_p(x: &Rat, p: &Int) -> Result<ExtVal> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("valuation needs a prime, got {p}")));
    }
    Ok(val_p_unchecked(x, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn v(x: Rat, p: i64) -> ExtVal {
        val_p(&x, &Int::from(p)).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(v(rat(25, 1), 5), ExtVal::int(2));
        assert_eq!(v(rat(0, 1), 7), ExtVal::Infinity);
        assert_eq!(v(rat(6, 5), 5), ExtVal::int(-1));
        assert!(val_p(&rat(6, 5), &Int::from(4)).is_err());
    }

    #[test]
    fn large_valuations() {
        let p = Int::from(3);
        let x = num_traits::pow(p.clone(), 6561) * Int::from(10);
        assert_eq!(int_val(&x, &p), Some(6561));
        assert_eq!(int_val(&Int::from(-81), &p), Some(4));
        assert_eq!(int_val(&Int::from(7), &p), Some(0));
    }

    #[test]
    fn ordering_and_arithmetic() {
        assert!(ExtVal::Infinity > ExtVal::int(1_000_000));
        assert!(ExtVal::int(-3) < ExtVal::int(2));
        assert_eq!(&ExtVal::int(2) + &ExtVal::Infinity, ExtVal::Infinity);
        assert_eq!(ExtVal::int(-2).times(3), ExtVal::int(-6));
        assert_eq!("inf".parse::<ExtVal>().unwrap(), ExtVal::Infinity);
        assert_eq!("-1/2".parse::<ExtVal>().unwrap(), ExtVal::Finite(rat(-1, 2)));
        assert_eq!(ExtVal::Finite(rat(3, 6)).to_string(), "1/2");
    }

    const PRIMES: [i64; 25] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97,
    ];

    proptest! {
        #[test]
        fn valuation_is_a_valuation(
            (an, ad) in (-5000i64..5000, 1i64..5000),
            (bn, bd) in (-5000i64..5000, 1i64..5000),
            pi in 0usize..PRIMES.len(),
        ) {
            let p = PRIMES[pi];
            let x = rat(an, ad);
            let y = rat(bn, bd);
            let (vx, vy) = (v(x.clone(), p), v(y.clone(), p));
            prop_assert_eq!(v(&x * &y, p), &vx + &vy);
            let vs = v(&x + &y, p);
            prop_assert!(vs >= vx.clone().min(vy.clone()));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
        }
    }
}
