use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::{fmt_rat, Int, Rat};

/// A commutative coefficient ring. Elements do not carry their ring, so every
/// operation goes through the ring value (which is cheap to clone).
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(&self, n: &Int) -> Self::Elem;

    /// Image of a rational, or `None` when its denominator is not invertible.
    fn from_rat(&self, x: &Rat) -> Option<Self::Elem>;

    /// `q` with `q * y == x`, if one exists. Needed by fraction-free elimination.
    fn exact_div(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;

    /// Characteristic of the ring (0 for the rationals).
    fn characteristic(&self) -> u64;

    fn fmt_elem(&self, x: &Self::Elem) -> String;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_one(&self, x: &Self::Elem) -> bool {
        *x == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&Int::from(n))
    }

    /// Integer numerators over one common denominator, when the ring admits it.
    /// Polynomial products use this to skip per-term normalization.
    fn common_denominator<'a>(&self, _xs: impl Iterator<Item = &'a Self::Elem>) -> Option<(Vec<Int>, Int)>
    where
        Self::Elem: 'a,
    {
        None
    }

    fn from_fraction(&self, n: Int, d: &Int) -> Self::Elem {
        self.from_rat(&Rat::new(n, d.clone())).expect("quotient lies in the ring")
    }

    fn pow(&self, x: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = x.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, x: &Rat) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Rat, y: &Rat) -> Rat {
        x + y
    }
    fn neg(&self, x: &Rat) -> Rat {
        -x
    }
    fn sub(&self, x: &Rat, y: &Rat) -> Rat {
        x - y
    }
    fn mul(&self, x: &Rat, y: &Rat) -> Rat {
        x * y
    }
    fn from_int(&self, n: &Int) -> Rat {
        Rat::from_integer(n.clone())
    }
    fn from_rat(&self, x: &Rat) -> Option<Rat> {
        Some(x.clone())
    }
    fn exact_div(&self, x: &Rat, y: &Rat) -> Option<Rat> {
        (!y.is_zero()).then(|| x / y)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn fmt_elem(&self, x: &Rat) -> String {
        fmt_rat(x)
    }
    fn common_denominator<'a>(&self, xs: impl Iterator<Item = &'a Rat>) -> Option<(Vec<Int>, Int)> {
        let xs: Vec<&Rat> = xs.collect();
        let den = xs.iter().fold(Int::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let nums = xs.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Some((nums, den))
    }
}

impl Field for Rationals {
    fn inv(&self, x: &Rat) -> Option<Rat> {
        (!x.is_zero()).then(|| x.recip())
    }
}
