use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::ring::{Field, Rationals, Ring};
use crate::arith::{Int, Rat};
use crate::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone)]
pub struct UniPoly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.fmt_var("x"))
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn from_ints(ring: R, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| ring.from_i64(c)).collect();
        UniPoly::new(ring, cs)
    }

    pub fn zero(ring: R) -> Self {
        UniPoly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        UniPoly::new(ring, vec![one])
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        UniPoly::new(ring, vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(ring: R, c: R::Elem, n: usize) -> Self {
        let mut coeffs = vec![ring.zero(); n];
        coeffs.push(c);
        UniPoly::new(ring, coeffs)
    }

    /// The variable `x`.
    pub fn x(ring: R) -> Self {
        let one = ring.one();
        UniPoly::monomial(ring, one, 1)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Order of vanishing at `x = 0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.ring.is_zero(c))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "polynomial operands over different coefficient domains: {:?} vs {:?}",
                self.ring, other.ring
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => self.ring.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(UniPoly::new(self.ring.clone(), cs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero(self.ring.clone()));
        }
        let r = &self.ring;
        let mut cs = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !r.is_zero(b) {
                    cs[i + j] = r.add(&cs[i + j], &r.mul(a, b));
                }
            }
        }
        Ok(UniPoly::new(r.clone(), cs))
    }

    fn neg_ref(&self) -> Self {
        let cs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        UniPoly { ring: self.ring.clone(), coeffs: cs }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let cs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        UniPoly::new(self.ring.clone(), cs)
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut cs = vec![self.ring.zero(); n];
        cs.extend(self.coeffs.iter().cloned());
        UniPoly { ring: self.ring.clone(), coeffs: cs }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = UniPoly::one(self.ring.clone());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.checked_compose(g).expect("compose over mismatched domains")
    }

    pub fn checked_compose(&self, g: &Self) -> Result<Self> {
        self.same_ring(g)?;
        let mut acc = UniPoly::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(self.ring.clone(), c.clone());
        }
        Ok(acc)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(&r.from_i64(i as i64), c))
            .collect();
        UniPoly::new(r.clone(), cs)
    }

    /// Maps coefficients into another ring; `None` if any coefficient has no image.
    pub fn try_map<S: Ring>(
        &self,
        target: &S,
        f: impl Fn(&R::Elem) -> Option<S::Elem>,
    ) -> Option<UniPoly<S>> {
        let cs = self.coeffs.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(UniPoly::new(target.clone(), cs))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let cs = self.ring.fmt_elem(c);
            let cs = if cs.contains([' ', '+']) || cs[1..].contains('-') {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*{var}"),
                _ => format!("{cs}*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl<R: Field> UniPoly<R> {
    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_ring(divisor)?;
        let r = &self.ring;
        let lead = divisor
            .leading()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let inv = r.inv(lead).expect("nonzero leading coefficient is invertible");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(r.clone()), self.clone()));
        }
        let mut quot = vec![r.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = r.mul(&rem[i + dd], &inv);
            if r.is_zero(&q) {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = r.sub(&rem[i + j], &r.mul(&q, b));
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(r.clone(), quot), UniPoly::new(r.clone(), rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.ring.inv(l).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^n mod modulus`.
    pub fn pow_mod(&self, mut n: u128, modulus: &Self) -> Result<Self> {
        let mut acc = UniPoly::one(self.ring.clone()).div_rem(modulus)?.1;
        let mut base = self.div_rem(modulus)?.1;
        while n > 0 {
            if n & 1 == 1 {
                acc = (&acc * &base).div_rem(modulus)?.1;
            }
            n >>= 1;
            if n > 0 {
                base = (&base * &base).div_rem(modulus)?.1;
            }
        }
        Ok(acc)
    }
}

impl UniPoly<Rationals> {
    pub fn from_rats(coeffs: Vec<Rat>) -> Self {
        UniPoly::new(Rationals, coeffs)
    }

    /// Reduction of every coefficient into `field`; fails if a denominator is not
    /// invertible there.
    pub fn reduce<F: Ring>(&self, field: &F) -> Result<UniPoly<F>> {
        self.try_map(field, |c| field.from_rat(c)).ok_or_else(|| {
            Error::Domain(format!(
                "coefficient not integral at characteristic {}",
                field.characteristic()
            ))
        })
    }
}

impl serde::Serialize for UniPoly<Rationals> {
    /// Sparse `{"i": "num/den"}` map over nonzero coefficients.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let nonzero: Vec<(usize, &Rat)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut map = s.serialize_map(Some(nonzero.len()))?;
        for (i, c) in nonzero {
            map.serialize_entry(&i.to_string(), &crate::arith::fmt_rat(c))?;
        }
        map.end()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: Ring> $tr<&UniPoly<R>> for &UniPoly<R> {
            type Output = UniPoly<R>;
            fn $method(self, rhs: &UniPoly<R>) -> UniPoly<R> {
                self.$checked(rhs).expect("polynomial operands over the same domain")
            }
        }
        impl<R: Ring> $tr<UniPoly<R>> for UniPoly<R> {
            type Output = UniPoly<R>;
            fn $method(self, rhs: UniPoly<R>) -> UniPoly<R> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<R: Ring> Neg for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        self.neg_ref()
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        self.neg_ref()
    }
}

/// The polynomial ring `R[x]` used as a coefficient ring (for bivariate
/// elimination and symbolic parameters).
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<R: Ring> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// The generator `x` of `R[x]`.
    pub fn var(&self) -> UniPoly<R> {
        UniPoly::x(self.base.clone())
    }
}

impl<R: Field> Ring for PolyRing<R> {
    type Elem = UniPoly<R>;

    fn zero(&self) -> UniPoly<R> {
        UniPoly::zero(self.base.clone())
    }
    fn one(&self) -> UniPoly<R> {
        UniPoly::one(self.base.clone())
    }
    fn is_zero(&self, x: &UniPoly<R>) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &UniPoly<R>, y: &UniPoly<R>) -> UniPoly<R> {
        x + y
    }
    fn neg(&self, x: &UniPoly<R>) -> UniPoly<R> {
        -x
    }
    fn sub(&self, x: &UniPoly<R>, y: &UniPoly<R>) -> UniPoly<R> {
        x - y
    }
    fn mul(&self, x: &UniPoly<R>, y: &UniPoly<R>) -> UniPoly<R> {
        x * y
    }
    fn from_int(&self, n: &Int) -> UniPoly<R> {
        UniPoly::constant(self.base.clone(), self.base.from_int(n))
    }
    fn from_rat(&self, x: &Rat) -> Option<UniPoly<R>> {
        Some(UniPoly::constant(self.base.clone(), self.base.from_rat(x)?))
    }
    fn exact_div(&self, x: &UniPoly<R>, y: &UniPoly<R>) -> Option<UniPoly<R>> {
        let (q, r) = x.div_rem(y).ok()?;
        r.is_zero().then_some(q)
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn fmt_elem(&self, x: &UniPoly<R>) -> String {
        x.fmt_var("t")
    }
}
