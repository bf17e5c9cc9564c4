//! Prime fields and their extensions `GF(p^e) = GF(p)[t] / (m(t))`.
//!
//! The modulus `m` is the lexicographically smallest monic irreducible of degree
//! `e`, comparing the coefficient tuple `(m_0, m_1, ..., m_{e-1})` as integers in
//! `[0, p)` with `m_0` most significant. An element is encoded as the integer
//! `sum c_i p^i` of its reduced residue `sum c_i t^i`, which makes the
//! representation canonical and `Copy`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::ring::{Field, Ring};
use super::unipoly::UniPoly;
use crate::arith::{factor_u64, is_prime_u64, Int, Rat};
use crate::{Error, Result};

/// Largest field order this module will construct.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElem(u64);

impl FieldElem {
    pub fn code(self) -> u64 {
        self.0
    }
}

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic modulus, lowest degree first, length `degree + 1`.
    modulus: Vec<u64>,
}

/// Descriptor of `GF(p^e)`; clones share the same modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField(Arc<FieldInner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.degree, self.0.modulus)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub degree: u32,
    pub order: u64,
    pub modulus: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Constructs `GF(p^e)` with the deterministic modulus described in the module docs.
pub fn make_ext_field(p: u64, e: u32) -> Result<FiniteField> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("field characteristic {p} is not prime")));
    }
    if e == 0 {
        return Err(Error::Domain("extension degree must be at least 1".into()));
    }
    let order = p
        .checked_pow(e)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or_else(|| Error::Resource(format!("GF({p}^{e}) exceeds {MAX_FIELD_ORDER}")))?;
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, e)
    };
    Ok(FiniteField(Arc::new(FieldInner { p, degree: e, order, modulus })))
}

/// Candidate monics in the fixed lexicographic order, `m_0` varying slowest.
fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let gfp = make_ext_field(p, 1).expect("prime field");
    let n = p.pow(e);
    for idx in 0..n {
        // Digits of idx, most significant first, assigned to m_0, m_1, ...
        let mut digits = vec![0u64; e as usize];
        let mut rest = idx;
        for slot in digits.iter_mut().rev() {
            *slot = rest % p;
            rest /= p;
        }
        let mut coeffs = digits;
        coeffs.push(1);
        let poly = UniPoly::new(gfp.clone(), coeffs.iter().map(|&c| FieldElem(c)).collect());
        if is_irreducible(&poly) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// Rabin's irreducibility test over a prime field.
pub fn is_irreducible(f: &UniPoly<FiniteField>) -> bool {
    let field = f.ring();
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n as u32,
    };
    let p = field.p() as u128;
    let x = UniPoly::x(field.clone());
    let frob = |k: u32| -> UniPoly<FiniteField> {
        x.pow_mod(p.pow(k), f).expect("nonzero modulus")
    };
    if frob(n) != x.div_rem(f).expect("nonzero").1 {
        return false;
    }
    let primes: Vec<u64> = if n == 1 {
        Vec::new()
    } else {
        factor_u64(n as u64).expect("n >= 2").primes().collect()
    };
    primes.into_iter().all(|q| {
        let h = &frob(n / q as u32) - &x;
        f.gcd(&h).degree() == Some(0)
    })
}

impl FiniteField {
    pub fn prime_field(p: u64) -> Result<Self> {
        make_ext_field(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            degree: self.degree(),
            order: self.order(),
            modulus: self.modulus().to_vec(),
        }
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        x.0 < self.0.order
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.0.order).map(FieldElem)
    }

    /// The element with residue `sum digits[i] t^i`.
    pub fn from_digits(&self, digits: &[u64]) -> Result<FieldElem> {
        if digits.len() > self.0.degree as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(Error::Domain(format!("digits {digits:?} not reduced for {self:?}")));
        }
        Ok(FieldElem(digits.iter().rev().fold(0, |acc, &d| acc * self.0.p + d)))
    }

    pub fn digits(&self, x: FieldElem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.degree as usize);
        let mut v = x.0;
        for _ in 0..self.0.degree {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    /// The class of `t` (for `e = 1` this is `0`, the root of the modulus `t`).
    pub fn generator(&self) -> FieldElem {
        if self.0.degree == 1 {
            FieldElem(0)
        } else {
            FieldElem(self.0.p)
        }
    }

    /// Whether `x` lies in the prime subfield.
    pub fn in_prime_field(&self, x: FieldElem) -> bool {
        x.0 < self.0.p
    }

    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(&x, self.0.p)
    }

    pub fn elem(&self, n: i64) -> FieldElem {
        self.from_i64(n)
    }

    fn mul_digits(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        let e = self.0.degree as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        let m = &self.0.modulus;
        for top in (e..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for k in 0..e {
                let sub = mul_mod(c, m[k], p);
                let idx = top - e + k;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        prod.truncate(e);
        prod
    }

    fn encode(&self, digits: &[u64]) -> FieldElem {
        FieldElem(digits.iter().rev().fold(0, |acc, &d| acc * self.0.p + d))
    }
}

impl Ring for FiniteField {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldElem(0)
    }
    fn one(&self) -> FieldElem {
        FieldElem(1)
    }
    fn is_zero(&self, x: &FieldElem) -> bool {
        x.0 == 0
    }
    fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let p = self.0.p;
        if self.0.degree == 1 {
            return FieldElem((x.0 + y.0) % p);
        }
        let (mut a, mut b) = (x.0, y.0);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.0.degree {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.saturating_mul(p);
        }
        FieldElem(out)
    }
    fn neg(&self, x: &FieldElem) -> FieldElem {
        let p = self.0.p;
        if self.0.degree == 1 {
            return FieldElem((p - x.0) % p);
        }
        let digits: Vec<u64> = self.digits(*x).into_iter().map(|d| (p - d) % p).collect();
        self.encode(&digits)
    }
    fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        if self.0.degree == 1 {
            return FieldElem(mul_mod(x.0, y.0, self.0.p));
        }
        let prod = self.mul_digits(&self.digits(*x), &self.digits(*y));
        self.encode(&prod)
    }
    fn from_int(&self, n: &Int) -> FieldElem {
        let r = n.mod_floor(&Int::from(self.0.p));
        FieldElem(r.to_u64().expect("residue below p"))
    }
    fn from_rat(&self, x: &Rat) -> Option<FieldElem> {
        let den = self.from_int(x.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.from_int(x.numer()), &inv))
    }
    fn exact_div(&self, x: &FieldElem, y: &FieldElem) -> Option<FieldElem> {
        Some(self.mul(x, &self.inv(y)?))
    }
    fn characteristic(&self) -> u64 {
        self.0.p
    }
    fn fmt_elem(&self, x: &FieldElem) -> String {
        if self.0.degree == 1 {
            return x.0.to_string();
        }
        let terms: Vec<String> = self
            .digits(*x)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, d)| match i {
                0 => d.to_string(),
                1 => format!("{d}t"),
                _ => format!("{d}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Field for FiniteField {
    fn inv(&self, x: &FieldElem) -> Option<FieldElem> {
        if x.0 == 0 {
            return None;
        }
        Some(self.pow(x, self.0.order - 2))
    }
}

/// Exhaustive root search: every element `x` of the field with `f(x) = 0`.
pub fn roots_in_field(f: &UniPoly<FiniteField>) -> Result<Vec<FieldElem>> {
    if f.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    Ok(f.ring().elements().filter(|x| f.eval(x).0 == 0).collect())
}

/// Reduction of a rational into the prime field, failing on non-integral input.
pub fn reduce_rat(field: &FiniteField, x: &Rat) -> Result<FieldElem> {
    if x.is_zero() {
        return Ok(FieldElem(0));
    }
    field.from_rat(x).ok_or_else(|| {
        Error::Domain(format!("{x} is not {}-integral", field.p()))
    })
}
