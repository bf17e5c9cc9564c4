use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::ring::{Field, Rationals, Ring};
use super::unipoly::{PolyRing, UniPoly};
use crate::arith::{fmt_rat, Int, Rat};
use crate::{Error, Result};

/// Sparse polynomial in `N` variables. Zero coefficients are never stored.
#[derive(Clone)]
pub struct MultiPoly<R: Ring, const N: usize> {
    ring: R,
    terms: BTreeMap<[u32; N], R::Elem>,
}

/// Bivariate rational polynomial in the parameters `(a, c)`.
pub type BiPoly = MultiPoly<Rationals, 2>;

pub const VAR_A: usize = 0;
pub const VAR_C: usize = 1;

impl<R: Ring, const N: usize> PartialEq for MultiPoly<R, N> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<R: Ring, const N: usize> fmt::Debug for MultiPoly<R, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..N).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "MultiPoly({})", self.fmt_vars(&refs))
    }
}

impl<R: Ring, const N: usize> MultiPoly<R, N> {
    pub fn zero(ring: R) -> Self {
        MultiPoly { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::monomial(ring, c, [0; N])
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::constant(ring, one)
    }

    pub fn monomial(ring: R, c: R::Elem, exps: [u32; N]) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(exps, c);
        }
        MultiPoly { ring, terms }
    }

    /// The `i`-th variable.
    pub fn var(ring: R, i: usize) -> Self {
        let mut exps = [0; N];
        exps[i] = 1;
        let one = ring.one();
        Self::monomial(ring, one, exps)
    }

    pub fn from_terms(ring: R, terms: impl IntoIterator<Item = ([u32; N], R::Elem)>) -> Self {
        let mut out = MultiPoly::zero(ring);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<[u32; N], R::Elem> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: [u32; N]) -> R::Elem {
        self.terms.get(&exps).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    fn add_term(&mut self, exps: [u32; N], c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = self.ring.add(v, c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
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
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let r = &self.ring;
        let lifted = r
            .common_denominator(self.terms.values())
            .zip(r.common_denominator(other.terms.values()));
        if let Some(((na, da), (nb, db))) = lifted {
            let mut acc: HashMap<[u32; N], Int> =
                HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
            for (ea, ca) in self.terms.keys().zip(&na) {
                for (eb, cb) in other.terms.keys().zip(&nb) {
                    let mut e = *ea;
                    for i in 0..N {
                        e[i] += eb[i];
                    }
                    *acc.entry(e).or_insert_with(Int::zero) += ca * cb;
                }
            }
            let den = da * db;
            let terms = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, r.from_fraction(c, &den)))
                .collect();
            return Ok(MultiPoly { ring: r.clone(), terms });
        }
        let mut acc: HashMap<[u32; N], R::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..N {
                    e[i] += eb[i];
                }
                let prod = r.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = r.add(v, &prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !r.is_zero(c)).collect();
        Ok(MultiPoly { ring: r.clone(), terms })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = &self.ring;
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (*e, r.mul(v, c)))
            .filter(|(_, v)| !r.is_zero(v))
            .collect();
        MultiPoly { ring: r.clone(), terms }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = MultiPoly::one(self.ring.clone());
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

    /// Partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let r = &self.ring;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut ne = *e;
                ne[var] -= 1;
                (ne, r.mul(&r.from_i64(e[var] as i64), c))
            })
            .filter(|(_, c)| !r.is_zero(c))
            .collect();
        MultiPoly { ring: r.clone(), terms }
    }

    pub fn eval(&self, point: &[R::Elem; N]) -> R::Elem {
        let r = &self.ring;
        let mut powers: Vec<Vec<R::Elem>> = Vec::with_capacity(N);
        for (i, x) in point.iter().enumerate() {
            let deg = self.degree_in(i).unwrap_or(0) as usize;
            let mut ps = Vec::with_capacity(deg + 1);
            ps.push(r.one());
            for k in 0..deg {
                let next = r.mul(&ps[k], x);
                ps.push(next);
            }
            powers.push(ps);
        }
        self.terms.iter().fold(r.zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for i in 0..N {
                if e[i] > 0 {
                    t = r.mul(&t, &powers[i][e[i] as usize]);
                }
            }
            r.add(&acc, &t)
        })
    }

    /// Evaluates the univariate polynomial `u` at this polynomial (Horner).
    pub fn compose_into(u: &UniPoly<R>, x: &Self) -> Self {
        let ring = x.ring.clone();
        let mut acc = MultiPoly::zero(ring.clone());
        let cs = u.coeffs();
        let mut i = cs.len();
        while i > 0 {
            i -= 1;
            acc = &acc * x;
            acc.add_term([0; N], &cs[i]);
        }
        acc
    }

    pub fn try_map<S: Ring>(
        &self,
        target: &S,
        f: impl Fn(&R::Elem) -> Option<S::Elem>,
    ) -> Option<MultiPoly<S, N>> {
        let mut out = MultiPoly::zero(target.clone());
        for (e, c) in &self.terms {
            let v = f(c)?;
            out.add_term(*e, &v);
        }
        Some(out)
    }

    pub fn fmt_vars(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for i in 0..N {
                match e[i] {
                    0 => {}
                    1 => mono.push(names[i].to_string()),
                    k => mono.push(format!("{}^{k}", names[i])),
                }
            }
            let cs = self.ring.fmt_elem(c);
            parts.push(if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono.join("*")
            } else {
                format!("{cs}*{}", mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

impl<R: Field> MultiPoly<R, 2> {
    /// Views the polynomial as univariate in `var`, with coefficients polynomials in
    /// the other variable.
    pub fn to_univariate_in(&self, var: usize) -> UniPoly<PolyRing<R>> {
        let other = 1 - var;
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<R::Elem>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let bucket = &mut buckets[e[var] as usize];
            let j = e[other] as usize;
            if bucket.len() <= j {
                bucket.resize(j + 1, self.ring.zero());
            }
            bucket[j] = c.clone();
        }
        let ring = PolyRing::new(self.ring.clone());
        let coeffs = buckets
            .into_iter()
            .map(|b| UniPoly::new(self.ring.clone(), b))
            .collect();
        UniPoly::new(ring, coeffs)
    }

    /// Embeds a univariate polynomial as a polynomial in variable `var`.
    pub fn from_univariate(u: &UniPoly<R>, var: usize) -> Self {
        let terms = u.coeffs().iter().enumerate().map(|(i, c)| {
            let mut e = [0; 2];
            e[var] = i as u32;
            (e, c.clone())
        });
        MultiPoly::from_terms(u.ring().clone(), terms)
    }
}

impl BiPoly {
    pub fn a() -> Self {
        MultiPoly::var(Rationals, VAR_A)
    }

    pub fn c() -> Self {
        MultiPoly::var(Rationals, VAR_C)
    }

    pub fn rat(x: Rat) -> Self {
        MultiPoly::constant(Rationals, x)
    }
}

impl<const N: usize> MultiPoly<Rationals, N> {
    /// Reduction of every coefficient into `field`.
    pub fn reduce<F: Ring>(&self, field: &F) -> Result<MultiPoly<F, N>> {
        self.try_map(field, |c| field.from_rat(c)).ok_or_else(|| {
            Error::Domain(format!(
                "coefficient not integral at characteristic {}",
                field.characteristic()
            ))
        })
    }
}

impl<const N: usize> Serialize for MultiPoly<Rationals, N> {
    /// Sparse `{"i,j": "num/den"}` map.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let key: Vec<String> = e.iter().map(u32::to_string).collect();
            map.serialize_entry(&key.join(","), &fmt_rat(c))?;
        }
        map.end()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: Ring, const N: usize> $tr<&MultiPoly<R, N>> for &MultiPoly<R, N> {
            type Output = MultiPoly<R, N>;
            fn $method(self, rhs: &MultiPoly<R, N>) -> MultiPoly<R, N> {
                self.$checked(rhs).expect("polynomial operands over the same domain")
            }
        }
        impl<R: Ring, const N: usize> $tr<MultiPoly<R, N>> for MultiPoly<R, N> {
            type Output = MultiPoly<R, N>;
            fn $method(self, rhs: MultiPoly<R, N>) -> MultiPoly<R, N> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<R: Ring, const N: usize> Neg for &MultiPoly<R, N> {
    type Output = MultiPoly<R, N>;
    fn neg(self) -> MultiPoly<R, N> {
        let r = &self.ring;
        let terms = self.terms.iter().map(|(e, c)| (*e, r.neg(c))).collect();
        MultiPoly { ring: r.clone(), terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::polyring::finite_field::make_ext_field;

    fn q(n: i64) -> BiPoly {
        BiPoly::rat(rat(n, 1))
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let (a, c) = (BiPoly::a(), BiPoly::c());
        let s = &(&a + &c) - &q(1);
        let t = &s - &a;
        assert_eq!(t, &c - &q(1));
        let sq = &s * &s;
        assert_eq!(sq.total_degree(), Some(2));
        assert_eq!(sq.coeff([1, 1]), rat(2, 1));
        assert!((&s - &s).is_zero());
        assert_eq!(s.pow(0), q(1));
    }

    #[test]
    fn partials_and_eval() {
        let (a, c) = (BiPoly::a(), BiPoly::c());
        // a*(-2c^3 + 3c^2) + c
        let f = &(&a * &(&(&c.pow(3) * &q(-2)) + &(&c.pow(2) * &q(3)))) + &c;
        assert_eq!(f.partial(VAR_A), &(&c.pow(3) * &q(-2)) + &(&c.pow(2) * &q(3)));
        let fc = f.partial(VAR_C);
        assert_eq!(fc.eval(&[rat(1, 1), rat(1, 1)]), rat(1, 1));
        assert_eq!(f.eval(&[rat(2, 1), rat(1, 1)]), rat(3, 1));
    }

    #[test]
    fn compose_univariate() {
        let u = UniPoly::from_ints(Rationals, &[0, 0, 3, -2]);
        let x = &BiPoly::a() + &BiPoly::c();
        let composed = BiPoly::compose_into(&u, &x);
        let direct = &(&x.pow(2) * &q(3)) - &(&x.pow(3) * &q(2));
        assert_eq!(composed, direct);
    }

    #[test]
    fn univariate_view_roundtrip() {
        let (a, c) = (BiPoly::a(), BiPoly::c());
        let f = &(&(&a * &c.pow(2)) + &a.pow(3)) - &q(5);
        let u = f.to_univariate_in(VAR_C);
        assert_eq!(u.degree(), Some(2));
        assert_eq!(u.coeff(0), UniPoly::from_ints(Rationals, &[-5, 0, 0, 1]));
        assert_eq!(u.coeff(2), UniPoly::from_ints(Rationals, &[0, 1]));
    }

    #[test]
    fn reduction_commutes_with_evaluation() {
        let f5 = make_ext_field(5, 1).unwrap();
        let (a, c) = (BiPoly::a(), BiPoly::c());
        let f = &(&(&a.pow(2) * &c) * &BiPoly::rat(rat(3, 2))) + &(&c * &q(7));
        let reduced = f.reduce(&f5).unwrap();
        let (x, y) = (rat(4, 3), rat(-2, 7));
        let direct = f5.from_rat(&f.eval(&[x.clone(), y.clone()])).unwrap();
        let via = reduced.eval(&[f5.from_rat(&x).unwrap(), f5.from_rat(&y).unwrap()]);
        assert_eq!(direct, via);
        assert!(f.reduce(&make_ext_field(2, 1).unwrap()).is_err());
    }

    #[test]
    fn mixed_domains_rejected() {
        let f3 = make_ext_field(3, 1).unwrap();
        let f5 = make_ext_field(5, 1).unwrap();
        let x: MultiPoly<_, 2> = MultiPoly::var(f3, 0);
        let y: MultiPoly<_, 2> = MultiPoly::var(f5, 0);
        assert!(matches!(x.checked_add(&y), Err(Error::Domain(_))));
    }

    #[test]
    fn sparse_serialization() {
        let f = &(&BiPoly::a() * &BiPoly::rat(rat(-2, 3))) + &q(1);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"0,0":"1","1,0":"-2/3"}"#);
    }
}
