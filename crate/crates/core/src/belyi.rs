//! Dynamical Belyi normal forms.
//!
//! `B_{d,k}(z) = sum_i b_i z^{d-i}` is the degree-`d` polynomial with `B(0) = 0`,
//! `B(1) = 1` and critical points only at `0` (index `d-k`) and `1` (index `k+1`).
//! The bicritical family is `f_{a,c} = a B_{d,k} + c`.
//!
//! The n-critical generalization fixes critical points `0, 1 = γ_0, γ_1, ...` with
//! multiplicities `k_0, k_1, ...` at the non-zero ones. For a single profile entry
//! it equals `(-1)^k k! B_{d,k}`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, canonical_k_bound, exact_serde, factorial, Int, Rat};
use crate::polyring::{PolyRing, Rationals, Ring, UniPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BelyiPoly {
    pub d: u64,
    pub k: u64,
    /// `b_0..b_k`; `b_i` multiplies `z^{d-i}`.
    #[serde(serialize_with = "exact_serde::rats")]
    pub coeffs: Vec<Rat>,
}

pub(crate) fn check_dk(d: u64, k: u64) -> Result<()> {
    if d < 3 {
        return Err(Error::Domain(format!("degree d = {d} must be at least 3")));
    }
    if k < 1 || k > d - 2 {
        return Err(Error::Domain(format!("k = {k} outside 1..={} for d = {d}", d - 2)));
    }
    Ok(())
}

/// Closed-form coefficients of `B_{d,k}`.
pub fn belyi_coeffs(d: u64, k: u64) -> Result<BelyiPoly> {
    check_dk(d, k)?;
    let coeffs = (0..=k)
        .map(|i| {
            let num: Int = (0..=k)
                .filter(|&j| j != i)
                .map(|j| Int::from(d - j))
                .product();
            let den = factorial(k - i) * factorial(i);
            let sign = if (k - i) % 2 == 0 { Int::one() } else { -Int::one() };
            Rat::new(sign * num, den)
        })
        .collect();
    Ok(BelyiPoly { d, k, coeffs })
}

impl BelyiPoly {
    pub fn b(&self, i: u64) -> &Rat {
        &self.coeffs[i as usize]
    }

    pub fn to_poly(&self) -> UniPoly<Rationals> {
        let mut cs = vec![Rat::zero(); self.d as usize + 1];
        for (i, b) in self.coeffs.iter().enumerate() {
            cs[self.d as usize - i] = b.clone();
        }
        UniPoly::from_rats(cs)
    }

    /// `d b_0 z^{d-k-1} (z-1)^k`, the expected derivative.
    pub fn expected_derivative(&self) -> UniPoly<Rationals> {
        let scale = Rat::from_integer(Int::from(self.d)) * &self.coeffs[0];
        UniPoly::from_ints(Rationals, &[-1, 1])
            .pow(self.k)
            .shift((self.d - self.k - 1) as usize)
            .scale(&scale)
    }

    /// Checks `B(0) = 0`, `B(1) = 1` and the derivative factorization exactly.
    pub fn invariants_hold(&self) -> bool {
        let b = self.to_poly();
        b.eval(&Rat::zero()).is_zero()
            && b.eval(&Rat::one()).is_one()
            && b.derivative() == self.expected_derivative()
    }
}

/// Representative of `k` under `k ~ d-1-k` with `k <= ceil((d-2)/2)`.
pub fn canonical_k(d: u64, k: u64) -> Result<u64> {
    check_dk(d, k)?;
    Ok(if k <= canonical_k_bound(d) { k } else { d - 1 - k })
}

/// The conjugacy `(a, c, k) -> (a, 1-a-c, d-1-k)`.
pub fn conjugate_params(a: &Rat, c: &Rat, d: u64, k: u64) -> Result<(Rat, Rat, u64)> {
    check_dk(d, k)?;
    if a.is_zero() {
        return Err(Error::Domain("a = 0 gives a constant map".into()));
    }
    Ok((a.clone(), Rat::one() - a - c, d - 1 - k))
}

/// `f_{a,c} = a B_{d,k} + c` with parameters left free until specialized.
#[derive(Debug, Clone, PartialEq)]
pub struct BicriticalMap {
    pub belyi: BelyiPoly,
}

impl BicriticalMap {
    pub fn new(d: u64, k: u64) -> Result<Self> {
        Ok(BicriticalMap { belyi: belyi_coeffs(d, k)? })
    }

    /// `B_{d,k}` with coefficients mapped into `ring`.
    pub fn belyi_over<R: Ring>(&self, ring: &R) -> Result<UniPoly<R>> {
        self.belyi.to_poly().try_map(ring, |x| ring.from_rat(x)).ok_or_else(|| {
            Error::Domain(format!(
                "B_{{{},{}}} has a coefficient with denominator divisible by {}",
                self.belyi.d,
                self.belyi.k,
                ring.characteristic()
            ))
        })
    }

    /// The concrete polynomial `a B(z) + c` over `ring`.
    pub fn specialize<R: Ring>(&self, ring: &R, a: &R::Elem, c: &R::Elem) -> Result<UniPoly<R>> {
        let b = self.belyi_over(ring)?;
        Ok(&b.scale(a) + &UniPoly::constant(ring.clone(), c.clone()))
    }
}

/// Generalized normal form with critical points `0, γ_0 = 1, γ_1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct NCriticalForm<R: Ring> {
    pub d: u64,
    pub profile: Vec<u64>,
    /// `γ_0 = 1` first.
    pub gammas: Vec<R::Elem>,
    /// The bracketed polynomial, without the outer `a` and `c`.
    pub poly: UniPoly<R>,
}

fn check_profile(d: u64, profile: &[u64]) -> Result<u64> {
    if profile.is_empty() || profile.contains(&0) {
        return Err(Error::Domain("profile entries must all be at least 1".into()));
    }
    let total: u64 = profile.iter().sum();
    let n = profile.len() as u64 + 1;
    if total < n - 1 || d < 2 || total > d - 2 {
        return Err(Error::Domain(format!(
            "profile sum {total} outside {}..={} for d = {d}",
            n - 1,
            d.saturating_sub(2)
        )));
    }
    Ok(total)
}

/// Builds the n-critical form over `ring` from the extra points `γ_1..γ_{n-2}`.
///
/// The coefficient of `z^{d + Σj - Σk}` is
/// `d!/(d-Σk-1)! · Σ_j Π_i (-γ_i)^{k_i-j_i} C(k_i, j_i) / (d + Σj - Σk)`.
pub fn ncritical_form_over<R: Ring>(
    ring: &R,
    d: u64,
    profile: &[u64],
    extra_gammas: &[R::Elem],
) -> Result<NCriticalForm<R>> {
    let total = check_profile(d, profile)?;
    if extra_gammas.len() + 1 != profile.len() {
        return Err(Error::Domain(format!(
            "profile of length {} needs {} extra critical points, got {}",
            profile.len(),
            profile.len() - 1,
            extra_gammas.len()
        )));
    }
    let mut gammas = vec![ring.one()];
    gammas.extend(extra_gammas.iter().cloned());
    for (i, g) in gammas.iter().enumerate() {
        if ring.is_zero(g) {
            return Err(Error::Domain("critical point γ coincides with 0".into()));
        }
        if gammas[..i].contains(g) {
            return Err(Error::Domain("repeated critical point γ".into()));
        }
    }

    let lead = Rat::new(factorial(d), factorial(d - total - 1));
    let neg_gammas: Vec<R::Elem> = gammas.iter().map(|g| ring.neg(g)).collect();
    let mut coeffs = vec![ring.zero(); d as usize + 1];
    let mut js = vec![0u64; profile.len()];
    loop {
        let mut term = ring.one();
        let mut sum_j = 0;
        for (i, (&j, &k)) in js.iter().zip(profile).enumerate() {
            let w = ring.mul(&ring.pow(&neg_gammas[i], k - j), &ring.from_int(&binomial(k, j)));
            term = ring.mul(&term, &w);
            sum_j += j;
        }
        let exp = d + sum_j - total;
        let scalar = &lead / Rat::from_integer(Int::from(exp));
        let scalar = ring.from_rat(&scalar).ok_or_else(|| {
            Error::Domain(format!(
                "normal-form scalar not defined in characteristic {}",
                ring.characteristic()
            ))
        })?;
        let idx = exp as usize;
        coeffs[idx] = ring.add(&coeffs[idx], &ring.mul(&term, &scalar));

        // Odometer over 0 <= j_i <= k_i.
        let mut pos = 0;
        while pos < js.len() && js[pos] == profile[pos] {
            js[pos] = 0;
            pos += 1;
        }
        if pos == js.len() {
            break;
        }
        js[pos] += 1;
    }
    Ok(NCriticalForm { d, profile: profile.to_vec(), gammas, poly: UniPoly::new(ring.clone(), coeffs) })
}

/// Rational critical points.
pub fn ncritical_form(d: u64, profile: &[u64], extra_gammas: &[Rat]) -> Result<NCriticalForm<Rationals>> {
    for g in extra_gammas {
        if g.is_one() {
            return Err(Error::Domain("critical point γ coincides with 1".into()));
        }
    }
    ncritical_form_over(&Rationals, d, profile, extra_gammas)
}

/// Three critical points with `γ` kept symbolic: coefficients are polynomials in `γ`.
pub fn ncritical_form_symbolic(d: u64, profile: &[u64]) -> Result<NCriticalForm<PolyRing<Rationals>>> {
    if profile.len() != 2 {
        return Err(Error::Unsupported(
            "a symbolic critical point is only supported for three critical points".into(),
        ));
    }
    let ring = PolyRing::new(Rationals);
    let gamma = ring.var();
    ncritical_form_over(&ring, d, profile, &[gamma])
}

impl<R: Ring> NCriticalForm<R> {
    /// `Π_i (z - γ_i)^{k_i} z^{d-Σk-1}` times the leading scalar: the expected derivative.
    pub fn expected_derivative(&self) -> UniPoly<R> {
        let ring = self.poly.ring();
        let total: u64 = self.profile.iter().sum();
        let mut acc = UniPoly::one(ring.clone()).shift((self.d - total - 1) as usize);
        for (g, &k) in self.gammas.iter().zip(&self.profile) {
            let lin = UniPoly::new(ring.clone(), vec![ring.neg(g), ring.one()]);
            acc = &acc * &lin.pow(k);
        }
        let lead = Rat::new(factorial(self.d), factorial(self.d - total - 1));
        acc.scale(&ring.from_rat(&lead).expect("scalar defined when the form is"))
    }
}
