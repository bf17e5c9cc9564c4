//! Checks on the three-critical-point normal forms showing where the
//! bicritical argument stops working.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{binomial, exact_serde, factorial, val_p, ExtVal, Int, Rat};
use crate::belyi::ncritical_form_symbolic;
use crate::polyring::{FiniteField, MultiPoly, Rationals, Ring};
use crate::Result;

type P3<R> = MultiPoly<R, 3>;

const A: usize = 0;
const C: usize = 1;
const GAMMA: usize = 2;

/// Coefficients (in `z`) of `a · form(z) + c`, as polynomials in `(a, c, γ)`.
fn map_coeffs(d: u64, profile: &[u64]) -> Result<Vec<P3<Rationals>>> {
    let form = ncritical_form_symbolic(d, profile)?;
    let a = P3::var(Rationals, A);
    Ok(form
        .poly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, coeff)| {
            let in_gamma = P3::from_terms(
                Rationals,
                coeff.coeffs().iter().enumerate().map(|(j, x)| ([0, 0, j as u32], x.clone())),
            );
            let term = &a * &in_gamma;
            if i == 0 {
                &term + &P3::var(Rationals, C)
            } else {
                term
            }
        })
        .collect())
}

fn apply<R: Ring>(coeffs: &[P3<R>], x: &P3<R>) -> P3<R> {
    let mut acc = coeffs.last().cloned().expect("non-empty map");
    for c in coeffs.iter().rev().skip(1) {
        acc = &(&acc * x) + c;
    }
    acc
}

fn iterate<R: Ring>(coeffs: &[P3<R>], start: &P3<R>, n: u32) -> P3<R> {
    (0..n).fold(start.clone(), |x, _| apply(coeffs, &x))
}

/// `det` of the matrix with rows `∂_a, ∂_c, ∂_γ` and columns `h0, h1, h2`.
fn jacobian3<R: Ring>(h: [&P3<R>; 3]) -> P3<R> {
    let m: Vec<Vec<P3<R>>> = [A, C, GAMMA]
        .iter()
        .map(|&v| h.iter().map(|f| f.partial(v)).collect())
        .collect();
    let minor = |i: usize, j: usize, k: usize, l: usize| &(&m[1][i] * &m[2][j]) - &(&m[1][k] * &m[2][l]);
    let t0 = &m[0][0] * &minor(1, 2, 2, 1);
    let t1 = &m[0][1] * &minor(0, 2, 2, 0);
    let t2 = &m[0][2] * &minor(0, 1, 1, 0);
    &(&t0 - &t1) + &t2
}

/// Leading-coefficient bookkeeping for one `(j_0, j_1)` in the degree-ten form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivingPair {
    pub j: [u64; 2],
    pub exponent: u64,
    /// `C(k_0, j_0) C(k_1, j_1)`.
    #[serde(serialize_with = "exact_serde::int")]
    pub binomial: Int,
    pub binomial_divisible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeTenReport {
    pub d: u64,
    pub profile: Vec<u64>,
    pub p: u64,
    /// Smallest `p`-adic valuation over the `γ`-coefficients of each non-zero `z^i`.
    pub coefficient_valuations: Vec<(u64, ExtVal)>,
    /// Pairs whose scalar `d!/((d-Σk-1)! · exponent)` is a `p`-adic unit.
    pub surviving_pairs: Vec<SurvivingPair>,
    pub reduces_to_constant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitJacobian {
    /// Iteration counts for the orbits of `0`, `1`, `γ`.
    pub iterations: [u32; 3],
    pub is_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeFourReport {
    pub p: u64,
    pub form_matches: bool,
    pub reduction: String,
    pub reduction_matches: bool,
    pub orbit_jacobians: Vec<OrbitJacobian>,
    /// Same determinant with `f^k(γ) - γ` in place of `f^k(γ)`; printed for contrast.
    pub relation_jacobian: String,
    pub relation_jacobian_is_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NcritReport {
    pub degree_ten: DegreeTenReport,
    pub degree_four: DegreeFourReport,
    pub holds: bool,
}

fn degree_ten() -> Result<DegreeTenReport> {
    let (d, profile, p) = (10u64, vec![7u64, 1], 7u64);
    let form = ncritical_form_symbolic(d, &profile)?;
    let pi = Int::from(p);
    let mut coefficient_valuations = Vec::new();
    for (i, coeff) in form.poly.coeffs().iter().enumerate() {
        let v = coeff
            .coeffs()
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| val_p(x, &pi))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min();
        if let Some(v) = v {
            coefficient_valuations.push((i as u64, v));
        }
    }
    let total: u64 = profile.iter().sum();
    let lead = Rat::new(factorial(d), factorial(d - total - 1));
    let mut surviving_pairs = Vec::new();
    for j0 in 0..=profile[0] {
        for j1 in 0..=profile[1] {
            let exponent = d + j0 + j1 - total;
            let scalar = &lead / Rat::from_integer(Int::from(exponent));
            if val_p(&scalar, &pi)? == ExtVal::zero() {
                let b = binomial(profile[0], j0) * binomial(profile[1], j1);
                let binomial_divisible = (&b % &pi).is_zero();
                surviving_pairs.push(SurvivingPair { j: [j0, j1], exponent, binomial: b, binomial_divisible });
            }
        }
    }
    let reduces_to_constant = coefficient_valuations.iter().all(|(_, v)| v.is_positive());
    Ok(DegreeTenReport { d, profile, p, coefficient_valuations, surviving_pairs, reduces_to_constant })
}

fn degree_four() -> Result<DegreeFourReport> {
    let p = 3;
    let q = |n: i64| P3::constant(Rationals, Rat::from_integer(Int::from(n)));
    let (a, c, g) = (P3::var(Rationals, A), P3::var(Rationals, C), P3::var(Rationals, GAMMA));
    let coeffs = map_coeffs(4, &[1, 1])?;
    let one_plus_g = &q(1) + &g;
    let expected = vec![
        c.clone(),
        P3::zero(Rationals),
        &(&a * &g) * &q(12),
        &(&a * &one_plus_g) * &q(-8),
        &a * &q(6),
    ];
    let form_matches = coeffs == expected;

    let field = FiniteField::prime_field(p)?;
    let reduced: Vec<P3<FiniteField>> = coeffs.iter().map(|x| x.reduce(&field)).collect::<Result<_>>()?;
    let target = [c.clone(), P3::zero(Rationals), P3::zero(Rationals), &a * &one_plus_g]
        .iter()
        .map(|x| x.reduce(&field))
        .collect::<Result<Vec<_>>>()?;
    let mut trimmed = reduced.clone();
    while trimmed.last().is_some_and(MultiPoly::is_zero) {
        trimmed.pop();
    }
    let reduction_matches = trimmed == target;
    let names = ["a", "c", "γ"];
    let reduction = trimmed
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| match i {
            0 => x.fmt_vars(&names),
            _ => format!("({})*z^{i}", x.fmt_vars(&names)),
        })
        .collect::<Vec<_>>()
        .join(" + ");

    let zero = P3::zero(field.clone());
    let one = P3::one(field.clone());
    let gamma = P3::var(field.clone(), GAMMA);
    let mut orbit_jacobians = Vec::new();
    for m in 1..=2 {
        for n in 1..=2 {
            for k in 1..=2 {
                let h0 = iterate(&reduced, &zero, m);
                let h1 = iterate(&reduced, &one, n);
                let h2 = iterate(&reduced, &gamma, k);
                let is_zero = jacobian3([&h0, &h1, &h2]).is_zero();
                orbit_jacobians.push(OrbitJacobian { iterations: [m, n, k], is_zero });
            }
        }
    }
    let h0 = iterate(&reduced, &zero, 1);
    let h1 = &iterate(&reduced, &one, 1) - &one;
    let h2 = &iterate(&reduced, &gamma, 1) - &gamma;
    let rel = jacobian3([&h0, &h1, &h2]);
    Ok(DegreeFourReport {
        p,
        form_matches,
        reduction,
        reduction_matches,
        orbit_jacobians,
        relation_jacobian: rel.fmt_vars(&names),
        relation_jacobian_is_zero: rel.is_zero(),
    })
}

/// Runs both checks. `holds` is true when the degree-ten form reduces to `c`, the
/// degree-four form and its reduction match, and every orbit Jacobian vanishes.
pub fn ncrit_counterexamples() -> Result<NcritReport> {
    let degree_ten = degree_ten()?;
    let degree_four = degree_four()?;
    let holds = degree_ten.reduces_to_constant
        && degree_ten.surviving_pairs.iter().all(|s| s.binomial_divisible)
        && degree_four.form_matches
        && degree_four.reduction_matches
        && degree_four.orbit_jacobians.iter().all(|j| j.is_zero);
    Ok(NcritReport { degree_ten, degree_four, holds })
}
