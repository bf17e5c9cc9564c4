use num_traits::{One, Zero};
use serde::Serialize;

use super::{critical_orbit_poly, Budget, Verdict};
use crate::arith::{exact_serde, rat_content, ExtVal, Int, Rat};
use crate::idf::{find_idf_prime, IdfWitness};
use crate::polyring::{resultant_in, BiPoly, NewtonPolygon, Rationals, UniPoly, VAR_A, VAR_C};
use crate::valdyn::Start;
use crate::{Error, Result};

/// A resultant with its trivial factors removed: `raw = content · var^power · stripped`.
#[derive(Debug, Clone, Serialize)]
pub struct StrippedResultant {
    pub raw: UniPoly<Rationals>,
    pub var_power: u64,
    #[serde(serialize_with = "exact_serde::rat")]
    pub content: Rat,
    pub stripped: UniPoly<Rationals>,
    pub newton: NewtonPolygon,
}

impl StrippedResultant {
    fn new(raw: UniPoly<Rationals>, strip_var: bool, p: &Int) -> Result<Self> {
        if raw.is_zero() {
            return Err(Error::Degenerate(
                "resultant vanishes identically: F_n and G_m share a component".into(),
            ));
        }
        let var_power = if strip_var { raw.order_at_zero().unwrap_or(0) } else { 0 };
        let shifted = UniPoly::new(Rationals, raw.coeffs()[var_power..].to_vec());
        let mut content = rat_content(shifted.coeffs());
        if shifted.leading().is_some_and(|l| l < &Rat::zero()) {
            content = -content;
        }
        let stripped = shifted.scale(&(Rat::one() / &content));
        let newton = NewtonPolygon::new(&stripped, p)?;
        Ok(StrippedResultant { raw, var_power: var_power as u64, content, stripped, newton })
    }

    pub fn root_valuations(&self) -> Vec<ExtVal> {
        self.newton.root_valuations()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegralityCertificate {
    pub d: u64,
    pub k: u64,
    pub n: u32,
    pub m: u32,
    pub witness: IdfWitness,
    pub f: BiPoly,
    pub g: BiPoly,
    /// `Res_c(F_n, G_m)`, a polynomial in `a`.
    pub r_a: StrippedResultant,
    /// `Res_a(F_n, G_m)`, a polynomial in `c`.
    pub r_c: StrippedResultant,
    pub alpha_units: bool,
    pub beta_integral: bool,
    pub verdict: Verdict,
}

impl IntegralityCertificate {
    /// Recomputes both checks from the stored Newton polygons.
    pub fn recheck(&self) -> (bool, bool) {
        alpha_beta_checks(&self.r_a.newton, &self.r_c.newton)
    }
}

fn alpha_beta_checks(na: &NewtonPolygon, nc: &NewtonPolygon) -> (bool, bool) {
    let units = na.root_valuations().iter().all(ExtVal::is_zero);
    let integral = nc.root_valuations().iter().all(|v| !v.is_negative());
    (units, integral)
}

/// Certifies that every common zero `(α, β)` of `F_n` and `G_m` has `α` a `p`-adic
/// unit and `β` `p`-integral, at the first IDF prime of `(d, k)`.
pub fn integrality_certificate(d: u64, k: u64, n: u32, m: u32, budget: &Budget) -> Result<IntegralityCertificate> {
    budget.check_pair(d, n, m)?;
    let witness = find_idf_prime(d, k)?
        .ok_or_else(|| Error::Unsupported(format!("no IDF prime for (d, k) = ({d}, {k})")))?;
    let f = critical_orbit_poly(d, k, Start::Zero, n, budget)?.poly;
    let g = critical_orbit_poly(d, k, Start::One, m, budget)?.poly;
    let p = Int::from(witness.p);
    let r_a = StrippedResultant::new(resultant_in(&f, &g, VAR_C)?, true, &p)?;
    let r_c = StrippedResultant::new(resultant_in(&f, &g, VAR_A)?, false, &p)?;
    let (alpha_units, beta_integral) = alpha_beta_checks(&r_a.newton, &r_c.newton);
    Ok(IntegralityCertificate {
        d,
        k,
        n,
        m,
        witness,
        f,
        g,
        r_a,
        r_c,
        alpha_units,
        beta_integral,
        verdict: Verdict::from_bool(alpha_units && beta_integral),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(cs: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_ints(Rationals, cs)
    }

    fn up_to_sign(x: &UniPoly<Rationals>, y: &UniPoly<Rationals>) -> bool {
        x == y || x == &-y
    }

    #[test]
    fn period_one_pairs() {
        let b = Budget::default();
        let cert = integrality_certificate(3, 1, 1, 1, &b).unwrap();
        assert!(up_to_sign(&cert.r_a.raw, &q(&[-1, 1])));
        assert!(up_to_sign(&cert.r_c.raw, &q(&[0, 1])));
        assert_eq!(cert.r_c.root_valuations(), vec![ExtVal::Infinity]);
        assert_eq!(cert.verdict, Verdict::Pass);
        assert_eq!(cert.recheck(), (true, true));
        let cert = integrality_certificate(5, 1, 1, 1, &b).unwrap();
        assert_eq!((cert.witness.p, cert.verdict), (5, Verdict::Pass));
    }

    #[test]
    fn period_two_one() {
        let cert = integrality_certificate(3, 1, 2, 1, &Budget::default()).unwrap();
        let ra = &q(&[-1, 1]) * &q(&[-1, -1, -1, 2]);
        let rc = q(&[0, 1, 3, -5, 2]);
        assert!(up_to_sign(&cert.r_a.stripped, &ra));
        assert!(up_to_sign(&cert.r_c.stripped, &rc));
        assert_eq!(cert.r_a.var_power, 0);
        assert_eq!(cert.r_a.root_valuations(), vec![ExtVal::zero(); 4]);
        assert_eq!(
            cert.r_c.root_valuations(),
            vec![ExtVal::zero(), ExtVal::zero(), ExtVal::zero(), ExtVal::Infinity]
        );
        assert!(cert.verdict.is_pass());
    }

    #[test]
    fn stripping_and_errors() {
        let p = Int::from(3);
        let s = StrippedResultant::new(q(&[0, 0, 6, -12]), true, &p).unwrap();
        assert_eq!(s.var_power, 2);
        assert_eq!(s.content, rat(-6, 1));
        assert_eq!(s.stripped, q(&[-1, 2]));
        assert!(matches!(
            StrippedResultant::new(UniPoly::zero(Rationals), true, &p),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            integrality_certificate(27, 3, 1, 1, &Budget::default()),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            integrality_certificate(3, 1, 3, 3, &Budget::default()),
            Err(Error::Resource(_))
        ));
    }
}
