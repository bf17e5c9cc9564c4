//! Post-critically finite loci of `f_{a,c} = a B_{d,k} + c`.
//!
//! `F_n = f^n(0)` and `G_m = f^m(1) - 1` cut out the parameters where both
//! critical points are periodic. This module certifies that their common zeros
//! are integral at an IDF prime `p` (through Newton polygons of the two
//! resultants) and that the Jacobian of `(F_n, G_m)` does not vanish modulo `p`.

mod integrality;
mod locus;
mod ncrit;
mod transversality;

pub use integrality::{integrality_certificate, IntegralityCertificate, StrippedResultant};
pub use locus::{critical_orbit_poly, orbit_iterates, preperiodic_poly, CriticalOrbitPoly, OrbitKind};
pub use ncrit::{ncrit_counterexamples, DegreeFourReport, DegreeTenReport, NcritReport};
pub use transversality::{
    jacobian, reduce_map, solve_mod, transversality_check, FiniteSolution, ReducedMap, SolveResult,
    TransversalityReport,
};

use serde::Serialize;

use crate::{Error, Result};

/// Size limits for symbolic constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Upper bound on `n + m`.
    pub max_period_sum: u32,
    /// Upper bound on `d^{n-1} · d^{m-1}`, the resultant degree scale.
    pub monomials: u64,
    /// Upper bound on `p^{2e}` points enumerated by the finite-field solver.
    pub enumeration: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_period_sum: 5, monomials: 10_000, enumeration: 10_000_000 }
    }
}

impl Budget {
    pub fn with_monomials(monomials: u64) -> Self {
        Budget { monomials, ..Budget::default() }
    }

    pub(crate) fn check_pair(&self, d: u64, n: u32, m: u32) -> Result<()> {
        if n == 0 || m == 0 {
            return Err(Error::Domain("periods n and m must be at least 1".into()));
        }
        if n + m > self.max_period_sum {
            return Err(Error::Resource(format!(
                "n + m = {} exceeds the budget {}",
                n + m,
                self.max_period_sum
            )));
        }
        let scale = d
            .checked_pow(n - 1)
            .and_then(|x| d.checked_pow(m - 1).and_then(|y| x.checked_mul(y)));
        match scale {
            Some(s) if s <= self.monomials => Ok(()),
            _ => Err(Error::Resource(format!(
                "d^(n-1) d^(m-1) for d = {d}, n = {n}, m = {m} exceeds the monomial budget {}",
                self.monomials
            ))),
        }
    }

    pub(crate) fn check_degree(&self, d: u64, n: u32) -> Result<()> {
        match d.checked_pow(n.saturating_sub(1)) {
            Some(s) if s <= self.monomials => Ok(()),
            _ => Err(Error::Resource(format!(
                "degree d^(n-1) for d = {d}, n = {n} exceeds the monomial budget {}",
                self.monomials
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}
