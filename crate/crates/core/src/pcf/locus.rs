use num_traits::One;
use serde::Serialize;

use super::Budget;
use crate::belyi::BicriticalMap;
use crate::polyring::{BiPoly, MultiPoly};
use crate::valdyn::Start;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitKind {
    Periodic,
    Preperiodic { n0: u32, m0: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalOrbitPoly {
    pub d: u64,
    pub k: u64,
    pub which: Start,
    pub n: u32,
    pub kind: OrbitKind,
    pub poly: BiPoly,
}

/// `[x, f(x), ..., f^n(x)]` as polynomials in `(a, c)`, for `x` the critical point.
pub fn orbit_iterates(d: u64, k: u64, which: Start, n: u32) -> Result<Vec<BiPoly>> {
    let b = BicriticalMap::new(d, k)?.belyi.to_poly();
    let (a, c) = (BiPoly::a(), BiPoly::c());
    let mut cur = BiPoly::rat(which.value());
    let mut out = vec![cur.clone()];
    for _ in 0..n {
        cur = &(&a * &MultiPoly::compose_into(&b, &cur)) + &c;
        out.push(cur.clone());
    }
    Ok(out)
}

/// `F_n = f^n(0)` or `G_n = f^n(1) - 1`.
pub fn critical_orbit_poly(d: u64, k: u64, which: Start, n: u32, budget: &Budget) -> Result<CriticalOrbitPoly> {
    if n == 0 {
        return Err(Error::Domain("period n must be at least 1".into()));
    }
    budget.check_degree(d, n)?;
    let last = orbit_iterates(d, k, which, n)?.pop().expect("n + 1 iterates");
    let poly = match which {
        Start::Zero => last,
        Start::One => &last - &BiPoly::rat(One::one()),
    };
    Ok(CriticalOrbitPoly { d, k, which, n, kind: OrbitKind::Periodic, poly })
}

/// `f^{n0}(x) - f^{m0}(x)` for the critical point `x`.
pub fn preperiodic_poly(d: u64, k: u64, which: Start, n0: u32, m0: u32, budget: &Budget) -> Result<CriticalOrbitPoly> {
    if n0 <= m0 {
        return Err(Error::Domain(format!("need n0 > m0, got n0 = {n0}, m0 = {m0}")));
    }
    budget.check_degree(d, n0)?;
    let its = orbit_iterates(d, k, which, n0)?;
    let poly = &its[n0 as usize] - &its[m0 as usize];
    Ok(CriticalOrbitPoly { d, k, which, n: n0, kind: OrbitKind::Preperiodic { n0, m0 }, poly })
}
