//! Index-divisor-free primes.
//!
//! A prime `p > k` is IDF for `(d, k)` when it divides `d - r` for some `0 <= r <= k`
//! and `r` does not divide `e = v_p(d - r)`. Zero divides only zero, so `r = 0`
//! always qualifies, while `r = 1` never does. Because `p > k`, the index `r` is
//! unique.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{canonical_k_bound, exact_sqrt, factor_u64, is_prime_u64};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IdfWitness {
    pub p: u64,
    pub r: u64,
    pub e: u32,
}

/// Why a candidate prime is not IDF.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    NotPrime,
    NotAboveK,
    DividesNoShift,
    IndexIsOne,
    IndexDividesExponent { r: u64, e: u32 },
}

pub(crate) fn check_range(d: u64, k: u64) -> Result<()> {
    if d < 3 {
        return Err(Error::Domain(format!("degree d = {d} must be at least 3")));
    }
    let bound = canonical_k_bound(d);
    if k < 1 || k > bound {
        return Err(Error::Domain(format!("k = {k} outside 1..={bound} for d = {d}")));
    }
    Ok(())
}

fn index_divides(r: u64, e: u32) -> bool {
    if r == 0 {
        e == 0
    } else {
        u64::from(e) % r == 0
    }
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

fn test_prime(p: u64, d: u64, k: u64) -> std::result::Result<IdfWitness, Rejection> {
    if !is_prime_u64(p) {
        return Err(Rejection::NotPrime);
    }
    if p <= k {
        return Err(Rejection::NotAboveK);
    }
    let r = (0..=k.min(d)).find(|&r| (d - r) % p == 0).ok_or(Rejection::DividesNoShift)?;
    if r == 1 {
        return Err(Rejection::IndexIsOne);
    }
    let e = valuation(d - r, p);
    if index_divides(r, e) {
        return Err(Rejection::IndexDividesExponent { r, e });
    }
    Ok(IdfWitness { p, r, e })
}

/// Decides whether `p` is an IDF prime for `(d, k)`.
pub fn is_idf_prime(p: u64, d: u64, k: u64) -> Result<std::result::Result<IdfWitness, Rejection>> {
    check_range(d, k)?;
    Ok(test_prime(p, d, k))
}

/// First witness in `r = 0, 2, 3, ..., k`, each prime factor `p > k` ascending,
/// given a factorizer for the shifts `d - r`.
fn search(d: u64, k: u64, factor: impl Fn(u64) -> Vec<(u64, u32)>) -> Option<IdfWitness> {
    std::iter::once(0)
        .chain(2..=k)
        .filter(|&r| r < d && d - r >= 2)
        .find_map(|r| {
            factor(d - r)
                .into_iter()
                .find(|&(p, e)| p > k && !index_divides(r, e))
                .map(|(p, e)| IdfWitness { p, r, e })
        })
}

fn factor_list(n: u64) -> Vec<(u64, u32)> {
    factor_u64(n).map(|f| f.factors().to_vec()).unwrap_or_default()
}

/// Smallest-`(r, p)` IDF witness for `(d, k)`, if any.
pub fn find_idf_prime(d: u64, k: u64) -> Result<Option<IdfWitness>> {
    check_range(d, k)?;
    Ok(search(d, k, factor_list))
}

/// Smallest-prime-factor table for fast repeated factorization.
struct Spf(Vec<u32>);

impl Spf {
    const MAX: u64 = 50_000_000;

    fn new(n: u64) -> Self {
        let n = n as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Spf(spf)
    }

    fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = u64::from(self.0[n as usize]);
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }
}

/// One scanned degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub d: u64,
    pub k: u64,
    pub witness: Option<IdfWitness>,
}

/// Witness search for every `d` in `[d_min, d_max]`, in order of `d`.
///
/// Requires `d_min >= 2k + 1` so that `k` is in range for every scanned degree.
pub fn scan(d_min: u64, d_max: u64, k: u64) -> Result<Vec<ScanRow>> {
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let lowest = (2 * k + 1).max(3);
    if d_min < lowest {
        return Err(Error::Domain(format!(
            "d_min = {d_min} is below {lowest}, where k = {k} leaves the canonical range"
        )));
    }
    if d_max < d_min {
        return Ok(Vec::new());
    }
    let rows = if d_max <= Spf::MAX {
        let spf = Spf::new(d_max);
        (d_min..=d_max)
            .into_par_iter()
            .map(|d| ScanRow { d, k, witness: search(d, k, |n| spf.factor(n)) })
            .collect()
    } else {
        (d_min..=d_max)
            .into_par_iter()
            .map(|d| ScanRow { d, k, witness: search(d, k, factor_list) })
            .collect()
    };
    Ok(rows)
}

/// Degrees in `[d_min, d_max]` with no IDF prime for `k`.
pub fn scan_exceptions(d_min: u64, d_max: u64, k: u64) -> Result<Vec<u64>> {
    Ok(scan(d_min, d_max, k)?
        .into_iter()
        .filter(|row| row.witness.is_none())
        .map(|row| row.d)
        .collect())
}

pub const MORDELL_B: [u64; 4] = [1, 2, 3, 6];
pub const MORDELL_C: [u64; 9] = [1, 2, 3, 4, 6, 9, 12, 18, 36];
pub const MORDELL_MAX_X: u64 = 10_000_000;

/// Integral point of `B Y^2 = C X^3 + 1`; the degree it rules out is `d = C X^3 + 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MordellCandidate {
    pub x: u64,
    pub y: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

/// All candidates with `2 <= X <= x_max`, ordered by `d`.
pub fn mordell_candidates(x_max: u64) -> Result<Vec<MordellCandidate>> {
    if x_max > MORDELL_MAX_X {
        return Err(Error::Resource(format!("x_max above {MORDELL_MAX_X}")));
    }
    let mut out: Vec<MordellCandidate> = MORDELL_B
        .par_iter()
        .flat_map_iter(|&b| {
            MORDELL_C.iter().flat_map(move |&c| {
                (2..=x_max).filter_map(move |x| {
                    let cx3 = u128::from(c) * u128::from(x).pow(3);
                    let n = cx3 + 1;
                    if cx3 < 4 || n % u128::from(b) != 0 {
                        return None;
                    }
                    let y = exact_sqrt(n / u128::from(b))?;
                    Some(MordellCandidate {
                        x,
                        y: y as u64,
                        b,
                        c,
                        d: u64::try_from(cx3 + 3).ok()?,
                    })
                })
            })
        })
        .collect();
    out.sort_by_key(|m| (m.d, m.x, m.y, m.b, m.c));
    Ok(out)
}

/// IDF witness for a prime dividing `n (n-1) ... (n-k)` at index `r` with
/// `r` not dividing its exponent. Same semantics as [`find_idf_prime`].
pub fn conjecture_check(n: u64, k: u64) -> Result<Option<IdfWitness>> {
    if n <= 2 * k + 2 {
        return Err(Error::Domain(format!("need n > 2k + 2, got n = {n}, k = {k}")));
    }
    Ok(search(n, k, factor_list))
}

/// Re-checks a witness from scratch.
pub fn verify_witness(w: &IdfWitness, d: u64, k: u64) -> bool {
    test_prime(w.p, d, k) == Ok(*w)
}
