use super::multipoly::MultiPoly;
use super::ring::{Field, Ring};
use super::unipoly::UniPoly;
use crate::{Error, Result};

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n rows of shifted `f`
/// coefficients above m rows of shifted `g` coefficients, leading coefficient first.
pub fn sylvester_matrix<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Vec<Vec<R::Elem>> {
    let ring = f.ring();
    let (m, n) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, shifts, deg) in [(f, n, m), (g, m, n)] {
        for s in 0..shifts {
            let mut row = vec![ring.zero(); size];
            for i in 0..=deg {
                row[s + i] = p.coeff(deg - i);
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<R: Ring>(ring: &R, mut m: Vec<Vec<R::Elem>>) -> Result<R::Elem> {
    let n = m.len();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !ring.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&m[i][j], &m[k][k]),
                    &ring.mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = ring.exact_div(&num, &prev).ok_or_else(|| {
                    Error::Domain("fraction-free elimination needs exact division".into())
                })?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { ring.neg(&det) } else { det })
}

/// Resultant of two univariate polynomials. Zero if either is zero.
pub fn resultant<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<R::Elem> {
    if f.ring() != g.ring() {
        return Err(Error::Domain("resultant of polynomials over different domains".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(f.ring().zero());
    }
    determinant(f.ring(), sylvester_matrix(f, g))
}

/// Resultant of two bivariate polynomials with respect to variable `var`, as a
/// polynomial in the remaining variable.
pub fn resultant_in<R: Field>(
    f: &MultiPoly<R, 2>,
    g: &MultiPoly<R, 2>,
    var: usize,
) -> Result<UniPoly<R>> {
    if var > 1 {
        return Err(Error::Domain(format!("no variable with index {var}")));
    }
    resultant(&f.to_univariate_in(var), &g.to_univariate_in(var))
}
