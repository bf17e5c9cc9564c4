use num_traits::Zero;
use serde::Serialize;

use super::ring::Rationals;
use super::unipoly::UniPoly;
use crate::arith::{exact_serde, is_prime, val_p_unchecked, ExtVal, Int, Rat};
use crate::{Error, Result};

/// One edge of the lower convex hull: `length` roots of valuation `-slope`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    pub from: u64,
    pub to: u64,
    #[serde(serialize_with = "exact_serde::rat")]
    pub slope: Rat,
}

impl Segment {
    pub fn length(&self) -> u64 {
        self.to - self.from
    }

    pub fn root_valuation(&self) -> Rat {
        -self.slope.clone()
    }
}

/// Newton polygon of a rational polynomial at a prime `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonPolygon {
    #[serde(serialize_with = "exact_serde::int")]
    pub p: Int,
    /// `(i, v_p(a_i))` for every nonzero coefficient.
    pub points: Vec<(u64, ExtVal)>,
    pub segments: Vec<Segment>,
    /// Multiplicity of the root `0`.
    pub zero_order: u64,
}

impl NewtonPolygon {
    pub fn new(f: &UniPoly<Rationals>, p: &Int) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if f.is_zero() {
            return Err(Error::Domain("Newton polygon of the zero polynomial".into()));
        }
        let pts: Vec<(u64, Rat)> = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let v = val_p_unchecked(c, p);
                (i as u64, v.finite().cloned().expect("nonzero coefficient"))
            })
            .collect();

        // Monotone chain over points sorted by x.
        let mut hull: Vec<(u64, Rat)> = Vec::new();
        for pt in &pts {
            while hull.len() >= 2 {
                let (o, a) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
                // Drop `a` unless it lies strictly below the chord from `o` to `pt`.
                let cross = (&a.1 - &o.1) * Rat::from_integer(Int::from(pt.0 - o.0))
                    - (&pt.1 - &o.1) * Rat::from_integer(Int::from(a.0 - o.0));
                if cross >= Rat::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt.clone());
        }
        let segments = hull
            .windows(2)
            .map(|w| Segment {
                from: w[0].0,
                to: w[1].0,
                slope: (&w[1].1 - &w[0].1) / Rat::from_integer(Int::from(w[1].0 - w[0].0)),
            })
            .collect();
        Ok(NewtonPolygon {
            p: p.clone(),
            points: pts.into_iter().map(|(i, v)| (i, ExtVal::Finite(v))).collect(),
            segments,
            zero_order: f.order_at_zero().unwrap_or(0) as u64,
        })
    }

    /// Valuations of all roots over an algebraic closure, with multiplicity, in
    /// increasing order. The root `0` contributes `Infinity`.
    pub fn root_valuations(&self) -> Vec<ExtVal> {
        let mut out: Vec<ExtVal> = Vec::new();
        for s in self.segments.iter().rev() {
            out.extend((0..s.length()).map(|_| ExtVal::Finite(s.root_valuation())));
        }
        out.extend((0..self.zero_order).map(|_| ExtVal::Infinity));
        out
    }

    pub fn min_root_valuation(&self) -> Option<ExtVal> {
        self.root_valuations().into_iter().next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, val_p};
    use num_traits::One;
    use proptest::prelude::*;

    fn q(cs: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_ints(Rationals, cs)
    }

    fn vals(f: &UniPoly<Rationals>, p: i64) -> Vec<ExtVal> {
        NewtonPolygon::new(f, &Int::from(p)).unwrap().root_valuations()
    }

    fn fv(n: i64, d: i64) -> ExtVal {
        ExtVal::Finite(rat(n, d))
    }

    #[test]
    fn square_root_of_p() {
        assert_eq!(vals(&q(&[-5, 0, 1]), 5), vec![fv(1, 2), fv(1, 2)]);
        assert_eq!(vals(&q(&[-5, 0, 1]), 3), vec![fv(0, 1), fv(0, 1)]);
    }

    #[test]
    fn two_slopes() {
        // x^2 + p x + p^3 at p = 2: roots of valuation 1 and 2
        assert_eq!(vals(&q(&[8, 2, 1]), 2), vec![fv(1, 1), fv(2, 1)]);
    }

    #[test]
    fn cubic_unit_roots_and_zero() {
        // 2a^3 - a^2 - a - 1 at 3: all units
        assert_eq!(vals(&q(&[-1, -1, -1, 2]), 3), vec![fv(0, 1); 3]);
        // x^2 (3x - 1): root 1/3 of valuation -1, double root at 0
        assert_eq!(
            vals(&q(&[0, 0, -1, 3]), 3),
            vec![fv(-1, 1), ExtVal::Infinity, ExtVal::Infinity]
        );
    }

    #[test]
    fn collinear_points_merge() {
        let np = NewtonPolygon::new(&q(&[1, 2, 4]), &Int::from(2)).unwrap();
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.segments[0].slope, rat(1, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(NewtonPolygon::new(&q(&[1, 1]), &Int::from(4)).is_err());
        assert!(NewtonPolygon::new(&q(&[]), &Int::from(3)).is_err());
    }

    proptest! {
        #[test]
        fn invariant_under_scaling(cs in prop::collection::vec(-30i64..=30, 2..6), s in 1i64..50) {
            prop_assume!(cs.iter().skip(1).any(|&c| c != 0));
            let f = q(&cs);
            let g = f.scale(&rat(s, 7));
            prop_assert_eq!(vals(&f, 3), vals(&g, 3));
        }

        #[test]
        fn matches_rational_roots(
            roots in prop::collection::vec((-20i64..=20, 1i64..=20), 1..5),
            p in prop::sample::select(vec![2i64, 3, 5, 7]),
        ) {
            let mut f = q(&[1]);
            let pi = Int::from(p);
            let mut expected = Vec::new();
            for (n, d) in &roots {
                let r = rat(*n, *d);
                f = &f * &UniPoly::from_rats(vec![-r.clone(), Rat::one()]);
                expected.push(val_p(&r, &pi).unwrap());
            }
            expected.sort();
            prop_assert_eq!(vals(&f, p), expected);
        }
    }
}
