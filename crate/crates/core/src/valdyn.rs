//! Min-plus simulation of critical-orbit valuations at an IDF prime.
//!
//! With `v_p(b_i) = e` for `i != r` and `v_p(b_r) = 0`, the valuation of
//! `f(x) = α B(x) + β` is bounded below by the minimum of three terms that depend
//! only on `v_p(x)`, and equals it when that minimum is attained once.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{exact_serde, val_p, ExtVal, Int, Rat};
use crate::belyi::BicriticalMap;
use crate::idf::{check_range, IdfWitness};
use crate::polyring::{MultiPoly, Rationals, UniPoly};
use crate::{Error, Result};

/// Valuation data for one map `f_{α,β}` at an IDF prime with index `r` and
/// exponent `e = v_p(d - r)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValParams {
    pub d: u64,
    pub k: u64,
    pub r: u64,
    pub e: u32,
    pub v_alpha: ExtVal,
    pub v_beta: ExtVal,
}

impl ValParams {
    pub fn new(d: u64, k: u64, r: u64, e: u32, v_alpha: ExtVal, v_beta: ExtVal) -> Result<Self> {
        check_range(d, k)?;
        if r > k || r == 1 {
            return Err(Error::Domain(format!("index r = {r} must lie in {{0, 2, ..., k}}")));
        }
        if e == 0 {
            return Err(Error::Domain("exponent e must be at least 1".into()));
        }
        if r > 0 && u64::from(e) % r == 0 {
            return Err(Error::Domain(format!("r = {r} divides e = {e}")));
        }
        if !v_alpha.is_finite() {
            return Err(Error::Domain("α = 0 gives a constant map".into()));
        }
        Ok(ValParams { d, k, r, e, v_alpha, v_beta })
    }

    pub fn from_witness(d: u64, k: u64, w: &IdfWitness, v_alpha: ExtVal, v_beta: ExtVal) -> Result<Self> {
        ValParams::new(d, k, w.r, w.e, v_alpha, v_beta)
    }

    fn e_val(&self) -> ExtVal {
        ExtVal::int(i64::from(self.e))
    }

    /// The two leading terms `v_α + e + d·v` and `v_α + (d-r)·v`.
    fn leading_pair(&self, v: &ExtVal) -> (ExtVal, ExtVal) {
        let va = &self.v_alpha;
        (&(va + &self.e_val()) + &v.times(self.d), va + &v.times(self.d - self.r))
    }

    fn is_integral_valued(&self) -> bool {
        let int = |v: &ExtVal| v.finite().map_or(true, |x| x.is_integer());
        int(&self.v_alpha) && int(&self.v_beta)
    }
}

/// A simulated valuation: exact, or only a lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TropVal {
    pub value: ExtVal,
    pub exact: bool,
}

impl TropVal {
    pub fn exact(value: ExtVal) -> Self {
        TropVal { value, exact: true }
    }
}

fn unique_min(terms: [ExtVal; 3]) -> TropVal {
    let min = terms.iter().min().cloned().expect("three terms");
    let count = terms.iter().filter(|t| **t == min).count();
    // A minimum of INFINITY means every term vanishes, so the image is exactly 0.
    TropVal { exact: count == 1 || !min.is_finite(), value: min }
}

/// Three-term minimum governing `v_p(f(x))` given `v_p(x)`.
pub fn image_val(v_x: &ExtVal, params: &ValParams) -> Result<TropVal> {
    let p = params;
    let va = &p.v_alpha;
    let terms = if v_x.is_zero() {
        [va + &p.e_val(), va.clone(), p.v_beta.clone()]
    } else if v_x.is_negative() {
        let (first, second) = p.leading_pair(v_x);
        if first == second {
            return Err(Error::Domain(format!(
                "v_α + e + d·v equals v_α + (d-r)·v at v = {v_x}; impossible at an IDF prime"
            )));
        }
        [first, second, p.v_beta.clone()]
    } else {
        [
            &(va + &p.e_val()) + &v_x.times(p.d - p.k),
            va + &v_x.times(p.d - p.r),
            p.v_beta.clone(),
        ]
    };
    Ok(unique_min(terms))
}

/// One step that carries the exactness of its input.
pub fn step(prev: &TropVal, params: &ValParams) -> Result<TropVal> {
    let mut next = image_val(&prev.value, params)?;
    next.exact &= prev.exact;
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Start {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

impl Start {
    pub fn from_u8(s: u8) -> Result<Self> {
        match s {
            0 => Ok(Start::Zero),
            1 => Ok(Start::One),
            _ => Err(Error::Domain(format!("critical point must be 0 or 1, got {s}"))),
        }
    }

    pub fn value(self) -> Rat {
        match self {
            Start::Zero => Rat::zero(),
            Start::One => Rat::one(),
        }
    }

    fn valuation(self) -> ExtVal {
        match self {
            Start::Zero => ExtVal::Infinity,
            Start::One => ExtVal::zero(),
        }
    }
}

/// Valuations of `f(s), f^2(s), ..., f^N(s)`.
pub fn orbit_val(start: Start, params: &ValParams, n: usize) -> Result<Vec<TropVal>> {
    if n == 0 {
        return Err(Error::Domain("need at least one iterate".into()));
    }
    let mut cur = TropVal::exact(start.valuation());
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        cur = step(&cur, params)?;
        out.push(cur.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    Case4I,
    Case4II,
    Case4III,
    Integral,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::Case1,
        CaseTag::Case2,
        CaseTag::Case3,
        CaseTag::Case4I,
        CaseTag::Case4II,
        CaseTag::Case4III,
        CaseTag::Integral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Case1 => "CASE1",
            CaseTag::Case2 => "CASE2",
            CaseTag::Case3 => "CASE3",
            CaseTag::Case4I => "CASE4I",
            CaseTag::Case4II => "CASE4II",
            CaseTag::Case4III => "CASE4III",
            CaseTag::Integral => "INTEGRAL",
        }
    }
}

pub fn classify_case(params: &ValParams) -> CaseTag {
    let (va, vb) = (&params.v_alpha, &params.v_beta);
    if va.is_negative() {
        if vb.is_negative() {
            CaseTag::Case1
        } else {
            CaseTag::Case2
        }
    } else if !vb.is_negative() {
        CaseTag::Integral
    } else if va.is_zero() {
        CaseTag::Case3
    } else {
        let (first, second) = params.leading_pair(vb);
        let m = first.min(second);
        match m.cmp(vb) {
            std::cmp::Ordering::Less => CaseTag::Case4I,
            std::cmp::Ordering::Greater => CaseTag::Case4II,
            std::cmp::Ordering::Equal => CaseTag::Case4III,
        }
    }
}

/// Proof object that a critical orbit is unbounded, or that it has constant
/// valuation, or a statement that the simulation cannot decide.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Divergence {
    /// Every step from the first iterate on lowers the valuation by at least `delta`.
    Decreasing {
        case: CaseTag,
        start: Start,
        steps: Vec<ExtVal>,
        #[serde(serialize_with = "exact_serde::rat")]
        delta: Rat,
    },
    /// `v_p(f^n(0)) = v_β` for all `n >= 1`.
    Constant { case: CaseTag, value: ExtVal },
    Inconclusive { case: CaseTag, reason: String },
}

impl Divergence {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Divergence::Inconclusive { .. })
    }
}

pub const CERTIFICATE_STEPS: usize = 3;

/// Builds the divergence certificate for a non-integral parameter pair.
///
/// For `v <= v_1 < 0` with `v <= v_β`, the image valuation is
/// `min{v_α + e + d·v, v_α + (d-r)·v} <= v - δ` where
/// `δ = -min{v_α + e + (d-1)·v_1, v_α + (d-r-1)·v_1}`. So `δ > 0` plus an exact
/// first iterate `v_1` proves strict decrease at every step.
pub fn divergence_certificate(params: &ValParams) -> Result<Divergence> {
    let case = classify_case(params);
    let start = match case {
        CaseTag::Integral => {
            return Err(Error::Domain("integral parameters have no divergence certificate".into()))
        }
        CaseTag::Case4III => {
            return Ok(Divergence::Inconclusive {
                case,
                reason: "the three-term minimum ties with v_β; needs the shift-remainder argument"
                    .into(),
            })
        }
        CaseTag::Case4II => {
            return Ok(Divergence::Constant { case, value: params.v_beta.clone() });
        }
        CaseTag::Case1 | CaseTag::Case4I => Start::Zero,
        CaseTag::Case2 | CaseTag::Case3 => Start::One,
    };
    if !params.is_integral_valued() {
        return Ok(Divergence::Inconclusive {
            case,
            reason: "fractional valuations may produce a tie between the two leading terms".into(),
        });
    }
    let orbit = orbit_val(start, params, CERTIFICATE_STEPS)?;
    let v1 = &orbit[0].value;
    let v1_ok = orbit[0].exact && v1.is_negative() && v1 <= &params.v_beta;
    let strictly_decreasing =
        orbit.iter().all(|t| t.exact) && orbit.windows(2).all(|w| w[1].value < w[0].value);
    let steps: Vec<ExtVal> = orbit.iter().map(|t| t.value.clone()).collect();
    if !v1_ok || !strictly_decreasing {
        return Ok(Divergence::Inconclusive {
            case,
            reason: format!("first iterates {steps:?} do not start a strict descent"),
        });
    }
    let v1r = v1.finite().expect("negative, hence finite");
    let va = params.v_alpha.finite().expect("finite by construction");
    let d = Rat::from_integer(Int::from(params.d));
    let e = Rat::from_integer(Int::from(params.e));
    let r = Rat::from_integer(Int::from(params.r));
    let one = Rat::one();
    let t1 = va + &e + (&d - &one) * v1r;
    let t2 = va + (&d - &r - &one) * v1r;
    let delta = -t1.min(t2);
    if !delta.is_positive() {
        return Ok(Divergence::Inconclusive { case, reason: format!("step bound {delta} is not positive") });
    }
    Ok(Divergence::Decreasing { case, start, steps, delta })
}

/// Budget on `d^n` for symbolic shift remainders.
pub const SHIFT_DEGREE_BUDGET: u64 = 150;

/// `f^n(X + Y) = f^n(X) + h_n(X, Y)` for a specialized map, with `h_n` built by the
/// recursion `h_n = f(f^{n-1}(X) + h_{n-1}) - f(f^{n-1}(X))` and then checked
/// against a direct expansion of `f^n(X + Y)`.
#[derive(Debug, Clone)]
pub struct ShiftRemainder {
    pub d: u64,
    pub k: u64,
    pub n: u32,
    pub alpha: Rat,
    pub beta: Rat,
    pub map: UniPoly<Rationals>,
    /// `f^n(X)`.
    pub iterate: UniPoly<Rationals>,
    /// `h_n(X, Y)`, variables `(X, Y)`.
    pub h: MultiPoly<Rationals, 2>,
    pub identity_holds: bool,
}

type XY = MultiPoly<Rationals, 2>;

pub fn shift_remainder(d: u64, k: u64, n: u32, alpha: &Rat, beta: &Rat) -> Result<ShiftRemainder> {
    let map = BicriticalMap::new(d, k)?.specialize(&Rationals, alpha, beta)?;
    d.checked_pow(n).filter(|&v| v <= SHIFT_DEGREE_BUDGET).ok_or_else(|| {
        Error::Resource(format!("d^n = {d}^{n} exceeds the shift-remainder budget {SHIFT_DEGREE_BUDGET}"))
    })?;
    let x = UniPoly::x(Rationals);
    let embed = |u: &UniPoly<Rationals>| XY::from_univariate(u, 0);
    let mut iterate = x.clone();
    let mut h = XY::var(Rationals, 1);
    for _ in 0..n {
        let u = embed(&iterate);
        let next = map.compose(&iterate);
        h = &XY::compose_into(&map, &(&u + &h)) - &embed(&next);
        iterate = next;
    }
    let mut direct = &XY::var(Rationals, 0) + &XY::var(Rationals, 1);
    for _ in 0..n {
        direct = XY::compose_into(&map, &direct);
    }
    let identity_holds = direct == &embed(&iterate) + &h;
    Ok(ShiftRemainder { d, k, n, alpha: alpha.clone(), beta: beta.clone(), map, iterate, h, identity_holds })
}

/// Outcome of the valuation bounds at one point `(x, y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftBounds {
    pub v_h: ExtVal,
    pub v_iterate: ExtVal,
    pub holds: bool,
}

impl ShiftRemainder {
    /// Checks `v_p(h_n(x, y)) >= v_p(α)` and `v_p(f^n(x)) >= v_p(β)` under the
    /// hypotheses `v_p(β) < 0 < v_p(α)`, the tie case of the classifier,
    /// `v_p(x) >= v_p(β)` and `v_p(y) >= v_p(α)`.
    pub fn check_bounds(&self, p: &Int, w: &IdfWitness, x: &Rat, y: &Rat) -> Result<ShiftBounds> {
        let va = val_p(&self.alpha, p)?;
        let vb = val_p(&self.beta, p)?;
        let params = ValParams::from_witness(self.d, self.k, w, va.clone(), vb.clone())?;
        if classify_case(&params) != CaseTag::Case4III {
            return Err(Error::Domain("parameters are not in the tie case".into()));
        }
        if val_p(x, p)? < vb || val_p(y, p)? < va {
            return Err(Error::Domain("sample point violates v(x) >= v(β), v(y) >= v(α)".into()));
        }
        let v_h = val_p(&self.h.eval(&[x.clone(), y.clone()]), p)?;
        let v_iterate = val_p(&self.iterate.eval(x), p)?;
        let holds = v_h >= va && v_iterate >= vb;
        Ok(ShiftBounds { v_h, v_iterate, holds })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::idf::find_idf_prime;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(v: i64) -> ExtVal {
        ExtVal::int(v)
    }

    fn params(d: u64, k: u64, r: u64, e: u32, va: i64, vb: i64) -> ValParams {
        ValParams::new(d, k, r, e, iv(va), iv(vb)).unwrap()
    }

    #[test]
    fn image_examples() {
        let p = params(5, 1, 0, 1, -1, -1);
        assert_eq!(image_val(&iv(-1), &p).unwrap(), TropVal::exact(iv(-6)));
        assert_eq!(image_val(&ExtVal::Infinity, &p).unwrap(), TropVal::exact(iv(-1)));
        let p = params(5, 1, 0, 1, -1, 0);
        assert_eq!(image_val(&iv(0), &p).unwrap(), TropVal::exact(iv(-1)));
        let tie = params(5, 1, 0, 1, 0, 0);
        assert!(!image_val(&iv(0), &tie).unwrap().exact);
    }

    #[test]
    fn rejects_equal_leading_terms() {
        // r = 2, e = 1: tie at v = -1/2
        let p = params(8, 2, 2, 1, 0, -1);
        assert!(image_val(&ExtVal::Finite(rat(-1, 2)), &p).is_err());
    }

    #[test]
    fn orbit_examples() {
        let vals = |o: Vec<TropVal>| o.into_iter().map(|t| (t.value, t.exact)).collect::<Vec<_>>();
        let o = orbit_val(Start::Zero, &params(5, 1, 0, 1, -1, -1), 4).unwrap();
        assert_eq!(vals(o), vec![(iv(-1), true), (iv(-6), true), (iv(-31), true), (iv(-156), true)]);
        let o = orbit_val(Start::One, &params(5, 1, 0, 1, -1, 0), 3).unwrap();
        assert_eq!(vals(o), vec![(iv(-1), true), (iv(-6), true), (iv(-31), true)]);
        let o = orbit_val(Start::Zero, &params(5, 1, 0, 1, 0, 0), 5).unwrap();
        assert!(o.iter().all(|t| !t.value.is_negative()));
        assert!(orbit_val(Start::Zero, &params(5, 1, 0, 1, 0, 0), 0).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_case(&params(5, 1, 0, 1, -1, -1)), CaseTag::Case1);
        assert_eq!(classify_case(&params(5, 1, 0, 1, -1, 2)), CaseTag::Case2);
        assert_eq!(classify_case(&params(5, 1, 0, 1, 0, -1)), CaseTag::Case3);
        assert_eq!(classify_case(&params(5, 1, 0, 1, 2, -1)), CaseTag::Case4I);
        assert_eq!(classify_case(&params(5, 1, 0, 1, 10, -1)), CaseTag::Case4II);
        assert_eq!(classify_case(&params(5, 1, 0, 1, 4, -1)), CaseTag::Case4III);
        assert_eq!(classify_case(&params(5, 1, 0, 1, 0, 3)), CaseTag::Integral);
        let zero_beta = ValParams::new(5, 1, 0, 1, iv(1), ExtVal::Infinity).unwrap();
        assert_eq!(classify_case(&zero_beta), CaseTag::Integral);
    }

    #[test]
    fn certificates() {
        match divergence_certificate(&params(5, 1, 0, 1, -1, -1)).unwrap() {
            Divergence::Decreasing { steps, delta, start, .. } => {
                assert_eq!(steps, vec![iv(-1), iv(-6), iv(-31)]);
                assert_eq!(start, Start::Zero);
                assert_eq!(delta, rat(5, 1));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            divergence_certificate(&params(5, 1, 0, 1, 10, -1)).unwrap(),
            Divergence::Constant { case: CaseTag::Case4II, value: iv(-1) }
        );
        assert!(!divergence_certificate(&params(5, 1, 0, 1, 4, -1)).unwrap().is_conclusive());
        assert!(divergence_certificate(&params(5, 1, 0, 1, 0, 0)).is_err());
        for (va, vb) in [(-1, 0), (0, -1), (2, -1), (-3, -2), (0, -4)] {
            assert!(divergence_certificate(&params(5, 1, 0, 1, va, vb)).unwrap().is_conclusive());
        }
    }

    #[test]
    fn param_validation() {
        assert!(ValParams::new(5, 1, 1, 1, iv(0), iv(0)).is_err());
        assert!(ValParams::new(8, 2, 2, 2, iv(0), iv(0)).is_err());
        assert!(ValParams::new(8, 2, 2, 0, iv(0), iv(0)).is_err());
        assert!(ValParams::new(8, 2, 3, 1, iv(0), iv(0)).is_err());
        assert!(ValParams::new(8, 2, 2, 1, ExtVal::Infinity, iv(0)).is_err());
    }

    /// Rational with prescribed valuation: `±u p^v` with `u` a random unit.
    fn with_val(rng: &mut ChaCha8Rng, p: u64, v: i64) -> Rat {
        let unit = |rng: &mut ChaCha8Rng| loop {
            let u: i64 = rng.gen_range(1..40);
            if u % p as i64 != 0 {
                break if rng.gen_bool(0.5) { u } else { -u };
            }
        };
        let (n, dn) = (unit(rng), unit(rng).abs());
        let pv = Int::from(p).pow(v.unsigned_abs() as u32);
        let base = Rat::new(Int::from(n), Int::from(dn));
        if v >= 0 {
            base * Rat::from_integer(pv)
        } else {
            base / Rat::from_integer(pv)
        }
    }

    #[test]
    fn soundness_against_exact_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (d, k) = (3, 1);
        let w = find_idf_prime(d, k).unwrap().unwrap();
        let p = Int::from(w.p);
        let map = BicriticalMap::new(d, k).unwrap();
        for (va, vb) in [(-1, -1), (-1, 1), (0, -1), (1, -1), (3, -1), (2, -1), (0, 0), (1, 0)] {
            let a = with_val(&mut rng, w.p, va);
            let c = with_val(&mut rng, w.p, vb);
            let params = ValParams::from_witness(d, k, &w, iv(va), iv(vb)).unwrap();
            let f = map.specialize(&Rationals, &a, &c).unwrap();
            for start in [Start::Zero, Start::One] {
                let sim = orbit_val(start, &params, 6).unwrap();
                let mut x = start.value();
                for t in &sim {
                    x = f.eval(&x);
                    let actual = val_p(&x, &p).unwrap();
                    if t.exact {
                        assert_eq!(actual, t.value);
                    } else {
                        assert!(actual >= t.value);
                    }
                }
            }
        }
    }

    #[test]
    fn shift_remainder_small_cases() {
        let (a, c) = (rat(9, 2), rat(-2, 3));
        let s0 = shift_remainder(3, 1, 0, &a, &c).unwrap();
        assert_eq!(s0.h, XY::var(Rationals, 1));
        assert!(s0.identity_holds);
        let s1 = shift_remainder(3, 1, 1, &a, &c).unwrap();
        let (x, y) = (XY::var(Rationals, 0), XY::var(Rationals, 1));
        let xy = &x + &y;
        let cube = &xy.pow(3) - &x.pow(3);
        let square = &xy.pow(2) - &x.pow(2);
        let expected = (&cube.scale(&rat(-2, 1)) + &square.scale(&rat(3, 1))).scale(&a);
        assert_eq!(s1.h, expected);
        for n in 2..=3 {
            assert!(shift_remainder(3, 1, n, &a, &c).unwrap().identity_holds);
        }
        assert!(shift_remainder(7, 2, 3, &a, &c).is_err());
    }

    #[test]
    fn shift_bounds_in_tie_case() {
        let w = find_idf_prime(3, 1).unwrap().unwrap();
        let p = Int::from(w.p);
        let (a, c) = (rat(9 * 2, 5), rat(-1, 3));
        let s = shift_remainder(3, 1, 2, &a, &c).unwrap();
        for (x, y) in [(rat(1, 3), rat(9, 1)), (rat(2, 1), rat(27, 2)), (rat(-4, 3), rat(0, 1))] {
            assert!(s.check_bounds(&p, &w, &x, &y).unwrap().holds);
        }
        assert!(s.check_bounds(&p, &w, &rat(1, 9), &rat(9, 1)).is_err());
    }
}
