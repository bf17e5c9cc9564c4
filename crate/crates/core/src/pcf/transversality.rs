use rayon::prelude::*;
use serde::Serialize;

use super::{critical_orbit_poly, Budget, Verdict};
use crate::belyi::belyi_coeffs;
use crate::idf::{find_idf_prime, verify_witness, IdfWitness};
use crate::polyring::{
    make_ext_field, reduce_rat, BiPoly, FieldDescriptor, FieldElem, FiniteField, MultiPoly, Ring, UniPoly,
    VAR_A, VAR_C,
};
use crate::valdyn::Start;
use crate::{Error, Result};

/// The reduction `B̄_{d,k} = s z^{tp}` at an IDF prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedMap {
    pub p: u64,
    pub s: u64,
    pub t: u64,
}

impl ReducedMap {
    pub fn degree(&self) -> u64 {
        self.t * self.p
    }

    pub fn to_poly(&self, field: &FiniteField) -> UniPoly<FiniteField> {
        UniPoly::monomial(field.clone(), field.elem(self.s as i64), self.degree() as usize)
    }
}

pub fn reduce_map(d: u64, k: u64, w: &IdfWitness) -> Result<ReducedMap> {
    if !verify_witness(w, d, k) {
        return Err(Error::Domain(format!("{w:?} is not an IDF witness for ({d}, {k})")));
    }
    let field = FiniteField::prime_field(w.p)?;
    let b = belyi_coeffs(d, k)?;
    let reduced = b.to_poly().reduce(&field)?;
    let s = reduce_rat(&field, b.b(w.r))?;
    let tp = d - w.r;
    let out = ReducedMap { p: w.p, s: s.code(), t: tp / w.p };
    if field.is_zero(&s) || reduced != out.to_poly(&field) {
        return Err(Error::Domain(format!("B_{{{d},{k}}} does not reduce to a monomial mod {}", w.p)));
    }
    Ok(out)
}

/// `det [[F_a, G_a], [F_c, G_c]] = F_a G_c - G_a F_c`.
pub fn jacobian<R: Ring>(f: &MultiPoly<R, 2>, g: &MultiPoly<R, 2>) -> MultiPoly<R, 2> {
    &(&f.partial(VAR_A) * &g.partial(VAR_C)) - &(&g.partial(VAR_A) * &f.partial(VAR_C))
}

/// A common zero of `F̄_n`, `Ḡ_m` over `GF(p^e)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteSolution {
    pub alpha: String,
    pub beta: String,
    pub jacobian_value: String,
    /// `1` or `-1` when `α J̄(α, β) = ±1`; in characteristic 2 the two coincide and `1` is used.
    pub alpha_j_sign: Option<i8>,
    #[serde(skip)]
    pub point: (FieldElem, FieldElem),
    #[serde(skip)]
    pub j: FieldElem,
}

impl FiniteSolution {
    pub fn jacobian_nonzero(&self) -> bool {
        self.j.code() != 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub field: FieldDescriptor,
    pub solutions: Vec<FiniteSolution>,
    /// Common zeros with `α = 0`, left out of `solutions`.
    pub excluded_alpha_zero: usize,
}

/// All `(α, β) ∈ GF(p^e)^2` with `F̄_n = Ḡ_m = 0`, in enumeration order.
pub fn solve_mod(d: u64, k: u64, n: u32, m: u32, w: &IdfWitness, e: u32, budget: &Budget) -> Result<SolveResult> {
    let f = critical_orbit_poly(d, k, Start::Zero, n, budget)?.poly;
    let g = critical_orbit_poly(d, k, Start::One, m, budget)?.poly;
    solve_pair(&f, &g, w.p, e, budget)
}

fn solve_pair(f: &BiPoly, g: &BiPoly, p: u64, e: u32, budget: &Budget) -> Result<SolveResult> {
    if e == 0 {
        return Err(Error::Domain("extension degree e must be at least 1".into()));
    }
    if p.checked_pow(2 * e).map_or(true, |x| x > budget.enumeration) {
        return Err(Error::Resource(format!(
            "p^(2e) = {p}^{} exceeds the enumeration budget {}",
            2 * e,
            budget.enumeration
        )));
    }
    let field = make_ext_field(p, e)?;
    let fb = f.reduce(&field)?;
    let gb = g.reduce(&field)?;
    let jb = jacobian(&fb, &gb);
    let alphas: Vec<FieldElem> = field.elements().collect();
    let hits: Vec<(FieldElem, FieldElem)> = alphas
        .par_iter()
        .flat_map_iter(|&a| {
            let (fb, gb) = (&fb, &gb);
            field
                .elements()
                .filter(move |&c| fb.eval(&[a, c]).code() == 0 && gb.eval(&[a, c]).code() == 0)
                .map(move |c| (a, c))
        })
        .collect();
    let excluded_alpha_zero = hits.iter().filter(|(a, _)| a.code() == 0).count();
    let one = field.one();
    let minus_one = field.neg(&one);
    let solutions = hits
        .into_iter()
        .filter(|(a, _)| a.code() != 0)
        .map(|(a, c)| {
            let j = jb.eval(&[a, c]);
            let aj = field.mul(&a, &j);
            let alpha_j_sign = if aj == one {
                Some(1)
            } else if aj == minus_one {
                Some(-1)
            } else {
                None
            };
            FiniteSolution {
                alpha: field.fmt_elem(&a),
                beta: field.fmt_elem(&c),
                jacobian_value: field.fmt_elem(&j),
                alpha_j_sign,
                point: (a, c),
                j,
            }
        })
        .collect();
    Ok(SolveResult { field: field.descriptor(), solutions, excluded_alpha_zero })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransversalityReport {
    pub d: u64,
    pub k: u64,
    pub n: u32,
    pub m: u32,
    pub witness: IdfWitness,
    pub reduced_map: ReducedMap,
    pub jacobian: BiPoly,
    /// One entry per `e = 1..=e_max`.
    pub levels: Vec<SolveResult>,
    /// Solutions with `J̄ = 0`; empty on PASS.
    pub failures: Vec<FiniteSolution>,
    /// Whether `α J̄ = ±1` at every solution.
    pub unit_identity: bool,
    pub observed_signs: Vec<i8>,
    pub verdict: Verdict,
}

/// Checks `J̄(α, β) != 0` at every common zero of `F̄_n`, `Ḡ_m` over `GF(p^e)`,
/// `e <= e_max`, for the first IDF prime `p`.
pub fn transversality_check(d: u64, k: u64, n: u32, m: u32, e_max: u32, budget: &Budget) -> Result<TransversalityReport> {
    budget.check_pair(d, n, m)?;
    if e_max == 0 {
        return Err(Error::Domain("e_max must be at least 1".into()));
    }
    let witness = find_idf_prime(d, k)?
        .ok_or_else(|| Error::Unsupported(format!("no IDF prime for (d, k) = ({d}, {k})")))?;
    let reduced_map = reduce_map(d, k, &witness)?;
    let f = critical_orbit_poly(d, k, Start::Zero, n, budget)?.poly;
    let g = critical_orbit_poly(d, k, Start::One, m, budget)?.poly;
    let levels = (1..=e_max)
        .map(|e| solve_pair(&f, &g, witness.p, e, budget))
        .collect::<Result<Vec<_>>>()?;
    let all = || levels.iter().flat_map(|l| l.solutions.iter());
    let failures: Vec<FiniteSolution> = all().filter(|s| !s.jacobian_nonzero()).cloned().collect();
    let unit_identity = all().all(|s| s.alpha_j_sign.is_some());
    let mut observed_signs: Vec<i8> = all().filter_map(|s| s.alpha_j_sign).collect();
    observed_signs.sort_unstable();
    observed_signs.dedup();
    Ok(TransversalityReport {
        d,
        k,
        n,
        m,
        witness,
        reduced_map,
        jacobian: jacobian(&f, &g),
        verdict: Verdict::from_bool(failures.is_empty()),
        levels,
        failures,
        unit_identity,
        observed_signs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn w(p: u64, r: u64, e: u32) -> IdfWitness {
        IdfWitness { p, r, e }
    }

    fn q(n: i64) -> BiPoly {
        BiPoly::rat(rat(n, 1))
    }

    #[test]
    fn reduced_maps() {
        assert_eq!(reduce_map(3, 1, &w(3, 0, 1)).unwrap(), ReducedMap { p: 3, s: 1, t: 1 });
        assert_eq!(reduce_map(5, 1, &w(5, 0, 1)).unwrap(), ReducedMap { p: 5, s: 1, t: 1 });
        assert_eq!(reduce_map(8, 2, &w(3, 2, 1)).unwrap(), ReducedMap { p: 3, s: 1, t: 2 });
        assert!(reduce_map(8, 2, &w(3, 2, 2)).is_err());
        assert!(reduce_map(27, 3, &w(13, 1, 1)).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let (a, c) = (BiPoly::a(), BiPoly::c());
        let g = &(&a + &c) - &q(1);
        assert_eq!(jacobian(&c, &g), q(-1));
        assert!(jacobian(&g, &g).is_zero());
        let b = Budget::default();
        let f2 = critical_orbit_poly(3, 1, Start::Zero, 2, &b).unwrap().poly;
        let gf3 = FiniteField::prime_field(3).unwrap();
        let jbar = jacobian(&f2.reduce(&gf3).unwrap(), &g.reduce(&gf3).unwrap());
        let expected = (&c.pow(3) - &q(1)).reduce(&gf3).unwrap();
        assert_eq!(jbar, expected);
    }

    fn pairs(r: &SolveResult) -> Vec<(String, String, String)> {
        r.solutions
            .iter()
            .map(|s| (s.alpha.clone(), s.beta.clone(), s.jacobian_value.clone()))
            .collect()
    }

    fn s(x: &str, y: &str, z: &str) -> (String, String, String) {
        (x.into(), y.into(), z.into())
    }

    #[test]
    fn finite_solutions() {
        let b = Budget::default();
        let r = solve_mod(3, 1, 1, 1, &w(3, 0, 1), 1, &b).unwrap();
        assert_eq!(pairs(&r), vec![s("1", "0", "2")]);
        let r = solve_mod(3, 1, 2, 1, &w(3, 0, 1), 1, &b).unwrap();
        assert_eq!(pairs(&r), vec![s("1", "0", "2"), s("2", "2", "1")]);
        let r1 = solve_mod(3, 1, 1, 1, &w(3, 0, 1), 1, &b).unwrap();
        let r2 = solve_mod(3, 1, 1, 1, &w(3, 0, 1), 2, &b).unwrap();
        for sol in &r1.solutions {
            assert!(r2.solutions.iter().any(|t| t.alpha == sol.alpha && t.beta == sol.beta));
        }
        assert!(r2.solutions.iter().all(FiniteSolution::jacobian_nonzero));
        let tight = Budget { enumeration: 80, ..Budget::default() };
        assert!(matches!(solve_mod(3, 1, 1, 1, &w(3, 0, 1), 2, &tight), Err(Error::Resource(_))));
    }

    #[test]
    fn transversality_examples() {
        let b = Budget::default();
        let rep = transversality_check(3, 1, 1, 1, 2, &b).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.observed_signs, vec![-1]);
        let rep = transversality_check(3, 1, 2, 1, 1, &b).unwrap();
        assert!(rep.verdict.is_pass() && rep.unit_identity);
        assert_eq!(rep.levels[0].solutions.len(), 2);
        assert_eq!(rep.observed_signs, vec![-1]);
        let rep = transversality_check(4, 1, 1, 1, 1, &b).unwrap();
        assert_eq!(rep.witness.p, 2);
        assert_eq!(pairs(&rep.levels[0]), vec![s("1", "0", "1")]);
        assert!(rep.verdict.is_pass());
    }
}
