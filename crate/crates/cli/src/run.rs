use std::collections::BTreeMap;

use pcf_core::arith::{fmt_rat, parse_rat, ExtVal, Rat};
use pcf_core::belyi::{belyi_coeffs, ncritical_form, ncritical_form_symbolic};
use pcf_core::idf::{conjecture_check, find_idf_prime, mordell_candidates, scan, IdfWitness};
use pcf_core::pcf::{
    critical_orbit_poly, integrality_certificate, ncrit_counterexamples, transversality_check, Budget,
    StrippedResultant,
};
use pcf_core::polyring::{BiPoly, Ring};
use pcf_core::valdyn::{classify_case, divergence_certificate, orbit_val, CaseTag, Divergence, Start, ValParams};
use pcf_core::{Error, Result};
use serde_json::json;

use crate::args::*;
use crate::report::{Outcome, Table};

fn pass_fail(ok: bool) -> (&'static str, i32) {
    if ok {
        ("PASS", 0)
    } else {
        ("FAIL", 1)
    }
}

fn witness_row(d: u64, k: u64, w: Option<&IdfWitness>) -> Vec<String> {
    let mut row = vec![d.to_string(), k.to_string(), w.is_some().to_string()];
    match w {
        Some(w) => row.extend([w.p.to_string(), w.r.to_string(), w.e.to_string()]),
        None => row.extend([String::new(), String::new(), String::new()]),
    }
    row
}

const WITNESS_COLUMNS: [&str; 6] = ["d", "k", "has_idf", "p", "r", "e"];

pub fn belyi_coeffs_cmd(a: &DkArgs) -> Result<Outcome> {
    let b = belyi_coeffs(a.d, a.k)?;
    let mut table = Table::new(&["i", "exponent", "coefficient"]);
    for (i, c) in b.coeffs.iter().enumerate() {
        table.push(vec![i.to_string(), (a.d - i as u64).to_string(), fmt_rat(c)]);
    }
    let ok = b.invariants_hold();
    let (verdict, exit) = pass_fail(ok);
    Ok(Outcome::new(verdict, table)
        .certificate(json!({ "belyi": b, "invariants_hold": ok }))
        .exit(exit))
}

pub fn belyi_ncrit_cmd(a: &NcritArgs) -> Result<Outcome> {
    let mut table = Table::new(&["exponent", "coefficient"]);
    let (poly, ok, gammas) = if a.gamma.is_empty() && a.profile.len() == 2 {
        let form = ncritical_form_symbolic(a.d, &a.profile)?;
        let ok = form.poly.derivative() == form.expected_derivative();
        let mut coeffs = BTreeMap::new();
        for (i, c) in form.poly.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let s = c.fmt_var("γ");
            table.push(vec![i.to_string(), s.clone()]);
            coeffs.insert(i.to_string(), s);
        }
        (json!(coeffs), ok, json!(["1", "γ"]))
    } else {
        let gammas: Vec<Rat> = a.gamma.iter().map(|g| parse_rat(g)).collect::<Result<_>>()?;
        let form = ncritical_form(a.d, &a.profile, &gammas)?;
        let ok = form.poly.derivative() == form.expected_derivative();
        for (i, c) in form.poly.coeffs().iter().enumerate().filter(|(_, c)| !form.poly.ring().is_zero(c)) {
            table.push(vec![i.to_string(), fmt_rat(c)]);
        }
        let gs: Vec<String> = form.gammas.iter().map(fmt_rat).collect();
        (json!(form.poly), ok, json!(gs))
    };
    let (verdict, exit) = pass_fail(ok);
    Ok(Outcome::new(verdict, table)
        .certificate(json!({ "d": a.d, "profile": a.profile, "gammas": gammas, "poly": poly, "derivative_matches": ok }))
        .exit(exit))
}

fn witness_outcome(d: u64, k: u64, w: Option<IdfWitness>) -> Outcome {
    let mut table = Table::new(&WITNESS_COLUMNS);
    table.push(witness_row(d, k, w.as_ref()));
    match w {
        Some(w) => Outcome::new("FOUND", table).witness(w),
        None => Outcome::new("NONE", table),
    }
}

pub fn idf_find_cmd(a: &DkArgs) -> Result<Outcome> {
    Ok(witness_outcome(a.d, a.k, find_idf_prime(a.d, a.k)?))
}

pub fn idf_conjecture_cmd(a: &ConjectureArgs) -> Result<Outcome> {
    Ok(witness_outcome(a.n, a.k, conjecture_check(a.n, a.k)?))
}

pub fn idf_scan_cmd(a: &ScanArgs) -> Result<Outcome> {
    let rows = scan(a.dmin, a.dmax, a.k)?;
    let exceptions: Vec<u64> = rows.iter().filter(|r| r.witness.is_none()).map(|r| r.d).collect();
    let mut table = Table::new(&WITNESS_COLUMNS);
    for r in rows.iter().filter(|r| a.all || r.witness.is_none()) {
        table.push(witness_row(r.d, r.k, r.witness.as_ref()));
    }
    Ok(Outcome::new("OK", table).certificate(json!({
        "scanned": rows.len(),
        "exceptions": exceptions,
    })))
}

pub fn idf_mordell_cmd(a: &MordellArgs) -> Result<Outcome> {
    let cands = mordell_candidates(a.xmax)?;
    let mut table = Table::new(&["x", "y", "b", "c", "d"]);
    for m in &cands {
        table.push([m.x, m.y, m.b, m.c, m.d].iter().map(u64::to_string).collect());
    }
    Ok(Outcome::new("OK", table).certificate(json!({ "candidates": cands })))
}

fn val_params(a: &ValArgs) -> Result<(ValParams, Option<IdfWitness>)> {
    let va: ExtVal = a.valpha.parse()?;
    let vb: ExtVal = a.vbeta.parse()?;
    let (r, e, w) = match (a.r, a.e) {
        (Some(r), Some(e)) => (r, e, None),
        (None, None) => {
            let w = find_idf_prime(a.d, a.k)?.ok_or_else(|| {
                Error::Unsupported(format!("no IDF prime for (d, k) = ({}, {}); pass --r and --e", a.d, a.k))
            })?;
            (w.r, w.e, Some(w))
        }
        _ => return Err(Error::Domain("--r and --e must be given together".into())),
    };
    Ok((ValParams::new(a.d, a.k, r, e, va, vb)?, w))
}

pub fn valdyn_orbit_cmd(a: &OrbitArgs) -> Result<Outcome> {
    let (params, w) = val_params(&a.val)?;
    let start = Start::from_u8(a.start)?;
    let orbit = orbit_val(start, &params, a.steps)?;
    let mut table = Table::new(&["step", "valuation", "exact"]);
    for (i, t) in orbit.iter().enumerate() {
        table.push(vec![(i + 1).to_string(), t.value.to_string(), t.exact.to_string()]);
    }
    let case = classify_case(&params);
    let mut out = Outcome::new("OK", table)
        .certificate(json!({ "params": params, "case": case, "start": start, "orbit": orbit }));
    if let Some(w) = w {
        out = out.witness(w);
    }
    Ok(out)
}

pub fn valdyn_classify_cmd(a: &ValArgs) -> Result<Outcome> {
    let (params, w) = val_params(a)?;
    let case = classify_case(&params);
    let mut table = Table::new(&["case", "kind", "detail"]);
    let (verdict, cert) = if case == CaseTag::Integral {
        table.push(vec![case.name().into(), "integral".into(), String::new()]);
        ("INTEGRAL", json!({ "params": params, "case": case }))
    } else {
        let div = divergence_certificate(&params)?;
        let (kind, detail) = match &div {
            Divergence::Decreasing { delta, .. } => ("decreasing", format!("delta={}", fmt_rat(delta))),
            Divergence::Constant { value, .. } => ("constant", format!("value={value}")),
            Divergence::Inconclusive { reason, .. } => ("inconclusive", reason.clone()),
        };
        table.push(vec![case.name().into(), kind.into(), detail]);
        let verdict = if div.is_conclusive() { "CONCLUSIVE" } else { "INCONCLUSIVE" };
        (verdict, json!({ "params": params, "case": case, "divergence": div }))
    };
    let mut out = Outcome::new(verdict, table).certificate(cert);
    if let Some(w) = w {
        out = out.witness(w);
    }
    Ok(out)
}

fn poly_rows(table: &mut Table, name: &str, p: &BiPoly) {
    for (e, c) in p.terms() {
        table.push(vec![name.into(), e[0].to_string(), e[1].to_string(), fmt_rat(c)]);
    }
}

pub fn pcf_locus_cmd(a: &LocusArgs, budget: &Budget) -> Result<Outcome> {
    let f = critical_orbit_poly(a.d, a.k, Start::Zero, a.n, budget)?;
    let g = critical_orbit_poly(a.d, a.k, Start::One, a.m, budget)?;
    let mut table = Table::new(&["poly", "a_exp", "c_exp", "coefficient"]);
    poly_rows(&mut table, "F", &f.poly);
    poly_rows(&mut table, "G", &g.poly);
    Ok(Outcome::new("OK", table).certificate(json!({ "F": f, "G": g })))
}

fn resultant_rows(table: &mut Table, name: &str, r: &StrippedResultant) {
    let mut counts: Vec<(ExtVal, usize)> = Vec::new();
    for v in r.root_valuations() {
        match counts.last_mut() {
            Some((last, n)) if *last == v => *n += 1,
            _ => counts.push((v, 1)),
        }
    }
    for (v, n) in counts {
        table.push(vec![name.into(), v.to_string(), n.to_string()]);
    }
}

pub fn pcf_integrality_cmd(a: &LocusArgs, budget: &Budget) -> Result<Outcome> {
    let cert = integrality_certificate(a.d, a.k, a.n, a.m, budget)?;
    let mut table = Table::new(&["resultant", "root_valuation", "multiplicity"]);
    resultant_rows(&mut table, "R_a", &cert.r_a);
    resultant_rows(&mut table, "R_c", &cert.r_c);
    let (verdict, exit) = pass_fail(cert.verdict.is_pass());
    Ok(Outcome::new(verdict, table).witness(cert.witness).certificate(&cert).exit(exit))
}

pub fn pcf_transversality_cmd(a: &TransversalityArgs, budget: &Budget) -> Result<Outcome> {
    let l = &a.locus;
    let rep = transversality_check(l.d, l.k, l.n, l.m, a.emax, budget)?;
    let mut table = Table::new(&["e", "alpha", "beta", "jacobian", "alpha_j_sign"]);
    for (i, level) in rep.levels.iter().enumerate() {
        for s in &level.solutions {
            table.push(vec![
                (i + 1).to_string(),
                s.alpha.clone(),
                s.beta.clone(),
                s.jacobian_value.clone(),
                s.alpha_j_sign.map(|x| x.to_string()).unwrap_or_default(),
            ]);
        }
    }
    let (verdict, exit) = pass_fail(rep.verdict.is_pass());
    Ok(Outcome::new(verdict, table).witness(rep.witness).certificate(&rep).exit(exit))
}

pub fn pcf_counterexamples_cmd() -> Result<Outcome> {
    let rep = ncrit_counterexamples()?;
    let mut table = Table::new(&["check", "result"]);
    let ten = &rep.degree_ten;
    let four = &rep.degree_four;
    table.push(vec!["degree10_reduces_to_c".into(), ten.reduces_to_constant.to_string()]);
    for s in &ten.surviving_pairs {
        table.push(vec![
            format!("degree10_pair_{}_{}_binomial", s.j[0], s.j[1]),
            format!("{} divisible={}", s.binomial, s.binomial_divisible),
        ]);
    }
    table.push(vec!["degree4_form_matches".into(), four.form_matches.to_string()]);
    table.push(vec!["degree4_reduction".into(), four.reduction.clone()]);
    for j in &four.orbit_jacobians {
        let [m, n, k] = j.iterations;
        table.push(vec![format!("degree4_orbit_jacobian_{m}{n}{k}_zero"), j.is_zero.to_string()]);
    }
    table.push(vec!["degree4_relation_jacobian".into(), four.relation_jacobian.clone()]);
    let (verdict, exit) = pass_fail(rep.holds);
    Ok(Outcome::new(verdict, table).certificate(&rep).exit(exit))
}
