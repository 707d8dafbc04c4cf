//! One function per verification suite, generic over the coefficient field.

use std::collections::BTreeMap;
use std::path::Path;

use qsl3_core::bqd::{check_coherence, quantum_determinants, Bqd, CaseIhParams};
use qsl3_core::classify::{elimination_trace, normalize, ClassifyError, NormalizationStep, NormalizationWitness};
use qsl3_core::geometry::{
    as_curve, atv_curve, decomposition_consistent, flag_components, is_elliptic, point_context, sigma_fixed_points, verify_gamma_relations,
    verify_gamma_relations_with, MuFactor, PlaneCubic,
};
use qsl3_core::hopf::{antipode_square_report, hopf_presentation, swap_stable, Family as RelationFamily};
use qsl3_core::koszul::{distributivity_check, dual_series_test, transport_check, KoszulError, Verdict};
use qsl3_core::shape::{dimension_table, expected_dimension, shape_presentation, Hilbert, ShapeError};
use qsl3_core::twist::{standard_tau, twist_presentation, untwist_report, verify_untwist_is_case_ie, Y_UNRENAME};
use qsl3_core::{Field, Qj, Rational, Ring};
use serde_json::{json, Value};

use crate::config::Family;
use crate::formats::{bqd_json, scalar};
use crate::report::{Check, Status};

/// Checks plus structured data and optional text lines of one suite run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Body {
    pub checks: Vec<Check>,
    pub data: Value,
    pub text: Vec<String>,
}

impl Body {
    fn failed(name: &str, err: impl std::fmt::Display) -> Self {
        Body { checks: vec![Check::new(name, Status::Fail, err.to_string())], data: Value::Null, text: Vec::new() }
    }
}

fn params_json<F: Field>(p: &CaseIhParams<F>) -> Value {
    json!({
        "alpha": scalar(&p.alpha),
        "beta": scalar(&p.beta),
        "gamma": scalar(&p.gamma),
        "alpha_p": scalar(&p.alpha_p),
        "beta_p": scalar(&p.beta_p),
        "gamma_p": scalar(&p.gamma_p),
    })
}

pub fn check_bqd<F: Field>(family: Family, t: &F) -> Body {
    let b = match family.bqd(t) {
        Ok(b) => b,
        Err(e) => return Body::failed("construct", e),
    };
    let report = check_coherence(&b);
    let checks = report
        .records
        .iter()
        .map(|r| {
            let detail = match &r.witness {
                None => "holds".to_string(),
                Some(w) => format!("entry ({}, {}): {} != {}", w.row, w.col, w.lhs, w.rhs),
            };
            Check::pass_if(format!("condition {}", r.condition.label()), r.pass(), detail)
        })
        .collect();
    let cubics = match quantum_determinants(&b) {
        Ok(q) => json!({ "s": q.s.to_string(), "S": q.cap_s.to_string() }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Body {
        checks,
        data: json!({
            "passed": format!("{}/{}", report.passed(), report.records.len()),
            "type_i": report.type_i,
            "determinant_cubics": cubics,
            "maps": bqd_json(&b),
        }),
        text: vec![format!("{}/{} conditions hold", report.passed(), report.records.len())],
    }
}

/// A Case I.h datum in general position: the normalized one moved by the
/// inverse of the cube-root-of-unity base change.
pub fn sample_classify_input(t: &Rational) -> Option<CaseIhParams<Qj>> {
    let n = CaseIhParams::<Qj>::normalized(&Qj::rational(t.clone())).ok()?;
    let step = NormalizationStep::Case4 { zeta: Qj::one(&()), j: Qj::j() };
    let b = Bqd::from_params(&n).apply_equivalence(&step.matrix().inverse().ok()?, None, false).ok()?;
    b.cyclic_params()
}

fn witness_json(w: &NormalizationWitness) -> Value {
    let steps: Vec<Value> = w
        .steps
        .iter()
        .map(|s| match s {
            NormalizationStep::Transpose => json!({ "step": "transpose" }),
            NormalizationStep::Case4 { zeta, j } => json!({ "step": "case4", "zeta": scalar(zeta), "j": scalar(j) }),
            NormalizationStep::Rescale { beta } => json!({ "step": "rescale", "beta": scalar(beta) }),
        })
        .collect();
    json!({
        "input": params_json(&w.input),
        "steps": steps,
        "result": params_json(&w.result),
        "essential_t": scalar(&w.essential_t),
    })
}

pub fn classify(verify_elimination: bool, params: Option<&CaseIhParams<Qj>>) -> Body {
    let mut body = Body { data: json!({}), ..Body::default() };
    if verify_elimination {
        match elimination_trace() {
            Ok(tr) => {
                body.checks.push(Check::new("q-expansions", Status::Pass, "Q1 and Q2 match the expected expansions"));
                body.checks.push(Check::pass_if("divisible", tr.divisible, "final resultant divided by the target"));
                body.checks.push(Check::pass_if(
                    "bracket-factor",
                    tr.bracket_multiplicity >= 1,
                    format!("bracket multiplicity {}", tr.bracket_multiplicity),
                ));
                body.checks.push(Check::pass_if("monomial-cofactor", tr.cofactor_is_monomial, format!("cofactor = {}", tr.cofactor)));
                body.text.push(format!("cofactor: {}", tr.cofactor));
                body.data["elimination"] = json!({
                    "q1": tr.q1.to_string(),
                    "q2": tr.q2.to_string(),
                    "final_resultant_terms": tr.final_resultant.num_terms().to_string(),
                    "final_resultant_degree": tr.final_resultant.total_degree().map(|d| d.to_string()),
                    "cofactor": tr.cofactor.to_string(),
                    "bracket": tr.bracket.to_string(),
                    "bracket_multiplicity": tr.bracket_multiplicity.to_string(),
                    "bracket_free_part": tr.bracket_free_part.to_string(),
                });
            }
            Err(e @ ClassifyError::ExpansionMismatch { .. }) => body.checks.push(Check::new("q-expansions", Status::Fail, e.to_string())),
            Err(e) => body.checks.push(Check::new("elimination", Status::Fail, e.to_string())),
        }
    }
    if let Some(p) = params {
        match normalize(p) {
            Ok(w) => {
                let normal = w.result.alpha.is_zero() && w.result.alpha_p.is_zero() && w.result.beta.is_one();
                body.checks.push(Check::pass_if("normalized", normal, format!("t = {}", w.essential_t)));
                let replay = w.replay().map(|b| b == Bqd::from_params(&w.result)).unwrap_or(false);
                body.checks.push(Check::pass_if("replay", replay, "steps reproduce the normalized datum"));
                body.data["normalization"] = witness_json(&w);
                body.text.push(format!("essential t = {}", w.essential_t));
            }
            Err(e) => body.checks.push(Check::new("normalized", Status::Fail, e.to_string())),
        }
    }
    body
}

fn cap_check(name: &str, e: &ShapeError) -> Check {
    match e {
        ShapeError::SizeCap { .. } => Check::new(name, Status::Inconclusive, e.to_string()),
        _ => Check::new(name, Status::Fail, e.to_string()),
    }
}

fn koszul_err_check(name: &str, e: &KoszulError) -> Check {
    match e {
        KoszulError::Shape(s) => cap_check(name, s),
        _ => Check::new(name, Status::Fail, e.to_string()),
    }
}

pub fn shape_dims<F: Field>(family: Family, t: &F, max_total: usize, word_cap: usize) -> Body {
    let b = match family.bqd(t) {
        Ok(b) => b,
        Err(e) => return Body::failed("construct", e),
    };
    let p = shape_presentation(&b);
    let strata = p.stratum_dims();
    let expected: BTreeMap<(usize, usize), usize> = [((0, 2), 3), ((1, 1), 10), ((2, 0), 3)].into_iter().collect();
    let strata_str = format!("(2,0):{} (1,1):{} (0,2):{}", strata.get(&(2, 0)).unwrap_or(&0), strata.get(&(1, 1)).unwrap_or(&0), strata.get(&(0, 2)).unwrap_or(&0));
    let mut body = Body { data: json!({ "strata": strata_str }), ..Body::default() };
    body.checks.push(Check::pass_if("relation-strata", strata == expected, strata_str));
    match dimension_table(&p, max_total, word_cap) {
        Ok(table) => {
            let ok = table.iter().filter(|e| e.matches()).count();
            body.checks.push(Check::pass_if("dimensions", ok == table.len(), format!("{}/{} components match d(k,l)", ok, table.len())));
            body.data["table"] = table
                .iter()
                .map(|e| json!({ "k": e.degree.0.to_string(), "l": e.degree.1.to_string(), "computed": e.computed.to_string(), "expected": e.expected.to_string() }))
                .collect();
            body.text.push(format!("{:>3} {:>3} {:>9} {:>9}", "k", "l", "computed", "expected"));
            for e in &table {
                body.text.push(format!("{:>3} {:>3} {:>9} {:>9}{}", e.degree.0, e.degree.1, e.computed, e.expected, if e.matches() { "" } else { "  MISMATCH" }));
            }
        }
        Err(e) => body.checks.push(cap_check("dimensions", &e)),
    }
    body
}

pub fn koszul<F: Field>(family: Family, t: &F, max_degree: usize, series_degree: usize, lattice_cap: usize, word_cap: usize) -> Body {
    let b = match family.bqd(t) {
        Ok(b) => b,
        Err(e) => return Body::failed("construct", e),
    };
    let p = shape_presentation(&b);
    let mut body = Body { data: json!({}), ..Body::default() };
    let mut per_k = Vec::new();
    let mut capped = Vec::new();
    for k in 2..=max_degree {
        let name = format!("distributive k={}", k);
        match distributivity_check(&p, k, lattice_cap) {
            Ok(r) => {
                let (status, detail) = match &r.verdict {
                    Verdict::Distributive => (Status::Pass, "distributive".to_string()),
                    Verdict::NotDistributive(w) => {
                        (Status::Fail, format!("block {} triple dims {:?}: {} != {}", w.block, w.dims, w.lhs_dim, w.rhs_dim))
                    }
                    Verdict::Inconclusive => {
                        capped.push(k);
                        (Status::Inconclusive, format!("lattice cap {} reached", lattice_cap))
                    }
                };
                body.checks.push(Check::new(name, status, detail));
                per_k.push(json!({
                    "k": k.to_string(),
                    "ambient": r.ambient.to_string(),
                    "blocks": r.blocks.to_string(),
                    "members": r.members.to_string(),
                    "largest_block_lattice": r.largest_block_lattice.to_string(),
                }));
            }
            Err(e) => body.checks.push(koszul_err_check(&name, &e)),
        }
    }
    body.data["distributivity"] = Value::Array(per_k);
    match dual_series_test(&p, series_degree, word_cap) {
        Ok(r) => {
            let expected: Vec<usize> = (0..=series_degree).map(|n| (0..=n).map(|k| expected_dimension((k, n - k))).sum()).collect();
            let ok = r.pass && r.dims == expected;
            body.checks.push(Check::pass_if("dual-series", ok, format!("dims {:?}, dual {:?}", r.dims, r.dual_dims)));
            body.data["series"] = json!({
                "dims": r.dims.iter().map(usize::to_string).collect::<Vec<_>>(),
                "dual_dims": r.dual_dims.iter().map(usize::to_string).collect::<Vec<_>>(),
                "sums": r.sums.iter().map(i128::to_string).collect::<Vec<_>>(),
            });
        }
        Err(e) => body.checks.push(koszul_err_check("dual-series", &e)),
    }
    let ts = standard_tau(&t.context());
    for k in 2..=max_degree {
        let name = format!("transport k={}", k);
        match transport_check(&p, &ts, k, lattice_cap) {
            Ok(r) if !r.pass() && capped.contains(&k) => {
                body.checks.push(Check::new(name, Status::Inconclusive, format!("lattice cap {} reached", lattice_cap)))
            }
            Ok(r) => body.checks.push(Check::pass_if(name, r.pass(), format!("{} members, {} twisted", r.members, r.twisted_members))),
            Err(e) => body.checks.push(koszul_err_check(&name, &e)),
        }
    }
    body
}

pub fn twist_verify<F: Field>(t: &F) -> Body {
    let mut body = Body { data: json!({}), ..Body::default() };
    match verify_untwist_is_case_ie(t) {
        Ok(ok) => body.checks.push(Check::pass_if("identification", ok, "shape(I.h) = twist of renamed shape(I.e)")),
        Err(e) => return Body::failed("identification", e),
    }
    for rename in [true, false] {
        if let Ok(r) = untwist_report(t, rename) {
            body.data[if rename { "renamed" } else { "unrenamed" }] = json!({
                "equal": r.equal,
                "relations_ie": r.relations_ie.to_string(),
                "relations_ih": r.relations_ih.to_string(),
                "common": r.common.to_string(),
                "tau_preserves_relations": r.tau_preserves_relations,
            });
            if !rename {
                body.checks.push(Check::pass_if("negative-control", !r.equal, format!("without renaming the spans share {} of {}", r.common, r.relations_ih)));
            }
        }
    }
    let ie = match Bqd::case_ie(t) {
        Ok(b) => shape_presentation(&b).permute_generators(&Y_UNRENAME),
        Err(e) => return Body::failed("construct", e),
    };
    let ts = standard_tau(&t.context());
    let round = twist_presentation(&ie, &ts).and_then(|tw| Ok((twist_presentation(&tw, &ts.inverse())?, tw)));
    match round {
        Ok((back, tw)) => {
            body.checks.push(Check::pass_if("round-trip", back == ie, "untwisting the twist returns the original span"));
            let (mut h1, mut h2) = (Hilbert::new(&ie), Hilbert::new(&tw));
            let same = (0..=3).all(|n| h1.total_dimension(n) == h2.total_dimension(n));
            body.checks.push(Check::pass_if("dimensions-preserved", same, "total degrees 0..3"));
        }
        Err(e) => body.checks.push(Check::new("round-trip", Status::Fail, e.to_string())),
    }
    body
}

pub fn curves<F: Field>(family: Family, t: &F, print_cubics: bool) -> Body {
    let b = match family.bqd(t) {
        Ok(b) => b,
        Err(e) => return Body::failed("construct", e),
    };
    let Some(p) = b.cyclic_params() else {
        return Body::failed("cyclic-params", "datum is not of cyclic shape");
    };
    let s = match quantum_determinants(&b).map_err(|e| e.to_string()).and_then(|q| PlaneCubic::new(q.s).map_err(|e| e.to_string())) {
        Ok(s) => s,
        Err(e) => return Body::failed("determinant-cubic", e),
    };
    let atv = atv_curve(&p);
    let printed = as_curve(&p);
    let elliptic = |c: &PlaneCubic<F>| is_elliptic(c).unwrap_or(false);
    let mut body = Body::default();
    body.checks.push(Check::pass_if("atv-triangle", atv.is_triangle(), atv.poly().to_string()));
    body.checks.push(Check::pass_if("atv-not-elliptic", !elliptic(&atv), "singular"));
    // The smoothness comparison concerns Case I.h; for I.e only the point-module side is checked.
    if family == Family::Ih {
        body.checks.push(Check::pass_if("as-elliptic", elliptic(&s), s.poly().to_string()));
        body.checks.push(Check::pass_if("curves-differ", !s.proportional_to(&atv), "determinant cubic is not a multiple of the point-module cubic"));
    }
    body.data = json!({
        "params": params_json(&p),
        "atv_curve": atv.poly().to_string(),
        "as_cubic": s.poly().to_string(),
        "as_cubic_elliptic": elliptic(&s),
        "printed_as_curve": printed.poly().to_string(),
        "printed_as_curve_elliptic": elliptic(&printed),
    });
    if print_cubics {
        body.text.push(format!("point-module cubic: {} = 0", atv.poly()));
        body.text.push(format!("determinant cubic:  {} = 0", s.poly()));
        body.text.push(format!("printed AS curve:   {} = 0", printed.poly()));
    }
    body
}

pub fn flag<F: Field>(t: &F) -> Body {
    let report = verify_gamma_relations(t);
    let total = report.entries.len();
    let mut body = Body::default();
    body.checks.push(Check::pass_if(
        "modified-relations",
        report.all_pass(),
        format!("{}/{} relation instances hold", total - report.entries.iter().filter(|e| !e.holds()).count(), total),
    ));
    body.checks.push(Check::pass_if("decomposition", decomposition_consistent(t), "sigma_i = tau_i sigma_i° on all components"));
    let fixed = sigma_fixed_points(t);
    body.checks.push(Check::pass_if("no-common-fixed-point", fixed.is_empty(), format!("{} candidate fixed loci", fixed.len())));
    let mut wrong = flag_components(t);
    wrong[4].sigma1_factor = MuFactor::T;
    body.checks.push(Check::pass_if(
        "negative-control",
        !verify_gamma_relations_with(t, &wrong).all_pass(),
        "a wrong mu-factor breaks a relation",
    ));
    let pc = point_context(&t.context());
    let comps: Vec<Value> = flag_components(t)
        .iter()
        .map(|c| {
            let [x, y] = c.polys(&pc);
            let row = |r: &[qsl3_core::MultiPoly<F>; 3]| r.iter().map(|e| e.to_string()).collect::<Vec<_>>();
            json!({
                "id": c.id.to_string(),
                "x": row(&x),
                "y": row(&y),
                "sigma1_mu_factor": c.sigma1_factor.label(),
                "sigma2_mu_factor": c.sigma2_factor.label(),
                "tau1_target": c.tau1_target.to_string(),
                "tau2_target": c.tau2_target.to_string(),
                "interior": c.is_interior(),
            })
        })
        .collect();
    body.data = json!({ "components": comps });
    body
}

pub fn hopf<F: Field>(family: Family, t: &F, dump: Option<&Path>) -> Body {
    let b = match family.bqd(t) {
        Ok(b) => b,
        Err(e) => return Body::failed("construct", e),
    };
    let h = hopf_presentation(&b);
    let counts = h.family_counts();
    let mut body = Body::default();
    body.checks.push(Check::pass_if(
        "relation-counts",
        counts.iter().all(|(f, n)| *n == f.expected_count()),
        counts.iter().map(|(f, n)| format!("{}:{}", f.label(), n)).collect::<Vec<_>>().join(" "),
    ));
    let counit_ok = h.counit.iter().enumerate().all(|(g, e)| if (g % 9) / 3 == g % 3 { e.is_one() } else { e.is_zero() });
    body.checks.push(Check::pass_if("counit", counit_ok, "epsilon(t^i_j) = delta^i_j"));
    let sq = antipode_square_report(&b);
    body.checks.push(Check::pass_if("antipode-square", sq.identity_holds, "S^2(t) = Q t Q^-1"));
    body.checks.push(Check::pass_if("s2-fixes-generators", sq.fixes_generators, "Type I: S^2 = id on generators"));
    match swap_stable(&b) {
        Ok(ok) => body.checks.push(Check::pass_if("swap-stable", ok, "relation span invariant under V <-> W")),
        Err(e) => body.checks.push(Check::new("swap-stable", Status::Fail, e.to_string())),
    }
    let example = h.family(RelationFamily::CapC).next().map(|r| r.element.display());
    body.data = json!({
        "relations": h.relations.len().to_string(),
        "reduced_dimension": h.reduced_dimension().to_string(),
        "family_counts": counts.iter().map(|(f, n)| (f.label().to_string(), Value::String(n.to_string()))).collect::<serde_json::Map<_, _>>(),
        "example_c_relation": example,
    });
    if let Some(path) = dump {
        let ok = std::fs::write(path, h.dump_relations());
        body.checks.push(Check::pass_if("dump", ok.is_ok(), ok.err().map_or(path.display().to_string(), |e| e.to_string())));
    }
    body
}
