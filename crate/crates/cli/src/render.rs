//! Text and JSON rendering of core results.
//!
//! JSON keeps every exact integer as a decimal string and every rational as
//! `{"num": .., "den": ..}` so that consumers never lose precision.

use exckit_core::admissibility::{AdmissibleCatalog, InequalityReport};
use exckit_core::lattice_enum::DoublingPattern;
use exckit_core::singularity::HilbertProfile;
use exckit_core::verify::SuiteReport;
use exckit_core::{ExactInt, ExactRat};
use serde_json::{json, Value};

pub const SCHEMA: &str = "exckit/1";

pub fn int(x: &ExactInt) -> Value {
    Value::String(x.to_string())
}

pub fn rat(x: &ExactRat) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

pub fn degrees(a: &[i64]) -> Value {
    Value::Array(a.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn tuple(a: &[i64]) -> String {
    let parts: Vec<String> = a.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn pattern_json(pattern: &DoublingPattern, len: usize) -> Value {
    match pattern {
        DoublingPattern::Prefix(h) => json!({ "kind": "prefix", "h": h }),
        DoublingPattern::Subset(_) => {
            json!({ "kind": "subset", "doubled": pattern.doubled_indices(len) })
        }
    }
}

pub fn check_json(system: &str, p: usize, a: &[i64], report: &InequalityReport) -> Value {
    let records: Vec<Value> = report
        .records()
        .iter()
        .map(|r| {
            json!({
                "pattern": pattern_json(&r.pattern, a.len()),
                "value": int(&r.value),
                "pass": r.pass,
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "command": "check",
        "system": system,
        "p": p,
        "n": p + a.len(),
        "a": degrees(a),
        "records": records,
        "overall": report.overall(),
    })
}

pub fn check_human(system: &str, p: usize, a: &[i64], report: &InequalityReport) -> String {
    let mut out = format!(
        "system: {system}  p = {p}  n = {}  a = {}\n",
        p + a.len(),
        tuple(a)
    );
    for r in report.records() {
        out += &format!(
            "  {:<20} value {:>12}  {}\n",
            r.pattern.to_string(),
            r.value,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    out += &format!(
        "overall: {}\n",
        if report.overall() { "PASS" } else { "FAIL" }
    );
    out
}

pub fn catalog_json(cat: &AdmissibleCatalog) -> Value {
    let req = &cat.request;
    json!({
        "schema": SCHEMA,
        "command": "enumerate",
        "p": req.p,
        "codim": req.codim,
        "bound": req.bound,
        "system": req.system.to_string(),
        "filters": req.filters.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "label": "admissible (necessary conditions only)",
        "examined": cat.examined,
        "count": cat.vectors.len(),
        "vectors": cat.vectors.iter().map(|v| degrees(v)).collect::<Vec<_>>(),
    })
}

pub fn catalog_csv(cat: &AdmissibleCatalog) -> String {
    let header: Vec<String> = (1..=cat.request.codim).map(|i| format!("a{i}")).collect();
    let mut out = header.join(",") + "\n";
    for v in &cat.vectors {
        let row: Vec<String> = v.iter().map(i64::to_string).collect();
        out += &(row.join(",") + "\n");
    }
    out
}

pub fn catalog_human(cat: &AdmissibleCatalog) -> String {
    let req = &cat.request;
    let filters: Vec<String> = req.filters.iter().map(|f| f.to_string()).collect();
    let mut out = format!(
        "admissible degree vectors (necessary conditions only)\n\
         p = {}  codim = {}  bound = {}  system = {}  filters = [{}]\n\
         examined {}  admissible {}\n",
        req.p,
        req.codim,
        req.bound,
        req.system,
        filters.join(","),
        cat.examined,
        cat.vectors.len()
    );
    for v in &cat.vectors {
        out += &format!("  {}\n", tuple(v));
    }
    out
}

pub fn hilbert_json(prof: &HilbertProfile) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "hilbert",
        "p": prof.p,
        "a": degrees(&prof.a),
        "values": prof.values.iter().map(int).collect::<Vec<_>>(),
        "embedding_dimension": int(&prof.embedding_dimension),
        "rational": prof.rational,
        "rational_semantics": "true means rationality is established; false means not established",
    })
}

pub fn hilbert_human(prof: &HilbertProfile) -> String {
    let mut out = format!("p = {}  a = {}\n", prof.p, tuple(&prof.a));
    for (r, v) in prof.values.iter().enumerate() {
        out += &format!("  h({r}) = {v}\n");
    }
    out += &format!("embedding dimension: {}\n", prof.embedding_dimension);
    out += &format!(
        "rational: {}\n",
        if prof.rational {
            "yes"
        } else {
            "not established"
        }
    );
    out
}

pub struct LeadingCoeffView<'a> {
    pub p: usize,
    pub a: &'a [i64],
    pub h: Option<usize>,
    pub coefficient: &'a ExactRat,
    pub scaled: &'a ExactRat,
    pub theorem_sum: &'a ExactInt,
    pub ratio: Option<&'a ExactRat>,
    pub polynomial: &'a [ExactRat],
}

pub fn leading_json(v: &LeadingCoeffView<'_>) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "leading-coeff",
        "p": v.p,
        "n": v.p + v.a.len(),
        "a": degrees(v.a),
        "h": v.h,
        "leading_coefficient": rat(v.coefficient),
        "n_factorial_times_leading": rat(v.scaled),
        "theorem_sum": int(v.theorem_sum),
        "ratio": v.ratio.map(rat),
        "polynomial": v.polynomial.iter().map(rat).collect::<Vec<_>>(),
    })
}

pub fn leading_human(v: &LeadingCoeffView<'_>) -> String {
    let n = v.p + v.a.len();
    let mut out = format!("p = {}  n = {n}  a = {}", v.p, tuple(v.a));
    match v.h {
        Some(h) => out += &format!("  J-filtration cut h = {h}\n"),
        None => out += "  I-adic\n",
    }
    out += &format!("leading coefficient (r^{n}): {}\n", v.coefficient);
    out += &format!("n! · leading coefficient: {}\n", v.scaled);
    out += &format!("exponent-set sum: {}\n", v.theorem_sum);
    if let Some(ratio) = v.ratio {
        out += &format!("leading coefficient / exponent-set sum: {ratio}\n");
    }
    let terms: Vec<String> = v.polynomial.iter().map(|c| c.to_string()).collect();
    out += &format!("coefficients (r^0..): [{}]\n", terms.join(", "));
    out
}

pub fn verify_json(reports: &[SuiteReport]) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "verify",
        "suites": reports.iter().map(|r| json!({
            "name": r.suite.name(),
            "checked": r.checked,
            "passed": r.passed(),
            "counterexample": r.counterexample,
        })).collect::<Vec<_>>(),
        "overall": reports.iter().all(SuiteReport::passed),
    })
}

pub fn verify_human(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    if reports.is_empty() {
        out += "no suites selected\n";
    }
    for r in reports {
        out += &format!(
            "{:<20} checked {:>7}  {}\n",
            r.suite.name(),
            r.checked,
            if r.passed() { "pass" } else { "FAIL" }
        );
        if let Some(cx) = &r.counterexample {
            out += &format!("  counterexample: {cx}\n");
        }
    }
    out += &format!(
        "overall: {}\n",
        if reports.iter().all(SuiteReport::passed) {
            "PASS"
        } else {
            "FAIL"
        }
    );
    out
}
