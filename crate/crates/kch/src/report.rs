//! Rendering of extremal reports and certificates, and the family file format.

use std::fmt::Write as _;

use kch_core::chain::ValidatedChainSpec;
use kch_core::extremal::{size_vectors, Certificate, Claims, ExtremalReport, FamilyCertificate, Flag};
use kch_core::number::to_decimal;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::formats::{csv_error, finish_csv, rational_json, DECIMAL_PLACES};

pub const CERTIFICATE_SCHEMA: u32 = 1;

/// What each verdict asserts, emitted alongside the verdicts.
pub const CHECK_STATEMENTS: [(&str, &str); 6] = [
    ("near_centered_max", "every maximizer has |2 w_i - (k_i - 4)| <= 1 on each interior polygon"),
    ("helicene_min", "the minimizers are exactly the helicene orbit (all kinks, w_i in {0, k_i - 4} alternating sides)"),
    ("even_centered_max", "all sizes even: the maximizers are exactly w_i = (k_i - 4)/2"),
    ("odd_alternating_max", "all sizes odd: the maximizers are exactly the orbit of (k_2-5)/2, (k_3-3)/2, (k_4-5)/2, ..."),
    ("argmin_claim", "the minimizers are exactly the orbits of the claimed encodings"),
    ("argmax_claim", "the maximizers are exactly the orbits of the claimed encodings"),
];

fn orbit_list(specs: &[ValidatedChainSpec]) -> Value {
    Value::Array(specs.iter().map(|s| json!(s.w)).collect())
}

fn flag_json(flag: &Flag) -> Value {
    json!({
        "verdict": flag.verdict.name(),
        "witness": flag.witness.as_ref().map(|w| json!(w.w)),
    })
}

fn flags_json(report: &ExtremalReport) -> Value {
    let mut map = Map::new();
    for (name, flag) in report.flags() {
        map.insert(name.into(), flag_json(flag));
    }
    Value::Object(map)
}

fn summary_json(report: &ExtremalReport) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("sizes".into(), json!(report.sizes));
    map.insert("count".into(), json!(report.count()));
    map.insert("min".into(), rational_json(&report.min));
    map.insert("max".into(), rational_json(&report.max));
    map.insert("argmin_orbits".into(), orbit_list(&report.argmin_orbits()));
    map.insert("argmax_orbits".into(), orbit_list(&report.argmax_orbits()));
    map.insert("flags".into(), flags_json(report));
    map
}

pub fn report_json(report: &ExtremalReport) -> Value {
    let mut map = summary_json(report);
    let values: Vec<Value> = report
        .values
        .iter()
        .map(|(s, v)| {
            let mut entry = rational_json(v);
            entry["w"] = json!(s.w);
            entry
        })
        .collect();
    map.insert("values".into(), Value::Array(values));
    Value::Object(map)
}

fn w_text(w: &[usize]) -> String {
    let parts: Vec<String> = w.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// One row per encoding: `sizes,w,exact,decimal,argmin,argmax` and the verdicts.
pub fn report_csv(report: &ExtremalReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["sizes", "w", "exact", "decimal", "argmin", "argmax"];
    header.extend(report.flags().iter().map(|(n, _)| *n));
    w.write_record(&header).map_err(csv_error)?;
    let sizes = w_text(&report.sizes);
    for (s, v) in &report.values {
        let mut row = vec![
            sizes.clone(),
            w_text(&s.w),
            v.to_string(),
            to_decimal(v, DECIMAL_PLACES),
            (*v == report.min).to_string(),
            (*v == report.max).to_string(),
        ];
        row.extend(report.flags().iter().map(|(_, f)| f.verdict.name().to_string()));
        w.write_record(&row).map_err(csv_error)?;
    }
    finish_csv(w)
}

pub fn report_text(report: &ExtremalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sizes {}: {} encodings", w_text(&report.sizes), report.count());
    for (s, v) in &report.values {
        let _ = writeln!(out, "  w={}  Kf={}  ({})", w_text(&s.w), v, to_decimal(v, DECIMAL_PLACES));
    }
    let orbits = |specs: Vec<ValidatedChainSpec>| specs.iter().map(|s| w_text(&s.w)).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "min {} at {}", report.min, orbits(report.argmin_orbits()));
    let _ = writeln!(out, "max {} at {}", report.max, orbits(report.argmax_orbits()));
    for (name, flag) in report.flags() {
        let _ = write!(out, "{name}: {}", flag.verdict);
        if let Some(w) = &flag.witness {
            let _ = write!(out, " (witness w={})", w_text(&w.w));
        }
        out.push('\n');
    }
    out
}

fn family_json(family: &FamilyCertificate) -> Value {
    let mut map = summary_json(&family.report);
    let mut claims = Map::new();
    for (name, flag) in &family.claims {
        claims.insert((*name).into(), flag_json(flag));
    }
    map.insert("claims".into(), Value::Object(claims));
    map.insert("passed".into(), json!(family.passed()));
    Value::Object(map)
}

fn failures(cert: &Certificate) -> Vec<Value> {
    cert.families
        .iter()
        .filter_map(|f| {
            f.failure().map(|(check, flag)| {
                json!({
                    "sizes": f.report.sizes,
                    "check": check,
                    "witness": flag.witness.as_ref().map(|w| json!(w.w)),
                })
            })
        })
        .collect()
}

pub fn certificate_json(cert: &Certificate) -> Value {
    let statements: Map<String, Value> =
        CHECK_STATEMENTS.iter().map(|(k, v)| ((*k).to_string(), Value::String((*v).into()))).collect();
    json!({
        "schema": CERTIFICATE_SCHEMA,
        "passed": cert.passed(),
        "families_checked": cert.families.len(),
        "checks": statements,
        "failures": failures(cert),
        "families": cert.families.iter().map(family_json).collect::<Vec<_>>(),
    })
}

pub fn certificate_text(cert: &Certificate) -> String {
    let mut out = String::new();
    for f in &cert.families {
        let status = if f.passed() { "pass" } else { "FAIL" };
        let _ = write!(out, "{status} {}  min {}  max {}", w_text(&f.report.sizes), f.report.min, f.report.max);
        if let Some((check, flag)) = f.failure() {
            let witness = flag.witness.as_ref().map_or(String::new(), |w| w_text(&w.w));
            let _ = write!(out, "  {check} witness w={witness}");
        }
        out.push('\n');
    }
    let passed = cert.families.iter().filter(|f| f.passed()).count();
    let _ = writeln!(out, "{passed}/{} families passed", cert.families.len());
    out
}

pub fn certificate_csv(cert: &Certificate) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["sizes", "count", "min", "max", "passed"];
    header.extend(CHECK_STATEMENTS.iter().take(4).map(|(n, _)| *n));
    w.write_record(&header).map_err(csv_error)?;
    for f in &cert.families {
        let mut row = vec![
            w_text(&f.report.sizes),
            f.report.count().to_string(),
            f.report.min.to_string(),
            f.report.max.to_string(),
            f.passed().to_string(),
        ];
        row.extend(f.report.flags().iter().map(|(_, flag)| flag.verdict.name().to_string()));
        w.write_record(&row).map_err(csv_error)?;
    }
    finish_csv(w)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    #[serde(default)]
    families: Vec<FamilyEntry>,
    sweep: Option<Sweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyEntry {
    sizes: Vec<usize>,
    #[serde(default)]
    expect: Expect,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Expect {
    argmin: Option<Vec<Vec<usize>>>,
    argmax: Option<Vec<Vec<usize>>>,
}

/// Every size vector with `n[0] <= n <= n[1]` polygons of sizes `k[0]..=k[1]`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Sweep {
    n: [usize; 2],
    k: [usize; 2],
}

/// Explicit families first, then the sweep in lexicographic order.
pub fn parse_families(text: &str) -> Result<Vec<(Vec<usize>, Claims)>, CliError> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("family file: {e}")))?;
    let mut out: Vec<(Vec<usize>, Claims)> = file
        .families
        .into_iter()
        .map(|f| (f.sizes, Claims { argmin: f.expect.argmin, argmax: f.expect.argmax }))
        .collect();
    if let Some(Sweep { n, k }) = file.sweep {
        if n[0] == 0 || n[0] > n[1] || k[0] < 4 || k[0] > k[1] {
            return Err(CliError::Validation(format!("sweep needs 1 <= n0 <= n1 and 4 <= k0 <= k1, got n={n:?} k={k:?}")));
        }
        for len in n[0]..=n[1] {
            out.extend(size_vectors(len, k[0]..=k[1]).into_iter().map(|s| (s, Claims::default())));
        }
    }
    Ok(out)
}
