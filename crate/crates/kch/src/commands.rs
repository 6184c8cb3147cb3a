//! Subcommand bodies. Each returns the full output text; `main` decides
//! where it goes.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use kch_core::circuit::{Node, ResistorNetwork};
use kch_core::extremal::{check_claims, enumerate, summarize, Certificate, Claims, ExtremalReport, FamilyCertificate};
use kch_core::kirchhoff::{float_resistance_oracle, metric_check, resistance_oracle};
use kch_core::number::to_decimal;
use kch_core::{ExtremalError, KirchhoffError, Rational, ValidatedChainSpec};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Format, Mode, RunConfig};
use crate::error::CliError;
use crate::formats::{chain_dot, chain_error, network_json, oracle_csv, parse_network, parse_spec, rational_json, spec_json, trace_json};
use crate::report::{
    certificate_csv, certificate_json, certificate_text, parse_families, report_csv, report_json, report_text,
};

/// Where a network comes from: a chain spec or an explicit resistor list.
#[derive(Debug, Clone)]
pub enum Input {
    Spec(String),
    Network(String),
}

/// Inline JSON (starting with `{` or `[`) or a path to a file holding it.
pub fn read_source(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Io(format!("{arg}: {e}")))
}

struct Loaded {
    spec: Option<ValidatedChainSpec>,
    net: ResistorNetwork,
}

fn load(input: &Input) -> Result<Loaded, CliError> {
    match input {
        Input::Spec(src) => {
            let spec = parse_spec(&read_source(src)?)?;
            let net = spec.build_graph().to_network();
            Ok(Loaded { spec: Some(spec), net })
        }
        Input::Network(src) => Ok(Loaded { spec: None, net: parse_network(&read_source(src)?)? }),
    }
}

fn kirchhoff_error(e: KirchhoffError) -> CliError {
    match e {
        KirchhoffError::VertexNotFound(v) => CliError::Validation(format!("VertexNotFound: {v}")),
        other => CliError::Validation(other.to_string()),
    }
}

fn extremal_error(e: ExtremalError) -> CliError {
    match e {
        ExtremalError::Chain(c) | ExtremalError::BadClaim(c) => chain_error(c),
        other => CliError::Validation(other.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, format: Format) -> CliError {
    CliError::Config(format!("{cmd} has no {format:?} output"))
}

fn float_text(x: f64) -> String {
    format!("{x:.12e}")
}

fn header(loaded: &Loaded) -> Value {
    json!({
        "spec": loaded.spec.as_ref().map(|s| spec_json(s)),
        "vertices": loaded.net.node_count(),
        "edges": loaded.net.edge_count(),
    })
}

pub fn kf(input: &Input, cfg: &RunConfig) -> Result<String, CliError> {
    let loaded = load(input)?;
    let mut doc = header(&loaded);
    match cfg.mode {
        Mode::Exact => {
            let oracle = resistance_oracle(&loaded.net).map_err(kirchhoff_error)?;
            let kf = oracle.kirchhoff_index();
            Ok(match cfg.format {
                Format::Text => format!("{kf} ({})\n", to_decimal(&kf, crate::formats::DECIMAL_PLACES)),
                Format::Json => {
                    doc["mode"] = json!("exact");
                    doc["kf"] = rational_json(&kf);
                    doc["metric_check"] = json!(metric_check(&oracle).passed());
                    pretty(&doc)
                }
                Format::Csv => exact_csv(&kf),
                Format::Dot => return Err(unsupported("kf", cfg.format)),
            })
        }
        Mode::Float => {
            let kf = float_resistance_oracle(&loaded.net).map_err(kirchhoff_error)?.kirchhoff_index();
            Ok(match cfg.format {
                Format::Text => format!("{}\n", float_text(kf)),
                Format::Json => {
                    doc["mode"] = json!("float");
                    doc["kf"] = json!({ "float": float_text(kf) });
                    pretty(&doc)
                }
                Format::Csv => format!("float\n{}\n", float_text(kf)),
                Format::Dot => return Err(unsupported("kf", cfg.format)),
            })
        }
    }
}

fn exact_csv(r: &Rational) -> String {
    format!("exact,decimal\n{r},{}\n", to_decimal(r, crate::formats::DECIMAL_PLACES))
}

fn node(loaded: &Loaded, label: &str) -> Result<Node, CliError> {
    let n: Node = label.parse().map_err(|_| CliError::Validation(format!("VertexNotFound: {label}")))?;
    if loaded.net.contains(&n) {
        Ok(n)
    } else {
        Err(CliError::Validation(format!("VertexNotFound: {label}")))
    }
}

pub fn resistance(input: &Input, u: &str, v: &str, trace: bool, cfg: &RunConfig) -> Result<String, CliError> {
    let loaded = load(input)?;
    let (u, v) = (node(&loaded, u)?, node(&loaded, v)?);
    if cfg.mode == Mode::Float {
        if trace {
            return Err(CliError::Config("--trace needs exact mode".into()));
        }
        let r = float_resistance_oracle(&loaded.net).map_err(kirchhoff_error)?.resistance(&u, &v).map_err(kirchhoff_error)?;
        return match cfg.format {
            Format::Text => Ok(format!("{}\n", float_text(r))),
            Format::Json => Ok(pretty(&json!({ "u": u.to_string(), "v": v.to_string(), "mode": "float", "r": { "float": float_text(r) } }))),
            Format::Csv => Ok(format!("u,v,float\n{u},{v},{}\n", float_text(r))),
            Format::Dot => Err(unsupported("resistance", cfg.format)),
        };
    }
    let r = resistance_oracle(&loaded.net).map_err(kirchhoff_error)?.resistance(&u, &v).map_err(kirchhoff_error)?;
    let reduction = if trace && u != v { Some(reduction_json(&loaded.net, u, v, &r)?) } else { None };
    match cfg.format {
        Format::Text => {
            let mut out = format!("{r}\n");
            if let Some(red) = reduction {
                out.push_str(&pretty(&red));
            }
            Ok(out)
        }
        Format::Json => {
            let mut doc = json!({ "u": u.to_string(), "v": v.to_string(), "mode": "exact", "r": rational_json(&r) });
            if let Some(red) = reduction {
                doc["reduction"] = red;
            }
            Ok(pretty(&doc))
        }
        Format::Csv => Ok(format!("u,v,exact,decimal\n{u},{v},{r},{}\n", to_decimal(&r, crate::formats::DECIMAL_PLACES))),
        Format::Dot => Err(unsupported("resistance", cfg.format)),
    }
}

/// Series/parallel/Δ-Y trace down to `{u, v}`, checked against the oracle.
fn reduction_json(net: &ResistorNetwork, u: Node, v: Node, oracle_value: &Rational) -> Result<Value, CliError> {
    let terminals: BTreeSet<Node> = [u, v].into_iter().collect();
    match net.reduce_to_terminals(&terminals) {
        Ok((reduced, trace)) => {
            let value = reduced
                .two_terminal_resistance(&u, &v)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            if &value != oracle_value {
                return Err(CliError::Validation(format!(
                    "reduction gives {value} but the Laplacian gives {oracle_value}"
                )));
            }
            let mut doc = trace_json(&trace);
            doc["reduced"] = network_json(&reduced);
            doc["value"] = json!(value.to_string());
            doc["agrees"] = json!(true);
            Ok(doc)
        }
        Err(e) => Ok(json!({ "terminals": [u.to_string(), v.to_string()], "error": e.to_string() })),
    }
}

/// `"6,6,6"` or `"6 6 6"`.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| CliError::Parse(format!("size {s:?} is not a non-negative integer"))))
        .collect()
}

/// Exact values for every encoding of `sizes`, computed in parallel and
/// returned in enumeration order.
fn exact_report(sizes: &[usize], cfg: &RunConfig) -> Result<ExtremalReport, CliError> {
    let specs: Vec<ValidatedChainSpec> = enumerate(sizes, cfg.cap).map_err(extremal_error)?.collect();
    let values = cfg.install(|| {
        specs
            .into_par_iter()
            .map(|s| {
                let kf = kch_core::kirchhoff::kirchhoff_index(&s.build_graph().to_network())?;
                Ok((s, kf))
            })
            .collect::<Result<Vec<_>, KirchhoffError>>()
    })?
    .map_err(kirchhoff_error)?;
    summarize(sizes, values).map_err(extremal_error)
}

pub fn enumerate_family(sizes: &[usize], cfg: &RunConfig) -> Result<String, CliError> {
    if cfg.mode == Mode::Float {
        return float_enumerate(sizes, cfg);
    }
    let report = exact_report(sizes, cfg)?;
    match cfg.format {
        Format::Text => Ok(report_text(&report)),
        Format::Json => Ok(pretty(&report_json(&report))),
        Format::Csv => report_csv(&report),
        Format::Dot => Err(unsupported("enumerate", cfg.format)),
    }
}

fn float_enumerate(sizes: &[usize], cfg: &RunConfig) -> Result<String, CliError> {
    let specs: Vec<ValidatedChainSpec> = enumerate(sizes, cfg.cap).map_err(extremal_error)?.collect();
    let values = cfg.install(|| {
        specs
            .into_par_iter()
            .map(|s| {
                let kf = kch_core::kirchhoff::float_kirchhoff_index(&s.build_graph().to_network())?;
                Ok((s, kf))
            })
            .collect::<Result<Vec<_>, KirchhoffError>>()
    })?
    .map_err(kirchhoff_error)?;
    let tie = |a: f64, b: f64| (a - b).abs() <= cfg.tol * a.abs().max(b.abs());
    let min = values.iter().map(|(_, v)| *v).fold(f64::INFINITY, f64::min);
    let max = values.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
    let near = |target: f64| -> Vec<Vec<usize>> {
        values.iter().filter(|(_, v)| tie(*v, target)).map(|(s, _)| s.w.clone()).collect()
    };
    let (argmin, argmax) = (near(min), near(max));
    match cfg.format {
        Format::Text => {
            let mut out = format!("sizes {sizes:?}: {} encodings (float, tol {:e})\n", values.len(), cfg.tol);
            for (s, v) in &values {
                out.push_str(&format!("  w={:?}  Kf~{}\n", s.w, float_text(*v)));
            }
            out.push_str(&format!("min {} at {argmin:?}\nmax {} at {argmax:?}\n", float_text(min), float_text(max)));
            Ok(out)
        }
        Format::Json => Ok(pretty(&json!({
            "sizes": sizes,
            "mode": "float",
            "tol": cfg.tol,
            "count": values.len(),
            "min": float_text(min),
            "max": float_text(max),
            "argmin": argmin,
            "argmax": argmax,
            "values": values.iter().map(|(s, v)| json!({ "w": s.w, "float": float_text(*v) })).collect::<Vec<_>>(),
        }))),
        Format::Csv => {
            let mut out = String::from("w,float,argmin,argmax\n");
            for (s, v) in &values {
                let w: Vec<String> = s.w.iter().map(usize::to_string).collect();
                out.push_str(&format!("\"({})\",{},{},{}\n", w.join(","), float_text(*v), tie(*v, min), tie(*v, max)));
            }
            Ok(out)
        }
        Format::Dot => Err(unsupported("enumerate", cfg.format)),
    }
}

/// Certifies every family in the file. Returns the rendered certificate and
/// whether it passed; the caller writes it out before signalling failure.
pub fn verify(families_src: &str, cfg: &RunConfig) -> Result<(String, Option<String>), CliError> {
    if cfg.mode == Mode::Float {
        return Err(CliError::Config("verify certifies exact values only; drop --mode float".into()));
    }
    let families: Vec<(Vec<usize>, Claims)> = parse_families(&read_source(families_src)?)?;
    let mut certified = Vec::with_capacity(families.len());
    for (sizes, claims) in &families {
        let report = exact_report(sizes, cfg)?;
        let claims = check_claims(&report, claims).map_err(extremal_error)?;
        certified.push(FamilyCertificate { report, claims });
    }
    let cert = Certificate { families: certified };
    let failure = cert.families.iter().find_map(|f| {
        f.failure().map(|(check, flag)| {
            let witness = flag.witness.as_ref().map_or_else(|| "none".to_string(), |w| format!("{:?}", w.w));
            format!("sizes {:?}: {check} fails, witness w={witness}", f.report.sizes)
        })
    });
    let text = match cfg.format {
        Format::Text => certificate_text(&cert),
        Format::Json => pretty(&certificate_json(&cert)),
        Format::Csv => certificate_csv(&cert)?,
        Format::Dot => return Err(unsupported("verify", cfg.format)),
    };
    Ok((text, failure))
}

pub fn export(input: &Input, cfg: &RunConfig) -> Result<String, CliError> {
    let loaded = load(input)?;
    match cfg.format {
        Format::Text | Format::Dot => match &loaded.spec {
            Some(spec) => Ok(chain_dot(&spec.build_graph())),
            None => Err(CliError::Config("DOT export needs a chain spec".into())),
        },
        Format::Json => {
            let mut doc = header(&loaded);
            doc["network"] = network_json(&loaded.net);
            Ok(pretty(&doc))
        }
        Format::Csv => oracle_csv(&resistance_oracle(&loaded.net).map_err(kirchhoff_error)?),
    }
}
