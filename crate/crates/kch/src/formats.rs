//! File formats: chain specs, networks, reduction traces, oracle tables, DOT.

use std::fmt::Write as _;

use kch_core::chain::{ChainGraph, ChainSpec, ValidatedChainSpec};
use kch_core::circuit::{Node, ReductionStep, ReductionTrace, ResistorNetwork, Weight};
use kch_core::kirchhoff::ResistanceOracle;
use kch_core::number::{parse_rational, to_decimal};
use kch_core::{ChainError, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

/// Decimal places used when rendering exact values.
pub const DECIMAL_PLACES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub w: Vec<usize>,
}

impl From<&ChainSpec> for SpecFile {
    fn from(s: &ChainSpec) -> Self {
        SpecFile { sizes: s.sizes.clone(), w: s.w.clone() }
    }
}

pub fn parse_spec(text: &str) -> Result<ValidatedChainSpec, CliError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("chain spec: {e}")))?;
    ChainSpec::new(file.sizes, file.w).validate().map_err(chain_error)
}

/// Names the violated invariant, e.g. `PolygonTooSmall: polygon 1 has size 3; ...`.
pub fn chain_error(e: ChainError) -> CliError {
    let debug = format!("{e:?}");
    let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    CliError::Validation(format!("{name}: {e}"))
}

pub fn spec_json(s: &ChainSpec) -> Value {
    json!({ "sizes": s.sizes, "w": s.w })
}

/// Exact value as `"p/q"` (or `"p"`) plus a decimal rendering.
pub fn rational_json(r: &Rational) -> Value {
    json!({ "exact": r.to_string(), "decimal": to_decimal(r, DECIMAL_PLACES) })
}

/// An integer as a JSON number when it fits in `i64`, else as a string.
fn integer_json(digits: String) -> Value {
    match digits.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => Value::String(digits),
    }
}

fn integer_text(v: &Value) -> Option<String> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// `[[u, v, numerator, denominator], ...]`.
pub fn network_json(net: &ResistorNetwork) -> Value {
    Value::Array(
        net.resistors()
            .iter()
            .map(|r| {
                let w = r.weight.value();
                json!([r.a.to_string(), r.b.to_string(), integer_json(w.numer().to_string()), integer_json(w.denom().to_string())])
            })
            .collect(),
    )
}

pub fn parse_network(text: &str) -> Result<ResistorNetwork, CliError> {
    let bad = |what: String| CliError::Parse(format!("network: {what}"));
    let rows: Vec<Value> = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let mut net = ResistorNetwork::new();
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_array().filter(|c| c.len() == 4).ok_or_else(|| bad(format!("entry {i} is not [u, v, num, den]")))?;
        let node = |v: &Value| -> Result<Node, CliError> {
            v.as_str()
                .ok_or_else(|| bad(format!("entry {i}: node labels are strings")))?
                .parse::<Node>()
                .map_err(|e| bad(format!("entry {i}: {e}")))
        };
        let (num, den) = match (integer_text(&cells[2]), integer_text(&cells[3])) {
            (Some(n), Some(d)) => (n, d),
            _ => return Err(bad(format!("entry {i}: weight parts must be integers"))),
        };
        let value = parse_rational(&format!("{num}/{den}")).ok_or_else(|| bad(format!("entry {i}: bad weight {num}/{den}")))?;
        let weight = Weight::new(value).map_err(|e| CliError::Validation(format!("entry {i}: {e}")))?;
        net.add_resistor(node(&cells[0])?, node(&cells[1])?, weight)
            .map_err(|e| CliError::Validation(format!("entry {i}: {e}")))?;
    }
    Ok(net)
}

fn weight_text(w: &Weight) -> String {
    w.value().to_string()
}

fn weights(ws: &[Weight]) -> Vec<String> {
    ws.iter().map(weight_text).collect()
}

fn nodes(ns: &[Node]) -> Vec<String> {
    ns.iter().map(Node::to_string).collect()
}

pub fn step_json(step: &ReductionStep) -> Value {
    match step {
        ReductionStep::Series { removed, ends, before, after } => json!({
            "op": "series", "removed": removed.to_string(), "ends": nodes(ends),
            "before": weights(before), "after": weight_text(after),
        }),
        ReductionStep::Parallel { ends, before, after } => json!({
            "op": "parallel", "ends": nodes(ends), "before": weights(before), "after": weight_text(after),
        }),
        ReductionStep::DeltaY { triangle, before, star, after } => json!({
            "op": "delta-y", "triangle": nodes(triangle), "before": weights(before),
            "star": star.to_string(), "after": weights(after),
        }),
        ReductionStep::Prune { removed, neighbor, before } => json!({
            "op": "prune", "removed": removed.to_string(), "neighbor": neighbor.to_string(), "before": weight_text(before),
        }),
    }
}

pub fn trace_json(trace: &ReductionTrace) -> Value {
    json!({
        "terminals": trace.terminals.iter().map(Node::to_string).collect::<Vec<_>>(),
        "steps": trace.steps.iter().map(step_json).collect::<Vec<_>>(),
    })
}

/// `u,v,numerator,denominator` for every unordered pair `u < v`.
pub fn oracle_csv(oracle: &ResistanceOracle) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["u", "v", "numerator", "denominator"]).map_err(csv_error)?;
    for (u, v, r) in oracle.pairs() {
        if u < v {
            w.write_record([u.to_string(), v.to_string(), r.numer().to_string(), r.denom().to_string()])
                .map_err(csv_error)?;
        }
    }
    finish_csv(w)
}

pub fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// Undirected DOT with structural labels and a count header.
pub fn chain_dot(g: &ChainGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "// vertices: {}, edges: {}", g.vertex_count(), g.edge_count());
    let _ = writeln!(out, "graph \"{}\" {{", g.spec());
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kch_core::number::ratio;

    #[test]
    fn spec_round_trip() {
        let s = parse_spec(r#"{"sizes":[6,5,7],"w":[1]}"#).unwrap();
        assert_eq!(s.w, [1]);
        assert_eq!(spec_json(&s), json!({"sizes":[6,5,7],"w":[1]}));
        assert!(parse_spec(r#"{"sizes":[4,4]}"#).is_ok());
        assert!(matches!(parse_spec(r#"{"sizes":[4,4],"x":1}"#), Err(CliError::Parse(_))));
        match parse_spec(r#"{"sizes":[3],"w":[]}"#) {
            Err(CliError::Validation(m)) => assert!(m.starts_with("PolygonTooSmall"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn network_round_trip() {
        let text = r#"[["N0","N1",3,4],["N1","T2","1","2"],["N0","D2t1",5,1]]"#;
        let net = parse_network(text).unwrap();
        assert_eq!(net.edge_count(), 3);
        assert_eq!(parse_network(&network_json(&net).to_string()).unwrap(), net);
        let big = r#"[["N0","N1","123456789012345678901234567891",2]]"#;
        let net = parse_network(big).unwrap();
        assert_eq!(network_json(&net)[0][2], json!("123456789012345678901234567891"));
        assert!(matches!(parse_network(r#"[["N0","N1",0,1]]"#), Err(CliError::Validation(_))));
        assert!(matches!(parse_network(r#"[["N0","N1",1]]"#), Err(CliError::Parse(_))));
        assert!(matches!(parse_network(r#"[["N0","Q1",1,1]]"#), Err(CliError::Parse(_))));
    }

    #[test]
    fn rationals_render_exact_and_decimal() {
        assert_eq!(rational_json(&ratio(71, 5)), json!({"exact":"71/5","decimal":"14.2"}));
        assert_eq!(rational_json(&ratio(10, 2))["exact"], "5");
    }

    #[test]
    fn dot_header_counts() {
        let g = ChainSpec::new(vec![4, 4], vec![]).validate().unwrap().build_graph();
        let dot = chain_dot(&g);
        assert!(dot.starts_with("// vertices: 6, edges: 7\n"));
        assert_eq!(dot.matches(" -- ").count(), 7);
    }
}
