//! JSON, CSV, plain-text and DOT renderings. Big integers are decimal strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::engine::{single_step_decompose, DecompositionResult};
use crate::error::{Error, Result};
use crate::fan::DiffEntry;
use crate::formal::LatticeSeries;
use crate::lattice::{dim_irrep, Fundamental, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub weight: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub weight: String,
    pub mult: String,
    pub dim: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub module: String,
    pub power: u32,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffDoc {
    pub point: String,
    pub printed: String,
    pub direct: String,
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse {
        input: s.to_string(),
        reason: "not a decimal integer",
    })
}

fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn series_entries(series: &LatticeSeries) -> Vec<SeriesEntry> {
    series
        .iter()
        .map(|(w, c)| SeriesEntry {
            weight: w.to_string(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn series_to_json(series: &LatticeSeries) -> Result<String> {
    to_pretty_json(&series_entries(series))
}

pub fn series_from_json(text: &str) -> Result<LatticeSeries> {
    let entries: Vec<SeriesEntry> = serde_json::from_str(text)?;
    let mut out = LatticeSeries::new();
    for e in entries {
        let w: Weight = e.weight.parse()?;
        if out.get(&w).is_some() {
            return Err(Error::Malformed(format!("weight {w} listed twice")));
        }
        out.add_term(w, parse_int(&e.coeff)?);
    }
    Ok(out)
}

pub fn series_to_csv(series: &LatticeSeries) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for e in series_entries(series) {
        wtr.serialize(e)?;
    }
    finish_csv(wtr)
}

fn finish_csv(wtr: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = wtr
        .into_inner()
        .map_err(|e| Error::Malformed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn decomposition_doc(d: &DecompositionResult) -> DecompositionDoc {
    DecompositionDoc {
        module: d.module().name().to_string(),
        power: d.power(),
        terms: d
            .multiplicities()
            .iter()
            .map(|(w, m)| TermEntry {
                weight: w.to_string(),
                mult: m.to_string(),
                dim: dim_irrep(*w).expect("dominant").to_string(),
            })
            .collect(),
    }
}

pub fn decomposition_to_json(d: &DecompositionResult) -> Result<String> {
    to_pretty_json(&decomposition_doc(d))
}

/// Parses a decomposition and checks every stored dimension.
pub fn decomposition_from_json(text: &str) -> Result<DecompositionResult> {
    let doc: DecompositionDoc = serde_json::from_str(text)?;
    let module: Fundamental = doc.module.parse()?;
    let mut mults = BTreeMap::new();
    for t in doc.terms {
        let w: Weight = t.weight.parse()?;
        if dim_irrep(w)? != parse_int(&t.dim)? {
            return Err(Error::Malformed(format!(
                "wrong dimension recorded for {w}"
            )));
        }
        if mults.insert(w, parse_int(&t.mult)?).is_some() {
            return Err(Error::Malformed(format!("weight {w} listed twice")));
        }
    }
    DecompositionResult::new(module, doc.power, mults)
}

pub fn decomposition_to_csv(d: &DecompositionResult) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for t in decomposition_doc(d).terms {
        wtr.serialize(t)?;
    }
    finish_csv(wtr)
}

pub fn decomposition_to_pretty(d: &DecompositionResult) -> String {
    let doc = decomposition_doc(d);
    let width = doc
        .terms
        .iter()
        .map(|t| t.weight.len())
        .chain(std::iter::once(6))
        .max()
        .unwrap_or(6);
    let mut out = format!("{} ^ {}\n", doc.module, doc.power);
    let _ = writeln!(out, "{:<width$}  {:>12}  {:>12}", "weight", "mult", "dim");
    for t in &doc.terms {
        let _ = writeln!(out, "{:<width$}  {:>12}  {:>12}", t.weight, t.mult, t.dim);
    }
    let _ = writeln!(out, "total dimension {}", d.dimension_sum());
    out
}

pub fn series_to_pretty(series: &LatticeSeries) -> String {
    let mut out = String::new();
    for (w, c) in series.iter() {
        let _ = writeln!(out, "{w:>12}  {c:>8}");
    }
    out
}

pub fn diff_docs(entries: &[DiffEntry]) -> Vec<DiffDoc> {
    entries
        .iter()
        .map(|e| DiffDoc {
            point: e.point.to_string(),
            printed: e.printed.to_string(),
            direct: e.direct.to_string(),
        })
        .collect()
}

pub fn diff_to_json(entries: &[DiffEntry]) -> Result<String> {
    to_pretty_json(&diff_docs(entries))
}

pub fn diff_to_csv(entries: &[DiffEntry]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for e in diff_docs(entries) {
        wtr.serialize(e)?;
    }
    finish_csv(wtr)
}

fn node_id(p: u32, w: Weight) -> String {
    format!("\"{p}:{w}\"")
}

/// Layered diagram: slice `p` holds the irreducibles of the `p`-th power,
/// edges follow one tensor step. Slices start at `p = 1`.
pub fn diagram_dot(module: Fundamental, p_max: u32) -> Result<String> {
    let mut out = format!(
        "digraph {} {{\n  rankdir=TB;\n  node [shape=box];\n",
        module.name()
    );
    let mut slice: BTreeMap<Weight, BigInt> = BTreeMap::from([(module.highest_weight(), 1.into())]);
    for p in 1..=p_max {
        let _ = writeln!(out, "  subgraph slice_{p} {{\n    rank=same;");
        for (w, m) in &slice {
            let _ = writeln!(out, "    {} [label=\"{w} ×{m}\"];", node_id(p, *w));
        }
        out.push_str("  }\n");
        if p == p_max {
            break;
        }
        let mut next: BTreeMap<Weight, BigInt> = BTreeMap::new();
        for (w, m) in &slice {
            for (v, c) in single_step_decompose(*w, module)? {
                let _ = if c == BigInt::from(1) {
                    writeln!(out, "  {} -> {};", node_id(p, *w), node_id(p + 1, v))
                } else {
                    writeln!(
                        out,
                        "  {} -> {} [label=\"{c}\"];",
                        node_id(p, *w),
                        node_id(p + 1, v)
                    )
                };
                *next.entry(v).or_default() += m * c;
            }
        }
        slice = next;
    }
    out.push_str("}\n");
    Ok(out)
}
