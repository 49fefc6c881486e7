//! The presentation-data text format.
//!
//! One document describes one data set, line by line:
//!
//! ```text
//! # comments run to the end of the line
//! generators s1 s2
//! edge s1 s2 3
//! idempotents e0 e1 e2
//! order e0 e1
//! order e1 e2
//! fixing e0 s1 s2
//! fixing e1 s2
//! fixing e2
//! commuting e0
//! commuting e1
//! commuting e2 s1
//! ```
//!
//! `generators` declares the generator ordering; `edge s t m` declares
//! the braid label `m >= 3` (omitted pairs commute); `idempotents`
//! declares the non-unit cross-section elements; `order a b` declares
//! `a < b` (redundant pairs are fine, the closure is computed); `fixing`
//! and `commuting` list the generators of the two type sets of each
//! idempotent, defaulting to none.

use std::path::Path;

use thiserror::Error;

use crate::coxeter::{CoxeterGraph, GenSet};
use crate::lattice::CrossSectionLattice;
use crate::renner::RennerData;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

/// Parses one data document. The result is well-formed but not yet
/// validated against the semilattice and type-map axioms.
pub fn parse_data(text: &str) -> Result<RennerData, FormatError> {
    let mut generators: Option<(usize, Vec<String>)> = None;
    let mut idempotents: Option<(usize, Vec<String>)> = None;
    let mut edges: Vec<(usize, String, String, u32)> = Vec::new();
    let mut orders: Vec<(usize, String, String)> = Vec::new();
    let mut fixing_lines: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut commuting_lines: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        let rest: Vec<String> = tokens.map(str::to_string).collect();
        match keyword {
            "generators" => {
                if generators.is_some() {
                    return Err(parse_err(lineno, "duplicate `generators` line"));
                }
                generators = Some((lineno, rest));
            }
            "idempotents" => {
                if idempotents.is_some() {
                    return Err(parse_err(lineno, "duplicate `idempotents` line"));
                }
                idempotents = Some((lineno, rest));
            }
            "edge" => {
                let [s, t, m] = rest.as_slice() else {
                    return Err(parse_err(lineno, "expected `edge s t m`"));
                };
                let m: u32 = m.parse().map_err(|_| {
                    parse_err(lineno, format!("edge label `{m}` is not an integer"))
                })?;
                edges.push((lineno, s.clone(), t.clone(), m));
            }
            "order" => {
                let [a, b] = rest.as_slice() else {
                    return Err(parse_err(lineno, "expected `order a b`"));
                };
                orders.push((lineno, a.clone(), b.clone()));
            }
            "fixing" => {
                let Some((e, gens)) = rest.split_first() else {
                    return Err(parse_err(lineno, "expected `fixing e [s...]`"));
                };
                fixing_lines.push((lineno, e.clone(), gens.to_vec()));
            }
            "commuting" => {
                let Some((e, gens)) = rest.split_first() else {
                    return Err(parse_err(lineno, "expected `commuting e [s...]`"));
                };
                commuting_lines.push((lineno, e.clone(), gens.to_vec()));
            }
            other => {
                return Err(parse_err(lineno, format!("unknown keyword `{other}`")));
            }
        }
    }

    let (gen_line, labels) =
        generators.ok_or_else(|| parse_err(0, "missing `generators` line"))?;
    let gen_index = |line: usize, label: &str| {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| parse_err(line, format!("unknown generator label `{label}`")))
    };

    let mut edge_list = Vec::new();
    for (line, s, t, m) in &edges {
        edge_list.push((gen_index(*line, s)?, gen_index(*line, t)?, *m));
    }
    let graph = CoxeterGraph::new(labels.clone(), edge_list)
        .map_err(|e| parse_err(gen_line, e.to_string()))?;

    let (idem_line, idem_labels) =
        idempotents.ok_or_else(|| parse_err(0, "missing `idempotents` line"))?;
    let idem_index = |line: usize, label: &str| {
        idem_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| parse_err(line, format!("unknown idempotent label `{label}`")))
    };
    let mut pairs = Vec::new();
    for (line, a, b) in &orders {
        pairs.push((idem_index(*line, a)?, idem_index(*line, b)?));
    }
    let lattice = CrossSectionLattice::new(idem_labels.clone(), pairs)
        .map_err(|e| parse_err(idem_line, e.to_string()))?;

    let mut fixing = vec![None; idem_labels.len()];
    let mut commuting = vec![None; idem_labels.len()];
    for (lines, target, keyword) in [
        (&fixing_lines, &mut fixing, "fixing"),
        (&commuting_lines, &mut commuting, "commuting"),
    ] {
        for (line, e, gens) in lines {
            let e_idx = idem_index(*line, e)?;
            if target[e_idx].is_some() {
                return Err(parse_err(
                    *line,
                    format!("duplicate `{keyword}` line for `{e}`"),
                ));
            }
            let mut set = GenSet::EMPTY;
            for s in gens {
                set.insert(crate::coxeter::GenId(gen_index(*line, s)? as u16));
            }
            target[e_idx] = Some(set);
        }
    }
    let fixing = fixing.into_iter().map(|s| s.unwrap_or(GenSet::EMPTY)).collect();
    let commuting = commuting.into_iter().map(|s| s.unwrap_or(GenSet::EMPTY)).collect();

    RennerData::new(graph, lattice, fixing, commuting)
        .map_err(|e| parse_err(0, e.to_string()))
}

/// Serializes data in the line format; `parse_data` round-trips it.
pub fn emit_data(data: &RennerData) -> String {
    let graph = data.graph();
    let lat = data.lattice();
    let mut out = String::new();
    out.push_str("generators");
    for label in graph.labels() {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
    for (s, t, m) in graph.edges() {
        out.push_str(&format!("edge {} {} {}\n", graph.label(s), graph.label(t), m));
    }
    out.push_str("idempotents");
    for e in lat.elements() {
        out.push(' ');
        out.push_str(lat.label(e));
    }
    out.push('\n');
    for (a, b) in lat.hasse_pairs() {
        out.push_str(&format!("order {} {}\n", lat.label(a), lat.label(b)));
    }
    for e in lat.elements() {
        out.push_str(&format!("fixing {}", lat.label(e)));
        for s in data.fixing(e).iter() {
            out.push(' ');
            out.push_str(graph.label(s));
        }
        out.push('\n');
    }
    for e in lat.elements() {
        out.push_str(&format!("commuting {}", lat.label(e)));
        for s in data.commuting(e).iter() {
            out.push(' ');
            out.push_str(graph.label(s));
        }
        out.push('\n');
    }
    out
}

/// Reads and parses a data file.
pub fn from_file(path: impl AsRef<Path>) -> Result<RennerData, FormatError> {
    let text = std::fs::read_to_string(path)?;
    parse_data(&text)
}
