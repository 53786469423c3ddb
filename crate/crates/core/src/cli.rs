//! The `rootpoly` command line.
//!
//! Every command writes human text, or JSON with `--json`, and reports
//! whether every checked relation held. Failures of a relation are not
//! errors; unreadable input is.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::corpus::{dedup_isomorphic, digraphs, undirected_graphs, CorpusSpec};
use crate::digraph::{Digraph, DigraphJson, EdgeId};
use crate::error::{Error, Result};
use crate::geometry::{classify_facets, ehrhart_counts, hstar_from_counts, hstar_oracle, polytope_of};
use crate::hstar::{hstar_by_components, hstar_via_dissection, monotonicity_report};
use crate::poly::HStarPolynomial;
use crate::trees::EdgeOrdering;
use crate::verify::{verify_digraphs, verify_tutte, Check, Summary};

#[derive(Debug, Parser)]
#[command(name = "rootpoly", version, about = "h*-polynomials of extended root polytopes of digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h* through a dissecting tree set.
    Hstar {
        file: PathBuf,
        /// 1-based edge labels from smallest to largest, e.g. `3,1,2`.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        /// Also count lattice points and compare.
        #[arg(long)]
        oracle: bool,
        /// Accept a disconnected digraph and multiply over its components.
        #[arg(long)]
        components: bool,
        #[arg(long)]
        json: bool,
    },
    /// h* of every single-edge deletion and contraction.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Facets of the polytope, matched with directed cuts and layerings.
    Facets {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Lattice points in the dilates `0..=K`.
    Ehrhart {
        file: PathBuf,
        #[arg(short = 'k', long = "max-dilate")]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive checks over a corpus of small digraphs.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        /// Check undirected graphs against the Tutte specialization instead.
        #[arg(long)]
        tutte: bool,
        #[arg(long, default_value_t = 4)]
        max_base_vertices: usize,
        #[arg(long, default_value_t = 5)]
        max_base_edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep one digraph per isomorphism class.
        #[arg(long)]
        dedup: bool,
        #[arg(long)]
        json: bool,
    },
}

pub fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    let json: DigraphJson =
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    Digraph::from_json(&json)
}

/// Labels `1..=m` from smallest to largest.
pub fn parse_order(d: &Digraph, labels: &[usize]) -> Result<EdgeOrdering> {
    let sequence = labels
        .iter()
        .map(|&l| match l.checked_sub(1).map(EdgeId) {
            Some(id) if d.contains_edge(id) => Ok(id),
            _ => Err(Error::InvalidOrdering(format!("no edge labeled {l}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let order = EdgeOrdering::from_sequence(sequence)?;
    order.validate_for(d)?;
    Ok(order)
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    writeln!(out, "{text}").map_err(io)
}

fn io(e: std::io::Error) -> Error {
    Error::Invalid(format!("write failed: {e}"))
}

/// Runs one command; `Ok(false)` means some checked relation failed.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Hstar {
            file,
            order,
            oracle,
            components,
            json,
        } => cmd_hstar(&read_digraph(&file)?, order.as_deref(), oracle, components, json, out),
        Command::Report { file, json } => cmd_report(&read_digraph(&file)?, json, out),
        Command::Facets { file, json } => cmd_facets(&read_digraph(&file)?, json, out),
        Command::Ehrhart { file, k, json } => cmd_ehrhart(&read_digraph(&file)?, k, json, out),
        Command::Verify {
            max_vertices,
            max_edges,
            tutte,
            max_base_vertices,
            max_base_edges,
            seed,
            dedup,
            json,
        } => {
            let summary = if tutte {
                verify_tutte(&undirected_graphs(max_base_vertices, max_base_edges))
            } else {
                let mut graphs = digraphs(&CorpusSpec::connected(max_vertices, max_edges));
                if dedup {
                    graphs = dedup_isomorphic(graphs);
                }
                verify_digraphs(&graphs, &Check::DIGRAPH, seed, true)
            };
            cmd_verify_output(&summary, json, out)
        }
    }
}

pub fn cmd_hstar(
    d: &Digraph,
    order: Option<&[usize]>,
    oracle: bool,
    components: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<bool> {
    let h = if components && !d.is_weakly_connected() {
        if order.is_some() {
            return Err(Error::Invalid("--order applies to connected digraphs only".into()));
        }
        hstar_by_components(d)?
    } else {
        let order = match order {
            Some(labels) => parse_order(d, labels)?,
            None => EdgeOrdering::ascending(d),
        };
        hstar_via_dissection(d, &order)?
    };
    let counted: Option<HStarPolynomial> = if oracle { Some(hstar_oracle(&polytope_of(d))?) } else { None };
    let matched = counted.as_ref().is_none_or(|c| *c == h);
    if json {
        let mut value = json!({ "hstar": h });
        if let Some(c) = &counted {
            value["oracle"] = json!(c);
            value["match"] = json!(matched);
        }
        emit(out, &value)?;
    } else {
        writeln!(out, "{h}").map_err(io)?;
        if let Some(c) = &counted {
            writeln!(out, "oracle: {c}").map_err(io)?;
            writeln!(out, "{}", if matched { "MATCH" } else { "MISMATCH" }).map_err(io)?;
        }
    }
    Ok(matched)
}

pub fn cmd_report(d: &Digraph, json: bool, out: &mut dyn Write) -> Result<bool> {
    let report = monotonicity_report(d)?;
    let ok = report.all_hold();
    if json {
        emit(out, &report)?;
        return Ok(ok);
    }
    writeln!(out, "h* = {}", report.hstar).map_err(io)?;
    for e in &report.edges {
        let verdict = |le: bool, eq: bool| match (le, eq) {
            (false, _) => "VIOLATION",
            (true, true) => "equal",
            (true, false) => "smaller",
        };
        let mut line = format!(
            "{}: delete {} ({}, predicate {})",
            e.id,
            e.delete,
            verdict(e.delete_le, e.delete_eq),
            e.delete_predicate
        );
        match (&e.contract, e.contract_le, e.contract_eq, e.contract_predicate) {
            (Some(c), Some(le), Some(eq), Some(p)) => {
                line += &format!("; contract {c} ({}, predicate {p})", verdict(le, eq));
            }
            _ => line += "; loop, not contracted",
        }
        if !e.predicates_agree() {
            line += "; PREDICATE DISAGREES";
        }
        writeln!(out, "{line}").map_err(io)?;
    }
    writeln!(out, "{}", if ok { "all relations hold" } else { "FAILED" }).map_err(io)?;
    Ok(ok)
}

pub fn cmd_facets(d: &Digraph, json: bool, out: &mut dyn Write) -> Result<bool> {
    let p = polytope_of(d);
    if p.dimension() == 0 {
        if json {
            emit(out, &json!({ "generators": p.generators(), "facets": [] }))?;
        } else {
            writeln!(out, "point polytope, no facets").map_err(io)?;
        }
        return Ok(true);
    }
    let facets = p.facets()?;
    let classification = classify_facets(d, &p, facets);
    let ok = classification.is_ok();
    if json {
        let rows: Vec<_> = facets
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut row = json!({ "normal": f.normal, "bound": f.bound, "origin": f.origin });
                if let Ok(c) = &classification {
                    if let Some((_, cut)) = c.cuts.iter().find(|(fi, _)| *fi == i) {
                        row["cut"] = json!(cut.edges);
                    }
                    if let Some((_, l)) = c.layerings.iter().find(|(fi, _)| *fi == i) {
                        row["layering"] = json!(l.0);
                    }
                }
                row
            })
            .collect();
        let mut value = json!({ "generators": p.generators(), "facets": rows });
        if let Err(e) = &classification {
            value["error"] = json!(e.to_string());
        }
        emit(out, &value)?;
        return Ok(ok);
    }
    writeln!(out, "dimension {}, {} facets", p.dimension(), facets.len()).map_err(io)?;
    for (i, f) in facets.iter().enumerate() {
        let mut line = format!("{:?} . x <= {}", f.normal, f.bound);
        if let Ok(c) = &classification {
            if let Some((_, cut)) = c.cuts.iter().find(|(fi, _)| *fi == i) {
                let names: Vec<String> = cut.edges.iter().map(ToString::to_string).collect();
                line += &format!("  directed cut {{{}}}", names.join(", "));
            }
            if let Some((_, l)) = c.layerings.iter().find(|(fi, _)| *fi == i) {
                line += &format!("  layering {:?}", l.0);
            }
        }
        writeln!(out, "{line}").map_err(io)?;
    }
    if let Err(e) = &classification {
        writeln!(out, "UNCLASSIFIED: {e}").map_err(io)?;
    }
    Ok(ok)
}

pub fn cmd_ehrhart(d: &Digraph, k: usize, json: bool, out: &mut dyn Write) -> Result<bool> {
    let p = polytope_of(d);
    let counts = ehrhart_counts(&p, k)?;
    let h = if k >= p.dimension() { Some(hstar_from_counts(&counts, p.dimension())?) } else { None };
    if json {
        emit(out, &json!({ "dimension": p.dimension(), "counts": counts, "hstar": h }))?;
    } else {
        for (i, c) in counts.0.iter().enumerate() {
            writeln!(out, "L({i}) = {c}").map_err(io)?;
        }
        match h {
            Some(h) => writeln!(out, "h* = {h}").map_err(io)?,
            None => writeln!(out, "h* needs K >= {}", p.dimension()).map_err(io)?,
        }
    }
    Ok(true)
}

fn cmd_verify_output(summary: &Summary, json: bool, out: &mut dyn Write) -> Result<bool> {
    let ok = summary.passed();
    if json {
        emit(out, summary)?;
        return Ok(ok);
    }
    writeln!(out, "{} graphs", summary.graphs).map_err(io)?;
    for (check, tally) in &summary.tallies {
        let status = if tally.failed == 0 { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {check}: {} checked, {} failed", tally.checked, tally.failed).map_err(io)?;
        for example in &tally.examples {
            writeln!(out, "  {example}").map_err(io)?;
        }
    }
    Ok(ok)
}
