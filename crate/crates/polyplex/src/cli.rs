//! Command-line surface. Every subcommand builds one JSON value describing
//! its result; `--format json` prints it pretty, `--format text` flattens it
//! to sorted `key = value` lines. Both carry the same data, and output is
//! byte-deterministic for fixed inputs.
//!
//! Exit codes: 0 on success, 1 when a verification check fails (a
//! counterexample clause, or a criterion/oracle disagreement), 2 on usage,
//! file, or budget errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::diversity::{div2_admissible, div2_polyplex, Div2Params, Div2Witness};
use crate::duality::{
    is_cover, is_extremal, optimal_pair, NonExtremalWitness, Polyplex, WeightTable,
};
use crate::error::Error;
use crate::io::{
    read_json, write_json, CertificateFile, MatrixFile, PolyplexFile, WeightTableFile,
};
use crate::matrix::MultiMatrix;
use crate::planar::enumerate_2d;
use crate::rat::rat_to_string;
use crate::selfdual2::{
    builtin_counterexamples, enumerate_extremal_order2, essential_to_table, is_selfdual,
    rate_parity_check, EssentialWeights,
};
use crate::threshold::{enumerate_threshold, is_threshold, matrix_from_weights};
use crate::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "polyplex",
    version,
    about = "Exact threshold and extremality analysis for multidimensional (0,1)-matrices"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Cap on enumeration and equivalence search steps.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report on one matrix: profile, thresholdness, extremality,
    /// optimal polyplex/cover pair, and order-2 attributes.
    Analyze {
        /// Matrix file ({d, n, bits}).
        matrix: PathBuf,
    },
    /// Decide thresholdness; optionally export the weight certificate.
    Threshold {
        matrix: PathBuf,
        /// Write the certificate (weights plus margin) here.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Decide extremality; optionally export the optimal pair.
    Extremal {
        matrix: PathBuf,
        /// Write the optimal polyplex here.
        #[arg(long)]
        polyplex_out: Option<PathBuf>,
        /// Write the optimal cover here.
        #[arg(long)]
        cover_out: Option<PathBuf>,
    },
    /// Enumerate threshold classes for a shape; at order 2 the extremal
    /// classes are listed as well.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Verify the built-in counterexample weight vectors end to end.
    Counterexamples {
        /// Write each record's weight table into this directory.
        #[arg(long)]
        export_dir: Option<PathBuf>,
    },
    /// Diversity-2 tuples.
    Div2 {
        #[command(subcommand)]
        action: Div2Action,
    },
    /// Two-dimensional classification.
    Planar {
        #[command(subcommand)]
        action: PlanarAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum Div2Action {
    /// Check one tuple: Diophantine witness search plus the LP oracle.
    Check {
        p: u64,
        s: u64,
        q: u64,
        t_x: usize,
        t_y: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum PlanarAction {
    /// Classify all 2D matrices of one order.
    Enumerate { n: usize },
}

/// Runs the parsed command, prints its report, and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok((report, success)) => {
            print!("{}", render(&report, cli.format));
            if success {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Verification { .. } => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, bool), Error> {
    match &cli.command {
        Command::Analyze { matrix } => analyze(matrix),
        Command::Threshold {
            matrix,
            certificate_out,
        } => threshold(matrix, certificate_out.as_deref()),
        Command::Extremal {
            matrix,
            polyplex_out,
            cover_out,
        } => extremal(matrix, polyplex_out.as_deref(), cover_out.as_deref()),
        Command::Enumerate { d, n } => enumerate(*d, *n, cli.budget),
        Command::Counterexamples { export_dir } => counterexamples(export_dir.as_deref()),
        Command::Div2 {
            action: Div2Action::Check { p, s, q, t_x, t_y },
        } => div2_check(*p, *s, *q, *t_x, *t_y),
        Command::Planar {
            action: PlanarAction::Enumerate { n },
        } => planar_enumerate(*n, cli.budget),
    }
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(report).expect("serializable report");
            text.push('\n');
            text
        }
        Format::Text => {
            let mut out = String::new();
            flatten("", report, &mut out);
            out
        }
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, child, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (k, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), child, out);
            }
        }
        Value::Array(items) => {
            let inline: Vec<String> = items.iter().map(scalar_text).collect();
            let _ = writeln!(out, "{prefix} = [{}]", inline.join(", "));
        }
        scalar => {
            let _ = writeln!(out, "{prefix} = {}", scalar_text(scalar));
        }
    }
}

fn read_matrix(path: &Path) -> Result<MultiMatrix, Error> {
    read_json::<MatrixFile>(path)?.to_matrix()
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable artifact")
}

fn table_value(table: &WeightTable) -> Value {
    to_value(&WeightTableFile::from_table(table))
}

fn polyplex_value(k: &Polyplex) -> Value {
    to_value(&PolyplexFile::from_polyplex(k))
}

fn matrix_value(m: &MultiMatrix) -> Value {
    to_value(&MatrixFile::from_matrix(m))
}

/// Distinct positive weights in an optimal cover.
fn cover_diversity(table: &WeightTable) -> usize {
    table
        .weights
        .iter()
        .flatten()
        .filter(|w| w.is_positive())
        .collect::<BTreeSet<_>>()
        .len()
}

fn analyze(path: &Path) -> Result<(Value, bool), Error> {
    let matrix = read_matrix(path)?;
    let certificate = is_threshold(&matrix)?;
    let report = is_extremal(&matrix)?;
    let (weight, polyplex, cover) = optimal_pair(&matrix)?;
    let mut body = json!({
        "d": matrix.dim(),
        "n": matrix.order(),
        "support_size": matrix.support_size(),
        "profile": matrix.profile().directions(),
        "threshold": certificate.is_some(),
        "extremal": report.is_extremal,
        "optimal_weight": rat_to_string(&weight),
        "deficiency": rat_to_string(&report.deficiency),
        "cover": table_value(&cover),
        "polyplex": polyplex_value(&polyplex),
    });
    if let Some(cert) = certificate {
        body["margin"] = Value::String(rat_to_string(&cert.margin));
        body["certificate"] = table_value(&cert.table);
    }
    if matrix.order() == 2 {
        body["selfdual"] = Value::Bool(is_selfdual(&matrix)?);
        body["rate_parity"] = Value::Bool(rate_parity_check(&matrix)?);
        if report.is_extremal {
            body["diversity"] = Value::from(cover_diversity(&cover));
        }
    }
    Ok((body, true))
}

fn threshold(path: &Path, certificate_out: Option<&Path>) -> Result<(Value, bool), Error> {
    let matrix = read_matrix(path)?;
    let certificate = is_threshold(&matrix)?;
    let mut body = json!({
        "d": matrix.dim(),
        "n": matrix.order(),
        "threshold": certificate.is_some(),
    });
    if let Some(cert) = &certificate {
        body["margin"] = Value::String(rat_to_string(&cert.margin));
        body["certificate"] = table_value(&cert.table);
        if let Some(out) = certificate_out {
            write_json(out, &CertificateFile::from_certificate(cert))?;
        }
    }
    Ok((body, true))
}

fn witness_value(witness: &NonExtremalWitness) -> Value {
    match witness {
        NonExtremalWitness::Polydiagonal(k) => json!({
            "kind": "polydiagonal",
            "polyplex": polyplex_value(k),
        }),
        NonExtremalWitness::StuckZero(idx) => json!({
            "kind": "stuck_zero",
            "index": idx.coords(),
        }),
    }
}

fn extremal(
    path: &Path,
    polyplex_out: Option<&Path>,
    cover_out: Option<&Path>,
) -> Result<(Value, bool), Error> {
    let matrix = read_matrix(path)?;
    let report = is_extremal(&matrix)?;
    let (_, polyplex, cover) = optimal_pair(&matrix)?;
    let mut body = json!({
        "d": matrix.dim(),
        "n": matrix.order(),
        "extremal": report.is_extremal,
        "optimal_weight": rat_to_string(&report.optimal_weight),
        "deficiency": rat_to_string(&report.deficiency),
        "cover": table_value(&cover),
        "polyplex": polyplex_value(&polyplex),
    });
    if let Some(witness) = &report.witness {
        body["witness"] = witness_value(witness);
    }
    if let Some(out) = polyplex_out {
        write_json(out, &PolyplexFile::from_polyplex(&polyplex))?;
    }
    if let Some(out) = cover_out {
        write_json(out, &WeightTableFile::from_table(&cover))?;
    }
    Ok((body, true))
}

fn enumerate(d: usize, n: usize, budget: u64) -> Result<(Value, bool), Error> {
    let threshold_reps = enumerate_threshold(d, n, budget)?;
    let mut body = json!({
        "d": d,
        "n": n,
        "threshold_classes": threshold_reps.len(),
        "threshold": threshold_reps.iter().map(matrix_value).collect::<Vec<_>>(),
    });
    if n == 2 {
        let extremal_reps = enumerate_extremal_order2(d, budget)?;
        body["extremal_classes"] = Value::from(extremal_reps.len());
        body["extremal"] = Value::Array(extremal_reps.iter().map(matrix_value).collect());
    }
    Ok((body, true))
}

fn counterexamples(export_dir: Option<&Path>) -> Result<(Value, bool), Error> {
    let records = builtin_counterexamples();
    let outcomes = records
        .par_iter()
        .map(crate::selfdual2::verify_counterexample)
        .collect::<Vec<_>>();
    let mut rows = Vec::new();
    let mut all_pass = true;
    for (k, outcome) in outcomes.into_iter().enumerate() {
        let record = &records[k];
        let row = match outcome {
            Ok(report) => json!({
                "record": k + 1,
                "q": record.q,
                "pass": true,
                "cover_weight": rat_to_string(&report.cover_weight),
                "deficiency": rat_to_string(&report.deficiency),
                "support_size": report.support_size,
                "edge_positions": [report.edge_positions.0, report.edge_positions.1],
                "edge_width": rat_to_string(&report.edge_width),
                "midpoint_entry": rat_to_string(&report.midpoint_entry),
            }),
            Err(Error::Verification { clause, detail }) => {
                all_pass = false;
                json!({
                    "record": k + 1,
                    "q": record.q,
                    "pass": false,
                    "failed_clause": clause,
                    "detail": detail,
                })
            }
            Err(other) => return Err(other),
        };
        rows.push(row);
    }
    if let Some(dir) = export_dir {
        std::fs::create_dir_all(dir)?;
        for (k, record) in records.iter().enumerate() {
            let vertex = EssentialWeights::from_numerators(record.q, &record.numerators)?;
            let table = essential_to_table(&vertex);
            let path = dir.join(format!("counterexample_{:02}.json", k + 1));
            write_json(&path, &WeightTableFile::from_table(&table))?;
        }
    }
    let body = json!({
        "records": rows,
        "all_pass": all_pass,
    });
    Ok((body, all_pass))
}

fn witness_body(witness: &Div2Witness) -> Value {
    json!({
        "r_x": witness.r_x,
        "r_y": witness.r_y,
        "l_x": witness.l_x,
        "l_y": witness.l_y,
        "i": witness.i,
        "w_i": rat_to_string(&witness.w_i),
        "w_j": rat_to_string(&witness.w_j),
    })
}

fn div2_check(p: u64, s: u64, q: u64, t_x: usize, t_y: usize) -> Result<(Value, bool), Error> {
    let params = Div2Params::new(p, s, q, t_x, t_y)?;
    let witness = div2_admissible(&params);
    let table = essential_to_table(&params.essential());
    let matrix = matrix_from_weights(&table)?;
    let report = is_extremal(&matrix)?;
    let oracle_confirms = report.is_extremal
        && table.total_weight() == report.optimal_weight
        && is_cover(&matrix, &table)?;
    let agree = witness.is_some() == oracle_confirms;
    let mut body = json!({
        "params": { "p": p, "s": s, "q": q, "t_x": t_x, "t_y": t_y },
        "admissible": witness.is_some(),
        "oracle_confirms": oracle_confirms,
        "agree": agree,
        "optimal_weight": rat_to_string(&report.optimal_weight),
        "deficiency": rat_to_string(&report.deficiency),
    });
    if let Some(witness) = &witness {
        body["witness"] = witness_body(witness);
        body["polyplex"] = polyplex_value(&div2_polyplex(&params, witness)?);
    }
    Ok((body, agree))
}

fn planar_enumerate(n: usize, budget: u64) -> Result<(Value, bool), Error> {
    let census = enumerate_2d(n, budget)?;
    let body = json!({
        "n": n,
        "extremal_classes": census.extremal.len(),
        "threshold_classes": census.threshold.len(),
        "stepped_count": census.stepped_count,
        "extremal": census.extremal.iter().map(matrix_value).collect::<Vec<_>>(),
        "threshold": census.threshold.iter().map(matrix_value).collect::<Vec<_>>(),
    });
    Ok((body, true))
}
