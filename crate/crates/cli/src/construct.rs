//! `construct`: generalized Lawrence matrices, `Λ(D)`, hypergraph encodings, 0/1 encodings,
//! sunflower families and the complete-uniform witness family.

use std::fs;
use std::path::{Path, PathBuf};

use bouquet_core::constructors::hypergraph_encoding;
use bouquet_core::{
    build_complete_uniform_witness, build_sunflower_family, generalized_lawrence,
    is_positively_graded, second_lawrence, vectors_to_text, Encoding01Spec, Hypergraph, IntMatrix,
};
use clap::Subcommand;
use serde_json::json;

use crate::{input, Failure, Report};

#[derive(Subcommand)]
pub enum Construct {
    /// Generalized Lawrence matrix from a spec file ("m s", then an a line and a c line per pair).
    Lawrence {
        spec: PathBuf,
        /// Write the matrix to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Second Lawrence lifting [[D, 0], [I, I]].
    Lambda {
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Almost 3-uniform hypergraph whose bouquets realize the columns of a matrix.
    Hypergraph {
        matrix: PathBuf,
        /// Write PREFIX.hyp and PREFIX.mat.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stable 0/1 encoding of a nonnegative matrix.
    Encode01 {
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sunflowers with shared cores closed by a perfect matching.
    Sunflower {
        /// Core of each sunflower as one-based vertices, sunflowers separated by ';', e.g. "1;1,2".
        #[arg(long)]
        cores: String,
        /// Petal count of each sunflower, e.g. 3,4,5.
        #[arg(long)]
        petals: String,
        /// cyclic, across, pairs, or explicit one-based pairs such as "2-5,3-4".
        #[arg(long, default_value = "cyclic")]
        matching: String,
        /// Write PREFIX.hyp and PREFIX.mat.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The hypergraph H_{d+1} with its degree-d witness binomial.
    Witness {
        d: usize,
        /// Write PREFIX.hyp, PREFIX.mat and PREFIX.witness.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(".");
    name.push(ext);
    PathBuf::from(name)
}

fn matrix_report(m: &IntMatrix, out: Option<&Path>) -> Result<Report, Failure> {
    if let Some(path) = out {
        write(path, &m.to_text())?;
    }
    Ok(Report::new(m.to_text(), json!({ "matrix": m })))
}

/// Hypergraph and incidence matrix, plus optional extra files, to stdout or to `PREFIX.*`.
fn hypergraph_report(
    h: &Hypergraph,
    extra: &[(&str, String)],
    json: serde_json::Value,
    out: Option<&Path>,
) -> Result<Report, Failure> {
    let incidence = h.incidence_matrix();
    let mut files = vec![("hyp", h.to_text()), ("mat", incidence.to_text())];
    files.extend(extra.iter().map(|(e, t)| (*e, t.clone())));
    if let Some(prefix) = out {
        for (ext, text) in &files {
            write(&with_extension(prefix, ext), text)?;
        }
    }
    let text = files
        .iter()
        .map(|(_, t)| t.as_str())
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::new(text, json))
}

fn one_based_blocks(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    parts
        .iter()
        .map(|p| p.iter().map(|i| i + 1).collect())
        .collect()
}

pub fn run(c: Construct) -> Result<Report, Failure> {
    match c {
        Construct::Lawrence { spec, out } => {
            let spec = input::lawrence_spec_file(&spec)?;
            let m = generalized_lawrence(&spec)?;
            let mut report = matrix_report(&m, out.as_deref())?;
            report.json["parts"] = json!(one_based_blocks(&spec.parts()));
            report.json["lambda"] = json!(spec.lambda_list);
            Ok(report)
        }
        Construct::Lambda { matrix, out } => matrix_report(
            &second_lawrence(&input::matrix_file(&matrix)?),
            out.as_deref(),
        ),
        Construct::Hypergraph { matrix, out } => {
            let enc = hypergraph_encoding(&input::matrix_file(&matrix)?)?;
            let json = json!({
                "hypergraph": enc.hypergraph,
                "incidence": enc.hypergraph.incidence_matrix(),
                "parts": one_based_blocks(&enc.parts),
                "bases": one_based_blocks(&enc.bases),
            });
            hypergraph_report(&enc.hypergraph, &[], json, out.as_deref())
        }
        Construct::Encode01 { matrix, out } => {
            let d = input::matrix_file(&matrix)?;
            let spec = Encoding01Spec::new(&d)?;
            if !is_positively_graded(&d) {
                eprintln!("note: D is not positively graded, so neither is its encoding");
            }
            let m = spec.matrix();
            let mut report = matrix_report(&m, out.as_deref())?;
            report.json["parts"] = json!(one_based_blocks(&spec.parts()));
            Ok(report)
        }
        Construct::Sunflower {
            cores,
            petals,
            matching,
            out,
        } => {
            let cores = input::blocks(&cores)?;
            let petals: Vec<usize> = petals
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Failure::Error(format!("invalid petal count '{t}'")))
                })
                .collect::<Result<_, _>>()?;
            let h = build_sunflower_family(&cores, &petals, &input::matching(&matching)?)?;
            let json = json!({ "hypergraph": h, "incidence": h.incidence_matrix() });
            hypergraph_report(&h, &[], json, out.as_deref())
        }
        Construct::Witness { d, out } => {
            let w = build_complete_uniform_witness(d)?;
            let n = w.hypergraph.edge_count();
            let json = json!({
                "hypergraph": w.hypergraph,
                "incidence": w.hypergraph.incidence_matrix(),
                "witness": w.witness,
                "parts": one_based_blocks(&w.parts),
            });
            let witness = vectors_to_text(n, std::slice::from_ref(&w.witness));
            hypergraph_report(&w.hypergraph, &[("witness", witness)], json, out.as_deref())
        }
    }
}
