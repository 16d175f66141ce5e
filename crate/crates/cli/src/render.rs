//! Output rendering: human-readable text, CSV and LaTeX next to the JSON
//! emitters in `main`. JSON output is stable: identical inputs produce
//! byte-identical documents.

use almost_affine::catalog::{CatalogEntry, CatalogStats, EntryReport};
use almost_affine::classify::TypeVerdict;
use almost_affine::enumeration::{CensusReport, CensusReportJson};
use almost_affine::geometry::{fraction_string, GramData, WallEmbedding};
use almost_affine::matrix::{CartanMatrix, MatrixJson};
use almost_affine::supermap::SuperizationReport;
use almost_affine::Error;

use crate::Format;

pub fn matrix_text(m: &CartanMatrix) {
    let parity: String = m.parities().iter().map(|p| p.as_char()).collect();
    println!("rank {} parity {}", m.rank(), parity);
    let width = m
        .entries()
        .iter()
        .map(|e| e.to_string().len())
        .max()
        .unwrap_or(1);
    for i in 0..m.rank() {
        let row: Vec<String> = (0..m.rank())
            .map(|j| format!("{:>width$}", m.entry(i, j).to_string()))
            .collect();
        println!("  [{}]", row.join(" "));
    }
}

fn matrix_latex(m: &CartanMatrix) -> String {
    let rows: Vec<String> = (0..m.rank())
        .map(|i| {
            (0..m.rank())
                .map(|j| m.entry(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!(
        "\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}",
        rows.join(" \\\\\n")
    )
}

fn kind_str(kind: almost_affine::Kind) -> &'static str {
    match kind {
        almost_affine::Kind::Finite => "finite",
        almost_affine::Kind::Affine => "affine",
        almost_affine::Kind::Indefinite => "indefinite",
    }
}

pub fn verdict_text(v: &TypeVerdict) {
    let kind = match v.kind {
        almost_affine::VerdictKind::Finite => "finite",
        almost_affine::VerdictKind::Affine => "affine",
        almost_affine::VerdictKind::AlmostAffine => "almost_affine",
        almost_affine::VerdictKind::OtherIndefinite => "other_indefinite",
    };
    println!("kind: {kind}");
    for (indices, k) in &v.components {
        let shown: Vec<usize> = indices.iter().map(|i| i + 1).collect();
        println!("  component {:?}: {}", shown, kind_str(*k));
    }
}

pub fn superizations_text(r: &SuperizationReport) {
    println!("multiplicity: {}", r.multiplicity);
    for s in &r.superizations {
        matrix_text(s);
    }
}

pub fn enumeration_output(
    per_rank: &[(usize, Vec<CartanMatrix>)],
    format: Format,
) -> Result<(), Error> {
    match format {
        Format::Json => {
            let ranks: Vec<serde_json::Value> = per_rank
                .iter()
                .map(|(rank, classes)| {
                    let ms: Result<Vec<MatrixJson>, Error> = classes
                        .iter()
                        .map(|m| MatrixJson::from_matrix(m, None))
                        .collect();
                    Ok(serde_json::json!({
                        "rank": rank,
                        "count": classes.len(),
                        "classes": ms?,
                    }))
                })
                .collect::<Result<_, Error>>()?;
            println!(
                "{}",
                serde_json::to_string_pretty(&ranks).expect("serializable")
            );
        }
        Format::Text => {
            for (rank, classes) in per_rank {
                println!("rank {rank}: {} classes", classes.len());
                for m in classes {
                    matrix_text(m);
                }
            }
        }
        Format::Csv => {
            println!("rank,index,parity,rows");
            for (rank, classes) in per_rank {
                for (i, m) in classes.iter().enumerate() {
                    let parity: String = m.parities().iter().map(|p| p.as_char()).collect();
                    let rows: Vec<String> = (0..m.rank())
                        .map(|r| {
                            (0..m.rank())
                                .map(|c| m.entry(r, c).to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect();
                    println!("{rank},{i},{parity},{}", rows.join(";"));
                }
            }
        }
        Format::Latex => {
            for (rank, classes) in per_rank {
                println!("% rank {rank}: {} classes", classes.len());
                for m in classes {
                    println!("{}", matrix_latex(m));
                }
            }
        }
    }
    Ok(())
}

pub fn catalog_output(
    entries: &[CatalogEntry],
    reports: &[EntryReport],
    stats: &CatalogStats,
    format: Format,
) -> Result<(), Error> {
    let passed = reports.iter().filter(|r| r.passed()).count();
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "entries": reports,
                "stats": stats,
                "passed": passed,
                "total": reports.len(),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        Format::Latex => {
            println!("\\begin{{tabular}}{{llc}}");
            println!("S & H & checks \\\\ \\hline");
            for r in reports {
                let status = if r.passed() { "ok" } else { "FAIL" };
                println!("{} & {} & {} \\\\", r.s_name, r.h_name, status);
            }
            println!("\\end{{tabular}}");
            println!("% {passed}/{} entries pass", reports.len());
        }
        _ => {
            for (e, r) in entries.iter().zip(reports) {
                let mut failures = Vec::new();
                if !r.pair_ok {
                    failures.push("pair");
                }
                if !r.s_almost_affine {
                    failures.push("s-classification");
                }
                if !r.h_almost_affine {
                    failures.push("h-classification");
                }
                if !r.symmetrizability_ok {
                    failures.push("symmetrizability");
                }
                if r.billiard_ok == Some(false) {
                    failures.push("billiard");
                }
                if failures.is_empty() {
                    println!(
                        "ok   {:>8} -> {:<8} rank {}",
                        r.s_name,
                        r.h_name,
                        e.s.rank()
                    );
                } else {
                    let note = if r.reversed_convention {
                        " (verifies under the inverse permutation)"
                    } else {
                        ""
                    };
                    println!(
                        "FAIL {:>8} -> {:<8} [{}]{note}",
                        r.s_name,
                        r.h_name,
                        failures.join(", ")
                    );
                }
            }
            println!(
                "{passed}/{} entries pass; {} distinct H classes, {} with several superizations",
                reports.len(),
                stats.distinct_h_count,
                stats.multi_h_count
            );
            let multis: Vec<String> = stats
                .multiplicity_map
                .iter()
                .filter(|(_, &v)| v >= 2)
                .map(|(k, v)| format!("{k} x{v}"))
                .collect();
            if !multis.is_empty() {
                println!("multiplicities >= 2: {}", multis.join(", "));
            }
            if !stats.multi_flag_mismatches.is_empty() {
                println!("multi-flag mismatches: {:?}", stats.multi_flag_mismatches);
            }
        }
    }
    Ok(())
}

pub fn geometry_output(
    gram: &GramData,
    embedding: Option<&WallEmbedding>,
    format: Format,
) -> Result<(), Error> {
    match format {
        Format::Json => {
            let d: Vec<String> = gram.d.d.iter().map(fraction_string).collect();
            let b: Vec<Vec<String>> = gram
                .b
                .iter()
                .map(|row| row.iter().map(fraction_string).collect())
                .collect();
            let cos2: Vec<Vec<String>> = gram
                .cos2
                .iter()
                .map(|row| row.iter().map(fraction_string).collect())
                .collect();
            let mut doc = serde_json::json!({
                "d": d,
                "b": b,
                "cos2": cos2,
                "signature": [gram.signature.0, gram.signature.1, gram.signature.2],
            });
            if let Some(e) = embedding {
                doc["embedding"] = serde_json::json!(e.vectors);
                doc["tolerance"] = serde_json::json!(e.tolerance);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        _ => {
            let d: Vec<String> = gram.d.d.iter().map(fraction_string).collect();
            println!("symmetrizer d: [{}]", d.join(", "));
            println!(
                "signature: ({}, {}, {})",
                gram.signature.0, gram.signature.1, gram.signature.2
            );
            println!("cos^2 (signed):");
            for row in &gram.cos2 {
                let cells: Vec<String> = row.iter().map(fraction_string).collect();
                println!("  [{}]", cells.join(", "));
            }
            if let Some(e) = embedding {
                println!("wall vectors (metric +..+-):");
                for v in &e.vectors {
                    let cells: Vec<String> = v.iter().map(|x| format!("{x:+.6}")).collect();
                    println!("  [{}]", cells.join(", "));
                }
            }
        }
    }
    Ok(())
}

pub fn census_output(
    sym: &CensusReport,
    nonsym: &CensusReport,
    check: &[(&'static str, usize, usize)],
    format: Format,
) -> Result<(), Error> {
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "sym": CensusReportJson::from_report(sym)?,
                "nonsym": CensusReportJson::from_report(nonsym)?,
                "checks": check
                    .iter()
                    .map(|(label, expected, found)| {
                        serde_json::json!({
                            "claim": label,
                            "expected": expected,
                            "found": found,
                            "ok": expected == found,
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        _ => {
            println!("per-rank hyperbolic classes (sym / nonsym):");
            for (rank, count) in &sym.per_rank {
                let ns = nonsym.per_rank.get(rank).copied().unwrap_or(0);
                let ss = sym.per_rank_super.get(rank).copied().unwrap_or(0);
                let nss = nonsym.per_rank_super.get(rank).copied().unwrap_or(0);
                println!("  rank {rank}: {count} / {ns}   super {ss} / {nss}");
            }
            let mut ok = true;
            for (label, expected, found) in check {
                let mark = if expected == found { "ok  " } else { "DIFF" };
                ok &= expected == found;
                println!("{mark} {label}: expected {expected}, found {found}");
            }
            println!(
                "census {}",
                if ok {
                    "matches the published targets"
                } else {
                    "MISMATCH"
                }
            );
        }
    }
    Ok(())
}
