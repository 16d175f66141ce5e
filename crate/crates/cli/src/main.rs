//! Command-line front end for the almost-affine Cartan matrix toolkit.
//!
//! Reports go to standard output, diagnostics to standard error. Exit
//! codes: 0 on success (all checks pass), 1 on a verification or census
//! mismatch, 2 on usage or input errors. Batch-only; no prompts.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use almost_affine::catalog::{self, Section};
use almost_affine::classify::{self, VerdictJson};
use almost_affine::enumeration::{self, targets, CensusReport, EnumerationOptions, SymFilter};
use almost_affine::equivalence;
use almost_affine::geometry;
use almost_affine::matrix::{CartanMatrix, MatrixJson};
use almost_affine::supermap::{self, SuperizationReportJson};
use almost_affine::Permutation;

mod render;

const MATRIX_SCHEMA: &str = "Matrix JSON object: {\"name\": optional string, \"parity\": optional \
string over {e,o,i} of length n, \"rows\": [[int,...],...]}. Indices in permutations are 1-based.";

#[derive(Parser)]
#[command(
    name = "cartan",
    about = "Classify, pair and enumerate (super) Cartan matrices of hyperbolic type",
    version,
    after_help = MATRIX_SCHEMA
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SymChoice {
    All,
    Sym,
    Nonsym,
}

impl From<SymChoice> for SymFilter {
    fn from(c: SymChoice) -> SymFilter {
        match c {
            SymChoice::All => SymFilter::All,
            SymChoice::Sym => SymFilter::OnlySymmetrizable,
            SymChoice::Nonsym => SymFilter::OnlyNonSymmetrizable,
        }
    }
}

#[derive(Args)]
struct InputArg {
    /// Path to a matrix JSON file ("-" reads standard input)
    #[arg(long)]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a matrix: finite, affine, almost affine or other
    /// indefinite, with the per-component breakdown. Matrices with odd
    /// indices are classified through their desuperization.
    #[command(after_help = MATRIX_SCHEMA)]
    Classify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Double every diagonal-1 row of a super matrix and print the even
    /// result.
    #[command(after_help = MATRIX_SCHEMA)]
    Desuperize {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Find all superization classes of an even almost affine matrix.
    /// Output schema: {"h": matrix, "multiplicity": k, "superizations": [matrix,...]}.
    #[command(after_help = MATRIX_SCHEMA)]
    Superize {
        #[command(flatten)]
        input: InputArg,
        /// Keep every valid halved matrix even when the input is not
        /// almost affine (exploratory mode)
        #[arg(long)]
        relax: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide permutation equivalence of two matrices; prints the witness
    /// as a 1-based array when one exists.
    #[command(after_help = MATRIX_SCHEMA)]
    Equivalent {
        /// First matrix JSON file
        a: PathBuf,
        /// Second matrix JSON file
        b: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Enumerate almost affine classes at a rank (or range of ranks) up
    /// to permutation equivalence.
    Enumerate {
        /// Single rank between 3 and 10
        #[arg(long, conflicts_with = "ranks")]
        rank: Option<usize>,
        /// Inclusive rank range, e.g. 3..10
        #[arg(long)]
        ranks: Option<String>,
        /// Enumerate super matrices via superization of the even census
        #[arg(long = "super")]
        super_matrices: bool,
        /// Rank-3 brute-force direct search (test oracle; needs --super)
        #[arg(long, requires = "super_matrices")]
        direct: bool,
        #[arg(long, value_enum, default_value = "all")]
        sym: SymChoice,
        /// Off-diagonal entry bound; 4 is complete, larger values are for
        /// falsification experiments
        #[arg(long = "max-entry", default_value_t = 4)]
        max_entry: i64,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Replay a pairing catalog: verify every entry and compute the
    /// statistics. Exits 1 when any entry fails.
    #[command(name = "verify-catalog")]
    VerifyCatalog {
        /// Catalog JSON file; defaults to the bundled catalogs
        /// (CARTAN_CATALOG_DIR overrides their location)
        path: Option<PathBuf>,
        /// Which bundled section to verify when no path is given
        #[arg(long, value_enum, default_value = "all")]
        section: SectionChoice,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Billiard-wall geometry of a symmetrizable matrix: symmetrizer,
    /// symmetrized matrix, signed squared cosines (exact fractions) and
    /// inertia signature, with an optional Minkowski embedding.
    #[command(after_help = MATRIX_SCHEMA)]
    Geometry {
        #[command(flatten)]
        input: InputArg,
        /// Also emit floating-point wall vectors in Minkowski space
        #[arg(long)]
        embed: bool,
        /// Embedding reconstruction tolerance
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the full rank 3..10 census and compare against the published
    /// targets; exits 1 with a per-rank diff on any mismatch.
    Census {
        #[arg(long = "max-entry", default_value_t = 4)]
        max_entry: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SectionChoice {
    Sym,
    Nonsym,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_matrix(input: &str) -> Result<(Option<String>, CartanMatrix), String> {
    let text = if input == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?
    };
    let json: MatrixJson = serde_json::from_str(&text).map_err(|e| format!("{input}: {e}"))?;
    let m = json.to_matrix().map_err(|e| format!("{input}: {e}"))?;
    Ok((json.name, m))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Classify { input, format } => {
            let (_, m) = read_matrix(&input.input)?;
            let verdict = if m.odd_indices().is_empty() {
                classify::type_of(&m)
            } else {
                classify::classify_super(&m)
            }
            .map_err(|e| e.to_string())?;
            match format {
                Format::Json => print_json(&VerdictJson::from_verdict(&verdict))?,
                _ => render::verdict_text(&verdict),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Desuperize { input, format } => {
            let (name, m) = read_matrix(&input.input)?;
            let even = supermap::desuperize(&m).map_err(|e| e.to_string())?;
            let out_name = name.map(|n| format!("desuperized {n}"));
            emit_matrices(&[even], out_name.as_deref(), format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Superize {
            input,
            relax,
            format,
        } => {
            let (_, m) = read_matrix(&input.input)?;
            let report = supermap::find_superizations(&m, relax).map_err(|e| e.to_string())?;
            match format {
                Format::Json => print_json(
                    &SuperizationReportJson::from_report(&report).map_err(|e| e.to_string())?,
                )?,
                _ => render::superizations_text(&report),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Equivalent { a, b, format } => {
            let (_, ma) = read_matrix(&a.to_string_lossy())?;
            let (_, mb) = read_matrix(&b.to_string_lossy())?;
            let witness = equivalence::are_equivalent(&ma, &mb);
            match format {
                Format::Json => {
                    let perm = witness.as_ref().map(Permutation::to_one_based);
                    print_json(&serde_json::json!({
                        "equivalent": witness.is_some(),
                        "permutation": perm,
                    }))?;
                }
                _ => match &witness {
                    Some(w) => println!("equivalent via {:?}", w.to_one_based()),
                    None => println!("not equivalent"),
                },
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            rank,
            ranks,
            super_matrices,
            direct,
            sym,
            max_entry,
            jobs,
            format,
        } => {
            let (lo, hi) = match (rank, ranks) {
                (Some(r), None) => (r, r),
                (None, Some(spec)) => parse_range(&spec)?,
                (None, None) => return Err("pass --rank N or --ranks A..B".into()),
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let mut all = Vec::new();
            for r in lo..=hi {
                let opts = EnumerationOptions {
                    rank: r,
                    sym_filter: sym.into(),
                    max_abs_offdiag: max_entry,
                    jobs,
                };
                let classes = if direct {
                    enumeration::enumerate_super_direct(&opts)
                } else if super_matrices {
                    enumeration::enumerate_super_almost_affine(&opts)
                } else {
                    enumeration::enumerate_hyperbolic(&opts)
                }
                .map_err(|e| e.to_string())?;
                all.push((r, classes));
            }
            render::enumeration_output(&all, format).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyCatalog {
            path,
            section,
            format,
        } => {
            let mut batches = Vec::new();
            match path {
                Some(p) => {
                    batches.push(catalog::parse_catalog_file(&p).map_err(|e| e.to_string())?)
                }
                None => {
                    if section != SectionChoice::Nonsym {
                        batches
                            .push(catalog::load_bundled(Section::Sym).map_err(|e| e.to_string())?);
                    }
                    if section != SectionChoice::Sym {
                        batches.push(
                            catalog::load_bundled(Section::Nonsym).map_err(|e| e.to_string())?,
                        );
                    }
                }
            }
            let mut all_pass = true;
            for entries in &batches {
                let reports: Vec<_> = entries.iter().map(catalog::verify_entry).collect();
                let stats = catalog::stats(entries);
                all_pass &=
                    reports.iter().all(|r| r.passed()) && stats.multi_flag_mismatches.is_empty();
                render::catalog_output(entries, &reports, &stats, format)
                    .map_err(|e| e.to_string())?;
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Geometry {
            input,
            embed,
            tolerance,
            format,
        } => {
            let (_, m) = read_matrix(&input.input)?;
            let gram = geometry::gram_data(&m).map_err(|e| e.to_string())?;
            let embedding = if embed {
                Some(geometry::lorentz_embedding(&gram.b, tolerance).map_err(|e| e.to_string())?)
            } else {
                None
            };
            render::geometry_output(&gram, embedding.as_ref(), format)
                .map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Census {
            max_entry,
            jobs,
            format,
        } => {
            let (sym, nonsym) =
                enumeration::census_split(3..=10, max_entry, jobs).map_err(|e| e.to_string())?;
            let check = census_check(&sym, &nonsym);
            render::census_output(&sym, &nonsym, &check, format).map_err(|e| e.to_string())?;
            Ok(if check.iter().all(|(_, exp, got)| exp == got) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// (label, expected, found) triples for the census comparison.
fn census_check(sym: &CensusReport, nonsym: &CensusReport) -> Vec<(&'static str, usize, usize)> {
    vec![
        (
            "symmetrizable hyperbolic classes",
            targets::SYM_HYPERBOLIC,
            sym.totals.hyperbolic,
        ),
        (
            "symmetrizable admitting superization",
            targets::SYM_ADMITTING,
            sym.totals.admitting_superization,
        ),
        (
            "symmetrizable multi-superization",
            targets::SYM_MULTI,
            sym.totals.multi_superization,
        ),
        (
            "symmetrizable super classes",
            targets::SYM_SUPER,
            sym.totals.superizations,
        ),
        (
            "non-symmetrizable hyperbolic classes",
            targets::NONSYM_HYPERBOLIC,
            nonsym.totals.hyperbolic,
        ),
        (
            "non-symmetrizable admitting superization",
            targets::NONSYM_ADMITTING,
            nonsym.totals.admitting_superization,
        ),
        (
            "non-symmetrizable multi-superization",
            targets::NONSYM_MULTI,
            nonsym.totals.multi_superization,
        ),
        (
            "non-symmetrizable super classes",
            targets::NONSYM_SUPER,
            nonsym.totals.superizations,
        ),
    ]
}

fn parse_range(spec: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = spec
        .split_once("..")
        .ok_or_else(|| format!("invalid range {spec:?}, expected A..B"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("invalid range start {lo:?}"))?;
    let hi = hi.trim_start_matches('=');
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("invalid range end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {spec:?}"));
    }
    Ok((lo, hi))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), String> {
    println!(
        "{}",
        serde_json::to_string_pretty(value).map_err(|e| e.to_string())?
    );
    Ok(())
}

fn emit_matrices(ms: &[CartanMatrix], name: Option<&str>, format: Format) -> Result<(), String> {
    match format {
        Format::Json => {
            let jsons: Vec<MatrixJson> = ms
                .iter()
                .map(|m| MatrixJson::from_matrix(m, name))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            if jsons.len() == 1 {
                print_json(&jsons[0])
            } else {
                print_json(&jsons)
            }
        }
        _ => {
            for m in ms {
                render::matrix_text(m);
            }
            Ok(())
        }
    }
}
