use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hhl_cli::database::{bundled_db_dir, find, load_dimension, DB_ENV};
use hhl_cli::import::{import, write_collections, Format};
use hhl_cli::report::CheckReport;
use hhl_cli::survey::{run_survey, Status, Summary, SurveyOptions};
use hhl_cli::{class_map, parse_range};
use hhl_core::exceptional::{certify_with, CertifyOptions};
use hhl_core::fan::{bondal_criterion, unimodular};
use hhl_core::resolution::{bondal_thomsen_collection, dump_cells, enumerate_cells, resolution_rank_vector};
use hhl_core::LabelConvention;

#[derive(Parser)]
#[command(
    name = "hhl",
    version,
    about = "Exceptionality checks for line bundles from the HHL resolution of the diagonal"
)]
struct Cli {
    /// Directory holding smooth_fano_<dim>.jsonl files
    #[arg(long, global = true, env = DB_ENV)]
    db_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Convention {
    #[default]
    Hhl,
    Bondal,
}

impl From<Convention> for LabelConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Hhl => LabelConvention::Hhl,
            Convention::Bondal => LabelConvention::Bondal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certify one variety; exit 0 on success, 1 on failure
    Check {
        dim: usize,
        index: usize,
        /// Class map rows, e.g. "0,0,1,1;1,1,0,0"; defaults to the computed one
        #[arg(long)]
        class_map: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        convention: Convention,
        #[arg(long)]
        json: bool,
    },
    /// Certify every variety of one dimension
    Survey {
        dim: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Append-only result cache; completed varieties are not recomputed
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Database indices A..B (half-open)
        #[arg(long)]
        range: Option<String>,
        /// Per-variety limit in seconds
        #[arg(long)]
        timeout: Option<f64>,
        /// Recompute varieties cached as timed out
        #[arg(long)]
        retry_timeouts: bool,
        /// Print one line per finished variety to stderr
        #[arg(long)]
        progress: bool,
        #[arg(long)]
        json: bool,
    },
    /// Count varieties whose ray matrix has all maximal minors in {0, ±1}
    Unimodular {
        dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Convert a database dump to canonical collection files plus checksums
    Import {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        /// Defaults to the database directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print the cells of the quotient arrangement with their labels
    DumpCells {
        dim: usize,
        index: usize,
        #[arg(long)]
        class_map: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        convention: Convention,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let db = cli.db_dir.unwrap_or_else(bundled_db_dir);
    match cli.command {
        Command::Check {
            dim,
            index,
            class_map: rows,
            convention,
            json,
        } => {
            let record = find(&db, dim, index)?;
            let pi = class_map(&record.fan, rows.as_deref())?;
            let opts = CertifyOptions {
                convention: convention.into(),
                ..CertifyOptions::default()
            };
            let verdict = certify_with(&record.fan, &pi, &opts)?;
            let bondal = bondal_criterion(&record.fan)?.holds;
            let report = CheckReport::new(&record, &pi, &verdict, unimodular(&record.fan), bondal);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            Ok(ExitCode::from(if verdict.success() { 0 } else { 1 }))
        }
        Command::Survey {
            dim,
            jobs,
            cache,
            range,
            timeout,
            retry_timeouts,
            progress,
            json,
        } => {
            let varieties = load_dimension(&db, dim)?;
            let timeout = timeout
                .map(|t| {
                    if t.is_finite() && t > 0.0 {
                        Ok(Duration::from_secs_f64(t))
                    } else {
                        bail!("timeout must be a positive number of seconds")
                    }
                })
                .transpose()?;
            let opts = SurveyOptions {
                jobs,
                timeout,
                range: range.as_deref().map(parse_range).transpose()?,
                cache,
                retry_timeouts,
            };
            let records = run_survey(&varieties, &opts, |r, k, n| {
                if progress {
                    let status = match (r.status, r.hhl_success) {
                        (Status::Ok, Some(true)) => "success",
                        (Status::Ok, _) => "failure",
                        (Status::Timeout, _) => "timeout",
                        (Status::Error, _) => "error",
                    };
                    eprintln!("[{k}/{n}] {}/{} {status} {} ms", r.dim, r.index, r.runtime_ms);
                }
            })?;
            let summary = Summary::new(dim, &records);
            if json {
                println!("{}", serde_json::to_string_pretty(&summary)?);
            } else {
                print!("{summary}");
            }
            Ok(ExitCode::from(if summary.errors.is_empty() { 0 } else { 2 }))
        }
        Command::Unimodular { dim, json } => {
            let varieties = load_dimension(&db, dim)?;
            let indices: Vec<usize> = varieties
                .iter()
                .filter(|v| unimodular(&v.fan))
                .map(|v| v.database_index)
                .collect();
            if json {
                let out = serde_json::json!({
                    "dim": dim,
                    "varieties": varieties.len(),
                    "unimodular": indices.len(),
                    "indices": indices,
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("dimension: {dim}");
                println!("unimodular: {}/{}", indices.len(), varieties.len());
                let items: Vec<String> = indices.iter().map(ToString::to_string).collect();
                println!("indices: {}", items.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Import { file, format, out_dir } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let grouped = import(&text, format)?;
            let out = out_dir.unwrap_or(db);
            for path in write_collections(&out, &grouped)? {
                println!("{}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DumpCells {
            dim,
            index,
            class_map: rows,
            convention,
        } => {
            let record = find(&db, dim, index)?;
            let pi = class_map(&record.fan, rows.as_deref())?;
            let cells = enumerate_cells(&record.fan)?;
            let collection = bondal_thomsen_collection(&pi, &cells, convention.into());
            let ranks: Vec<String> = resolution_rank_vector(&cells).iter().map(ToString::to_string).collect();
            println!(
                "# variety {dim}/{index}: {} cells, ranks {}",
                cells.len(),
                ranks.join(" ")
            );
            println!("# dim [covector] (interior point) class");
            print!("{}", dump_cells(&cells, &collection));
            Ok(ExitCode::SUCCESS)
        }
    }
}
