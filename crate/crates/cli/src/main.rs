use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use paramedial::affine::AffineForm;
use paramedial::{pq_group, pq_total, Error};
use paramedial_cli::parse_group;
use paramedial_cli::record::{self, FormRecord, GroupRecord};
use paramedial_cli::run::{Cache, RunManifest};
use paramedial_cli::verify::{self, Level, Status};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Paramedial quasigroups of orders p, p^k and p^2.
#[derive(Parser)]
#[command(name = "pq", version)]
struct Cli {
    /// Directory for cached outputs.
    #[arg(long, env = "PQ_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of paramedial quasigroups up to isomorphism.
    Count {
        /// Order n, summed over the abelian groups of order n.
        #[arg(long, required_unless_present = "group", conflicts_with = "group")]
        order: Option<u64>,
        /// `cyclic P K` or `elem2 P`.
        #[arg(long, num_args = 2..=3, value_names = ["KIND", "P", "K"])]
        group: Option<Vec<String>>,
    },
    /// Export one representative per isomorphism class.
    Enumerate {
        /// `cyclic P K` or `elem2 P`.
        #[arg(long, required = true, num_args = 2..=3, value_names = ["KIND", "P", "K"])]
        group: Vec<String>,
        /// Keep only simple quasigroups.
        #[arg(long)]
        simple_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; a manifest is written next to it. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the self-checks for one group.
    Verify {
        /// `cyclic P K` or `elem2 P`.
        #[arg(long, required = true, num_args = 2..=3, value_names = ["KIND", "P", "K"])]
        group: Vec<String>,
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Tables,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Oracle,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &std::path::Path, e: io::Error) -> Failure {
    Failure {
        code: EXIT_RESOURCE,
        message: format!("{}: {e}", path.display()),
    }
}

fn count(order: Option<u64>, group: Option<Vec<String>>) -> Result<(), Failure> {
    let (value, json) = match (order, group) {
        (Some(n), _) => {
            let c = pq_total(n)?;
            (c, serde_json::json!({ "order": n, "count": c }))
        }
        (None, Some(words)) => {
            let g = parse_group(&words).map_err(Failure::usage)?;
            let c = pq_group(g);
            (
                c,
                serde_json::json!({ "group": GroupRecord::of(g), "count": c }),
            )
        }
        (None, None) => return Err(Failure::usage("one of --order or --group is required")),
    };
    println!("{value}");
    println!("{json}");
    Ok(())
}

fn render(words: &[String], simple_only: bool, format: Format) -> Result<(String, usize), Failure> {
    let g = parse_group(words).map_err(Failure::usage)?;
    let entries = record::enumerate(g, simple_only)?;
    let n = entries.len();
    let text = match format {
        Format::Json => record::to_json(
            &entries
                .into_iter()
                .map(|(_, r)| r)
                .collect::<Vec<FormRecord>>(),
        ),
        Format::Csv => record::to_csv(
            &entries
                .into_iter()
                .map(|(_, r)| r)
                .collect::<Vec<FormRecord>>(),
        ),
        Format::Tables => record::to_tables(
            &entries
                .into_iter()
                .map(|(f, _)| f)
                .collect::<Vec<AffineForm>>(),
        ),
    };
    Ok((text, n))
}

fn enumerate(
    cache_dir: Option<PathBuf>,
    words: Vec<String>,
    simple_only: bool,
    format: Format,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let format_name = format
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let params: BTreeMap<String, String> = [
        ("group".to_string(), words.join(" ")),
        ("simple_only".to_string(), simple_only.to_string()),
        ("format".to_string(), format_name),
    ]
    .into();
    let cache = cache_dir.map(Cache::new);
    let key = Cache::key("enumerate", &params);
    let cached = cache
        .as_ref()
        .and_then(|c| c.get(&key))
        .and_then(|b| String::from_utf8(b).ok());
    let text = match cached {
        Some(text) => text,
        None => {
            let (text, _) = render(&words, simple_only, format)?;
            if let Some(c) = &cache {
                // a failed cache write only costs the next run a recomputation
                if let Err(e) = c.put(&key, text.as_bytes()) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
            text
        }
    };
    match out {
        Some(path) => {
            fs::write(&path, &text).map_err(|e| io_failure(&path, e))?;
            let manifest = RunManifest::new("enumerate", params, text.as_bytes());
            manifest
                .write_next_to(&path)
                .map_err(|e| io_failure(&RunManifest::path_for(&path), e))?;
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure {
                code: EXIT_RESOURCE,
                message: e.to_string(),
            })?,
    }
    Ok(())
}

fn verify(words: Vec<String>, level: LevelArg) -> Result<bool, Failure> {
    let g = parse_group(&words).map_err(Failure::usage)?;
    let level = match level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Oracle => Level::Oracle,
    };
    let checks = verify::run(g, level)?;
    for c in &checks {
        println!("{c}");
    }
    Ok(checks.iter().all(|c| c.status != Status::Fail))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count { order, group } => count(order, group).map(|()| true),
        Command::Enumerate {
            group,
            simple_only,
            format,
            out,
        } => enumerate(cli.cache_dir, group, simple_only, format, out).map(|()| true),
        Command::Verify { group, level } => verify(group, level),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
