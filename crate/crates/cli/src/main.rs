//! `ekc`: Euler-Kronecker constants of imaginary quadratic fields and their
//! narrow ray class fields, with a verification battery for the explicit
//! counting bounds the estimates rest on.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use ekc_cli::config::{
    parse_d_list, parse_element, parse_number, parse_u64_list, ExperimentConfig, FileConfig, Format,
};
use ekc_cli::{commands, output};

#[derive(Parser)]
#[command(
    name = "ekc",
    version,
    about = "Euler-Kronecker constants of imaginary quadratic fields"
)]
struct Cli {
    /// key=value config file; flags override file values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// comma-separated squarefree d values (fundamental discriminants such
    /// as -20 are accepted and normalized)
    #[arg(long)]
    d: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Field constants: discriminant, class number, unit count, residue
    FieldInfo {
        #[command(flatten)]
        common: Common,
    },
    /// Integral ideals of norm up to x, in HNF
    Ideals {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: Option<String>,
    },
    /// Ray class group structure for a modulus selected by norm
    RayClass {
        #[command(flatten)]
        common: Common,
        #[arg(long = "q-norm")]
        q_norm: Option<u64>,
    },
    /// Euler-Kronecker estimate for the field or one ray class field
    Gamma {
        #[command(flatten)]
        common: Common,
        #[arg(long = "q-norm")]
        q_norm: Option<u64>,
        #[arg(long)]
        x: Option<String>,
    },
    /// Averaged |gamma_{K(q)}| over principal prime moduli in (Q/2, Q]
    Average {
        #[command(flatten)]
        common: Common,
        /// comma-separated window tops
        #[arg(long = "Q")]
        q: Option<String>,
        #[arg(long)]
        x: Option<String>,
    },
    /// Run the verification battery of counting bounds and inequalities
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: Option<String>,
    },
    /// Selberg sieve demonstration: weights, dual identity, dominance
    SieveDemo {
        #[command(flatten)]
        common: Common,
        /// shift t as "x" or "x,y" meaning x + y*omega
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        z: Option<String>,
        /// norm range for the counted pairs
        #[arg(long)]
        x: Option<String>,
    },
}

fn resolve<'a>(flag: &'a Option<String>, file: &'a FileConfig, key: &str) -> Option<&'a str> {
    flag.as_deref().or_else(|| file.get(key))
}

fn d_list(flag: &Option<String>, file: &FileConfig) -> Result<Vec<i64>> {
    let s = resolve(flag, file, "d").context("--d required (or d= in config)")?;
    parse_d_list(s)
}

fn run() -> Result<(String, i32)> {
    let cli = Cli::parse();
    let file = FileConfig::load(cli.config.as_deref())?;

    let threads = cli
        .threads
        .or_else(|| file.get("threads").and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    let format = cli
        .format
        .or_else(|| match file.get("format") {
            Some("json") => Some(Format::Json),
            Some("csv") => Some(Format::Csv),
            _ => None,
        })
        .unwrap_or(Format::Csv);
    let out = cli
        .out
        .clone()
        .or_else(|| file.get("out").map(PathBuf::from));

    let (body, code) = match &cli.command {
        Command::FieldInfo { common } => commands::field_info(&d_list(&common.d, &file)?, format)?,
        Command::Ideals { common, x } => {
            let x = resolve(x, &file, "x")
                .map(parse_number)
                .transpose()?
                .unwrap_or(100.0);
            commands::ideals(&d_list(&common.d, &file)?, x, format)?
        }
        Command::RayClass { common, q_norm } => {
            let q = q_norm
                .or_else(|| file.get("q-norm").and_then(|s| s.parse().ok()))
                .unwrap_or(1);
            commands::ray_class(&d_list(&common.d, &file)?, q, format)?
        }
        Command::Gamma { common, q_norm, x } => {
            let q = q_norm
                .or_else(|| file.get("q-norm").and_then(|s| s.parse().ok()))
                .unwrap_or(1);
            let x = resolve(x, &file, "x")
                .map(parse_number)
                .transpose()?
                .map(|v| v as u64);
            commands::gamma(&d_list(&common.d, &file)?, q, x, format)?
        }
        Command::Average { common, q, x } => {
            let q_grid =
                parse_u64_list(resolve(q, &file, "Q").context("--Q required (or Q= in config)")?)?;
            let user_x = resolve(x, &file, "x")
                .map(parse_number)
                .transpose()?
                .map(|v| v as u64);
            let cfg = ExperimentConfig {
                d_values: d_list(&common.d, &file)?,
                q_grid,
                user_x,
                threads,
                out: out.clone(),
                format,
            };
            commands::average(&cfg)?
        }
        Command::Verify { common, x } => {
            let x = resolve(x, &file, "x")
                .map(parse_number)
                .transpose()?
                .unwrap_or(100_000.0) as u64;
            commands::verify(&d_list(&common.d, &file)?, x, format)?
        }
        Command::SieveDemo { common, t, z, x } => {
            let t = parse_element(resolve(t, &file, "t").unwrap_or("3"))?;
            let z = resolve(z, &file, "z")
                .map(parse_number)
                .transpose()?
                .unwrap_or(13.0);
            let u = resolve(x, &file, "x")
                .map(parse_number)
                .transpose()?
                .unwrap_or(2000.0) as u64;
            commands::sieve_demo(&d_list(&common.d, &file)?, t, z, u, format)?
        }
    };

    output::write_output(out.as_deref(), &body)?;
    Ok((String::new(), code))
}

fn main() -> ExitCode {
    match run() {
        Ok((_, 0)) => ExitCode::SUCCESS,
        Ok((_, code)) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
