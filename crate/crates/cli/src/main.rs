//! Command-line interface: facet-file ingestion, subcommand dispatch, and
//! table/JSON reporting.
//!
//! Exit codes: 0 success, 1 gate failure (not a homology manifold / not
//! orientable), 2 parse or configuration error, 3 internal inconsistency
//! (methods that must agree disagreed — an implementation bug, never data).

mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use moment_angle::linalg::PrimeField;
use moment_angle::tightness::Method;
use moment_angle::VertexSet;

#[derive(Parser)]
#[command(
    name = "moment-angle",
    version,
    about = "Exact homology of moment-angle complexes over GF(p): Hochster tables, tightness certificates, double homology and duality reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// f-vector, dimension, Euler characteristic and the manifold gates
    Info(Common),
    /// Betti numbers of K, or of a full subcomplex K_J with --subcomplex
    Betti {
        #[command(flatten)]
        common: Common,
        /// Comma-separated vertex list, e.g. "1,3"
        #[arg(long)]
        subcomplex: Option<String>,
    },
    /// Bigraded Hochster table of H*(Z_K) and the total-rank bound
    Hochster(Common),
    /// Certify or refute GF(p)-tightness
    Tightness {
        #[command(flatten)]
        common: Common,
        /// Which certification method to run
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Double homology of Z_K and the poset cohomology of H_q(K_-)
    Double(Common),
    /// Rank-duality report for manifold triangulations
    Duality(Common),
}

#[derive(Args)]
struct Common {
    /// Facet file
    file: PathBuf,
    /// Prime field modulus
    #[arg(short = 'p', long = "prime", default_value_t = 2)]
    p: u32,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Cap on the vertex count of any 2^m sweep
    #[arg(long = "m-cap", default_value_t = moment_angle::DEFAULT_M_CAP)]
    m_cap: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = Output::Table)]
    output: Output,
    /// Seed reserved for randomized property modes; all current
    /// subcommands are deterministic and ignore it
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Lemma,
    TheoremA,
    All,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Lemma => Method::LemmaIdentity,
            MethodArg::TheoremA => Method::TheoremA,
            MethodArg::All => Method::All,
        }
    }
}

fn parse_subcomplex(arg: &str, m: u32) -> Result<VertexSet, String> {
    let mut vertices = Vec::new();
    for part in arg.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: u32 = part.parse().map_err(|_| format!("invalid vertex {part:?} in --subcomplex"))?;
        vertices.push(v);
    }
    VertexSet::from_vertices(&vertices, m).map_err(|e| e.to_string())
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Info(c)
        | Command::Hochster(c)
        | Command::Double(c)
        | Command::Duality(c)
        | Command::Betti { common: c, .. }
        | Command::Tightness { common: c, .. } => c,
    };
    let _ = common.seed;
    if let Some(threads) = common.threads {
        if threads == 0 {
            return fail(2, "--threads must be at least 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            return fail(2, format!("cannot configure {threads} worker threads: {e}"));
        }
    }
    let field = match PrimeField::new(common.p) {
        Ok(f) => f,
        Err(e) => return fail(2, e),
    };
    let k = match parse::parse_facets(&common.file) {
        Ok(k) => k,
        Err(e) => return fail(2, e),
    };
    let ctx = report::context(&k, field);

    let result = match &cli.command {
        Command::Info(_) => Ok(report::info_report(&ctx)),
        Command::Betti { subcomplex, .. } => {
            let j = match subcomplex {
                Some(arg) => match parse_subcomplex(arg, k.m()) {
                    Ok(j) => Some(j),
                    Err(e) => return fail(2, e),
                },
                None => None,
            };
            Ok(report::betti_report(&ctx, &k, field, j))
        }
        Command::Hochster(c) => report::hochster_report(&ctx, &k, field, c.m_cap),
        Command::Tightness { common: c, method } => {
            report::tightness_report(&ctx, &k, field, c.m_cap, (*method).into())
        }
        Command::Double(c) => report::double_report(&ctx, &k, field, c.m_cap),
        Command::Duality(c) => report::duality_report(&ctx, &k, field, c.m_cap),
    };

    match result {
        Ok(rep) => {
            match common.output {
                Output::Table => print!("{}", rep.text),
                Output::Json => {
                    let wrapped = report::wrap_json(&ctx, rep.json);
                    println!("{}", serde_json::to_string_pretty(&wrapped).expect("serializable"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(report::exit_code_for(&e) as u8, e),
    }
}
