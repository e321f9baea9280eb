//! Argument parsing and dispatch for the `pairquat` binary.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pairquat::belt::write_csv;
use pairquat::{Quaternion, SlerpMethod, VectorPair};

use crate::api::{self, ApiError, ApiResult};
use crate::{bench, check, json, server};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pairquat", version, about = "Quaternions as pairs of vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    S2,
    S3,
}

impl From<Method> for SlerpMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::S2 => SlerpMethod::S2,
            Method::S3 => SlerpMethod::S3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hamilton product of two quaternions given as JSON.
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Merge two vector pairs into a pair representing their product.
    Merge {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Spherical linear interpolation between two unit quaternions.
    Slerp {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "samples")]
        t: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum, default_value = "s3")]
        method: Method,
    },
    /// Rotation taking unit vector uI to unit vector uF.
    Align {
        #[arg(long = "ui")]
        u_i: String,
        #[arg(long = "uf")]
        u_f: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Sample the belt-trick homotopy.
    Belt {
        #[arg(long, default_value_t = api::DEFAULT_BELT_NS)]
        ns: usize,
        #[arg(long, default_value_t = api::DEFAULT_BELT_NT)]
        nt: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run the invariant suite.
    Check {
        #[arg(long, default_value_t = 1000)]
        iters: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Time the rotation kernels.
    Bench {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        iters: usize,
    },
    /// Start the HTTP JSON service.
    Serve {
        #[arg(long, env = "PAIRQUAT_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
    },
}

fn arg<T: for<'de> serde::Deserialize<'de>>(name: &str, text: &str) -> ApiResult<T> {
    api::parse(text).map_err(|e| ApiError::new(&e.error, format!("--{name}: {}", e.message)))
}

fn print<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    writeln!(out, "{}", json::to_string(value))
}

/// Runs the CLI with `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, A>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Api(e)) => {
            let _ = writeln!(err, "{}", e.to_json());
            EXIT_INVALID
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "{e}");
            EXIT_INVALID
        }
    }
}

enum Failure {
    Api(ApiError),
    Io(std::io::Error),
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        Failure::Api(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Mul { a, b } => {
            let req = api::MulRequest { a: arg::<Quaternion>("a", &a)?, b: arg("b", &b)? };
            print(out, &api::mul(&req)?)?;
        }
        Command::Merge { left, right } => {
            let req = api::MergeRequest { left: arg::<VectorPair>("left", &left)?, right: arg("right", &right)? };
            print(out, &api::merge_pairs(&req)?)?;
        }
        Command::Slerp { a, b, t, samples, method } => {
            let req = api::SlerpRequest { a: arg("a", &a)?, b: arg("b", &b)?, t, samples, method: method.into() };
            let resp = api::slerp(&req)?;
            if req.extrapolates() {
                writeln!(err, "warning: t outside [0, 1] extrapolates along the great circle")?;
            }
            print(out, &resp)?;
        }
        Command::Align { u_i, u_f, dim } => {
            let req = api::AlignRequest { u_i: arg::<Vec<f64>>("ui", &u_i)?, u_f: arg("uf", &u_f)? };
            if let Some(n) = dim {
                for v in [&req.u_i, &req.u_f] {
                    if v.len() != n {
                        return Err(ApiError::from(pairquat::Error::DimensionMismatch { left: n, right: v.len() }).into());
                    }
                }
            }
            print(out, &api::align(&req)?)?;
        }
        Command::Belt { ns, nt, format } => {
            let frames = api::belt(ns, nt)?;
            match format {
                Format::Csv => write_csv(&frames, &mut *out)?,
                Format::Json => print(out, &frames)?,
            }
        }
        Command::Check { iters, seed } => {
            if iters == 0 {
                return Err(ApiError::new("InvalidParameter", "--iters must be at least 1").into());
            }
            let results = check::run_checks(iters, seed);
            for r in &results {
                writeln!(out, "{}", r.line())?;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} checks, {} failed (iters={iters}, seed={seed})", results.len(), failed)?;
            return Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
        Command::Bench { seed, iters } => {
            if iters == 0 {
                return Err(ApiError::new("InvalidParameter", "--iters must be at least 1").into());
            }
            for report in bench::bench_kernels(seed, iters) {
                print(out, &report)?;
            }
        }
        Command::Serve { port, host } => {
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new()?;
            writeln!(err, "listening on http://{addr}")?;
            runtime.block_on(server::serve(addr))?;
        }
    }
    Ok(EXIT_OK)
}
