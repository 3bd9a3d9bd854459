use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser};
use serde_json::json;

use qlp::job::{run, Command, JobError, JobSpec, LMethod};
use qlp::parse::parse_grid;
use qlp::report::SCHEMA_VERSION;
use qlp::table::write_csv;
use qlp::verify::Suite;

/// q-Bernoulli numbers, complex q-L-functions and their p-adic
/// interpolation.
#[derive(Debug, Parser)]
#[command(name = "qlp", version)]
struct Cli {
    /// what to compute
    #[arg(value_enum)]
    command: Command,
    #[command(flatten)]
    params: Params,
    /// sweep one parameter and write CSV, e.g. `n=0..8` or `s=2.5,3`
    #[arg(long)]
    grid: Option<String>,
    /// write to this file instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Params {
    /// odd prime; selects p-adic evaluation where both domains exist
    #[arg(long)]
    p: Option<u64>,
    /// q as num/den (p-adic) or a decimal in (0, 1) (complex)
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    h: i64,
    /// p-adic digits (absolute precision) of the result
    #[arg(long, env = "QLP_PREC", default_value_t = 20)]
    prec: i64,
    /// Dirichlet character as `f=<int> m=<int> map=a1:e1,...`
    #[arg(long)]
    chi: Option<String>,
    /// period F of the p-adic L-function (default lcm(p, f))
    #[arg(long)]
    big_f: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// imaginary part of s for complex jobs
    #[arg(long, allow_hyphen_values = true)]
    s_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, value_enum)]
    method: Option<LMethod>,
    /// term cap for the complex continuation series
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
}

impl Cli {
    fn spec(&self) -> JobSpec {
        let a = &self.params;
        let mut spec = JobSpec::new(self.command);
        spec.p = a.p;
        spec.q = a.q.clone();
        spec.h = a.h;
        spec.prec = a.prec;
        spec.chi = a.chi.clone();
        spec.big_f = a.big_f;
        spec.n = a.n;
        spec.n_max = a.n_max;
        spec.s = a.s.clone();
        spec.s_im = a.s_im;
        spec.t = a.t.clone();
        spec.x = a.x.clone();
        spec.method = a.method;
        spec.m_max = a.m_max;
        spec.suite = a.suite;
        spec
    }
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn fail(e: &JobError) -> ExitCode {
    let body = json!({
        "schema": SCHEMA_VERSION,
        "error": {"kind": e.kind(), "message": e.to_string()},
    });
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("error serializes"));
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = cli.spec();
    if let Some(g) = &cli.grid {
        let grid = match parse_grid(g) {
            Ok(g) => g,
            Err(e) => return fail(&e),
        };
        let out = match sink(&cli.output) {
            Ok(o) => o,
            Err(e) => return fail(&JobError::usage(format!("cannot open output: {e}"))),
        };
        return match write_csv(&spec, &grid, out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => match e.downcast::<JobError>() {
                Ok(je) => fail(&je),
                Err(other) => fail(&JobError::usage(other.to_string())),
            },
        };
    }
    let report = match run(&spec) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let written = sink(&cli.output).and_then(|mut o| writeln!(o, "{}", report.to_json()));
    if let Err(e) = written {
        return fail(&JobError::usage(format!("cannot write output: {e}")));
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
