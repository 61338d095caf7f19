use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use charsum_core::box_domain::BoxDomain;
use charsum_core::characters::{AddCharParam, MultChar};
use charsum_core::charsums::{partial_gauss_sum_with, ps_report, weil_report, RootMultiset};
use charsum_core::energy::{
    box_energy, check_chang_energy_with, check_konyagin_energy_with, energy_oracle, EnergyAlgorithm,
    EnergyError,
};
use charsum_core::field::{find_irreducible, Basis, FieldDescription, FieldSpec};
use charsum_core::par::{configure_threads, threads_from_env, Execution};
use charsum_core::report::{emit, format_real, BoundReport, OutputFormat, Theorem};
use charsum_core::verify::{run_sweep, verify_case, CheckOptions, SweepConfig, VerifyError};

const EXIT_ASSERTION: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_IO: u8 = 1;

/// Character sums, Gauss sums and multiplicative energy over F_{p^n}.
#[derive(Parser, Debug)]
#[command(name = "charsum", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the field description: modulus, generator and trace basis.
    Field(FieldArgs),
    /// Evaluate Σ_{x∈B} χ(x)ψ_a(x) over a box.
    Sum(SumArgs),
    /// Σ_x χ(f(x)) for f given by its roots, checked against (m−1)√q.
    Weil(WeilArgs),
    /// Σ_t χ(g+t)e_p(at), checked against n√p.
    Ps(PsArgs),
    /// Multiplicative energy of a box, optionally checked against a bound.
    Energy(EnergyArgs),
    /// Run bound checks on a single (χ, a, box) case.
    Verify(VerifyArgs),
    /// Run a parameter sweep from a JSON config.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree (default 1).
    #[arg(long)]
    n: Option<usize>,
    /// JSON field description {"p", "n", "modulus", "basis"?}.
    #[arg(long, value_name = "FILE")]
    modulus: Option<PathBuf>,
    /// JSON array of basis rows in power-basis coordinates.
    #[arg(long, value_name = "FILE")]
    basis: Option<PathBuf>,
    /// Skip this many irreducible polynomials in the modulus search.
    #[arg(long, default_value_t = 0)]
    modulus_seed: u64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct SumArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    chi_exp: i64,
    /// Twist coefficients "c0,c1,…" in the power basis.
    #[arg(long, default_value = "0")]
    a: String,
    /// "N1:H1,N2:H2,…"
    #[arg(long = "box")]
    bx: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct WeilArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    chi_exp: i64,
    /// "z1^m1,z2^m2,…" with z_i canonical encodings; f(u) = Π (u + z_i)^{m_i}.
    #[arg(long)]
    roots: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct PsArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    chi_exp: i64,
    /// Coefficients "c0,c1,…" of a generating element.
    #[arg(long)]
    g: String,
    #[arg(long, default_value_t = 0)]
    a: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct EnergyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long = "box")]
    bx: String,
    #[arg(long, default_value = "fast")]
    algorithm: EnergyAlgorithm,
    /// chang | konyagin
    #[arg(long)]
    check: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    chi_exp: i64,
    #[arg(long, default_value = "0")]
    a: String,
    #[arg(long = "box")]
    bx: String,
    /// Comma-separated check tags.
    #[arg(long, default_value = "pv,triangle")]
    check: String,
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long)]
    tau: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Overrides the config's output path; "-" writes to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Overrides the config's format.
    #[arg(long)]
    format: Option<OutputFormat>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(e: impl std::fmt::Display) -> Self {
        Self { code: EXIT_INVALID, message: e.to_string() }
    }

    fn io(e: impl std::fmt::Display) -> Self {
        Self { code: EXIT_IO, message: e.to_string() }
    }
}

type CliResult = Result<(), Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

impl FieldArgs {
    fn build(&self) -> Result<(FieldSpec, Option<Basis>), Failure> {
        let (desc, basis_rows) = match &self.modulus {
            Some(path) => {
                let d = FieldDescription::from_json(&read_file(path)?).map_err(Failure::invalid)?;
                if self.p.is_some_and(|p| p != d.p) || self.n.is_some_and(|n| n != d.n) {
                    return Err(Failure::invalid("--p/--n disagree with the modulus file"));
                }
                let rows = d.basis.clone();
                (d, rows)
            }
            None => {
                let p = self.p.ok_or_else(|| Failure::invalid("--p is required without --modulus"))?;
                let n = self.n.unwrap_or(1);
                if n == 0 {
                    return Err(Failure::invalid("--n must be positive"));
                }
                let modulus = (self.modulus_seed > 0).then(|| find_irreducible(p, n, self.modulus_seed));
                (FieldDescription { p, n, modulus, basis: None }, None)
            }
        };
        let basis_rows = match &self.basis {
            Some(path) => Some(
                serde_json::from_str::<Vec<Vec<u64>>>(&read_file(path)?)
                    .map_err(|e| Failure::invalid(format!("basis file: {e}")))?,
            ),
            None => basis_rows,
        };
        let desc = FieldDescription { basis: basis_rows, ..desc };
        desc.build().map_err(Failure::invalid)
    }
}

fn parse_coeffs(field: &FieldSpec, text: &str) -> Result<charsum_core::FieldElement, Failure> {
    let mut c = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        c.push(part.parse::<u64>().map_err(|_| Failure::invalid(format!("bad coefficient '{part}'")))?);
    }
    if c.len() > field.n() {
        return Err(Failure::invalid(format!("{} coefficients given for degree {}", c.len(), field.n())));
    }
    c.resize(field.n(), 0);
    field.element(&c).map_err(Failure::invalid)
}

fn write_rows(rows: &[BoundReport], format: OutputFormat, path: Option<&Path>) -> CliResult {
    match path {
        Some(p) if p != Path::new("-") => {
            let file = fs::File::create(p).map_err(|e| Failure::io(format!("{}: {e}", p.display())))?;
            emit(rows, format, io::BufWriter::new(file)).map_err(Failure::io)
        }
        _ => emit(rows, format, io::stdout().lock()).map_err(Failure::io),
    }
}

/// Emits rows, then exits 2 if any asserted bound failed.
fn finish(rows: &[BoundReport], format: OutputFormat) -> CliResult {
    write_rows(rows, format, None)?;
    match rows.iter().find(|r| r.failed()) {
        Some(r) => Err(Failure {
            code: EXIT_ASSERTION,
            message: format!("{} bound failed: lhs {} > rhs {}", r.theorem, format_real(r.lhs), format_real(r.rhs)),
        }),
        None => Ok(()),
    }
}

fn print_json(value: serde_json::Value) -> CliResult {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json serializes")).map_err(Failure::io)
}

fn cmd_field(args: &FieldArgs) -> CliResult {
    let (field, basis) = args.build()?;
    let mut desc = serde_json::to_value(FieldDescription::describe(&field, basis.as_ref())).expect("serializes");
    let g = field.generator();
    desc["q"] = json!(field.q());
    desc["generator"] = json!(g.coeffs());
    desc["generator_encoding"] = json!(field.encode(g));
    desc["trace_basis"] = json!(field.trace_basis());
    desc["dlog_table"] = json!(field.has_dlog_table());
    print_json(desc)
}

fn cmd_sum(args: &SumArgs) -> CliResult {
    let (field, basis) = args.field.build()?;
    let chi = MultChar::new(&field, args.chi_exp);
    let a = AddCharParam::new(&field, parse_coeffs(&field, &args.a)?).map_err(Failure::invalid)?;
    let bx = BoxDomain::parse(&field, &args.bx, basis).map_err(Failure::invalid)?;
    let s = partial_gauss_sum_with(Execution::Parallel, &field, &chi, &a, &bx);
    let mut out = io::stdout().lock();
    let res = match args.out.format {
        OutputFormat::Csv => writeln!(
            out,
            "re,im,magnitude,terms\n{},{},{},{}",
            format_real(s.value.re),
            format_real(s.value.im),
            format_real(s.magnitude),
            s.term_count
        ),
        OutputFormat::Json => writeln!(
            out,
            "{}",
            json!({"re": s.value.re, "im": s.value.im, "magnitude": s.magnitude, "terms": s.term_count})
        ),
    };
    res.map_err(Failure::io)
}

fn cmd_weil(args: &WeilArgs) -> CliResult {
    let (field, _) = args.field.build()?;
    let chi = MultChar::new(&field, args.chi_exp);
    let f = RootMultiset::parse(&field, &args.roots).map_err(Failure::invalid)?;
    finish(&[weil_report(&field, &chi, &f)], args.out.format)
}

fn cmd_ps(args: &PsArgs) -> CliResult {
    let (field, _) = args.field.build()?;
    let chi = MultChar::new(&field, args.chi_exp);
    let g = parse_coeffs(&field, &args.g)?;
    finish(&[ps_report(&field, &chi, &g, args.a)], args.out.format)
}

fn cmd_energy(args: &EnergyArgs) -> CliResult {
    let (field, basis) = args.field.build()?;
    let bx = BoxDomain::parse(&field, &args.bx, basis).map_err(Failure::invalid)?;
    let exec = Execution::Parallel;
    match args.check.as_deref() {
        None => {
            let e = match args.algorithm {
                EnergyAlgorithm::Fast => box_energy(exec, &field, &bx),
                EnergyAlgorithm::Oracle => energy_oracle(&field, &bx.enumerate(&field).collect::<Vec<_>>()),
            }
            .map_err(Failure::invalid)?;
            print_json(json!({
                "box": bx.to_string(),
                "set_size": e.set_size,
                "energy": e.count.to_string(),
                "algorithm": e.algorithm.to_string(),
            }))
        }
        Some(check) => {
            let res = match check {
                "chang" => check_chang_energy_with(exec, &field, &bx),
                "konyagin" => check_konyagin_energy_with(exec, &field, &bx),
                other => return Err(Failure::invalid(format!("unknown energy check '{other}'"))),
            };
            match res {
                Ok(row) => finish(&[row], args.out.format),
                Err(e @ EnergyError::ConditionNotMet(_)) => {
                    let row = charsum_core::verify::energy_rows(
                        exec,
                        &field,
                        &bx,
                        &[if check == "chang" { Theorem::ChangEnergy } else { Theorem::KonyaginEnergy }],
                    );
                    eprintln!("note: {e}; row is not applicable");
                    finish(&row, args.out.format)
                }
                Err(e) => Err(Failure::invalid(e)),
            }
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> CliResult {
    let (field, basis) = args.field.build()?;
    let chi = MultChar::new(&field, args.chi_exp);
    let a = AddCharParam::new(&field, parse_coeffs(&field, &args.a)?).map_err(Failure::invalid)?;
    let bx = BoxDomain::parse(&field, &args.bx, basis).map_err(Failure::invalid)?;
    let mut checks = Vec::new();
    for tag in args.check.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        checks.push(tag.parse::<Theorem>().map_err(Failure::invalid)?);
    }
    let opts = CheckOptions { r: args.r, eps: args.eps, delta: args.delta, tau: args.tau };
    let rows = verify_case(Execution::Parallel, &field, &chi, &a, &bx, &checks, &opts).map_err(Failure::invalid)?;
    finish(&rows, args.out.format)
}

fn cmd_sweep(args: &SweepArgs) -> CliResult {
    let cfg = SweepConfig::from_json(&read_file(&args.config)?).map_err(Failure::invalid)?;
    let format = match args.format {
        Some(f) => f,
        None => cfg.output_format().map_err(Failure::invalid)?,
    };
    let rows = match run_sweep(&cfg) {
        Ok(rows) => rows,
        Err(VerifyError::AssertionFailed { row, repro }) => {
            let mut err = io::stderr().lock();
            let _ = emit(&[*row], OutputFormat::Csv, &mut err);
            return Err(Failure {
                code: EXIT_ASSERTION,
                message: format!("assertion failed; reproduce with:\n  {repro}"),
            });
        }
        Err(e) => return Err(Failure::invalid(e)),
    };
    write_rows(&rows, format, args.output.as_deref().or(cfg.output.as_deref()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = threads_from_env() {
        if let Err(e) = configure_threads(threads) {
            eprintln!("warning: could not cap worker threads: {e}");
        }
    }
    let result = match &cli.command {
        Command::Field(a) => cmd_field(a),
        Command::Sum(a) => cmd_sum(a),
        Command::Weil(a) => cmd_weil(a),
        Command::Ps(a) => cmd_ps(a),
        Command::Energy(a) => cmd_energy(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
