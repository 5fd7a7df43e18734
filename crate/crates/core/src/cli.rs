//! Batch command-line front end. Every command prints one JSON object
//! (tagged with `schema_version`) or one CSV table with a header row.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotics::{inverse_entry_asymptotic, kernel_g, trace_asymptotic};
use crate::bounds::{c_alpha_bounds, integer_reference_bounds, BoundsReport};
use crate::error::Error;
use crate::spectral::{
    c_alpha_kernel_with, c_alpha_toeplitz_with, CAlphaEstimate, DEFAULT_RESOLUTIONS, DEFAULT_SIZES,
};
use crate::symbols::{beta_coeffs, phi_coeffs_dd, SymbolSpec, TrigPoly};
use crate::toeplitz::{gs_entry, inverse_trace, GSInverse};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_EXCLUDED: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

/// Seventeen significant digits, `null` for non-finite values.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() { format!("{v:.16e}") } else { "null".into() }
}

/// Writes every float with seventeen significant digits, which is enough
/// for `parse(emit(x)) == x`.
struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }
}

pub fn to_json_string<T: Serialize>(v: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits);
    v.serialize(&mut ser).expect("serializable");
    String::from_utf8(buf).expect("utf-8")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "fhtoeplitz", version, about = "Toeplitz matrices with a fractional zero in the symbol")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier coefficients φ̂(n) and power-series coefficients β_u.
    Coeffs {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        upto: usize,
    },
    /// One entry of T_N⁻¹, exact and asymptotic.
    Entry {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// c_α by the kernel route and by the Toeplitz route.
    CAlpha {
        #[command(flatten)]
        common: Common,
        /// Matrix sizes for the Toeplitz route.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES)]
        ns: Vec<usize>,
        /// Nyström resolutions for the kernel route.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_RESOLUTIONS)]
        resolutions: Vec<usize>,
        /// Relative stopping tolerance of the eigenvalue iterations.
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
    },
    /// Closed-form interval for c_α.
    Bounds {
        #[command(flatten)]
        common: Common,
        /// For integer α, print the reference interval instead of failing.
        #[arg(long)]
        integer_reference: bool,
    },
    /// Tr T_N⁻¹, exact and asymptotic.
    Trace {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N")]
        n: usize,
    },
    /// G_α on an m×m grid of interior points (i+1)/(m+1).
    KernelGrid {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 16)]
        m: usize,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Two-sided coefficients ĉ(-d),…,ĉ(d) of f₁, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub f1: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl Common {
    fn spec(&self) -> Result<SymbolSpec, CliError> {
        let f1 = match &self.f1 {
            None => TrigPoly::one(),
            Some(c) => TrigPoly::new(c.iter().map(|&v| Complex64::new(v, 0.0)).collect())?,
        };
        Ok(SymbolSpec::new(self.alpha, f1)?)
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Coeffs { common, .. }
            | Command::Entry { common, .. }
            | Command::CAlpha { common, .. }
            | Command::Bounds { common, .. }
            | Command::Trace { common, .. }
            | Command::KernelGrid { common, .. } => common,
        }
    }
}

/// A failure with the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn validation(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_VALIDATION, message: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. } | Error::Invalid(_) => EXIT_VALIDATION,
            Error::Excluded(_) => EXIT_EXCLUDED,
            Error::Breakdown { .. }
            | Error::Factorization(_)
            | Error::NonConvergence { .. }
            | Error::SingularLift(_) => EXIT_NUMERICAL,
        };
        CliError { code, message: e.to_string() }
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_else(|| "null".into())
}

/// Runs one command and returns its output text.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    let common = cfg.command.common();
    let format = common.format;
    match &cfg.command {
        Command::Coeffs { upto, .. } => {
            let spec = common.spec()?;
            let phi: Vec<f64> = phi_coeffs_dd(&spec, *upto).into_iter().map(f64::from).collect();
            let beta = beta_coeffs(&spec, *upto)?.values;
            Ok(match format {
                Format::Json => to_json_string(&envelope(
                    "coeffs",
                    json!({ "alpha": spec.alpha, "phi_hat": phi, "beta": beta }),
                )),
                Format::Csv => {
                    let mut s = String::from("n,phi_hat,beta\n");
                    for (i, (p, b)) in phi.iter().zip(&beta).enumerate() {
                        let _ = writeln!(s, "{i},{},{}", fmt_f64(*p), fmt_f64(*b));
                    }
                    s
                }
            })
        }
        Command::Entry { n, k, l, .. } => {
            let spec = common.spec()?;
            if *k > *n || *l > *n {
                return Err(CliError::validation(format!("indices ({k}, {l}) outside 0..={n}")));
            }
            let exact = gs_entry(&GSInverse::new(&spec, *n)?, *k, *l)?;
            let (x, y) = (*k as f64 / *n as f64, *l as f64 / *n as f64);
            let asymptotic = inverse_entry_asymptotic(&spec, x, y, *n).ok().map(|a| a.value);
            let rel_err = asymptotic.map(|a| ((exact - a) / exact).abs());
            Ok(match format {
                Format::Json => to_json_string(&envelope(
                    "entry",
                    json!({ "alpha": spec.alpha, "N": n, "k": k, "l": l,
                            "exact": exact, "asymptotic": asymptotic, "rel_err": rel_err }),
                )),
                Format::Csv => format!(
                    "alpha,N,k,l,exact,asymptotic,rel_err\n{},{n},{k},{l},{},{},{}\n",
                    fmt_f64(spec.alpha),
                    fmt_f64(exact),
                    opt(asymptotic),
                    opt(rel_err)
                ),
            })
        }
        Command::CAlpha { ns, resolutions, tol, .. } => {
            let spec = common.spec()?;
            if !(*tol > 0.0) {
                return Err(CliError::validation("tol must be positive"));
            }
            let kernel = c_alpha_kernel_with(spec.alpha, resolutions, *tol)?;
            let toeplitz = c_alpha_toeplitz_with(&spec, ns, *tol)?;
            let agreement = ((kernel.extrapolated - toeplitz.extrapolated) / kernel.extrapolated).abs();
            Ok(match format {
                Format::Json => to_json_string(&envelope(
                    "c_alpha",
                    json!({ "kernel": kernel, "toeplitz": toeplitz, "agreement": agreement }),
                )),
                Format::Csv => {
                    let mut s = String::from("method,resolution,value\n");
                    for (name, est) in [("kernel", &kernel), ("toeplitz", &toeplitz)] {
                        write_estimate_rows(&mut s, name, est);
                    }
                    s
                }
            })
        }
        Command::Bounds { integer_reference, .. } => {
            let alpha = common.alpha;
            let report = if *integer_reference {
                if !(alpha >= 1.0 && alpha.fract() == 0.0) {
                    return Err(CliError::validation("--integer-reference needs an integer alpha >= 1"));
                }
                integer_reference_bounds(alpha as u32)?
            } else {
                c_alpha_bounds(alpha)?
            };
            Ok(match format {
                Format::Json => to_json_string(&envelope("bounds", serde_json::to_value(report).unwrap())),
                Format::Csv => bounds_csv(&report),
            })
        }
        Command::Trace { n, .. } => {
            let spec = common.spec()?;
            if *n < 1 {
                return Err(CliError::validation("N must be at least 1"));
            }
            let exact = inverse_trace(&spec, *n)?;
            let asymptotic = trace_asymptotic(&spec, *n).ok().map(|a| a.value);
            let rel_err = asymptotic.map(|a| ((exact - a) / exact).abs());
            Ok(match format {
                Format::Json => to_json_string(&envelope(
                    "trace",
                    json!({ "alpha": spec.alpha, "N": n, "exact": exact,
                            "asymptotic": asymptotic, "rel_err": rel_err }),
                )),
                Format::Csv => format!(
                    "alpha,N,exact,asymptotic,rel_err\n{},{n},{},{},{}\n",
                    fmt_f64(spec.alpha),
                    fmt_f64(exact),
                    opt(asymptotic),
                    opt(rel_err)
                ),
            })
        }
        Command::KernelGrid { m, .. } => {
            let alpha = common.alpha;
            if *m < 1 {
                return Err(CliError::validation("m must be at least 1"));
            }
            let xs: Vec<f64> = (1..=*m).map(|i| i as f64 / (*m + 1) as f64).collect();
            let mut grid = vec![vec![f64::NAN; *m]; *m];
            for i in 0..*m {
                for j in i..*m {
                    // on the diagonal G_α is infinite for α ≤ 1/2
                    let g = match kernel_g(alpha, xs[i], xs[j]) {
                        Ok(g) => g,
                        Err(_) if i == j && alpha > 0.0 => f64::NAN,
                        Err(e) => return Err(e.into()),
                    };
                    grid[i][j] = g;
                    grid[j][i] = g;
                }
            }
            Ok(match format {
                Format::Json => to_json_string(&envelope(
                    "kernel_grid",
                    json!({ "alpha": alpha, "x": xs, "g": grid }),
                )),
                Format::Csv => {
                    let mut s = String::from("x,y,g\n");
                    for (i, row) in grid.iter().enumerate() {
                        for (j, g) in row.iter().enumerate() {
                            let _ = writeln!(s, "{},{},{}", fmt_f64(xs[i]), fmt_f64(xs[j]), fmt_f64(*g));
                        }
                    }
                    s
                }
            })
        }
    }
}

fn write_estimate_rows(s: &mut String, name: &str, est: &CAlphaEstimate) {
    for (r, v) in &est.raw {
        let _ = writeln!(s, "{name},{r},{}", fmt_f64(*v));
    }
    let _ = writeln!(s, "{name},extrapolated,{}", fmt_f64(est.extrapolated));
}

fn bounds_csv(r: &BoundsReport) -> String {
    let regime = serde_json::to_value(r.regime).unwrap();
    format!(
        "alpha,lower,upper,regime,log_space\n{},{},{},{},{}\n",
        fmt_f64(r.alpha),
        fmt_f64(r.lower),
        fmt_f64(r.upper),
        regime.as_str().unwrap_or_default(),
        r.log_space
    )
}

/// Parses `args` (program name first), runs the command, writes the output
/// to stdout or `--output`, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let text = match execute(&cfg) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    match &cfg.command.common().output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text.as_bytes()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_VALIDATION;
            }
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
    EXIT_OK
}
