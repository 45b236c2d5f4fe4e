//! Command-line front end: every check as a reproducible batch command with
//! JSON/CSV/table reports on stdout.
//!
//! Exit codes: 0 = pass/success, 1 = mathematical fail (a residual above its
//! tolerance, an incomplete certificate, a constructive non-existence),
//! 2 = usage or validation error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use hardyrep::boundary::{
    norm_preservation_residual, reproduce_residual_fourier, reproduce_residual_quadrature,
    transpose_identity_residual,
};
use hardyrep::builder::{build_ac_representing_measure, certify};
use hardyrep::error::Error as LibError;
use hardyrep::gamma::{Coverage, GammaSet};
use hardyrep::kernel::{
    dense_from_csv, dense_from_json, gram_at_points, psd_check, CoeffMatrix, Diagonal, Kernel,
};
use hardyrep::measure::MeasureSpec;
use hardyrep::moment::{
    build_moment_matrix, cmc_residual, fourier_vanishing_check, projection_residual,
};
use hardyrep::report::NormTag;
use hardyrep::sampling;
use hardyrep::util::{format_complex, parse_complex};

#[derive(Parser)]
#[command(name = "hardyrep", version)]
#[command(
    about = "Certified finite-truncation checks for boundary representations of positive kernels"
)]
struct Cli {
    /// Report format on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Digit-set spectra and difference sets
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Fourier oracles for measures
    #[command(subcommand)]
    Measure(MeasureCmd),
    /// Kernel evaluation and Gram matrices
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Residual checks of the matrix criterion
    #[command(subcommand)]
    Check(CheckCmd),
    /// Constructing and certifying representing measures
    #[command(subcommand)]
    Build(BuildCmd),
}

#[derive(Subcommand)]
enum GammaCmd {
    /// Generate {Σ l_j B^j : l_j ∈ digits, j ≤ max-level}
    Gen {
        #[arg(long)]
        base: u64,
        /// Comma-separated digit list, e.g. 0,1
        #[arg(long, value_delimiter = ',')]
        digits: Vec<u64>,
        #[arg(long)]
        max_level: u32,
    },
    /// Difference set within [-bound, bound]
    Diff {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        bound: i64,
    },
    /// First integer of [-bound, bound] missing from the difference set
    Coverage {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        bound: i64,
    },
    /// Intersection of a set with another set's differences on [0, bound]
    Disjoint {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        bound: i64,
    },
}

#[derive(Subcommand)]
enum MeasureCmd {
    /// One Fourier coefficient with its certified error bound
    Fourier {
        #[arg(long)]
        measure: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Check every structural invariant of a measure spec
    Validate {
        #[arg(long)]
        measure: String,
    },
}

#[derive(Subcommand)]
enum KernelCmd {
    /// Evaluate K(w, z) with a certified tail bound
    Eval {
        /// szego | k3 | k4 | bergman | gamma:<file> | diag:<file> | dense:<file>
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Gram matrix at disc points plus a PSD verdict
    Gram {
        #[arg(long)]
        kernel: String,
        /// Comma-separated complex points, e.g. 0.1+0.2i,0.3-0.1i
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        /// Draw this many seeded points instead of --points
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.8)]
        radius: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// PSD threshold relative to the trace
        #[arg(long, default_value_t = 1e-10)]
        psd_tol: f64,
    },
}

#[derive(Args)]
struct NormArgs {
    /// Matrix norm for residuals
    #[arg(long, default_value = "max")]
    norm: NormTag,
    /// Pass threshold; defaults to the measure family's tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Residual of C = CMC on a finite window
    Cmc {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        measure: String,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        norm: NormArgs,
    },
    /// Residual of C = C²
    Projection {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        norm: NormArgs,
    },
    /// max |µ̂(d)| over the difference set of a spectrum
    Vanishing {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        bound: i64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Residual of the boundary reproduction identity at (w, z) points
    Reproduce {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        measure: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        z: Option<String>,
        /// Seeded sample count used when --w/--z are absent
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.8)]
        radius: f64,
        /// auto | quadrature | fourier
        #[arg(long, default_value = "auto")]
        route: String,
        /// Quadrature node count (quadrature route)
        #[arg(long)]
        quad: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Norm-preservation residual |‖Σ a e_γ‖²_µ − Σ|a|²|
    Norms {
        #[arg(long)]
        measure: String,
        /// Comma-separated frequency list, e.g. 1,3
        #[arg(long, value_delimiter = ',')]
        freqs: Vec<u64>,
        /// Comma-separated complex coefficients matching --freqs
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String>,
        /// Take frequencies from a spectrum file restricted to --window
        #[arg(long)]
        gamma: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        window: u64,
        /// Seeded coefficient vectors to draw when --coeffs is absent
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Residual of the transpose criterion Cᵀ = CᵀMCᵀ for projections
    Transpose {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        measure: String,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        norm: NormArgs,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Build an absolutely continuous representing measure for a spectrum
    Measure {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        freq_bound: u64,
        #[arg(long)]
        mass: f64,
        #[arg(long)]
        decay: f64,
    },
    /// Run the combined certificate for a measure against a spectrum
    Certify {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        window: usize,
    },
}

/// CLI failure with its exit class.
enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// Mathematical negative outcome: exit 1.
    Math(String),
}

impl From<LibError> for Failure {
    fn from(e: LibError) -> Self {
        match e {
            LibError::NoAdmissibleFrequency { .. } => Failure::Math(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Exit class of a command that produced a report.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    /// Exit 0.
    Pass,
    /// Mathematical fail: exit 1.
    MathFail,
    /// Validation fail: exit 2.
    ValidationFail,
}

impl Verdict {
    fn passing(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::MathFail
        }
    }

    fn code(self) -> ExitCode {
        match self {
            Verdict::Pass => ExitCode::SUCCESS,
            Verdict::MathFail => ExitCode::from(1),
            Verdict::ValidationFail => ExitCode::from(2),
        }
    }
}

type CmdResult = Result<(Value, Verdict), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli.command);
    match outcome {
        Ok((report, verdict)) => {
            let rendered = render(&report, cli.format);
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{rendered}");
            }
            verdict.code()
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("fail: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Gamma(g) => run_gamma(g),
        Command::Measure(m) => run_measure(m),
        Command::Kernel(k) => run_kernel(k),
        Command::Check(c) => run_check(c),
        Command::Build(b) => run_build(b),
    }
}

fn run_gamma(cmd: &GammaCmd) -> CmdResult {
    match cmd {
        GammaCmd::Gen {
            base,
            digits,
            max_level,
        } => {
            let g = GammaSet::generate(*base, digits, *max_level)?;
            Ok((to_value(&g), Verdict::Pass))
        }
        GammaCmd::Diff { gamma, bound } => {
            let g = load_gamma(gamma)?;
            let d = g.difference_set(*bound);
            Ok((
                json!({ "bound": bound, "count": d.len(), "differences": d }),
                Verdict::Pass,
            ))
        }
        GammaCmd::Coverage { gamma, bound } => {
            let g = load_gamma(gamma)?;
            let report = match g.check_coverage(*bound) {
                Coverage::Complete => json!({ "bound": bound, "complete": true }),
                Coverage::FirstMissing(n) => {
                    json!({ "bound": bound, "complete": false, "firstMissing": n })
                }
            };
            Ok((report, Verdict::Pass))
        }
        GammaCmd::Disjoint { a, gamma, bound } => {
            let a = load_gamma(a)?;
            let g = load_gamma(gamma)?;
            let i = a.intersect_difference(&g, *bound);
            Ok((json!({ "bound": bound, "intersection": i }), Verdict::Pass))
        }
    }
}

fn run_measure(cmd: &MeasureCmd) -> CmdResult {
    match cmd {
        MeasureCmd::Fourier { measure, k } => {
            let mu = load_measure(measure)?;
            let f = mu.fourier_coefficient(*k)?;
            Ok((
                json!({
                    "k": k,
                    "value": complex_value(f.value),
                    "error": f.error,
                }),
                Verdict::Pass,
            ))
        }
        MeasureCmd::Validate { measure } => {
            let mu = load_measure_unchecked(measure)?;
            let violations = mu.validate();
            let ok = violations.is_empty();
            let report = json!({
                "ok": ok,
                "violations": violations,
                "momentOperatorBounded": mu.moment_operator_bounded(),
                "totalMass": mu.total_mass(),
            });
            let verdict = if ok {
                Verdict::Pass
            } else {
                Verdict::ValidationFail
            };
            Ok((report, verdict))
        }
    }
}

fn run_kernel(cmd: &KernelCmd) -> CmdResult {
    match cmd {
        KernelCmd::Eval { kernel, w, z, tol } => {
            let k = load_kernel(kernel)?;
            let w = parse_complex(w)?;
            let z = parse_complex(z)?;
            let kv = k.eval(w, z, *tol)?;
            Ok((
                json!({
                    "kernel": kernel,
                    "w": format_complex(w),
                    "z": format_complex(z),
                    "value": complex_value(kv.value),
                    "tailBound": kv.tail_bound,
                }),
                Verdict::Pass,
            ))
        }
        KernelCmd::Gram {
            kernel,
            points,
            count,
            seed,
            radius,
            tol,
            psd_tol,
        } => {
            let k = load_kernel(kernel)?;
            let (pts, seeded) = if let Some(count) = count {
                (sampling::disc_points(*seed, *count, *radius), true)
            } else if !points.is_empty() {
                let parsed: Result<Vec<Complex64>, _> =
                    points.iter().map(|s| parse_complex(s)).collect();
                (parsed?, false)
            } else {
                return Err(Failure::Usage(
                    "kernel gram needs --points or --count".into(),
                ));
            };
            let (g, max_tail) = gram_at_points(&k, &pts, *tol)?;
            let psd = psd_check(&g, *psd_tol)?;
            let entries: Vec<Vec<String>> = (0..g.nrows())
                .map(|i| (0..g.ncols()).map(|j| format_complex(g[(i, j)])).collect())
                .collect();
            let mut report = json!({
                "kernel": kernel,
                "size": pts.len(),
                "points": pts.iter().map(|p| format_complex(*p)).collect::<Vec<_>>(),
                "entries": entries,
                "maxTailBound": max_tail,
                "minEigenvalue": psd.min_eigenvalue,
                "pass": psd.pass,
            });
            if seeded {
                report["seed"] = json!(seed);
            }
            Ok((report, Verdict::passing(psd.pass)))
        }
    }
}

fn run_check(cmd: &CheckCmd) -> CmdResult {
    match cmd {
        CheckCmd::Cmc {
            matrix,
            measure,
            size,
            norm,
        } => {
            let c = load_matrix(matrix)?;
            let mu = load_measure(measure)?;
            let m = build_moment_matrix(&mu, *size, false)?;
            let r = cmc_residual(&c, &m, norm.norm, norm.tol)?;
            let verdict = Verdict::passing(r.pass);
            Ok((to_value(&r), verdict))
        }
        CheckCmd::Projection { matrix, norm } => {
            let c = load_matrix(matrix)?;
            let r = projection_residual(&c, norm.norm, norm.tol)?;
            let verdict = Verdict::passing(r.pass);
            Ok((to_value(&r), verdict))
        }
        CheckCmd::Vanishing {
            measure,
            gamma,
            bound,
            tol,
        } => {
            let mu = load_measure(measure)?;
            let g = load_gamma(gamma)?;
            let tol = tol.unwrap_or_else(|| mu.default_tol());
            let r = fourier_vanishing_check(&mu, &g, *bound, tol)?;
            let verdict = Verdict::passing(r.pass);
            Ok((to_value(&r), verdict))
        }
        CheckCmd::Reproduce {
            matrix,
            measure,
            size,
            w,
            z,
            count,
            seed,
            radius,
            route,
            quad,
            tol,
        } => {
            let c = load_matrix(matrix)?;
            let mu = load_measure(measure)?;
            let tol = tol.unwrap_or_else(|| mu.default_tol());
            let (pairs, seeded) = match (w, z) {
                (Some(w), Some(z)) => (vec![(parse_complex(w)?, parse_complex(z)?)], false),
                (None, None) => {
                    let count = count.ok_or_else(|| {
                        Failure::Usage("check reproduce needs --w/--z or --count".into())
                    })?;
                    (sampling::disc_pairs(*seed, count, *radius), true)
                }
                _ => {
                    return Err(Failure::Usage(
                        "check reproduce needs both --w and --z".into(),
                    ))
                }
            };
            let use_quadrature = match route.as_str() {
                "auto" => mu.has_density(),
                "quadrature" => true,
                "fourier" => false,
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown route `{other}` (expected auto|quadrature|fourier)"
                    )))
                }
            };
            let q = quad.unwrap_or_else(|| {
                4 * (mu.top_density_frequency().max(*size as u64)).max(1) as usize
            });
            let mut checks = Vec::new();
            let mut max_residual: f64 = 0.0;
            for (w, z) in pairs {
                let residual = if use_quadrature {
                    reproduce_residual_quadrature(&c, &mu, w, z, *size, q)?
                } else {
                    reproduce_residual_fourier(&c, &mu, w, z, *size)?
                };
                max_residual = max_residual.max(residual);
                checks.push(json!({
                    "w": format_complex(w),
                    "z": format_complex(z),
                    "residual": residual,
                    "pass": residual <= tol,
                }));
            }
            let pass = max_residual <= tol;
            let mut report = json!({
                "route": if use_quadrature { "quadrature" } else { "fourier" },
                "N": size,
                "tol": tol,
                "checks": checks,
                "maxResidual": max_residual,
                "pass": pass,
            });
            if use_quadrature {
                report["quadNodes"] = json!(q);
            }
            if seeded {
                report["seed"] = json!(seed);
            }
            Ok((report, Verdict::passing(pass)))
        }
        CheckCmd::Norms {
            measure,
            freqs,
            coeffs,
            gamma,
            window,
            count,
            seed,
            tol,
        } => {
            let mu = load_measure(measure)?;
            let tol = tol.unwrap_or_else(|| mu.default_tol());
            let freqs: Vec<u64> = if let Some(gamma) = gamma {
                load_gamma(gamma)?.elements_below(*window).collect()
            } else if !freqs.is_empty() {
                freqs.clone()
            } else {
                return Err(Failure::Usage(
                    "check norms needs --freqs or --gamma".into(),
                ));
            };
            let mut vectors: Vec<Vec<Complex64>> = Vec::new();
            let mut seeded = false;
            if !coeffs.is_empty() {
                let parsed: Result<Vec<Complex64>, _> =
                    coeffs.iter().map(|s| parse_complex(s)).collect();
                let parsed = parsed?;
                if parsed.len() != freqs.len() {
                    return Err(Failure::Usage(format!(
                        "{} coefficients for {} frequencies",
                        parsed.len(),
                        freqs.len()
                    )));
                }
                vectors.push(parsed);
            } else {
                let count = count.unwrap_or(1);
                for i in 0..count {
                    vectors.push(sampling::coeff_vector(
                        seed.wrapping_add(i as u64),
                        freqs.len(),
                    ));
                }
                seeded = true;
            }
            let mut checks = Vec::new();
            let mut max_residual: f64 = 0.0;
            for v in &vectors {
                let residual = norm_preservation_residual(&freqs, v, &mu)?;
                max_residual = max_residual.max(residual);
                checks.push(json!({ "residual": residual, "pass": residual <= tol }));
            }
            let pass = max_residual <= tol;
            let mut report = json!({
                "frequencies": freqs,
                "tol": tol,
                "checks": checks,
                "maxResidual": max_residual,
                "pass": pass,
            });
            if seeded {
                report["seed"] = json!(seed);
            }
            Ok((report, Verdict::passing(pass)))
        }
        CheckCmd::Transpose {
            matrix,
            measure,
            size,
            norm,
        } => {
            let c = load_matrix(matrix)?;
            let mu = load_measure(measure)?;
            let r = transpose_identity_residual(&c, &mu, *size, norm.norm, norm.tol)?;
            let verdict = Verdict::passing(r.pass);
            Ok((to_value(&r), verdict))
        }
    }
}

fn run_build(cmd: &BuildCmd) -> CmdResult {
    match cmd {
        BuildCmd::Measure {
            gamma,
            freq_bound,
            mass,
            decay,
        } => {
            let g = load_gamma(gamma)?;
            let mu = build_ac_representing_measure(&g, *freq_bound, *mass, *decay)?;
            Ok((to_value(&mu), Verdict::Pass))
        }
        BuildCmd::Certify {
            measure,
            gamma,
            window,
        } => {
            let mu = load_measure(measure)?;
            let g = load_gamma(gamma)?;
            let cert = certify(&mu, &g, *window)?;
            let verdict = Verdict::passing(cert.pass);
            Ok((to_value(&cert), verdict))
        }
    }
}

// --- input loading -----------------------------------------------------------

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_gamma(path: &PathBuf) -> Result<GammaSet, Failure> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// `lebesgue`, `mu3`, `mu4`, or a path to a measure JSON file.
fn load_measure_unchecked(spec: &str) -> Result<MeasureSpec, Failure> {
    Ok(match spec {
        "lebesgue" => MeasureSpec::Lebesgue,
        "mu3" => MeasureSpec::mu3(),
        "mu4" => MeasureSpec::mu4(),
        path => {
            let text = read_file(&PathBuf::from(path))?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
        }
    })
}

fn load_measure(spec: &str) -> Result<MeasureSpec, Failure> {
    let mu = load_measure_unchecked(spec)?;
    mu.ensure_valid()?;
    Ok(mu)
}

/// `szego`, `bergman`, `gamma:<file>`, `diag:<file>`, or `dense:<file>`.
fn load_matrix(spec: &str) -> Result<CoeffMatrix, Failure> {
    if spec == "szego" {
        return Ok(CoeffMatrix::Diagonal(Diagonal::Ones));
    }
    if spec == "bergman" {
        return Ok(CoeffMatrix::Diagonal(Diagonal::Bergman));
    }
    if let Some(path) = spec.strip_prefix("gamma:") {
        let g = load_gamma(&PathBuf::from(path))?;
        return Ok(CoeffMatrix::indicator(&g));
    }
    if let Some(path) = spec.strip_prefix("diag:") {
        let text = read_file(&PathBuf::from(path))?;
        return load_diagonal(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")));
    }
    if let Some(path) = spec.strip_prefix("dense:") {
        let text = read_file(&PathBuf::from(path))?;
        let dense = if text.trim_start().starts_with('[') {
            dense_from_json(&text)
        } else {
            dense_from_csv(&text)
        }
        .map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        return Ok(CoeffMatrix::Dense(dense));
    }
    Err(Failure::Usage(format!(
        "unknown matrix `{spec}` (expected szego|bergman|gamma:<file>|diag:<file>|dense:<file>)"
    )))
}

/// A diagonal file is either a JSON map {"0":1.0,...} or a spectrum file,
/// which stands for its 0/1 indicator.
fn load_diagonal(text: &str) -> Result<CoeffMatrix, LibError> {
    if let Ok(map) = serde_json::from_str::<std::collections::BTreeMap<String, f64>>(text) {
        let parsed: Result<std::collections::BTreeMap<u64, f64>, _> = map
            .into_iter()
            .map(|(k, v)| k.parse::<u64>().map(|n| (n, v)))
            .collect();
        if let Ok(map) = parsed {
            return Ok(CoeffMatrix::Diagonal(Diagonal::from_map(map)?));
        }
    }
    let g: GammaSet = serde_json::from_str(text)
        .map_err(|e| LibError::Parse(format!("neither a diagonal map nor a spectrum: {e}")))?;
    Ok(CoeffMatrix::indicator(&g))
}

/// Kernel names: matrix specs plus `k3`/`k4` product kernels.
fn load_kernel(spec: &str) -> Result<Kernel, Failure> {
    match spec {
        "k3" => Ok(Kernel::Product { base: 3 }),
        "k4" => Ok(Kernel::Product { base: 4 }),
        other => Ok(Kernel::Coeff(load_matrix(other)?)),
    }
}

// --- rendering -----------------------------------------------------------------

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report serializes")
}

fn complex_value(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
        Format::Table => {
            let mut out = String::new();
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                out.push_str(&format!("{k:<width$}  {v}\n"));
            }
            out
        }
    }
}

fn render_csv(report: &Value) -> String {
    // Gram reports carry a matrix: emit it in the dense CSV interchange
    // format (rows of a+bi cells). Everything else flattens to a header
    // line and a value line.
    if let Some(entries) = report.get("entries").and_then(|e| e.as_array()) {
        let rows: Option<Vec<Vec<&str>>> = entries
            .iter()
            .map(|row| {
                row.as_array()
                    .map(|cells| cells.iter().filter_map(|c| c.as_str()).collect())
            })
            .collect();
        if let Some(rows) = rows {
            if !rows.is_empty() {
                let mut out = String::new();
                for row in rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                return out;
            }
        }
    }
    let mut rows = Vec::new();
    flatten("", report, &mut rows);
    let header: Vec<&str> = rows.iter().map(|(k, _)| k.as_str()).collect();
    let values: Vec<String> = rows
        .iter()
        .map(|(_, v)| {
            if v.contains(',') || v.contains('"') {
                format!("\"{}\"", v.replace('"', "\"\""))
            } else {
                v.clone()
            }
        })
        .collect();
    format!("{}\n{}\n", header.join(","), values.join(","))
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        other => out.push((
            prefix.to_string(),
            match other {
                Value::String(s) => s.clone(),
                v => v.to_string(),
            },
        )),
    }
}
