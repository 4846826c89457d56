//! Command-line front end. Every subcommand reads JSON inputs (inline or
//! `@path`), writes text, JSON or CSV, and maps outcomes to exit codes:
//! 0 success, 1 I/O failure, 2 invalid input, 3 Inconclusive under `--strict`.

use crate::abscissa::AbscissaEstimate;
use crate::frequency::{
    bohr_decomposition_to, check_bohr_condition, check_hypercontractive, check_landau_condition, classify_bohr_theorem,
    estimate_l, exact_l, q_linearly_independent, Frequency, DEFAULT_N_MAX,
};
use crate::koethe::{block_csv, gp_csv, gp_nuclearity_test, weighted_norm, KoetheMatrix, SequenceNorm};
use crate::numeric::fmt12;
use crate::report::{build_report_with_p, check_invariants, hardy2_coincidence_demo, render_text, DEFAULT_GENERIC_P};
use crate::series::{abschnitt_indices, DirichletPolynomial, DirichletSeries, Grid};
use crate::spaces::{
    bohr_cahen_abscissa, classical_abscissas, ladder_csv, scan_csv, seminorm_ladder, AdmissibleSpace, ClassicalParams,
    ScanParams, DEFAULT_WINDOW,
};
use crate::summation::{
    bohr_coefficient, bohr_coefficient_error_bound, kernel_profile_csv, riesz_scan_csv, uniform_abscissa_via_riesz,
    KernelSpec, RieszParams, TrigPolynomial,
};
use crate::verdict::ThreeValued;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dirichlet",
    version,
    about = "Abscissas, kernels, nuclearity and structure verdicts for general Dirichlet series"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Exit with code 3 when the main verdict is Inconclusive.
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for randomized demos.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// L(lambda), the gap conditions, Bohr's theorem and hypercontractivity.
    AnalyzeFrequency {
        #[arg(long)]
        freq: String,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        /// Trailing window for the L estimate; default n_max/10.
        #[arg(long)]
        window: Option<usize>,
        /// l in (BC); default the exact L(lambda) when finite and positive, else 1.
        #[arg(long)]
        l: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
    /// Bohr–Cahen abscissa in one space, or the four classical abscissas.
    Abscissas {
        #[arg(long)]
        series: String,
        /// lp:<p>, c0, sigma, d_infty[:t_max:step]; omit for the classical abscissas.
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        /// Horizon of the sup-norm proxies.
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        proxy_n_max: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Seminorm ladder k = 1..k_max of a series in an admissible space.
    Ladder {
        #[arg(long)]
        series: String,
        #[arg(long, default_value = "lp:1")]
        space: String,
        #[arg(long, default_value_t = 10)]
        k_max: u32,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
    },
    /// Upper bound for the uniform abscissa from Riesz-mean sup norms.
    Riesz {
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 4096)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Fejér and Poisson kernels and their Fourier transforms.
    Kernels {
        #[arg(long, value_enum)]
        kind: Option<KernelKind>,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        sigma: Option<f64>,
        /// Evaluation points (repeatable).
        #[arg(long = "t", allow_negative_numbers = true)]
        t: Vec<f64>,
        /// Evaluate the Fourier transform instead of the kernel.
        #[arg(long)]
        ft: bool,
        /// Also report the total mass by quadrature plus analytic tails.
        #[arg(long)]
        mass: bool,
    },
    /// Grothendieck–Pietsch nuclearity of the Köthe echelon space.
    Nuclearity {
        #[arg(long)]
        freq: String,
        #[arg(long, default_value_t = 8)]
        k_max: u32,
        #[arg(long, default_value_t = 10_000)]
        n_max: usize,
    },
    /// Köthe matrix block, optionally with weighted norms of a series' coefficients.
    Koethe {
        #[arg(long, conflicts_with = "series", required_unless_present = "series")]
        freq: Option<String>,
        #[arg(long)]
        series: Option<String>,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        k_max: u32,
        /// lp:<p> or c0, for the weighted norms.
        #[arg(long, default_value = "lp:1")]
        norm: String,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
    },
    /// Bohr coefficient of a Dirichlet polynomial by its finite-T time average.
    BohrCoeff {
        /// Polynomial `[[lambda, [re, im]], ...]`; alternative to --random.
        #[arg(long)]
        terms: Option<String>,
        /// Draw a random polynomial with this many terms (uses --seed).
        #[arg(long, conflicts_with = "terms")]
        random: Option<usize>,
        /// Frequency to extract; default all frequencies of the polynomial.
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long = "T", default_value_t = 1e4)]
        t_half: f64,
    },
    /// Structural verdicts for D_{inf,+} and H_{p,+}.
    Report {
        #[arg(long)]
        freq: String,
        /// Exponent of the generic H_{p,+} record.
        #[arg(long, default_value_t = DEFAULT_GENERIC_P)]
        p: f64,
        /// Also tabulate the H_2 ladder against l_2(A) norms for this series.
        #[arg(long)]
        hardy_series: Option<String>,
        #[arg(long, default_value_t = 5)]
        k_max: u32,
        #[arg(long, default_value_t = 1000)]
        horizon: usize,
    },
    /// Translate a series by sigma; prints the translated series JSON.
    Translate {
        #[arg(long)]
        series: String,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        /// Terms listed in text output.
        #[arg(long, default_value_t = 10)]
        show: usize,
    },
    /// N-th Abschnitt of a series, restricted to n <= horizon.
    Abschnitt {
        #[arg(long)]
        series: String,
        #[arg(long = "n")]
        big_n: usize,
        #[arg(long, default_value_t = 100)]
        horizon: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    #[arg(long, default_value_t = 100.0)]
    t_max: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KernelKind {
    Fejer,
    Poisson,
}

struct CliError {
    code: i32,
    message: String,
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError { code: EXIT_INVALID, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_INVALID, message: message.into() }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Result of a subcommand in every format it supports.
struct Output {
    text: String,
    json: Value,
    csv: Option<String>,
    inconclusive: bool,
}

fn read_arg(flag: &str, raw: &str) -> CliResult<String> {
    match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError { code: EXIT_IO, message: format!("--{flag}: cannot read {path}: {e}") }),
        None => Ok(raw.to_string()),
    }
}

fn parse_json<T: DeserializeOwned>(flag: &str, raw: &str) -> CliResult<T> {
    let text = read_arg(flag, raw)?;
    serde_json::from_str(&text)
        .map_err(|e| invalid(format!("--{flag}: invalid input at line {}, column {}: {e}", e.line(), e.column())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn verdict_line(name: &str, v: &ThreeValued) -> String {
    let mut s = format!("{name}: {v}\n");
    if let Some(w) = &v.witness {
        let _ = writeln!(s, "  witness: {}", w.description);
    }
    s
}

fn estimate_line(name: &str, e: &AbscissaEstimate) -> String {
    format!("{name}: {} [{}]\n", e.value, e.confidence)
}

fn analyze_frequency(
    freq: &Frequency,
    n_max: usize,
    window: Option<usize>,
    l: Option<f64>,
    delta: f64,
) -> CliResult<Output> {
    let n_eff = freq.finite_len().map_or(n_max, |len| n_max.min(len));
    let window = window.unwrap_or((n_eff / 10).max(2)).min(n_eff);
    let estimate = estimate_l(freq, n_max, window)?;
    let l_exact = exact_l(freq);
    let l_bc = l.unwrap_or(match l_exact {
        Some(v) if v.is_finite() && v > 0.0 => v,
        _ => 1.0,
    });
    let bc = check_bohr_condition(freq, l_bc, delta, n_max)?;
    let lc = check_landau_condition(freq, delta, n_max)?;
    let bohr = classify_bohr_theorem(freq);
    let qli = q_linearly_independent(freq);
    let hyper = check_hypercontractive(freq);
    let mut text = format!("frequency: {}\n", freq.describe());
    match l_exact {
        Some(v) => {
            let _ =
                writeln!(text, "L(lambda) = {} exact; numeric trailing-window estimate {}", fmt12(v), estimate.value);
        }
        None => {
            let _ = writeln!(text, "L(lambda): numeric trailing-window estimate {} (not exact)", estimate.value);
        }
    }
    text += &verdict_line(&format!("BC (l = {}, delta = {})", fmt12(l_bc), fmt12(delta)), &bc);
    text += &verdict_line(&format!("LC (delta = {})", fmt12(delta)), &lc);
    text += &verdict_line("Bohr's theorem", &bohr);
    text += &verdict_line("Q-linearly independent", &qli);
    text += &verdict_line("hypercontractive", &hyper);
    let inconclusive = [&bc, &lc, &bohr].iter().any(|v| v.is_inconclusive());
    let mut csv = String::from("n,log_n_over_lambda_n\n");
    for &(n, r) in &estimate.scan {
        let _ = writeln!(csv, "{},{}", n, fmt12(r));
    }
    Ok(Output {
        text,
        json: json!({
            "frequency": to_json(freq),
            "l_estimate": to_json(&estimate),
            "bohr_condition": {"l": l_bc, "delta": delta, "verdict": to_json(&bc)},
            "landau_condition": {"delta": delta, "verdict": to_json(&lc)},
            "bohr_theorem": to_json(&bohr),
            "q_linearly_independent": to_json(&qli),
            "hypercontractive": to_json(&hyper),
        }),
        csv: Some(csv),
        inconclusive,
    })
}

fn grid_of(g: GridArgs) -> CliResult<Grid> {
    Ok(Grid::new(g.t_max, g.step)?)
}

fn run_command(cmd: Command, seed: u64) -> CliResult<Output> {
    match cmd {
        Command::AnalyzeFrequency { freq, n_max, window, l, delta } => {
            let freq: Frequency = parse_json("freq", &freq)?;
            analyze_frequency(&freq, n_max, window, l, delta)
        }
        Command::Abscissas { series, space, n_max, window, proxy_n_max, grid } => {
            let d: DirichletSeries = parse_json("series", &series)?;
            let scan = ScanParams { n_max, x_points: None, window };
            match space {
                Some(space) => {
                    let space: AdmissibleSpace = space.parse()?;
                    let e = bohr_cahen_abscissa(&d, &space, &scan)?;
                    Ok(Output {
                        text: estimate_line(&format!("abscissa in {space}"), &e),
                        json: to_json(&e),
                        csv: Some(scan_csv(&[(&e, space.kind_name(), None)])),
                        inconclusive: e.confidence.is_inconclusive(),
                    })
                }
                None => {
                    let params = ClassicalParams { scan, proxy_n_max, grid: grid_of(grid)? };
                    let c = classical_abscissas(&d, &params)?;
                    let text: String = c.all().iter().map(|(n, e)| estimate_line(n, e)).collect();
                    let rows: Vec<_> = c.all().iter().map(|(n, e)| (*e, *n, None)).collect();
                    Ok(Output {
                        text,
                        json: to_json(&c),
                        csv: Some(scan_csv(&rows)),
                        inconclusive: c.all().iter().any(|(_, e)| e.confidence.is_inconclusive()),
                    })
                }
            }
        }
        Command::Ladder { series, space, k_max, horizon } => {
            let d: DirichletSeries = parse_json("series", &series)?;
            let space: AdmissibleSpace = space.parse()?;
            let ladder = seminorm_ladder(&d, &space, k_max, horizon)?;
            let mut text = format!("seminorm ladder in {space}, horizon {horizon}\n");
            for e in &ladder {
                let flag = if e.diverges { "  (diverges)" } else { "" };
                let _ = writeln!(text, "k = {:>3}: {}{flag}", e.k, fmt12(e.value));
            }
            Ok(Output { text, json: to_json(&ladder), csv: Some(ladder_csv(&ladder)), inconclusive: false })
        }
        Command::Riesz { series, n_max, window, grid } => {
            let d: DirichletSeries = parse_json("series", &series)?;
            let params =
                RieszParams { scan: ScanParams { n_max: Some(n_max), x_points: None, window }, grid: grid_of(grid)? };
            let r = uniform_abscissa_via_riesz(&d, &params)?;
            Ok(Output {
                text: estimate_line("upper bound for sigma_u via Riesz means", &r.estimate),
                json: to_json(&r),
                csv: Some(riesz_scan_csv(&r)),
                inconclusive: r.estimate.confidence.is_inconclusive(),
            })
        }
        Command::Kernels { kind, x, sigma, t, ft, mass } => {
            let ts = if t.is_empty() { vec![0.0] } else { t };
            let csv = match (x, sigma) {
                (Some(x), Some(s)) => Some(kernel_profile_csv(x, s, &ts)?),
                _ => None,
            };
            let kernels: Vec<KernelSpec> = match kind {
                Some(KernelKind::Fejer) => {
                    vec![KernelSpec::fejer(x.ok_or_else(|| invalid("--kind fejer needs --x"))?)?]
                }
                Some(KernelKind::Poisson) => {
                    vec![KernelSpec::poisson(sigma.ok_or_else(|| invalid("--kind poisson needs --sigma"))?)?]
                }
                None => {
                    let mut v = Vec::new();
                    if let Some(x) = x {
                        v.push(KernelSpec::fejer(x)?);
                    }
                    if let Some(s) = sigma {
                        v.push(KernelSpec::poisson(s)?);
                    }
                    if v.is_empty() {
                        return Err(invalid("give --kind with --x or --sigma"));
                    }
                    v
                }
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for k in &kernels {
                let label = match k {
                    KernelSpec::Fejer { x } => format!("fejer(x = {})", fmt12(*x)),
                    KernelSpec::Poisson { sigma } => format!("poisson(sigma = {})", fmt12(*sigma)),
                };
                let what = if ft { "ft" } else { "kernel" };
                for &t in &ts {
                    let v = if ft { k.ft(t) } else { k.eval(t) };
                    let _ = writeln!(text, "{label} {what}({}) = {}", fmt12(t), fmt12(v));
                    rows.push(json!({"kernel": to_json(k), "t": t, "ft": ft, "value": v}));
                }
                if mass {
                    let m = k.total_mass(1e3, 1e-10);
                    let _ = writeln!(text, "{label} total mass = {}", fmt12(m));
                    rows.push(json!({"kernel": to_json(k), "total_mass": m}));
                }
            }
            Ok(Output { text, json: Value::Array(rows), csv, inconclusive: false })
        }
        Command::Nuclearity { freq, k_max, n_max } => {
            let freq: Frequency = parse_json("freq", &freq)?;
            let r = gp_nuclearity_test(&freq, k_max, n_max)?;
            let mut text = verdict_line("nuclear (Grothendieck-Pietsch)", &r.verdict);
            for l in &r.levels {
                let m = l.m.map_or_else(|| "none in k+1..4k".to_string(), |m| m.to_string());
                let _ = writeln!(text, "  k = {:>3}: m = {m}, partial sum {}", l.k, fmt12(l.partial_sum));
            }
            Ok(Output {
                text,
                json: to_json(&r),
                csv: Some(gp_csv(&r.levels)),
                inconclusive: r.verdict.is_inconclusive(),
            })
        }
        Command::Koethe { freq, series, n_max, k_max, norm, horizon } => {
            let (freq, series) = match (freq, series) {
                (Some(f), _) => (parse_json::<Frequency>("freq", &f)?, None),
                (None, Some(s)) => {
                    let d: DirichletSeries = parse_json("series", &s)?;
                    (d.freq.clone(), Some(d))
                }
                (None, None) => return Err(invalid("give --freq or --series")),
            };
            let a = KoetheMatrix::new(freq);
            let n_rows = a.freq.finite_len().map_or(n_max, |len| n_max.min(len));
            let block = a.block(n_rows, k_max)?;
            let violation = a.check_axioms(n_rows, k_max)?;
            let mut text = format!("Koethe matrix exp(-lambda_n/k), n <= {n_rows}, k <= {k_max}\n");
            for (i, row) in block.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| fmt12(*v)).collect();
                let _ = writeln!(text, "n = {:>4}: {}", i + 1, cells.join("  "));
            }
            let _ = writeln!(
                text,
                "axioms: {}",
                violation
                    .map_or_else(|| "hold on this block".to_string(), |(n, k)| format!("violated at n = {n}, k = {k}"))
            );
            let mut weighted = Vec::new();
            if let Some(d) = &series {
                let norm = match norm.as_str() {
                    "c0" => SequenceNorm::C0,
                    s => match s.strip_prefix("lp:").map(str::parse::<f64>) {
                        Some(Ok(p)) => SequenceNorm::lp(p)?,
                        _ => return Err(invalid(format!("unknown norm `{s}` (expected lp:<p> or c0)"))),
                    },
                };
                for k in 1..=k_max {
                    let w = weighted_norm(&a, &d.coeffs, norm, k, horizon)?;
                    let flag = if w.diverges { "  (diverges)" } else { "" };
                    let _ = writeln!(text, "weighted norm k = {k}: {}{flag}", fmt12(w.value));
                    weighted.push(json!({"k": k, "norm": to_json(&w)}));
                }
            }
            Ok(Output {
                text,
                json: json!({"block": block, "axiom_violation": violation, "weighted_norms": weighted}),
                csv: Some(block_csv(&block)),
                inconclusive: false,
            })
        }
        Command::BohrCoeff { terms, random, x, sigma, t_half } => {
            let terms: Vec<(f64, Complex64)> = match (terms, random) {
                (Some(raw), _) => {
                    let raw: Vec<(f64, [f64; 2])> = parse_json("terms", &raw)?;
                    raw.into_iter().map(|(l, [re, im])| (l, Complex64::new(re, im))).collect()
                }
                (None, Some(n)) => random_terms(n, seed),
                (None, None) => return Err(invalid("give --terms or --random")),
            };
            let f = TrigPolynomial::new(terms)?;
            let targets: Vec<f64> = match x {
                Some(x) => vec![x],
                None => f.terms().iter().map(|t| t.0).collect(),
            };
            let mut text = format!("finite-T Bohr coefficients, sigma = {}, T = {}\n", fmt12(sigma), fmt12(t_half));
            let mut rows = Vec::new();
            let mut csv = String::from("x,re,im,expected_re,expected_im,error_bound\n");
            for &x in &targets {
                let v = bohr_coefficient(&f, sigma, x, t_half)?;
                let bound = bohr_coefficient_error_bound(&f, sigma, x, t_half);
                let expected = f.terms().iter().find(|t| t.0 == x).map_or(Complex64::new(0.0, 0.0), |t| t.1);
                let _ = writeln!(
                    text,
                    "x = {}: {} {:+}i (coefficient {} {:+}i, error bound {})",
                    fmt12(x),
                    fmt12(v.re),
                    v.im,
                    fmt12(expected.re),
                    expected.im,
                    fmt12(bound)
                );
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    fmt12(x),
                    fmt12(v.re),
                    fmt12(v.im),
                    fmt12(expected.re),
                    fmt12(expected.im),
                    fmt12(bound)
                );
                rows.push(json!({"x": x, "value": [v.re, v.im], "coefficient": [expected.re, expected.im], "error_bound": bound}));
            }
            Ok(Output {
                text,
                json: json!({"terms": to_json(&f), "coefficients": rows}),
                csv: Some(csv),
                inconclusive: false,
            })
        }
        Command::Report { freq, p, hardy_series, k_max, horizon } => {
            let freq: Frequency = parse_json("freq", &freq)?;
            let report = build_report_with_p(&freq, p)?;
            let violations = check_invariants(&report);
            let mut text = render_text(&report);
            if !violations.is_empty() {
                let _ = writeln!(text, "\ninvariant violations:\n  {}", violations.join("\n  "));
            }
            let mut json = json!({"report": to_json(&report), "invariant_violations": violations});
            if let Some(raw) = hardy_series {
                let d: DirichletSeries = parse_json("hardy-series", &raw)?;
                let demo = hardy2_coincidence_demo(&d, k_max, horizon)?;
                let _ = writeln!(text, "\nH_2 ladder vs l_2(A(lambda)) level norms:");
                for r in &demo.rows {
                    let _ = writeln!(text, "  k = {:>3}: {}  {}", r.k, fmt12(r.ladder), fmt12(r.weighted));
                }
                let _ = writeln!(text, "  agree within 1e-10: {}", demo.agrees);
                json["hardy2"] = to_json(&demo);
            }
            let inconclusive = report.records.iter().any(|r| r.flags.iter().iter().any(|(_, f)| f.is_inconclusive()));
            Ok(Output { text, json, csv: None, inconclusive })
        }
        Command::Translate { series, sigma, show } => {
            let d: DirichletSeries = parse_json("series", &series)?;
            let t = d.translate(sigma);
            let mut text = format!("{}\n", serde_json::to_string(&t).expect("series serialize"));
            let n = d.support_len().map_or(show, |len| show.min(len));
            for i in 1..=n as u64 {
                let a = t.coefficient(i)?;
                let _ = writeln!(text, "a_{i} = {} {:+}i", fmt12(a.re), a.im);
            }
            Ok(Output { text, json: to_json(&t), csv: None, inconclusive: false })
        }
        Command::Abschnitt { series, big_n, horizon } => {
            let d: DirichletSeries = parse_json("series", &series)?;
            let dec = bohr_decomposition_to(&d.freq, d.support_len().map_or(horizon, |l| horizon.min(l)))?;
            let keep = abschnitt_indices(&d, &dec, big_n, horizon)?;
            let lambdas = d.freq.materialize(keep.last().copied().unwrap_or(0))?;
            let terms: Vec<(f64, Complex64)> =
                keep.iter().map(|&n| (lambdas[n - 1], d.coeffs.at(n as u64, lambdas[n - 1]))).collect();
            let poly = DirichletPolynomial::new(terms.clone())?;
            let mut text = format!("Abschnitt N = {big_n}, horizon {horizon}: {} terms\n", keep.len());
            let mut csv = String::from("n,lambda,re,im\n");
            for (&n, (l, a)) in keep.iter().zip(&terms) {
                let _ = writeln!(text, "n = {n}: lambda = {}, a = {} {:+}i", fmt12(*l), fmt12(a.re), a.im);
                let _ = writeln!(csv, "{n},{},{},{}", fmt12(*l), fmt12(a.re), fmt12(a.im));
            }
            Ok(Output {
                text,
                json: json!({"indices": keep, "polynomial": to_json(&poly)}),
                csv: Some(csv),
                inconclusive: false,
            })
        }
    }
}

/// `n` terms with frequencies in `[0, 5]` at least `0.5` apart and
/// coefficients in the unit disk.
fn random_terms(n: usize, seed: u64) -> Vec<(f64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.clamp(1, 11);
    // spread n points with gaps >= 0.5 by distributing the slack
    let slack = 5.0 - 0.5 * (n - 1) as f64;
    let mut cuts: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..slack)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.iter()
        .enumerate()
        .map(|(i, &c)| {
            let r = rng.random_range(0.0f64..1.0).sqrt();
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            (c + 0.5 * i as f64, Complex64::from_polar(r, phi))
        })
        .collect()
}

/// Parses `argv` (including the program name), runs the subcommand, and writes
/// to the given streams. Returns the process exit code.
pub fn run_with_io<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let common = cli.common;
    let out = match run_command(cli.command, common.seed) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            return e.code;
        }
    };
    let body = match common.format {
        Format::Text => out.text,
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json values serialize") + "\n",
        Format::Csv => match out.csv {
            Some(c) => c,
            None => {
                let _ = writeln!(stderr, "error: this subcommand has no CSV output");
                return EXIT_INVALID;
            }
        },
    };
    let written = match &common.output {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_IO;
    }
    if common.strict && out.inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

/// [`run_with_io`] on the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with_io(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
