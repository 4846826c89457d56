//! Admissible coefficient spaces, their seminorm ladders, and Bohr–Cahen
//! abscissa scans.

use crate::abscissa::{estimate_from_lognorms, AbscissaEstimate};
use crate::error::{Error, Result};
use crate::numeric::{fmt12, KahanSum};
use crate::series::{DirichletPolynomial, DirichletSeries, Grid};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdmissibleSpace {
    /// `ℓ_p` of the coefficients, `1 ≤ p < ∞`. `p = 2` is `ℋ_2`.
    Lp {
        p: f64,
    },
    C0,
    /// `sup_N |Σ_{n≤N} a_n|`.
    Sigma,
    /// Vertical-line sup norm at `σ = 0` on a grid; a lower bound.
    DInftyProxy {
        grid: Grid,
    },
}

impl AdmissibleSpace {
    pub fn lp(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("need 1 <= p < inf, got {p}")));
        }
        Ok(AdmissibleSpace::Lp { p })
    }

    pub fn d_infty(grid: Grid) -> Self {
        AdmissibleSpace::DInftyProxy { grid }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            AdmissibleSpace::Lp { .. } => "lp",
            AdmissibleSpace::C0 => "c0",
            AdmissibleSpace::Sigma => "sigma",
            AdmissibleSpace::DInftyProxy { .. } => "d_infty",
        }
    }

    /// `C` with `|a_n| ≤ C‖P‖` for every coefficient of every polynomial.
    pub fn coefficient_bound_constant(&self) -> f64 {
        match self {
            // a_n = s_n - s_{n-1}
            AdmissibleSpace::Sigma => 2.0,
            _ => 1.0,
        }
    }

    /// Whether the norm is monotone in the moduli of the coefficients.
    pub fn is_lattice_norm(&self) -> bool {
        matches!(self, AdmissibleSpace::Lp { .. } | AdmissibleSpace::C0)
    }

    pub fn norm(&self, p: &DirichletPolynomial) -> f64 {
        match self {
            AdmissibleSpace::DInftyProxy { grid } => p.sup_norm_line(0.0, grid),
            _ => {
                let mut acc = Accumulator::new(self);
                for &(l, a) in p.terms() {
                    acc.push(l, a);
                }
                acc.flush();
                acc.norm()
            }
        }
    }
}

impl fmt::Display for AdmissibleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibleSpace::Lp { p } => write!(f, "lp:{p}"),
            AdmissibleSpace::C0 => f.write_str("c0"),
            AdmissibleSpace::Sigma => f.write_str("sigma"),
            AdmissibleSpace::DInftyProxy { grid } => write!(f, "d_infty:{}:{}", grid.t_max, grid.step),
        }
    }
}

/// `lp:<p>`, `c0`, `sigma`, `d_infty` or `d_infty:<t_max>:<step>`.
impl FromStr for AdmissibleSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<f64>().map_err(|_| Error::InvalidParameter(format!("`{t}` is not a number in space `{s}`")))
        };
        match parts.as_slice() {
            ["lp", p] => AdmissibleSpace::lp(num(p)?),
            ["c0"] => Ok(AdmissibleSpace::C0),
            ["sigma"] => Ok(AdmissibleSpace::Sigma),
            ["d_infty"] => Ok(AdmissibleSpace::d_infty(Grid::default())),
            ["d_infty", t, h] => Ok(AdmissibleSpace::d_infty(Grid::new(num(t)?, num(h)?)?)),
            _ => Err(Error::InvalidParameter(format!(
                "unknown space `{s}` (expected lp:<p>, c0, sigma, d_infty[:t_max:step])"
            ))),
        }
    }
}

const SUP_CHUNK: usize = 256;

/// Running norm of a growing truncation.
enum Accumulator {
    Lp {
        p: f64,
        sum: f64,
        max: f64,
    },
    C0 {
        max: f64,
    },
    Sigma {
        partial: KahanSum,
        sup: f64,
    },
    /// Values on the grid; terms are buffered and applied on `flush`.
    Sup {
        grid: Grid,
        values: Vec<Complex64>,
        pending: Vec<(f64, Complex64)>,
    },
}

impl Accumulator {
    fn new(space: &AdmissibleSpace) -> Self {
        match *space {
            AdmissibleSpace::Lp { p } => Accumulator::Lp { p, sum: 0.0, max: 0.0 },
            AdmissibleSpace::C0 => Accumulator::C0 { max: 0.0 },
            AdmissibleSpace::Sigma => Accumulator::Sigma { partial: KahanSum::new(), sup: 0.0 },
            AdmissibleSpace::DInftyProxy { grid } => {
                let values = vec![Complex64::new(0.0, 0.0); grid.len()];
                Accumulator::Sup { grid, values, pending: Vec::new() }
            }
        }
    }

    fn push(&mut self, lambda: f64, a: Complex64) {
        match self {
            Accumulator::Lp { p, sum, max } => {
                let m = a.norm();
                *sum += if *p == 1.0 { m } else { m.powf(*p) };
                *max = max.max(m);
            }
            Accumulator::C0 { max } => *max = max.max(a.norm()),
            Accumulator::Sigma { partial, sup } => {
                partial.add(a);
                *sup = sup.max(partial.value().norm());
            }
            Accumulator::Sup { pending, .. } => pending.push((lambda, a)),
        }
    }

    fn flush(&mut self) {
        if let Accumulator::Sup { grid, values, pending } = self {
            if pending.is_empty() {
                return;
            }
            let batch = std::mem::take(pending);
            let grid = *grid;
            // within a chunk e^{-iλt} advances by a fixed rotation; each chunk
            // restarts from an exact phase so rounding cannot build up
            values.par_chunks_mut(SUP_CHUNK).enumerate().for_each(|(c, chunk)| {
                let t0 = grid.point(c * SUP_CHUNK);
                for &(l, a) in &batch {
                    let step = Complex64::from_polar(1.0, -l * grid.step);
                    let mut z = a * Complex64::from_polar(1.0, -l * t0);
                    for v in chunk.iter_mut() {
                        *v += z;
                        z *= step;
                    }
                }
            });
        }
    }

    /// Current norm; `Sup` must be flushed first.
    fn norm(&self) -> f64 {
        match self {
            Accumulator::Lp { p, sum, max } => {
                if *p == 1.0 {
                    *sum
                } else {
                    // the max guards |a_n| ≤ ‖a‖_p against rounding in the root
                    max.max(sum.powf(1.0 / p))
                }
            }
            Accumulator::C0 { max } => *max,
            Accumulator::Sigma { sup, .. } => *sup,
            Accumulator::Sup { values, .. } => values.iter().map(|v| v.norm()).fold(0.0, f64::max),
        }
    }
}

/// Controls for abscissa scans.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanParams {
    /// Largest index materialized; defaults to the frequency's `n_max`.
    pub n_max: Option<usize>,
    /// Truncation points; default is [`DEFAULT_X_POINTS`] log-spaced points
    /// from `λ_2` to `λ_{n_max}`.
    pub x_points: Option<Vec<f64>>,
    pub window: usize,
}

pub const DEFAULT_X_POINTS: usize = 64;
pub const DEFAULT_WINDOW: usize = 16;

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams { n_max: None, x_points: None, window: DEFAULT_WINDOW }
    }
}

impl ScanParams {
    pub fn with_n_max(n_max: usize) -> Self {
        ScanParams { n_max: Some(n_max), ..Default::default() }
    }
}

fn top_index(d: &DirichletSeries, n_max: Option<usize>) -> usize {
    let n = n_max.unwrap_or(d.freq.n_max());
    d.support_len().map_or(n, |len| n.min(len))
}

/// Truncation points used when none are given.
pub fn default_x_points(d: &DirichletSeries, n_max: Option<usize>) -> Result<Vec<f64>> {
    let top = n_max.unwrap_or(d.freq.n_max());
    let top = d.freq.finite_len().map_or(top, |len| top.min(len));
    if top < 3 {
        return Err(Error::EmptyScan(format!("need at least 3 frequencies, have {top}")));
    }
    let lo = d.freq.value_at(2)?;
    let hi = d.freq.value_at(top as u64)?;
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..DEFAULT_X_POINTS).map(|i| (a + (b - a) * i as f64 / (DEFAULT_X_POINTS - 1) as f64).exp()).collect())
}

fn validate_points(xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::EmptyScan("no truncation points".into()));
    }
    if xs.iter().any(|&x| !(x > 0.0 && x.is_finite())) || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("truncation points must be positive and increasing".into()));
    }
    Ok(())
}

/// `log‖Σ_{λ_n<x} a_n e^{-λ_n s}‖` at every `x`, for several spaces in one
/// pass over the terms. The second output is the running maximum of the
/// first `DInftyProxy` entry, i.e. the uniform-convergence proxy.
fn lognorm_scan(
    d: &DirichletSeries,
    spaces: &[AdmissibleSpace],
    xs: &[f64],
    n_max: Option<usize>,
) -> Result<Vec<Vec<f64>>> {
    let top = top_index(d, n_max);
    let mut accs: Vec<Accumulator> = spaces.iter().map(Accumulator::new).collect();
    let mut out = vec![Vec::with_capacity(xs.len()); spaces.len()];
    // only terms below the last point matter
    let needed = match d.freq.count_below(*xs.last().unwrap(), top) {
        Ok(c) => c.min(top),
        Err(Error::HorizonExceeded { .. }) => top,
        Err(e) => return Err(e),
    };
    let lambdas = d.freq.materialize(needed)?;
    let mut n = 0usize;
    for &x in xs {
        while n < lambdas.len() && lambdas[n] < x {
            let a = d.coeffs.at(n as u64 + 1, lambdas[n]);
            for acc in &mut accs {
                acc.push(lambdas[n], a);
            }
            n += 1;
        }
        for (acc, col) in accs.iter_mut().zip(&mut out) {
            acc.flush();
            col.push(acc.norm().ln());
        }
    }
    Ok(out)
}

fn resolve_points(d: &DirichletSeries, params: &ScanParams) -> Result<Vec<f64>> {
    let xs = match &params.x_points {
        Some(xs) => xs.clone(),
        None => default_x_points(d, params.n_max)?,
    };
    validate_points(&xs)?;
    Ok(xs)
}

/// `σ_𝔛(D)` estimated from `log‖D_x‖/x` along the truncation points: the
/// growth rate of `log‖D_x‖` fitted on the trailing `window` points. Reliable
/// only when the true abscissa is nonnegative; negative rates are reported as
/// "≤ 0", and Dirichlet polynomials as `-∞`.
pub fn bohr_cahen_abscissa(
    d: &DirichletSeries,
    space: &AdmissibleSpace,
    params: &ScanParams,
) -> Result<AbscissaEstimate> {
    let xs = resolve_points(d, params)?;
    let scan = lognorm_scan(d, std::slice::from_ref(space), &xs, params.n_max)?;
    let label = format!("{space}");
    estimate_from_lognorms(&xs, &scan[0], params.window, d.is_polynomial(), &label)
}

/// Parameters for [`classical_abscissas`]. The sup-norm proxies use their own,
/// smaller horizon because each term costs one evaluation per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalParams {
    pub scan: ScanParams,
    pub proxy_n_max: usize,
    pub grid: Grid,
}

impl Default for ClassicalParams {
    fn default() -> Self {
        ClassicalParams {
            scan: ScanParams::default(),
            proxy_n_max: crate::frequency::DEFAULT_N_MAX,
            grid: Grid::new(100.0, 0.02).unwrap(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalAbscissas {
    pub sigma_c: AbscissaEstimate,
    pub sigma_a: AbscissaEstimate,
    /// Grid-dependent proxy.
    pub sigma_b: AbscissaEstimate,
    /// Grid-dependent proxy: running maximum of the truncation sup norms.
    pub sigma_u: AbscissaEstimate,
}

impl ClassicalAbscissas {
    pub fn all(&self) -> [(&'static str, &AbscissaEstimate); 4] {
        [("sigma_c", &self.sigma_c), ("sigma_b", &self.sigma_b), ("sigma_u", &self.sigma_u), ("sigma_a", &self.sigma_a)]
    }
}

/// `σ_c`, `σ_a` from the Σ- and `ℓ_1`-scans, and the sup-norm proxies for
/// `σ_b` and `σ_u`.
pub fn classical_abscissas(d: &DirichletSeries, params: &ClassicalParams) -> Result<ClassicalAbscissas> {
    let xs = resolve_points(d, &params.scan)?;
    let poly = d.is_polynomial();
    let w = params.scan.window;
    let sums = lognorm_scan(d, &[AdmissibleSpace::Sigma, AdmissibleSpace::Lp { p: 1.0 }], &xs, params.scan.n_max)?;
    let sigma_c = estimate_from_lognorms(&xs, &sums[0], w, poly, "sigma_c via sigma")?;
    let sigma_a = estimate_from_lognorms(&xs, &sums[1], w, poly, "sigma_a via lp:1")?;

    let proxy_scan = ScanParams { n_max: Some(params.proxy_n_max), x_points: None, window: w };
    let pxs = match &params.scan.x_points {
        Some(xs) => xs.clone(),
        None => default_x_points(d, proxy_scan.n_max)?,
    };
    validate_points(&pxs)?;
    let sup = lognorm_scan(d, &[AdmissibleSpace::d_infty(params.grid)], &pxs, proxy_scan.n_max)?;
    let running: Vec<f64> = sup[0]
        .iter()
        .scan(f64::NEG_INFINITY, |m, &v| {
            *m = m.max(v);
            Some(*m)
        })
        .collect();
    let sigma_b = estimate_from_lognorms(&pxs, &sup[0], w, poly, "sigma_b proxy via grid sup norm")?;
    let sigma_u = estimate_from_lognorms(&pxs, &running, w, poly, "sigma_u proxy via running grid sup norm")?;
    Ok(ClassicalAbscissas { sigma_c, sigma_a, sigma_b, sigma_u })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderEntry {
    pub k: u32,
    pub value: f64,
    /// Value at half the horizon, used by the divergence test.
    pub half_value: f64,
    /// `|v(H) - v(H/2)| > 10⁻⁶·max(1, v(H))`.
    pub diverges: bool,
}

/// Relative increment below which a doubling of the horizon counts as
/// converged.
pub const LADDER_CAUCHY_TOL: f64 = 1e-6;

/// `‖D_{1/k}‖` on the first `horizon` terms for `k = 1..=k_max`.
pub fn seminorm_ladder(
    d: &DirichletSeries,
    space: &AdmissibleSpace,
    k_max: u32,
    horizon: usize,
) -> Result<Vec<LadderEntry>> {
    if k_max < 1 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    if horizon < 2 {
        return Err(Error::InvalidParameter("horizon must be at least 2".into()));
    }
    let top = d.support_len().map_or(horizon, |len| horizon.min(len));
    let lambdas = d.freq.materialize(top)?;
    let coeffs: Vec<Complex64> = lambdas.iter().enumerate().map(|(i, &l)| d.coeffs.at(i as u64 + 1, l)).collect();
    let half = horizon / 2;
    (1..=k_max)
        .map(|k| {
            let sigma = 1.0 / k as f64;
            let mut acc = Accumulator::new(space);
            let mut half_value = None;
            for (i, (&l, &a)) in lambdas.iter().zip(&coeffs).enumerate() {
                if i == half {
                    acc.flush();
                    half_value = Some(acc.norm());
                }
                acc.push(l, a * (-l * sigma).exp());
            }
            acc.flush();
            let value = acc.norm();
            let half_value = half_value.unwrap_or(value);
            let diverges = (value - half_value).abs() > LADDER_CAUCHY_TOL * value.max(1.0);
            Ok(LadderEntry { k, value, half_value, diverges })
        })
        .collect()
}

/// CSV with columns `x, lognorm_over_x, space_kind, k`.
pub fn scan_csv(rows: &[(&AbscissaEstimate, &str, Option<u32>)]) -> String {
    let mut out = String::from("x,lognorm_over_x,space_kind,k\n");
    for (est, kind, k) in rows {
        for &(x, v) in &est.scan {
            let k = k.map(|k| k.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", fmt12(x), fmt12(v), kind, k));
        }
    }
    out
}

/// CSV with columns `k, value, half_value, diverges`.
pub fn ladder_csv(entries: &[LadderEntry]) -> String {
    let mut out = String::from("k,value,half_value,diverges\n");
    for e in entries {
        out.push_str(&format!("{},{},{},{}\n", e.k, fmt12(e.value), fmt12(e.half_value), e.diverges));
    }
    out
}
