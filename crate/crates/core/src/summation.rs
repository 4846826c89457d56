//! Fejér and Poisson kernels, Riesz means of order one, the convolution
//! identity behind them, and Bohr coefficients by time averages.

use crate::abscissa::{estimate_from_lognorms, AbscissaEstimate};
use crate::error::{Error, Result};
use crate::numeric::{fmt12, KahanSum};
use crate::quad::integrate_pieces;
use crate::series::{DirichletPolynomial, DirichletSeries, Grid};
use crate::spaces::{default_x_points, ScanParams};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Below this `|t|` the Fejér kernel is evaluated by its Taylor expansion.
const FEJER_SERIES_CUTOFF: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelSpec {
    /// `K_x(t) = (1/2πx)(sin(xt/2)/(t/2))²`.
    Fejer { x: f64 },
    /// `P_σ(t) = σ/(π(t² + σ²))`.
    Poisson { sigma: f64 },
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

impl KernelSpec {
    pub fn fejer(x: f64) -> Result<Self> {
        Ok(KernelSpec::Fejer { x: positive("x", x)? })
    }

    pub fn poisson(sigma: f64) -> Result<Self> {
        Ok(KernelSpec::Poisson { sigma: positive("sigma", sigma)? })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            KernelSpec::Fejer { x } => {
                if t.abs() < FEJER_SERIES_CUTOFF {
                    x / (2.0 * PI) * (1.0 - x * x * t * t / 12.0)
                } else {
                    let r = (x * t / 2.0).sin() / (t / 2.0);
                    r * r / (2.0 * PI * x)
                }
            }
            KernelSpec::Poisson { sigma } => sigma / (PI * (t * t + sigma * sigma)),
        }
    }

    /// Fourier transform with the convention `∫ f(t) e^{-itξ} dt`.
    pub fn ft(&self, t: f64) -> f64 {
        match *self {
            KernelSpec::Fejer { x } => {
                if t.abs() <= x {
                    1.0 - t.abs() / x
                } else {
                    0.0
                }
            }
            KernelSpec::Poisson { sigma } => (-t.abs() * sigma).exp(),
        }
    }

    /// `∫_{|t|>w} kernel`, exact for Poisson and accurate to `O((xw)^{-3})`
    /// for Fejér.
    pub fn tail_mass(&self, w: f64) -> f64 {
        match *self {
            KernelSpec::Fejer { x } => {
                // (1/πx)∫_w^∞ (1 - cos xt)/t² dt, with ∫_w^∞ cos(xt)/t² ≈ -sin(xw)/(xw²)
                2.0 / (PI * x) * (1.0 / w + (x * w).sin() / (x * w * w))
            }
            KernelSpec::Poisson { sigma } => 2.0 / PI * (PI / 2.0 - (w / sigma).atan()),
        }
    }

    /// Total mass by adaptive quadrature on `[-w, w]` plus the analytic tails.
    pub fn total_mass(&self, w: f64, tol: f64) -> f64 {
        let f = |t: f64| self.eval(t);
        integrate_pieces(&f, -w, w, 1.0, tol).value + self.tail_mass(w)
    }
}

pub fn kernel_eval(k: &KernelSpec, t: f64) -> f64 {
    k.eval(t)
}

pub fn kernel_ft(k: &KernelSpec, t: f64) -> f64 {
    k.ft(t)
}

/// `t ↦ Σ c e^{-ixt}` with distinct frequencies `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    terms: Vec<(f64, Complex64)>,
}

impl TrigPolynomial {
    pub fn new(terms: Vec<(f64, Complex64)>) -> Result<Self> {
        let mut xs: Vec<f64> = terms.iter().map(|t| t.0).collect();
        if xs.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("frequencies must be finite".into()));
        }
        xs.sort_by(f64::total_cmp);
        if xs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("frequencies must be distinct".into()));
        }
        Ok(TrigPolynomial { terms })
    }

    pub fn terms(&self) -> &[(f64, Complex64)] {
        &self.terms
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|&(x, c)| c * Complex64::from_polar(1.0, -x * t)).collect::<KahanSum>().value()
    }
}

/// The boundary function `t ↦ P(it)` of a Dirichlet polynomial.
impl From<&DirichletPolynomial> for TrigPolynomial {
    fn from(p: &DirichletPolynomial) -> Self {
        TrigPolynomial { terms: p.terms().to_vec() }
    }
}

/// Riesz mean of order one: `Σ_{λ_n<x} a_n (1 - λ_n/x) e^{-λ_n s}`.
pub fn riesz_mean(d: &DirichletSeries, x: f64) -> Result<DirichletPolynomial> {
    positive("x", x)?;
    riesz_mean_poly(&d.truncate(x)?, x)
}

/// Riesz mean of a polynomial; terms with `λ ≥ x` are dropped.
pub fn riesz_mean_poly(p: &DirichletPolynomial, x: f64) -> Result<DirichletPolynomial> {
    positive("x", x)?;
    DirichletPolynomial::new(p.terms().iter().filter(|t| t.0 < x).map(|&(l, a)| (l, a * (1.0 - l / x))).collect())
}

/// Evaluation route for the right-hand side `(f_ε ∗ P_σ ∗ K_x)(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvolutionMode {
    /// `Σ c e^{-iλt} e^{-λε} P̂_σ(λ) K̂_x(λ)`.
    Multiplier,
    /// Direct quadrature of `∫ f_ε(t-u) (P_σ ∗ K_x)(u) du` on `[-window, window]`.
    Quadrature { window: f64, tol: f64 },
}

impl ConvolutionMode {
    pub fn quadrature() -> Self {
        ConvolutionMode::Quadrature { window: 1e4, tol: 1e-6 }
    }
}

/// `(P_σ ∗ K_x)(u) = P_σ(u) + (1/πx)·Re[(1 - e^{ixz})/z²]` with `z = u + iσ`,
/// the harmonic extension of `K_x` to height `σ`.
pub fn poisson_fejer(sigma: f64, x: f64, u: f64) -> f64 {
    let z = Complex64::new(u, sigma);
    let w = Complex64::i() * x * z;
    // 1 - e^w without cancellation when |w| is small
    let one_minus = if w.norm() < 1e-3 {
        -(w + w * w / 2.0 + w * w * w / 6.0 + w * w * w * w / 24.0)
    } else {
        Complex64::new(1.0, 0.0) - w.exp()
    };
    KernelSpec::Poisson { sigma }.eval(u) + (one_minus / (z * z)).re / (PI * x)
}

/// `max_t |R_x(P)(σ+ε+it) - (P_ε ∗ P_σ ∗ K_x)(t)|` over the samples.
pub fn convolution_identity_residual(
    p: &DirichletPolynomial,
    sigma: f64,
    eps: f64,
    x: f64,
    t_samples: &[f64],
    mode: ConvolutionMode,
) -> Result<f64> {
    positive("sigma", sigma)?;
    positive("eps", eps)?;
    if p.terms().iter().any(|t| t.0 < 0.0) {
        return Err(Error::InvalidParameter("frequencies must be nonnegative".into()));
    }
    let riesz = riesz_mean_poly(p, x)?;
    let fejer = KernelSpec::fejer(x)?;
    let poisson = KernelSpec::poisson(sigma)?;
    let boundary = TrigPolynomial::from(&p.translate(eps));
    let rhs = |t: f64| -> Complex64 {
        match mode {
            ConvolutionMode::Multiplier => p
                .terms()
                .iter()
                .map(|&(l, c)| c * Complex64::from_polar(1.0, -l * t) * (-l * eps).exp() * poisson.ft(l) * fejer.ft(l))
                .collect::<KahanSum>()
                .value(),
            ConvolutionMode::Quadrature { window, tol } => {
                let g = |u: f64| boundary.eval(t - u) * poisson_fejer(sigma, x, u);
                let body = integrate_pieces(&g, -window, window, 1.0, tol).value;
                // only the mean term has a non-oscillating tail ~ A/u²
                let mean: Complex64 = boundary.terms().iter().filter(|t| t.0 == 0.0).map(|t| t.1).sum();
                let a = (sigma + 1.0 / x) / PI;
                body + mean * (2.0 * a / window)
            }
        }
    };
    let residuals: Vec<f64> =
        t_samples.par_iter().map(|&t| (riesz.eval(Complex64::new(sigma + eps, t)) - rhs(t)).norm()).collect();
    Ok(residuals.into_iter().fold(0.0, f64::max))
}

/// Parameters for [`uniform_abscissa_via_riesz`].
#[derive(Debug, Clone, PartialEq)]
pub struct RieszParams {
    pub scan: ScanParams,
    pub grid: Grid,
}

impl Default for RieszParams {
    fn default() -> Self {
        RieszParams { scan: ScanParams::with_n_max(4096), grid: Grid::new(100.0, 0.05).unwrap() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RieszScan {
    pub estimate: AbscissaEstimate,
    /// `(x, sup_t |R_x(D)(it)|)`.
    pub sup_norms: Vec<(f64, f64)>,
}

/// Upper-bound estimate of `σ_u` from the growth of `sup_{Re s>0}|R_x(D)(s)|`,
/// computed on the line `σ = 0`.
pub fn uniform_abscissa_via_riesz(d: &DirichletSeries, params: &RieszParams) -> Result<RieszScan> {
    let xs = match &params.scan.x_points {
        Some(xs) => xs.clone(),
        None => default_x_points(d, params.scan.n_max)?,
    };
    if xs.is_empty() {
        return Err(Error::EmptyScan("no truncation points".into()));
    }
    if xs.iter().any(|&x| !(x > 0.0)) || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("truncation points must be positive and increasing".into()));
    }
    let top = params.scan.n_max.unwrap_or(d.freq.n_max());
    let full = d.prefix(top)?;
    let sup_norms: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| Ok((x, riesz_mean_poly(&full, x)?.sup_norm_line(0.0, &params.grid))))
        .collect::<Result<_>>()?;
    let lognorms: Vec<f64> = sup_norms.iter().map(|p| p.1.ln()).collect();
    let estimate = estimate_from_lognorms(
        &xs,
        &lognorms,
        params.scan.window,
        d.is_polynomial(),
        "upper bound for sigma_u via Riesz means",
    )?;
    Ok(RieszScan { estimate, sup_norms })
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// `(1/2T) ∫_{-T}^{T} f(σ+it) e^{(σ+it)x} dt` in closed form for
/// `f(σ+it) = Σ c_n e^{-λ_n(σ+it)}`: each term contributes
/// `c_n e^{(x-λ_n)σ} sinc((x-λ_n)T)`.
pub fn bohr_coefficient(f: &TrigPolynomial, sigma: f64, x: f64, t_half: f64) -> Result<Complex64> {
    positive("T", t_half)?;
    Ok(f.terms()
        .iter()
        .map(|&(l, c)| if l == x { c } else { c * ((x - l) * sigma).exp() * sinc((x - l) * t_half) })
        .collect::<KahanSum>()
        .value())
}

/// Bound on `|bohr_coefficient - c_x|` (with `c_x = 0` off the spectrum):
/// `Σ_{λ_n≠x} |c_n| e^{(x-λ_n)σ} / (|x-λ_n| T)`.
pub fn bohr_coefficient_error_bound(f: &TrigPolynomial, sigma: f64, x: f64, t_half: f64) -> f64 {
    f.terms()
        .iter()
        .filter(|t| t.0 != x)
        .map(|&(l, c)| c.norm() * ((x - l) * sigma).exp() / ((x - l).abs() * t_half))
        .sum()
}

/// The same time average by adaptive quadrature; a cross-check only.
pub fn bohr_coefficient_quadrature(f: &TrigPolynomial, sigma: f64, x: f64, t_half: f64) -> Complex64 {
    let g = |t: f64| {
        let s = Complex64::new(sigma, t);
        let value: Complex64 = f.terms().iter().map(|&(l, c)| c * (-l * s).exp()).sum();
        value * (s * x).exp()
    };
    integrate_pieces(&g, -t_half, t_half, 1.0, 1e-10).value / (2.0 * t_half)
}

/// CSV with columns `t, K, P, K_hat, P_hat`.
pub fn kernel_profile_csv(x: f64, sigma: f64, ts: &[f64]) -> Result<String> {
    let k = KernelSpec::fejer(x)?;
    let p = KernelSpec::poisson(sigma)?;
    let mut out = String::from("t,K,P,K_hat,P_hat\n");
    for &t in ts {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt12(t),
            fmt12(k.eval(t)),
            fmt12(p.eval(t)),
            fmt12(k.ft(t)),
            fmt12(p.ft(t))
        ));
    }
    Ok(out)
}

/// CSV with columns `x, sup_norm, lognorm_over_x`.
pub fn riesz_scan_csv(scan: &RieszScan) -> String {
    let mut out = String::from("x,sup_norm,lognorm_over_x\n");
    for &(x, v) in &scan.sup_norms {
        out.push_str(&format!("{},{},{}\n", fmt12(x), fmt12(v), fmt12(v.ln() / x)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frequency::Frequency;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kernel_values() {
        assert!((KernelSpec::poisson(1.0).unwrap().eval(0.0) - 1.0 / PI).abs() < 1e-16);
        assert!((KernelSpec::fejer(2.0).unwrap().eval(0.0) - 1.0 / PI).abs() < 1e-16);
        let k = KernelSpec::fejer(2.0).unwrap();
        // continuity across the series cutoff
        assert!((k.eval(0.99e-8) - k.eval(1.01e-8)).abs() < 1e-14);
        assert_eq!(k.ft(0.0), 1.0);
        assert_eq!(k.ft(3.0), 0.0);
        assert_eq!(KernelSpec::poisson(2.0).unwrap().ft(1.0), (-2.0f64).exp());
        assert!(KernelSpec::fejer(0.0).is_err());
    }

    #[test]
    fn poisson_fejer_matches_numeric_convolution() {
        let (sigma, x) = (0.5, 2.0);
        let k = KernelSpec::fejer(x).unwrap();
        let p = KernelSpec::poisson(sigma).unwrap();
        for u in [0.0, 0.3, -1.7, 4.0] {
            let f = |v: f64| p.eval(u - v) * k.eval(v);
            let num = integrate_pieces(&f, -3000.0, 3000.0, 1.0, 1e-12).value;
            assert!((num - poisson_fejer(sigma, x, u)).abs() < 2e-4, "u = {u}");
        }
    }

    #[test]
    fn riesz_mean_weights() {
        let d = DirichletSeries::ones(Frequency::log_n());
        let r = riesz_mean(&d, 3f64.ln()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.terms()[0].1, c(1.0));
        assert!((r.terms()[1].1.re - 0.369_070_246_428_542_6).abs() < 1e-12);
        let f = Frequency::explicit(vec![0.5, 1.0]).unwrap();
        assert!(riesz_mean(&DirichletSeries::ones(f), 0.5).unwrap().is_empty());
    }

    #[test]
    fn convolution_identity_both_routes() {
        let p =
            DirichletPolynomial::new(vec![(0.0, c(1.0)), (2f64.ln(), c(-0.5)), (3f64.ln(), Complex64::new(0.2, 0.3))])
                .unwrap();
        let ts = [0.0, 0.7, -2.5];
        let m = convolution_identity_residual(&p, 0.5, 0.5, 2.0, &ts, ConvolutionMode::Multiplier).unwrap();
        assert!(m < 1e-12);
        let q = convolution_identity_residual(&p, 0.5, 0.5, 2.0, &ts, ConvolutionMode::quadrature()).unwrap();
        assert!(q < 1e-4, "{q}");
    }

    #[test]
    fn bohr_coefficients_closed_form() {
        let f = TrigPolynomial::new(vec![(0.25, Complex64::new(0.3, 0.4)), (0.5, c(-0.7))]).unwrap();
        assert_eq!(bohr_coefficient(&f, 0.0, 0.25, 10.0).unwrap(), Complex64::new(0.3, 0.4) + c(-0.7) * sinc(-2.5));
        let x = 1.3;
        let v = bohr_coefficient(&f, 0.5, x, 1e4).unwrap();
        assert!(v.norm() <= bohr_coefficient_error_bound(&f, 0.5, x, 1e4));
        let q = bohr_coefficient_quadrature(&f, 0.5, 0.5, 50.0);
        assert!((q - bohr_coefficient(&f, 0.5, 0.5, 50.0).unwrap()).norm() < 1e-9);
    }
}
