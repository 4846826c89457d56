//! Small numerical helpers shared by the analysis modules.

use num_complex::Complex64;

/// Compensated (Kahan) accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: Complex64,
    carry: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: Complex64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

impl FromIterator<Complex64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Golden-section search for a maximum of a unimodal function on `[lo, hi]`.
/// Returns `(argmax, max)`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, iterations: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iterations {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Least-squares fit of `y ≈ rate·x + shape·ln x + offset`.
///
/// Returns `None` if fewer than three points are given or the normal
/// equations are singular.
pub fn fit_growth(points: &[(f64, f64)]) -> Option<GrowthFit> {
    if points.len() < 3 || points.iter().any(|&(x, _)| x <= 0.0) {
        return None;
    }
    // centre the columns to keep the normal equations well conditioned
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_l = points.iter().map(|p| p.0.ln()).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let (mut sxx, mut sxl, mut sll, mut sxy, mut sly) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - mean_x;
        let dl = x.ln() - mean_l;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxl += dx * dl;
        sll += dl * dl;
        sxy += dx * dy;
        sly += dl * dy;
    }
    let det = sxx * sll - sxl * sxl;
    if det.abs() <= f64::EPSILON * sxx * sll || !det.is_finite() {
        return None;
    }
    let rate = (sxy * sll - sly * sxl) / det;
    let shape = (sly * sxx - sxy * sxl) / det;
    let offset = mean_y - rate * mean_x - shape * mean_l;
    Some(GrowthFit { rate, shape, offset })
}

/// Least-squares slope of `y ≈ slope·x + offset`; `None` below two points or
/// for a degenerate abscissa set.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let (sxx, sxy) = points
        .iter()
        .fold((0.0, 0.0), |(sxx, sxy), &(x, y)| (sxx + (x - mean_x).powi(2), sxy + (x - mean_x) * (y - mean_y)));
    (sxx > 0.0).then(|| sxy / sxx)
}

/// [`fit_growth`] with `shape ≥ 0`: a negative shape is replaced by the best
/// pure exponential `y ≈ rate·x + offset`.
pub fn fit_growth_nonneg_shape(points: &[(f64, f64)]) -> Option<GrowthFit> {
    let fit = fit_growth(points)?;
    if fit.shape >= 0.0 {
        return Some(fit);
    }
    let rate = fit_slope(points)?;
    let m = points.len() as f64;
    let offset = points.iter().map(|&(x, y)| y - rate * x).sum::<f64>() / m;
    Some(GrowthFit { rate, shape: 0.0, offset })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub rate: f64,
    pub shape: f64,
    pub offset: f64,
}

/// Formats a float with `digits` significant digits, as used by every text
/// and CSV emitter.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..16).contains(&exp) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// 12 significant digits.
pub fn fmt12(x: f64) -> String {
    fmt_sig(x, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_on_cancellation() {
        let mut acc = KahanSum::new();
        acc.add(Complex64::new(1.0, 0.0));
        for _ in 0..10_000 {
            acc.add(Complex64::new(1e-16, 0.0));
        }
        assert!((acc.value().re - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, y) = golden_section_max(|t| -(t - 0.3) * (t - 0.3) + 2.0, -1.0, 1.0, 80);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((y - 2.0).abs() < 1e-14);
    }

    #[test]
    fn growth_fit_recovers_coefficients() {
        let pts: Vec<(f64, f64)> = (1..20)
            .map(|i| {
                let x = i as f64 * 0.7;
                (x, 0.4 * x - 1.5 * x.ln() + 2.0)
            })
            .collect();
        let fit = fit_growth(&pts).unwrap();
        assert!((fit.rate - 0.4).abs() < 1e-10);
        assert!((fit.shape + 1.5).abs() < 1e-9);
        assert!((fit.offset - 2.0).abs() < 1e-9);
    }

    #[test]
    fn growth_fit_rejects_short_input() {
        assert!(fit_growth(&[(1.0, 1.0), (2.0, 2.0)]).is_none());
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt12(1.0), "1");
        assert_eq!(fmt12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt12(-0.5), "-0.5");
        assert_eq!(fmt12(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt12(1.5e-9), "1.50000000000e-9");
    }
}
