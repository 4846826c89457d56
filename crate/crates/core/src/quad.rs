//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Values the integrator can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

fn gk15<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod = kronrod + pair * w;
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).magnitude();
    (value, err)
}

/// Adaptive bisection until the Kronrod/Gauss difference on each piece is
/// below its share of `tol`, or `max_depth` is reached.
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> QuadResult<T> {
    let mut out = QuadResult { value: T::zero(), error: 0.0, evaluations: 0 };
    let mut stack = vec![(a, b, tol, 0u32)];
    while let Some((lo, hi, piece_tol, depth)) = stack.pop() {
        let (v, e) = gk15(f, lo, hi);
        out.evaluations += 15;
        if e <= piece_tol || depth >= max_depth {
            out.value = out.value + v;
            out.error += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, 0.5 * piece_tol, depth + 1));
            stack.push((lo, mid, 0.5 * piece_tol, depth + 1));
        }
    }
    out
}

/// Splits `[a, b]` into pieces no longer than `piece` and integrates each
/// adaptively; suited to long oscillatory windows.
pub fn integrate_pieces<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64, piece: f64, tol: f64) -> QuadResult<T> {
    let count = ((b - a) / piece).ceil().max(1.0) as usize;
    let width = (b - a) / count as f64;
    let piece_tol = tol / count as f64;
    let mut out = QuadResult { value: T::zero(), error: 0.0, evaluations: 0 };
    for i in 0..count {
        let lo = a + width * i as f64;
        let hi = if i + 1 == count { b } else { lo + width };
        let r = integrate(f, lo, hi, piece_tol, 30);
        out.value = out.value + r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(&|x: f64| x.powi(6) - 2.0 * x, 0.0, 2.0, 1e-12, 10);
        assert!((r.value - (128.0 / 7.0 - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_window() {
        let r = integrate_pieces(&|x: f64| (3.0 * x).cos(), 0.0, 100.0, 1.0, 1e-12);
        assert!((r.value - (300.0f64).sin() / 3.0).abs() < 1e-11);
    }

    #[test]
    fn complex_integrand() {
        let r = integrate(&|x: f64| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, 1e-13, 20);
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }
}
