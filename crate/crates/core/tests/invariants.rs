use dirichlet_core::koethe::KoetheMatrix;
use dirichlet_core::series::{CoefficientSource, DirichletPolynomial, DirichletSeries};
use dirichlet_core::spaces::AdmissibleSpace;
use dirichlet_core::summation::{
    bohr_coefficient, bohr_coefficient_error_bound, convolution_identity_residual, riesz_mean_poly, ConvolutionMode,
    KernelSpec, TrigPolynomial,
};
use dirichlet_core::Frequency;
use num_complex::Complex64;
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Strictly increasing frequencies in `[0, hi)` with gaps at least `gap`.
fn frequencies(max_len: usize, hi: f64, gap: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..hi, 1..=max_len).prop_map(move |mut v| {
        v.sort_by(f64::total_cmp);
        let mut out: Vec<f64> = Vec::with_capacity(v.len());
        for x in v {
            if out.last().is_none_or(|&l| x - l >= gap) {
                out.push(x);
            }
        }
        out
    })
}

fn polynomial(max_len: usize, hi: f64) -> impl Strategy<Value = DirichletPolynomial> {
    frequencies(max_len, hi, 1e-3)
        .prop_flat_map(|ls| {
            let n = ls.len();
            (Just(ls), prop::collection::vec(coefficient(), n))
        })
        .prop_map(|(ls, cs)| DirichletPolynomial::new(ls.into_iter().zip(cs).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_transforms_are_even_and_bounded(x in 0.01f64..50.0, sigma in 0.01f64..50.0, t in -100.0f64..100.0) {
        let k = KernelSpec::fejer(x).unwrap();
        let p = KernelSpec::poisson(sigma).unwrap();
        prop_assert!((0.0..=1.0).contains(&k.ft(t)));
        prop_assert_eq!(k.ft(t), k.ft(-t));
        prop_assert!((p.ft(t) - (-sigma * t.abs()).exp()).abs() < 1e-15);
        prop_assert!(k.eval(t) >= 0.0 && p.eval(t) > 0.0);
        prop_assert!(k.eval(t) <= k.eval(0.0) * (1.0 + 1e-12));
    }

    #[test]
    fn riesz_mean_shrinks_coefficients(p in polynomial(10, 8.0), x in 0.1f64..10.0) {
        let r = riesz_mean_poly(&p, x).unwrap();
        prop_assert!(r.terms().iter().all(|t| t.0 < x));
        for (l, c) in r.terms() {
            let orig = p.terms().iter().find(|t| t.0 == *l).unwrap().1;
            prop_assert!(c.norm() <= orig.norm());
        }
    }

    #[test]
    fn multiplier_route_matches_riesz_mean(p in polynomial(8, 5.0), sigma in 0.1f64..2.0, x in 0.5f64..8.0, t in -30.0f64..30.0) {
        let r = convolution_identity_residual(&p, sigma, 0.1, x, &[t], ConvolutionMode::Multiplier).unwrap();
        let scale = p.terms().iter().map(|t| t.1.norm()).sum::<f64>().max(1.0);
        prop_assert!(r < 1e-12 * scale, "residual {}", r);
    }

    #[test]
    fn bohr_coefficient_within_bound(p in polynomial(6, 5.0), sigma in -1.0f64..1.0, t_half in 10.0f64..1e4, pick in 0usize..6) {
        let f = TrigPolynomial::new(p.terms().to_vec()).unwrap();
        let (x, c) = p.terms()[pick % p.len()];
        let got = bohr_coefficient(&f, sigma, x, t_half).unwrap();
        let bound = bohr_coefficient_error_bound(&f, sigma, x, t_half);
        prop_assert!((got - c).norm() <= bound * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn lp_norms_decrease_in_p(p in polynomial(12, 10.0), a in 1.0f64..6.0, b in 1.0f64..6.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let n_lo = AdmissibleSpace::lp(lo).unwrap().norm(&p);
        let n_hi = AdmissibleSpace::lp(hi).unwrap().norm(&p);
        let n_c0 = AdmissibleSpace::C0.norm(&p);
        prop_assert!(n_hi <= n_lo * (1.0 + 1e-12));
        prop_assert!(n_c0 <= n_hi * (1.0 + 1e-12));
        prop_assert!(AdmissibleSpace::Sigma.norm(&p) <= AdmissibleSpace::lp(1.0).unwrap().norm(&p) * (1.0 + 1e-12));
    }

    #[test]
    fn monomials_have_unit_norm(l in 0.0f64..20.0, phase in 0.0f64..6.3) {
        let m = DirichletPolynomial::monomial(l, Complex64::from_polar(1.0, phase));
        for space in [AdmissibleSpace::lp(1.0).unwrap(), AdmissibleSpace::lp(2.5).unwrap(), AdmissibleSpace::C0, AdmissibleSpace::Sigma] {
            prop_assert!((space.norm(&m) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn translations_compose(beta in 0.0f64..2.0, a in -2.0f64..2.0, b in -2.0f64..2.0, n in 1u64..500) {
        let d = DirichletSeries::new(Frequency::log_n(), CoefficientSource::power(beta).unwrap(), "");
        let lhs = d.translate(a).translate(b).coefficient(n).unwrap();
        let rhs = d.translate(a + b).coefficient(n).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn series_json_round_trips(values in prop::collection::vec(coefficient(), 1..20), beta in 0.0f64..2.0, shift in -1.0f64..1.0) {
        let coeffs = CoefficientSource::explicit(values).with_beta(beta).unwrap();
        let d = DirichletSeries::new(Frequency::log_n(), coeffs, "p").translate(shift);
        let back: DirichletSeries = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        prop_assert_eq!(back.coefficient(3).ok(), d.coefficient(3).ok());
        prop_assert_eq!(back.support_len(), d.support_len());
    }

    #[test]
    fn explicit_frequency_round_trips(values in frequencies(30, 100.0, 1e-6)) {
        let f = Frequency::explicit(values.clone()).unwrap();
        prop_assert_eq!(f.materialize(values.len()).unwrap(), values.clone());
        let back: Frequency = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back.materialize(values.len()).unwrap(), values);
    }

    #[test]
    fn koethe_axioms_hold(values in frequencies(40, 50.0, 1e-6), k_max in 1u32..12) {
        let n = values.len();
        let a = KoetheMatrix::new(Frequency::explicit(values).unwrap());
        prop_assert_eq!(a.check_axioms(n, k_max).unwrap(), None);
    }

    #[test]
    fn non_monotone_input_is_rejected(mut values in prop::collection::vec(0.0f64..10.0, 2..20), i in 0usize..19) {
        let i = i % (values.len() - 1);
        values[i + 1] = values[i];
        prop_assert!(Frequency::explicit(values).is_err());
    }
}
