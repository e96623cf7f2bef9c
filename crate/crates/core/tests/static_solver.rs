use casimir_core::quadrature::{integrate, QuadOptions};
use casimir_core::static_solver::{
    dilute_overlap_quadrature, dilute_overlap_series, dilute_static_coefficient, static_coupling,
    static_coupling_derivative, static_energy_derivative, static_free_energy,
};
use casimir_core::{Geometry, SumControl};

fn ctl(tol: f64) -> SumControl {
    SumControl::with_tol(tol)
}

#[test]
fn conductor_at_tenth_matches_brute_force_sum() {
    let g = Geometry::new(1.0, 10.0).unwrap();
    let r = static_free_energy(&g, f64::INFINITY, &ctl(1e-15)).unwrap();
    // half of the frozen mpmath value of sum (2l+1) ln(1 - 0.1^(2l+1))
    assert!((r.value + 0.5 * 0.003052210362102443603711642).abs() < 1e-18);
    let lead = 1.5 * (-1e-3f64).ln_1p();
    assert!(((r.value - lead) / lead).abs() < 0.02);
}

#[test]
fn dilute_limit_of_free_energy() {
    let g = Geometry::new(1.0, 1.6).unwrap();
    let coef = dilute_static_coefficient(&g, 400);
    // the first correction is -(eps - 1) relative, from the denominators of A_l
    for de in [1e-3, 5e-5] {
        let f = static_free_energy(&g, 1.0 + de, &ctl(1e-12)).unwrap().value;
        let rel = f / (de * de) / coef - 1.0;
        assert!((rel + de).abs() < 0.1 * de, "{rel:e}");
    }
    let de = 5e-5;
    let f = static_free_energy(&g, 1.0 + de, &ctl(1e-12)).unwrap().value;
    assert!((f / (de * de) / coef - 1.0).abs() < 1e-4);

    // residual is third order in eps - 1
    let de = 1e-2;
    let f = static_free_energy(&g, 1.0 + de, &ctl(1e-12)).unwrap().value;
    let resid = (f - coef * de * de).abs();
    assert!(resid < 2.0 * de.powi(3) * coef.abs(), "{resid:e}");
}

#[test]
fn derivative_is_twice_dilute_value() {
    let g = Geometry::new(1.0, 1.4).unwrap();
    let de = 1e-3;
    let d = static_energy_derivative(&g, 1.0 + de, &ctl(1e-12)).unwrap().value;
    let f = static_free_energy(&g, 1.0 + de, &ctl(1e-12)).unwrap().value;
    assert!((d / f - 2.0).abs() < 5e-3);
}

#[test]
fn coupling_integration_reproduces_free_energy() {
    for (eps, b) in [(2.0, 2.0), (10.0, 1.3), (f64::INFINITY, 1.5)] {
        let g = Geometry::new(1.0, b).unwrap();
        let c = ctl(1e-13);
        let integral = integrate(
            |lambda| Ok(static_coupling_derivative(&g, eps, lambda, &c).unwrap().value),
            0.0,
            1.0,
            QuadOptions::relative(1e-11),
        )
        .unwrap()
        .value;
        let f = static_free_energy(&g, eps, &c).unwrap().value;
        assert!(((integral - f) / f).abs() < 1e-9, "eps={eps}: {integral} vs {f}");
    }
}

#[test]
fn attraction_and_monotone_in_b() {
    for eps in [1.2, 3.0, 50.0, f64::INFINITY] {
        let mut prev = f64::NEG_INFINITY;
        for k in 1..40 {
            let g = Geometry::new(1.0, 1.0 + 0.05 * k as f64).unwrap();
            let f = static_free_energy(&g, eps, &ctl(1e-10)).unwrap();
            assert!(f.value < 0.0);
            assert!(f.value > prev, "eps={eps} b={}", g.b());
            assert!(f.tail_estimate <= 1e-10 * f.value.abs());
            prev = f.value;
        }
    }
}

#[test]
fn every_log_argument_is_positive() {
    let g = Geometry::new(1.0, 1.001).unwrap();
    for l in 1..3000 {
        let u = static_coupling(1e6, l).unwrap() * g.sigma(l);
        assert!(u < 1.0);
    }
}

#[test]
fn dilute_series_matches_direct_quadrature() {
    for b in [5.0, 2.0, 1.25] {
        let g = Geometry::new(1.0, b).unwrap();
        let series = dilute_overlap_series(&g, 2000);
        let quad = dilute_overlap_quadrature(&g, 1e-10).unwrap();
        assert!(((series - quad) / quad).abs() < 1e-6, "a/b={}: {series} {quad}", g.ratio());
    }
}

#[test]
fn dilute_series_frozen_values_and_monotone_partial_sums() {
    // mpmath, 25 digits
    for (b, expect) in [(5.0, 0.1510831829693671649994526), (2.0, 3.696528515104463612556763), (1.25, 59.38109667380719484695776)] {
        let g = Geometry::new(1.0, b).unwrap();
        assert!((dilute_overlap_series(&g, 3000) / expect - 1.0).abs() < 1e-12);
    }
    let g = Geometry::new(1.0, 1.5).unwrap();
    let mut prev = 0.0;
    for l_max in 1..40 {
        let s = dilute_overlap_series(&g, l_max);
        assert!(s > prev);
        prev = s;
    }
}
