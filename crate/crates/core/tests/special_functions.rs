use casimir_core::special::{
    debye_phi, debye_ratio, riccati_e, riccati_s, small_arg_e, small_arg_s, wronskian_defect, DebyeOrder,
    DebyeParams, RiccatiTable,
};
use proptest::prelude::*;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| (lo.ln() + (hi / lo).ln() * k as f64 / (n - 1) as f64).exp())
        .collect()
}

#[test]
fn wronskian_over_grid() {
    let mut worst = 0.0f64;
    for x in log_grid(1e-3, 50.0, 60) {
        for l in 0..=80 {
            worst = worst.max(wronskian_defect(l, x).unwrap().abs());
        }
    }
    assert!(worst <= 1e-12, "worst defect {worst:e}");
}

#[test]
fn positivity_and_monotonicity() {
    let xs = log_grid(1e-2, 80.0, 120);
    for l in [0usize, 1, 3, 10, 40] {
        let mut prev_s = 0.0;
        let mut prev_e = f64::INFINITY;
        for &x in &xs {
            let t = RiccatiTable::new(x, l).unwrap();
            let (ls, le) = (t.ln_s(l), t.ln_e(l));
            assert!(t.log_deriv_s(l) > 0.0 && t.log_deriv_e(l) < 0.0);
            assert!(ls > prev_s || prev_s == 0.0, "s_{l} not increasing at {x}");
            assert!(le < prev_e, "e_{l} not decreasing at {x}");
            prev_s = ls;
            prev_e = le;
        }
    }
}

#[test]
fn large_argument_asymptotics() {
    // s_l(y) ~ e^y / 2 and e_l(y) ~ e^-y with relative corrections ~ l(l+1) / 2y,
    // so 1% needs y > 50 l(l+1) rather than a fixed multiple of nu.
    for l in [0usize, 1, 3, 10] {
        let y = (60.0 * (l * (l + 1)) as f64).max(10.0 * (l as f64 + 0.5));
        let s = riccati_s(l, y).unwrap();
        let e = riccati_e(l, y).unwrap();
        let ds = (s.ln_value() - (0.5f64.ln() + y)).exp() - 1.0;
        let de = (e.ln_value() + y).exp() - 1.0;
        assert!(ds.abs() <= 0.01 && de.abs() <= 0.01, "l={l} y={y}: {ds} {de}");
        let bound = (l * (l + 1)) as f64 / y + (-2.0 * y).exp();
        assert!(ds.abs() <= bound && de.abs() <= bound);
    }
}

#[test]
fn small_argument_limit_of_ratio() {
    let (a, b) = (1.0, 1.7);
    for l in 1..6usize {
        let x = 1e-5;
        let y = b * x / a;
        let exact = {
            let tx = RiccatiTable::new(x, l).unwrap();
            let ty = RiccatiTable::new(y, l).unwrap();
            (tx.ln_s(l) + ty.ln_e(l) - tx.ln_e(l) - ty.ln_s(l)).exp()
        };
        let sigma = (a / b as f64).powi(2 * l as i32 + 1);
        assert!(((exact - sigma) / sigma).abs() < 1e-9);
        let lead = small_arg_s(l, x) * small_arg_e(l, y) / (small_arg_e(l, x) * small_arg_s(l, y));
        assert!(((lead - sigma) / sigma).abs() < 1e-13);
    }
}

#[test]
fn debye_first_order_examples() {
    let p = DebyeParams::new(0.1, 1.0, 2.5).unwrap();
    assert!((debye_phi(&p, DebyeOrder::First) - 0.2 * 2f64.sqrt()).abs() < 1e-15);
    assert!(debye_phi(&p, DebyeOrder::Second) < debye_phi(&p, DebyeOrder::First));
}

#[test]
fn debye_error_scales_like_one_over_nu_at_fixed_xi_nu_product() {
    // With xi nu held fixed the truncated exponent is also O(1/nu) accurate.
    let z = 0.5;
    let mut errs = Vec::new();
    for l in [20usize, 80, 320] {
        let nu = l as f64 + 0.5;
        let xi = 1.0 / nu;
        let x = nu * z;
        let tx = RiccatiTable::new(x, l).unwrap();
        let ty = RiccatiTable::new((1.0 + xi) * x, l).unwrap();
        let exact = (tx.ln_s(l) + ty.ln_e(l) - tx.ln_e(l) - ty.ln_s(l)).exp();
        let p = DebyeParams::new(xi, z, nu).unwrap();
        errs.push(((debye_ratio(&p, DebyeOrder::First) - exact) / exact).abs() * nu);
    }
    assert!(errs.iter().all(|&c| c < 2.0), "{errs:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wronskian_holds_everywhere(l in 0usize..200, lx in -3.0f64..3.0) {
        let x = 10f64.powf(lx);
        prop_assert!(wronskian_defect(l, x).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ratio_lies_in_unit_interval(l in 0usize..150, lx in -3.0f64..2.5, gap in 1e-3f64..3.0) {
        let x = 10f64.powf(lx);
        let y = x * (1.0 + gap);
        let tx = RiccatiTable::new(x, l).unwrap();
        let ty = RiccatiTable::new(y, l).unwrap();
        let r = (tx.ln_s(l) + ty.ln_e(l) - tx.ln_e(l) - ty.ln_s(l)).exp();
        prop_assert!(r > 0.0 || (tx.ln_s(l) + ty.ln_e(l) - tx.ln_e(l) - ty.ln_s(l)) < -700.0);
        prop_assert!(r < 1.0);
    }

    #[test]
    fn table_and_single_evaluation_agree(l in 0usize..60, extra in 1usize..200, lx in -2.0f64..2.0) {
        let x = 10f64.powf(lx);
        let big = RiccatiTable::new(x, l + extra).unwrap();
        let s = riccati_s(l, x).unwrap();
        let e = riccati_e(l, x).unwrap();
        prop_assert!((big.ln_s(l) - s.ln_value()).abs() < 1e-12 * s.ln_value().abs().max(1.0));
        prop_assert!((big.ln_e(l) - e.ln_value()).abs() < 1e-12 * e.ln_value().abs().max(1.0));
    }
}
