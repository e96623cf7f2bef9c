//! Narrow-slit, high-temperature and parallel-plate limits.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result, SumKind};
use crate::geometry::{Geometry, ThermalState};
use crate::matsubara::{angular_sum, frequency_integral, matsubara_sum, NTerm};
use crate::permittivity::PermittivityModel;
use crate::quadrature::{integrate, integrate_to_infinity, QuadOptions};
use crate::summation::{SeriesResult, SumControl, TailTracker};

/// Riemann zeta(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_285_399_738_161_511_449_990_8;
/// Riemann zeta(4) = pi^4 / 90.
pub const ZETA_4: f64 = 1.082_323_233_711_138_191_516_003_696_541_167_902_8;

/// Integrand data for the plate formulas at one Matsubara frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateParams {
    pub d: f64,
    pub q: f64,
    pub kappa: f64,
    pub a_n: f64,
    pub b_n: f64,
}

impl PlateParams {
    /// `kappa = sqrt(1 + (eps - 1) zeta^2 / q^2)`,
    /// `A = ((eps - kappa)/(eps + kappa))^2`, `B = ((1 - kappa)/(1 + kappa))^2`.
    pub fn new(d: f64, q: f64, zeta: f64, eps: f64) -> Self {
        if eps.is_infinite() {
            return Self { d, q, kappa: f64::INFINITY, a_n: 1.0, b_n: 1.0 };
        }
        let u = if q > 0.0 { zeta / q } else { 0.0 };
        let kappa = (1.0 + (eps - 1.0) * u * u).sqrt();
        let a = (eps - kappa) / (eps + kappa);
        let b = (1.0 - kappa) / (1.0 + kappa);
        Self { d, q, kappa, a_n: a * a, b_n: b * b }
    }

    /// `ln(1 - A e^{-2qd}) + ln(1 - B e^{-2qd})`.
    pub fn log_factor(&self) -> f64 {
        let e = (-2.0 * self.q * self.d).exp();
        (-self.a_n * e).ln_1p() + (-self.b_n * e).ln_1p()
    }
}

fn check_gap(d: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(invalid(format!("plate gap must be positive, got {d}")));
    }
    Ok(())
}

fn check_finite_t(th: &ThermalState) -> Result<()> {
    if th.is_zero() {
        return Err(invalid("beta F diverges at zero temperature; use the energy form"));
    }
    Ok(())
}

/// `sum_{l >= 1} nu^p exp(-nu phi)`, `nu = l + 1/2`.
pub fn nu_power_sum(p: i32, phi: f64) -> f64 {
    let mut tracker = TailTracker::new(1e-15);
    let mut l = 0u64;
    loop {
        l += 1;
        let nu = l as f64 + 0.5;
        if tracker.push(nu.powi(p) * (-nu * phi).exp()) {
            return tracker.value();
        }
    }
}

/// `int_0^inf cosh u ln(1 - exp(-c cosh u)) du`, i.e. the `z`-integral
/// `int_0^inf ln(1 - exp(-c sqrt(1 + z^2))) dz` after `z = sinh u`.
fn slit_z_integral(c: f64, tol: f64) -> Result<f64> {
    let upper = (1.0 + 40.0 / c).acosh();
    let r = integrate(
        |u| Ok(u.cosh() * (-(-c * u.cosh()).exp()).ln_1p()),
        0.0,
        upper,
        QuadOptions::relative(tol),
    )?;
    Ok(r.value)
}

/// `E = (2 / pi a) sum_l nu^2 int_0^inf dz ln(1 - exp(-2 xi nu sqrt(1 + z^2)))`.
pub fn narrow_slit_energy_t0(g: &Geometry, ctl: &SumControl) -> Result<f64> {
    ctl.validate()?;
    let xi = g.xi();
    let mut tracker = TailTracker::new(ctl.tol);
    for l in 1..=ctl.l_cap {
        let nu = l as f64 + 0.5;
        let term = nu * nu * slit_z_integral(2.0 * xi * nu, 1e-3 * ctl.tol)?;
        if tracker.push(term) {
            return Ok(2.0 / (PI * g.a()) * tracker.value());
        }
    }
    Err(Error::NonConvergence {
        kind: SumKind::AngularMomentum { n: 0 },
        cap: ctl.l_cap,
        tail: tracker.tail,
    })
}

/// Closed form of [`narrow_slit_energy_t0`] as `xi -> 0`: `-pi^3 / (180 a xi^3)`.
pub fn narrow_slit_energy_closed_form(g: &Geometry) -> f64 {
    -PI.powi(3) / (180.0 * g.a() * g.xi().powi(3))
}

fn slit_terms(xi: f64, nt: f64, weight: f64, l_max: usize) -> Vec<f64> {
    (1..=l_max)
        .map(|l| {
            let nu = l as f64 + 0.5;
            weight * nu * (-(-2.0 * xi * nu.hypot(nt)).exp()).ln_1p()
        })
        .collect()
}

fn slit_hint(xi: f64) -> usize {
    (20.0 / xi).ceil().min(1e6) as usize
}

/// `beta F = 4 sum'_n sum_l nu ln(1 - exp(-2 xi sqrt(nu^2 + n^2 t^2)))`.
pub fn narrow_slit_free_energy(g: &Geometry, th: &ThermalState, ctl: &SumControl) -> Result<SeriesResult> {
    ctl.validate()?;
    check_finite_t(th)?;
    let xi = g.xi();
    let t = th.nondimensional(g.a());
    let zero = angular_sum(0, slit_hint(xi), ctl.tol, ctl.l_cap, |l_max| Ok(slit_terms(xi, 0.0, 2.0, l_max)))?;
    matsubara_sum(zero, ctl, |n| {
        angular_sum(n, slit_hint(xi), ctl.tol, ctl.l_cap, |l_max| {
            Ok(slit_terms(xi, n as f64 * t, 4.0, l_max))
        })
    })
}

/// High-temperature narrow-slit limit `beta F = -zeta(3) / (2 xi^2)`.
pub fn high_t_slit_closed_form(g: &Geometry) -> f64 {
    -ZETA_3 / (2.0 * g.xi() * g.xi())
}

/// High-temperature plate limit per unit area, `beta F / A = -zeta(3) / (8 pi d^2)`.
pub fn high_t_plate_per_area(d: f64) -> f64 {
    -ZETA_3 / (8.0 * PI * d * d)
}

/// `int_{w0}^inf w ln(1 - A e^{-w}) ... dw` for `w = 2 q d`.
fn plate_integral(d: f64, zeta: f64, eps: f64, tol: f64) -> Result<f64> {
    let w0 = 2.0 * zeta * d;
    let r = integrate_to_infinity(
        |w| {
            let q = w / (2.0 * d);
            Ok(w * PlateParams::new(d, q, zeta, eps).log_factor())
        },
        w0,
        QuadOptions::relative(tol),
    )?;
    // q dq = w dw / (4 d^2)
    Ok(r.value / (4.0 * d * d))
}

fn plate_sum(d: f64, pm: &PermittivityModel, th: &ThermalState, ctl: &SumControl) -> Result<SeriesResult> {
    ctl.validate()?;
    check_gap(d)?;
    check_finite_t(th)?;
    pm.validate()?;
    let quad_tol = 1e-3 * ctl.tol;
    let term = |n: u64| -> Result<NTerm> {
        let zeta = th.zeta(n);
        let value = plate_integral(d, zeta, pm.at_imaginary(zeta), quad_tol)?;
        Ok(NTerm { value, l_used: 1, tail: 0.0 })
    };
    let mut zero = term(0)?;
    zero.value *= 0.5;
    let mut r = matsubara_sum(zero, ctl, term)?;
    r.value /= 2.0 * PI;
    r.tail_estimate /= 2.0 * PI;
    Ok(r)
}

/// Conductor plates, `beta F / A = (1/pi) sum'_n int_{zeta_n}^inf q ln(1 - e^{-2qd}) dq`.
pub fn plate_free_energy_conductor(d: f64, th: &ThermalState, ctl: &SumControl) -> Result<SeriesResult> {
    plate_sum(d, &PermittivityModel::Conductor, th, ctl)
}

/// Lifshitz plates per unit area,
/// `beta F / A = (1/2 pi) sum'_n int_{zeta_n}^inf q dq [ln(1 - A e^{-2qd}) + ln(1 - B e^{-2qd})]`.
pub fn lifshitz_plate_free_energy(d: f64, pm: &PermittivityModel, th: &ThermalState, ctl: &SumControl) -> Result<SeriesResult> {
    plate_sum(d, pm, th, ctl)
}

/// Zero-temperature Lifshitz energy per unit area,
/// `E / A = (1 / 4 pi^2) int_0^inf d zeta int_zeta^inf q dq [...]`.
pub fn lifshitz_plate_energy_t0(d: f64, pm: &PermittivityModel, ctl: &SumControl) -> Result<SeriesResult> {
    ctl.validate()?;
    check_gap(d)?;
    pm.validate()?;
    let quad_tol = 1e-3 * ctl.tol;
    let mut r = frequency_integral(1.0 / d, ctl, |zeta| {
        let value = plate_integral(d, zeta, pm.at_imaginary(zeta), quad_tol)?;
        Ok(NTerm { value, l_used: 1, tail: 0.0 })
    })?;
    r.value /= 4.0 * PI * PI;
    r.tail_estimate /= 4.0 * PI * PI;
    Ok(r)
}

/// Zero-temperature conductor plates, `E / A = (1 / 2 pi^2) int_0^inf q^2 ln(1 - e^{-2qd}) dq`.
pub fn plate_energy_conductor_t0(d: f64, ctl: &SumControl) -> Result<f64> {
    ctl.validate()?;
    check_gap(d)?;
    let r = integrate_to_infinity(
        |w| Ok(w * w * (-(-w).exp()).ln_1p()),
        0.0,
        QuadOptions::relative(1e-3 * ctl.tol),
    )?;
    Ok(r.value / (8.0 * d.powi(3)) / (2.0 * PI * PI))
}

/// `-pi^2 / (720 d^3)`.
pub fn plate_energy_closed_form(d: f64) -> f64 {
    -PI * PI / (720.0 * d.powi(3))
}

/// Conductor plate force per unit area,
/// `f = -(2 / pi beta) sum'_n int_{zeta_n}^inf q^2 e^{-2qd} / (1 - e^{-2qd}) dq`.
pub fn plate_force_conductor(d: f64, th: &ThermalState, ctl: &SumControl) -> Result<f64> {
    ctl.validate()?;
    check_gap(d)?;
    check_finite_t(th)?;
    let quad_tol = 1e-3 * ctl.tol;
    let term = |n: u64| -> Result<NTerm> {
        let w0 = 2.0 * th.zeta(n) * d;
        let r = integrate_to_infinity(|w| Ok(w * w / w.exp_m1()), w0, QuadOptions::relative(quad_tol))?;
        // q^2 dq = w^2 dw / (8 d^3)
        Ok(NTerm { value: r.value / (8.0 * d.powi(3)), l_used: 1, tail: 0.0 })
    };
    let mut zero = term(0)?;
    zero.value *= 0.5;
    let r = matsubara_sum(zero, ctl, term)?;
    Ok(-2.0 / (PI * th.beta) * r.value)
}
