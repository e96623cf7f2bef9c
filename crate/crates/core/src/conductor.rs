//! Perfectly conducting walls at `r = a` and `r = b`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::geometry::{Geometry, ThermalState};
use crate::matsubara::{angular_sum, frequency_integral, l_hint, matsubara_sum, NTerm};
use crate::special::RiccatiTable;
use crate::static_solver::{sum_with_bound, weighted_sigma_tail};
use crate::summation::{SeriesResult, SumControl, TailTracker};

/// TE and TM mode ratios at `x = zeta a`, `y = zeta b`:
/// `r_f = s_l(x) e_l(y) / (e_l(x) s_l(y))` and the same with every function
/// replaced by its derivative for `r_g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConductorModeRatios {
    pub r_f: f64,
    pub r_g: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// Interaction force per unit area on `r = b`; negative is attractive.
    pub f_int: f64,
    pub convergence: SeriesResult,
}

struct Tables {
    zeta: f64,
    x: RiccatiTable,
    y: RiccatiTable,
}

impl Tables {
    fn new(g: &Geometry, zeta: f64, l_max: usize) -> Result<Self> {
        Ok(Self {
            zeta,
            x: RiccatiTable::new(zeta * g.a(), l_max)?,
            y: RiccatiTable::new(zeta * g.b(), l_max)?,
        })
    }

    fn ratios(&self, l: usize) -> (f64, f64) {
        let (x, y) = (&self.x, &self.y);
        let r_f = (x.ln_s(l) + y.ln_e(l) - x.ln_e(l) - y.ln_s(l)).exp();
        let r_g = r_f * (x.log_deriv_s(l) / x.log_deriv_e(l)) * (y.log_deriv_e(l) / y.log_deriv_s(l));
        (r_f, r_g)
    }

    /// `(2l+1) d/db ln[(1 - r_f)(1 - r_g)]` at fixed `a` and `zeta`.
    fn b_derivative(&self, l: usize) -> f64 {
        let (r_f, r_g) = self.ratios(l);
        let y = &self.y;
        let yv = y.argument();
        let (ds, de) = (y.log_deriv_s(l), y.log_deriv_e(l));
        let c = 1.0 + (l * (l + 1)) as f64 / (yv * yv);
        let dln_f = self.zeta * (de - ds);
        let dln_g = self.zeta * c * (1.0 / de - 1.0 / ds);
        (2 * l + 1) as f64 * (-r_f * dln_f / (1.0 - r_f) - r_g * dln_g / (1.0 - r_g))
    }
}

fn check_frequency(zeta: f64) -> Result<()> {
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(invalid(format!("frequency must be positive, got {zeta}")));
    }
    Ok(())
}

pub fn conductor_mode_ratios(g: &Geometry, zeta: f64, l: usize) -> Result<ConductorModeRatios> {
    check_frequency(zeta)?;
    if l == 0 {
        return Err(invalid("angular momentum sums start at l = 1"));
    }
    let t = Tables::new(g, zeta, l)?;
    let (r_f, r_g) = t.ratios(l);
    Ok(ConductorModeRatios {
        r_f,
        r_g,
        x: zeta * g.a(),
        y: zeta * g.b(),
    })
}

/// Terms `(2l+1) ln[(1 - r_f)(1 - r_g)]` for `l = 1..=l_max`.
pub(crate) fn conductor_terms(g: &Geometry, zeta: f64, l_max: usize) -> Result<Vec<f64>> {
    let t = Tables::new(g, zeta, l_max)?;
    Ok((1..=l_max)
        .map(|l| {
            let (r_f, r_g) = t.ratios(l);
            (2 * l + 1) as f64 * ((-r_f).ln_1p() + (-r_g).ln_1p())
        })
        .collect())
}

fn force_terms(g: &Geometry, zeta: f64, l_max: usize) -> Result<Vec<f64>> {
    let t = Tables::new(g, zeta, l_max)?;
    Ok((1..=l_max).map(|l| t.b_derivative(l)).collect())
}

/// Zero-frequency contribution `sum_l (2l+1) ln(1 - (a/b)^(2l+1))`, summed to
/// double precision.
pub fn n0_term(g: &Geometry) -> f64 {
    let ctl = SumControl {
        tol: 1e-16,
        l_cap: u64::MAX,
        n_cap: 1,
    };
    sum_with_bound(
        &ctl,
        |l| (2 * l + 1) as f64 * (-g.sigma(l)).ln_1p(),
        |m| weighted_sigma_tail(g, m) / (1.0 - g.sigma(m)),
    )
    .map(|r| r.value)
    .expect("sum without cap always terminates")
}

/// `sum_l (2l+1)^2 sigma_l / (b (1 - sigma_l))`, the `b`-derivative of
/// [`n0_term`].
fn n0_force_term(g: &Geometry) -> NTerm {
    let mut tracker = TailTracker::new(1e-15);
    let mut l = 0usize;
    loop {
        l += 1;
        let s = g.sigma(l);
        let w = (2 * l + 1) as f64;
        if tracker.push(w * w * s / (g.b() * (1.0 - s))) {
            return NTerm {
                value: tracker.value(),
                l_used: l as u64,
                tail: tracker.tail,
            };
        }
    }
}

fn frequency_term(g: &Geometry, zeta: f64, n: u64, tol: f64, ctl: &SumControl) -> Result<NTerm> {
    angular_sum(n, l_hint(zeta * g.b(), g.ratio()), tol, ctl.l_cap, |l_max| conductor_terms(g, zeta, l_max))
}

fn force_frequency_term(g: &Geometry, zeta: f64, n: u64, tol: f64, ctl: &SumControl) -> Result<NTerm> {
    angular_sum(n, l_hint(zeta * g.b(), g.ratio()), tol, ctl.l_cap, |l_max| force_terms(g, zeta, l_max))
}

fn zero_term(g: &Geometry) -> NTerm {
    let mut l = 1usize;
    while g.sigma(l) > 1e-17 * g.sigma(1) {
        l += 1;
    }
    NTerm {
        value: n0_term(g),
        l_used: l as u64,
        tail: 0.0,
    }
}

/// `beta F = sum'_n sum_l (2l+1) ln[(1 - r_f)(1 - r_g)]` with the `n = 0`
/// term at half weight.
pub fn conductor_free_energy(g: &Geometry, th: &ThermalState, ctl: &SumControl) -> Result<SeriesResult> {
    ctl.validate()?;
    if th.is_zero() {
        return Err(invalid("beta F diverges at zero temperature; use conductor_energy_t0"));
    }
    matsubara_sum(zero_term(g), ctl, |n| frequency_term(g, th.zeta(n), n, ctl.tol, ctl))
}

fn t0_panel(g: &Geometry) -> f64 {
    (0.5 / g.a()).max(1.0 / g.d())
}

/// Zero-temperature energy
/// `E = (1/pi a) int_0^inf dx sum_l nu ln[(1 - r_f)(1 - r_g)]`, `x = zeta a`.
pub fn conductor_energy_t0(g: &Geometry, ctl: &SumControl) -> Result<SeriesResult> {
    ctl.validate()?;
    let inner_tol = 1e-3 * ctl.tol;
    let mut r = frequency_integral(t0_panel(g), ctl, |zeta| frequency_term(g, zeta, 0, inner_tol, ctl))?;
    r.value /= 2.0 * PI;
    r.tail_estimate /= 2.0 * PI;
    Ok(r)
}

/// Interaction surface force on `r = b`,
/// `f = -1/(2 pi b^2 beta) sum'_n sum_l nu d/db ln[(1 - r_f)(1 - r_g)]`,
/// with the `b`-derivative taken analytically. At zero temperature the
/// Matsubara sum becomes the frequency integral.
pub fn conductor_force(g: &Geometry, th: &ThermalState, ctl: &SumControl) -> Result<ForceResult> {
    ctl.validate()?;
    let b = g.b();
    if th.is_zero() {
        let inner_tol = 1e-3 * ctl.tol;
        let r = frequency_integral(t0_panel(g), ctl, |zeta| force_frequency_term(g, zeta, 0, inner_tol, ctl))?;
        let scale = -1.0 / (4.0 * PI * b * b) / (2.0 * PI);
        return Ok(ForceResult {
            f_int: scale * r.value,
            convergence: r,
        });
    }
    let r = matsubara_sum(n0_force_term(g), ctl, |n| force_frequency_term(g, th.zeta(n), n, ctl.tol, ctl))?;
    Ok(ForceResult {
        f_int: -r.value / (4.0 * PI * b * b * th.beta),
        convergence: r,
    })
}
