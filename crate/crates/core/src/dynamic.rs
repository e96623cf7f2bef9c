//! Finite-temperature free energy for a dielectric inner sphere and outer
//! medium, from the TM and TE mode eigenvalues.

use crate::conductor::{conductor_terms, n0_term};
use crate::error::{invalid, Result};
use crate::geometry::{Geometry, ThermalState};
use crate::matsubara::{angular_sum, frequency_integral, l_hint, matsubara_sum, NTerm};
use crate::permittivity::PermittivityModel;
use crate::special::RiccatiTable;
use crate::static_solver::{static_coupling, static_free_energy};
use crate::summation::{SeriesResult, SumControl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Tm,
    Te,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeEigenvalue {
    pub l: usize,
    pub n: u64,
    pub mode: Mode,
    pub lambda: f64,
}

/// Treatment of the TE eigenvalue at zero frequency.
///
/// For finite `eps` the TE eigenvalue vanishes as `zeta -> 0`. Taking
/// `eps -> infinity` first instead gives `sigma_l`, as for a perfect
/// conductor; `ConductorLimit` uses that value at `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroFrequencyTe {
    #[default]
    Vanishing,
    ConductorLimit,
}

/// Riccati-Bessel tables at the four arguments `zeta a`, `zeta b` and their
/// `sqrt(eps)` multiples.
struct DielectricTables {
    eps: f64,
    se: f64,
    x: RiccatiTable,
    y: RiccatiTable,
    xe: RiccatiTable,
    ye: RiccatiTable,
}

impl DielectricTables {
    fn new(g: &Geometry, eps: f64, zeta: f64, l_max: usize) -> Result<Self> {
        let se = eps.sqrt();
        let x = zeta * g.a();
        let y = zeta * g.b();
        Ok(Self {
            eps,
            se,
            x: RiccatiTable::new(x, l_max)?,
            y: RiccatiTable::new(y, l_max)?,
            xe: RiccatiTable::new(se * x, l_max)?,
            ye: RiccatiTable::new(se * y, l_max)?,
        })
    }

    /// `s_l(x) e_l(y) / (e_l(x) s_l(y))`; the inner-medium function values
    /// cancel between numerator and denominator.
    fn ratio(&self, l: usize) -> f64 {
        (self.x.ln_s(l) + self.y.ln_e(l) - self.x.ln_e(l) - self.y.ln_s(l)).exp()
    }

    /// Radial derivatives are wavenumber times argument derivative; after
    /// dividing every bracket by `zeta` and the function values, only the
    /// `sqrt(eps)` of the medium wavenumber remains.
    fn eigenvalue(&self, l: usize, mode: Mode) -> f64 {
        let w = match mode {
            Mode::Tm => self.eps,
            Mode::Te => 1.0,
        };
        let se = self.se;
        let (dsx, dex) = (self.x.log_deriv_s(l), self.x.log_deriv_e(l));
        let (dsy, dey) = (self.y.log_deriv_s(l), self.y.log_deriv_e(l));
        let dsxe = self.xe.log_deriv_s(l);
        let deye = self.ye.log_deriv_e(l);
        let num = (w * dsx - se * dsxe) * (w * dey - se * deye);
        let den = (w * dex - se * dsxe) * (w * dsy - se * deye);
        self.ratio(l) * num / den
    }
}

fn validate_eigen_args(eps: f64, zeta: f64, l: usize) -> Result<()> {
    if !(eps > 1.0) {
        return Err(invalid(format!("eigenvalue path needs eps > 1, got {eps}")));
    }
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(invalid(format!("frequency must be positive, got {zeta}; n = 0 is the static limit")));
    }
    if l == 0 {
        return Err(invalid("angular momentum sums start at l = 1"));
    }
    Ok(())
}

fn eigenvalue(g: &Geometry, eps: f64, zeta: f64, l: usize, mode: Mode) -> Result<f64> {
    validate_eigen_args(eps, zeta, l)?;
    if eps.is_infinite() {
        let r = crate::conductor::conductor_mode_ratios(g, zeta, l)?;
        return Ok(match mode {
            Mode::Tm => r.r_g,
            Mode::Te => r.r_f,
        });
    }
    Ok(DielectricTables::new(g, eps, zeta, l)?.eigenvalue(l, mode))
}

/// TM eigenvalue at imaginary frequency `zeta > 0`.
pub fn tm_eigenvalue(g: &Geometry, eps: f64, zeta: f64, l: usize) -> Result<f64> {
    eigenvalue(g, eps, zeta, l, Mode::Tm)
}

/// TE eigenvalue at imaginary frequency `zeta > 0`.
pub fn te_eigenvalue(g: &Geometry, eps: f64, zeta: f64, l: usize) -> Result<f64> {
    eigenvalue(g, eps, zeta, l, Mode::Te)
}

/// Eigenvalue at Matsubara index `n`, with the analytic zero-frequency
/// limits (`A_l sigma_l` for TM, 0 for TE) at `n = 0`.
pub fn mode_eigenvalue(
    g: &Geometry,
    pm: &PermittivityModel,
    th: &ThermalState,
    mode: Mode,
    n: u64,
    l: usize,
) -> Result<ModeEigenvalue> {
    pm.validate()?;
    let lambda = if n == 0 {
        match mode {
            Mode::Tm => static_coupling(pm.static_value(), l)? * g.sigma(l),
            Mode::Te => {
                static_coupling(2.0, l)?;
                0.0
            }
        }
    } else {
        let zeta = th.zeta(n);
        let eps = pm.at_imaginary(zeta);
        if eps == 1.0 {
            0.0
        } else {
            eigenvalue(g, eps, zeta, l, mode)?
        }
    };
    Ok(ModeEigenvalue { l, n, mode, lambda })
}

/// `sum_{l=1}^{l_max}`-ready terms `(2l+1)[ln(1 - lambda_TM) + ln(1 - lambda_TE)]`.
fn dielectric_terms(g: &Geometry, eps: f64, zeta: f64, l_max: usize) -> Result<Vec<f64>> {
    if eps == 1.0 {
        return Ok(vec![0.0; l_max]);
    }
    if eps.is_infinite() {
        return conductor_terms(g, zeta, l_max);
    }
    let t = DielectricTables::new(g, eps, zeta, l_max)?;
    Ok((1..=l_max)
        .map(|l| {
            let tm = t.eigenvalue(l, Mode::Tm);
            let te = t.eigenvalue(l, Mode::Te);
            (2 * l + 1) as f64 * ((-tm).ln_1p() + (-te).ln_1p())
        })
        .collect())
}

fn frequency_term(g: &Geometry, pm: &PermittivityModel, zeta: f64, n: u64, tol: f64, ctl: &SumControl) -> Result<NTerm> {
    let eps = pm.at_imaginary(zeta);
    angular_sum(n, l_hint(zeta * g.b(), g.ratio()), tol, ctl.l_cap, |l_max| {
        dielectric_terms(g, eps, zeta, l_max)
    })
}

fn zero_frequency(g: &Geometry, pm: &PermittivityModel, ctl: &SumControl, zero_te: ZeroFrequencyTe) -> Result<NTerm> {
    let tm = static_free_energy(g, pm.static_value(), ctl)?;
    let mut out = NTerm {
        value: tm.value,
        l_used: tm.l_terms,
        tail: tm.tail_estimate,
    };
    if zero_te == ZeroFrequencyTe::ConductorLimit {
        out.value += 0.5 * n0_term(g);
    }
    Ok(out)
}

/// `beta F` with the default zero-frequency TE convention.
pub fn mutual_free_energy(g: &Geometry, pm: &PermittivityModel, th: &ThermalState, ctl: &SumControl) -> Result<SeriesResult> {
    mutual_free_energy_with(g, pm, th, ctl, ZeroFrequencyTe::default())
}

/// `beta F = 1/2 sum_{K} sum_l (2l+1) [ln(1 - lambda_TM) + ln(1 - lambda_TE)]`
/// as the `n = 0` term at half weight plus the `n >= 1` terms.
pub fn mutual_free_energy_with(
    g: &Geometry,
    pm: &PermittivityModel,
    th: &ThermalState,
    ctl: &SumControl,
    zero_te: ZeroFrequencyTe,
) -> Result<SeriesResult> {
    ctl.validate()?;
    pm.validate()?;
    if th.is_zero() {
        return Err(invalid("beta F diverges at zero temperature; use mutual_energy_t0"));
    }
    let zero = zero_frequency(g, pm, ctl, zero_te)?;
    matsubara_sum(zero, ctl, |n| frequency_term(g, pm, th.zeta(n), n, ctl.tol, ctl))
}

/// Zero-temperature interaction energy
/// `E = (1/2 pi) int_0^inf d zeta sum_l (2l+1) [ln(1 - lambda_TM) + ln(1 - lambda_TE)]`.
pub fn mutual_energy_t0(g: &Geometry, pm: &PermittivityModel, ctl: &SumControl) -> Result<SeriesResult> {
    ctl.validate()?;
    pm.validate()?;
    let panel = (0.5 / g.a()).max(1.0 / g.d());
    let inner_tol = 1e-3 * ctl.tol;
    let mut r = frequency_integral(panel, ctl, |zeta| frequency_term(g, pm, zeta, 0, inner_tol, ctl))?;
    r.value /= 2.0 * std::f64::consts::PI;
    r.tail_estimate /= 2.0 * std::f64::consts::PI;
    Ok(r)
}

/// Free energy `F` (or `E` at zero temperature) in natural units.
fn free_energy(g: &Geometry, pm: &PermittivityModel, th: &ThermalState, ctl: &SumControl) -> Result<f64> {
    if th.is_zero() {
        Ok(mutual_energy_t0(g, pm, ctl)?.value)
    } else {
        Ok(mutual_free_energy(g, pm, th, ctl)?.value / th.beta)
    }
}

/// Surface force per unit area on the outer boundary,
/// `f = -1/(4 pi b^2) dF/db`, from Richardson-extrapolated central
/// differences in `b` at fixed `a`. Negative values are attractive.
pub fn casimir_force(g: &Geometry, pm: &PermittivityModel, th: &ThermalState, ctl: &SumControl) -> Result<f64> {
    ctl.validate()?;
    let inner = SumControl {
        tol: (ctl.tol * 1e-3).max(1e-13),
        ..*ctl
    };
    let h = 0.05 * g.d();
    let f_at = |b: f64| -> Result<f64> { free_energy(&g.with_b(b)?, pm, th, &inner) };
    let b = g.b();
    let central = |h: f64| -> Result<f64> { Ok((f_at(b + h)? - f_at(b - h)?) / (2.0 * h)) };
    let d1 = central(h)?;
    let d2 = central(0.5 * h)?;
    let df_db = (4.0 * d2 - d1) / 3.0;
    Ok(-df_db / (4.0 * std::f64::consts::PI * b * b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_limit_of_tm() {
        let g = Geometry::new(1.0, 1.5).unwrap();
        for eps in [2.0, 10.0] {
            for l in [1usize, 5, 30] {
                let lam = tm_eigenvalue(&g, eps, 1e-6, l).unwrap();
                let expect = static_coupling(eps, l).unwrap() * g.sigma(l);
                assert!(((lam - expect) / expect).abs() < 1e-5, "eps={eps} l={l}");
            }
        }
    }

    #[test]
    fn te_vanishes_at_low_frequency_and_for_vacuum() {
        let g = Geometry::new(1.0, 1.5).unwrap();
        assert!(te_eigenvalue(&g, 4.0, 1e-3, 2).unwrap() < 1e-4);
        assert!(te_eigenvalue(&g, 1.0, 1.0, 2).is_err());
        let t = DielectricTables::new(&g, 1.0 + 1e-300, 1.0, 3).unwrap();
        assert!(t.eigenvalue(2, Mode::Te).abs() < 1e-14);
    }

    #[test]
    fn n0_te_is_zero() {
        let g = Geometry::new(1.0, 1.5).unwrap();
        let th = ThermalState::from_nondimensional(1.0, 1.0).unwrap();
        let pm = PermittivityModel::Constant(3.0);
        assert_eq!(mode_eigenvalue(&g, &pm, &th, Mode::Te, 0, 3).unwrap().lambda, 0.0);
    }
}
