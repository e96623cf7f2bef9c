//! Zero-frequency (electrostatic) contribution for arbitrary permittivity.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result, SumKind};
use crate::geometry::Geometry;
use crate::quadrature::{integrate, QuadOptions};
use crate::summation::{NeumaierSum, SeriesResult, SumControl};

/// Static mode coupling
/// `A_l = (eps-1)^2 l(l+1) / ((eps(l+1) + l)(eps l + l + 1))`.
/// `epsilon = f64::INFINITY` is the conductor, `A_l = 1`.
pub fn static_coupling(epsilon: f64, l: usize) -> Result<f64> {
    if l == 0 {
        return Err(invalid("angular momentum sums start at l = 1"));
    }
    if !(epsilon > 0.0) {
        return Err(invalid(format!("permittivity must be positive, got {epsilon}")));
    }
    if epsilon.is_infinite() {
        return Ok(1.0);
    }
    let lf = l as f64;
    let num = (epsilon - 1.0) * (epsilon - 1.0) * lf * (lf + 1.0);
    Ok(num / ((epsilon * (lf + 1.0) + lf) * (epsilon * lf + lf + 1.0)))
}

/// Supremum of `A_l` over `l`.
fn coupling_sup(epsilon: f64) -> f64 {
    if epsilon.is_infinite() {
        1.0
    } else {
        let r = (epsilon - 1.0) / (epsilon + 1.0);
        r * r
    }
}

/// `sum_{l >= m} (2l+1) sigma_l` in closed form.
pub(crate) fn weighted_sigma_tail(g: &Geometry, m: usize) -> f64 {
    let r = g.ratio();
    let q = r * r;
    let mf = m as f64;
    let qm = q.powi(m as i32);
    let one_q = 1.0 - q;
    r * (2.0 * qm * (mf * one_q + q) / (one_q * one_q) + qm / one_q)
}

/// Sums `term(l)` from `l = 1` until `bound(l + 1)`, an upper bound on the
/// remaining terms, drops below `tol * |sum|`.
pub(crate) fn sum_with_bound<T, B>(ctl: &SumControl, mut term: T, mut bound: B) -> Result<SeriesResult>
where
    T: FnMut(usize) -> f64,
    B: FnMut(usize) -> f64,
{
    ctl.validate()?;
    let mut acc = NeumaierSum::new();
    let mut l = 0usize;
    loop {
        l += 1;
        if l as u64 > ctl.l_cap {
            return Err(Error::NonConvergence {
                kind: SumKind::AngularMomentum { n: 0 },
                cap: ctl.l_cap,
                tail: bound(l),
            });
        }
        acc.add(term(l));
        let tail = bound(l + 1);
        if tail <= ctl.tol * acc.value().abs() {
            return Ok(SeriesResult {
                value: acc.value(),
                l_terms: l as u64,
                n_terms: 1,
                total_terms: l as u64,
                tail_estimate: tail,
                tolerance: ctl.tol,
            });
        }
    }
}

/// `beta F = 1/2 sum_l (2l+1) ln(1 - A_l sigma_l)`.
pub fn static_free_energy(g: &Geometry, epsilon: f64, ctl: &SumControl) -> Result<SeriesResult> {
    static_coupling(epsilon, 1)?;
    let sup = coupling_sup(epsilon);
    sum_with_bound(
        ctl,
        |l| {
            let u = static_coupling(epsilon, l).unwrap_or(0.0) * g.sigma(l);
            0.5 * (2 * l + 1) as f64 * (-u).ln_1p()
        },
        |m| {
            if epsilon == 1.0 {
                return 0.0;
            }
            0.5 * sup / (1.0 - sup * g.sigma(m)) * weighted_sigma_tail(g, m)
        },
    )
}

/// `d(beta F)/d lambda = -sum_l (2l+1) lambda u_l / (1 - lambda^2 u_l)` for
/// the coupling-scaled energy `1/2 sum (2l+1) ln(1 - lambda^2 u_l)`,
/// `u_l = A_l sigma_l`.
pub fn static_coupling_derivative(g: &Geometry, epsilon: f64, lambda: f64, ctl: &SumControl) -> Result<SeriesResult> {
    static_coupling(epsilon, 1)?;
    if !(0.0..=1.0).contains(&lambda) {
        return Err(invalid(format!("coupling parameter must lie in [0, 1], got {lambda}")));
    }
    let sup = coupling_sup(epsilon);
    let l2 = lambda * lambda;
    sum_with_bound(
        ctl,
        |l| {
            let u = static_coupling(epsilon, l).unwrap_or(0.0) * g.sigma(l);
            -((2 * l + 1) as f64) * lambda * u / (1.0 - l2 * u)
        },
        |m| {
            if epsilon == 1.0 || lambda == 0.0 {
                return 0.0;
            }
            lambda * sup / (1.0 - l2 * sup * g.sigma(m)) * weighted_sigma_tail(g, m)
        },
    )
}

/// `-sum_l (2l+1) A_l sigma_l / (1 - A_l sigma_l)`.
pub fn static_energy_derivative(g: &Geometry, epsilon: f64, ctl: &SumControl) -> Result<SeriesResult> {
    static_coupling_derivative(g, epsilon, 1.0, ctl)
}

/// `(8 pi^2 / 3) sum_{l=1}^{l_max} l(l+1)/(2l+1) sigma_l`, the overlap
/// integral of two dilute bodies in units where `a^3 b^3` and the
/// polarizability prefactors are divided out.
pub fn dilute_overlap_series(g: &Geometry, l_max: usize) -> f64 {
    let acc: NeumaierSum = (1..=l_max)
        .map(|l| {
            let lf = l as f64;
            lf * (lf + 1.0) / (2.0 * lf + 1.0) * g.sigma(l)
        })
        .collect();
    8.0 * PI * PI / 3.0 * acc.value()
}

/// Direct evaluation of the dilute overlap integral
/// `8 pi^2 int_0^a r1^2 dr1 int_b^inf r2^2 dr2 J(r1, r2)` with the angular
/// integral `J = 2 (r1^2 + r2^2) / (r2^2 - r1^2)^4` in closed form.
/// Independent of the multipole expansion behind [`dilute_overlap_series`].
pub fn dilute_overlap_quadrature(g: &Geometry, rel_tol: f64) -> Result<f64> {
    let (a, b) = (g.a(), g.b());
    let opts = QuadOptions::relative(rel_tol);
    // r2 = b / u maps (b, inf) onto (0, 1)
    let outer = integrate(
        |u| {
            if u == 0.0 {
                return Ok(0.0);
            }
            let r2 = b / u;
            let inner = integrate(
                |r1| {
                    let (p, q) = (r1 * r1, r2 * r2);
                    Ok(p * 2.0 * (p + q) / (q - p).powi(4))
                },
                0.0,
                a,
                opts,
            )?;
            Ok(inner.value * r2 * r2 * b / (u * u))
        },
        0.0,
        1.0,
        opts,
    )?;
    Ok(8.0 * PI * PI * outer.value)
}

/// `-1/2 sum_l l(l+1)/(2l+1) sigma_l`, the leading `(eps - 1)^2` coefficient
/// of the static free energy.
pub fn dilute_static_coefficient(g: &Geometry, l_max: usize) -> f64 {
    -dilute_overlap_series(g, l_max) * 3.0 / (16.0 * PI * PI)
}
