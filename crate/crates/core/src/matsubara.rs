//! Double-sum engine shared by the dynamic and conductor solvers: the
//! l-sum at one frequency, the Matsubara sum over n, and the zero
//! temperature frequency integral.

use rayon::prelude::*;

use crate::error::{Error, Result, SumKind};
use crate::quadrature::{integrate, QuadOptions};
use crate::summation::{geometric_tail, NeumaierSum, SeriesResult, SumControl, TailTracker};

/// One converged l-sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct NTerm {
    pub value: f64,
    /// Number of l-terms added (l runs from 1).
    pub l_used: u64,
    pub tail: f64,
}

/// Runs the l-sum using `eval(l_max)`, which returns the terms for
/// `l = 1..=l_max`. The table is doubled until the geometric tail of the
/// sum falls below `tol` relative to the sum itself.
pub(crate) fn angular_sum<E>(n: u64, l_hint: usize, tol: f64, l_cap: u64, eval: E) -> Result<NTerm>
where
    E: Fn(usize) -> Result<Vec<f64>>,
{
    let cap = l_cap.max(2) as usize;
    let mut l_max = l_hint.clamp(8, cap);
    loop {
        let terms = eval(l_max)?;
        let mut tracker = TailTracker::new(tol);
        for (i, &t) in terms.iter().enumerate() {
            if tracker.push(t) {
                return Ok(NTerm {
                    value: tracker.value(),
                    l_used: i as u64 + 1,
                    tail: tracker.tail,
                });
            }
        }
        if l_max >= cap {
            return Err(Error::NonConvergence {
                kind: SumKind::AngularMomentum { n },
                cap: l_cap,
                tail: tracker.tail,
            });
        }
        l_max = (2 * l_max).min(cap);
    }
}

/// Starting table size for a frequency whose outer argument is `y = zeta b`.
pub(crate) fn l_hint(y: f64, ratio: f64) -> usize {
    let spread = 10.0 / (-ratio.ln());
    8 + y.ceil().min(1e6) as usize + spread.ceil().min(1e6) as usize
}

const FIRST_CHUNK: u64 = 4;
const MAX_CHUNK: u64 = 256;
const QUIET_RUN: u32 = 3;

/// `zero + sum_{n >= 1} term(n)`.
///
/// Terms are computed in parallel chunks but scanned in index order, so the
/// result and the stopping index do not depend on scheduling. The sum stops
/// after three consecutive terms below `tol * |total|` once the geometric
/// estimate of the rest is below the same bound.
pub(crate) fn matsubara_sum<T>(zero: NTerm, ctl: &SumControl, term: T) -> Result<SeriesResult>
where
    T: Fn(u64) -> Result<NTerm> + Sync,
{
    let mut acc = NeumaierSum::new();
    acc.add(zero.value);
    let mut total_terms = zero.l_used;
    let mut l_terms = zero.l_used;
    let mut l_tails = zero.tail;
    let mut quiet = 0u32;
    let mut prev: Option<f64> = None;
    let mut next = 1u64;
    let mut chunk = FIRST_CHUNK;
    loop {
        if next > ctl.n_cap {
            return Err(Error::NonConvergence {
                kind: SumKind::Matsubara,
                cap: ctl.n_cap,
                tail: prev.unwrap_or(f64::NAN).abs(),
            });
        }
        let end = (next + chunk).min(ctl.n_cap + 1);
        let batch: Vec<Result<NTerm>> = (next..end).into_par_iter().map(&term).collect();
        for (n, item) in (next..end).zip(batch) {
            let t = item?;
            acc.add(t.value);
            total_terms += t.l_used;
            l_terms = l_terms.max(t.l_used);
            l_tails += t.tail;
            let total = acc.value().abs();
            if t.value.abs() <= ctl.tol * total {
                quiet += 1;
            } else {
                quiet = 0;
            }
            let n_tail = prev.and_then(|p| geometric_tail(p, t.value));
            prev = Some(t.value);
            if quiet >= QUIET_RUN {
                if let Some(n_tail) = n_tail.filter(|&r| r <= ctl.tol * total) {
                    return Ok(SeriesResult {
                        value: acc.value(),
                        l_terms,
                        n_terms: n + 1,
                        total_terms,
                        tail_estimate: n_tail.max(l_tails),
                        tolerance: ctl.tol,
                    });
                }
            }
        }
        next = end;
        chunk = (2 * chunk).min(MAX_CHUNK);
    }
}

const PANEL_BATCH: usize = 4;

/// `int_0^inf term(zeta) d zeta` over panels of width `panel`, stopping when
/// a panel and the geometric estimate of the remaining panels are below
/// `tol` relative to the running integral.
///
/// `n_terms` of the result counts integrand evaluations.
pub(crate) fn frequency_integral<T>(panel: f64, ctl: &SumControl, term: T) -> Result<SeriesResult>
where
    T: Fn(f64) -> Result<NTerm> + Sync,
{
    let mut acc = NeumaierSum::new();
    let mut prev: Option<f64> = None;
    let mut evaluations = 0u64;
    let mut total_terms = 0u64;
    let mut l_terms = 0u64;
    let mut k0 = 0usize;
    let max_panels = 100_000usize;
    while k0 < max_panels {
        let abs_floor = 0.1 * ctl.tol * acc.value().abs();
        let batch: Vec<Result<(f64, u64, u64, u64)>> = (k0..k0 + PANEL_BATCH)
            .into_par_iter()
            .map(|k| {
                let mut terms = 0u64;
                let mut lmax = 0u64;
                let q = integrate(
                    |z| {
                        let t = term(z)?;
                        terms += t.l_used;
                        lmax = lmax.max(t.l_used);
                        Ok(t.value)
                    },
                    k as f64 * panel,
                    (k + 1) as f64 * panel,
                    QuadOptions::relative(0.1 * ctl.tol).with_abs(abs_floor),
                )?;
                Ok((q.value, q.evaluations, terms, lmax))
            })
            .collect();
        for item in batch {
            let (value, evals, terms, lmax) = item?;
            acc.add(value);
            evaluations += evals;
            total_terms += terms;
            l_terms = l_terms.max(lmax);
            let total = acc.value().abs();
            let tail = prev.and_then(|p| geometric_tail(p, value));
            prev = Some(value);
            if value.abs() <= ctl.tol * total {
                if let Some(tail) = tail.filter(|&r| r <= ctl.tol * total) {
                    return Ok(SeriesResult {
                        value: acc.value(),
                        l_terms,
                        n_terms: evaluations,
                        total_terms,
                        tail_estimate: tail,
                        tolerance: ctl.tol,
                    });
                }
            }
        }
        k0 += PANEL_BATCH;
    }
    Err(Error::NonConvergence {
        kind: SumKind::Quadrature,
        cap: max_panels as u64,
        tail: prev.unwrap_or(f64::NAN).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(n: u64) -> Result<NTerm> {
        Ok(NTerm {
            value: 0.5f64.powi(n as i32),
            l_used: 1,
            tail: 0.0,
        })
    }

    #[test]
    fn matsubara_sum_of_geometric_series() {
        let zero = NTerm { value: 0.5, l_used: 1, tail: 0.0 };
        let ctl = SumControl::with_tol(1e-10);
        let r = matsubara_sum(zero, &ctl, geometric).unwrap();
        assert!((r.value - 1.5).abs() < 1e-9);
        assert!(r.tail_estimate <= 1e-10 * r.value);
        assert_eq!(r.total_terms, r.n_terms);
    }

    #[test]
    fn matsubara_cap_is_reported() {
        let ctl = SumControl { n_cap: 10, ..SumControl::default() };
        let zero = NTerm { value: 1.0, l_used: 1, tail: 0.0 };
        let slow = |n: u64| Ok(NTerm { value: 1.0 / (n as f64), l_used: 1, tail: 0.0 });
        assert!(matches!(
            matsubara_sum(zero, &ctl, slow),
            Err(Error::NonConvergence { kind: SumKind::Matsubara, .. })
        ));
    }

    #[test]
    fn angular_sum_doubles_table() {
        let eval = |l_max: usize| Ok((1..=l_max).map(|l| 0.9f64.powi(l as i32)).collect());
        let r = angular_sum(1, 8, 1e-8, 5000, eval).unwrap();
        assert!((r.value - 9.0).abs() < 1e-6);
        assert!(r.l_used > 100);
        let capped = angular_sum(1, 8, 1e-8, 50, eval);
        assert!(matches!(capped, Err(Error::NonConvergence { kind: SumKind::AngularMomentum { n: 1 }, .. })));
    }

    #[test]
    fn frequency_integral_of_exponential() {
        let ctl = SumControl::with_tol(1e-9);
        let r = frequency_integral(0.5, &ctl, |z| Ok(NTerm { value: (-2.0 * z).exp(), l_used: 1, tail: 0.0 })).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
    }
}
