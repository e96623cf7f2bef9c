//! Compensated accumulation and the convergence bookkeeping shared by every
//! truncated series in the crate.

/// Kahan-Babuska-Neumaier accumulator. Summation order is the push order, so
/// results are reproducible bit for bit.
#[derive(Debug, Default, Clone, Copy, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Value of a truncated series together with how it was truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// Largest angular momentum reached in any l-sum.
    pub l_terms: u64,
    /// Number of Matsubara indices summed (including n = 0); 1 for static sums.
    pub n_terms: u64,
    /// Total number of (n, l) terms evaluated.
    pub total_terms: u64,
    /// Estimated (or bounded) magnitude of the discarded tail.
    pub tail_estimate: f64,
    pub tolerance: f64,
}

/// Truncation controls shared by the double sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumControl {
    /// Relative tolerance for both the l- and the n-truncation.
    pub tol: f64,
    /// Hard cap on the angular momentum.
    pub l_cap: u64,
    /// Hard cap on the Matsubara index.
    pub n_cap: u64,
}

impl Default for SumControl {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            l_cap: 5000,
            n_cap: 1_000_000,
        }
    }
}

impl SumControl {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    pub(crate) fn validate(&self) -> crate::Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(crate::error::invalid(format!(
                "tolerance must lie in (0, 1), got {}",
                self.tol
            )));
        }
        if self.l_cap < 1 || self.n_cap < 1 {
            return Err(crate::error::invalid("term caps must be positive"));
        }
        Ok(())
    }
}

/// Geometric tail estimate from the last two terms of a series whose terms
/// eventually decay monotonically. Returns `None` while the terms still grow.
pub(crate) fn geometric_tail(prev: f64, last: f64) -> Option<f64> {
    if last == 0.0 {
        return Some(0.0);
    }
    let q = last / prev;
    if q > 0.0 && q < 1.0 {
        Some(last.abs() * q / (1.0 - q))
    } else {
        None
    }
}

/// Running l-sum that stops once the geometric tail drops below
/// `tol * |partial sum|`.
#[derive(Debug, Clone)]
pub(crate) struct TailTracker {
    sum: NeumaierSum,
    prev: Option<f64>,
    tol: f64,
    pub(crate) tail: f64,
}

impl TailTracker {
    pub(crate) fn new(tol: f64) -> Self {
        Self {
            sum: NeumaierSum::new(),
            prev: None,
            tol,
            tail: f64::INFINITY,
        }
    }

    /// Adds a term; returns `true` when the sum is converged.
    pub(crate) fn push(&mut self, term: f64) -> bool {
        self.sum.add(term);
        let prev = self.prev.replace(term);
        let Some(prev) = prev else {
            return false;
        };
        match geometric_tail(prev, term) {
            Some(tail) => {
                self.tail = tail;
                tail <= self.tol * self.sum.value().abs()
            }
            None => false,
        }
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_bits() {
        let mut acc = NeumaierSum::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            acc.add(x);
        }
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn tail_tracker_stops_on_geometric_series() {
        let mut t = TailTracker::new(1e-10);
        let mut k = 0;
        while !t.push(0.5f64.powi(k)) {
            k += 1;
            assert!(k < 200);
        }
        assert!((t.value() - 2.0).abs() < 1e-9);
        assert!(t.tail <= 1e-10 * t.value());
    }

    #[test]
    fn tail_tracker_waits_while_terms_grow() {
        let mut t = TailTracker::new(1e-3);
        assert!(!t.push(1.0));
        assert!(!t.push(2.0));
        assert!(!t.push(3.0));
    }

    #[test]
    fn zero_terms_converge() {
        let mut t = TailTracker::new(1e-6);
        assert!(!t.push(0.0));
        assert!(t.push(0.0));
    }
}
