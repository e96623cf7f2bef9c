//! Globally adaptive 21-point Gauss-Kronrod quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result, SumKind};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol,
            max_intervals: 2000,
        }
    }

    pub fn with_abs(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F>(f: &mut F, lo: f64, hi: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        // odd Kronrod nodes coincide with the 10-point Gauss nodes
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = kronrod * half;
    let res_asc = asc * half.abs();
    let res_abs = abs_sum * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    // QUADPACK error rescaling
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((result, err))
}

/// Integrates `f` over `[lo, hi]`, bisecting the worst segment until the
/// summed error estimate meets `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F>(mut f: F, lo: f64, hi: f64, opts: QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if lo == hi {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }
    let (value, error) = gk21(&mut f, lo, hi)?;
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        lo,
        hi,
        value,
        error,
    });
    let mut total = value;
    let mut total_err = error;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if total_err <= target {
            break;
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::NonConvergence {
                kind: SumKind::Quadrature,
                cap: opts.max_intervals as u64,
                tail: total_err,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval exhausted at machine resolution
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&mut f, worst.lo, mid)?;
        let (v2, e2) = gk21(&mut f, mid, worst.hi)?;
        evaluations += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
        });
    }
    // re-sum in interval order so the result does not depend on heap history
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value = segs
        .iter()
        .map(|s| s.value)
        .collect::<crate::summation::NeumaierSum>()
        .value();
    let abs_error = segs.iter().map(|s| s.error).sum();
    Ok(QuadResult {
        value,
        abs_error,
        evaluations,
    })
}

/// Integrates over `[lo, inf)` through the map `x = lo + (1 - u) / u`.
pub fn integrate_to_infinity<F>(mut f: F, lo: f64, opts: QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    integrate(
        |u| {
            if u <= 0.0 {
                return Ok(0.0);
            }
            let x = lo + (1.0 - u) / u;
            Ok(f(x)? / (u * u))
        },
        0.0,
        1.0,
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| Ok(x.powi(5) - 3.0 * x), 0.0, 2.0, QuadOptions::relative(1e-12)).unwrap();
        assert!((r.value - (64.0 / 6.0 - 6.0)).abs() < 1e-13);
    }

    #[test]
    fn exponential_tail_to_infinity() {
        let r = integrate_to_infinity(|x| Ok((-x).exp()), 0.0, QuadOptions::relative(1e-12)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11, "{}", r.value);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        let r = integrate(|x| Ok(x.sqrt()), 0.0, 1.0, QuadOptions::relative(1e-10)).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn propagates_integrand_errors() {
        let r = integrate(
            |x| {
                if x > 0.5 {
                    Err(crate::error::invalid("boom"))
                } else {
                    Ok(x)
                }
            },
            0.0,
            1.0,
            QuadOptions::relative(1e-8),
        );
        assert!(r.is_err());
    }
}
