//! Golden-value and limit checks, one per acceptance criterion.

use std::f64::consts::PI;
use std::fmt;

use casimir_core::asymptotics::{high_t_slit_closed_form, plate_energy_closed_form};
use casimir_core::dynamic::{te_eigenvalue, tm_eigenvalue};
use casimir_core::special::wronskian_defect;
use casimir_core::static_solver::{dilute_overlap_quadrature, dilute_overlap_series};
use casimir_core::{
    conductor_energy_t0, conductor_free_energy, mutual_energy_t0, mutual_free_energy, mutual_free_energy_with, n0_term,
    static_coupling, static_free_energy, Geometry, PermittivityModel, SumControl, ThermalState, ZeroFrequencyTe,
};

use crate::config::{Figure, RunConfig, Settings};
use crate::sweep;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenOptions {
    /// Series tolerance for the golden values (the term-count check always uses 1e-6).
    pub tol: f64,
    /// Test hook: relative shift applied to a/b on the static side of the
    /// factor-2 check, which perturbs every sigma_l.
    pub sigma_perturbation: f64,
}

impl Default for GoldenOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            sigma_perturbation: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:2}] {}: computed {:.6e}, expected {:.6e}, tolerance {:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.computed,
            self.expected,
            self.tolerance,
        )?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

type Outcome = anyhow::Result<(f64, bool, String)>;

fn thermal(t: f64) -> anyhow::Result<ThermalState> {
    Ok(ThermalState::from_nondimensional(t, 1.0)?)
}

fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| (lo.ln() + (hi / lo).ln() * k as f64 / (n - 1) as f64).exp())
}

fn golden_value(opts: &GoldenOptions) -> anyhow::Result<f64> {
    let g = Geometry::from_gap_ratio(0.05)?;
    Ok(conductor_free_energy(&g, &thermal(200.0)?, &SumControl::with_tol(opts.tol))?.value)
}

fn golden(opts: &GoldenOptions) -> Outcome {
    let v = golden_value(opts)?;
    Ok((v, rel(v, -249.7) <= 0.01, String::new()))
}

fn high_t_discrepancy(opts: &GoldenOptions) -> Outcome {
    let v = golden_value(opts)?;
    let closed = high_t_slit_closed_form(&Geometry::from_gap_ratio(0.05)?);
    let gap = (v - closed) / closed;
    Ok((gap, (0.03..=0.05).contains(&gap), format!("closed form {closed:.4}")))
}

fn factor_two(opts: &GoldenOptions) -> Outcome {
    let ctl = SumControl::with_tol(1e-15);
    let mut worst: f64 = 0.0;
    for ratio in [0.1, 0.5, 0.9] {
        let g = Geometry::new(ratio, 1.0)?;
        let shifted = Geometry::new(ratio * (1.0 + opts.sigma_perturbation), 1.0)?;
        let stat = static_free_energy(&shifted, f64::INFINITY, &ctl)?.value;
        let n0 = n0_term(&g);
        worst = worst.max(rel(2.0 * stat, n0));
    }
    Ok((worst, worst <= 1e-12, String::new()))
}

fn static_limit(_: &GoldenOptions) -> Outcome {
    let g = Geometry::new(1.0, 1.25)?;
    let mut tm: f64 = 0.0;
    let mut te: f64 = 0.0;
    for eps in [2.0, 10.0] {
        for l in 1..=30 {
            let expect = static_coupling(eps, l)? * g.sigma(l);
            tm = tm.max(rel(tm_eigenvalue(&g, eps, 1e-6, l)?, expect));
            te = te.max(te_eigenvalue(&g, eps, 1e-3, l)?);
        }
    }
    Ok((tm, tm <= 1e-5 && te <= 1e-4, format!("max TE eigenvalue {te:.2e}, bound 1e-4")))
}

fn cross_method(opts: &GoldenOptions) -> Outcome {
    let ctl = SumControl::with_tol(opts.tol);
    let pm = PermittivityModel::Constant(1e8);
    let mut worst: f64 = 0.0;
    for t in [1.0, 10.0, 100.0] {
        for da in [0.1, 0.5] {
            let g = Geometry::from_gap_ratio(da)?;
            let th = thermal(t)?;
            let c = conductor_free_energy(&g, &th, &ctl)?.value;
            let d = mutual_free_energy_with(&g, &pm, &th, &ctl, ZeroFrequencyTe::ConductorLimit)?.value;
            worst = worst.max(rel(d, c));
        }
    }
    Ok((worst, worst <= 1e-3, String::new()))
}

fn plates_t0(opts: &GoldenOptions) -> Outcome {
    let ctl = SumControl::with_tol(opts.tol);
    let mut devs = Vec::new();
    for da in [0.01, 0.02, 0.05] {
        let g = Geometry::from_gap_ratio(da)?;
        let e = conductor_energy_t0(&g, &ctl)?.value / g.area();
        devs.push((e / plate_energy_closed_form(da) - 1.0).abs());
    }
    let monotone = devs.windows(2).all(|w| w[1] > w[0]);
    let note = format!("deviation at d/a 0.02: {:.2e}, 0.05: {:.2e}", devs[1], devs[2]);
    Ok((devs[0], devs[0] <= 0.02 && monotone, note))
}

fn wronskian(_: &GoldenOptions) -> Outcome {
    let mut worst: f64 = 0.0;
    for x in log_grid(1e-3, 50.0, 61) {
        for l in 0..=80 {
            worst = worst.max(wronskian_defect(l, x)?.abs());
        }
    }
    Ok((worst, worst <= 1e-12, String::new()))
}

fn dilute(_: &GoldenOptions) -> Outcome {
    let mut worst: f64 = 0.0;
    for ratio in [0.2, 0.5, 0.8] {
        let g = Geometry::new(ratio, 1.0)?;
        let series = dilute_overlap_series(&g, 4000);
        let quad = dilute_overlap_quadrature(&g, 1e-10)?;
        worst = worst.max(rel(series, quad));
    }
    Ok((worst, worst <= 1e-6, String::new()))
}

/// `lg(-beta F t)` at finite t, `lg(-2 pi a E)` at t = 0.
fn lg_scaled(g: &Geometry, t: f64, ctl: &SumControl) -> anyhow::Result<f64> {
    let v = if t == 0.0 {
        2.0 * PI * conductor_energy_t0(g, ctl)?.value
    } else {
        t * conductor_free_energy(g, &thermal(t)?, ctl)?.value
    };
    Ok((-v).log10())
}

fn plateau(opts: &GoldenOptions) -> Outcome {
    let ctl = SumControl::with_tol(opts.tol);
    let g = Geometry::from_gap_ratio(0.1)?;
    let delta = (lg_scaled(&g, 1.0, &ctl)? - lg_scaled(&g, 0.0, &ctl)?).abs();
    Ok((delta, delta <= 1e-3, String::new()))
}

fn term_counts(_: &GoldenOptions) -> Outcome {
    let ctl = SumControl::default();
    let mut worst: f64 = 1.0;
    let mut note = Vec::new();
    for (da, reported) in [(0.1, 415_000.0), (1.0, 8900.0)] {
        let g = Geometry::from_gap_ratio(da)?;
        let r = conductor_free_energy(&g, &thermal(0.01)?, &ctl)?;
        let ratio = r.total_terms as f64 / reported;
        worst = worst.max(ratio.max(1.0 / ratio));
        note.push(format!("d/a {da}: {} terms, {} Matsubara indices", r.total_terms, r.n_terms));
    }
    Ok((worst, worst <= 4.0, note.join("; ")))
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Shoulder position `t d / a`, where the plateau `-2 pi a E` meets the
/// classical line `-beta F t` with `beta F -> n0 / 2`.
fn figure3(opts: &GoldenOptions) -> Outcome {
    let ctl = SumControl::with_tol(opts.tol);
    let mut worst: f64 = 2.5;
    let mut ok = true;
    let mut note = Vec::new();
    for da in [0.05, 0.075, 0.1] {
        let g = Geometry::from_gap_ratio(da)?;
        let e = conductor_energy_t0(&g, &ctl)?.value;
        let shoulder = 4.0 * PI * e / n0_term(&g);
        let position = shoulder * da;

        let lg0 = (-2.0 * PI * e).log10();
        let flat = (lg_scaled(&g, 1.0, &ctl)? - lg0).abs();

        // the classical line takes over only well beyond a/d
        let pts = [10.0, 20.0, 40.0]
            .iter()
            .map(|k| {
                let t = k / da;
                Ok((t.log10(), lg_scaled(&g, t, &ctl)?))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let s = slope(&pts);

        ok &= (1.0..=4.0).contains(&position) && flat <= 1e-3 && (s - 1.0).abs() <= 0.01;
        if (position - 2.5).abs() > (worst - 2.5).abs() {
            worst = position;
        }
        note.push(format!("d/a {da}: lg t* {:.3}, plateau {flat:.1e}, slope {s:.4}", shoulder.log10()));
    }
    Ok((worst, ok, note.join("; ")))
}

fn properties(_: &GoldenOptions) -> Outcome {
    let mut ok = true;
    let mut lowest = f64::INFINITY;
    let mut highest: f64 = 0.0;
    for eps in [1.5, 4.0, 1e4] {
        for ratio in [0.1, 0.5, 0.9] {
            let g = Geometry::new(ratio, 1.0)?;
            for x in log_grid(1e-3, 10.0, 9) {
                for l in [1usize, 2, 5, 20, 60, 100] {
                    for lam in [tm_eigenvalue(&g, eps, x / g.a(), l)?, te_eigenvalue(&g, eps, x / g.a(), l)?] {
                        ok &= lam > 0.0 && lam < 1.0;
                        lowest = lowest.min(lam);
                        highest = highest.max(lam);
                    }
                }
            }
        }
    }

    let ctl = SumControl::default();
    let th = thermal(1.0)?;
    let pm = PermittivityModel::Constant(4.0);
    let mut energies = Vec::new();
    for b in [1.2, 2.0, 5.0, 20.0] {
        let g = Geometry::new(1.0, b)?;
        energies.push([
            conductor_free_energy(&g, &th, &ctl)?.value,
            mutual_free_energy(&g, &pm, &th, &ctl)?.value,
            static_free_energy(&g, 4.0, &ctl)?.value,
            mutual_energy_t0(&g, &pm, &ctl)?.value,
        ]);
    }
    for w in energies.windows(2) {
        for (near, far) in w[0].iter().zip(&w[1]) {
            ok &= *near < 0.0 && *far < 0.0 && far.abs() < near.abs();
        }
    }
    let far_ratio = (0..4)
        .map(|k| energies[3][k] / energies[0][k])
        .fold(0.0, f64::max);
    ok &= far_ratio < 1e-2;

    let cfg = RunConfig::resolve(Figure::Point, &{
        let mut s = Settings::default();
        s.set("gap_ratio", "0.1, 0.5");
        s.set("temperature", "0, 1, 10");
        s
    })?;
    let cfg_one = RunConfig {
        threads: Some(1),
        ..cfg.clone()
    };
    let first = sweep::to_csv_string(&sweep::run(&cfg, false)?, false);
    let second = sweep::to_csv_string(&sweep::run(&cfg_one, false)?, false);
    let identical = first == second;
    ok &= identical;

    let note = format!(
        "eigenvalues in [{lowest:.1e}, {highest:.4}], far/near energy ratio {far_ratio:.1e}, identical CSV: {identical}"
    );
    Ok((if ok { 1.0 } else { 0.0 }, ok, note))
}

type CheckFn = fn(&GoldenOptions) -> Outcome;

const CHECKS: [(u8, &str, f64, f64, CheckFn); 12] = [
    (1, "conductor beta F at t=200, d/a=0.05", -249.7, 0.01, golden),
    (2, "discrepancy from the high-t closed form", 0.04, 0.01, high_t_discrepancy),
    (3, "n0 term equals twice the static conductor free energy", 0.0, 1e-12, factor_two),
    (4, "TM eigenvalue reduces to the static coupling", 0.0, 1e-5, static_limit),
    (5, "dielectric at eps=1e8 against conductor", 0.0, 1e-3, cross_method),
    (6, "zero-temperature energy against parallel plates at d/a=0.01", 0.0, 0.02, plates_t0),
    (7, "Wronskian defect", 0.0, 1e-12, wronskian),
    (8, "dilute series against quadrature", 0.0, 1e-6, dilute),
    (9, "low-t plateau at d/a=0.1", 0.0, 1e-3, plateau),
    (10, "term counts against reported totals (worst factor)", 1.0, 4.0, term_counts),
    (11, "figure-3 shoulder position t d/a", 2.5, 1.5, figure3),
    (12, "eigenvalue, sign, decay and determinism properties", 1.0, 0.0, properties),
];

pub fn criteria() -> impl Iterator<Item = (u8, &'static str)> {
    CHECKS.iter().map(|c| (c.0, c.1))
}

pub fn run_check(id: u8, opts: &GoldenOptions) -> Option<Check> {
    let &(id, name, expected, tolerance, f) = CHECKS.iter().find(|c| c.0 == id)?;
    Some(match f(opts) {
        Ok((computed, passed, note)) => Check {
            id,
            name,
            computed,
            expected,
            tolerance,
            passed,
            note,
        },
        Err(e) => Check {
            id,
            name,
            computed: f64::NAN,
            expected,
            tolerance,
            passed: false,
            note: format!("error: {e}"),
        },
    })
}

pub fn run_all(opts: &GoldenOptions) -> Vec<Check> {
    criteria().filter_map(|(id, _)| run_check(id, opts)).collect()
}
