//! Parameter sweeps: one independent job per (d/a, t) pair, run on a bounded
//! pool and written out in a fixed order.

use std::f64::consts::PI;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use casimir_core::asymptotics::{
    lifshitz_plate_energy_t0, lifshitz_plate_free_energy, narrow_slit_energy_t0, narrow_slit_free_energy,
    plate_energy_conductor_t0, plate_free_energy_conductor,
};
use casimir_core::{
    conductor_energy_t0, conductor_free_energy, mutual_energy_t0, mutual_free_energy_with, static_free_energy, Error,
    Geometry, SeriesResult, ThermalState,
};
use rayon::prelude::*;

use crate::config::{Method, RunConfig};

pub const SCHEMA: &str = "#schema: casimir-sweep v1";
pub const HEADER: &str = "method,d_over_a,t,beta_F,lg_neg_betaF,lg_neg_betaF_t,l_terms,n_terms,total_terms,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// The interaction vanishes identically (e.g. eps = 1).
    Zero,
    NonConvergence,
    Invalid,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Zero => "zero",
            RowStatus::NonConvergence => "nonconvergence",
            RowStatus::Invalid => "invalid",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub method: Method,
    pub d_over_a: f64,
    pub t: f64,
    /// Empty at t = 0, where only the energy is finite.
    pub beta_f: Option<f64>,
    pub lg_neg_beta_f: Option<f64>,
    /// `lg(-beta F t) = lg(-2 pi a F)`; at t = 0 this is `lg(-2 pi a E)`.
    pub lg_neg_beta_f_t: Option<f64>,
    pub l_terms: u64,
    pub n_terms: u64,
    pub total_terms: u64,
    pub status: RowStatus,
    pub message: Option<String>,
    pub wall_time: Duration,
}

enum Value {
    /// `beta F` at finite temperature.
    BetaF(f64),
    /// Energy at zero temperature, in units of 1/a.
    Energy(f64),
}

fn counts(r: &SeriesResult) -> (u64, u64, u64) {
    (r.l_terms, r.n_terms, r.total_terms)
}

fn compute(cfg: &RunConfig, d_over_a: f64, t: f64) -> casimir_core::Result<(Value, (u64, u64, u64))> {
    let g = Geometry::from_gap_ratio(d_over_a)?;
    let ctl = &cfg.control;
    let pm = &cfg.model;
    let th = ThermalState::from_nondimensional(t, g.a())?;
    let zero_t = th.is_zero();
    let area = g.area();
    let d = g.d();
    Ok(match cfg.method {
        Method::Static => {
            let r = static_free_energy(&g, pm.static_value(), ctl)?;
            (Value::BetaF(r.value), counts(&r))
        }
        Method::Conductor if zero_t => {
            let r = conductor_energy_t0(&g, ctl)?;
            (Value::Energy(r.value), counts(&r))
        }
        Method::Conductor => {
            let r = conductor_free_energy(&g, &th, ctl)?;
            (Value::BetaF(r.value), counts(&r))
        }
        Method::Dynamic if zero_t => {
            let r = mutual_energy_t0(&g, pm, ctl)?;
            (Value::Energy(r.value), counts(&r))
        }
        Method::Dynamic => {
            let r = mutual_free_energy_with(&g, pm, &th, ctl, cfg.zero_te)?;
            (Value::BetaF(r.value), counts(&r))
        }
        Method::NarrowSlit if zero_t => (Value::Energy(narrow_slit_energy_t0(&g, ctl)?), (0, 0, 0)),
        Method::NarrowSlit => {
            let r = narrow_slit_free_energy(&g, &th, ctl)?;
            (Value::BetaF(r.value), counts(&r))
        }
        Method::Plates if zero_t => (Value::Energy(area * plate_energy_conductor_t0(d, ctl)?), (0, 0, 0)),
        Method::Plates => {
            let r = plate_free_energy_conductor(d, &th, ctl)?;
            (Value::BetaF(area * r.value), counts(&r))
        }
        Method::Lifshitz if zero_t => {
            let r = lifshitz_plate_energy_t0(d, pm, ctl)?;
            (Value::Energy(area * r.value), counts(&r))
        }
        Method::Lifshitz => {
            let r = lifshitz_plate_free_energy(d, pm, &th, ctl)?;
            (Value::BetaF(area * r.value), counts(&r))
        }
    })
}

fn lg_neg(x: f64) -> Option<f64> {
    (x < 0.0).then(|| (-x).log10())
}

/// Evaluate one sweep point. Failures are recorded in the row.
pub fn evaluate(cfg: &RunConfig, d_over_a: f64, t: f64) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        method: cfg.method,
        d_over_a,
        t,
        beta_f: None,
        lg_neg_beta_f: None,
        lg_neg_beta_f_t: None,
        l_terms: 0,
        n_terms: 0,
        total_terms: 0,
        status: RowStatus::Ok,
        message: None,
        wall_time: Duration::ZERO,
    };
    match compute(cfg, d_over_a, t) {
        Ok((value, (l, n, total))) => {
            row.l_terms = l;
            row.n_terms = n;
            row.total_terms = total;
            let scaled = match value {
                Value::BetaF(bf) => {
                    row.beta_f = Some(bf);
                    row.lg_neg_beta_f = lg_neg(bf);
                    (t > 0.0).then_some(bf * t)
                }
                Value::Energy(e) => Some(2.0 * PI * e),
            };
            row.lg_neg_beta_f_t = scaled.and_then(lg_neg);
            if row.beta_f == Some(0.0) || scaled == Some(0.0) {
                row.status = RowStatus::Zero;
            }
        }
        Err(e) => {
            row.status = match e {
                Error::NonConvergence { .. } => RowStatus::NonConvergence,
                Error::InvalidInput(_) => RowStatus::Invalid,
            };
            row.message = Some(e.to_string());
        }
    }
    row.wall_time = start.elapsed();
    row
}

fn report(row: &SweepRow) {
    let value = row
        .beta_f
        .map(|v| format!("beta F = {v:.6e}"))
        .or_else(|| row.lg_neg_beta_f_t.map(|v| format!("lg(-2 pi a E) = {v:.6}")))
        .unwrap_or_default();
    eprintln!(
        "{} d/a={} t={}: {} {} (l<={}, n={}, terms={}) {:.3}s{}",
        row.method.as_str(),
        row.d_over_a,
        row.t,
        row.status.as_str(),
        value,
        row.l_terms,
        row.n_terms,
        row.total_terms,
        row.wall_time.as_secs_f64(),
        row.message.as_deref().map(|m| format!(": {m}")).unwrap_or_default(),
    );
}

/// Run every (d/a, t) pair of `cfg`, sorted by (method, t, d/a).
pub fn run(cfg: &RunConfig, verbose: bool) -> anyhow::Result<Vec<SweepRow>> {
    let jobs: Vec<(f64, f64)> = cfg
        .temperatures
        .iter()
        .flat_map(|&t| cfg.gap_ratios.iter().map(move |&d| (d, t)))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let mut rows: Vec<SweepRow> = pool.install(|| {
        jobs.par_iter()
            .map(|&(d, t)| {
                let row = evaluate(cfg, d, t);
                if verbose {
                    report(&row);
                }
                row
            })
            .collect()
    });
    rows.sort_by(|x, y| {
        x.method
            .cmp(&y.method)
            .then(x.t.total_cmp(&y.t))
            .then(x.d_over_a.total_cmp(&y.d_over_a))
    });
    Ok(rows)
}

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.11e}")).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], timing: bool, mut w: W) -> io::Result<()> {
    writeln!(w, "{SCHEMA}")?;
    if timing {
        writeln!(w, "{HEADER},wall_time_s")?;
    } else {
        writeln!(w, "{HEADER}")?;
    }
    for r in rows {
        write!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.method.as_str(),
            r.d_over_a,
            r.t,
            num(r.beta_f),
            num(r.lg_neg_beta_f),
            num(r.lg_neg_beta_f_t),
            r.l_terms,
            r.n_terms,
            r.total_terms,
            r.status.as_str(),
        )?;
        if timing {
            write!(w, ",{:.6}", r.wall_time.as_secs_f64())?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow], timing: bool) -> String {
    let mut buf = Vec::new();
    write_csv(rows, timing, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("csv is ascii")
}
