use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Two concentric bodies: a sphere of radius `a` inside a medium that fills
/// `r > b`. Natural units, hbar = c = k_B = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    a: f64,
    b: f64,
}

impl Geometry {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > a) {
            return Err(invalid(format!("radii must satisfy 0 < a < b, got a = {a}, b = {b}")));
        }
        Ok(Self { a, b })
    }

    /// `a = 1`, `b = 1 + d/a`.
    pub fn from_gap_ratio(d_over_a: f64) -> Result<Self> {
        if !(d_over_a > 0.0 && d_over_a.is_finite()) {
            return Err(invalid(format!("gap ratio d/a must be positive, got {d_over_a}")));
        }
        Self::new(1.0, 1.0 + d_over_a)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn with_b(&self, b: f64) -> Result<Self> {
        Self::new(self.a, b)
    }

    pub fn d(&self) -> f64 {
        self.b - self.a
    }

    /// Relative gap `xi = (b - a) / a`.
    pub fn xi(&self) -> f64 {
        self.d() / self.a
    }

    /// `a / b`.
    pub fn ratio(&self) -> f64 {
        self.a / self.b
    }

    /// Inner surface area `4 pi a^2`.
    pub fn area(&self) -> f64 {
        4.0 * PI * self.a * self.a
    }

    /// `(a/b)^(2l+1)`.
    pub fn sigma(&self, l: usize) -> f64 {
        self.ratio().powi(2 * l as i32 + 1)
    }
}

/// Inverse temperature. `beta = infinity` is zero temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    pub beta: f64,
}

impl ThermalState {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0) || beta.is_nan() {
            return Err(invalid(format!("beta must be positive, got {beta}")));
        }
        Ok(Self { beta })
    }

    /// From the nondimensional temperature `t = 2 pi a / beta`; `t = 0` is
    /// zero temperature.
    pub fn from_nondimensional(t: f64, a: f64) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(invalid(format!("temperature t must be finite and >= 0, got {t}")));
        }
        if t == 0.0 {
            return Ok(Self::zero());
        }
        Self::new(2.0 * PI * a / t)
    }

    pub fn zero() -> Self {
        Self { beta: f64::INFINITY }
    }

    pub fn is_zero(&self) -> bool {
        self.beta.is_infinite()
    }

    /// `t = 2 pi a / beta`.
    pub fn nondimensional(&self, a: f64) -> f64 {
        2.0 * PI * a / self.beta
    }

    /// Matsubara frequency `zeta_n = 2 pi n / beta`.
    pub fn zeta(&self, n: u64) -> f64 {
        2.0 * PI * n as f64 / self.beta
    }
}
