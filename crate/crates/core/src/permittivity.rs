use crate::error::{invalid, Result};

/// Dielectric response on the imaginary frequency axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PermittivityModel {
    /// Frequency-independent `epsilon`.
    Constant(f64),
    /// `eps(i zeta) = 1 + (eps0 - 1) / (1 + zeta^2 / omega0^2)`.
    SingleOscillator { eps0: f64, omega0: f64 },
    /// Perfect conductor, `eps = infinity` at every frequency.
    Conductor,
}

impl PermittivityModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Constant(eps) if eps >= 1.0 && !eps.is_nan() => Ok(()),
            Self::Constant(eps) => Err(invalid(format!("permittivity must be >= 1, got {eps}"))),
            Self::SingleOscillator { eps0, omega0 } => {
                if !(eps0 >= 1.0 && eps0.is_finite()) {
                    return Err(invalid(format!("static permittivity must be finite and >= 1, got {eps0}")));
                }
                if !(omega0 > 0.0 && omega0.is_finite()) {
                    return Err(invalid(format!("oscillator frequency must be positive, got {omega0}")));
                }
                Ok(())
            }
            Self::Conductor => Ok(()),
        }
    }

    /// `eps(i zeta)`; infinite for the conductor (and for `Constant(inf)`).
    pub fn at_imaginary(&self, zeta: f64) -> f64 {
        match *self {
            Self::Constant(eps) => eps,
            Self::SingleOscillator { eps0, omega0 } => {
                let u = zeta / omega0;
                1.0 + (eps0 - 1.0) / (1.0 + u * u)
            }
            Self::Conductor => f64::INFINITY,
        }
    }

    pub fn is_conductor(&self) -> bool {
        matches!(self, Self::Conductor) || matches!(self, Self::Constant(e) if e.is_infinite())
    }

    pub fn static_value(&self) -> f64 {
        self.at_imaginary(0.0)
    }
}
