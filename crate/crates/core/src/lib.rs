//! Mutual Casimir free energy and surface force between a sphere of radius
//! `a` and a concentric medium beyond radius `b`, at arbitrary temperature.
//!
//! Two routes are provided: mode eigenvalues for arbitrary permittivity
//! ([`dynamic`]) and the perfect-conductor mode ratios ([`conductor`]),
//! together with the static term, the narrow-slit and parallel-plate limits,
//! and the Riccati-Bessel kernel they share.

pub mod asymptotics;
pub mod conductor;
pub mod dynamic;
pub mod error;
pub mod geometry;
mod matsubara;
pub mod permittivity;
pub mod quadrature;
pub mod special;
pub mod static_solver;
pub mod summation;

pub use conductor::{conductor_energy_t0, conductor_force, conductor_free_energy, n0_term, ForceResult};
pub use dynamic::{casimir_force, mutual_energy_t0, mutual_free_energy, mutual_free_energy_with, Mode, ZeroFrequencyTe};
pub use error::{Error, Result, SumKind};
pub use geometry::{Geometry, ThermalState};
pub use permittivity::PermittivityModel;
pub use static_solver::{static_free_energy, static_coupling};
pub use summation::{SeriesResult, SumControl};
