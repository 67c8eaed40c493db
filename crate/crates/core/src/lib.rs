//! Thermodynamics of N quasi-spins coupled through a two-photon exchange with
//! a cavity thermostat.
//!
//! The exchange integral `λ = χ(1 + 2n̄)` grows with temperature through the
//! thermal photon number `n̄`, which changes the shape of the order-disorder
//! transition compared to a constant-coupling quasi-spin model. This crate
//! holds the pure numerics:
//!
//! - [`thermal`]: photon occupation, effective couplings and the microscopic
//!   coupling constants.
//! - [`meanfield`]: free energy, gap equation, critical temperatures and
//!   population inversion.
//! - [`exact`]: finite-N Gibbs sums on the maximal Dicke manifold, used as an
//!   oracle for the mean-field results.
//! - [`sweep`]: temperature sweeps, figure series and phase maps.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! sweeps and the command line live in the `quasispin` crate.
#![no_std]
#![deny(missing_docs)]

extern crate alloc;

mod error;
pub mod exact;
pub mod meanfield;
pub mod sweep;
pub mod thermal;

pub use error::{Error, Result};
pub use exact::{
    compare_meanfield, dicke_spectrum, gibbs_observables, gibbs_weights, ground_state_index,
    ground_state_m, DickeSpectrum, FiniteSizeComparison, GibbsObservables,
};
pub use meanfield::{
    critical_residual, critical_temperatures, free_energy_per_atom, gap_solve, is_ordered, ordering_function,
    population_inversion, rz_relaxation, validity_report, zero_temperature_solution,
    CriticalKind, CriticalPoint, GapSolution, Phase, ValidityReport,
};
pub use sweep::{
    assemble_phase_map, default_theta_range, figure1_series, figure2_series, phase_column,
    phase_map, temperature_sweep, theta_grid, theta_normalizer, thermo_point, BoundaryPoint,
    Figure1Series, Figure2Series, PhaseColumn, PhaseMap, PhaseMapConfig, SweepConfig,
    ThermoPoint,
};
pub use thermal::{
    coupling_constants, couplings_at, mean_photon_number, transition_amplitude, Couplings,
    Level, MicroscopicCouplings, MicroscopicLevels, ModelParams, Variant,
};
