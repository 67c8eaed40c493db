//! Parallel drivers for the sweeps in `quasispin_core::sweep`.
//!
//! Work items are independent grid points. Results are collected by input
//! index, so output never depends on the number of threads.

use rayon::prelude::*;

use quasispin_core::sweep::{
    assemble_phase_map, phase_column, theta_grid, theta_normalizer, thermo_point, Figure1Series,
    Figure2Series, PhaseMap, PhaseMapConfig, SweepConfig, ThermoPoint, FIGURE1_AXIS_MAX,
    FIGURE2_AXIS_MAX,
};
use quasispin_core::{Error, ModelParams, Result, Variant};

/// Builds a pool with `threads` workers; 0 lets rayon choose.
pub fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Parallel [`quasispin_core::temperature_sweep`].
pub fn temperature_sweep(pool: &rayon::ThreadPool, cfg: &SweepConfig) -> Result<Vec<ThermoPoint>> {
    cfg.validate()?;
    let thetas = cfg.thetas();
    pool.install(|| {
        thetas
            .par_iter()
            .map(|&theta| thermo_point(&cfg.params, theta, cfg.tol))
            .collect()
    })
}

fn check_ratio(chi_ratio: f64) -> Result<()> {
    if !(chi_ratio > 0.0 && chi_ratio < 1.0) {
        return Err(Error::Domain {
            name: "chi_ratio",
            value: chi_ratio,
            requirement: "in (0, 1)",
        });
    }
    Ok(())
}

fn sweep_both(
    pool: &rayon::ThreadPool,
    params: &ModelParams,
    theta_max: f64,
    points: usize,
    tol: f64,
) -> Result<(Vec<ThermoPoint>, Vec<ThermoPoint>)> {
    let mut cfg = SweepConfig::new(params.with_variant(Variant::Proposed), 0.0, theta_max, points);
    cfg.tol = tol;
    let proposed = temperature_sweep(pool, &cfg)?;
    cfg.params = params.with_variant(Variant::Traditional);
    let traditional = temperature_sweep(pool, &cfg)?;
    Ok((proposed, traditional))
}

/// Parallel [`quasispin_core::figure1_series`].
pub fn figure1_series(
    pool: &rayon::ThreadPool,
    base: &ModelParams,
    chi_ratios: &[f64],
    points: usize,
    tol: f64,
) -> Result<Vec<Figure1Series>> {
    chi_ratios
        .iter()
        .map(|&ratio| {
            check_ratio(ratio)?;
            let params = base.with_chi(ratio * base.omega21);
            let theta_scale = theta_normalizer(&params, tol)?;
            let (proposed, traditional) =
                sweep_both(pool, &params, FIGURE1_AXIS_MAX * theta_scale, points, tol)?;
            Ok(Figure1Series {
                chi_ratio: ratio,
                theta_scale,
                proposed,
                traditional,
            })
        })
        .collect()
}

/// Parallel [`quasispin_core::figure2_series`].
pub fn figure2_series(
    pool: &rayon::ThreadPool,
    base: &ModelParams,
    chi_ratio: f64,
    points: usize,
    tol: f64,
) -> Result<Figure2Series> {
    check_ratio(chi_ratio)?;
    let params = base.with_chi(chi_ratio * base.omega21);
    let theta_scale = theta_normalizer(&params, tol)?;
    let (proposed, traditional) =
        sweep_both(pool, &params, FIGURE2_AXIS_MAX * theta_scale, points, tol)?;
    Ok(Figure2Series {
        chi_ratio,
        theta_scale,
        proposed,
        traditional,
    })
}

/// Parallel [`quasispin_core::phase_map`]; columns are the work items.
pub fn phase_map(pool: &rayon::ThreadPool, cfg: &PhaseMapConfig) -> Result<PhaseMap> {
    cfg.validate()?;
    let chis = theta_grid(cfg.chi_ratio_range.0, cfg.chi_ratio_range.1, cfg.nx);
    let columns = pool.install(|| {
        chis.par_iter()
            .map(|&x| phase_column(cfg, x))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(assemble_phase_map(cfg, columns))
}
