//! Temperature sweeps, figure series and phase maps.
//!
//! Everything here is sequential. Each sweep is a map over independent grid
//! points built from [`thermo_point`] and [`phase_column`], so parallel
//! drivers can reuse the same kernels and reassemble results by index.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::meanfield::{
    critical_temperatures, gap_solve, is_ordered, population_inversion, rz_relaxation,
    zero_temperature_solution, CriticalKind, CriticalPoint, Phase,
};
use crate::thermal::{couplings_at, ModelParams, Variant};

/// Default number of scan points for critical-temperature searches.
pub const DEFAULT_GRID_POINTS: usize = 512;
/// Default relative root tolerance on θ.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Upper end of the Fig. 1 style axis, in units of the normalizer.
pub const FIGURE1_AXIS_MAX: f64 = 1.05;
/// Upper end of the Fig. 2 style axis, in units of the normalizer.
pub const FIGURE2_AXIS_MAX: f64 = 2.0;
/// Largest accepted phase-map size `nx·ny`.
pub const MAX_MAP_CELLS: u64 = 10_000_000;

/// One row of a temperature sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    /// Model that produced the row.
    pub variant: Variant,
    /// Temperature θ.
    pub theta: f64,
    /// Mean photon number n̄.
    pub nbar: f64,
    /// Exchange integral λ.
    pub lambda: f64,
    /// Splitting ϖ.
    pub varpi: f64,
    /// Order parameter |C̃|.
    pub c_abs: f64,
    /// Free energy per atom.
    pub free_energy_per_atom: f64,
    /// Mean-field inversion `−½(ϖ/E)tanh(E/2θ)`.
    pub rz_eq10: f64,
    /// Hamiltonian-minimum inversion `−ϖ/(2λ)`.
    pub rz_eq4: f64,
    /// Phase label.
    pub phase: Phase,
}

impl ThermoPoint {
    /// Copy with θ divided by `scale`.
    pub fn normalized(mut self, scale: f64) -> Self {
        self.theta /= scale;
        self
    }
}

/// Evaluates every sweep quantity at one temperature. `θ = 0` uses the
/// analytic zero-temperature limit.
pub fn thermo_point(params: &ModelParams, theta: f64, tol: f64) -> Result<ThermoPoint> {
    let cpl = couplings_at(params, theta)?;
    let sol = if theta == 0.0 {
        zero_temperature_solution(&cpl)?
    } else {
        gap_solve(&cpl, tol)?
    };
    Ok(ThermoPoint {
        variant: params.variant,
        theta,
        nbar: cpl.nbar,
        lambda: cpl.lambda,
        varpi: cpl.varpi,
        c_abs: sol.c_abs,
        free_energy_per_atom: sol.free_energy_per_atom,
        rz_eq10: population_inversion(&cpl, &sol),
        rz_eq4: rz_relaxation(&cpl),
        phase: sol.phase,
    })
}

/// `points` equally spaced values from `lo` to `hi`, both included. A single
/// point is `lo`.
pub fn theta_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let step = (hi - lo) / (points - 1) as f64;
            (0..points)
                .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Temperature sweep settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    /// Model parameters; `params.variant` selects the model.
    pub params: ModelParams,
    /// First temperature (may be 0).
    pub theta_min: f64,
    /// Last temperature.
    pub theta_max: f64,
    /// Number of temperatures, endpoints included.
    pub points: usize,
    /// Divide θ by the proposed-model critical temperature on output.
    pub normalize_axis: bool,
    /// Gap-equation tolerance.
    pub tol: f64,
}

impl SweepConfig {
    /// Sweep over `[theta_min, theta_max]` with the default tolerance and no
    /// axis normalization.
    pub fn new(params: ModelParams, theta_min: f64, theta_max: f64, points: usize) -> Self {
        SweepConfig {
            params,
            theta_min,
            theta_max,
            points,
            normalize_axis: false,
            tol: DEFAULT_TOL,
        }
    }

    /// Checks the configuration invariants.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.theta_min >= 0.0 && self.theta_max > self.theta_min && self.theta_max.is_finite())
        {
            return Err(domain(
                "theta_max",
                self.theta_max,
                "finite and > theta_min >= 0",
            ));
        }
        if self.points < 2 {
            return Err(domain("points", self.points as f64, ">= 2"));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(domain("tol", self.tol, "in (0, 1e-3]"));
        }
        Ok(())
    }

    /// The temperatures visited by the sweep.
    pub fn thetas(&self) -> Vec<f64> {
        theta_grid(self.theta_min, self.theta_max, self.points)
    }
}

/// Sweeps `cfg.params.variant` over the configured grid. θ is not normalized.
pub fn temperature_sweep(cfg: &SweepConfig) -> Result<Vec<ThermoPoint>> {
    cfg.validate()?;
    cfg.thetas()
        .into_iter()
        .map(|theta| thermo_point(&cfg.params, theta, cfg.tol))
        .collect()
}

/// Critical-temperature scan range used when none is given: `(θ_hi/1000, θ_hi]`
/// with `θ_hi = max(2ω₂₁, 3θ_cr)` and `θ_cr` the constant-coupling critical
/// temperature when it exists.
pub fn default_theta_range(params: &ModelParams) -> Result<(f64, f64)> {
    params.validate()?;
    let base_hi = 2.0 * params.omega21;
    let traditional = params.with_variant(Variant::Traditional);
    let roots = critical_temperatures(
        &traditional,
        (base_hi / 1000.0, base_hi),
        DEFAULT_GRID_POINTS,
        DEFAULT_TOL,
    )?;
    let hi = roots
        .iter()
        .map(|r| 3.0 * r.theta_cr)
        .fold(base_hi, libm::fmax);
    Ok((hi / 1000.0, hi))
}

/// Largest vanishing critical temperature of the proposed model, the axis
/// normalizer `T_cr^max`.
pub fn theta_normalizer(params: &ModelParams, tol: f64) -> Result<f64> {
    let proposed = params.with_variant(Variant::Proposed);
    let range = default_theta_range(&proposed)?;
    critical_temperatures(&proposed, range, DEFAULT_GRID_POINTS, tol)?
        .iter()
        .filter(|r| r.kind == CriticalKind::Vanishing)
        .map(|r| r.theta_cr)
        .reduce(libm::fmax)
        .ok_or(Error::NoCriticalPoint {
            chi_ratio: params.chi_ratio(),
            theta_max: range.1,
        })
}

fn check_ratio(chi_ratio: f64) -> Result<()> {
    if !(chi_ratio > 0.0 && chi_ratio < 1.0) {
        return Err(domain("chi_ratio", chi_ratio, "in (0, 1)"));
    }
    Ok(())
}

fn sweep_both(
    params: &ModelParams,
    theta_max: f64,
    points: usize,
    tol: f64,
) -> Result<(Vec<ThermoPoint>, Vec<ThermoPoint>)> {
    let mut cfg = SweepConfig::new(params.with_variant(Variant::Proposed), 0.0, theta_max, points);
    cfg.tol = tol;
    let proposed = temperature_sweep(&cfg)?;
    cfg.params = params.with_variant(Variant::Traditional);
    let traditional = temperature_sweep(&cfg)?;
    Ok((proposed, traditional))
}

/// Paired order-parameter curves for one coupling ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Series {
    /// χ/ω₂₁.
    pub chi_ratio: f64,
    /// Proposed-model critical temperature used to normalize θ.
    pub theta_scale: f64,
    /// Proposed model, raw θ.
    pub proposed: Vec<ThermoPoint>,
    /// Constant-coupling model on the same θ grid.
    pub traditional: Vec<ThermoPoint>,
}

/// Order parameter against `θ/θ_cr^max ∈ [0, 1.05]` for each ratio, for both
/// models. `base` supplies ω₂₁ and ω_k; its χ is replaced by `ratio·ω₂₁`.
pub fn figure1_series(
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
                sweep_both(&params, FIGURE1_AXIS_MAX * theta_scale, points, tol)?;
            Ok(Figure1Series {
                chi_ratio: ratio,
                theta_scale,
                proposed,
                traditional,
            })
        })
        .collect()
}

/// Inversion curves from the gap solution and from the Hamiltonian minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure2Series {
    /// χ/ω₂₁.
    pub chi_ratio: f64,
    /// Proposed-model critical temperature.
    pub theta_scale: f64,
    /// Proposed model over `θ ∈ [0, 2θ_cr]`.
    pub proposed: Vec<ThermoPoint>,
    /// Constant-coupling model on the same grid.
    pub traditional: Vec<ThermoPoint>,
}

/// `(θ, rz_eq10, rz_eq4)` curves over `θ ∈ [0, 2θ_cr^max]` for both models.
pub fn figure2_series(
    base: &ModelParams,
    chi_ratio: f64,
    points: usize,
    tol: f64,
) -> Result<Figure2Series> {
    check_ratio(chi_ratio)?;
    let params = base.with_chi(chi_ratio * base.omega21);
    let theta_scale = theta_normalizer(&params, tol)?;
    let (proposed, traditional) =
        sweep_both(&params, FIGURE2_AXIS_MAX * theta_scale, points, tol)?;
    Ok(Figure2Series {
        chi_ratio,
        theta_scale,
        proposed,
        traditional,
    })
}

/// A point of the phase boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    /// χ/ω₂₁ of the column.
    pub chi_ratio: f64,
    /// Critical temperature.
    pub theta: f64,
    /// Direction of the transition.
    pub kind: CriticalKind,
}

/// Phase classification over a (χ/ω₂₁, θ) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMap {
    /// Column coordinates.
    pub chi_ratios: Vec<f64>,
    /// Row coordinates.
    pub thetas: Vec<f64>,
    /// Row-major cells: `cells[row * nx + col]` is at `(chi_ratios[col], thetas[row])`.
    pub cells: Vec<Phase>,
    /// Critical points of every column, by column then by θ.
    pub boundary: Vec<BoundaryPoint>,
}

impl PhaseMap {
    /// Phase at `(col, row)`.
    pub fn cell(&self, col: usize, row: usize) -> Phase {
        self.cells[row * self.chi_ratios.len() + col]
    }
}

/// Inputs of a phase map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMapConfig {
    /// Supplies ω₂₁, ω_k and the variant; χ is swept.
    pub base: ModelParams,
    /// `(lo, hi)` of χ/ω₂₁.
    pub chi_ratio_range: (f64, f64),
    /// `(lo, hi)` of θ.
    pub theta_range: (f64, f64),
    /// Number of columns.
    pub nx: usize,
    /// Number of rows.
    pub ny: usize,
    /// Root tolerance for the boundary.
    pub tol: f64,
}

impl PhaseMapConfig {
    /// Checks ranges and size.
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        let (xlo, xhi) = self.chi_ratio_range;
        if !(xlo > 0.0 && xhi >= xlo && xhi.is_finite()) {
            return Err(domain("chi_ratio_range", xlo, "0 < lo <= hi"));
        }
        let (tlo, thi) = self.theta_range;
        if !(tlo > 0.0 && thi >= tlo && thi.is_finite()) {
            return Err(Error::Range { lo: tlo, hi: thi });
        }
        let cells = (self.nx as u64).saturating_mul(self.ny as u64);
        if self.nx == 0 || self.ny == 0 || cells > MAX_MAP_CELLS {
            return Err(Error::Size {
                name: "nx*ny",
                value: cells,
                limit: MAX_MAP_CELLS,
            });
        }
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(domain("tol", self.tol, "in (0, 1e-3]"));
        }
        Ok(())
    }

    /// Column coordinates.
    pub fn chi_ratios(&self) -> Vec<f64> {
        theta_grid(self.chi_ratio_range.0, self.chi_ratio_range.1, self.nx)
    }

    /// Row coordinates.
    pub fn thetas(&self) -> Vec<f64> {
        theta_grid(self.theta_range.0, self.theta_range.1, self.ny)
    }
}

/// One classified column of a phase map plus its critical points.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseColumn {
    /// Phase at each θ of the map, bottom to top.
    pub phases: Vec<Phase>,
    /// Critical points found by bisection in the column.
    pub roots: Vec<CriticalPoint>,
}

/// Classifies one column at `chi_ratio` and bisects its boundary.
pub fn phase_column(cfg: &PhaseMapConfig, chi_ratio: f64) -> Result<PhaseColumn> {
    let params = cfg.base.with_chi(chi_ratio * cfg.base.omega21);
    let phases = cfg
        .thetas()
        .into_iter()
        .map(|theta| {
            let ordered = is_ordered(&couplings_at(&params, theta)?);
            Ok(if ordered {
                Phase::Ordered
            } else {
                Phase::Disordered
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = cfg.theta_range;
    let roots = if hi > lo {
        critical_temperatures(&params, (lo, hi), cfg.ny.max(64), cfg.tol)?
    } else {
        Vec::new()
    };
    Ok(PhaseColumn { phases, roots })
}

/// Builds the row-major map from columns given in column order.
pub fn assemble_phase_map(cfg: &PhaseMapConfig, columns: Vec<PhaseColumn>) -> PhaseMap {
    let chi_ratios = cfg.chi_ratios();
    let thetas = cfg.thetas();
    let mut cells = Vec::with_capacity(cfg.nx * cfg.ny);
    for row in 0..cfg.ny {
        cells.extend(columns.iter().map(|c| c.phases[row]));
    }
    let boundary = columns
        .iter()
        .zip(&chi_ratios)
        .flat_map(|(col, &chi_ratio)| {
            col.roots.iter().map(move |r| BoundaryPoint {
                chi_ratio,
                theta: r.theta_cr,
                kind: r.kind,
            })
        })
        .collect();
    PhaseMap {
        chi_ratios,
        thetas,
        cells,
        boundary,
    }
}

/// Classifies every cell of the (χ/ω₂₁, θ) grid.
pub fn phase_map(cfg: &PhaseMapConfig) -> Result<PhaseMap> {
    cfg.validate()?;
    let columns = cfg
        .chi_ratios()
        .into_iter()
        .map(|x| phase_column(cfg, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_phase_map(cfg, columns))
}
