//! Mean-field thermodynamics of the linearized quasi-spin Hamiltonian.
//!
//! For an order parameter `C` every atom sees a two-level splitting
//! `E = √(ϖ² + 4λ²|C|²)`, giving the free energy per atom
//!
//! ```text
//! F/N = −θ·ln(2·cosh(E/2θ)) + λ|C|²
//! ```
//!
//! Its stationary points are `C = 0` and the roots of `u(E) = 1` with
//! `u(E) = (λ/E)·tanh(E/2θ)`. `u` is strictly decreasing on `E > 0`, so the
//! gap equation is solved for `E` rather than for `|C|`, where `C = 0` would be
//! a double root. The ordered branch exists iff `u(|ϖ|) > 1`, and when it
//! exists it is the global minimum.
//!
//! Near `2χ = ω₂₁` the margin `λ − |ϖ|` is many orders of magnitude smaller than
//! `λ` at low temperature, so every test below is written in terms of
//! [`Couplings::excess`] and `1 − tanh` instead of differences of nearly equal
//! numbers.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::thermal::{couplings_at, Couplings, ModelParams};

/// Phase label of a gap-equation solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Nonzero order parameter.
    Ordered,
    /// Zero order parameter.
    Disordered,
}

impl Phase {
    /// Lower-case label used in file formats.
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Ordered => "ordered",
            Phase::Disordered => "disordered",
        }
    }
}

/// Solution of the gap equation at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSolution {
    /// Order parameter |C̃|.
    pub c_abs: f64,
    /// Two-level splitting `E = √(ϖ² + 4λ²|C̃|²)`.
    pub splitting: f64,
    /// Ordered iff `c_abs > 0`.
    pub phase: Phase,
    /// `| |C̃| − (λ|C̃|/E)·tanh(E/2θ) |`.
    pub residual: f64,
    /// Free energy per atom at the solution.
    pub free_energy_per_atom: f64,
}

/// Whether the order parameter switches on or off when θ crosses the root upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    /// Disordered below, ordered above.
    Onset,
    /// Ordered below, disordered above.
    Vanishing,
}

impl CriticalKind {
    /// Lower-case label used in file formats.
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalKind::Onset => "onset",
            CriticalKind::Vanishing => "vanishing",
        }
    }
}

/// A root of the critical-temperature condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    /// Critical temperature θ_cr.
    pub theta_cr: f64,
    /// Couplings evaluated at θ_cr.
    pub couplings_at_cr: Couplings,
    /// Direction of the transition.
    pub kind: CriticalKind,
}

/// `tanh(a/2θ)/a`, continuous at `a = 0` where it equals `1/2θ`. `θ = 0` is
/// the limit `1/a`.
fn tanh_over(a: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        return 1.0 / a;
    }
    let x = a / (2.0 * theta);
    if x < 1e-5 {
        (1.0 - x * x / 3.0) / (2.0 * theta)
    } else {
        libm::tanh(x) / a
    }
}

/// `1 − tanh(a/2θ) = 2q/(1 + q)` with `q = exp(−a/θ)`.
fn one_minus_tanh(a: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        return if a > 0.0 { 0.0 } else { 1.0 };
    }
    let q = libm::exp(-a / theta);
    2.0 * q / (1.0 + q)
}

/// `u(|ϖ|) − 1`, positive exactly when the ordered phase exists.
///
/// For `ϖ ≠ 0` this equals `φ/|ϖ|` with
/// `φ = λ·tanh(|ϖ|/2θ) − |ϖ|`; at `ϖ = 0` it is the continuous limit
/// `λ/2θ − 1`. `θ = 0` is evaluated as the limit `tanh → 1`.
pub fn ordering_function(cpl: &Couplings) -> f64 {
    let a = libm::fabs(cpl.varpi);
    cpl.excess * tanh_over(a, cpl.theta) - one_minus_tanh(a, cpl.theta)
}

/// `λ·tanh(|ϖ|/2θ) − |ϖ|`, the critical-temperature residual.
pub fn critical_residual(cpl: &Couplings) -> f64 {
    libm::fabs(cpl.varpi) * ordering_function(cpl)
}

/// Whether the gap equation has a nonzero solution.
pub fn is_ordered(cpl: &Couplings) -> bool {
    cpl.lambda > 0.0 && cpl.excess > 0.0 && ordering_function(cpl) > 0.0
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(domain("theta", theta, "> 0"));
    }
    Ok(())
}

fn splitting(c_abs: f64, cpl: &Couplings) -> f64 {
    libm::hypot(cpl.varpi, 2.0 * cpl.lambda * c_abs)
}

/// Free energy per atom, `−θ·ln(2cosh(E/2θ)) + λ|C|²`, in a form that stays
/// finite for any `E/θ`.
pub fn free_energy_per_atom(c_abs: f64, cpl: &Couplings) -> Result<f64> {
    check_theta(cpl.theta)?;
    if c_abs.is_nan() || c_abs < 0.0 {
        return Err(domain("c_abs", c_abs, ">= 0"));
    }
    let e = splitting(c_abs, cpl);
    let theta = cpl.theta;
    Ok(-0.5 * e - theta * libm::log1p(libm::exp(-e / theta)) + cpl.lambda * c_abs * c_abs)
}

fn ordered_solution(cpl: &Couplings, gap: f64, theta_is_zero: bool) -> GapSolution {
    let a = libm::fabs(cpl.varpi);
    let e = a + gap;
    let c_abs = libm::sqrt(gap * (2.0 * a + gap)) / (2.0 * cpl.lambda);
    if c_abs == 0.0 {
        return disordered_solution(cpl, theta_is_zero);
    }
    let (residual, free_energy) = if theta_is_zero {
        let residual = c_abs * libm::fabs(cpl.lambda / e - 1.0);
        (residual, -0.5 * e + cpl.lambda * c_abs * c_abs)
    } else {
        let u = (cpl.excess - gap) * tanh_over(e, cpl.theta) - one_minus_tanh(e, cpl.theta);
        let f = -0.5 * e - cpl.theta * libm::log1p(libm::exp(-e / cpl.theta))
            + cpl.lambda * c_abs * c_abs;
        (c_abs * libm::fabs(u), f)
    };
    GapSolution {
        c_abs,
        splitting: e,
        phase: Phase::Ordered,
        residual,
        free_energy_per_atom: free_energy,
    }
}

fn disordered_solution(cpl: &Couplings, theta_is_zero: bool) -> GapSolution {
    let a = libm::fabs(cpl.varpi);
    let free_energy = if theta_is_zero {
        -0.5 * a
    } else {
        -0.5 * a - cpl.theta * libm::log1p(libm::exp(-a / cpl.theta))
    };
    GapSolution {
        c_abs: 0.0,
        splitting: a,
        phase: Phase::Disordered,
        residual: 0.0,
        free_energy_per_atom: free_energy,
    }
}

/// Solves the gap equation `|C̃| = (λ|C̃|/E)·tanh(E/2θ)` for the global
/// free-energy minimum.
///
/// The splitting is bracketed as `E = |ϖ| + g` with `g ∈ (0, λ − |ϖ|]` and
/// bisected to the resolution of `f64`, so the residual is far below any
/// `tol` in the accepted range `(0, 1e-3]`.
pub fn gap_solve(cpl: &Couplings, tol: f64) -> Result<GapSolution> {
    check_theta(cpl.theta)?;
    if cpl.lambda.is_nan() || cpl.lambda <= 0.0 {
        return Err(domain("lambda", cpl.lambda, "> 0"));
    }
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(domain("tol", tol, "in (0, 1e-3]"));
    }
    if !is_ordered(cpl) {
        return Ok(disordered_solution(cpl, false));
    }
    let a = libm::fabs(cpl.varpi);
    // u(E) − 1 with E = a + g, written without cancellation
    let shifted_u = |g: f64| {
        let e = a + g;
        (cpl.excess - g) * tanh_over(e, cpl.theta) - one_minus_tanh(e, cpl.theta)
    };
    let (mut lo, mut hi) = (0.0, cpl.excess);
    for _ in 0..2200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if shifted_u(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ordered_solution(cpl, 0.5 * (lo + hi), false))
}

/// The `θ → 0` limit of [`gap_solve`], where `tanh → 1` and `E* = λ`.
pub fn zero_temperature_solution(cpl: &Couplings) -> Result<GapSolution> {
    if cpl.lambda.is_nan() || cpl.lambda <= 0.0 {
        return Err(domain("lambda", cpl.lambda, "> 0"));
    }
    if cpl.excess > 0.0 {
        Ok(ordered_solution(cpl, cpl.excess, true))
    } else {
        Ok(disordered_solution(cpl, true))
    }
}

/// Roots of the critical condition `λ(θ)·tanh(|ϖ(θ)|/2θ) = |ϖ(θ)|` in
/// `theta_range`, sorted by θ.
///
/// The ordering test is scanned on a uniform grid of `grid_points` points and
/// every change of phase is refined by bisection until the bracket is below
/// `tol` relative to θ.
pub fn critical_temperatures(
    params: &ModelParams,
    theta_range: (f64, f64),
    grid_points: usize,
    tol: f64,
) -> Result<Vec<CriticalPoint>> {
    params.validate()?;
    let (lo, hi) = theta_range;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Range { lo, hi });
    }
    if grid_points < 64 {
        return Err(domain("grid_points", grid_points as f64, ">= 64"));
    }
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(domain("tol", tol, "in (0, 1e-3]"));
    }
    let ordered_at = |theta: f64| -> Result<bool> { Ok(is_ordered(&couplings_at(params, theta)?)) };

    let step = (hi - lo) / (grid_points - 1) as f64;
    let node = |i: usize| {
        if i + 1 == grid_points {
            hi
        } else {
            lo + step * i as f64
        }
    };

    let mut roots = Vec::new();
    let mut prev_theta = node(0);
    let mut prev = ordered_at(prev_theta)?;
    for i in 1..grid_points {
        let theta = node(i);
        let cur = ordered_at(theta)?;
        if cur != prev {
            let (mut a, mut b) = (prev_theta, theta);
            while b - a > tol * b {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if ordered_at(mid)? == prev {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let theta_cr = 0.5 * (a + b);
            roots.push(CriticalPoint {
                theta_cr,
                couplings_at_cr: couplings_at(params, theta_cr)?,
                kind: if prev {
                    CriticalKind::Vanishing
                } else {
                    CriticalKind::Onset
                },
            });
        }
        prev = cur;
        prev_theta = theta;
    }
    Ok(roots)
}

/// Mean atomic inversion per atom, `−½·(ϖ/E)·tanh(E/2θ)`.
///
/// In the ordered phase the gap equation forces `tanh(E/2θ) = E/λ`, so this
/// reduces to [`rz_relaxation`]. `θ = 0` is taken as the limit `tanh → 1`.
pub fn population_inversion(cpl: &Couplings, sol: &GapSolution) -> f64 {
    let e = sol.splitting;
    if e == 0.0 {
        return 0.0;
    }
    let t = if cpl.theta == 0.0 {
        1.0
    } else {
        libm::tanh(e / (2.0 * cpl.theta))
    };
    -0.5 * (cpl.varpi / e) * t
}

/// Inversion `−ϖ/(2λ)` at the minimum of the effective Hamiltonian.
pub fn rz_relaxation(cpl: &Couplings) -> f64 {
    -cpl.varpi / (2.0 * cpl.lambda)
}

/// Checks of the Bloch-vector bound and the critical-ratio window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    /// `|ϖ| < 2jλ = Nλ`.
    pub bloch_ok: bool,
    /// `2n̄² < ω₂₁/χ < 2(1 + n̄)²`.
    pub window_ok: bool,
    /// `Nλ − |ϖ|`.
    pub bloch_margin: f64,
    /// `ω₂₁/χ − 2n̄²`.
    pub window_lower_margin: f64,
    /// `2(1 + n̄)² − ω₂₁/χ`.
    pub window_upper_margin: f64,
}

/// Evaluates the validity inequalities at temperature `theta`.
pub fn validity_report(params: &ModelParams, theta: f64) -> Result<ValidityReport> {
    let cpl = couplings_at(params, theta)?;
    let bloch_margin = params.n_atoms as f64 * cpl.lambda - libm::fabs(cpl.varpi);
    let ratio = params.omega21 / params.chi;
    let n = cpl.nbar;
    let window_lower_margin = ratio - 2.0 * n * n;
    let window_upper_margin = 2.0 * (1.0 + n) * (1.0 + n) - ratio;
    Ok(ValidityReport {
        bloch_ok: bloch_margin > 0.0,
        window_ok: window_lower_margin > 0.0 && window_upper_margin > 0.0,
        bloch_margin,
        window_lower_margin,
        window_upper_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal::Variant;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        libm::fabs(a - b) <= tol
    }

    #[test]
    fn free_energy_at_zero_order_parameter() {
        let cpl = Couplings::from_effective(0.2, 0.6, 0.4);
        let f = free_energy_per_atom(0.0, &cpl).unwrap();
        let expected = -0.2 * libm::log(2.0 * libm::cosh(1.0));
        assert!(close(f, expected, 1e-15));
        assert!(close(f, -0.225_385_602_208_594_5, 1e-15));
    }

    #[test]
    fn free_energy_is_finite_at_tiny_theta() {
        let cpl = Couplings::from_effective(1e-12, 0.6, 0.4);
        for c in [0.0, 0.1, 0.37, 1.0] {
            assert!(free_energy_per_atom(c, &cpl).unwrap().is_finite());
        }
        let sol = gap_solve(&cpl, 1e-10).unwrap();
        assert!(sol.c_abs.is_finite() && sol.free_energy_per_atom.is_finite());
        assert!(population_inversion(&cpl, &sol).is_finite());
    }

    #[test]
    fn free_energy_rejects_zero_theta() {
        let cpl = Couplings::from_effective(0.0, 0.6, 0.4);
        assert!(free_energy_per_atom(0.1, &cpl).is_err());
        assert!(gap_solve(&cpl, 1e-10).is_err());
    }

    #[test]
    fn disordered_above_half_lambda() {
        let cpl = Couplings::from_effective(0.35, 0.6, 0.4);
        let sol = gap_solve(&cpl, 1e-10).unwrap();
        assert_eq!(sol.phase, Phase::Disordered);
        assert_eq!(sol.c_abs, 0.0);
        assert_eq!(sol.residual, 0.0);
    }

    #[test]
    fn ordered_near_zero_temperature() {
        let cpl = Couplings::from_effective(1e-4, 0.6, 0.4);
        let sol = gap_solve(&cpl, 1e-10).unwrap();
        assert_eq!(sol.phase, Phase::Ordered);
        assert!(close(sol.c_abs, libm::sqrt(0.2) / 1.2, 1e-9));
        assert!(libm::fabs(cpl.varpi) < sol.splitting && sol.splitting <= cpl.lambda);
    }

    #[test]
    fn zero_temperature_limit_matches_closed_form() {
        let cpl = Couplings::from_effective(0.0, 0.6, 0.4);
        let sol = zero_temperature_solution(&cpl).unwrap();
        assert!(close(sol.c_abs, libm::sqrt(0.2) / 1.2, 1e-15));
        assert!(close(sol.splitting, 0.6, 1e-15));
        // −(ϖ² + λ²)/(4λ)
        assert!(close(sol.free_energy_per_atom, -0.52 / 2.4, 1e-15));
        assert!(close(population_inversion(&cpl, &sol), -1.0 / 3.0, 1e-15));

        let flat = Couplings::from_effective(0.0, 0.5, 0.5);
        let sol = zero_temperature_solution(&flat).unwrap();
        assert_eq!(sol.phase, Phase::Disordered);
        assert!(close(sol.free_energy_per_atom, -0.25, 1e-15));
    }

    #[test]
    fn degenerate_splitting_uses_half_lambda() {
        let below = Couplings::from_effective(0.29, 0.6, 0.0);
        let above = Couplings::from_effective(0.31, 0.6, 0.0);
        assert!(is_ordered(&below));
        assert!(!is_ordered(&above));
        let sol = gap_solve(&below, 1e-10).unwrap();
        assert_eq!(sol.phase, Phase::Ordered);
        assert!(close(population_inversion(&below, &sol), 0.0, 1e-15));
        let sol = gap_solve(&above, 1e-10).unwrap();
        assert_eq!(population_inversion(&above, &sol), 0.0);
    }

    #[test]
    fn ordering_function_is_continuous_in_varpi() {
        let at_zero = ordering_function(&Couplings::from_effective(0.2, 0.6, 0.0));
        let near = ordering_function(&Couplings::from_effective(0.2, 0.6, 1e-9));
        assert!(close(at_zero, 0.5, 1e-12));
        assert!(close(at_zero, near, 1e-9));
    }

    #[test]
    fn gap_solve_rejects_bad_tolerance() {
        let cpl = Couplings::from_effective(0.1, 0.6, 0.4);
        assert!(gap_solve(&cpl, 0.0).is_err());
        assert!(gap_solve(&cpl, 1e-2).is_err());
        assert!(gap_solve(&cpl, 1e-3).is_ok());
    }

    #[test]
    fn traditional_critical_temperature_closed_form() {
        let p = ModelParams::from_ratio(0.6, Variant::Traditional).unwrap();
        let roots = critical_temperatures(&p, (1e-3, 2.0), 512, 1e-10).unwrap();
        assert_eq!(roots.len(), 1);
        let expected = 0.4 / libm::log(5.0);
        assert!(close(roots[0].theta_cr, expected, 1e-9));
        assert_eq!(roots[0].kind, CriticalKind::Vanishing);
        assert!(close(critical_residual(&roots[0].couplings_at_cr), 0.0, 1e-10));
    }

    #[test]
    fn traditional_half_ratio_has_no_transition() {
        let p = ModelParams::from_ratio(0.5, Variant::Traditional).unwrap();
        assert!(critical_temperatures(&p, (1e-4, 5.0), 512, 1e-10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn proposed_half_ratio_has_a_single_vanishing_root() {
        // ordered for every θ > 0 down to the scan start: no spurious onset
        let p = ModelParams::from_ratio(0.5, Variant::Proposed).unwrap();
        let roots = critical_temperatures(&p, (2e-3, 2.0), 512, 1e-10).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].kind, CriticalKind::Vanishing);
    }

    #[test]
    fn critical_temperatures_validates_inputs() {
        let p = ModelParams::from_ratio(0.6, Variant::Traditional).unwrap();
        assert_eq!(
            critical_temperatures(&p, (0.0, 1.0), 512, 1e-10),
            Err(Error::Range { lo: 0.0, hi: 1.0 })
        );
        assert!(critical_temperatures(&p, (0.5, 0.4), 512, 1e-10).is_err());
        assert!(critical_temperatures(&p, (0.1, 1.0), 63, 1e-10).is_err());
    }

    #[test]
    fn relaxation_values() {
        assert_eq!(rz_relaxation(&Couplings::from_effective(0.1, 0.6, 0.0)), 0.0);
        let r = rz_relaxation(&Couplings::from_effective(0.1, 0.6, 0.4));
        assert!(close(r, -1.0 / 3.0, 1e-15));
    }

    #[test]
    fn inversion_at_traditional_critical_point() {
        let theta_cr = 0.4 / libm::log(5.0);
        let cpl = Couplings::from_effective(theta_cr, 0.6, 0.4);
        let sol = gap_solve(&cpl, 1e-10).unwrap();
        assert!(close(population_inversion(&cpl, &sol), -1.0 / 3.0, 1e-12));
    }

    #[test]
    fn validity_examples() {
        let p = ModelParams::from_ratio(0.6, Variant::Traditional).unwrap();
        let r = validity_report(&p, 0.0).unwrap();
        assert!(r.bloch_ok);
        assert!(close(r.bloch_margin, 59.6, 1e-12));
        assert!(r.window_ok);

        let edge = ModelParams::from_ratio(0.5, Variant::Proposed).unwrap();
        let r = validity_report(&edge, 0.0).unwrap();
        assert!(!r.window_ok);
        assert_eq!(r.window_upper_margin, 0.0);
    }
}
