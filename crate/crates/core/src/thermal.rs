//! Photon occupation and the effective couplings it induces.
//!
//! Units: ħ = 1 and κ_B = 1, so temperatures `θ = κT` and all frequencies
//! share one energy unit. Every formula here is homogeneous of degree one in
//! energy, so callers may work in units of ω₂₁ or in raw values.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};

/// Which exchange model to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Two-photon exchange with the thermostat: `n̄` follows the temperature.
    Proposed,
    /// Constant-coupling comparison model obtained by forcing `n̄ = 0`.
    Traditional,
}

impl Variant {
    /// Lower-case label used in file formats.
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Proposed => "proposed",
            Variant::Traditional => "traditional",
        }
    }
}

/// Physical inputs of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Atomic transition frequency ω₂₁.
    pub omega21: f64,
    /// Atom-atom exchange coefficient χ.
    pub chi: f64,
    /// Cavity photon frequency ω_k entering the thermal occupation.
    pub omega_k: f64,
    /// Number of atoms N.
    pub n_atoms: u32,
    /// Exchange model.
    pub variant: Variant,
}

impl ModelParams {
    /// Builds and validates a parameter set.
    pub fn new(
        omega21: f64,
        chi: f64,
        omega_k: f64,
        n_atoms: u32,
        variant: Variant,
    ) -> Result<Self> {
        let params = ModelParams {
            omega21,
            chi,
            omega_k,
            n_atoms,
            variant,
        };
        params.validate()?;
        Ok(params)
    }

    /// Reduced-unit parameters: ω₂₁ = 1, ω_k = 1/2, N = 100 and χ = `chi_ratio`.
    pub fn from_ratio(chi_ratio: f64, variant: Variant) -> Result<Self> {
        Self::new(1.0, chi_ratio, 0.5, 100, variant)
    }

    /// Same parameters with another variant.
    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    /// Same parameters with another exchange coefficient.
    pub fn with_chi(mut self, chi: f64) -> Self {
        self.chi = chi;
        self
    }

    /// χ/ω₂₁.
    pub fn chi_ratio(&self) -> f64 {
        self.chi / self.omega21
    }

    /// Checks the parameter invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.omega21 > 0.0 && self.omega21.is_finite()) {
            return Err(domain("omega21", self.omega21, "> 0"));
        }
        // λ = χ(1 + 2n̄) must be positive for an ordered phase to exist
        if !(self.chi > 0.0 && self.chi.is_finite()) {
            return Err(domain("chi", self.chi, "> 0"));
        }
        if !(self.omega_k > 0.0 && self.omega_k.is_finite()) {
            return Err(domain("omega_k", self.omega_k, "> 0"));
        }
        if self.n_atoms < 2 {
            return Err(domain("n_atoms", self.n_atoms as f64, ">= 2"));
        }
        Ok(())
    }
}

/// Temperature-dependent effective couplings at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    /// Temperature θ = κT.
    pub theta: f64,
    /// Mean thermal photon number n̄.
    pub nbar: f64,
    /// Renormalized transition frequency ω = ω₂₁ − 2n̄²χ.
    pub omega: f64,
    /// Exchange integral λ = χ(1 + 2n̄).
    pub lambda: f64,
    /// Level splitting ϖ = ω − λ.
    pub varpi: f64,
    /// `λ − |ϖ|`, evaluated without the cancellation of the direct difference.
    ///
    /// At `2χ = ω₂₁` the two terms agree to all printed digits at low θ and
    /// the sign of this margin decides whether the ordered phase exists.
    pub excess: f64,
}

impl Couplings {
    /// Couplings given directly by `(θ, λ, ϖ)`, with `n̄ = 0`.
    pub fn from_effective(theta: f64, lambda: f64, varpi: f64) -> Self {
        Couplings {
            theta,
            nbar: 0.0,
            omega: varpi + lambda,
            lambda,
            varpi,
            excess: lambda - varpi.abs(),
        }
    }

    /// Same couplings reinterpreted at another temperature.
    pub fn at_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    /// Multiplies every energy (θ, ω, λ, ϖ) by `factor`.
    pub fn scaled(self, factor: f64) -> Self {
        Couplings {
            theta: self.theta * factor,
            nbar: self.nbar,
            omega: self.omega * factor,
            lambda: self.lambda * factor,
            varpi: self.varpi * factor,
            excess: self.excess * factor,
        }
    }
}

/// Bose-Einstein occupation `n̄ = 1/(exp(ω_k/θ) − 1)`.
///
/// `θ = 0` returns the limit 0. Large `ω_k/θ` underflows gracefully to 0.
pub fn mean_photon_number(theta: f64, omega_k: f64) -> Result<f64> {
    if !(omega_k > 0.0 && omega_k.is_finite()) {
        return Err(domain("omega_k", omega_k, "> 0"));
    }
    if theta.is_nan() || theta < 0.0 {
        return Err(domain("theta", theta, ">= 0"));
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / libm::expm1(omega_k / theta))
}

/// Effective couplings of `params` at temperature `theta`.
///
/// The traditional variant substitutes `n̄ = 0`, which makes every coupling
/// independent of θ.
pub fn couplings_at(params: &ModelParams, theta: f64) -> Result<Couplings> {
    params.validate()?;
    let nbar = match params.variant {
        Variant::Proposed => mean_photon_number(theta, params.omega_k)?,
        Variant::Traditional => {
            if theta.is_nan() || theta < 0.0 {
                return Err(domain("theta", theta, ">= 0"));
            }
            0.0
        }
    };
    let chi = params.chi;
    let omega = params.omega21 - 2.0 * nbar * nbar * chi;
    let lambda = chi * (1.0 + 2.0 * nbar);
    let varpi = omega - lambda;
    let excess = if varpi >= 0.0 {
        // λ − ϖ = 2λ − ω
        (2.0 * chi - params.omega21) + 2.0 * chi * nbar * (2.0 + nbar)
    } else {
        // λ + ϖ = ω
        omega
    };
    Ok(Couplings {
        theta,
        nbar,
        omega,
        lambda,
        varpi,
        excess,
    })
}

/// One virtual level |α⟩ of the two-photon transition scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    /// Projection `g_k · d_α1`.
    pub proj1: f64,
    /// Projection `g_k · d_α2`.
    pub proj2: f64,
    /// Frequency ω_α1.
    pub omega_a1: f64,
    /// Frequency ω_2α.
    pub omega_2a: f64,
}

/// Virtual levels plus the cavity damping rate.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MicroscopicLevels {
    /// Levels summed in the amplitude.
    pub levels: Vec<Level>,
    /// Cavity damping rate Γ.
    pub gamma_cav: f64,
}

const SINGULAR_RTOL: f64 = 1e-12;

fn is_resonant(a: f64, b: f64) -> bool {
    let scale = libm::fmax(libm::fabs(a), libm::fabs(b));
    libm::fabs(a - b) <= SINGULAR_RTOL * scale
}

/// Squared two-photon amplitude
/// `A(k) = [Σ_α p1·p2·(ω_α1 − ω_2α) / ((ω_2α − ω_k)(ω_α1 − ω_k))]²`.
pub fn transition_amplitude(levels: &MicroscopicLevels, omega_k: f64) -> Result<f64> {
    let mut sum = 0.0;
    for (i, lvl) in levels.levels.iter().enumerate() {
        if is_resonant(lvl.omega_2a, omega_k) || is_resonant(lvl.omega_a1, omega_k) {
            return Err(Error::Singular { level: i });
        }
        sum += lvl.proj1 * lvl.proj2 * (lvl.omega_a1 - lvl.omega_2a)
            / ((lvl.omega_2a - omega_k) * (lvl.omega_a1 - omega_k));
    }
    Ok(sum * sum)
}

/// Exchange and decay constants produced by a given amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicroscopicCouplings {
    /// Exchange coefficient χ.
    pub chi: f64,
    /// Single-atom two-photon decay rate γ.
    pub gamma: f64,
    /// Two-photon detuning δ = 2ω_k − ω₂₁.
    pub detuning: f64,
}

/// Lorentzian exchange and decay constants:
/// `χ = A·δ/(δ² + 4Γ²)` and `γ = A·2Γ/(δ² + 4Γ²)` with `δ = 2ω_k − ω₂₁`.
pub fn coupling_constants(
    amplitude: f64,
    gamma_cav: f64,
    omega21: f64,
    omega_k: f64,
) -> Result<MicroscopicCouplings> {
    if !(gamma_cav > 0.0 && gamma_cav.is_finite()) {
        return Err(domain("gamma_cav", gamma_cav, "> 0"));
    }
    if !(amplitude >= 0.0 && amplitude.is_finite()) {
        return Err(domain("amplitude", amplitude, ">= 0"));
    }
    if !omega21.is_finite() {
        return Err(domain("omega21", omega21, "finite"));
    }
    if !omega_k.is_finite() {
        return Err(domain("omega_k", omega_k, "finite"));
    }
    let detuning = 2.0 * omega_k - omega21;
    let denom = detuning * detuning + 4.0 * gamma_cav * gamma_cav;
    Ok(MicroscopicCouplings {
        chi: amplitude * detuning / denom,
        gamma: amplitude * 2.0 * gamma_cav / denom,
        detuning,
    })
}
