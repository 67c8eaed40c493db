use core::fmt;

/// Errors raised by the solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the formula.
    Domain {
        /// Name of the offending quantity.
        name: &'static str,
        /// The rejected value.
        value: f64,
        /// Human readable requirement, e.g. `"> 0"`.
        requirement: &'static str,
    },
    /// A denominator of the transition amplitude vanishes.
    Singular {
        /// Index of the level whose resonance coincides with the photon frequency.
        level: usize,
    },
    /// A temperature range is empty or not strictly positive.
    Range {
        /// Lower end.
        lo: f64,
        /// Upper end.
        hi: f64,
    },
    /// A requested problem size exceeds the supported limit.
    Size {
        /// Name of the size parameter.
        name: &'static str,
        /// Requested size.
        value: u64,
        /// Largest accepted size.
        limit: u64,
    },
    /// The proposed model has no critical point in the scanned range, so a
    /// temperature normalizer cannot be formed.
    NoCriticalPoint {
        /// Coupling ratio χ/ω₂₁ that was scanned.
        chi_ratio: f64,
        /// Upper end of the scanned temperature range.
        theta_max: f64,
    },
}

/// Shorthand result type.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                name,
                value,
                requirement,
            } => write!(f, "{name} = {value} is out of domain (requires {requirement})"),
            Error::Singular { level } => write!(
                f,
                "transition amplitude is singular: level {level} is resonant with the photon frequency"
            ),
            Error::Range { lo, hi } => {
                write!(f, "invalid temperature range ({lo}, {hi}): requires 0 < lo < hi")
            }
            Error::Size { name, value, limit } => {
                write!(f, "{name} = {value} exceeds the limit {limit}")
            }
            Error::NoCriticalPoint {
                chi_ratio,
                theta_max,
            } => write!(
                f,
                "proposed model with chi/omega21 = {chi_ratio} has no critical point in (0, {theta_max}]"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(name: &'static str, value: f64, requirement: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        requirement,
    }
}
