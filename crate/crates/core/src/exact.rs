//! Exact Gibbs sums on the maximal Dicke manifold `j = N/2`.
//!
//! With the Bloch vector conserved, the effective Hamiltonian is diagonal in
//! `|j, m⟩`:
//!
//! ```text
//! E(m) = ϖ·m + λ_N·m² − λ_N·j(j+1),   m = −j, …, j
//! ```
//!
//! The per-pair coupling is `λ_N = λ/N`, which keeps the energy per atom
//! intensive: the ground state then sits at `m/N → −ϖ/(2λ)`.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::meanfield::{gap_solve, population_inversion};
use crate::thermal::{couplings_at, ModelParams};

/// Largest supported number of atoms.
pub const MAX_ATOMS: u64 = 1_000_000;

/// Spectrum of the effective Hamiltonian on the `j = N/2` manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeSpectrum {
    n_atoms: u64,
    lambda_n: f64,
    varpi: f64,
    energies: Vec<f64>,
}

impl DickeSpectrum {
    /// Number of atoms N.
    pub fn n_atoms(&self) -> u64 {
        self.n_atoms
    }

    /// Per-pair coupling λ_N.
    pub fn lambda_n(&self) -> f64 {
        self.lambda_n
    }

    /// Splitting ϖ.
    pub fn varpi(&self) -> f64 {
        self.varpi
    }

    /// `j = N/2`.
    pub fn j(&self) -> f64 {
        self.n_atoms as f64 / 2.0
    }

    /// Energies ordered by increasing `m`.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Magnetic quantum number of the `index`-th level, `m = index − j`.
    pub fn m_at(&self, index: usize) -> f64 {
        index as f64 - self.j()
    }

    /// `(m, E(m))` pairs in increasing `m`.
    pub fn levels(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.energies
            .iter()
            .enumerate()
            .map(|(i, &e)| (self.m_at(i), e))
    }

    /// `E(m)` for any `m`, not only lattice points.
    pub fn energy(&self, m: f64) -> f64 {
        let j = self.j();
        m * (self.varpi + self.lambda_n * m) - self.lambda_n * j * (j + 1.0)
    }
}

/// Builds the `N + 1` energies of the `j = N/2` manifold.
pub fn dicke_spectrum(n_atoms: u64, lambda_n: f64, varpi: f64) -> Result<DickeSpectrum> {
    if n_atoms > MAX_ATOMS {
        return Err(Error::Size {
            name: "n_atoms",
            value: n_atoms,
            limit: MAX_ATOMS,
        });
    }
    if n_atoms < 2 {
        return Err(domain("n_atoms", n_atoms as f64, ">= 2"));
    }
    if !(lambda_n > 0.0 && lambda_n.is_finite()) {
        return Err(domain("lambda_n", lambda_n, "> 0"));
    }
    if !varpi.is_finite() {
        return Err(domain("varpi", varpi, "finite"));
    }
    let mut spec = DickeSpectrum {
        n_atoms,
        lambda_n,
        varpi,
        energies: Vec::with_capacity(n_atoms as usize + 1),
    };
    for i in 0..=n_atoms as usize {
        let e = spec.energy(spec.m_at(i));
        spec.energies.push(e);
    }
    Ok(spec)
}

/// Index of the ground level: the lattice point nearest to the continuous
/// minimizer `−ϖ/(2λ_N)`, clamped to `[−j, j]`. An exact half-way minimizer
/// resolves to the smaller `m`.
pub fn ground_state_index(spec: &DickeSpectrum) -> usize {
    let n = spec.n_atoms as f64;
    let k = spec.j() - spec.varpi / (2.0 * spec.lambda_n);
    // round half down
    let rounded = libm::ceil(k - 0.5);
    if rounded <= 0.0 {
        0
    } else if rounded >= n {
        spec.n_atoms as usize
    } else {
        rounded as usize
    }
}

/// Quantum number `m*` of the ground level.
pub fn ground_state_m(spec: &DickeSpectrum) -> f64 {
    spec.m_at(ground_state_index(spec))
}

/// Thermal observables of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsObservables {
    /// `Σ_m exp(−(E(m) − E_min)/θ)`.
    pub partition: f64,
    /// Lowest energy `E_min` used as the shift.
    pub energy_shift: f64,
    /// `(E_min − θ·ln Z)/N`.
    pub free_energy_per_atom: f64,
    /// `⟨R_z⟩/N`.
    pub rz_per_atom: f64,
}

/// Boltzmann probabilities of each level, in increasing `m`.
pub fn gibbs_weights(spec: &DickeSpectrum, theta: f64) -> Result<Vec<f64>> {
    let (weights, z) = shifted_weights(spec, theta)?;
    Ok(weights.into_iter().map(|w| w / z).collect())
}

fn shifted_weights(spec: &DickeSpectrum, theta: f64) -> Result<(Vec<f64>, f64)> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(domain("theta", theta, "> 0"));
    }
    let e_min = min_energy(spec);
    let weights: Vec<f64> = spec
        .energies
        .iter()
        .map(|&e| libm::exp(-(e - e_min) / theta))
        .collect();
    let z = weights.iter().sum();
    Ok((weights, z))
}

fn min_energy(spec: &DickeSpectrum) -> f64 {
    spec.energies.iter().copied().fold(f64::INFINITY, libm::fmin)
}

/// Partition function, free energy and inversion per atom at temperature `theta`.
pub fn gibbs_observables(spec: &DickeSpectrum, theta: f64) -> Result<GibbsObservables> {
    let (weights, z) = shifted_weights(spec, theta)?;
    let e_min = min_energy(spec);
    let n = spec.n_atoms as f64;
    let first = weights
        .iter()
        .enumerate()
        .map(|(i, w)| spec.m_at(i) * w)
        .sum::<f64>();
    Ok(GibbsObservables {
        partition: z,
        energy_shift: e_min,
        free_energy_per_atom: (e_min - theta * libm::log(z)) / n,
        rz_per_atom: first / (n * z),
    })
}

/// Exact versus mean-field inversion for one system size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteSizeComparison {
    /// Number of atoms N.
    pub n_atoms: u64,
    /// `⟨R_z⟩/N` from the Gibbs sum.
    pub rz_exact: f64,
    /// `⟨R_z⟩/N` from the mean-field gap solution.
    pub rz_meanfield: f64,
    /// `|rz_exact − rz_meanfield|`.
    pub deviation: f64,
}

/// Compares the exact Gibbs inversion with the mean-field one for each N in
/// `n_list`, in input order.
pub fn compare_meanfield(
    params: &ModelParams,
    theta: f64,
    n_list: &[u64],
    tol: f64,
) -> Result<Vec<FiniteSizeComparison>> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(domain("theta", theta, "> 0"));
    }
    let cpl = couplings_at(params, theta)?;
    let sol = gap_solve(&cpl, tol)?;
    let rz_meanfield = population_inversion(&cpl, &sol);
    n_list
        .iter()
        .map(|&n| {
            let spec = dicke_spectrum(n, cpl.lambda / n as f64, cpl.varpi)?;
            let rz_exact = gibbs_observables(&spec, theta)?.rz_per_atom;
            Ok(FiniteSizeComparison {
                n_atoms: n,
                rz_exact,
                rz_meanfield,
                deviation: libm::fabs(rz_exact - rz_meanfield),
            })
        })
        .collect()
}
