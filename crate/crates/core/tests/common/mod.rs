//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

/// Free energy per atom written directly from its definition
/// `−θ·ln(2cosh(E/2θ)) + λc²`, rearranged only to avoid overflow.
pub fn free_energy(c: f64, lambda: f64, varpi: f64, theta: f64) -> f64 {
    let e = (varpi * varpi + 4.0 * lambda * lambda * c * c).sqrt();
    let x = e / (2.0 * theta);
    // ln(2cosh x) = x + ln(1 + e^{−2x})
    -theta * (x + (-2.0 * x).exp().ln_1p()) + lambda * c * c
}

/// `F(c) − F(0)` from the same definition, rearranged so that no two nearly
/// equal numbers are subtracted. Near `λ ≈ |ϖ|` the well depth is far below
/// the rounding level of `F` itself.
pub fn free_energy_shift(c: f64, lambda: f64, varpi: f64, theta: f64) -> f64 {
    let a = varpi.abs();
    let e = (a * a + 4.0 * lambda * lambda * c * c).sqrt();
    let d = 4.0 * lambda * lambda * c * c / (e + a);
    let q = (-a / theta).exp();
    let log_ratio = (q * (-d / theta).exp_m1() / (1.0 + q)).ln_1p();
    // −d/2 + λc² = λc²·(d − 2(λ − a))/(e + a)
    lambda * c * c * (d - 2.0 * (lambda - a)) / (e + a) - theta * log_ratio
}

/// Argmin of [`free_energy_shift`] over `c ∈ [0, 1]`: a 2000-point grid followed by
/// golden-section refinement of the bracketing cell down to width `1e-8`.
pub fn brute_force_argmin(lambda: f64, varpi: f64, theta: f64) -> f64 {
    let f = |c: f64| free_energy_shift(c, lambda, varpi, theta);
    let n = 2000;
    let grid: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let best = (0..n)
        .min_by(|&a, &b| f(grid[a]).partial_cmp(&f(grid[b])).unwrap())
        .unwrap();
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(n - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-8 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    // the minimum may sit on the c = 0 boundary
    if f(0.0) <= f(mid) {
        0.0
    } else {
        mid
    }
}

/// Central difference of [`free_energy`] in `c`, using evenness at `c < h`.
pub fn free_energy_slope(c: f64, lambda: f64, varpi: f64, theta: f64, h: f64) -> f64 {
    let f = |x: f64| free_energy(x.abs(), lambda, varpi, theta);
    (f(c + h) - f(c - h)) / (2.0 * h)
}

/// Ground level of `E(m) = ϖm + λ_N m² − λ_N j(j+1)` by exhaustive enumeration.
/// Energies within `1e-12` relative count as equal; ties go to smaller `m`.
pub fn enumerate_ground_m(n: u64, lambda_n: f64, varpi: f64) -> f64 {
    let j = n as f64 / 2.0;
    let energy = |m: f64| varpi * m + lambda_n * m * m - lambda_n * j * (j + 1.0);
    let mut best_m = -j;
    let mut best_e = energy(-j);
    for k in 1..=n {
        let m = k as f64 - j;
        let e = energy(m);
        let scale = e.abs().max(best_e.abs()).max(1e-300);
        if e < best_e && (best_e - e) > 1e-12 * scale {
            best_m = m;
            best_e = e;
        }
    }
    best_m
}
