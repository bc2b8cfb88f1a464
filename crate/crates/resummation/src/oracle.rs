//! Reference ground-state energy of H = p^2/2 + omega^2 x^2/2 + g x^4 by
//! diagonalization in a scaled harmonic-oscillator basis.
//!
//! Only the even-parity block is built (the ground state is even).  The
//! basis frequency is scaled like g^(1/3) at strong coupling so the basis
//! size stays bounded over the whole tested range; the size is doubled until
//! the lowest eigenvalue is stable to the requested relative tolerance.

use nalgebra::DMatrix;

use crate::error::{ResumError, Result};

pub const BASIS_CAP: usize = 2048;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Initial number of even-parity basis functions.
    pub basis_size: usize,
    /// Basis frequency; defaults to max(omega, (6g)^(1/3)).
    pub basis_frequency: Option<f64>,
    /// Convergence target for basis-size doubling.
    pub rel_tol: f64,
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            basis_size: 16,
            basis_frequency: None,
            rel_tol: 1e-11,
            cap: BASIS_CAP,
        }
    }
}

/// Lowest eigenvalue of the even-parity block with `size` basis functions
/// |0>, |2>, ..., |2(size-1)> of an oscillator of frequency `freq`.
pub fn ground_state_at_size(g: f64, omega: f64, freq: f64, size: usize) -> f64 {
    // ladder matrix elements in the scaled basis (m = hbar = 1):
    //   x^2: <n|n>   = (2n+1)/(2f)         <n|n+2> = sqrt((n+1)(n+2))/(2f)
    //   p^2: <n|n>   = f(2n+1)/2           <n|n+2> = -f sqrt((n+1)(n+2))/2
    //   x^4: <n|n>   = 3(2n^2+2n+1)/(4f^2)
    //        <n|n+2> = (4n+6) sqrt((n+1)(n+2))/(4f^2)
    //        <n|n+4> = sqrt((n+1)(n+2)(n+3)(n+4))/(4f^2)
    let f = freq;
    let w2 = omega * omega;
    let mut h = DMatrix::<f64>::zeros(size, size);
    for row in 0..size {
        let n = (2 * row) as f64;
        let diag_x2 = (2.0 * n + 1.0) / (2.0 * f);
        let diag_p2 = f * (2.0 * n + 1.0) / 2.0;
        let diag_x4 = 3.0 * (2.0 * n * n + 2.0 * n + 1.0) / (4.0 * f * f);
        h[(row, row)] = 0.5 * diag_p2 + 0.5 * w2 * diag_x2 + g * diag_x4;
        if row + 1 < size {
            let s2 = ((n + 1.0) * (n + 2.0)).sqrt();
            let off_x2 = s2 / (2.0 * f);
            let off_p2 = -f * s2 / 2.0;
            let off_x4 = (4.0 * n + 6.0) * s2 / (4.0 * f * f);
            let v = 0.5 * off_p2 + 0.5 * w2 * off_x2 + g * off_x4;
            h[(row, row + 1)] = v;
            h[(row + 1, row)] = v;
        }
        if row + 2 < size {
            let s4 = ((n + 1.0) * (n + 2.0) * (n + 3.0) * (n + 4.0)).sqrt();
            let v = g * s4 / (4.0 * f * f);
            h[(row, row + 2)] = v;
            h[(row + 2, row)] = v;
        }
    }
    let eig = h.symmetric_eigenvalues();
    eig.iter().cloned().fold(f64::INFINITY, f64::min)
}

fn default_frequency(g: f64, omega: f64) -> f64 {
    omega.max((6.0 * g).cbrt())
}

/// Ground-state energy converged by basis doubling.
pub fn exact_energy(g: f64, omega: f64, config: &OracleConfig) -> Result<f64> {
    assert!(g >= 0.0, "the oracle covers the stable region g >= 0 only");
    if g == 0.0 {
        return Ok(omega / 2.0);
    }
    let freq = config
        .basis_frequency
        .unwrap_or_else(|| default_frequency(g, omega));
    let mut size = config.basis_size.max(4);
    let mut prev = ground_state_at_size(g, omega, freq, size);
    while size * 2 <= config.cap {
        size *= 2;
        let next = ground_state_at_size(g, omega, freq, size);
        let delta = ((next - prev) / next).abs();
        if delta <= config.rel_tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(ResumError::OracleNotConverged {
        cap: config.cap,
        last_delta: ((prev - ground_state_at_size(g, omega, freq, size)) / prev).abs(),
    })
}

/// Energies and successive differences over an increasing list of basis sizes.
pub fn convergence_report(
    g: f64,
    omega: f64,
    sizes: &[usize],
    config: &OracleConfig,
) -> Vec<(usize, f64, f64)> {
    let freq = config
        .basis_frequency
        .unwrap_or_else(|| default_frequency(g, omega));
    let mut out = Vec::with_capacity(sizes.len());
    let mut prev: Option<f64> = None;
    for &s in sizes {
        let e = ground_state_at_size(g, omega, freq, s);
        let delta = prev.map(|p| e - p).unwrap_or(0.0);
        out.push((s, e, delta));
        prev = Some(e);
    }
    out
}
