//! All complex roots of a real-coefficient polynomial via the companion
//! matrix, with Newton polishing.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{ResumError, Result};

/// Roots of sum_i coeffs[i] * x^i.  Leading zeros (numerically negligible
/// relative to the largest coefficient) are stripped; exact zero roots are
/// deflated first.
pub fn all_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Err(ResumError::RootFinding {
            coeffs: coeffs.to_vec(),
        });
    }
    let mut c: Vec<f64> = coeffs.to_vec();
    while let Some(&last) = c.last() {
        if c.len() > 1 && last.abs() <= 1e-14 * scale {
            c.pop();
        } else {
            break;
        }
    }
    let mut roots = Vec::new();
    // deflate roots at the origin
    while c.len() > 1 && c[0] == 0.0 {
        roots.push(Complex64::new(0.0, 0.0));
        c.remove(0);
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(roots);
    }

    let lead = c[deg];
    let n = deg;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    // bounded Schur iteration: the unbounded variant can cycle forever on
    // companion matrices of polynomials with multiple roots (e.g. (x^2-1)^3)
    let estimates: Vec<Complex64> =
        match nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 200 * n.max(2)) {
            Some(schur) => schur
                .complex_eigenvalues()
                .iter()
                .map(|ev| Complex64::new(ev.re, ev.im))
                .collect(),
            None => durand_kerner(&c),
        };
    for ev in estimates {
        roots.push(polish(&c, ev));
    }
    Ok(roots)
}

/// Durand-Kerner fallback for polynomials where the QR iteration stalls.
/// Linear convergence near multiple roots, which the caller's residual
/// classification tolerates.
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|x| x / lead).collect();
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..deg)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (p, _) = eval_with_derivative(&monic, z[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = p / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step <= 1e-14 * radius {
            break;
        }
    }
    z
}

/// A few Newton steps; companion eigenvalues are usually good to ~1e-8,
/// polishing brings well-conditioned roots to machine precision.
fn polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

pub fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Backward-error style residual: |p(z)| over the coefficient magnitudes at |z|.
pub fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(coeffs, z);
    let mut scale = 0.0;
    let mut pw = 1.0;
    let az = z.norm();
    for &c in coeffs {
        scale += c.abs() * pw;
        pw *= az;
    }
    if scale == 0.0 {
        p.norm()
    } else {
        p.norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_real_root() {
        // x^3 - x - 6 = (x - 2)(x^2 + 2x + 3)
        let roots = all_roots(&[-6.0, -1.0, 0.0, 1.0]).unwrap();
        let real: Vec<_> = roots.iter().filter(|z| z.im.abs() < 1e-10).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn conjugate_pairs() {
        // x^2 + 1
        let roots = all_roots(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(roots.len(), 2);
        let sum_im: f64 = roots.iter().map(|z| z.im).sum();
        assert!(sum_im.abs() < 1e-12);
    }

    #[test]
    fn zero_deflation() {
        let roots = all_roots(&[0.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }
}
