//! Weak-coupling perturbation series of the quartic anharmonic oscillator and
//! its factorially growing large-order asymptotics.
//!
//! The energy is expanded as E(g) = omega * sum_n E_n (g/omega^3)^n for the
//! Hamiltonian H = p^2/2 + omega^2 x^2/2 + g x^4.  The dimensionless
//! coefficients E_n are generated by a Bender-Wu style recursion in exact
//! rational arithmetic; they grow like 3^k k! and alternate in sign from n = 1
//! onward.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use statrs::function::gamma::gamma;

use crate::error::{ResumError, Result};

/// Hard cap on the exact recursion; coefficients grow like 3^k k! and the
/// rational arithmetic gets expensive well before this.
pub const MAX_ORDER: usize = 200;

/// Weak-coupling series omega * sum E_n (g/omega^3)^n.
///
/// Coefficients are stored as f64 for evaluation; the exact rationals from
/// the recursion are kept alongside when the series was generated exactly
/// (a cut-subtracted series has no exact representation).
#[derive(Debug, Clone)]
pub struct PerturbationSeries {
    omega: f64,
    coeffs: Vec<f64>,
    exact: Option<Vec<BigRational>>,
}

impl PerturbationSeries {
    /// The oscillator instance: E_n from the Bender-Wu recursion.
    pub fn oscillator(omega: f64, order: usize) -> Result<Self> {
        let exact = bender_wu_coefficients(order)?;
        let coeffs = exact
            .iter()
            .map(|r| rational_to_f64(r))
            .collect();
        Ok(Self {
            omega,
            coeffs,
            exact: Some(exact),
        })
    }

    /// A series with arbitrary (already inexact) coefficients, e.g. after
    /// tip subtraction.
    pub fn from_coefficients(omega: f64, coeffs: Vec<f64>) -> Self {
        Self {
            omega,
            coeffs,
            exact: None,
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn exact_coefficients(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    /// omega * sum_{n=0..n_max} E_n (g/omega^3)^n.
    pub fn partial_sum(&self, g: f64, n_max: usize) -> f64 {
        let n = n_max.min(self.order());
        let gp = g / self.omega.powi(3);
        let mut acc = 0.0;
        for k in (0..=n).rev() {
            acc = acc * gp + self.coeffs[k];
        }
        self.omega * acc
    }
}

/// Growth data of the large-order law E_k ~ gamma * (-a)^k * Gamma(k + 1/2) * [1 + gamma_1/k + ...].
///
/// The general k^beta (pk)! bookkeeping is carried as metadata only; the
/// oscillator closed form below is normative.
#[derive(Debug, Clone)]
pub struct LargeOrderParams {
    pub omega: f64,
    /// Overall prefactor multiplying (-a)^k Gamma(k+1/2).
    pub gamma: f64,
    /// Growth scale; a = 3/omega^3 for the oscillator.
    pub a: f64,
    pub p: u32,
    pub q: u32,
    pub beta: f64,
    /// Subleading 1/k corrections gamma_1, gamma_2, ...; only gamma_1 = -95/72 is used.
    pub subleading: Vec<f64>,
}

impl LargeOrderParams {
    pub fn oscillator(omega: f64) -> Self {
        Self {
            omega,
            gamma: -(omega / std::f64::consts::PI) * (6.0 / std::f64::consts::PI).sqrt(),
            a: 3.0 / omega.powi(3),
            p: 1,
            q: 3,
            beta: -0.5,
            subleading: vec![-95.0 / 72.0],
        }
    }
}

/// Leading asymptotic coefficient -(omega/pi) sqrt(6/pi) (-3/omega^3)^k Gamma(k+1/2),
/// optionally dressed with the first subleading factor (1 - 95/(72k)).
pub fn asymptotic_coefficient(k: usize, params: &LargeOrderParams, with_subleading: bool) -> f64 {
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut value = params.gamma * sign * params.a.powi(k as i32) * gamma(k as f64 + 0.5);
    if with_subleading && k >= 1 {
        let mut corr = 1.0;
        for (i, c) in params.subleading.iter().enumerate() {
            corr += c / (k as f64).powi(i as i32 + 1);
        }
        value *= corr;
    }
    value
}

/// Residuals r_k = E_k / leading(k) - 1 + 95/(72k); these decay like 1/k^2
/// when the series and the asymptotic law agree.
pub fn large_order_ratio_check(
    series: &PerturbationSeries,
    params: &LargeOrderParams,
    k_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<(usize, f64)>> {
    let k_max = *k_range.end();
    if series.order() < k_max {
        return Err(ResumError::InsufficientOrder {
            have: series.order(),
            need: k_max,
        });
    }
    let mut out = Vec::new();
    for k in k_range {
        let lead = asymptotic_coefficient(k, params, false);
        let r = series.coefficients()[k] / lead - 1.0 + 95.0 / (72.0 * k as f64);
        out.push((k, r));
    }
    Ok(out)
}

/// Exact rational coefficients E_0..E_N for H = p^2/2 + x^2/2 + g x^4.
///
/// Writes the ground state as psi = exp(-x^2/2) sum_n g^n A_n(x) with even
/// polynomials A_n = sum_{m=1..2n} c_{n,m} x^{2m} normalized by A_n(0) = 0.
/// Matching powers of g in the Schroedinger equation gives, per order n,
///
///   2m c_{n,m} - (m+1)(2m+1) c_{n,m+1} + [A_{n-1}]_{m-2}
///     = sum_{k=1..n-1} E_k [A_{n-k}]_m          (m >= 1)
///
/// solved top-down in m, and E_n = -c_{n,1} from the m = 0 line.
pub fn bender_wu_coefficients(order: usize) -> Result<Vec<BigRational>> {
    if order > MAX_ORDER {
        return Err(ResumError::CapacityExceeded {
            requested: order,
            cap: MAX_ORDER,
        });
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut energies = vec![half];
    // a_polys[n][m] = c_{n,m}; A_0 = [1].
    let mut a_polys: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];

    for n in 1..=order {
        let mut c = vec![BigRational::zero(); 2 * n + 2];
        for m in (1..=2 * n).rev() {
            let mut val = BigRational::from(BigInt::from(((m + 1) * (2 * m + 1)) as i64))
                * &c[m + 1];
            if m >= 2 {
                if let Some(prev) = a_polys[n - 1].get(m - 2) {
                    val -= prev;
                }
            }
            for k in 1..n {
                if let Some(coef) = a_polys[n - k].get(m) {
                    val += &energies[k] * coef;
                }
            }
            c[m] = val / BigRational::from(BigInt::from(2 * m as i64));
        }
        energies.push(-c[1].clone());
        c.truncate(2 * n + 1);
        a_polys.push(c);
    }
    Ok(energies)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // to_f64 on huge numerator/denominator pairs can overflow separately;
    // reduce through a float ratio of the rounded parts.
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY * sign_of(r));
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn sign_of(r: &BigRational) -> f64 {
    if r.is_negative() {
        -1.0
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_six_coefficients_are_exact() {
        let e = bender_wu_coefficients(5).unwrap();
        assert_eq!(
            e,
            vec![
                rat(1, 2),
                rat(3, 4),
                rat(-21, 8),
                rat(333, 16),
                rat(-30885, 128),
                rat(916731, 256),
            ]
        );
    }

    #[test]
    fn order_zero() {
        let e = bender_wu_coefficients(0).unwrap();
        assert_eq!(e, vec![rat(1, 2)]);
    }

    #[test]
    fn capacity_error() {
        assert!(matches!(
            bender_wu_coefficients(MAX_ORDER + 1),
            Err(ResumError::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn signs_alternate_and_magnitudes_grow() {
        let s = PerturbationSeries::oscillator(1.0, 30).unwrap();
        let c = s.coefficients();
        for n in 1..=30 {
            let expect = if n % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(c[n].signum(), expect, "sign at n={n}");
        }
        for n in 2..30 {
            assert!(c[n + 1].abs() > c[n].abs(), "growth at n={n}");
        }
    }

    #[test]
    fn partial_sum_small_coupling() {
        let s = PerturbationSeries::oscillator(1.0, 5).unwrap();
        // 1/2 + 3/4e-2 - 21/8e-4 + 333/16e-6
        assert_relative_eq!(s.partial_sum(0.01, 3), 0.5072583125, max_relative = 1e-14);
        assert_eq!(s.partial_sum(0.0, 5), 0.5);
    }

    #[test]
    fn partial_sum_scaling_covariance() {
        let s1 = PerturbationSeries::oscillator(1.0, 5).unwrap();
        let s2 = PerturbationSeries::oscillator(2.0, 5).unwrap();
        for g in [0.01, 0.1, 1.0] {
            assert_relative_eq!(
                s2.partial_sum(g, 5),
                2.0 * s1.partial_sum(g / 8.0, 5),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn asymptotic_coefficient_values() {
        let p = LargeOrderParams::oscillator(1.0);
        let pi = std::f64::consts::PI;
        let k0 = -(1.0 / pi) * (6.0 / pi).sqrt() * gamma(0.5);
        assert_relative_eq!(asymptotic_coefficient(0, &p, false), k0, max_relative = 1e-14);
        assert_relative_eq!(asymptotic_coefficient(0, &p, false), -0.779696, max_relative = 1e-5);
        assert_relative_eq!(asymptotic_coefficient(1, &p, false), 1.16954, max_relative = 1e-5);
        for k in 0..12 {
            let expect = if k % 2 == 0 { -1.0 } else { 1.0 };
            assert_eq!(asymptotic_coefficient(k, &p, false).signum(), expect);
        }
    }

    #[test]
    fn ratio_residuals_decay_quadratically() {
        let s = PerturbationSeries::oscillator(1.0, 25).unwrap();
        let p = LargeOrderParams::oscillator(1.0);
        let res = large_order_ratio_check(&s, &p, 8..=25).unwrap();
        for (k, r) in &res {
            assert!(
                r.abs() <= 5.0 / (*k as f64).powi(2),
                "residual {r:e} too large at k={k}"
            );
        }
        let lead25 = asymptotic_coefficient(25, &p, false);
        assert!((s.coefficients()[25] / lead25 - 1.0).abs() < 0.06);
    }
}
