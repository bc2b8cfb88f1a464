//! Variational reexpansion W_N(g, Omega) of a weak-coupling series around a
//! trial frequency Omega, stationary-point selection in the complex Omega
//! plane, and the resulting resummed energy.
//!
//! The substitution omega -> sqrt(Omega^2 + omega^2 - Omega^2), reexpanded
//! with omega^2 - Omega^2 counted as order g and truncated at order N, gives
//!
//!   W_N(g, Omega) = Omega * sum_{n=0..N} E_n f_n(Omega) (g / Omega^3)^n
//!   f_n(Omega)    = sum_{j=0..N-n} C((1-3n)/2, j) (-1)^j (1 - omega^2/Omega^2)^j
//!
//! Multiplying by Omega^(3N-1) clears all denominators, so stationary points
//! and inflection points of W_N in Omega are roots of true polynomials; the
//! complete root set comes from a companion matrix and the optimum is picked
//! from it, continuing into the complex plane for couplings beyond the
//! negative-axis branch point.

use num::complex::Complex64;

use crate::error::{ResumError, Result};
use crate::polyroots;
use crate::series::PerturbationSeries;

/// Classification tolerance: a root counts as real when |Im| is below this
/// times max(1, |Re|).
const REAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateKind {
    Extremum,
    TurningPoint,
}

#[derive(Debug, Clone, Copy)]
pub struct OmegaCandidate {
    pub value: Complex64,
    pub kind: CandidateKind,
    /// Backward-error residual of the defining polynomial at the root.
    pub residual: f64,
}

impl OmegaCandidate {
    pub fn is_real(&self) -> bool {
        self.value.im == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchTag {
    Real,
    ContinuedComplex,
}

#[derive(Debug, Clone)]
pub struct ResummedEnergy {
    pub g: f64,
    pub value: Complex64,
    pub omega_used: OmegaCandidate,
    pub branch_tag: BranchTag,
}

/// Order-N reexpansion of a weak-coupling series.
#[derive(Debug, Clone)]
pub struct VariationalApproximant {
    order: usize,
    omega: f64,
    coeffs: Vec<f64>,
    /// f_table[n][j] = C((1-3n)/2, j) for j = 0..N-n.
    f_table: Vec<Vec<f64>>,
    /// weights[n][i] = coefficient of Omega^i contributed by the n-th term of
    /// P(Omega) = Omega^(3N-1) W_N, with the factor E_n g^n split off.
    weights: Vec<Vec<f64>>,
}

/// Generalized binomial coefficient C(alpha, j).
fn binomial(alpha: f64, j: usize) -> f64 {
    let mut v = 1.0;
    for i in 0..j {
        v *= (alpha - i as f64) / (i as f64 + 1.0);
    }
    v
}

fn int_binomial(n: usize, k: usize) -> f64 {
    binomial(n as f64, k)
}

pub fn build_reexpansion(base: &PerturbationSeries, order: usize) -> Result<VariationalApproximant> {
    if order < 1 {
        return Err(ResumError::InvalidOrder(order));
    }
    if base.order() < order {
        return Err(ResumError::InsufficientOrder {
            have: base.order(),
            need: order,
        });
    }
    let omega = base.omega();
    let coeffs: Vec<f64> = base.coefficients()[..=order].to_vec();
    let mut f_table = Vec::with_capacity(order + 1);
    let mut weights = Vec::with_capacity(order + 1);
    let deg = 3 * order;
    for n in 0..=order {
        let alpha = (1.0 - 3.0 * n as f64) / 2.0;
        let row: Vec<f64> = (0..=order - n).map(|j| binomial(alpha, j)).collect();
        // expand sum_j row[j] (-1)^j (1 - omega^2/Omega^2)^j in powers of
        // Omega^-2 and shift by Omega^(3N-3n)
        let mut w = vec![0.0; deg + 1];
        for i in 0..=order - n {
            let mut s = 0.0;
            for j in i..=order - n {
                s += row[j]
                    * if j % 2 == 0 { 1.0 } else { -1.0 }
                    * int_binomial(j, i)
                    * (-omega * omega).powi(i as i32);
            }
            w[deg - 3 * n - 2 * i] = s;
        }
        f_table.push(row);
        weights.push(w);
    }
    Ok(VariationalApproximant {
        order,
        omega,
        coeffs,
        f_table,
        weights,
    })
}

impl VariationalApproximant {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// W_N(g, Omega) at complex Omega.
    pub fn eval_w(&self, g: f64, omega_trial: Complex64) -> Result<Complex64> {
        if omega_trial.norm() == 0.0 {
            return Err(ResumError::OmegaPole);
        }
        let t = Complex64::new(1.0, 0.0) - (self.omega * self.omega) / (omega_trial * omega_trial);
        let x = g / (omega_trial * omega_trial * omega_trial);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (0..=self.order).rev() {
            // f_n(Omega) by Horner in t with alternating signs folded in
            let row = &self.f_table[n];
            let mut fn_val = Complex64::new(0.0, 0.0);
            for j in (0..row.len()).rev() {
                let c = row[j] * if j % 2 == 0 { 1.0 } else { -1.0 };
                fn_val = fn_val * t + c;
            }
            acc = acc * x + self.coeffs[n] * fn_val;
        }
        Ok(omega_trial * acc)
    }

    /// Real-arithmetic path: guarantees an exactly vanishing imaginary part
    /// when Omega is real.
    pub fn eval_w_real(&self, g: f64, omega_trial: f64) -> Result<f64> {
        if omega_trial == 0.0 {
            return Err(ResumError::OmegaPole);
        }
        let t = 1.0 - (self.omega * self.omega) / (omega_trial * omega_trial);
        let x = g / omega_trial.powi(3);
        let mut acc = 0.0;
        for n in (0..=self.order).rev() {
            let row = &self.f_table[n];
            let mut fn_val = 0.0;
            for j in (0..row.len()).rev() {
                let c = row[j] * if j % 2 == 0 { 1.0 } else { -1.0 };
                fn_val = fn_val * t + c;
            }
            acc = acc * x + self.coeffs[n] * fn_val;
        }
        Ok(omega_trial * acc)
    }

    /// Coefficients of P(Omega) = Omega^(3N-1) W_N(g, Omega), degree 3N.
    fn cleared_poly(&self, g: f64) -> Vec<f64> {
        let deg = 3 * self.order;
        let mut p = vec![0.0; deg + 1];
        let mut gn = 1.0;
        for n in 0..=self.order {
            let en_gn = self.coeffs[n] * gn;
            for (i, w) in self.weights[n].iter().enumerate() {
                p[i] += en_gn * w;
            }
            gn *= g;
        }
        p
    }

    /// d/dg of the cleared polynomial coefficients.
    fn cleared_poly_dg(&self, g: f64) -> Vec<f64> {
        let deg = 3 * self.order;
        let mut p = vec![0.0; deg + 1];
        let mut gn = 1.0;
        for n in 1..=self.order {
            let c = self.coeffs[n] * n as f64 * gn;
            for (i, w) in self.weights[n].iter().enumerate() {
                p[i] += c * w;
            }
            gn *= g;
        }
        p
    }

    /// Numerator polynomial of the m-th Omega-derivative of W_N after
    /// clearing denominators.  With P = Omega^(3N-1) W_N:
    ///   dW/dOmega   = (Omega P' - (3N-1) P) / Omega^(3N)
    ///   d2W/dOmega2 = numerator / Omega^(3N+1)
    /// and both numerators are diagonal rescalings of P's coefficients.
    pub fn stationarity_polynomial(&self, g: f64, derivative_order: u8) -> Vec<f64> {
        let p = self.cleared_poly(g);
        let shift = (3 * self.order) as f64 - 1.0;
        match derivative_order {
            1 => p
                .iter()
                .enumerate()
                .map(|(i, c)| (i as f64 - shift) * c)
                .collect(),
            _ => p
                .iter()
                .enumerate()
                .map(|(i, c)| (i as f64 - shift) * (i as f64 - shift - 1.0) * c)
                .collect(),
        }
    }

    fn stationarity_polynomial_dg(&self, g: f64, derivative_order: u8) -> Vec<f64> {
        let p = self.cleared_poly_dg(g);
        let shift = (3 * self.order) as f64 - 1.0;
        match derivative_order {
            1 => p
                .iter()
                .enumerate()
                .map(|(i, c)| (i as f64 - shift) * c)
                .collect(),
            _ => p
                .iter()
                .enumerate()
                .map(|(i, c)| (i as f64 - shift) * (i as f64 - shift - 1.0) * c)
                .collect(),
        }
    }

    /// All stationary points (extrema) and inflection points (turning
    /// points) of W_N in Omega, real and complex, deduplicated.
    pub fn omega_candidates(&self, g: f64) -> Result<Vec<OmegaCandidate>> {
        let mut out: Vec<OmegaCandidate> = Vec::new();
        for (kind, m) in [(CandidateKind::Extremum, 1u8), (CandidateKind::TurningPoint, 2u8)] {
            let poly = self.stationarity_polynomial(g, m);
            let roots = polyroots::all_roots(&poly)?;
            for z in roots {
                if z.norm() <= 1e-12 * self.omega.max(1.0) {
                    continue; // artifact of clearing the Omega denominators
                }
                let canonical = if z.im.abs() <= REAL_TOL * z.re.abs().max(1.0) {
                    Complex64::new(z.re, 0.0)
                } else if z.im < 0.0 {
                    continue; // emitted together with its conjugate below
                } else {
                    z
                };
                let residual = polyroots::relative_residual(&poly, canonical);
                let dup = out.iter().any(|c| {
                    c.kind == kind
                        && (c.value - canonical).norm() <= 1e-8 * canonical.norm().max(1.0)
                });
                if !dup {
                    out.push(OmegaCandidate {
                        value: canonical,
                        kind,
                        residual,
                    });
                    if canonical.im != 0.0 {
                        out.push(OmegaCandidate {
                            value: canonical.conj(),
                            kind,
                            residual,
                        });
                    }
                }
            }
        }
        // an extremum and a turning point at the same Omega collapse to the extremum
        let mut dedup: Vec<OmegaCandidate> = Vec::new();
        for c in out {
            if let Some(prev) = dedup
                .iter_mut()
                .find(|p| (p.value - c.value).norm() <= 1e-8 * c.value.norm().max(1.0))
            {
                if prev.kind == CandidateKind::TurningPoint && c.kind == CandidateKind::Extremum {
                    *prev = c;
                }
            } else {
                dedup.push(c);
            }
        }
        Ok(dedup)
    }

    /// Optimal Omega from a candidate list.
    ///
    /// For g >= 0 the smallest positive real candidate wins, extrema
    /// preferred on ties.  For g < 0 the stationary branch continuously
    /// connected to g = 0 is followed: among positive real extrema the one
    /// closest to the hint (largest without a hint), and past the branch
    /// point the member of the complex-conjugate extremum pair whose energy
    /// has a negative imaginary part.
    pub fn select_omega(
        &self,
        g: f64,
        candidates: &[OmegaCandidate],
        hint: Option<&OmegaCandidate>,
    ) -> Result<OmegaCandidate> {
        if candidates.is_empty() {
            return Err(ResumError::NoCandidates);
        }
        let positive_real = |c: &&OmegaCandidate| c.is_real() && c.value.re > 0.0;

        if g >= 0.0 {
            let mut reals: Vec<&OmegaCandidate> = candidates.iter().filter(positive_real).collect();
            reals.sort_by(|a, b| {
                a.value
                    .re
                    .partial_cmp(&b.value.re)
                    .unwrap()
                    .then_with(|| kind_rank(a.kind).cmp(&kind_rank(b.kind)))
            });
            // merge near-ties so an extremum wins over a coincident turning point
            if let Some(first) = reals.first() {
                let best = reals
                    .iter()
                    .take_while(|c| c.value.re <= first.value.re * (1.0 + 1e-6))
                    .min_by_key(|c| kind_rank(c.kind))
                    .unwrap();
                return Ok(**best);
            }
        }

        // negative coupling: extrema drive the analytic continuation
        let real_extrema: Vec<&OmegaCandidate> = candidates
            .iter()
            .filter(|c| c.is_real() && c.value.re > 0.0 && c.kind == CandidateKind::Extremum)
            .collect();
        if !real_extrema.is_empty() {
            let chosen = match hint {
                Some(h) => real_extrema
                    .iter()
                    .min_by(|a, b| {
                        dist(a.value, h.value)
                            .partial_cmp(&dist(b.value, h.value))
                            .unwrap()
                    })
                    .unwrap(),
                None => real_extrema
                    .iter()
                    .max_by(|a, b| a.value.re.partial_cmp(&b.value.re).unwrap())
                    .unwrap(),
            };
            return Ok(**chosen);
        }

        for kind in [CandidateKind::Extremum, CandidateKind::TurningPoint] {
            let complex_up: Vec<&OmegaCandidate> = candidates
                .iter()
                .filter(|c| !c.is_real() && c.value.im > 0.0 && c.kind == kind)
                .collect();
            if complex_up.is_empty() {
                continue;
            }
            let pair_rep = match hint {
                Some(h) => complex_up
                    .iter()
                    .min_by(|a, b| {
                        pair_dist(a.value, h.value)
                            .partial_cmp(&pair_dist(b.value, h.value))
                            .unwrap()
                    })
                    .unwrap(),
                None => complex_up
                    .iter()
                    .max_by(|a, b| a.value.re.partial_cmp(&b.value.re).unwrap())
                    .unwrap(),
            };
            // choose the member of the conjugate pair on the -i eta edge
            for value in [pair_rep.value, pair_rep.value.conj()] {
                let w = self.eval_w(g, value)?;
                if w.im < 0.0 {
                    return Ok(OmegaCandidate { value, ..**pair_rep });
                }
            }
            return Ok(**pair_rep);
        }

        // fall back to real positive turning points (even orders at g < 0)
        let mut reals: Vec<&OmegaCandidate> = candidates.iter().filter(positive_real).collect();
        reals.sort_by(|a, b| a.value.re.partial_cmp(&b.value.re).unwrap());
        reals
            .first()
            .map(|c| **c)
            .ok_or(ResumError::NoCandidates)
    }

    /// Resummed energy at coupling g.
    pub fn evaluate(&self, g: f64) -> Result<ResummedEnergy> {
        self.evaluate_with_hint(g, None)
    }

    /// Resummed energy with branch continuity seeded from a previous
    /// selection (used when sweeping g grids).
    pub fn evaluate_with_hint(
        &self,
        g: f64,
        hint: Option<&OmegaCandidate>,
    ) -> Result<ResummedEnergy> {
        let candidates = self.omega_candidates(g)?;
        let chosen = self.select_omega(g, &candidates, hint)?;
        if chosen.is_real() {
            let value = self.eval_w_real(g, chosen.value.re)?;
            Ok(ResummedEnergy {
                g,
                value: Complex64::new(value, 0.0),
                omega_used: chosen,
                branch_tag: BranchTag::Real,
            })
        } else {
            let value = self.eval_w(g, chosen.value)?;
            Ok(ResummedEnergy {
                g,
                value,
                omega_used: chosen,
                branch_tag: BranchTag::ContinuedComplex,
            })
        }
    }

    /// Evaluate along a grid, propagating the selected branch as a hint so
    /// the sweep is continuous through the branch point.
    pub fn sweep(&self, gs: &[f64]) -> Result<Vec<ResummedEnergy>> {
        let mut out = Vec::with_capacity(gs.len());
        let mut hint: Option<OmegaCandidate> = None;
        for &g in gs {
            let e = self.evaluate_with_hint(g, hint.as_ref())?;
            hint = Some(e.omega_used);
            out.push(e);
        }
        Ok(out)
    }

    /// Largest g_bp > 0 such that the approximant stays real on (-g_bp, 0):
    /// the coupling where the followed pair of real stationary points merges
    /// into a double root and leaves the real axis.  Closed form for N = 1,
    /// scan + bisection + Newton on the double-root system otherwise.
    pub fn branch_point(&self) -> Result<f64> {
        if self.order == 1 {
            return Ok(self.omega.powi(3) * self.coeffs[0]
                / (6.0 * 3.0f64.sqrt() * self.coeffs[1]));
        }
        let window = self.omega.powi(3);
        let has_real_extremum = |gbp: f64| -> bool {
            let poly = self.stationarity_polynomial(-gbp, 1);
            match polyroots::all_roots(&poly) {
                Ok(roots) => roots
                    .iter()
                    .any(|z| z.re > 0.0 && z.im.abs() <= 1e-6 * z.re.abs().max(1.0)),
                Err(_) => false,
            }
        };
        // bracket the disappearance of the real pair
        let steps = 400;
        let mut lo = window * 1e-6;
        if !has_real_extremum(lo) {
            return Err(ResumError::NoBranchPoint { window });
        }
        let mut hi = None;
        for i in 1..=steps {
            let gbp = window * i as f64 / steps as f64;
            if !has_real_extremum(gbp) {
                hi = Some(gbp);
                break;
            }
            lo = gbp;
        }
        let mut hi = hi.ok_or(ResumError::NoBranchPoint { window })?;
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if has_real_extremum(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // locate the merging pair just inside the real window
        let poly = self.stationarity_polynomial(-lo, 1);
        let dpoly = derivative_coeffs(&poly);
        let roots = polyroots::all_roots(&poly)?;
        let omega0 = roots
            .iter()
            .filter(|z| z.re > 0.0)
            .min_by(|a, b| {
                let ra = polyroots::eval_with_derivative(&dpoly, **a).0.norm();
                let rb = polyroots::eval_with_derivative(&dpoly, **b).0.norm();
                ra.partial_cmp(&rb).unwrap()
            })
            .map(|z| z.re)
            .ok_or(ResumError::NoBranchPoint { window })?;
        self.refine_double_root(omega0, lo).map_err(|_| ResumError::NoBranchPoint { window })
    }

    /// Newton iteration on (Omega, g_bp) for the simultaneous system
    /// D1(Omega; -g_bp) = 0, dD1/dOmega(Omega; -g_bp) = 0.
    fn refine_double_root(&self, mut omega_val: f64, mut gbp: f64) -> Result<f64> {
        for _ in 0..60 {
            let d1 = self.stationarity_polynomial(-gbp, 1);
            let d1g = self.stationarity_polynomial_dg(-gbp, 1);
            let f1 = eval_real(&d1, omega_val);
            let f2 = eval_real(&derivative_coeffs(&d1), omega_val);
            let j11 = f2;
            let j12 = -eval_real(&d1g, omega_val);
            let j21 = eval_real(&derivative_coeffs(&derivative_coeffs(&d1)), omega_val);
            let j22 = -eval_real(&derivative_coeffs(&d1g), omega_val);
            let det = j11 * j22 - j12 * j21;
            if det == 0.0 || !det.is_finite() {
                break;
            }
            let d_omega = (f1 * j22 - f2 * j12) / det;
            let d_g = (j11 * f2 - j21 * f1) / det;
            omega_val -= d_omega;
            gbp -= d_g;
            if d_omega.abs() <= 1e-15 * omega_val.abs().max(1.0)
                && d_g.abs() <= 1e-15 * gbp.abs().max(1.0)
            {
                break;
            }
        }
        if gbp.is_finite() && gbp > 0.0 {
            Ok(gbp)
        } else {
            Err(ResumError::NoBranchPoint { window: self.omega.powi(3) })
        }
    }
}

fn kind_rank(kind: CandidateKind) -> u8 {
    match kind {
        CandidateKind::Extremum => 0,
        CandidateKind::TurningPoint => 1,
    }
}

fn dist(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm()
}

/// Distance from a hint to the closer member of a conjugate pair.
fn pair_dist(rep: Complex64, hint: Complex64) -> f64 {
    dist(rep, hint).min(dist(rep.conj(), hint))
}

fn derivative_coeffs(p: &[f64]) -> Vec<f64> {
    if p.len() <= 1 {
        return vec![0.0];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect()
}

fn eval_real(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// N = 1 energy through the trigonometric/hyperbolic solution of the
/// stationarity cubic Omega^3 - omega^2 Omega - (4 E_1/E_0) g = 0, whose
/// double root sits at g_bp = omega^3 E_0 / (6 sqrt(3) E_1).
pub fn closed_form_w1(appr: &VariationalApproximant, g: f64) -> Result<Complex64> {
    assert_eq!(appr.order(), 1, "closed form applies to the N = 1 approximant");
    let omega = appr.omega();
    let g_bp = appr.branch_point()?;
    let z = g / g_bp;
    let scale = 2.0 * omega / 3.0f64.sqrt();
    if z >= 1.0 {
        let omega_trial = scale * (z.acosh() / 3.0).cosh();
        return appr.eval_w(g, Complex64::new(omega_trial, 0.0));
    }
    if z >= -1.0 {
        let omega_trial = scale * (z.acos() / 3.0).cos();
        return appr.eval_w(g, Complex64::new(omega_trial, 0.0));
    }
    // z < -1: acos continues to pi -+ i acosh(-z); pick the -i eta edge
    let theta = Complex64::new(std::f64::consts::PI, -(-z).acosh()) / 3.0;
    let omega_trial = scale * theta.cos();
    let w = appr.eval_w(g, omega_trial)?;
    if w.im < 0.0 {
        Ok(w)
    } else {
        appr.eval_w(g, omega_trial.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::PerturbationSeries;
    use approx::assert_relative_eq;

    fn osc(order: usize) -> PerturbationSeries {
        PerturbationSeries::oscillator(1.0, order).unwrap()
    }

    #[test]
    fn rejects_order_zero() {
        assert!(matches!(
            build_reexpansion(&osc(3), 0),
            Err(ResumError::InvalidOrder(0))
        ));
    }

    #[test]
    fn reduction_at_trial_equals_partial_sum() {
        let s = osc(6);
        for n in [1usize, 3, 6] {
            let appr = build_reexpansion(&s, n).unwrap();
            for g in [0.0, 0.1, 1.0, -0.3, 25.0] {
                let w = appr.eval_w_real(g, 1.0).unwrap();
                assert_relative_eq!(w, s.partial_sum(g, n), max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn n1_matches_printed_lowest_order() {
        // W_1(g=1, Omega=2) = 2/4 + 1/8 + 3/16
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let w = appr.eval_w(1.0, Complex64::new(2.0, 0.0)).unwrap();
        assert_relative_eq!(w.re, 0.8125, max_relative = 1e-14);
        assert_eq!(w.im, 0.0);
    }

    #[test]
    fn n1_f0_row() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        assert_eq!(appr.f_table[0], vec![1.0, 0.5]);
    }

    #[test]
    fn conjugation_symmetry() {
        let appr = build_reexpansion(&osc(3), 3).unwrap();
        let z = Complex64::new(1.3, 0.7);
        let a = appr.eval_w(0.4, z).unwrap();
        let b = appr.eval_w(0.4, z.conj()).unwrap();
        assert_relative_eq!(a.re, b.re, max_relative = 1e-14);
        assert_relative_eq!(a.im, -b.im, max_relative = 1e-14);
    }

    #[test]
    fn pole_error() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        assert!(matches!(
            appr.eval_w(1.0, Complex64::new(0.0, 0.0)),
            Err(ResumError::OmegaPole)
        ));
    }

    #[test]
    fn n1_stationarity_cubic() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let p = appr.stationarity_polynomial(1.0, 1);
        // proportional to Omega^3 - Omega - 6g with g = 1
        let scale = p[3];
        let reduced: Vec<f64> = p.iter().map(|c| c / scale).collect();
        assert_relative_eq!(reduced[0], -6.0, max_relative = 1e-14);
        assert_relative_eq!(reduced[1], -1.0, max_relative = 1e-14);
        assert_relative_eq!(reduced[2], 0.0, epsilon = 1e-14);
        assert_relative_eq!(reduced[3], 1.0, max_relative = 1e-14);
    }

    #[test]
    fn stationarity_degree() {
        for n in [1usize, 2, 3, 4] {
            let appr = build_reexpansion(&osc(4), n).unwrap();
            let p = appr.stationarity_polynomial(0.7, 1);
            assert_eq!(p.len(), 3 * n + 1);
            assert!(p[3 * n] != 0.0);
        }
    }

    #[test]
    fn candidates_n1_positive_coupling() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let cands = appr.omega_candidates(1.0).unwrap();
        let sel = appr.select_omega(1.0, &cands, None).unwrap();
        assert!(sel.is_real());
        // real root of Omega^3 - Omega - 6 = 0
        assert_relative_eq!(sel.value.re, 2.0, max_relative = 1e-10);
        assert!(sel.residual < 1e-12);
    }

    #[test]
    fn candidates_n1_past_branch_point() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let cands = appr.omega_candidates(-0.1).unwrap();
        // no positive real extremum beyond the branch point
        assert!(!cands
            .iter()
            .any(|c| c.kind == CandidateKind::Extremum && c.is_real() && c.value.re > 0.0));
        // conjugate pair present
        let up = cands
            .iter()
            .find(|c| c.kind == CandidateKind::Extremum && c.value.im > 0.0)
            .unwrap();
        assert!(cands
            .iter()
            .any(|c| (c.value - up.value.conj()).norm() < 1e-10));
        let sel = appr.select_omega(-0.1, &cands, None).unwrap();
        let w = appr.eval_w(-0.1, sel.value).unwrap();
        assert!(w.im < 0.0);
    }

    #[test]
    fn free_oscillator_limit() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let e = appr.evaluate(0.0).unwrap();
        assert_relative_eq!(e.omega_used.value.re, 1.0, max_relative = 1e-12);
        assert_eq!(e.value.im, 0.0);
        assert_relative_eq!(e.value.re, 0.5, max_relative = 1e-14);
    }

    #[test]
    fn real_window_at_small_negative_coupling() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let e = appr.evaluate(-0.05).unwrap();
        assert_eq!(e.branch_tag, BranchTag::Real);
        assert_eq!(e.value.im, 0.0);
    }

    #[test]
    fn branch_point_n1_closed_form() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let expect = 1.0 / (9.0 * 3.0f64.sqrt());
        assert_relative_eq!(appr.branch_point().unwrap(), expect, max_relative = 1e-14);
    }

    #[test]
    fn branch_point_modified_coefficients() {
        let s = PerturbationSeries::from_coefficients(
            1.0,
            vec![0.50117, 0.72905, -2.24059, 13.54295, -98.64571],
        );
        let appr = build_reexpansion(&s, 1).unwrap();
        assert_relative_eq!(appr.branch_point().unwrap(), 0.0661, max_relative = 2e-3);
    }

    #[test]
    fn strong_coupling_slope_within_two_percent() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let g = 1e8;
        let e = appr.evaluate(g).unwrap();
        let slope = e.value.re / g.powf(1.0 / 3.0);
        assert_relative_eq!(slope, 2.25 * 6.0f64.powf(-2.0 / 3.0), max_relative = 1e-4);
    }

    #[test]
    fn closed_form_matches_generic_path() {
        let appr = build_reexpansion(&osc(1), 1).unwrap();
        let gs = [-1.0, -0.5, -0.1, -0.0641, -0.03, 0.0, 0.5, 1.0, 10.0, 100.0];
        let generic = appr.sweep(&gs).unwrap();
        for (i, &g) in gs.iter().enumerate() {
            let cf = closed_form_w1(&appr, g).unwrap();
            let e = &generic[i];
            assert!(
                (cf - e.value).norm() <= 1e-12 * e.value.norm(),
                "mismatch at g={g}: closed {cf} generic {}",
                e.value
            );
        }
    }

    #[test]
    fn symanzik_scaling() {
        let s_unit = osc(3);
        let appr_unit = build_reexpansion(&s_unit, 3).unwrap();
        for omega in [0.5, 2.0] {
            let s = PerturbationSeries::oscillator(omega, 3).unwrap();
            let appr = build_reexpansion(&s, 3).unwrap();
            for g in [0.2, 1.0, 10.0] {
                let lhs = appr.evaluate(g).unwrap().value.re;
                let rhs = omega * appr_unit.evaluate(g / omega.powi(3)).unwrap().value.re;
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn stationarity_residual_small() {
        let appr = build_reexpansion(&osc(3), 3).unwrap();
        for g in [0.3, 1.0, 10.0] {
            let e = appr.evaluate(g).unwrap();
            let d1 = appr.stationarity_polynomial(g, 1);
            let (val, _) = polyroots::eval_with_derivative(&d1, e.omega_used.value);
            let dw = val / e.omega_used.value.powu(3 * appr.order() as u32);
            assert!(
                dw.norm() <= 1e-10 * e.value.norm(),
                "stationarity violated at g={g}: {}",
                dw.norm()
            );
        }
    }
}
