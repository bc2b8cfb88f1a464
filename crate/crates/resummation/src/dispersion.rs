//! Left-hand-cut machinery: the semiclassical discontinuity, its moment
//! integrals, subtraction of the cut tip from the series coefficients, the
//! self-consistent cutoff iteration, and the corrected approximant
//! Wbar'_N = W'_N + Delta_N E.
//!
//! All moment bookkeeping is anchored on the substitution u = omega^3 / (3
//! lambda), which turns every cut integral into an (incomplete) gamma
//! function of u_c = omega^3 / (3 g_cut):
//!
//!   delta_k(g_cut) = -(omega/pi) sqrt(6/pi) (-3/omega^3)^k Gamma(k + 1/2, u_c)
//!
//! and the full-cut moment (g_cut -> infinity) reproduces the leading
//! large-order coefficient exactly.

use num::complex::Complex64;
use statrs::function::gamma::{gamma, gamma_ur};

use crate::error::{ResumError, Result};
use crate::quadrature;
use crate::series::PerturbationSeries;
use crate::variational::{build_reexpansion, ResummedEnergy, VariationalApproximant};

/// Correction coefficients to the tunneling discontinuity, as a series in
/// 3|g|/omega^3 inside the bracket of the leading expression.
pub const CUT_CORRECTIONS: [f64; 6] = [
    -95.0 / 72.0,
    -13259.0 / 10368.0,
    -8956043.0 / 2239488.0,
    -17.80162255,
    -98.64510840,
    -643.7460486,
];

/// Semiclassical model of the discontinuity across the left-hand cut.
#[derive(Debug, Clone)]
pub struct DiscontinuityModel {
    omega: f64,
    /// sqrt(6/pi) for the oscillator ground state.
    prefactor: f64,
    /// Coefficients of powers of 3|g|/omega^3 in the correction bracket.
    corrections: Vec<f64>,
    /// Number of correction terms actually applied; 0 keeps the leading term only.
    truncation: usize,
}

impl DiscontinuityModel {
    pub fn oscillator(omega: f64) -> Self {
        Self {
            omega,
            prefactor: (6.0 / std::f64::consts::PI).sqrt(),
            corrections: CUT_CORRECTIONS.to_vec(),
            truncation: 0,
        }
    }

    pub fn with_truncation(mut self, truncation: usize) -> Self {
        self.truncation = truncation.min(self.corrections.len());
        self
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Action scale omega^3 / 3 appearing in the exponent.
    pub fn action_scale(&self) -> f64 {
        self.omega.powi(3) / 3.0
    }

    /// Correction bracket evaluated at x = 3 lambda / omega^3.
    fn bracket(&self, x: f64) -> f64 {
        let mut c = 1.0;
        let mut xp = 1.0;
        for i in 0..self.truncation {
            xp *= x;
            c += self.corrections[i] * xp;
        }
        c
    }

    /// Im E(-lambda - i eta) for lambda > 0.
    pub fn semiclassical_disc(&self, lambda: f64) -> f64 {
        assert!(lambda > 0.0, "the discontinuity lives on lambda > 0");
        let s = self.action_scale() / lambda;
        -self.omega * self.prefactor * s.sqrt() * (-s).exp() * self.bracket(1.0 / s)
    }
}

/// Upper incomplete gamma Gamma(a, x) for x > 0 and any real a, via downward
/// recurrence Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a when a <= 0.
fn upper_incomplete_gamma(a: f64, x: f64) -> f64 {
    if a > 0.0 {
        return gamma_ur(a, x) * gamma(a);
    }
    let mut shift = 0usize;
    let mut aa = a;
    while aa <= 0.0 {
        aa += 1.0;
        shift += 1;
    }
    let mut val = gamma_ur(aa, x) * gamma(aa);
    for s in (0..shift).rev() {
        let ai = a + s as f64;
        val = (val - x.powf(ai) * (-x).exp()) / ai;
    }
    val
}

/// Coefficient of g^k induced by the full cut with the leading
/// discontinuity.  Closed form; equals the leading large-order coefficient.
pub fn moment_full(k: usize, model: &DiscontinuityModel) -> Result<f64> {
    if model.truncation != 0 {
        // the correction polynomial grows at large lambda; the full moment diverges
        return Err(ResumError::DivergentMoment);
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(-(model.omega / std::f64::consts::PI)
        * model.prefactor
        * sign
        * (3.0 / model.omega.powi(3)).powi(k as i32)
        * gamma(k as f64 + 0.5))
}

/// delta_k(g_cut): the g^k coefficient induced by the cut segment
/// lambda in (0, g_cut), via the incomplete-gamma closed form.
pub fn moment_truncated(k: usize, g_cut: f64, model: &DiscontinuityModel) -> f64 {
    assert!(g_cut > 0.0);
    let u_c = model.omega.powi(3) / (3.0 * g_cut);
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = upper_incomplete_gamma(k as f64 + 0.5, u_c);
    for i in 0..model.truncation {
        sum += model.corrections[i] * upper_incomplete_gamma(k as f64 - i as f64 - 0.5, u_c);
    }
    -(model.omega / std::f64::consts::PI)
        * model.prefactor
        * sign
        * (3.0 / model.omega.powi(3)).powi(k as i32)
        * sum
}

/// Independent adaptive-quadrature route for delta_k, used to cross-check
/// the closed form.
pub fn moment_truncated_quadrature(
    k: usize,
    g_cut: f64,
    model: &DiscontinuityModel,
    rel_tol: f64,
) -> Result<f64> {
    assert!(g_cut > 0.0);
    let u_c = model.omega.powi(3) / (3.0 * g_cut);
    let span = 60.0 + 12.0 * k as f64;
    let kf = k as f64;
    let integral = quadrature::integrate(
        |u: f64| u.powf(kf - 0.5) * (-(u - u_c)).exp() * model.bracket(1.0 / u),
        u_c,
        u_c + span,
        rel_tol,
    )?;
    // e^{-u_c} factored out of the integrand to keep it in range for large u_c
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(-(model.omega / std::f64::consts::PI)
        * model.prefactor
        * sign
        * (3.0 / model.omega.powi(3)).powi(k as i32)
        * integral
        * (-u_c).exp())
}

/// E'_k = E_k - delta_k(g_cut), with delta_k converted to the dimensionless
/// normalization of the series coefficients.
pub fn subtract_tip(
    series: &PerturbationSeries,
    g_cut: f64,
    model: &DiscontinuityModel,
) -> PerturbationSeries {
    let omega = series.omega();
    let coeffs: Vec<f64> = series
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, e)| e - moment_truncated(k, g_cut, model) * omega.powi(3 * k as i32 - 1))
        .collect();
    PerturbationSeries::from_coefficients(omega, coeffs)
}

/// History of the self-consistent cutoff iteration.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub order: usize,
    pub cutoffs: Vec<f64>,
    pub coefficient_snapshots: Vec<Vec<f64>>,
    pub converged: bool,
    pub tolerance: f64,
}

impl IterationTrace {
    pub fn final_cutoff(&self) -> f64 {
        *self.cutoffs.last().expect("trace has at least the seed cutoff")
    }

    pub fn final_coefficients(&self) -> &[f64] {
        self.coefficient_snapshots
            .last()
            .expect("trace has at least one snapshot")
    }
}

/// Iterate g <- branch_point(reexpansion(subtract_tip(series, g), N)),
/// seeded from the branch point of the unsubtracted reexpansion.
pub fn fixed_point_cutoff(
    order: usize,
    series: &PerturbationSeries,
    model: &DiscontinuityModel,
    tol: f64,
) -> Result<IterationTrace> {
    assert!(tol > 0.0);
    const MAX_ITER: usize = 100;
    let seed = build_reexpansion(series, order)?.branch_point()?;
    let mut cutoffs = vec![seed];
    let mut snapshots = Vec::new();
    let mut current = seed;
    for _ in 0..MAX_ITER {
        let sub = subtract_tip(series, current, model);
        snapshots.push(sub.coefficients().to_vec());
        let next = build_reexpansion(&sub, order)?.branch_point()?;
        cutoffs.push(next);
        let done = (next - current).abs() <= tol;
        current = next;
        if done {
            // snapshot at the converged cutoff
            let final_sub = subtract_tip(series, current, model);
            snapshots.push(final_sub.coefficients().to_vec());
            return Ok(IterationTrace {
                order,
                cutoffs,
                coefficient_snapshots: snapshots,
                converged: true,
                tolerance: tol,
            });
        }
    }
    Err(ResumError::FixedPointDiverged {
        iterations: MAX_ITER,
        last: cutoffs,
    })
}

/// Delta_N E(g): the cut segment restored as an explicit dispersion
/// integral (1/pi) int_0^{g_cut} Im E_sc(-lambda - i0) / (lambda + g) d lambda
/// on the -i eta edge.
///
/// For g in (-g_cut, 0) the real part is a principal value and the
/// imaginary part is exactly the discontinuity at |g|.
pub fn addback(g: f64, g_cut: f64, model: &DiscontinuityModel, rel_tol: f64) -> Result<Complex64> {
    assert!(g_cut > 0.0);
    if g <= -g_cut {
        return Err(ResumError::AddbackDomain { g, g_cut });
    }
    if g >= 0.0 {
        // u = omega^3/(3 lambda) maps the segment to (u_c, inf) and removes
        // the essential singularity at lambda -> 0+
        let u_c = model.omega.powi(3) / (3.0 * g_cut);
        let scale = model.omega.powi(4) * model.prefactor / (3.0 * std::f64::consts::PI);
        let integral = quadrature::integrate(
            |u: f64| {
                let lambda = model.omega.powi(3) / (3.0 * u);
                u.powf(-1.5) * (-(u - u_c)).exp() * model.bracket(1.0 / u) / (lambda + g)
            },
            u_c,
            u_c + 80.0,
            rel_tol,
        )?;
        return Ok(Complex64::new(-scale * integral * (-u_c).exp(), 0.0));
    }
    let pole = -g;
    let f = |lambda: f64| {
        if lambda <= 0.0 {
            0.0
        } else {
            model.semiclassical_disc(lambda) / std::f64::consts::PI
        }
    };
    let re = quadrature::principal_value(f, 0.0, g_cut, pole, rel_tol)?;
    Ok(Complex64::new(re, model.semiclassical_disc(pole)))
}

/// The same integral for g < -g_cut, where the kernel is pole-free on the
/// segment; used by the corrected approximant.
fn addback_beyond_cut(g: f64, g_cut: f64, model: &DiscontinuityModel, rel_tol: f64) -> Result<f64> {
    debug_assert!(g < -g_cut);
    quadrature::integrate(
        |lambda: f64| {
            if lambda <= 0.0 {
                0.0
            } else {
                model.semiclassical_disc(lambda) / (std::f64::consts::PI * (lambda + g))
            }
        },
        0.0,
        g_cut,
        rel_tol,
    )
}

/// Cut-subtracted variational approximant plus the explicit add-back of the
/// cut tip: Wbar'_N(g) = W'_N(g) + Delta_N E(g).
#[derive(Debug, Clone)]
pub struct CorrectedApproximant {
    approximant: VariationalApproximant,
    model: DiscontinuityModel,
    g_cut: f64,
    rel_tol: f64,
}

impl CorrectedApproximant {
    pub fn from_trace(
        series: &PerturbationSeries,
        model: &DiscontinuityModel,
        trace: &IterationTrace,
    ) -> Result<Self> {
        if !trace.converged {
            return Err(ResumError::TraceNotConverged);
        }
        let g_cut = trace.final_cutoff();
        let sub = subtract_tip(series, g_cut, model);
        let approximant = build_reexpansion(&sub, trace.order)?;
        Ok(Self {
            approximant,
            model: model.clone(),
            g_cut,
            rel_tol: 1e-12,
        })
    }

    /// Build directly at a given cutoff, bypassing the fixed-point
    /// iteration (used to inspect the unconverged variant).
    pub fn with_cutoff(
        series: &PerturbationSeries,
        model: &DiscontinuityModel,
        order: usize,
        g_cut: f64,
    ) -> Result<Self> {
        let sub = subtract_tip(series, g_cut, model);
        let approximant = build_reexpansion(&sub, order)?;
        Ok(Self {
            approximant,
            model: model.clone(),
            g_cut,
            rel_tol: 1e-12,
        })
    }

    pub fn g_cut(&self) -> f64 {
        self.g_cut
    }

    pub fn approximant(&self) -> &VariationalApproximant {
        &self.approximant
    }

    pub fn energy(&self, g: f64) -> Result<ResummedEnergy> {
        self.energy_with_hint(g, None)
    }

    pub fn energy_with_hint(
        &self,
        g: f64,
        hint: Option<&crate::variational::OmegaCandidate>,
    ) -> Result<ResummedEnergy> {
        let mut var = self.approximant.evaluate_with_hint(g, hint)?;
        let delta = if g > -self.g_cut {
            addback(g, self.g_cut, &self.model, self.rel_tol)?
        } else {
            Complex64::new(
                addback_beyond_cut(g, self.g_cut, &self.model, self.rel_tol)?,
                0.0,
            )
        };
        var.value += delta;
        Ok(var)
    }

    pub fn sweep(&self, gs: &[f64]) -> Result<Vec<ResummedEnergy>> {
        let mut out = Vec::with_capacity(gs.len());
        let mut hint = None;
        for &g in gs {
            let e = self.energy_with_hint(g, hint.as_ref())?;
            hint = Some(e.omega_used);
            out.push(e);
        }
        Ok(out)
    }
}

/// One-shot assembly of Wbar'_N(g) from a converged trace.
pub fn assemble(
    g: f64,
    series: &PerturbationSeries,
    model: &DiscontinuityModel,
    trace: &IterationTrace,
) -> Result<ResummedEnergy> {
    CorrectedApproximant::from_trace(series, model, trace)?.energy(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{asymptotic_coefficient, LargeOrderParams, PerturbationSeries};
    use approx::assert_relative_eq;

    fn model() -> DiscontinuityModel {
        DiscontinuityModel::oscillator(1.0)
    }

    #[test]
    fn disc_reference_value() {
        // lambda = 1/3: -sqrt(6/pi) e^{-1}
        let m = model();
        let expect = -(6.0 / std::f64::consts::PI).sqrt() * (-1.0f64).exp();
        assert_relative_eq!(m.semiclassical_disc(1.0 / 3.0), expect, max_relative = 1e-14);
        assert_relative_eq!(m.semiclassical_disc(1.0 / 3.0), -0.5084012, max_relative = 1e-5);
    }

    #[test]
    fn disc_vanishes_at_origin() {
        let m = model();
        // essential singularity beats any power of lambda
        assert_eq!(m.semiclassical_disc(1e-4), 0.0);
        assert!(m.semiclassical_disc(1e-2).abs() < 1e-12);
        for lambda in [0.01, 0.1, 1.0, 10.0] {
            assert!(m.semiclassical_disc(lambda) < 0.0);
        }
    }

    #[test]
    fn disc_first_correction() {
        let m = model().with_truncation(1);
        let lambda = 0.05;
        let lead = model().semiclassical_disc(lambda);
        assert_relative_eq!(
            m.semiclassical_disc(lambda),
            lead * (1.0 - 95.0 / 72.0 * 3.0 * lambda),
            max_relative = 1e-14
        );
    }

    #[test]
    fn full_moment_equals_leading_asymptotics() {
        let m = model();
        let params = LargeOrderParams::oscillator(1.0);
        for k in 0..=10 {
            let mf = moment_full(k, &m).unwrap();
            let lead = asymptotic_coefficient(k, &params, false);
            assert_relative_eq!(mf, lead, max_relative = 1e-12);
        }
        assert_relative_eq!(moment_full(0, &m).unwrap(), -0.779696, max_relative = 1e-5);
        assert_relative_eq!(moment_full(1, &m).unwrap(), 1.16954, max_relative = 1e-5);
    }

    #[test]
    fn full_moment_rejects_corrections() {
        assert!(matches!(
            moment_full(0, &model().with_truncation(2)),
            Err(ResumError::DivergentMoment)
        ));
    }

    #[test]
    fn truncated_moment_reference_values() {
        let m = model();
        // k=0, g_cut = 1/(9 sqrt 3): -(1/pi) sqrt(6/pi) Gamma(1/2, 3 sqrt 3)
        let d0 = moment_truncated(0, 1.0 / (9.0 * 3.0f64.sqrt()), &m);
        assert!((d0 - -9.9e-4).abs() < 5e-5, "delta_0 = {d0}");
        let d1 = moment_truncated(1, 0.0661, &m);
        assert!((d1 - 0.0210).abs() < 5e-4, "delta_1 = {d1}");
        assert_relative_eq!(0.75 - d1, 0.72905, max_relative = 2e-3);
    }

    #[test]
    fn truncated_moment_limits() {
        let m = model();
        // k = 0 approaches the full moment only like 2/sqrt(3 pi g_cut)
        let deficit = (moment_truncated(0, 1e9, &m) / moment_full(0, &m).unwrap() - 1.0).abs();
        let expect = 2.0 / (3.0 * std::f64::consts::PI * 1e9).sqrt();
        assert_relative_eq!(deficit, expect, max_relative = 1e-3);
        // k >= 1 deficits scale like u_c^{k+1/2} and are far below 1e-9
        for k in 1..=6 {
            assert_relative_eq!(
                moment_truncated(k, 1e9, &m),
                moment_full(k, &m).unwrap(),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn closed_form_vs_quadrature() {
        let m = model();
        for k in [0usize, 1, 3, 7, 10] {
            for g_cut in [1e-3, 1e-2, 0.0661, 0.5, 10.0] {
                let cf = moment_truncated(k, g_cut, &m);
                let q = moment_truncated_quadrature(k, g_cut, &m, 1e-13).unwrap();
                assert_relative_eq!(cf, q, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn subtraction_leaves_series_at_tiny_cutoff() {
        let s = PerturbationSeries::oscillator(1.0, 4).unwrap();
        let sub = subtract_tip(&s, 1e-6, &model());
        for (a, b) in s.coefficients().iter().zip(sub.coefficients()) {
            assert_relative_eq!(a, b, max_relative = 1e-13);
        }
    }

    #[test]
    fn fixed_point_n1_matches_published_coefficients() {
        let s = PerturbationSeries::oscillator(1.0, 4).unwrap();
        let trace = fixed_point_cutoff(1, &s, &model(), 1e-10).unwrap();
        assert!(trace.converged);
        let g_star = trace.final_cutoff();
        assert!((0.060..=0.072).contains(&g_star), "cutoff {g_star}");
        let expect = [0.50117, 0.72905, -2.24059, 13.54295, -98.64571];
        for (k, e) in expect.iter().enumerate() {
            let got = trace.final_coefficients()[k];
            assert!(
                ((got - e) / e).abs() < 5e-3,
                "E'_{k}: got {got}, expected {e}"
            );
        }
    }

    #[test]
    fn addback_at_origin_is_delta0() {
        let m = model();
        let g_cut = 0.0661;
        let v = addback(0.0, g_cut, &m, 1e-12).unwrap();
        assert_eq!(v.im, 0.0);
        assert_relative_eq!(v.re, moment_truncated(0, g_cut, &m), max_relative = 1e-10);
        assert!(v.re < 0.0);
    }

    #[test]
    fn addback_imaginary_part_is_the_discontinuity() {
        let m = model();
        let g_cut = 0.0661;
        let v = addback(-0.05, g_cut, &m, 1e-12).unwrap();
        assert_relative_eq!(v.im, m.semiclassical_disc(0.05), max_relative = 1e-14);
        assert!(v.im < 0.0);
    }

    #[test]
    fn addback_domain_error() {
        assert!(matches!(
            addback(-0.1, 0.0661, &model(), 1e-12),
            Err(ResumError::AddbackDomain { .. })
        ));
    }

    #[test]
    fn addback_taylor_matches_truncated_moments() {
        // the add-back integral's Taylor coefficients at g = 0 are delta_k;
        // the real part is smooth through 0, so the check also covers the
        // principal-value branch at small negative g
        let m = model();
        let g_cut = 0.0661;
        assert_relative_eq!(
            addback(0.0, g_cut, &m, 1e-13).unwrap().re,
            moment_truncated(0, g_cut, &m),
            max_relative = 1e-10
        );
        for g in [1e-3f64, 5e-3, -1e-3] {
            let taylor: f64 = (0..=10)
                .map(|k| moment_truncated(k, g_cut, &m) * g.powi(k as i32))
                .sum();
            let v = addback(g, g_cut, &m, 1e-13).unwrap().re;
            assert_relative_eq!(v, taylor, max_relative = 1e-8);
        }
    }

    #[test]
    fn assembled_energy_is_exact_at_origin() {
        let s = PerturbationSeries::oscillator(1.0, 4).unwrap();
        let m = model();
        let trace = fixed_point_cutoff(1, &s, &m, 1e-10).unwrap();
        let e = assemble(0.0, &s, &m, &trace).unwrap();
        assert!((e.value.re - 0.5).abs() < 1e-10, "origin value {}", e.value.re);
        assert_eq!(e.value.im, 0.0);
    }

    #[test]
    fn assembled_energy_has_cut_for_all_negative_g() {
        let s = PerturbationSeries::oscillator(1.0, 4).unwrap();
        let m = model();
        let trace = fixed_point_cutoff(1, &s, &m, 1e-10).unwrap();
        let corrected = CorrectedApproximant::from_trace(&s, &m, &trace).unwrap();
        for g in [-0.01, -0.04, -0.1, -0.5, -1.0] {
            let e = corrected.energy(g).unwrap();
            assert!(e.value.im < 0.0, "Im at g={g} is {}", e.value.im);
        }
        // on the splice interval the imaginary part is exactly semiclassical
        let e = corrected.energy(-0.03).unwrap();
        assert_relative_eq!(e.value.im, m.semiclassical_disc(0.03), max_relative = 1e-8);
    }
}
