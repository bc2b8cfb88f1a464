//! Analytic continuation to negative coupling.
//!
//! The plain order-1 approximant stays real down to its branch point at
//! g = -1/(9 sqrt 3); the corrected approximant carries an imaginary part
//! for all g < 0, equal below threshold to the semiclassical discontinuity.

use resummation::dispersion::{fixed_point_cutoff, CorrectedApproximant, DiscontinuityModel};
use resummation::series::PerturbationSeries;
use resummation::variational::build_reexpansion;

fn main() {
    let model = DiscontinuityModel::oscillator(1.0);
    let series = PerturbationSeries::oscillator(1.0, 3).unwrap();
    let plain = build_reexpansion(&series, 1).unwrap();
    let trace = fixed_point_cutoff(1, &series, &model, 1e-10).unwrap();
    let corrected = CorrectedApproximant::from_trace(&series, &model, &trace).unwrap();

    println!("branch point of the plain approximant: g = -{:.10}", plain.branch_point().unwrap());
    println!(
        "{:>10} {:>14} {:>14} {:>14}",
        "g", "Im W_1", "Im corrected", "semiclassical"
    );
    let mut gs: Vec<f64> = (1..=40).map(|i| -0.005 * i as f64).collect();
    gs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut hint = None;
    for g in gs {
        let p = plain.evaluate(g).unwrap();
        let c = corrected.energy_with_hint(g, hint.as_ref()).unwrap();
        hint = Some(c.omega_used.clone());
        let sc = model.semiclassical_disc(-g);
        println!("{g:>10.3} {:>14.6e} {:>14.6e} {:>14.6e}", p.value.im, c.value.im, sc);
    }
}
