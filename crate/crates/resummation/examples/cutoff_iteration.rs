//! Self-consistent determination of the cut-subtraction cutoff.
//!
//! The near-origin segment of the left-hand cut is subtracted from the
//! series coefficients; the cutoff is iterated to the branch point of the
//! subtracted approximant's own stationarity condition.

use resummation::dispersion::{fixed_point_cutoff, DiscontinuityModel};
use resummation::series::PerturbationSeries;

fn main() {
    let model = DiscontinuityModel::oscillator(1.0);
    for order in [1usize, 3] {
        let series = PerturbationSeries::oscillator(1.0, order + 2).unwrap();
        let trace = fixed_point_cutoff(order, &series, &model, 1e-10).unwrap();
        println!("order N = {order} (converged: {})", trace.converged);
        for (i, c) in trace.cutoffs.iter().enumerate() {
            println!("  iter {i:>2}: g_cut = {c:.12}");
        }
        println!("  subtracted coefficients at the final cutoff:");
        for (k, e) in trace.final_coefficients().iter().enumerate() {
            println!("    E'_{k} = {e:.8}");
        }
        println!();
    }
}
