//! Cut-corrected resummation: subtract the tip of the left-hand cut from the
//! coefficients, resum, and add the tip back as an explicit dispersion
//! integral.  Compares plain and corrected errors against the reference.

use resummation::cli::grid;
use resummation::dispersion::{fixed_point_cutoff, CorrectedApproximant, DiscontinuityModel};
use resummation::oracle::{exact_energy, OracleConfig};
use resummation::series::PerturbationSeries;
use resummation::variational::build_reexpansion;

fn main() {
    let cfg = OracleConfig::default();
    let model = DiscontinuityModel::oscillator(1.0);
    let gs = grid(1.0, 1000.0, 16, true);

    for order in [1usize, 3] {
        let series = PerturbationSeries::oscillator(1.0, order + 2).unwrap();
        let plain = build_reexpansion(&series, order).unwrap();
        let trace = fixed_point_cutoff(order, &series, &model, 1e-10).unwrap();
        let corrected = CorrectedApproximant::from_trace(&series, &model, &trace).unwrap();

        println!("order N = {order}, g_cut = {:.6}", trace.final_cutoff());
        println!("{:>12} {:>12} {:>12} {:>8}", "g", "plain err", "corr err", "gain");
        for (p, c) in plain.sweep(&gs).unwrap().iter().zip(corrected.sweep(&gs).unwrap()) {
            let exact = exact_energy(p.g, 1.0, &cfg).unwrap();
            let pe = ((p.value.re - exact) / exact).abs();
            let ce = ((c.value.re - exact) / exact).abs();
            println!("{:>12.5e} {pe:>12.3e} {ce:>12.3e} {:>8.2}", p.g, pe / ce);
        }
        println!();
    }
}
