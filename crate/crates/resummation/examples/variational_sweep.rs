//! Plain variational resummation at orders 1 and 3 against the
//! diagonalization reference, over a logarithmic coupling grid.

use resummation::cli::grid;
use resummation::oracle::{exact_energy, OracleConfig};
use resummation::series::PerturbationSeries;
use resummation::variational::build_reexpansion;

fn main() {
    let cfg = OracleConfig::default();
    let gs = grid(0.1, 1000.0, 31, true);

    for order in [1usize, 3] {
        let s = PerturbationSeries::oscillator(1.0, order).unwrap();
        let appr = build_reexpansion(&s, order).unwrap();
        println!("order N = {order}");
        println!("{:>12} {:>16} {:>16} {:>12}", "g", "W_N", "exact", "rel err");
        let mut worst = 0.0f64;
        for r in appr.sweep(&gs).unwrap() {
            let exact = exact_energy(r.g, 1.0, &cfg).unwrap();
            let err = ((r.value.re - exact) / exact).abs();
            worst = worst.max(err);
            println!("{:>12.5e} {:>16.10} {:>16.10} {:>12.3e}", r.g, r.value.re, exact, err);
        }
        println!("worst relative error: {worst:.3e}\n");
    }
}
