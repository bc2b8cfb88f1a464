//! Convergence of the diagonalization reference with basis size.

use resummation::oracle::{convergence_report, exact_energy, OracleConfig};

fn main() {
    let cfg = OracleConfig::default();
    for g in [0.1, 1.0, 1000.0] {
        println!("g = {g}");
        println!("{:>6} {:>20} {:>14}", "size", "E_0", "delta");
        for (size, e, delta) in convergence_report(g, 1.0, &[8, 16, 32, 64, 128], &cfg) {
            println!("{size:>6} {e:>20.14} {delta:>14.3e}");
        }
        println!("converged: {:.12}\n", exact_energy(g, 1.0, &cfg).unwrap());
    }
}
