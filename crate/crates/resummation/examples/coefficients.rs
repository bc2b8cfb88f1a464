//! Exact weak-coupling coefficients and their large-order growth.
//!
//! Prints the first coefficients as exact rationals, then compares the tail
//! against the factorial asymptotic law with its first 1/k correction.

use resummation::series::{asymptotic_coefficient, LargeOrderParams, PerturbationSeries};

fn main() {
    let order = 25;
    let series = PerturbationSeries::oscillator(1.0, order).unwrap();

    println!("first coefficients (exact):");
    for (k, r) in series.exact_coefficients().unwrap().iter().take(7).enumerate() {
        println!("  E_{k:<2} = {r}");
    }

    let params = LargeOrderParams::oscillator(1.0);
    println!("\nlarge-order law (lead = asymptotic coefficient without corrections):");
    println!("{:>3} {:>24} {:>12} {:>12}", "k", "E_k", "E_k/lead", "with 1/k");
    for k in 8..=order {
        let e = series.coefficients()[k];
        let lead = asymptotic_coefficient(k, &params, false);
        let corr = 1.0 - 95.0 / (72.0 * k as f64);
        println!("{k:>3} {e:>24.12e} {:>12.8} {corr:>12.8}", e / lead);
    }
}
