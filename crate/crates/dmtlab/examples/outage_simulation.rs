//! Finite-SNR Monte Carlo outage estimation: per-point outage probabilities
//! with Wilson confidence radii and the fitted diversity slope, compared to
//! the analytic tradeoff value.
//!
//! Run with: cargo run --release --example outage_simulation

use dmtlab::exponents::AntennaConfig;
use dmtlab::optimizer::{ddf_dmt, SolverSettings};
use dmtlab::simulator::diversity_slope;

fn main() {
    let cfg = AntennaConfig::new(1, 1, 1).expect("valid antenna counts");
    let r = 0.5;
    let grid = [20.0, 25.0, 30.0, 35.0];
    let trials = 200_000;
    let seed = 7;

    println!(
        "outage sweep, (m,k,n) = (1,1,1), r = {r}, {trials} trials/point, seed {seed}"
    );
    let est = diversity_slope(cfg, r, &grid, trials, seed).expect("enough outage events");

    println!("\n{}", est.to_csv());
    for i in 0..est.snr_db_grid.len() {
        if !est.included[i] {
            println!(
                "note: {} dB excluded from the fit ({} events < 20)",
                est.snr_db_grid[i], est.events[i]
            );
        }
    }

    let reference = ddf_dmt(cfg, r, SolverSettings::default()).expect("in domain");
    let slope = est.slope.expect("fit produced");
    println!("fitted diversity slope : {slope:.4}");
    if let Some(se) = est.slope_stderr {
        println!("slope standard error   : {se:.4}");
    }
    println!("analytic diversity d(r): {reference:.4}");
    println!(
        "\nThe fitted slope approaches the analytic value from below as the\n\
         SNR window moves right; at 20–35 dB the sub-asymptotic bias is visible."
    );
}
