//! Empirical check that the joint eigenvalue exponents concentrate on the
//! support set as SNR grows: the fraction of channel draws violating the
//! pairing constraint α_i + β_j ≥ 1 − margin (for i + j ≥ n + 1) should
//! shrink with ρ.
//!
//! Run with: cargo run --release --example support_set

use dmtlab::exponents::AntennaConfig;
use dmtlab::simulator::{support_set_check, SimSeed, DEFAULT_SUPPORT_MARGIN};

fn main() {
    let cfg = AntennaConfig::new(2, 2, 2).expect("valid antenna counts");
    let samples = 100_000;
    let seed = SimSeed { seed: 2020, stream: 0 };

    println!(
        "support-set concentration, cfg (m,k,n)=(2,2,2), margin {:.2}, {} samples per point",
        DEFAULT_SUPPORT_MARGIN, samples
    );
    println!("{:>10} {:>12} {:>20}", "rho", "log10(rho)", "violation fraction");

    let mut prev = f64::INFINITY;
    let mut monotone = true;
    for exp10 in [3.0, 4.0, 4.5, 5.0, 6.0] {
        let rho = 10f64.powf(exp10);
        let v = support_set_check(cfg, rho, samples, DEFAULT_SUPPORT_MARGIN, seed)
            .expect("support check");
        println!("{rho:>10.0} {exp10:>12.1} {v:>20.5}");
        monotone &= v <= prev + 1e-12;
        prev = v;
    }
    println!();
    println!(
        "trend monotonically nonincreasing: {}",
        if monotone { "yes" } else { "NO" }
    );
}
