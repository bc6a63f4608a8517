//! Protocol comparisons the tradeoff curves make precise:
//!   * the dynamic protocol beats the static compress-and-forward reference
//!     at low multiplexing gains on (1,k,1);
//!   * with a single-antenna relay flanked by n-antenna terminals, the
//!     half-duplex dynamic protocol matches full-duplex decode-and-forward.
//!
//! Run with: cargo run --release --example protocol_comparison

use dmtlab::closedform::{ddf_1k1, fd_df_n1n, fundamental_1k1, scf_1k1};
use dmtlab::exponents::AntennaConfig;
use dmtlab::optimizer::{ddf_dmt, SolverSettings};

fn main() {
    let k = 2;
    println!("(1,{k},1): dynamic DF vs static CF vs fundamental limit");
    println!("  r      ddf     scf     fundamental");
    for num in 0..=8 {
        let r = num as f64 / 8.0;
        let ddf = ddf_1k1(k, r).expect("in domain");
        let scf = scf_1k1(k, r).expect("in domain");
        let fund = fundamental_1k1(k, r).expect("in domain");
        let marker = if ddf > scf + 1e-9 { "  ← dynamic wins" } else { "" };
        println!("  {r:<6.3} {ddf:<7.3} {scf:<7.3} {fund:<7.3}{marker}");
    }

    println!("\n(n,1,n): half-duplex dynamic DF equals full-duplex DF");
    let settings = SolverSettings::default();
    for n in [2usize, 3] {
        let cfg = AntennaConfig::new(n, 1, n).expect("valid");
        let mut max_gap: f64 = 0.0;
        for num in 0..=40 {
            let r = num as f64 / 40.0;
            let hd = ddf_dmt(cfg, r, settings).expect("in domain");
            let fd = fd_df_n1n(n, r).expect("in domain");
            max_gap = max_gap.max((hd - fd).abs());
        }
        println!("  n = {n}: max |half-duplex − full-duplex| on [0,1] = {max_gap:.2e}");
    }
}
