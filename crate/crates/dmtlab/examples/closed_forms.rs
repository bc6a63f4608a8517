//! The closed-form tradeoff curves: single-antenna relay configurations
//! where the optimization collapses to explicit piecewise-linear formulas.
//!
//! Run with: cargo run --example closed_forms

use dmtlab::closedform::ClosedFormId;

fn main() {
    let forms = [
        ClosedFormId::Ddf111,
        ClosedFormId::DdfN1n { n: 2 },
        ClosedFormId::Ddf1k1 { k: 3 },
        ClosedFormId::Ddf2k2Upper { k: 3 },
        ClosedFormId::FddfN1n { n: 2 },
        ClosedFormId::Scf1k1 { k: 3 },
        ClosedFormId::Fund1k1 { k: 3 },
        ClosedFormId::Ptp { m: 2, n: 2 },
    ];

    for id in forms {
        let hi = id.domain_hi();
        println!("{id:?} on [0, {hi}]:");
        for num in 0..=4 {
            let r = hi * num as f64 / 4.0;
            let d = id.eval(r).expect("r inside domain");
            println!("    d({r:.3}) = {d:.4}");
        }
        println!();
    }

    // Sampled curves serialize to JSON for plotting pipelines.
    let json = ClosedFormId::Ddf1k1 { k: 2 }
        .to_json(0.25)
        .expect("sampling succeeds");
    println!("JSON export of the (1,2,1) curve at step 0.25:\n{json}");
}
