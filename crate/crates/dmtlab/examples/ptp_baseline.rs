//! The point-to-point piecewise-linear tradeoff baseline: the curve through
//! (j, (m−j)(n−j)) that every relay-assisted scheme is measured against.
//!
//! Run with: cargo run --example ptp_baseline

use dmtlab::curves::ptp_dmt;

fn main() {
    println!("direct-link tradeoff curves d_(m,n): diversity at multiplexing gain r\n");

    for (m, n) in [(1usize, 1usize), (2, 2), (4, 2), (3, 3)] {
        let curve = ptp_dmt(m, n).expect("valid antenna counts");
        println!("(m,n) = ({m},{n}): corner points {:?}", curve.breakpoints);
        for num in 0..=4 {
            let r = curve.domain().1 * num as f64 / 4.0;
            let d = curve.eval(r).expect("r inside domain");
            println!("    d({r:.2}) = {d:.3}");
        }
        println!();
    }

    // Curves compose: the pointwise minimum of two baselines is again a
    // piecewise-linear curve with crossing points inserted.
    let a = ptp_dmt(4, 1).expect("valid");
    let b = ptp_dmt(1, 1).expect("valid");
    let min = a.pointwise_min(&b).expect("overlapping domains");
    println!("pointwise min of (4,1) and (1,1) baselines:");
    print!("{}", min.to_csv());
}
