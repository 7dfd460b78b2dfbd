//! Lazy vs renormalized random walk: second eigenvalue ratio on random graphs.
//!
//!     cargo run --release --example eigengap_sweep

use graphfb::graph::Graph;
use graphfb::ops::{eigengap_check, eigengap_sweep};
use graphfb::DenseMatrix;

fn main() -> graphfb::Result<()> {
    let (k3, _) = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], DenseMatrix::zeros(3, 1), vec![0; 3], 1)?;
    for gamma in [0.5, 1.0, 2.0] {
        let r = eigengap_check(&k3, gamma)?;
        println!("K3 gamma {gamma}: lazy {:.4}  renormalized {:.4}", r.ratio_lazy, r.ratio_renorm);
    }
    let sweep = eigengap_sweep(40, 300, &[0.5, 1.0, 2.0, 4.0], 11)?;
    println!(
        "random graphs: {}/{} checks hold, smallest margin {:.3e}",
        sweep.holds, sweep.checks, sweep.min_margin
    );
    for f in &sweep.failures {
        println!("  failure: {f:?}");
    }
    Ok(())
}
