//! Builds every operator on a small graph and prints its spectrum range.
//!
//!     cargo run --example operator_zoo

use graphfb::ops::{dense_eig, OperatorKind};
use graphfb::synth::random_attributed;
use graphfb::build_operator;
use rand::SeedableRng;

fn main() -> graphfb::Result<()> {
    let g = random_attributed(12, 3, 2, &mut rand_chacha::ChaCha8Rng::seed_from_u64(3));
    println!("{} nodes, {} edges", g.n_nodes(), g.n_edges());
    for kind in OperatorKind::ALL {
        let op = build_operator(&g, kind, kind.needs_gamma().then_some(1.0))?;
        let spec = dense_eig(&op)?;
        let lo = spec.values.first().copied().unwrap_or(f64::NAN);
        let hi = spec.values.last().copied().unwrap_or(f64::NAN);
        let partner = kind.high_pass_partner().map_or("-".to_string(), |p| p.to_string());
        println!("{:<16} nnz {:>4}  eig [{lo:+.4}, {hi:+.4}]  hp partner {partner}", op.label(), op.matrix().nnz());
    }
    Ok(())
}
