//! Analytic gradients of each architecture against central differences.
//!
//!     cargo run --example grad_check

use graphfb::autodiff::GradCheckOptions;
use graphfb::models::{check_gradients, Arch, ModelSpec};
use graphfb::synth::random_attributed;
use rand::SeedableRng;

fn main() -> graphfb::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let g = random_attributed(9, 5, 3, &mut rng);
    for arch in Arch::ALL {
        let r = check_gradients(&g, &ModelSpec::new(arch, 8), 0, GradCheckOptions::default())?;
        println!(
            "{:<8} max rel err {:.2e}  checked {:>4}  kinks skipped {}  {}",
            arch.to_string(),
            r.max_rel_err,
            r.checked,
            r.skipped_kinks,
            if r.passes(1e-5) { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}
