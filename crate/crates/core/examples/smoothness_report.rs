//! S-values of features and labels under the normalized Laplacians.
//!
//!     cargo run --example smoothness_report [-- DATA_DIR]

use graphfb::graph::load_canonical;
use graphfb::ops::OperatorKind;
use graphfb::smoothness::{render_table, smoothness_report, FeatureMode};
use graphfb::synth::BlockModel;
use rand::SeedableRng;

fn main() -> graphfb::Result<()> {
    let graphs = match std::env::args().nth(1) {
        Some(dir) => vec![(dir.clone(), load_canonical(dir.as_ref())?)],
        None => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
            vec![
                ("hetero".to_string(), BlockModel::heterophilic(40).sample(&mut rng)),
                ("homo".to_string(), BlockModel::homophilic(40).sample(&mut rng)),
            ]
        }
    };
    let mut rows = Vec::new();
    for (name, g) in &graphs {
        for kind in [OperatorKind::LSym, OperatorKind::HatLSym] {
            for mode in [FeatureMode::Raw, FeatureMode::RowNormalized] {
                rows.push((format!("{name}/{kind}/{}", mode.name()), smoothness_report(g, kind, mode)?));
            }
        }
    }
    print!("{}", render_table(&rows));
    Ok(())
}
