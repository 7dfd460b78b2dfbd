//! Channel count x transform grid for FB-GCN on a heterophilic graph.
//!
//!     cargo run --release --example ablation_grid

use graphfb::graph::{SplitSet, DEFAULT_RATIOS};
use graphfb::models::{Arch, ChannelMode, ModelSpec, TransformMode};
use graphfb::synth::BlockModel;
use graphfb::trainer::{run_experiment, ModelEntry, TrainConfig};
use rand::SeedableRng;

fn main() -> graphfb::Result<()> {
    let g = BlockModel::heterophilic(50).sample(&mut rand_chacha::ChaCha8Rng::seed_from_u64(2));
    let splits = SplitSet::generate(g.n_nodes(), DEFAULT_RATIOS, 0, 5)?;
    let mut models = Vec::new();
    for (ch, ch_name) in [(ChannelMode::LpOnly, "lp_only"), (ChannelMode::HpOnly, "hp_only"), (ChannelMode::TwoChannel, "two")] {
        for (tm, tm_name) in [(TransformMode::Linear, "linear"), (TransformMode::Nonlinear, "nonlinear")] {
            let spec = ModelSpec::new(Arch::FbGcn, 32).with_dropout(0.3).with_channels(ch).with_transform(tm);
            models.push(ModelEntry::new(format!("{ch_name}/{tm_name}"), spec));
        }
    }
    let cfg = TrainConfig { max_epochs: 300, ..TrainConfig::default() };
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let exp = run_experiment(&g, &models, &cfg, &splits, None, threads)?;
    for m in &exp.report.models {
        println!("{:<18} {:.2} ± {:.2}", m.name, 100.0 * m.mean_accuracy, 100.0 * m.std_accuracy);
    }
    Ok(())
}
