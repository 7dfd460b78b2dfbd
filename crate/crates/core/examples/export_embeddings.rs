//! Trains FB-GCN once and dumps the hidden LP, HP and combined embeddings.
//!
//!     cargo run --release --example export_embeddings [-- OUT_DIR]

use graphfb::graph::{SplitSet, DEFAULT_RATIOS};
use graphfb::models::{Arch, ModelSpec};
use graphfb::synth::BlockModel;
use graphfb::trainer::{embeddings, train, write_embeddings_tsv, EmbeddingChannel, TrainConfig};
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("graphfb_embeddings"), Into::into);
    std::fs::create_dir_all(&out)?;
    let g = BlockModel::heterophilic(40).sample(&mut rand_chacha::ChaCha8Rng::seed_from_u64(9));
    let split = SplitSet::generate(g.n_nodes(), DEFAULT_RATIOS, 0, 1)?.splits.remove(0);
    let spec = ModelSpec::new(Arch::FbGcn, 16).with_dropout(0.3);
    let res = train(&g, &spec, &TrainConfig { max_epochs: 200, ..TrainConfig::default() }, &split)?;
    println!("test accuracy {:.2} (best epoch {})", 100.0 * res.test_accuracy, res.best_epoch);
    for (ch, name) in [(EmbeddingChannel::Lp, "lp"), (EmbeddingChannel::Hp, "hp"), (EmbeddingChannel::Combined, "combined")] {
        let emb = embeddings(&g, &res.params, 1, ch)?;
        let path = out.join(format!("layer1_{name}.tsv"));
        write_embeddings_tsv(&path, &emb, g.labels())?;
        println!("{} x {} -> {}", emb.rows(), emb.cols(), path.display());
    }
    Ok(())
}
