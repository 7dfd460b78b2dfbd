use graphfb::graph::{SplitSet, DEFAULT_RATIOS};
use graphfb::models::{Arch, ModelSpec};
use graphfb::synth::BlockModel;
use graphfb::trainer::{mean_std, preset, run_experiment, train, ModelEntry, TrainConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn training_is_deterministic() {
    let g = BlockModel::heterophilic(20).sample(&mut ChaCha8Rng::seed_from_u64(0));
    let split = SplitSet::generate(g.n_nodes(), DEFAULT_RATIOS, 3, 1).unwrap().splits.remove(0);
    let cfg = TrainConfig { max_epochs: 40, patience: 40, ..TrainConfig::default() };
    for arch in Arch::ALL {
        let spec = ModelSpec::new(arch, 8);
        let a = train(&g, &spec, &cfg, &split).unwrap();
        let b = train(&g, &spec, &cfg, &split).unwrap();
        assert_eq!(a.history, b.history);
        assert_eq!(a.params, b.params);
    }
}

#[test]
fn selected_epoch_has_best_validation_accuracy() {
    let g = BlockModel::heterophilic(20).sample(&mut ChaCha8Rng::seed_from_u64(1));
    let split = SplitSet::generate(g.n_nodes(), DEFAULT_RATIOS, 0, 1).unwrap().splits.remove(0);
    let r = train(&g, &ModelSpec::new(Arch::FbGcn, 8), &TrainConfig { max_epochs: 80, patience: 80, ..TrainConfig::default() }, &split).unwrap();
    let best = r.history.iter().map(|h| h.val_acc).fold(0.0, f64::max);
    assert!(r.val_accuracy >= best);
    if r.best_epoch > 0 {
        let first = r.history.iter().position(|h| h.val_acc == r.val_accuracy).unwrap() + 1;
        assert_eq!(first, r.best_epoch, "ties keep the earliest epoch");
    }
}

#[test]
fn patience_stops_training() {
    let g = BlockModel::heterophilic(10).sample(&mut ChaCha8Rng::seed_from_u64(2));
    let split = SplitSet::generate(g.n_nodes(), DEFAULT_RATIOS, 0, 1).unwrap().splits.remove(0);
    let cfg = TrainConfig { lr: 0.0, max_epochs: 500, patience: 7, ..TrainConfig::default() };
    let r = train(&g, &ModelSpec::new(Arch::Gcn, 4), &cfg, &split).unwrap();
    assert_eq!(r.best_epoch, 0);
    assert_eq!(r.epochs_run, 7);
}

#[test]
fn filterbank_beats_gcn_on_heterophilic_graph() {
    let g = BlockModel::heterophilic(40).sample(&mut ChaCha8Rng::seed_from_u64(7));
    let splits = SplitSet::generate(g.n_nodes(), DEFAULT_RATIOS, 0, 4).unwrap();
    let models = [
        ModelEntry::new("gcn", ModelSpec::new(Arch::Gcn, 16).with_dropout(0.3)),
        ModelEntry::new("fb_gcn", ModelSpec::new(Arch::FbGcn, 16).with_dropout(0.3)),
    ];
    let cfg = TrainConfig { max_epochs: 150, patience: 50, ..TrainConfig::default() };
    let exp = run_experiment(&g, &models, &cfg, &splits, Some("gcn"), 4).unwrap();
    let d = exp.report.delta("fb_gcn").unwrap();
    assert!(d.mean > 0.1, "delta {}", d.mean);
    let per_split: Vec<f64> =
        exp.results[1].iter().zip(&exp.results[0]).map(|(f, g)| f.test_accuracy - g.test_accuracy).collect();
    assert!((mean_std(&per_split).0 - d.mean).abs() < 1e-12);
    let fb = exp.report.model("fb_gcn").unwrap();
    let gcn = exp.report.model("gcn").unwrap();
    assert!(fb.median_smoothness_gap < gcn.median_smoothness_gap);
}

#[test]
fn experiment_is_independent_of_thread_count() {
    let g = BlockModel::heterophilic(15).sample(&mut ChaCha8Rng::seed_from_u64(3));
    let splits = SplitSet::generate(g.n_nodes(), DEFAULT_RATIOS, 0, 3).unwrap();
    let models = [ModelEntry::new("fb", ModelSpec::new(Arch::FbSage, 8))];
    let cfg = TrainConfig { max_epochs: 30, patience: 30, ..TrainConfig::default() };
    let a = run_experiment(&g, &models, &cfg, &splits, None, 1).unwrap();
    let b = run_experiment(&g, &models, &cfg, &splits, None, 3).unwrap();
    assert_eq!(a.report.models[0].test_accuracies, b.report.models[0].test_accuracies);
}

#[test]
fn presets_cover_every_dataset() {
    for d in graphfb::trainer::DATASETS {
        for arch in Arch::ALL {
            let p = preset(d, arch).unwrap_or_else(|| panic!("{d} {arch}"));
            assert!(p.lr > 0.0 && (0.0..1.0).contains(&p.dropout));
        }
    }
    assert_eq!(preset("film", Arch::Gcn), preset("actor", Arch::Gcn));
}
