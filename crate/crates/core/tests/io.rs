use graphfb::graph::{import_raw_str, load_canonical, save_canonical, ImportOptions, SplitSet, DEFAULT_RATIOS};
use graphfb::synth::random_attributed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

fn digest(dir: &std::path::Path) -> String {
    let mut h = Sha256::new();
    for f in ["meta.json", "edges.tsv", "features.tsv", "labels.tsv"] {
        h.update(std::fs::read(dir.join(f)).unwrap());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn canonical_bytes_are_stable() {
    let g = random_attributed(12, 3, 2, &mut ChaCha8Rng::seed_from_u64(42));
    let dir = tempfile::tempdir().unwrap();
    save_canonical(&g, dir.path()).unwrap();
    assert_eq!(digest(dir.path()), "b3304903e0bf1f1eda8a7063183e7ba23e4c4acb93e2f4c3200ab6834c5356ae");
}

#[test]
fn import_drops_self_loops_and_duplicates() {
    let nodes = "id\tfeatures\tlabel\n0\t1,0\t0\n1\t0,1\t1\n2\t1,1\t0\n";
    let edges = "a\tb\n0\t1\n1\t0\n2\t2\n1\t2\n";
    let (g, c) = import_raw_str(nodes, edges, &ImportOptions::default()).unwrap();
    assert_eq!((g.n_nodes(), g.n_edges(), g.n_classes()), (3, 2, 2));
    assert_eq!((c.input_edges, c.self_loops_dropped, c.duplicates_dropped), (4, 1, 1));
    let opts = ImportOptions { row_normalize: true, n_classes: Some(4) };
    let (g, _) = import_raw_str(nodes, edges, &opts).unwrap();
    assert_eq!(g.features().row(2), &[0.5, 0.5]);
    assert_eq!(g.n_classes(), 4);
}

#[test]
fn import_rejects_bad_input() {
    let bad = [
        ("0\t1,0\t0\n1\t0\t1\n", "0\t1\n"),
        ("0\t1,0\t0\n1\t0,1\t1\n", "0\t5\n"),
        ("0\t1,x\t0\n", ""),
    ];
    for (n, e) in bad {
        assert!(import_raw_str(n, e, &ImportOptions::default()).is_err(), "{n:?} {e:?}");
    }
}

#[test]
fn split_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let s = SplitSet::generate(183, DEFAULT_RATIOS, 0, 10).unwrap();
    let path = dir.path().join("splits.json");
    s.save(&path).unwrap();
    let back = SplitSet::load(&path).unwrap();
    assert_eq!(back, s);
    back.validate(183).unwrap();
    assert!(back.validate(100).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn canonical_round_trip(seed in 0u64..10_000, n in 2usize..40, f in 1usize..6) {
        let g = random_attributed(n, f, 3, &mut ChaCha8Rng::seed_from_u64(seed));
        let dir = tempfile::tempdir().unwrap();
        save_canonical(&g, dir.path()).unwrap();
        prop_assert_eq!(load_canonical(dir.path()).unwrap(), g);
    }

    #[test]
    fn splits_partition_nodes(n in 3usize..500, seed in 0u64..1000) {
        let s = SplitSet::generate(n, DEFAULT_RATIOS, seed, 2).unwrap();
        for sp in &s.splits {
            let mut all: Vec<usize> = sp.train.iter().chain(&sp.val).chain(&sp.test).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        }
    }
}
