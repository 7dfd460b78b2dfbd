//! Writes a small graph in the raw tab-separated layout, imports it and
//! round trips it through the canonical directory format.
//!
//!     cargo run --example import_dataset

use graphfb::graph::{import_raw, load_canonical, save_canonical, ImportOptions, SplitSet, DEFAULT_RATIOS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("graphfb_import_{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let nodes = "node_id\tfeature\tlabel\n\
                 0\t1,0,0,1\t0\n\
                 1\t0,1,1,0\t1\n\
                 2\t1,1,0,0\t0\n\
                 3\t0,0,1,1\t2\n\
                 4\t1,0,1,0\t1\n";
    let edges = "node_id\tnode_id\n0\t1\n1\t2\n2\t3\n3\t4\n4\t0\n1\t0\n2\t2\n";
    std::fs::write(dir.join("nodes.tsv"), nodes)?;
    std::fs::write(dir.join("edges.tsv"), edges)?;

    let opts = ImportOptions { row_normalize: false, n_classes: None };
    let (g, cleanup) = import_raw(&dir.join("nodes.tsv"), &dir.join("edges.tsv"), &opts)?;
    println!("imported {} nodes, {} edges, {} classes", g.n_nodes(), g.n_edges(), g.n_classes());
    println!("cleanup: {cleanup:?}");

    let canon = dir.join("canonical");
    save_canonical(&g, &canon)?;
    let back = load_canonical(&canon)?;
    println!("round trip identical: {}", back == g);

    let splits = SplitSet::generate(g.n_nodes(), DEFAULT_RATIOS, 0, 3)?;
    splits.save(&canon.join("splits.json"))?;
    println!("wrote {} splits to {}", splits.splits.len(), canon.display());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
