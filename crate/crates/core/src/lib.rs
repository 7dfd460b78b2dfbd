pub mod autodiff;
pub mod cli;
pub mod dense;
pub mod error;
pub mod graph;
pub mod io;
pub mod models;
pub mod ops;
pub mod smoothness;
pub mod sparse;
pub mod synth;
pub mod trainer;

pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use graph::{Graph, Split, SplitSet};
pub use ops::{build_operator, OperatorKind, SparseOperator};
pub use sparse::CsrMatrix;
