//! Hierarchical correlation clustering for signed similarity matrices.
//!
//! The crate covers the full pipeline:
//!
//! * [`linkage`]: agglomerative clustering under single, complete, average
//!   and HCC linkage, where HCC merges the pair of clusters with the largest
//!   summed similarity, the hierarchical counterpart of the correlation
//!   clustering objective. Also cutting a dendrogram into `K` clusters.
//! * [`dendro`]: level functions over a dendrogram and the ultrametric
//!   distance matrix they induce.
//! * [`embed`]: classical scaling of that matrix into coordinates whose
//!   squared Euclidean distances reproduce it.
//! * [`minimax`]: minimax path distances via a minimum spanning tree, and
//!   exact correlation clustering on minimax similarities.
//! * [`eval`]: AMI, ARI and V-measure.
//! * [`synth`]: planted partitions and the flip-noise similarity oracle.
//! * [`io`]: the plain-text file formats.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below name the common `f64` instantiations.

pub mod dendro;
pub mod dendrogram;
pub mod embed;
pub mod error;
pub mod eval;
pub mod io;
pub mod linkage;
pub mod matrix;
pub mod minimax;
pub mod scalar;
pub mod synth;

pub use dendro::{
    dendrogram_distances, level_of, validate_ultrametric, LevelKind, UltrametricMatrix, UltrametricReport, Violation,
};
pub use dendrogram::{Dendrogram, MergeRecord, Partition};
pub use embed::{embed, gram_from_distances, reconstruction_error, Dims, Embedding, GramMatrix};
pub use error::{Error, Result};
pub use eval::{adjusted_mutual_info, adjusted_rand, v_measure, ContingencyTable, Measure};
pub use linkage::{agglomerate, cut, shift, Criterion};
pub use matrix::{negate, validate_matrix, Matrix, MatrixKind, SignedMatrix};
pub use minimax::{
    cc_bruteforce, cc_cost, components_cc, minimax_bruteforce, minimax_cc, minimax_distances, minimax_similarities,
    pivot_cc, threshold_positive, BinaryAdjacency,
};
pub use scalar::Scalar;
pub use synth::{noisy_similarities, planted_labels, NoiseConfig};

pub type Matrix64 = Matrix<f64>;
pub type SignedMatrix64 = SignedMatrix<f64>;
pub type Dendrogram64 = Dendrogram<f64>;
pub type MergeRecord64 = MergeRecord<f64>;
pub type UltrametricMatrix64 = UltrametricMatrix<f64>;
pub type GramMatrix64 = GramMatrix<f64>;
pub type Embedding64 = Embedding<f64>;

pub type Matrix32 = Matrix<f32>;
pub type SignedMatrix32 = SignedMatrix<f32>;
pub type Dendrogram32 = Dendrogram<f32>;
pub type UltrametricMatrix32 = UltrametricMatrix<f32>;
pub type Embedding32 = Embedding<f32>;
