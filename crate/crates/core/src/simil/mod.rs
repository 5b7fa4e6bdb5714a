//! Image similarity and embedding: windowed SSIM, pairwise SSIM matrices,
//! feature standardization, two-component PCA and seeded k-means.

mod kmeans;
mod pca;
mod ssim;

pub use kmeans::{kmeans, KMeans, DEFAULT_MAX_ITER};
pub use pca::{pca2, standardize, Embedding2D, Standardized};
pub use ssim::{pairwise_ssim, ssim, SimilarityMatrix, SSIM_C1, SSIM_C2, SSIM_WINDOW};
