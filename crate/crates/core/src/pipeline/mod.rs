//! Batch orchestration: configuration, per-image seed derivation, texture
//! generation, feature CSV persistence, similarity and embedding outputs, and
//! the JSON manifest with its determinism hash.

mod batch;
mod config;
mod csvio;
mod embed;
mod scatter;

pub use batch::{
    run_batch, BatchManifest, EmbeddingSummary, ImageRecord, SsimSummary, MANIFEST_FILE,
    SCHEMA_VERSION,
};
pub use config::{mix_seed, splitmix64, threads_from_env, BatchConfig, THREADS_ENV};
pub use csvio::{read_feature_csv, write_feature_csv, write_image_features_csv, FeatureRow};
pub use embed::{embed_features, FeatureEmbedding};
pub use scatter::scatter_plot;
